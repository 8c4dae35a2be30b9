"""Exact 2-characters with values in rings of cyclotomic integers.

The 2-character of a representation (ρ, c) is the function on commuting
pairs

    χ(g, h) = Σ_i  c_i(g, g⁻¹)⁻¹ · c_i(1, 1)⁻¹ · c_i(h, g⁻¹) · c_i(g, h g⁻¹)

summed over the indices i fixed by both ρ_g and ρ_h.  Each summand is a
root of unity, so χ lives in Z[ζ_K] for K the lcm of the cocycle
denominators; values are stored and compared in canonical form modulo the
K-th cyclotomic polynomial, making every identity in this module an exact
statement.

The same number arises as the ordinary trace of the conjugation map that g
induces on the categorical trace of ρ_h; :func:`psi_map` builds that map
explicitly (a permutation-with-scalars matrix on the fixed basis vectors)
and :func:`character_via_psi` takes its trace, giving an independent route
to the same values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

import numpy as np

from .cohomology import QZ
from .errors import SizeCapError, ValidationError
from .gset import coset_gset, fixed_points
from .permgrp import (PermGroup, Subgroup, commuting_pairs, left_coset_reps,
                      simultaneous_pair_classes, subgroup_conjugacy_classes,
                      subgroup_group)
from .tworep import TwoRep, are_equivalent, direct_sum, induce, tworep_from_gset


# ---------------------------------------------------------------------------
# cyclotomic integers


def _poly_rem(num: list[int], den) -> list[int]:
    """Remainder of num modulo the monic polynomial den (ascending coeffs)."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    for i in range(len(num) - 1, dn - 1, -1):
        q = num[i]
        if q:
            num[i] = 0
            for j in range(dn):
                num[i - dn + j] -= q * den[j]
    return num[:dn] if dn else []


def _poly_div_exact(num, den) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        q = num[i]
        if q:
            quot[i - dn] = q
            for j in range(dn + 1):
                num[i - dn + j] -= q * den[j]
    assert not any(num), "division was not exact"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(K: int) -> tuple[int, ...]:
    """Coefficients of Φ_K (ascending), by dividing x^K − 1 by every Φ_d
    for a proper divisor d of K."""
    if K < 1:
        raise ValidationError("cyclotomic order must be >= 1")
    if K == 1:
        return (-1, 1)
    poly = [-1] + [0] * (K - 1) + [1]
    for d in range(1, K):
        if K % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    assert poly[-1] == 1
    return tuple(poly)


@dataclass(frozen=True)
class Cyclo:
    """An element of Z[ζ_K] in canonical form: ``coeffs[j]`` multiplies
    ζ_K^j, reduced modulo Φ_K and zero-padded to length K.

    Within one order, equal values have equal coefficient tuples (the
    reduced power basis is a Z-basis); across orders, compare with
    :func:`cyclo_eq`, which embeds into the lcm order.
    """

    order: int
    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_int(self) -> int | None:
        """The value as a plain integer when it is one, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __repr__(self):
        n = self.as_int()
        if n is not None:
            return f"Cyclo({n})"
        terms = [f"{c}*z{self.order}^{j}" for j, c in enumerate(self.coeffs) if c]
        return "Cyclo(" + " + ".join(terms) + ")"


def _make_cyclo(order: int, raw: list[int]) -> Cyclo:
    rem = _poly_rem(raw, cyclotomic_polynomial(order))
    rem = rem + [0] * (order - len(rem))
    return Cyclo(order=order, coeffs=tuple(rem))


def cyclo_int(n: int) -> Cyclo:
    return Cyclo(order=1, coeffs=(int(n),))


def cyclo_from_qz(q: QZ) -> Cyclo:
    raw = [0] * q.den
    raw[q.num] = 1
    return _make_cyclo(q.den, raw)


def cyclo_make(terms) -> Cyclo:
    """Sum of roots of unity: one term exp(2πi·q) per QZ entry."""
    terms = list(terms)
    K = lcm(*(t.den for t in terms)) if terms else 1
    raw = [0] * K
    for t in terms:
        raw[t.num * (K // t.den)] += 1
    return _make_cyclo(K, raw)


def _embed_raw(c: Cyclo, K: int) -> list[int]:
    assert K % c.order == 0
    step = K // c.order
    raw = [0] * K
    for j, v in enumerate(c.coeffs):
        if v:
            raw[j * step] += v
    return raw


def cyclo_embed(c: Cyclo, K: int) -> Cyclo:
    """The same value viewed in Z[ζ_K] for a multiple K of the order."""
    if K == c.order:
        return c
    return _make_cyclo(K, _embed_raw(c, K))


def cyclo_add(a: Cyclo, b: Cyclo) -> Cyclo:
    K = lcm(a.order, b.order)
    ra, rb = _embed_raw(a, K), _embed_raw(b, K)
    return _make_cyclo(K, [x + y for x, y in zip(ra, rb)])


def cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo:
    K = lcm(a.order, b.order)
    ra = cyclo_embed(a, K).coeffs
    rb = cyclo_embed(b, K).coeffs
    raw = [0] * K
    for i, x in enumerate(ra):
        if x:
            for j, y in enumerate(rb):
                if y:
                    raw[(i + j) % K] += x * y
    return _make_cyclo(K, raw)


def cyclo_eq(a: Cyclo, b: Cyclo) -> bool:
    K = lcm(a.order, b.order)
    return cyclo_embed(a, K).coeffs == cyclo_embed(b, K).coeffs


def cyclo_sum(values) -> Cyclo:
    out = cyclo_int(0)
    for v in values:
        out = cyclo_add(out, v)
    return out


# ---------------------------------------------------------------------------
# the 2-character


def _check_commuting(rep: TwoRep, g: int, h: int):
    G = rep.group
    if G.mul[g][h] != G.mul[h][g]:
        raise ValidationError(
            f"2-characters are defined on commuting pairs; ({g}, {h}) does not commute")


def _scalar_at(rep: TwoRep, g: int, h: int, j: int) -> QZ:
    """The Q/Z exponent of the ψ-scalar in row j:
    −c_j(g,g⁻¹) − c_j(1,1) + c_j(h,g⁻¹) + c_j(g,hg⁻¹)."""
    G = rep.group
    c = rep.cocycle.values
    ginv = G.inv[g]
    hginv = G.mul[h][ginv]
    return (-c[g][ginv][j]) - c[0][0][j] + c[h][ginv][j] + c[g][hginv][j]


def two_character(rep: TwoRep, g: int, h: int) -> Cyclo:
    """χ(g, h): exact cyclotomic sum over the common fixed indices of
    ρ_g and ρ_h; the empty sum is 0.  Requires gh = hg."""
    _check_commuting(rep, g, h)
    act_g = rep.gset.action[g]
    act_h = rep.gset.action[h]
    terms = [_scalar_at(rep, g, h, i)
             for i in range(rep.dimension)
             if act_g[i] == i and act_h[i] == i]
    return cyclo_make(terms)


@dataclass(frozen=True, eq=False)
class PsiMap:
    """The conjugation map on the categorical trace of ρ_h, as a matrix in
    the fixed-point basis: basis vector i goes to ρ_g(i) with the recorded
    scalar.  For commuting (g, h) the targets permute the domain basis."""

    domain_basis: tuple[int, ...]
    mapping: dict[int, tuple[int, QZ]]


def psi_map(rep: TwoRep, g: int, h: int) -> PsiMap:
    """Assemble ψ_g(h) on the basis of diagonal matrix units of ρ_h."""
    _check_commuting(rep, g, h)
    domain = fixed_points(rep.gset, h)
    act_g = rep.gset.action[g]
    mapping = {}
    for i in domain:
        j = act_g[i]
        mapping[i] = (j, _scalar_at(rep, g, h, j))
    assert sorted(t for t, _ in mapping.values()) == list(domain), \
        "conjugation by a commuting element must permute the fixed basis"
    return PsiMap(domain_basis=domain, mapping=mapping)


def character_via_psi(rep: TwoRep, g: int, h: int) -> Cyclo:
    """Ordinary trace of ψ_g(h): the diagonal scalars of the assembled map.

    Independent route to :func:`two_character`; the two must agree on every
    commuting pair.
    """
    pm = psi_map(rep, g, h)
    return cyclo_make([s for i, (j, s) in pm.mapping.items() if i == j])


# ---------------------------------------------------------------------------
# character tables


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """One exact value per simultaneous-conjugacy class of commuting pairs."""

    rep: TwoRep
    class_reps: tuple[tuple[int, int], ...]
    values: tuple[Cyclo, ...]
    _class_of: dict = field(repr=False)

    def value_at(self, g: int, h: int) -> Cyclo:
        return self.values[self._class_of[(g, h)]]


def character_table(rep: TwoRep) -> CharacterTable:
    classes = simultaneous_pair_classes(rep.group)
    reps = tuple(cls[0] for cls in classes)
    values = tuple(two_character(rep, g, h) for g, h in reps)
    class_of = {}
    for idx, cls in enumerate(classes):
        for pair in cls:
            class_of[pair] = idx
    return CharacterTable(rep=rep, class_reps=reps, values=values,
                          _class_of=class_of)


def tables_equal(a: CharacterTable, b: CharacterTable) -> bool:
    """Entrywise exact equality over the (shared) class representatives."""
    if a.class_reps != b.class_reps:
        return False
    return all(cyclo_eq(x, y) for x, y in zip(a.values, b.values))


def table_key(table: CharacterTable) -> tuple:
    """Hashable canonical key; requires all values to be plain integers
    (true for permutation representations with trivial cocycle)."""
    key = []
    for v in table.values:
        n = v.as_int()
        assert n is not None, "table_key needs integer-valued characters"
        key.append(n)
    return tuple(key)


# ---------------------------------------------------------------------------
# induced characters


def induced_character_check(group: PermGroup, sub: Subgroup, rep_h: TwoRep,
                            reps) -> tuple[bool, tuple | None]:
    """Verify |H| · χ_ind(g, h) = Σ_s χ_H(s⁻¹gs, s⁻¹hs) over s with both
    conjugates in H, exactly in the cyclotomic ring, for every commuting
    pair of G.  Returns (True, None) or (False, first discrepancy) where
    the discrepancy is (g, h, lhs, rhs)."""
    sg = subgroup_group(sub)
    ind = induce(group, sub, rep_h, reps)
    mul, inv = group.mul, group.inv
    order_h = cyclo_int(sub.order)
    for g, h in commuting_pairs(group):
        lhs = cyclo_mul(order_h, two_character(ind, g, h))
        terms = []
        for s in range(group.order):
            sinv = inv[s]
            gs = mul[mul[sinv][g]][s]
            hs = mul[mul[sinv][h]][s]
            lg, lh = sg.to_local[gs], sg.to_local[hs]
            if lg >= 0 and lh >= 0:
                terms.append(two_character(rep_h, lg, lh))
        rhs = cyclo_sum(terms)
        if not cyclo_eq(lhs, rhs):
            return False, (g, h, lhs, rhs)
    return True, None


# ---------------------------------------------------------------------------
# dimension bookkeeping for the categorical trace


def _as_square(F) -> np.ndarray:
    arr = np.asarray(F, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def trace_dim(F) -> int:
    """Total dimension of the categorical trace: sum of diagonal entries."""
    return int(np.trace(_as_square(F)))


def dim_sum(F, G) -> np.ndarray:
    """Block sum of dimension matrices."""
    a, b = _as_square(F), _as_square(G)
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.int64)
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def dim_tensor(F, G) -> np.ndarray:
    """Kronecker pattern with pair index (i, i') ordered first-factor-major."""
    return np.kron(_as_square(F), _as_square(G))


# ---------------------------------------------------------------------------
# character-collision search


def collision_search(group: PermGroup, dim: int,
                     cap: int = 100_000) -> list[tuple[TwoRep, TwoRep]]:
    """Non-equivalent pairs with equal character tables among trivial-cocycle
    representations of the given total dimension.

    The search space is the multisets of transitive G-sets (one per subgroup
    conjugacy class) with sizes summing to ``dim``; each multiset yields a
    permutation representation whose integer-valued table is used as a
    grouping key, and non-equivalent members of each group are paired.
    """
    if dim < 0:
        raise ValidationError("dimension must be nonnegative")
    classes = subgroup_conjugacy_classes(group)
    blocks = []
    for cls in classes:
        sub = cls[0]
        blocks.append(tworep_from_gset(
            coset_gset(group, sub, left_coset_reps(group, sub))))
    sizes = [b.dimension for b in blocks]

    multisets = []

    def extend(idx: int, remaining: int, counts: list[int]):
        if len(multisets) > cap:
            raise SizeCapError(f"collision search exceeded {cap} candidate multisets")
        if idx == len(sizes):
            if remaining == 0:
                multisets.append(tuple(counts))
            return
        top = remaining // sizes[idx]
        for cnt in range(top + 1):
            extend(idx + 1, remaining - cnt * sizes[idx], counts + [cnt])

    extend(0, dim, [])

    groups: dict[tuple, list[TwoRep]] = {}
    for counts in multisets:
        rep = None
        for blk, cnt in zip(blocks, counts):
            for _ in range(cnt):
                rep = blk if rep is None else direct_sum(rep, blk)
        if rep is None:
            continue
        key = table_key(character_table(rep))
        groups.setdefault(key, []).append(rep)

    pairs = []
    for key in sorted(groups):
        members = groups[key]
        for a, b in itertools.combinations(members, 2):
            if are_equivalent(a, b) is None:
                pairs.append((a, b))
    return pairs
