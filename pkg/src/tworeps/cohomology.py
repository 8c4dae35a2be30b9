"""Group cohomology with coefficients in (Q/Z)^S for a finite G-set S.

Values of cochains live in Q/Z, the additive stand-in for roots of unity in
C^× under q ↦ exp(2πi q).  The group permutes coordinates through the
G-set: ``(g·v)_i = v_{g⁻¹·i}``.  Restricting C^×-valued cochains to torsion
elements loses nothing at the level of cohomology classes — H² of a finite
group with divisible coefficients is torsion and every class has a
root-of-unity representative — and it is what makes every computation here
exact.

Two different coefficient ranges appear:

* cocycles are sampled and classified with values in (1/K)Z/Z for a fixed
  modulus K (default |G|, which is enough: H² has exponent dividing |G|);
* the coboundary relation is always decided over the **full divisible**
  group Q/Z, never over a fixed modulus.  A cocycle can bound over Q/Z
  while not bounding within its own value subgroup, so the distinction is
  not pedantic; see :func:`are_cohomologous`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .errors import NonCocycleError, SizeCapError, ValidationError
from .gset import GSet, coset_gset, trivial_gset
from .permgrp import PermGroup, Subgroup, left_coset_reps, subgroup_group
from .zlinalg import (ModEchelon, diagonalize_mod, kernel_mod_generators,
                      left_kernel_basis, smith_normal_form)


@dataclass(frozen=True)
class QZ:
    """An element of Q/Z as a reduced fraction num/den with 0 <= num < den.

    Stands for the root of unity exp(2πi·num/den); the group operation is
    written additively.
    """

    num: int
    den: int

    @staticmethod
    def of(num: int, den: int = 1) -> "QZ":
        if den == 0:
            raise ValidationError("QZ denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        if num == 0:
            return _QZ_ZERO
        g = gcd(num, den)
        return QZ(num // g, den // g)

    @staticmethod
    def from_fraction(q) -> "QZ":
        q = Fraction(q)
        return QZ.of(q.numerator, q.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "QZ") -> "QZ":
        return QZ.of(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __sub__(self, other: "QZ") -> "QZ":
        return QZ.of(self.num * other.den - other.num * self.den,
                     self.den * other.den)

    def __neg__(self) -> "QZ":
        return QZ.of(-self.num, self.den)

    def __mul__(self, k: int) -> "QZ":
        return QZ.of(self.num * k, self.den)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.num != 0

    def __str__(self):
        return f"{self.num}/{self.den}"


_QZ_ZERO = QZ(0, 1)

QZVector = tuple[QZ, ...]


@dataclass(frozen=True)
class Cochain1:
    """A 1-cochain G → (Q/Z)^S: ``values[g]`` is the vector b(g)."""

    gset: GSet
    values: tuple[QZVector, ...]


@dataclass(frozen=True)
class Cochain2:
    """A 2-cochain G×G → (Q/Z)^S: ``values[g][h]`` is the vector c(g, h).

    ``c(1, 1)`` carries the unit constraint data of a 2-representation, so
    nothing here assumes normalization.
    """

    gset: GSet
    values: tuple[tuple[QZVector, ...], ...]

    def at(self, g: int, h: int) -> QZVector:
        return self.values[g][h]


def zero_cochain1(gset: GSet) -> Cochain1:
    row = tuple(_QZ_ZERO for _ in range(gset.size))
    return Cochain1(gset=gset, values=tuple(row for _ in range(gset.group.order)))


def zero_cochain2(gset: GSet) -> Cochain2:
    row = tuple(_QZ_ZERO for _ in range(gset.size))
    plane = tuple(row for _ in range(gset.group.order))
    return Cochain2(gset=gset, values=tuple(plane for _ in range(gset.group.order)))


def cochain2_from_function(gset: GSet, fn) -> Cochain2:
    """Tabulate ``fn(g, h) -> sequence of QZ`` over all pairs."""
    n = gset.group.order
    values = []
    for g in range(n):
        plane = []
        for h in range(n):
            vec = tuple(fn(g, h))
            if len(vec) != gset.size:
                raise ValidationError("cochain vector length != G-set size")
            plane.append(vec)
        values.append(tuple(plane))
    return Cochain2(gset=gset, values=tuple(values))


def cochain1_from_function(gset: GSet, fn) -> Cochain1:
    values = []
    for g in range(gset.group.order):
        vec = tuple(fn(g))
        if len(vec) != gset.size:
            raise ValidationError("cochain vector length != G-set size")
        values.append(vec)
    return Cochain1(gset=gset, values=tuple(values))


def act(g: int, v, gset: GSet) -> QZVector:
    """Permutation-module action: ``(g·v)_i = v_{g⁻¹·i}``."""
    v = tuple(v)
    if len(v) != gset.size:
        raise ValidationError(f"vector length {len(v)} != G-set size {gset.size}")
    inv_row = gset.action[gset.group.inv[g]]
    return tuple(v[inv_row[i]] for i in range(gset.size))


def cochain2_add(a: Cochain2, b: Cochain2) -> Cochain2:
    if a.gset != b.gset:
        raise ValidationError("cochain sum needs a common G-set")
    return Cochain2(gset=a.gset, values=tuple(
        tuple(tuple(x + y for x, y in zip(va, vb))
              for va, vb in zip(pa, pb))
        for pa, pb in zip(a.values, b.values)))


def cochain2_sub(a: Cochain2, b: Cochain2) -> Cochain2:
    if a.gset != b.gset:
        raise ValidationError("cochain difference needs a common G-set")
    return Cochain2(gset=a.gset, values=tuple(
        tuple(tuple(x - y for x, y in zip(va, vb))
              for va, vb in zip(pa, pb))
        for pa, pb in zip(a.values, b.values)))


def delta1(b: Cochain1) -> Cochain2:
    """Coboundary of a 1-cochain: (δb)(g, h) = g·b(h) − b(gh) + b(g)."""
    S = b.gset
    G = S.group
    n = G.order
    inv_rows = [S.action[G.inv[g]] for g in range(n)]
    values = []
    for g in range(n):
        plane = []
        bg = b.values[g]
        inv_g = inv_rows[g]
        for h in range(n):
            bh = b.values[h]
            bgh = b.values[G.mul[g][h]]
            plane.append(tuple(bh[inv_g[i]] - bgh[i] + bg[i]
                               for i in range(S.size)))
        values.append(tuple(plane))
    return Cochain2(gset=S, values=tuple(values))


def is_cocycle(c: Cochain2) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Check δc = 0; on failure also return the least (g, h, k, component).

    The componentwise identity being verified is
    ``c_{g⁻¹·i}(h, k) + c_i(g, hk) = c_i(gh, k) + c_i(g, h)`` in Q/Z.
    """
    S = c.gset
    G = S.group
    n = G.order
    mul = G.mul
    inv_rows = [S.action[G.inv[g]] for g in range(n)]
    for g in range(n):
        inv_g = inv_rows[g]
        cg = c.values[g]
        for h in range(n):
            cgh_row = c.values[mul[g][h]]
            ch = c.values[h]
            cgh = cg[h]
            for k in range(n):
                chk = ch[k]
                c_ghk = cgh_row[k]
                c_g_hk = cg[mul[h][k]]
                for i in range(S.size):
                    lhs = chk[inv_g[i]] + c_g_hk[i]
                    rhs = c_ghk[i] + cgh[i]
                    if lhs != rhs:
                        return False, (g, h, k, i)
    return True, None


def require_cocycle(c: Cochain2) -> None:
    ok, failure = is_cocycle(c)
    if not ok:
        g, h, k, i = failure
        raise NonCocycleError(
            f"cocycle identity fails at triple (g={g}, h={h}, k={k}), component {i}",
            triple=(g, h, k), component=i)


# ---------------------------------------------------------------------------
# the coboundary map as an integer matrix, and cohomologous testing


def delta1_matrix(gset: GSet) -> np.ndarray:
    """Integer matrix of δ¹ : C¹ → C² in the coordinate bases.

    Coordinates: 1-cochains are indexed by (g, i) at position g·|S| + i,
    2-cochains by (g, h, i) at position (g·|G| + h)·|S| + i.  Entries land
    in {−1, 0, 1, 2} after accumulating coincident terms.
    """
    G = gset.group
    n, nS = G.order, gset.size
    n1, n2 = n * nS, n * n * nS
    A = np.zeros((n2, n1), dtype=np.int64)
    for g in range(n):
        inv_g = gset.action[G.inv[g]]
        for h in range(n):
            gh = G.mul[g][h]
            base = (g * n + h) * nS
            for i in range(nS):
                r = base + i
                A[r, h * nS + inv_g[i]] += 1
                A[r, gh * nS + i] -= 1
                A[r, g * nS + i] += 1
    return A


class CoboundarySolver:
    """Decides ``δb = w`` over divisible coefficients for a fixed G-set.

    The Smith form of the δ¹ matrix is computed once; each query then costs
    one U·w product, the zero-row integrality test, and back-substitution.
    """

    def __init__(self, gset: GSet):
        self.gset = gset
        A = delta1_matrix(gset)
        self.n2, self.n1 = A.shape
        self.snf = smith_normal_form(A)

    def solve(self, w) -> list[Fraction] | None:
        """Rational b (as Fractions, read mod 1) with δ¹ b ≡ w (mod Z)."""
        if len(w) != self.n2:
            raise ValidationError("right-hand side has the wrong length")
        den = lcm(*(Fraction(t).denominator for t in w)) if self.n2 else 1
        wi = [int(Fraction(t) * den) for t in w]
        U, D, V = self.snf.U, self.snf.D, self.snf.V
        uw = U @ np.array(wi, dtype=object)
        c = [Fraction(0)] * self.n1
        for i in range(self.n2):
            d = int(D[i, i]) if i < self.n1 else 0
            if d == 0:
                if uw[i] % den:
                    return None
            else:
                c[i] = Fraction(int(uw[i]), den * d)
        out = []
        for j in range(self.n1):
            acc = Fraction(0)
            for i in range(self.n1):
                if c[i]:
                    acc += int(V[j, i]) * c[i]
            out.append(acc)
        return out


@lru_cache(maxsize=None)
def _coboundary_solver(gset: GSet) -> CoboundarySolver:
    return CoboundarySolver(gset)


def _flatten2(c: Cochain2) -> list[Fraction]:
    return [v.fraction for plane in c.values for vec in plane for v in vec]


def are_cohomologous(c: Cochain2, cp: Cochain2) -> Cochain1 | None:
    """A 1-cochain witness b with δb = cp − c, or None.

    Both inputs must be cocycles on the same G-set.  The decision is made
    over the full divisible coefficient group via the Smith-form zero-row
    integrality criterion, so e.g. on Z/2 the cocycle with c(g,g) = 1/2
    does bound (witness b(g) = 1/4) even though no (1/2)Z/Z-valued witness
    exists.  The witness is re-verified through :func:`delta1` before it is
    returned.
    """
    if c.gset != cp.gset:
        raise ValidationError("cocycles live on different G-sets")
    require_cocycle(c)
    require_cocycle(cp)
    diff = cochain2_sub(cp, c)
    sol = _coboundary_solver(c.gset).solve(_flatten2(diff))
    if sol is None:
        return None
    S = c.gset
    vals = tuple(
        tuple(QZ.from_fraction(sol[g * S.size + i]) for i in range(S.size))
        for g in range(S.group.order))
    b = Cochain1(gset=S, values=vals)
    assert delta1(b) == diff, "witness verification failed"
    return b


def normalize_cocycle(c: Cochain2) -> tuple[Cochain2, Cochain1]:
    """Cohomologous cocycle with c(1, g) = c(g, 1) = 0, plus the witness.

    The constant shift b(g) = −c(1,1) does the whole job: the cocycle
    identity forces c(1, g) = c(1, 1) and c(g, 1) = g·c(1, 1), and both are
    cancelled by δb.  Character evaluation never requires this; it is a
    convenience for presenting representatives.
    """
    require_cocycle(c)
    S = c.gset
    c11 = c.values[0][0]
    if not any(c11):
        return c, zero_cochain1(S)
    shift = tuple(-v for v in c11)
    b = Cochain1(gset=S, values=tuple(shift for _ in range(S.group.order)))
    normalized = cochain2_add(c, delta1(b))
    assert all(not v for v in normalized.values[0][0])
    return normalized, b


# ---------------------------------------------------------------------------
# H² computation


@dataclass(frozen=True)
class H2Group:
    """H²(G; (Q/Z)^S) presented by elementary divisors and generators.

    ``divisors`` is the chain of nontrivial cyclic orders (d_1 | d_2 | ...);
    ``representatives[j]`` is a cocycle generating the j-th cyclic factor.
    Integer combinations of representatives, with coefficients taken mod
    the matching divisors, hit every class exactly once.
    """

    modulus: int
    divisors: tuple[int, ...]
    representatives: tuple[Cochain2, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out


def _delta2_rows(G: PermGroup, S: GSet):
    """Yield the integer rows of δ² : C² → C³, one per (g, h, k, component)."""
    n, nS = G.order, S.size
    n2 = n * n * nS
    mul = G.mul
    inv_rows = [S.action[G.inv[g]] for g in range(n)]
    for g in range(n):
        inv_g = inv_rows[g]
        for h in range(n):
            gh = mul[g][h]
            base_gh = (g * n + h) * nS
            for k in range(n):
                base_hk = (h * n + k) * nS
                base_ghk = (gh * n + k) * nS
                base_g_hk = (g * n + mul[h][k]) * nS
                for i in range(nS):
                    row = np.zeros(n2, dtype=np.int64)
                    row[base_hk + inv_g[i]] += 1
                    row[base_ghk + i] -= 1
                    row[base_g_hk + i] += 1
                    row[base_gh + i] -= 1
                    yield row


def _verify_kernel_mod(G: PermGroup, S: GSet, K: int, vec: np.ndarray) -> bool:
    """Direct check that a flat mod-K vector satisfies every δ² condition."""
    n, nS = G.order, S.size
    cube = vec.reshape(n, n, nS)
    mul = np.array(G.mul, dtype=np.intp)
    for g in range(n):
        inv_g = np.array(S.action[G.inv[g]], dtype=np.intp)
        t1 = cube[:, :, inv_g]                             # c(h,k) permuted
        t2 = cube[mul[g]]                                  # c(gh, k)
        t3 = cube[g][mul]                                  # c(g, hk)
        t4 = cube[g][:, np.newaxis, :]                     # c(g, h)
        if np.any((t1 - t2 + t3 - t4) % K):
            return False
    return True


def _cochain_from_modk(S: GSet, vec, K: int) -> Cochain2:
    n, nS = S.group.order, S.size
    values = []
    pos = 0
    for g in range(n):
        plane = []
        for h in range(n):
            plane.append(tuple(QZ.of(int(vec[pos + i]), K) for i in range(nS)))
            pos += nS
        values.append(tuple(plane))
    return Cochain2(gset=S, values=tuple(values))


@lru_cache(maxsize=None)
def h2_compute(G: PermGroup, S: GSet, K: int | None = None,
               cap: int = 2_000_000) -> H2Group:
    """Compute H²(G; (Q/Z)^S) with cocycles sampled at modulus K.

    The kernel of δ² is computed inside (1/K)Z/Z-valued cochains (K
    defaults to |G|, which already surjects onto the full cohomology group
    because its exponent divides |G|), and is then quotiented by the
    subgroup of cochains that bound over divisible coefficients — decided
    by integrality of the left-kernel functionals of the δ¹ matrix.  The
    result is the elementary-divisor presentation with explicit generating
    cocycles.
    """
    if S.group != G:
        raise ValidationError("G-set does not belong to the given group")
    n, nS = G.order, S.size
    K = n if K is None else int(K)
    if K < 1:
        raise ValidationError("modulus must be >= 1")
    if n == 1 or K == 1 or nS == 0:
        return H2Group(modulus=K, divisors=(), representatives=())
    n1, n2 = n * nS, n * n * nS
    if n ** 3 * nS > cap:
        raise SizeCapError(
            f"coboundary system has {n ** 3 * nS} rows, over the cap of {cap}")

    # cocycles mod K: kernel of the δ² matrix over Z/K
    ech = ModEchelon(n2, K)
    for row in _delta2_rows(G, S):
        ech.insert(row)
    gens, orders = kernel_mod_generators(ech.matrix(), K)
    for z in gens:
        assert _verify_kernel_mod(G, S, K, z), "kernel generator fails the cocycle identity"
    if not gens:
        return H2Group(modulus=K, divisors=(), representatives=())
    m = len(gens)
    zmat = np.stack(gens, axis=1)                       # n2 × m, mod K

    # divisible-coboundary conditions: u·w ∈ Z for every left-kernel u of δ¹
    u_basis = left_kernel_basis(delta1_matrix(S))
    if u_basis:
        u0 = np.array([[int(x) % K for x in u] for u in u_basis], dtype=np.int64)
        cond = (u0 @ zmat) % K
    else:
        cond = np.zeros((0, m), dtype=np.int64)

    # all integer t with cond·t ≡ 0 (mod K), as columns of an m × 2m matrix
    diag, vm = diagonalize_mod(cond, K)
    scales = [K // gcd(d, K) for d in diag] + [1] * (m - len(diag))
    lat = np.zeros((m, 2 * m), dtype=object)
    for j in range(m):
        for i in range(m):
            lat[i, j] = int(vm[i, j]) * scales[j]
        lat[j, m + j] = K
    snf = smith_normal_form(lat)

    divisors = []
    reps = []
    for j in range(m):
        e = snf.divisors[j]
        assert e >= 1, "coboundary lattice must have full rank"
        if e == 1:
            continue
        tcol = lat @ snf.V[:, j]
        t = []
        for i in range(m):
            q, r = divmod(int(tcol[i]), e)
            assert r == 0, "generator extraction expected exact division"
            t.append(q % orders[i])
        vec = np.zeros(n2, dtype=np.int64)
        for i in range(m):
            if t[i]:
                vec = (vec + t[i] * gens[i]) % K
        divisors.append(int(e))
        rep = _cochain_from_modk(S, vec, K)
        require_cocycle(rep)
        reps.append(rep)
    return H2Group(modulus=K, divisors=tuple(divisors),
                   representatives=tuple(reps))


def shapiro_compare(G: PermGroup, H: Subgroup,
                    K: int | None = None) -> tuple[bool, tuple[int, ...], tuple[int, ...]]:
    """Compare H²(H; Q/Z) with H²(G; (Q/Z)^{G/H}) by elementary divisors.

    The two are abstractly isomorphic (induction identifies the coefficient
    modules); this runs both computations independently and reports whether
    the divisor lists agree, plus the lists themselves.
    """
    sg = subgroup_group(H)
    h_side = h2_compute(sg.group, trivial_gset(sg.group, 1), K)
    reps = left_coset_reps(G, H)
    g_side = h2_compute(G, coset_gset(G, H, reps), K)
    return h_side.divisors == g_side.divisors, h_side.divisors, g_side.divisors
