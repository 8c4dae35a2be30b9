"""2-representations as validated (G-set, 2-cocycle) pairs.

Up to equivalence, a 2-representation of G on 2-vector spaces is a
permutation action ρ : G → Σ_n together with a 2-cocycle of G valued in the
permutation module (Q/Z)^n — the G-set supplies ρ, the cocycle supplies the
compositor scalars, with the unit datum sitting in c(1,1).  Two pairs are
equivalent exactly when some bijection f of the underlying sets conjugates
one action into the other and makes the cocycles cohomologous after
reindexing by f.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cohomology import (Cochain1, Cochain2, are_cohomologous, require_cocycle,
                         zero_cochain2)
from .errors import NonCocycleError, SizeCapError, ValidationError
from .gset import (GSet, empty_gset, gset_product, gset_sum, induced_gset,
                   orbits_with_stabilizers, trivial_gset)
from .permgrp import (CosetReps, Perm, PermGroup, Subgroup, subgroup_group)


@dataclass(frozen=True)
class TwoRep:
    """A validated pair: G-set (the permutation part) plus 2-cocycle."""

    gset: GSet
    cocycle: Cochain2

    @property
    def group(self) -> PermGroup:
        return self.gset.group

    @property
    def dimension(self) -> int:
        return self.gset.size

    def __repr__(self):
        return f"TwoRep(dim={self.dimension} over {self.group!r})"


@dataclass(frozen=True)
class EquivalenceWitness:
    """Equivalence data: f conjugates the actions, b bounds the cocycle
    difference c' − f·c."""

    f: Perm
    b: Cochain1


def tworep_new(gset: GSet, cocycle: Cochain2) -> TwoRep:
    """Validate and wrap; rejects non-cocycles with the failing triple."""
    if cocycle.gset != gset:
        raise ValidationError("cocycle is not defined over the given G-set")
    require_cocycle(cocycle)
    return TwoRep(gset=gset, cocycle=cocycle)


def trivial_tworep(group: PermGroup, size: int = 1) -> TwoRep:
    gs = trivial_gset(group, size)
    return TwoRep(gset=gs, cocycle=zero_cochain2(gs))


def tworep_from_gset(gset: GSet) -> TwoRep:
    """The representation with the given permutation part and zero cocycle."""
    return TwoRep(gset=gset, cocycle=zero_cochain2(gset))


def zero_tworep(group: PermGroup) -> TwoRep:
    """The empty (0-dimensional) representation, the unit for direct sums."""
    gs = empty_gset(group)
    return TwoRep(gset=gs, cocycle=zero_cochain2(gs))


def direct_sum(a: TwoRep, b: TwoRep) -> TwoRep:
    """Block sum: disjoint union of the G-sets, concatenated cocycle vectors."""
    if a.group != b.group:
        raise ValidationError("direct sum needs representations of the same group")
    gs = gset_sum(a.gset, b.gset)
    n = a.group.order
    values = tuple(
        tuple(a.cocycle.values[g][h] + b.cocycle.values[g][h] for h in range(n))
        for g in range(n))
    return TwoRep(gset=gs, cocycle=Cochain2(gset=gs, values=values))


def tensor(a: TwoRep, b: TwoRep) -> TwoRep:
    """Tensor product: diagonal action on pairs (i, i') in lexicographic
    order (first factor major); the cocycle component at (i, i') is
    c_i + c'_{i'}."""
    if a.group != b.group:
        raise ValidationError("tensor product needs representations of the same group")
    gs = gset_product(a.gset, b.gset)
    n = a.group.order
    values = tuple(
        tuple(tuple(x + y
                    for x in a.cocycle.values[g][h]
                    for y in b.cocycle.values[g][h])
              for h in range(n))
        for g in range(n))
    return TwoRep(gset=gs, cocycle=Cochain2(gset=gs, values=values))


def induce(group: PermGroup, sub: Subgroup, rep: TwoRep,
           reps: CosetReps) -> TwoRep:
    """Induced representation along H <= G with transversal ``reps``.

    The underlying set is the induced G-set on labels (i, s).  For elements
    g1, g2 the cocycle component at (r_i, s) is c_s(h1, h2) where
    g1 r_j = r_i h1 and g2 r_k = r_j h2 pick out the unique nonzero block
    path through (i, j, k).  The result is re-validated; a failure would
    mean the index bookkeeping is wrong and is raised as NonCocycleError.
    """
    sg = subgroup_group(sub)
    if rep.group != sg.group:
        raise ValidationError("representation to induce must live over the subgroup's own group")
    ind_set, label = induced_gset(group, sub, rep.gset, reps)
    n = group.order
    m = reps.count
    nS = rep.gset.size
    mul, inv = group.mul, group.inv
    c = rep.cocycle.values

    # j(g, i): the column block g maps onto row block i, and the H-part h(g, i)
    jtab = [[0] * m for _ in range(n)]
    htab = [[0] * m for _ in range(n)]
    for g in range(n):
        ginv = inv[g]
        for i in range(m):
            j = reps.coset_of[mul[ginv][reps.reps[i]]]
            h_amb = mul[mul[inv[reps.reps[i]]][g]][reps.reps[j]]
            h = sg.to_local[h_amb]
            if h < 0:
                raise ValidationError("transversal decomposition left the subgroup")
            jtab[g][i] = j
            htab[g][i] = h

    values = []
    for g1 in range(n):
        plane = []
        for g2 in range(n):
            vec = [None] * ind_set.size
            for i in range(m):
                j = jtab[g1][i]
                h1 = htab[g1][i]
                h2 = htab[g2][j]
                block = c[h1][h2]
                base = i * nS
                for s in range(nS):
                    vec[base + s] = block[s]
            plane.append(tuple(vec))
        values.append(tuple(plane))
    cocycle = Cochain2(gset=ind_set, values=tuple(values))
    try:
        require_cocycle(cocycle)
    except NonCocycleError as exc:
        raise NonCocycleError(
            f"induced cochain failed the cocycle identity ({exc}); "
            "this indicates an internal block-indexing error") from exc
    return TwoRep(gset=ind_set, cocycle=cocycle)


# ---------------------------------------------------------------------------
# equivalence


def pullback_cochain(f: Perm, c: Cochain2, target: GSet) -> Cochain2:
    """Reindex a cochain along a bijection f of underlying sets:
    (f·c)_i = c_{f⁻¹(i)}, producing a cochain on the target G-set."""
    if len(f) != c.gset.size or target.size != c.gset.size:
        raise ValidationError("bijection length does not match the G-sets")
    finv = [0] * len(f)
    for x, fx in enumerate(f):
        finv[fx] = x
    n = target.group.order
    values = tuple(
        tuple(tuple(c.values[g][h][finv[i]] for i in range(target.size))
              for h in range(n))
        for g in range(n))
    return Cochain2(gset=target, values=values)


def _conjugate_members(group: PermGroup, members: tuple[int, ...], s: int):
    return frozenset(group.conj(s, g) for g in members)


def _stabilizers_conjugate(group: PermGroup, a: Subgroup, b: Subgroup) -> bool:
    if a.order != b.order:
        return False
    target = frozenset(b.members)
    return any(_conjugate_members(group, a.members, s) == target
               for s in range(group.order))


def equivariant_bijections(src: GSet, dst: GSet, max_candidates: int = 100_000):
    """Yield every G-set isomorphism src → dst as an image tuple.

    Orbits are paired only when sizes match and base stabilizers are
    conjugate; within one matched transitive pair the candidate maps are
    indexed by the points of the target orbit whose stabilizer equals the
    source base stabilizer.  Deterministic order throughout.
    """
    group = src.group
    if dst.group != group or src.size != dst.size:
        return
    dec_s = orbits_with_stabilizers(src)
    dec_d = orbits_with_stabilizers(dst)
    if len(dec_s.orbits) != len(dec_d.orbits):
        return

    # bucket orbits by (size, stabilizer conjugacy)
    buckets: list[tuple[list[int], list[int]]] = []
    reps_of_bucket: list = []
    for ia, orb in enumerate(dec_s.orbits):
        for bi, rep in enumerate(reps_of_bucket):
            if len(orb.points) == len(rep.points) and _stabilizers_conjugate(
                    group, orb.stabilizer, rep.stabilizer):
                buckets[bi][0].append(ia)
                break
        else:
            reps_of_bucket.append(orb)
            buckets.append(([ia], []))
    for ib, orb in enumerate(dec_d.orbits):
        for bi, rep in enumerate(reps_of_bucket):
            if len(orb.points) == len(rep.points) and _stabilizers_conjugate(
                    group, orb.stabilizer, rep.stabilizer):
                buckets[bi][1].append(ib)
                break
        else:
            return  # dst has an orbit type src lacks
    if any(len(a) != len(b) for a, b in buckets):
        return

    # transporter elements: for each src orbit, g moving the base to each point
    transporters = []
    for orb in dec_s.orbits:
        tr = {}
        for g in range(group.order):
            x = src.action[g][orb.base]
            if x not in tr:
                tr[x] = g
        transporters.append(tr)

    count = 0
    pairings = itertools.product(
        *[itertools.permutations(b) for _, b in buckets])
    for pairing in pairings:
        # orbit_map[ia] = ib for every src orbit index
        orbit_map = {}
        for (src_idxs, _), perm in zip(buckets, pairing):
            orbit_map.update(zip(src_idxs, perm))
        choices = []
        ok = True
        for ia in range(len(dec_s.orbits)):
            orb_s = dec_s.orbits[ia]
            orb_d = dec_d.orbits[orbit_map[ia]]
            stab = set(orb_s.stabilizer.members)
            targets = [t for t in orb_d.points
                       if {g for g in range(group.order)
                           if dst.action[g][t] == t} == stab]
            if not targets:
                ok = False
                break
            choices.append(targets)
        if not ok:
            continue
        for combo in itertools.product(*choices):
            count += 1
            if count > max_candidates:
                raise SizeCapError(
                    f"equivalence search exceeded {max_candidates} candidate maps")
            images = [0] * src.size
            for ia, orb in enumerate(dec_s.orbits):
                t = combo[ia]
                for x, g in transporters[ia].items():
                    images[x] = dst.action[g][t]
            f = tuple(images)
            assert all(
                f[src.action[g][x]] == dst.action[g][f[x]]
                for g in range(group.order) for x in range(src.size)
            ), "constructed map is not equivariant"
            yield f


def are_equivalent(a: TwoRep, b: TwoRep,
                   max_candidates: int = 100_000) -> EquivalenceWitness | None:
    """Search for an equivalence: f with ρ' = f ρ f⁻¹ and [c'] = [f·c].

    Candidates f are exactly the G-set isomorphisms (there are few: no n!
    enumeration); for each one the cocycle condition is decided over
    divisible coefficients.  Returns the first witness found in the
    deterministic candidate order, or None.
    """
    if a.group != b.group:
        raise ValidationError("equivalence needs representations of the same group")
    for f in equivariant_bijections(a.gset, b.gset, max_candidates):
        moved = pullback_cochain(f, a.cocycle, b.gset)
        witness = are_cohomologous(moved, b.cocycle)
        if witness is not None:
            return EquivalenceWitness(f=f, b=witness)
    return None


# ---------------------------------------------------------------------------
# decomposition into induced 1-dimensional pieces


def decompose(rep: TwoRep) -> list[tuple[Subgroup, Cochain2]]:
    """Split into orbit blocks: one (stabilizer, point-cocycle) per orbit.

    For an orbit with base point s and stabilizer H, the returned cochain is
    d(h1, h2) = c_s(h1, h2) restricted to H, a 2-cocycle of H on a point
    (the restriction of the cocycle identity at a fixed point of H is
    exactly the point-module identity).  Inducing each piece back and
    summing recovers the original representation up to equivalence.
    """
    out = []
    dec = orbits_with_stabilizers(rep.gset)
    for orb in dec.orbits:
        sub = orb.stabilizer
        sg = subgroup_group(sub)
        point = trivial_gset(sg.group, 1)
        amb = sg.to_ambient
        values = tuple(
            tuple((rep.cocycle.values[amb[h1]][amb[h2]][orb.base],)
                  for h2 in range(sub.order))
            for h1 in range(sub.order))
        d = Cochain2(gset=point, values=values)
        require_cocycle(d)
        out.append((sub, d))
    return out
