"""Finite left G-sets: the combinatorial part of a 2-representation.

A G-set is stored as a dense action table ``action[g][s]`` over element
indices of a :class:`~tworeps.permgrp.PermGroup`.  Everything is a left
action: ``action(g, action(h, s)) == action(g h, s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .permgrp import (CosetReps, PermGroup, Subgroup, subgroup_from_indices,
                      subgroup_group)


@dataclass(frozen=True)
class GSet:
    """A validated left action of ``group`` on ``{0..size-1}``."""

    group: PermGroup
    size: int
    action: tuple[tuple[int, ...], ...]

    def apply(self, g: int, s: int) -> int:
        return self.action[g][s]

    def apply_inv(self, g: int, s: int) -> int:
        return self.action[self.group.inv[g]][s]

    def __repr__(self):
        return f"GSet(size={self.size} over {self.group!r})"


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    base: int
    stabilizer: Subgroup


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[Orbit, ...]
    point_to_orbit: tuple[int, ...]


def gset_from_action(group: PermGroup, size: int, action) -> GSet:
    """Validate an action table: identity fixes everything, rows are
    bijections, and the composition axiom holds for every (g, h, s)."""
    table = tuple(tuple(row) for row in action)
    if len(table) != group.order:
        raise ValidationError(
            f"action table has {len(table)} rows, expected one per group element ({group.order})")
    for g, row in enumerate(table):
        if len(row) != size:
            raise ValidationError(f"action row {g} has length {len(row)}, expected {size}")
        seen = [False] * size
        for s, t in enumerate(row):
            if not isinstance(t, int) or not 0 <= t < size:
                raise ValidationError(f"action({g}, {s}) = {t!r} is not a point")
            if seen[t]:
                raise ValidationError(f"action of element {g} is not a bijection (image {t} repeats)")
            seen[t] = True
    for s in range(size):
        if table[0][s] != s:
            raise ValidationError(f"identity axiom fails: action(identity, {s}) = {table[0][s]}")
    mul = group.mul
    for g in range(group.order):
        for h in range(group.order):
            gh = mul[g][h]
            rg, rh, rgh = table[g], table[h], table[gh]
            for s in range(size):
                if rg[rh[s]] != rgh[s]:
                    raise ValidationError(
                        f"compatibility axiom fails at (g={g}, h={h}, s={s}): "
                        f"{rg[rh[s]]} != {rgh[s]}")
    return GSet(group=group, size=size, action=table)


def trivial_gset(group: PermGroup, size: int = 1) -> GSet:
    table = tuple(tuple(range(size)) for _ in range(group.order))
    return GSet(group=group, size=size, action=table)


def regular_gset(group: PermGroup) -> GSet:
    """Left regular action of the group on itself (points = element indices)."""
    return GSet(group=group, size=group.order, action=group.mul)


def orbits_with_stabilizers(gset: GSet) -> OrbitDecomposition:
    """Orbits in order of least contained point, each with its least point as
    base and the full point stabilizer of the base."""
    group = gset.group
    point_to_orbit = [-1] * gset.size
    orbits = []
    for s in range(gset.size):
        if point_to_orbit[s] >= 0:
            continue
        orbit = sorted({gset.action[g][s] for g in range(group.order)})
        idx = len(orbits)
        for t in orbit:
            point_to_orbit[t] = idx
        stab = [g for g in range(group.order) if gset.action[g][s] == s]
        orbits.append(Orbit(points=tuple(orbit), base=s,
                            stabilizer=subgroup_from_indices(group, stab)))
    return OrbitDecomposition(orbits=tuple(orbits), point_to_orbit=tuple(point_to_orbit))


def fixed_points(gset: GSet, g: int) -> tuple[int, ...]:
    """Points with action(g, s) = s, sorted."""
    row = gset.action[g]
    return tuple(s for s in range(gset.size) if row[s] == s)


def gset_sum(a: GSet, b: GSet) -> GSet:
    """Disjoint union, points of ``a`` first."""
    if a.group != b.group:
        raise ValidationError("G-set sum needs both actions over the same group")
    table = tuple(
        tuple(list(ra) + [a.size + t for t in rb])
        for ra, rb in zip(a.action, b.action)
    )
    return GSet(group=a.group, size=a.size + b.size, action=table)


def gset_product(a: GSet, b: GSet) -> GSet:
    """Diagonal action on pairs (s, t), ordered lexicographically with the
    first factor major: (0,0), (0,1), ..., (1,0), ..."""
    if a.group != b.group:
        raise ValidationError("G-set product needs both actions over the same group")
    size = a.size * b.size
    table = tuple(
        tuple(ra[s] * b.size + rb[t] for s in range(a.size) for t in range(b.size))
        for ra, rb in zip(a.action, b.action)
    )
    return GSet(group=a.group, size=size, action=table)


def empty_gset(group: PermGroup) -> GSet:
    """The zero-dimensional G-set (unit for the direct sum)."""
    return GSet(group=group, size=0, action=tuple(() for _ in range(group.order)))


def induced_gset(group: PermGroup, sub: Subgroup, sub_set: GSet,
                 reps: CosetReps) -> tuple[GSet, dict[tuple[int, int], int]]:
    """Induce an H-set along H <= G using the transversal ``reps``.

    Points are labeled (i, s) for coset position i and H-set point s, in
    lexicographic order with i major; the returned map sends labels to point
    indices.  The action is g·(j, s) = (i, h·s) where g r_j = r_i h with
    h in H.
    """
    sg = subgroup_group(sub)
    if sub_set.group != sg.group:
        raise ValidationError("the induced set's H-set must be an action of the subgroup's own group")
    g_amb = sub.ambient
    if g_amb != group:
        raise ValidationError("subgroup does not live in the given group")
    m = reps.count
    if m * sub.order != group.order or any(reps.coset_of[r] != i for i, r in enumerate(reps.reps)):
        raise ValidationError("coset representatives are inconsistent with the subgroup")
    size = m * sub_set.size
    label = {(i, s): i * sub_set.size + s for i in range(m) for s in range(sub_set.size)}
    table = []
    for g in range(group.order):
        row = [0] * size
        for j in range(m):
            t = group.mul[g][reps.reps[j]]
            i = reps.coset_of[t]
            h_amb = group.mul[group.inv[reps.reps[i]]][t]
            h = sg.to_local[h_amb]
            if h < 0:
                raise ValidationError("transversal decomposition left the subgroup")
            for s in range(sub_set.size):
                row[label[(j, s)]] = label[(i, sub_set.action[h][s])]
        table.append(tuple(row))
    return GSet(group=group, size=size, action=tuple(table)), label


def coset_gset(group: PermGroup, sub: Subgroup, reps: CosetReps) -> GSet:
    """The transitive action of G on the left cosets of H, point i = r_i H."""
    table = tuple(
        tuple(reps.coset_of[group.mul[g][r]] for r in reps.reps)
        for g in range(group.order)
    )
    return GSet(group=group, size=reps.count, action=table)
