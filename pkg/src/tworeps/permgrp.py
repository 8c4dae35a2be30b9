"""Finite groups realized as fully enumerated permutation groups.

Every group here is a set of permutations of ``{0..degree-1}``, closed under
composition, with all arithmetic done through dense index tables: element
``i`` is ``elements[i]``, products are looked up in ``mul``, inverses in
``inv``.  The composition convention is ``(p * q)(x) = p(q(x))``: the right
factor acts first.  This is fixed once and tested; everything downstream
(actions, cochains, induced representations) relies on it.

Permutations are plain tuples ``images`` with ``images[x]`` the image of
point ``x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import SizeCapError, ValidationError

Perm = tuple[int, ...]

#: Groups are enumerated in full, so refuse anything silly by default.
DEFAULT_ORDER_CAP = 2048


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Composite ``p after q``: ``(p ∘ q)(x) = p(q(x))``."""
    return tuple(p[qx] for qx in q)


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for x, px in enumerate(p):
        inv[px] = x
    return tuple(inv)


def check_perm(p, degree: int) -> Perm:
    """Validate and normalize a candidate permutation of ``{0..degree-1}``."""
    p = tuple(p)
    if len(p) != degree:
        raise ValidationError(f"permutation has length {len(p)}, expected degree {degree}")
    seen = [False] * degree
    for x in p:
        if not isinstance(x, int) or not 0 <= x < degree:
            raise ValidationError(f"permutation entry {x!r} is not a point in 0..{degree - 1}")
        if seen[x]:
            raise ValidationError(f"permutation repeats the image {x}: not a bijection")
        seen[x] = True
    return p


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group with index-based Cayley tables.

    ``elements[0]`` is always the identity.  ``mul[i][j]`` is the index of
    ``elements[i] ∘ elements[j]`` (``j`` acts first), ``inv[i]`` the index of
    the inverse.  Instances are immutable; build them with
    :func:`group_from_generators` or :func:`named_group`.
    """

    degree: int
    elements: tuple[Perm, ...]
    mul: tuple[tuple[int, ...], ...] = field(repr=False)
    inv: tuple[int, ...] = field(repr=False)
    generators: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def conj(self, s: int, g: int) -> int:
        """Index of ``s g s⁻¹``."""
        return self.mul[self.mul[s][g]][self.inv[s]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _close_under_products(gens: list[Perm], degree: int, cap: int) -> list[Perm]:
    # Breadth-first closure from the identity, generator order as given.
    ident = identity_perm(degree)
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = perm_compose(g, p)
                if q not in index:
                    if len(elements) >= cap:
                        raise SizeCapError(
                            f"group order exceeds cap of {cap} elements"
                        )
                    index[q] = len(elements)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt
    return elements


def group_from_generators(gens, degree: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Enumerate the group generated by ``gens`` inside Sym({0..degree-1}).

    Element order is deterministic: breadth-first from the identity, applying
    generators in the order given.  Raises :class:`SizeCapError` if the
    closure grows past ``cap`` and :class:`ValidationError` on a malformed
    generator.
    """
    gens = [check_perm(g, degree) for g in gens]
    elements = _close_under_products(gens, degree, cap)
    index = {p: i for i, p in enumerate(elements)}
    n = len(elements)
    mul = tuple(
        tuple(index[perm_compose(elements[i], elements[j])] for j in range(n))
        for i in range(n)
    )
    inv = tuple(index[perm_inverse(p)] for p in elements)
    gen_idx = []
    for g in gens:
        i = index[g]
        if i != 0 and i not in gen_idx:
            gen_idx.append(i)
    return PermGroup(degree=degree, elements=tuple(elements), mul=mul, inv=inv,
                     generators=tuple(gen_idx))


def cyclic_group(n: int) -> PermGroup:
    """Z/n acting on n points by the cycle x ↦ x+1."""
    if n < 1:
        raise ValidationError(f"cyclic group needs n >= 1, got {n}")
    cyc = tuple((x + 1) % n for x in range(n))
    return group_from_generators([cyc], n)

def symmetric_group(n: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """All of Sym(n) on n points, generated by (0 1) and the n-cycle."""
    if n < 1:
        raise ValidationError(f"symmetric group needs n >= 1, got {n}")
    if n == 1:
        return group_from_generators([], 1)
    swap = tuple([1, 0] + list(range(2, n)))
    cyc = tuple((x + 1) % n for x in range(n))
    gens = [swap] if n == 2 else [swap, cyc]
    return group_from_generators(gens, n, cap=cap)

def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on the n vertices of an n-gon."""
    if n < 3:
        raise ValidationError(f"dihedral group needs n >= 3, got {n}")
    rot = tuple((x + 1) % n for x in range(n))
    ref = tuple((-x) % n for x in range(n))
    return group_from_generators([rot, ref], n)

def klein_four_group() -> PermGroup:
    """Z/2 x Z/2 as the three double transpositions on 4 points."""
    a = (1, 0, 3, 2)
    b = (2, 3, 0, 1)
    return group_from_generators([a, b], 4)


def product_group(a: PermGroup, b: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the two point sets."""
    d = a.degree + b.degree
    gens = []
    for i in a.generators:
        p = a.elements[i]
        gens.append(tuple(list(p) + [a.degree + x for x in range(b.degree)]))
    for i in b.generators:
        p = b.elements[i]
        gens.append(tuple(list(range(a.degree)) + [a.degree + p[x] for x in range(b.degree)]))
    return group_from_generators(gens, d, cap=max(DEFAULT_ORDER_CAP, a.order * b.order))


_NAMED = {"cyclic", "symmetric", "dihedral", "klein4"}


def named_group(name: str, n: int | None = None) -> PermGroup:
    """Canonical permutation realization of a named family member.

    Supported: ``cyclic n``, ``symmetric n``, ``dihedral n`` (order 2n,
    n >= 3) and ``klein4``.  Products are built with :func:`product_group`
    or via the spec-string syntax of :func:`parse_group_spec`.
    """
    if name == "cyclic":
        if n is None:
            raise ValidationError("cyclic group needs a parameter n")
        return cyclic_group(n)
    if name == "symmetric":
        if n is None:
            raise ValidationError("symmetric group needs a parameter n")
        return symmetric_group(n)
    if name == "dihedral":
        if n is None:
            raise ValidationError("dihedral group needs a parameter n")
        return dihedral_group(n)
    if name == "klein4":
        if n is not None:
            raise ValidationError("klein4 takes no parameter")
        return klein_four_group()
    raise ValidationError(f"unknown group name {name!r} (expected one of {sorted(_NAMED)})")


def parse_group_spec(spec: str) -> PermGroup:
    """Parse a compact group spec like ``symmetric:3``, ``klein4`` or a
    product ``cyclic:2xcyclic:4`` (factors joined with ``x``)."""
    parts = spec.strip().split("x")
    groups = []
    for part in parts:
        part = part.strip()
        if not part:
            raise ValidationError(f"empty factor in group spec {spec!r}")
        if ":" in part:
            name, _, param = part.partition(":")
            try:
                n = int(param)
            except ValueError:
                raise ValidationError(f"bad parameter {param!r} in group spec {spec!r}") from None
            groups.append(named_group(name.strip(), n))
        else:
            groups.append(named_group(part))
    out = groups[0]
    for g in groups[1:]:
        out = product_group(out, g)
    return out


# ---------------------------------------------------------------------------
# commuting pairs and simultaneous conjugacy


def commuting_pairs(group: PermGroup) -> list[tuple[int, int]]:
    """All ordered pairs (g, h) with gh = hg, in lexicographic index order."""
    mul = group.mul
    return [(g, h) for g in range(group.order) for h in range(group.order)
            if mul[g][h] == mul[h][g]]


def conjugacy_classes(group: PermGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted tuples, ordered by least member."""
    seen = [False] * group.order
    classes = []
    for g in range(group.order):
        if seen[g]:
            continue
        orbit = {group.conj(s, g) for s in range(group.order)}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    return classes


def simultaneous_pair_classes(group: PermGroup) -> list[tuple[tuple[int, int], ...]]:
    """Orbits of s·(g,h) = (sgs⁻¹, shs⁻¹) on commuting pairs.

    Each class is a sorted tuple of pairs; its first entry (the least pair
    lexicographically) is the canonical representative.  Classes are ordered
    by representative.
    """
    pairs = commuting_pairs(group)
    pair_set = set(pairs)
    seen = set()
    classes = []
    for p in pairs:
        if p in seen:
            continue
        g, h = p
        orbit = {(group.conj(s, g), group.conj(s, h)) for s in range(group.order)}
        assert orbit <= pair_set
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return classes


# ---------------------------------------------------------------------------
# subgroups and cosets


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by the sorted element indices of its members."""

    ambient: PermGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._member_set()

    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.ambient!r})"


def subgroup_from_indices(group: PermGroup, indices) -> Subgroup:
    """Validate that ``indices`` is closed under products and inverses."""
    members = tuple(sorted(set(indices)))
    mset = set(members)
    if 0 not in mset:
        raise ValidationError("subgroup must contain the identity (index 0)")
    for a in members:
        if not 0 <= a < group.order:
            raise ValidationError(f"element index {a} out of range")
        if group.inv[a] not in mset:
            raise ValidationError(f"subgroup not closed under inverse at element {a}")
        for b in members:
            if group.mul[a][b] not in mset:
                raise ValidationError(f"subgroup not closed under product at ({a}, {b})")
    return Subgroup(ambient=group, members=members)


def subgroup_generated(group: PermGroup, gen_indices) -> Subgroup:
    """Smallest subgroup of ``group`` containing the given element indices."""
    members = {0}
    frontier = [0]
    gens = [g for g in gen_indices]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.mul[g][a]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(ambient=group, members=tuple(sorted(members)))


def trivial_subgroup(group: PermGroup) -> Subgroup:
    return Subgroup(ambient=group, members=(0,))


def full_subgroup(group: PermGroup) -> Subgroup:
    return Subgroup(ambient=group, members=tuple(range(group.order)))


@dataclass(frozen=True)
class SubgroupGroup:
    """A subgroup repackaged as a PermGroup of its own.

    ``to_local[a]`` maps an ambient element index to the local index (or -1
    for non-members); ``to_ambient`` is the inverse list.  Local element 0 is
    the identity and local order follows ascending ambient index, so the
    repackaging is deterministic.
    """

    group: PermGroup
    to_local: tuple[int, ...]
    to_ambient: tuple[int, ...]


@lru_cache(maxsize=None)
def subgroup_group(sub: Subgroup) -> SubgroupGroup:
    """Realize a subgroup as a standalone PermGroup on the ambient points."""
    amb = sub.ambient
    members = sub.members
    local = {a: i for i, a in enumerate(members)}
    elements = tuple(amb.elements[a] for a in members)
    n = len(members)
    mul = tuple(
        tuple(local[amb.mul[members[i]][members[j]]] for j in range(n))
        for i in range(n)
    )
    inv = tuple(local[amb.inv[a]] for a in members)
    gens = tuple(i for i in range(1, n))
    to_local = tuple(local.get(a, -1) for a in range(amb.order))
    grp = PermGroup(degree=amb.degree, elements=elements, mul=mul, inv=inv,
                    generators=gens)
    return SubgroupGroup(group=grp, to_local=to_local, to_ambient=members)


@dataclass(frozen=True)
class CosetReps:
    """Left coset representatives r_1..r_m of a subgroup, r_1 = identity.

    ``coset_of[g]`` is the position i with g ∈ r_i H.
    """

    reps: tuple[int, ...]
    coset_of: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.reps)


def left_coset_reps(group: PermGroup, sub: Subgroup) -> CosetReps:
    """Deterministic left transversal: each new representative is the least
    element index not yet covered, starting from the identity."""
    if sub.ambient is not group and sub.ambient != group:
        raise ValidationError("subgroup does not live in the given group")
    coset_of = [-1] * group.order
    reps = []
    for g in range(group.order):
        if coset_of[g] >= 0:
            continue
        i = len(reps)
        reps.append(g)
        for h in sub.members:
            coset_of[group.mul[g][h]] = i
    if len(reps) * sub.order != group.order:
        raise ValidationError("coset covering failed: not a subgroup?")
    return CosetReps(reps=tuple(reps), coset_of=tuple(coset_of))


# ---------------------------------------------------------------------------
# subgroup enumeration (used by collision search and the test corpus)


def all_subgroups(group: PermGroup) -> list[Subgroup]:
    """Every subgroup, found by closing known subgroups under one extra
    generator until nothing new appears.  Fine for the fully enumerated
    group sizes this library targets."""
    seen = {(0,)}
    out = [trivial_subgroup(group)]
    frontier = [out[0]]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in range(1, group.order):
                if g in sub._member_set():
                    continue
                bigger = subgroup_generated(group, list(sub.members) + [g])
                if bigger.members not in seen:
                    seen.add(bigger.members)
                    out.append(bigger)
                    nxt.append(bigger)
        frontier = nxt
    out.sort(key=lambda s: (s.order, s.members))
    return out


def conjugate_subgroup(group: PermGroup, sub: Subgroup, s: int) -> Subgroup:
    members = tuple(sorted(group.conj(s, g) for g in sub.members))
    return Subgroup(ambient=group, members=members)


def subgroup_conjugacy_classes(group: PermGroup) -> list[list[Subgroup]]:
    """Subgroups grouped into conjugacy classes; class representative is the
    member with the least member tuple, classes sorted by (order, members)."""
    subs = all_subgroups(group)
    by_members = {s.members: s for s in subs}
    seen = set()
    classes = []
    for sub in subs:
        if sub.members in seen:
            continue
        orbit = {conjugate_subgroup(group, sub, s).members for s in range(group.order)}
        seen |= orbit
        classes.append([by_members[m] for m in sorted(orbit)])
    classes.sort(key=lambda cls: (cls[0].order, cls[0].members))
    return classes


# ---------------------------------------------------------------------------
# cycle-notation parsing for the CLI ("(0 1 2)(3 4)" or "(012)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse permutation cycle notation into an image tuple.

    Grammar: parenthesized cycles of point indices.  Points may be run
    together as single digits ("(012)") or separated by spaces/commas for
    multi-digit degrees ("(10, 11)").  Whitespace is ignored; fixed points
    may be omitted or written as singleton cycles.
    """
    images = list(range(degree))
    moved = set()
    body = text.strip()
    if body in ("", "()", "id", "e"):
        return tuple(images)
    chunks = re.findall(r"\([^()]*\)", body)
    if "".join(chunks).replace(" ", "") != body.replace(" ", "") or not chunks:
        raise ValidationError(f"malformed cycle notation {text!r}")
    for chunk in chunks:
        inner = chunk[1:-1].strip()
        if not inner:
            continue
        if any(sep in inner for sep in (" ", ",")):
            points = [p for p in inner.replace(",", " ").split() if p]
        else:
            points = list(inner)
        try:
            cycle = [int(p) for p in points]
        except ValueError:
            raise ValidationError(f"non-numeric point in cycles {text!r}") from None
        for p in cycle:
            if not 0 <= p < degree:
                raise ValidationError(f"point {p} out of range for degree {degree}")
            if p in moved:
                raise ValidationError(f"point {p} appears twice in cycles {text!r}")
            moved.add(p)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return check_perm(images, degree)


def cycle_string(p: Perm) -> str:
    """Inverse of :func:`parse_cycles`: disjoint-cycle string, fixed points
    omitted, identity rendered as ``()``."""
    seen = [False] * len(p)
    parts = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        parts.append("(" + " ".join(str(v) for v in cyc) + ")")
    return "".join(parts) if parts else "()"
