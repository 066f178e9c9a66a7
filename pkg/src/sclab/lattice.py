"""Exhaustive subgroup lattices for groups at desk scale.

Subgroups are bitsets over the group's canonical element order (bit i set means
element i belongs). The lattice holds every subgroup, canonically ordered by
(order, member index tuple), so a bitset identifies a subgroup uniquely and
`SubgroupRef`s with equal bitsets always carry the same index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (CapExceeded, NotAPGroup, NotMutuallyNormalizing,
                     PrimeDoesNotDivide)
from .group import PermutationGroup

DEFAULT_ORDER_CAP = 2000
DEFAULT_SUBGROUP_CAP = 100_000


@dataclass(frozen=True, order=True)
class SubgroupRef:
    """A subgroup of the ambient group, addressed within its lattice."""
    order: int
    index: int
    bitset: int

    def __repr__(self):
        return f"SubgroupRef(index={self.index}, order={self.order})"


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def enumerate_subgroups(group: PermutationGroup, *, max_order: int = DEFAULT_ORDER_CAP,
                        max_subgroups: int = DEFAULT_SUBGROUP_CAP) -> "SubgroupLattice":
    """All subgroups of ``group``: cyclic subgroups first, then joins of pairs
    to a fixpoint."""
    if group.order > max_order:
        raise CapExceeded(f"group order {group.order} exceeds the cap {max_order}")
    found: set[int] = {1}
    for x in range(1, group.order):
        found.add(group.cyclic_bitset(x))
    frontier = sorted(found)
    known = sorted(found)
    while frontier:
        fresh = []
        for a in frontier:
            for b in known:
                if a == b or (a | b) in (a, b):
                    continue
                j = group.closure_bitset(a | b)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
                    if len(found) > max_subgroups:
                        raise CapExceeded(
                            f"subgroup count exceeded the cap {max_subgroups}")
        known.extend(fresh)
        frontier = fresh
    return SubgroupLattice(group, found)


class SubgroupLattice:
    def __init__(self, group: PermutationGroup, bitsets):
        self.group = group
        members = {bits: tuple(group.bitset_members(bits)) for bits in bitsets}
        order_key = lambda bits: (len(members[bits]), members[bits])
        self._bitsets = tuple(sorted(bitsets, key=order_key))
        self._members = members
        self.subgroups = tuple(
            SubgroupRef(order=len(members[bits]), index=i, bitset=bits)
            for i, bits in enumerate(self._bitsets))
        self._index = {bits: i for i, bits in enumerate(self._bitsets)}
        self._normalizer: dict[int, int] = {}
        self._centralizer: dict[int, int] = {}
        self._gens: dict[int, tuple[int, ...]] = {}
        self._pcore: dict[tuple[int, int], int] = {}
        self._elem_ab: dict[tuple[int, int], bool] = {}

    def __len__(self):
        return len(self.subgroups)

    # ----- lookup ---------------------------------------------------------

    def ref(self, index: int) -> SubgroupRef:
        return self.subgroups[index]

    def by_bitset(self, bits: int) -> SubgroupRef:
        try:
            return self.subgroups[self._index[bits]]
        except KeyError:
            raise AssertionError(
                "bitset is not a subgroup of the lattice; this is a bug") from None

    @property
    def trivial(self) -> SubgroupRef:
        return self.subgroups[0]

    @property
    def full(self) -> SubgroupRef:
        return self.subgroups[-1]

    def members(self, ref: SubgroupRef) -> tuple[int, ...]:
        return self._members[ref.bitset]

    def leq(self, a: SubgroupRef, b: SubgroupRef) -> bool:
        return a.bitset | b.bitset == b.bitset

    def lt(self, a: SubgroupRef, b: SubgroupRef) -> bool:
        return a.bitset != b.bitset and self.leq(a, b)

    def leq_indices(self, i: int, j: int) -> bool:
        a = self.subgroups[i].bitset
        b = self.subgroups[j].bitset
        return a | b == b

    def generating_set(self, ref: SubgroupRef) -> tuple[int, ...]:
        """A small generating set, chosen greedily in canonical element order."""
        if ref.index not in self._gens:
            gens: list[int] = []
            reach = 1
            for x in self._members[ref.bitset]:
                if not (reach >> x) & 1:
                    gens.append(x)
                    reach = self.group.closure_bitset(reach | (1 << x))
                    if reach == ref.bitset:
                        break
            self._gens[ref.index] = tuple(gens)
        return self._gens[ref.index]

    def generator_string(self, ref: SubgroupRef) -> str:
        gens = self.generating_set(ref)
        if not gens:
            return "()"
        return ", ".join(self.group.elements[x].cycle_string() for x in gens)

    # ----- conjugation ----------------------------------------------------

    def conjugate_bitset(self, bits: int, g: int) -> int:
        grp = self.group
        out = 0
        for x in self._members[bits]:
            out |= 1 << grp.conjugate_index(g, x)
        return out

    def conjugate(self, ref: SubgroupRef, g: int) -> SubgroupRef:
        return self.by_bitset(self.conjugate_bitset(ref.bitset, g))

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Conjugation orbits on subgroup indices, each sorted, ordered by rep."""
        seen = set()
        out = []
        for start in range(len(self.subgroups)):
            if start in seen:
                continue
            orbit = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for g in self.group.generator_indices:
                    j = self._index[self.conjugate_bitset(self._bitsets[i], g)]
                    if j not in orbit:
                        orbit.add(j)
                        stack.append(j)
            seen |= orbit
            out.append(tuple(sorted(orbit)))
        return tuple(out)

    @cached_property
    def _transporters(self) -> tuple[tuple[int, int], ...]:
        """For each subgroup index i: (rep_index, g) with g·rep·g^-1 = i."""
        trans = [None] * len(self.subgroups)
        mul = self.group.mul
        for orbit in self.orbits:
            rep = orbit[0]
            trans[rep] = (rep, 0)
            stack = [rep]
            while stack:
                i = stack.pop()
                _, ti = trans[i]
                for g in self.group.generator_indices:
                    j = self._index[self.conjugate_bitset(self._bitsets[i], g)]
                    if trans[j] is None:
                        trans[j] = (rep, mul[g][ti])
                        stack.append(j)
        return tuple(trans)

    def orbit_representatives(self) -> tuple[SubgroupRef, ...]:
        return tuple(self.subgroups[o[0]] for o in self.orbits)

    def transporter(self, ref: SubgroupRef) -> tuple[SubgroupRef, int]:
        rep, g = self._transporters[ref.index]
        return self.subgroups[rep], g

    # ----- named operations -----------------------------------------------

    def normalizer(self, ref: SubgroupRef) -> SubgroupRef:
        if ref.index not in self._normalizer:
            bits = ref.bitset
            out = 0
            for g in range(self.group.order):
                if self.conjugate_bitset(bits, g) == bits:
                    out |= 1 << g
            self._normalizer[ref.index] = self._index[out]
        return self.subgroups[self._normalizer[ref.index]]

    def centralizer(self, ref: SubgroupRef) -> SubgroupRef:
        if ref.index not in self._centralizer:
            mul = self.group.mul
            out = 0
            hs = self._members[ref.bitset]
            for g in range(self.group.order):
                row = mul[g]
                if all(row[h] == mul[h][g] for h in hs):
                    out |= 1 << g
            self._centralizer[ref.index] = self._index[out]
        return self.subgroups[self._centralizer[ref.index]]

    def centralizer_of_element(self, x: int) -> SubgroupRef:
        mul = self.group.mul
        out = 0
        for g in range(self.group.order):
            if mul[g][x] == mul[x][g]:
                out |= 1 << g
        return self.by_bitset(out)

    def center(self, ref: SubgroupRef) -> SubgroupRef:
        return self.by_bitset(ref.bitset & self.centralizer(ref).bitset)

    def is_p_group(self, ref: SubgroupRef, p: int) -> bool:
        return ref.order == p_part(ref.order, p)

    def omega1_center(self, ref: SubgroupRef, p: int) -> SubgroupRef:
        """Bottom layer of the center: elements of Z(P) of order dividing p.

        For abelian Z(P) this set is already a subgroup; requires P a p-group.
        """
        if not self.is_p_group(ref, p):
            raise NotAPGroup(f"subgroup of order {ref.order} is not a {p}-group")
        orders = self.group.element_orders
        out = 0
        for x in self._members[self.center(ref).bitset]:
            if orders[x] in (1, p):
                out |= 1 << x
        return self.by_bitset(out)

    def p_core(self, ref: SubgroupRef, p: int) -> SubgroupRef:
        """O_p(H): join of all normal p-subgroups of H."""
        key = (ref.index, p)
        if key not in self._pcore:
            hgens = self.generating_set(ref)
            acc = 1
            for k in self.subgroups:
                if k.order == 1 or not self.leq(k, ref):
                    continue
                if p_part(k.order, p) != k.order:
                    continue
                if (acc | k.bitset) == acc:
                    continue
                if all(self.conjugate_bitset(k.bitset, h) == k.bitset for h in hgens):
                    acc = self.group.closure_bitset(acc | k.bitset)
            self._pcore[key] = self._index[acc]
        return self.subgroups[self._pcore[key]]

    def sylow(self, p: int) -> tuple[SubgroupRef, ...]:
        if self.group.order % p:
            raise PrimeDoesNotDivide(p, self.group.order)
        target = p_part(self.group.order, p)
        return tuple(s for s in self.subgroups if s.order == target)

    def is_elementary_abelian(self, ref: SubgroupRef, p: int) -> bool:
        """Abelian with every non-identity element of order exactly p."""
        key = (ref.index, p)
        if key not in self._elem_ab:
            self._elem_ab[key] = self._elementary_abelian(ref, p)
        return self._elem_ab[key]

    def _elementary_abelian(self, ref: SubgroupRef, p: int) -> bool:
        if ref.order == 1:
            return True
        if p_part(ref.order, p) != ref.order:
            return False
        orders = self.group.element_orders
        hs = self._members[ref.bitset]
        if any(orders[x] != p for x in hs if x):
            return False
        mul = self.group.mul
        return all(mul[a][b] == mul[b][a] for a in hs for b in hs if a < b)

    def product(self, a: SubgroupRef, b: SubgroupRef) -> SubgroupRef:
        """The product set AB, defined when one factor normalizes the other."""
        na = self.normalizer(a).bitset
        nb = self.normalizer(b).bitset
        if not (a.bitset | nb == nb or b.bitset | na == na):
            raise NotMutuallyNormalizing(
                f"neither subgroup {a.index} nor {b.index} normalizes the other")
        mul = self.group.mul
        out = 0
        for x in self._members[a.bitset]:
            row = mul[x]
            for y in self._members[b.bitset]:
                out |= 1 << row[y]
        return self.by_bitset(out)

    def generated(self, element_indices) -> SubgroupRef:
        seed = 1
        for x in element_indices:
            seed |= 1 << x
        return self.by_bitset(self.group.closure_bitset(seed))

    def join(self, a: SubgroupRef, b: SubgroupRef) -> SubgroupRef:
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        return self.by_bitset(self.group.closure_bitset(a.bitset | b.bitset))

    def meet(self, a: SubgroupRef, b: SubgroupRef) -> SubgroupRef:
        return self.by_bitset(a.bitset & b.bitset)

    def p_locals(self, p: int) -> tuple[SubgroupRef, ...]:
        """Normalizers of nontrivial p-subgroups, deduplicated."""
        if self.group.order % p:
            raise PrimeDoesNotDivide(p, self.group.order)
        seen = set()
        for s in self.subgroups:
            if s.order > 1 and p_part(s.order, p) == s.order:
                seen.add(self.normalizer(s).index)
        return tuple(self.subgroups[i] for i in sorted(seen))

    def nontrivial_p_subgroups(self, p: int) -> tuple[SubgroupRef, ...]:
        return tuple(s for s in self.subgroups
                     if s.order > 1 and p_part(s.order, p) == s.order)

    # ----- quotients -------------------------------------------------------

    def coset_action_group(self, big: SubgroupRef, normal: SubgroupRef) -> PermutationGroup:
        """The quotient big/normal, realized by left multiplication on cosets.

        ``normal`` must be a normal subgroup of ``big``; the action is then
        faithful for the quotient.
        """
        assert self.leq(normal, big)
        bgens = self.generating_set(big)
        assert all(self.conjugate_bitset(normal.bitset, g) == normal.bitset
                   for g in bgens), "second argument must be normal in the first"
        mul = self.group.mul
        nmem = self._members[normal.bitset]
        coset_of: dict[int, int] = {}
        cosets: list[int] = []
        for x in self._members[big.bitset]:
            if x in coset_of:
                continue
            cid = len(cosets)
            cosets.append(x)
            for n in nmem:
                coset_of[mul[x][n]] = cid
        from .perm import Permutation
        gens = []
        for g in bgens:
            images = tuple(coset_of[mul[g][rep]] for rep in cosets)
            gens.append(Permutation(images))
        name = f"quotient[{big.index}/{normal.index}]"
        return PermutationGroup.from_generators(gens, degree=max(1, len(cosets)), name=name)


def p_core_of_group(group: PermutationGroup, p: int) -> int:
    """Order of O_p for a free-standing group (used for quotients): enumerates
    its lattice and reuses the in-lattice computation."""
    lat = enumerate_subgroups(group)
    return lat.p_core(lat.full, p).order
