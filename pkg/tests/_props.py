"""Bulk invariant checks, shared by the property tests and the acceptance
gate. Every check() goes through a Budget so the total number of executed
assertions can be audited; run_all() is the single entry point the gate
uses.

All sampling is seeded, so two runs perform the same checks in the same
order.
"""

import random

from sclab.collections import collection_context
from sclab.group import builtin_group
from sclab.homology import (
    boundary_matrix,
    homology,
    rank_mod,
    rank_over_rationals,
    smith_normal_form,
)
from sclab.lattice import p_part
from sclab.poset import GPoset, order_complex

from _suite import SUITE, lattice_of

GROUPS = ("D8", "Q8", "S3", "D12", "A4", "S4", "SL23", "A5")


class Budget:
    def __init__(self):
        self.count = 0

    def check(self, cond, note=""):
        self.count += 1
        assert cond, note


# --------------------------------------------------------- group algebra


def check_group_axioms(b: Budget, rng: random.Random) -> None:
    for name in GROUPS:
        grp = builtin_group(name)
        mul, inv = grp.mul, grp.inv
        n = grp.order
        for a in range(n):
            b.check(mul[0][a] == a and mul[a][0] == a, (name, a, "identity"))
            b.check(mul[a][inv[a]] == 0, (name, a, "inverse"))
        for _ in range(300):
            x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            b.check(mul[mul[x][y]][z] == mul[x][mul[y][z]],
                    (name, x, y, z, "associativity"))


def check_conjugation_is_automorphism(b: Budget, rng: random.Random) -> None:
    for name in GROUPS:
        grp = builtin_group(name)
        mul = grp.mul
        n = grp.order
        for _ in range(200):
            g, x, y = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            left = grp.conjugate_index(g, mul[x][y])
            right = mul[grp.conjugate_index(g, x)][grp.conjugate_index(g, y)]
            b.check(left == right, (name, g, x, y))


# --------------------------------------------------------- lattice order


def check_lattice_order_axioms(b: Budget, rng: random.Random) -> None:
    for name in GROUPS:
        lat = lattice_of(name)
        refs = list(lat.subgroups)
        for r in refs:
            b.check(lat.leq(r, r), (name, r.index, "reflexive"))
        for _ in range(200):
            x, y = rng.choice(refs), rng.choice(refs)
            if lat.leq(x, y) and lat.leq(y, x):
                b.check(x.index == y.index, (name, "antisymmetry"))
            else:
                b.check(True)
        for _ in range(300):
            x, y, z = rng.choice(refs), rng.choice(refs), rng.choice(refs)
            if lat.leq(x, y) and lat.leq(y, z):
                b.check(lat.leq(x, z), (name, "transitivity"))
            else:
                b.check(True)


def check_meet_join_are_bounds(b: Budget, rng: random.Random) -> None:
    for name in GROUPS:
        lat = lattice_of(name)
        refs = list(lat.subgroups)
        for _ in range(200):
            x, y = rng.choice(refs), rng.choice(refs)
            m = lat.meet(x, y)
            j = lat.join(x, y)
            b.check(lat.leq(m, x) and lat.leq(m, y), (name, "meet bounds"))
            b.check(lat.leq(x, j) and lat.leq(y, j), (name, "join bounds"))
            for c in rng.sample(refs, min(6, len(refs))):
                if lat.leq(c, x) and lat.leq(c, y):
                    b.check(lat.leq(c, m), (name, "meet greatest"))
                if lat.leq(x, c) and lat.leq(y, c):
                    b.check(lat.leq(j, c), (name, "join least"))


# ----------------------------------------------- central-type collections


def check_operator_towers(b: Budget) -> None:
    """hat(P) <= tilde(P) <= Z(P) <= P for every nontrivial p-subgroup."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        for P in lat.nontrivial_p_subgroups(p):
            t, h, z = ctx.tilde_of(P), ctx.hat_of(P), lat.center(P)
            b.check(lat.leq(h, t), (name, p, P.index, "hat inside tilde"))
            b.check(lat.leq(t, z) and lat.leq(z, P),
                    (name, p, P.index, "tilde central"))


def check_operator_equivariance(b: Budget) -> None:
    """tilde and hat commute with conjugation by every generator."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        for P in lat.nontrivial_p_subgroups(p):
            for g in lat.group.generator_indices:
                Pg = lat.by_bitset(lat.conjugate_bitset(P.bitset, g))
                b.check(ctx.tilde_of(Pg).bitset
                        == lat.conjugate_bitset(ctx.tilde_of(P).bitset, g),
                        (name, p, P.index, g, "tilde"))
                b.check(ctx.hat_of(Pg).bitset
                        == lat.conjugate_bitset(ctx.hat_of(P).bitset, g),
                        (name, p, P.index, g, "hat"))


def check_central_type_sets_closed(b: Budget) -> None:
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        grp = lat.group
        for g in grp.generator_indices:
            b.check({grp.conjugate_index(g, x) for x in ctx.E0} == set(ctx.E0),
                    (name, p, "E0 conjugation-closed"))
            b.check({grp.conjugate_index(g, x) for x in ctx.E1} == set(ctx.E1),
                    (name, p, "E1 conjugation-closed"))
        b.check(ctx.E0 <= ctx.E1, (name, p, "E0 inside E1"))


def check_distinguished_upward_closure(b: Budget) -> None:
    """A member of S normalized by a distinguished subgroup it contains is
    itself distinguished."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        S = ctx.collection("S").member_indices
        tS = ctx.collection("tilde-S").member_indices
        for pi in tS:
            P = lat.ref(pi)
            NP = lat.normalizer(P)
            for qi in S:
                Q = lat.ref(qi)
                if lat.leq(P, Q) and lat.leq(Q, NP):
                    b.check(qi in tS, (name, p, pi, qi))


def check_relative_normalizers_stay_distinguished(b: Budget) -> None:
    """For P in S below a sharply distinguished Q, the relative normalizer
    N_Q(P) is sharply distinguished as well."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        S = ctx.collection("S").member_indices
        hS = ctx.collection("hat-S").member_indices
        for pi in S:
            P = lat.ref(pi)
            NP = lat.normalizer(P)
            for qi in hS:
                Q = lat.ref(qi)
                if lat.lt(P, Q):
                    b.check(lat.meet(Q, NP).index in hS, (name, p, pi, qi))


def check_one_class_collapses_the_towers(b: Budget) -> None:
    """With a single conjugacy class of order-p elements the distinguished
    collections add no information."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        if not ctx.one_class_of_order_p():
            continue
        for kind in ("A", "S", "B"):
            base = ctx.collection(kind).member_indices
            b.check(ctx.collection("tilde-" + kind).member_indices == base,
                    (name, p, kind, "tilde"))
            b.check(ctx.collection("hat-" + kind).member_indices == base,
                    (name, p, kind, "hat"))


def check_sylow_normalizer_criterion(b: Budget) -> None:
    """A p-subgroup whose normalizer contains a full Sylow p-subgroup is
    distinguished, sharply so."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        tS = ctx.collection("tilde-S").member_indices
        hS = ctx.collection("hat-S").member_indices
        full = p_part(lat.group.order, p)
        for ri in ctx.collection("S").member_indices:
            if p_part(lat.normalizer(lat.ref(ri)).order, p) == full:
                b.check(ri in hS, (name, p, ri, "hat"))
                b.check(ri in tS, (name, p, ri, "tilde"))


# ------------------------------------------------------------- topology


def _matrix_product_is_zero(b: Budget, upper, lower, tag) -> None:
    if not upper or not lower:
        b.check(True)
        return
    for j in range(len(upper[0])):
        col = [row[j] for row in upper]
        out = [sum(lrow[i] * col[i] for i in range(len(col)))
               for lrow in lower]
        b.check(not any(out), (tag, j, "boundary of boundary"))


def _random_poset(rng: random.Random, n: int) -> GPoset:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < 0.4]
    return GPoset.from_relation(tuple(range(n)), pairs)


def check_boundary_squares_to_zero(b: Budget, rng: random.Random) -> None:
    complexes = []
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        poset = GPoset.from_collection(lat, ctx.collection("tilde-S"))
        complexes.append((order_complex(poset), (name, p)))
    for k in range(40):
        complexes.append((order_complex(_random_poset(rng, 7)), ("random", k)))
    for cx, tag in complexes:
        for k in range(cx.dimension + 1):
            _matrix_product_is_zero(b, boundary_matrix(cx, k + 1),
                                    boundary_matrix(cx, k), tag)
        prof = homology(cx)
        b.check(prof.euler_characteristic == cx.euler_characteristic(),
                (tag, "euler"))


def check_smith_form_invariants(b: Budget, rng: random.Random) -> None:
    for trial in range(250):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        mat = [[rng.randrange(-9, 10) for _ in range(cols)]
               for _ in range(rows)]
        divisors = smith_normal_form(mat)
        b.check(len(divisors) == rank_over_rationals(mat), (trial, "rank"))
        b.check(all(divisors[i + 1] % divisors[i] == 0
                    for i in range(len(divisors) - 1)),
                (trial, "divisibility chain"))
        for p in (2, 3):
            expected = sum(1 for d in divisors if d % p)
            b.check(rank_mod(mat, p) == expected, (trial, p, "p-rank"))


def check_brown_congruence(b: Budget) -> None:
    """The reduced Euler characteristic of the nerve of all nontrivial
    p-subgroups vanishes modulo the p-part of the group order."""
    for name, p in SUITE:
        lat = lattice_of(name)
        ctx = collection_context(lat, p)
        poset = GPoset.from_collection(lat, ctx.collection("S"))
        chi = homology(order_complex(poset)).euler_characteristic
        b.check((chi - 1) % p_part(lat.group.order, p) == 0, (name, p, chi))


# ---------------------------------------------------------------- driver

# (family, rng seed); None for families with no sampling. Seeds are fixed
# per family so each one checks the same cases no matter what ran before.
FAMILIES = (
    (check_group_axioms, 101),
    (check_conjugation_is_automorphism, 102),
    (check_lattice_order_axioms, 103),
    (check_meet_join_are_bounds, 104),
    (check_operator_towers, None),
    (check_operator_equivariance, None),
    (check_central_type_sets_closed, None),
    (check_distinguished_upward_closure, None),
    (check_relative_normalizers_stay_distinguished, None),
    (check_one_class_collapses_the_towers, None),
    (check_sylow_normalizer_criterion, None),
    (check_boundary_squares_to_zero, 112),
    (check_smith_form_invariants, 113),
    (check_brown_congruence, None),
)


def run_family(family, seed) -> int:
    """Run one family against a fresh budget; returns assertions executed."""
    budget = Budget()
    if seed is None:
        family(budget)
    else:
        family(budget, random.Random(seed))
    return budget.count


def run_all() -> int:
    """Run every family; returns the total number of assertions executed."""
    return sum(run_family(family, seed) for family, seed in FAMILIES)
