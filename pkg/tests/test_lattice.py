import pytest

import _naive as naive
from _suite import lattice_of
from sclab.errors import NotMutuallyNormalizing, PrimeDoesNotDivide
from sclab.lattice import p_part

# textbook subgroup counts
SUBGROUP_COUNTS = {"D8": 10, "Q8": 6, "S3": 6, "A4": 10, "S4": 30,
                   "D12": 16, "A5": 59, "Zn:12": 6}


def test_subgroup_counts():
    for name, count in SUBGROUP_COUNTS.items():
        assert len(lattice_of(name)) == count, name


def test_counts_match_naive_enumeration():
    for name in ("D8", "Q8", "S3", "A4", "S4", "D12", "SL23"):
        lat = lattice_of(name)
        brute = naive.subgroups(lat.group)
        assert {frozenset(lat.members(r)) for r in lat.subgroups} == brute, name


def test_canonical_order():
    lat = lattice_of("S4")
    assert lat.trivial.order == 1 and lat.trivial.index == 0
    assert lat.full.order == 24 and lat.full.index == len(lat) - 1
    orders = [r.order for r in lat.subgroups]
    assert orders == sorted(orders)
    for r in lat.subgroups:
        assert lat.ref(r.index) == r
        assert lat.by_bitset(r.bitset) == r


def test_leq_meet_join_are_set_theoretic():
    lat = lattice_of("S4")
    subs = lat.subgroups[::4]
    for a in subs:
        for b in subs:
            ma, mb = set(lat.members(a)), set(lat.members(b))
            assert lat.leq(a, b) == (ma <= mb)
            assert set(lat.members(lat.meet(a, b))) == ma & mb
            j = set(lat.members(lat.join(a, b)))
            assert ma | mb <= j


def test_normalizer_centralizer_center_against_naive():
    lat = lattice_of("S4")
    g = lat.group
    for r in lat.subgroups[::3]:
        h = frozenset(lat.members(r))
        assert frozenset(lat.members(lat.normalizer(r))) == naive.normalizer(g, h)
        assert frozenset(lat.members(lat.centralizer(r))) == naive.centralizer(g, h)
        assert frozenset(lat.members(lat.center(r))) == naive.center(g, h)


def test_centers():
    assert lattice_of("D8").center(lattice_of("D8").full).order == 2
    assert lattice_of("Q8").center(lattice_of("Q8").full).order == 2
    assert lattice_of("S4").center(lattice_of("S4").full).order == 1


def test_centralizer_of_element():
    lat = lattice_of("S4")
    g = lat.group
    for x in range(0, g.order, 5):
        ref = lat.centralizer_of_element(x)
        expected = {y for y in range(g.order) if g.mul[y][x] == g.mul[x][y]}
        assert set(lat.members(ref)) == expected


def test_sylow_counts():
    # Sylow's theorem: S4 has 3 Sylow 2-subgroups and 4 Sylow 3-subgroups
    s4 = lattice_of("S4")
    assert len(s4.sylow(2)) == 3 and all(r.order == 8 for r in s4.sylow(2))
    assert len(s4.sylow(3)) == 4 and all(r.order == 3 for r in s4.sylow(3))
    a5 = lattice_of("A5")
    assert len(a5.sylow(2)) == 5
    assert len(a5.sylow(3)) == 10
    assert len(a5.sylow(5)) == 6
    with pytest.raises(PrimeDoesNotDivide):
        s4.sylow(5)


def test_p_cores():
    s4 = lattice_of("S4")
    assert s4.p_core(s4.full, 2).order == 4   # the normal Klein subgroup
    assert s4.p_core(s4.full, 3).order == 1
    d12 = lattice_of("D12")
    assert d12.p_core(d12.full, 2).order == 2  # the central involution
    assert d12.p_core(d12.full, 3).order == 3


def test_omega1_center():
    q8 = lattice_of("Q8")
    assert q8.omega1_center(q8.full, 2).order == 2
    d8 = lattice_of("D8")
    assert d8.omega1_center(d8.full, 2).order == 2
    # in an elementary abelian group omega_1 of the center is everything
    a4 = lattice_of("A4")
    v4 = a4.p_core(a4.full, 2)
    assert a4.omega1_center(v4, 2) == v4


def test_elementary_abelian():
    # the trivial subgroup counts as elementary abelian of rank zero
    d8 = lattice_of("D8")
    assert [r.order for r in d8.subgroups if d8.is_elementary_abelian(r, 2)] \
        == [1, 2, 2, 2, 2, 2, 4, 4]
    q8 = lattice_of("Q8")
    assert [r.order for r in q8.subgroups
            if q8.is_elementary_abelian(r, 2)] == [1, 2]


def test_orbits_partition_and_class_counts():
    lat = lattice_of("S4")
    orbits = lat.orbits
    assert sorted(i for o in orbits for i in o) == list(range(len(lat)))
    # conjugacy classes of subgroups of S4: a textbook count
    assert len(orbits) == 11


def test_transporter_conjugates_rep():
    lat = lattice_of("S4")
    for r in lat.subgroups[::2]:
        rep, g = lat.transporter(r)
        assert lat.conjugate(rep, g) == r


def test_conjugate_matches_naive():
    lat = lattice_of("SL23")
    g = lat.group
    for r in lat.subgroups[::3]:
        for x in range(0, g.order, 7):
            image = lat.conjugate(r, x)
            assert frozenset(lat.members(image)) == naive.conj_set(
                g, x, frozenset(lat.members(r)))


def test_product_and_failure():
    s3 = lattice_of("S3")
    z3 = next(r for r in s3.subgroups if r.order == 3)
    z2 = next(r for r in s3.subgroups if r.order == 2)
    assert s3.product(z2, z3) == s3.full  # Z3 is normal
    other = next(r for r in s3.subgroups if r.order == 2 and r != z2)
    with pytest.raises(NotMutuallyNormalizing):
        s3.product(z2, other)


def test_generated():
    lat = lattice_of("D8")
    gens = lat.generating_set(lat.full)
    assert lat.generated(gens) == lat.full
    assert lat.generated([]) == lat.trivial


def test_p_locals_s4():
    # the 3-locals of S4 are the four S3 point stabilizers and N(Sylow3)...
    # N(Z3) = S3 of order 6, so exactly the four order-6 subgroups
    lat = lattice_of("S4")
    locals3 = lat.p_locals(3)
    assert len(locals3) == 4
    assert all(r.order == 6 for r in locals3)


def test_coset_action_group_quotients():
    s4 = lattice_of("S4")
    v4 = s4.p_core(s4.full, 2)
    assert s4.coset_action_group(s4.full, v4).order == 6   # S4/V4 = S3
    d8 = lattice_of("D8")
    z = d8.center(d8.full)
    assert d8.coset_action_group(d8.full, z).order == 4    # D8/Z = V4


def test_p_part():
    assert p_part(48, 2) == 16
    assert p_part(48, 3) == 3
    assert p_part(35, 2) == 1


def test_generator_string_smoke():
    lat = lattice_of("D8")
    assert lat.generator_string(lat.trivial) == "()"
    text = lat.generator_string(lat.full)
    assert "(" in text
