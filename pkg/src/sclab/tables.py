"""Edge-by-edge verification of the two collection-comparison tables.

Each table is a 3 x k grid of collections: rows EO (subgroup-restriction
functor), C (the bare nerve), EA (centralizer-restriction functor); columns
are collections ordered by inclusion. Edges carry a claim strength: solid
(equivariant equivalence, certified by fiber or pruning hypotheses), dashed
(equivalence after restricting to subgroups of a Sylow group, certified per
subgroup), dotted (plain homotopy equivalence; checked as homology agreement
at the trivial subgroup, and known to be non-upgradable by documented
counterexamples on the dihedral group of order 8, which are reproduced).
"""

from __future__ import annotations

from dataclasses import dataclass

from .collections import collection_context
from .contract import CONTRACTIBLE, contractibility_verdict
from .equivalence import (CERTIFIED, FAIL, HOMOLOGY_CONSISTENT, INCONCLUSIVE,
                          MISMATCH, PASS, fixed_point_equivalence_scan,
                          verify_inclusion_equivalence)
from .errors import NotMutuallyNormalizing
from .homology import homology
from .lattice import p_part
from .poset import DEFAULT_SIMPLEX_CAP, GPoset, order_complex

SKIPPED = "SKIPPED"

TABLE31 = "table31"
TABLE44 = "table44"


@dataclass(frozen=True)
class EdgeSpec:
    table: str
    row: str             # EO | C | EA for horizontals, EO|C | C|EA for verticals
    kinds: tuple         # two endpoint kinds, or one kind for a vertical edge
    style: str           # solid | dashed | dotted
    checker: str
    conditions: tuple = ()
    counterexample: tuple = ()   # (subgroup_token, left_expectation, right_expectation)

    @property
    def edge_id(self) -> str:
        return f"{self.table}:{self.row}:{'--'.join(self.kinds)}"


@dataclass(frozen=True)
class EdgeResult:
    spec: EdgeSpec
    status: str          # CERTIFIED | HOMOLOGY-CONSISTENT | MISMATCH | INCONCLUSIVE | SKIPPED
    detail: dict

    def to_json(self):
        return {"edge": self.spec.edge_id, "table": self.spec.table,
                "row": self.spec.row, "kinds": list(self.spec.kinds),
                "style": self.spec.style,
                "conditions": list(self.spec.conditions),
                "status": self.status, "detail": self.detail}


TABLE31_EDGES = (
    EdgeSpec(TABLE31, "EO", ("E", "tilde-A"), "dotted", "h1",
             counterexample=("V4", "empty", "point")),
    EdgeSpec(TABLE31, "EO", ("tilde-A", "tilde-S"), "dotted", "h1",
             counterexample=("Z4", "empty", "contractible")),
    EdgeSpec(TABLE31, "EO", ("tilde-S", "tilde-B"), "solid", "prune"),
    EdgeSpec(TABLE31, "C", ("E", "tilde-A"), "solid", "fibers"),
    EdgeSpec(TABLE31, "C", ("tilde-A", "tilde-S"), "solid", "fibers"),
    EdgeSpec(TABLE31, "C", ("tilde-S", "tilde-B"), "solid", "prune-equivariant"),
    EdgeSpec(TABLE31, "EA", ("E", "tilde-A"), "solid", "lower"),
    EdgeSpec(TABLE31, "EA", ("tilde-A", "tilde-S"), "solid", "fibers-by-centralizer"),
    EdgeSpec(TABLE31, "EA", ("tilde-S", "tilde-B"), "dotted", "h1",
             counterexample=("V4", "edge", "empty")),
    EdgeSpec(TABLE31, "EO|C", ("E",), "dotted", "h1"),
    EdgeSpec(TABLE31, "EO|C", ("tilde-A",), "dotted", "h1"),
    EdgeSpec(TABLE31, "EO|C", ("tilde-S",), "dashed", "eo-scan"),
    EdgeSpec(TABLE31, "EO|C", ("tilde-B",), "dashed", "eo-scan"),
    EdgeSpec(TABLE31, "C|EA", ("E",), "dashed", "ea-scan"),
    EdgeSpec(TABLE31, "C|EA", ("tilde-A",), "dashed", "ea-scan"),
    EdgeSpec(TABLE31, "C|EA", ("tilde-S",), "dashed", "ea-scan"),
    EdgeSpec(TABLE31, "C|EA", ("tilde-B",), "dotted", "h1"),
)

TABLE44_EDGES = (
    EdgeSpec(TABLE44, "EO", ("hat-A", "hat-S"), "dotted", "h1",
             counterexample=("Z4", "empty", "contractible")),
    EdgeSpec(TABLE44, "EO", ("hat-S", "hat-B"), "solid", "prune",
             conditions=("Cl", "Ch", "M")),
    EdgeSpec(TABLE44, "C", ("hat-A", "hat-S"), "solid", "fibers"),
    EdgeSpec(TABLE44, "C", ("hat-S", "hat-B"), "solid", "prune-equivariant",
             conditions=("Cl", "Ch", "M")),
    EdgeSpec(TABLE44, "EA", ("hat-A", "hat-S"), "solid", "fibers-by-centralizer"),
    EdgeSpec(TABLE44, "EA", ("hat-S", "hat-B"), "dotted", "h1",
             counterexample=("V4", "edge", "empty")),
    EdgeSpec(TABLE44, "EO|C", ("hat-A",), "dotted", "h1",
             counterexample=("Z4", "empty", "contractible")),
    EdgeSpec(TABLE44, "EO|C", ("hat-S",), "dashed", "eo-scan",
             conditions=("Cl", "Ch")),
    EdgeSpec(TABLE44, "EO|C", ("hat-B",), "dashed", "eo-scan",
             conditions=("Cl", "Ch")),
    EdgeSpec(TABLE44, "C|EA", ("hat-A",), "dashed", "ea-scan",
             conditions=("Cl", "Ch")),
    EdgeSpec(TABLE44, "C|EA", ("hat-S",), "dashed", "ea-scan",
             conditions=("Cl", "Ch")),
    EdgeSpec(TABLE44, "C|EA", ("hat-B",), "dotted", "h1",
             counterexample=("Z4", "empty", "point")),
)


def table_edges(table: str) -> tuple:
    if table == TABLE31:
        return TABLE31_EDGES
    if table == TABLE44:
        return TABLE44_EDGES
    raise ValueError(f"unknown table {table!r}")


# --------------------------------------------------------------------------
# paper-shaped certifiers for the pruning edges


def _core_zigzag(lat, p):
    """Retract Q through its intersection with the normalizer and the
    normalizer's p-core: Q >= N_Q(P) <= N_Q(P) * O_p(N(P)) >= O_p(N(P))."""
    def certifier(label, interval):
        P = lat.ref(label)
        NP = lat.normalizer(P)
        ONP = lat.p_core(NP, p)

        def g1(q):
            return lat.meet(lat.ref(q), NP).index

        def g2(q):
            return lat.product(lat.meet(lat.ref(q), NP), ONP).index

        def g3(q):
            return ONP.index

        return ("zigzag", [g1, g2, g3], [">=", "<=", ">="])
    return certifier


def _host_zigzag(lat, p):
    """Like the core zigzag, but the constant end is enlarged through the
    p-core R of a p-local overgroup of N(P) with full p-part, which exists
    whenever the overgroup condition holds: the apex is N_R(P) * O_p(N(P))."""
    full = p_part(lat.group.order, p)

    def certifier(label, interval):
        P = lat.ref(label)
        NP = lat.normalizer(P)
        ONP = lat.p_core(NP, p)
        host = next((m for m in lat.p_locals(p)
                     if p_part(m.order, p) == full and lat.leq(NP, m)), None)
        if host is None:
            return None
        apex = lat.product(lat.meet(lat.p_core(host, p), NP), ONP)

        def g1(q):
            return lat.meet(lat.ref(q), NP).index

        def g2(q):
            return lat.product(lat.meet(lat.ref(q), NP), apex).index

        def g3(q):
            return apex.index

        return ("zigzag", [g1, g2, g3], [">=", "<=", ">="])
    return certifier


def _prune_certifier(ctx, holding):
    """Choose the zigzag construction from the first holding condition."""
    lat, p = ctx.lattice, ctx.p
    if "Cl" in holding or "Ch" in holding:
        return _core_zigzag(lat, p)
    return _host_zigzag(lat, p)


# --------------------------------------------------------------------------
# avatar plumbing


def _eo_pair(lat, poset):
    return (lambda h: poset.above(h)), (lambda h: poset.fixed_points(h))


def _ea_pair(lat, poset):
    return (lambda h: poset.below(lat.centralizer(h))), \
           (lambda h: poset.fixed_points(h))


def _eo_retraction(lat):
    def retraction(h, left, right):
        def f(q):
            try:
                return lat.product(lat.ref(q), h).index
            except NotMutuallyNormalizing:
                return None
        return (f, ">=")
    return retraction


def _ea_retraction(lat):
    def retraction(h, left, right):
        cg = lat.centralizer(h)

        def f(q):
            return lat.meet(lat.ref(q), cg).index

        return (f, "<=")
    return retraction


def _subgroups_of(lat, s):
    return [r for r in lat.subgroups if r.bitset | s.bitset == s.bitset]


def is_dihedral8(group) -> bool:
    return (group.order == 8
            and sum(1 for o in group.element_orders if o == 2) == 5)


def _d8_subgroup(lat, token):
    for r in lat.subgroups:
        if r.order != 4:
            continue
        elem_ab = lat.is_elementary_abelian(r, 2)
        if (token == "V4") == elem_ab:
            return r
    raise AssertionError(f"no subgroup for token {token!r}")


def _expectation_holds(poset: GPoset, token: str, max_simplices: int):
    observed = {"size": len(poset)}
    if token == "empty":
        ok = poset.is_empty()
    elif token == "point":
        ok = len(poset) == 1
    elif token == "edge":
        counts = order_complex(poset, max_simplices).counts()
        observed["counts"] = list(counts)
        ok = counts == (2, 1)
    elif token == "contractible":
        verdict = contractibility_verdict(poset, max_simplices=max_simplices)
        observed["verdict"] = verdict.status
        ok = verdict.status == CONTRACTIBLE
    else:
        raise ValueError(f"unknown expectation {token!r}")
    return ok, observed


# --------------------------------------------------------------------------
# edge checkers


def _squash(outcome: str) -> str:
    return {PASS: CERTIFIED, FAIL: MISMATCH, INCONCLUSIVE: INCONCLUSIVE}[outcome]


def _homology_crosscheck(left: GPoset, right: GPoset, max_simplices):
    pl = homology(order_complex(left, max_simplices))
    pr = homology(order_complex(right, max_simplices))
    return {"left": pl.to_json(), "right": pr.to_json(), "agree": pl == pr}


def _check_solid(ctx, spec, posets, max_simplices) -> EdgeResult:
    lat = ctx.lattice
    left, right = (posets[k] for k in spec.kinds)
    holding = [c for c in spec.conditions if ctx.condition(c).holds]
    detail = {}
    if spec.conditions:
        detail["conditions"] = {c: ctx.condition(c).to_json()
                                for c in spec.conditions}
        if not holding:
            detail["note"] = "no gating condition holds"
            return EdgeResult(spec, SKIPPED, detail)
        detail["holding"] = holding

    if spec.checker == "fibers":
        res = verify_inclusion_equivalence(left, right, "fibers",
                                           max_simplices=max_simplices)
    elif spec.checker == "lower":
        res = verify_inclusion_equivalence(left, right, "lower",
                                           max_simplices=max_simplices)
    elif spec.checker in ("prune", "prune-equivariant"):
        certifier = (_prune_certifier(ctx, holding) if spec.conditions
                     else _core_zigzag(lat, ctx.p))
        mode = "upper-equivariant" if spec.checker == "prune-equivariant" else "upper"
        # pruning edges read right-to-left: the smaller collection is kept
        res = verify_inclusion_equivalence(right, left, mode,
                                           certifier=certifier,
                                           max_simplices=max_simplices)
    elif spec.checker == "fibers-by-centralizer":
        return _check_by_centralizer(ctx, spec, left, right, detail,
                                     max_simplices)
    else:
        raise ValueError(f"unknown solid checker {spec.checker!r}")

    status = _squash(res.outcome)
    detail["inclusion"] = res.to_json()
    if status == CERTIFIED:
        cross = _homology_crosscheck(left, right, max_simplices)
        detail["homology"] = cross
        if not cross["agree"]:
            status = MISMATCH
    return EdgeResult(spec, status, detail)


def _check_by_centralizer(ctx, spec, left, right, detail,
                          max_simplices) -> EdgeResult:
    """Per-subgroup fiber checks inside each centralizer's lower set; this
    certifies the centralizer-restriction row without equivariance demands."""
    lat = ctx.lattice
    rows = []
    worst = PASS
    for h in lat.orbit_representatives():
        cg = lat.centralizer(h)
        res = verify_inclusion_equivalence(left.below(cg), right.below(cg),
                                           "fibers", equivariant=False,
                                           max_simplices=max_simplices)
        rows.append({"subgroup": h.index, "order": h.order,
                     "outcome": res.outcome,
                     "witnesses": list(res.witnesses)})
        if res.outcome == FAIL:
            worst = FAIL
        elif res.outcome == INCONCLUSIVE and worst != FAIL:
            worst = INCONCLUSIVE
    status = _squash(worst)
    detail["per_centralizer"] = rows
    if status == CERTIFIED:
        cross = _homology_crosscheck(left, right, max_simplices)
        detail["homology"] = cross
        if not cross["agree"]:
            status = MISMATCH
    return EdgeResult(spec, status, detail)


def _check_dashed(ctx, spec, posets, max_simplices) -> EdgeResult:
    lat = ctx.lattice
    detail = {}
    if spec.conditions:
        detail["conditions"] = {c: ctx.condition(c).to_json()
                                for c in spec.conditions}
        if not any(ctx.condition(c).holds for c in spec.conditions):
            detail["note"] = "no gating condition holds"
            return EdgeResult(spec, SKIPPED, detail)
    poset = posets[spec.kinds[0]]
    if spec.checker == "eo-scan":
        left_of, right_of = _eo_pair(lat, poset)
        retraction = _eo_retraction(lat)
    elif spec.checker == "ea-scan":
        left_of, right_of = _ea_pair(lat, poset)
        retraction = _ea_retraction(lat)
    else:
        raise ValueError(f"unknown dashed checker {spec.checker!r}")
    sylows = lat.sylow(ctx.p)
    scan = fixed_point_equivalence_scan(_subgroups_of(lat, sylows[0]),
                                        left_of, right_of,
                                        retraction=retraction,
                                        max_simplices=max_simplices)
    detail["scan"] = scan.to_json()
    status = scan.status
    if len(sylows) > 1:
        # the restriction to a Sylow group is independent of the choice by
        # conjugacy; spot-check that on a second one
        other = fixed_point_equivalence_scan(_subgroups_of(lat, sylows[1]),
                                             left_of, right_of,
                                             retraction=retraction,
                                             max_simplices=max_simplices)
        agrees = (other.status == scan.status
                  and sorted((c.order, c.status) for c in other.per_subgroup)
                  == sorted((c.order, c.status) for c in scan.per_subgroup))
        detail["second_sylow"] = {"subgroup": sylows[1].index,
                                  "status": other.status, "agrees": agrees}
        if not agrees:
            status = MISMATCH
    return EdgeResult(spec, status, detail)


def _dotted_avatars(ctx, spec, posets, h):
    """The two posets a dotted edge compares at the subgroup h."""
    lat = ctx.lattice
    if spec.row in ("EO", "EA"):
        left, right = (posets[k] for k in spec.kinds)
        if spec.row == "EO":
            return left.above(h), right.above(h)
        cg = lat.centralizer(h)
        return left.below(cg), right.below(cg)
    poset = posets[spec.kinds[0]]
    if spec.row == "EO|C":
        return poset.above(h), poset.fixed_points(h)
    return poset.below(lat.centralizer(h)), poset.fixed_points(h)


def _check_dotted(ctx, spec, posets, max_simplices) -> EdgeResult:
    lat = ctx.lattice
    left1, right1 = _dotted_avatars(ctx, spec, posets, lat.trivial)
    pl = homology(order_complex(left1, max_simplices))
    pr = homology(order_complex(right1, max_simplices))
    agree = pl == pr
    detail = {"h1_homology": {"left": pl.to_json(), "right": pr.to_json(),
                              "agree": agree}}
    status = HOMOLOGY_CONSISTENT if agree else MISMATCH
    if spec.counterexample and is_dihedral8(lat.group) and ctx.p == 2:
        token, expect_left, expect_right = spec.counterexample
        h = _d8_subgroup(lat, token)
        lposet, rposet = _dotted_avatars(ctx, spec, posets, h)
        ok_l, obs_l = _expectation_holds(lposet, expect_left, max_simplices)
        ok_r, obs_r = _expectation_holds(rposet, expect_right, max_simplices)
        reproduced = ok_l and ok_r
        detail["counterexample"] = {
            "subgroup": h.index, "subgroup_token": token,
            "expected": {"left": expect_left, "right": expect_right},
            "observed": {"left": obs_l, "right": obs_r},
            "reproduced": reproduced,
        }
        if not reproduced:
            status = MISMATCH
    return EdgeResult(spec, status, detail)


# --------------------------------------------------------------------------
# entry points


def _posets_for(lattice, ctx, specs) -> dict:
    kinds = {k for spec in specs for k in spec.kinds}
    return {k: GPoset.from_collection(lattice, ctx.collection(k))
            for k in kinds}


def verify_table_edges(lattice, p: int, table: str, *,
                       max_simplices: int = DEFAULT_SIMPLEX_CAP) -> list:
    """Run every edge check of one table; returns EdgeResults in table order."""
    ctx = collection_context(lattice, p)
    specs = table_edges(table)
    posets = _posets_for(lattice, ctx, specs)
    out = []
    for spec in specs:
        if spec.style == "solid":
            out.append(_check_solid(ctx, spec, posets, max_simplices))
        elif spec.style == "dashed":
            out.append(_check_dashed(ctx, spec, posets, max_simplices))
        else:
            out.append(_check_dotted(ctx, spec, posets, max_simplices))
    return out


def counterexample_edges() -> tuple:
    return tuple(spec for spec in TABLE31_EDGES + TABLE44_EDGES
                 if spec.counterexample)


def verify_counterexamples(lattice, p: int, *,
                           max_simplices: int = DEFAULT_SIMPLEX_CAP) -> list:
    """Reproduce the documented dotted-edge counterexamples; only the
    dihedral group of order 8 at p = 2 has documented ones."""
    if not (is_dihedral8(lattice.group) and p == 2):
        return []
    ctx = collection_context(lattice, p)
    specs = counterexample_edges()
    posets = _posets_for(lattice, ctx, specs)
    return [_check_dotted(ctx, spec, posets, max_simplices) for spec in specs]


_CHAINS = (
    ("D", "Bcen", "hat-B", "B"),
    ("Ce", "hat-S"),
    ("hat-A", "tilde-A", "A"),
    ("hat-S", "tilde-S", "S"),
    ("hat-B", "tilde-B", "B"),
    ("E", "tilde-A"),
)


def verify_inclusion_chains(lattice, p: int) -> list:
    """Memberwise subset checks between collections; each row reports one
    consecutive pair of a documented chain."""
    ctx = collection_context(lattice, p)
    rows = []
    for chain in _CHAINS:
        for a, b in zip(chain, chain[1:]):
            small = ctx.collection(a).member_indices
            big = ctx.collection(b).member_indices
            violations = sorted(small - big)
            rows.append({"smaller": a, "larger": b,
                         "holds": not violations,
                         "violations": violations})
    return rows
