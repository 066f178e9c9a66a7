"""Equivalence checkers for nested subgroup posets and fixed-point avatars.

Two instruments. verify_inclusion_equivalence certifies that an inclusion of
posets induces a homotopy equivalence, by checking the contractibility
hypothesis the relevant comparison theorem puts on fibers or punctured
intervals, element by element. fixed_point_equivalence_scan compares two
designated subposets for a list of subgroups H and grades each comparison
CERTIFIED, HOMOLOGY-CONSISTENT, or MISMATCH.
"""

from __future__ import annotations

from dataclasses import dataclass

from .contract import (CONTRACTIBLE, NOT_CONTRACTIBLE, UNKNOWN,
                       FiberContractibility, LinkContractibility,
                       MonotoneRetraction, Verdict, Zigzag, _json_label,
                       _sorted_pairs, contractibility_verdict,
                       fixed_point_contractibility_scan,
                       verify_monotone_retraction, verify_zigzag)
from .errors import MapNotWellDefined, NotASubposet
from .homology import homology
from .poset import DEFAULT_SIMPLEX_CAP, GPoset, order_complex

MODES = ("fibers", "upper", "lower", "upper-equivariant")

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"

CERTIFIED = "CERTIFIED"
HOMOLOGY_CONSISTENT = "HOMOLOGY-CONSISTENT"
MISMATCH = "MISMATCH"

_CLAIMS = {
    "fibers": "inclusion induces an equivariant homotopy equivalence",
    "upper": "inclusion induces an equivalence of subgroup-restriction functors",
    "lower": "inclusion induces an equivalence of centralizer-restriction functors",
    "upper-equivariant": "inclusion induces an equivariant homotopy equivalence",
}


def _check_subposet(sub: GPoset, ambient: GPoset) -> None:
    missing = [x for x in sub.labels if x not in ambient]
    if missing:
        raise NotASubposet(f"labels {missing[:5]!r} are not in the ambient poset")
    for a in sub.labels:
        for b in sub.labels:
            if sub.leq(a, b) != ambient.leq(a, b):
                raise NotASubposet(
                    f"order disagrees on {a!r}, {b!r} between sub and ambient")


def _conjugacy_reps(ambient: GPoset, sub: GPoset, pool) -> list:
    """One label per conjugacy orbit, valid when both posets are invariant."""
    lat = ambient.lattice
    if lat is None:
        return list(pool)
    gens = lat.generating_set(lat.full)
    if not (ambient.is_invariant_under(gens) and sub.is_invariant_under(gens)):
        return list(pool)
    seen = set()
    reps = []
    for y in pool:
        if y in seen:
            continue
        bits = lat.ref(y).bitset
        orbit = {lat.by_bitset(lat.conjugate_bitset(bits, m)).index
                 for m in range(lat.group.order)}
        seen |= orbit
        reps.append(y)
    return reps


@dataclass(frozen=True)
class InclusionResult:
    mode: str
    outcome: str                # PASS | FAIL | INCONCLUSIVE
    per_element: tuple          # ((label, stabilizer_index | None, Verdict), ...)
    witnesses: tuple            # labels whose hypothesis check did not certify
    claim: str

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def certificate(self):
        if self.mode == "fibers":
            return FiberContractibility(self.per_element)
        side = "lower" if self.mode == "lower" else "upper"
        per = tuple((y, v) for y, _, v in self.per_element)
        return LinkContractibility(side, self.mode == "upper-equivariant", per)

    def to_json(self):
        return {"mode": self.mode, "outcome": self.outcome, "claim": self.claim,
                "witnesses": [_json_label(w) for w in self.witnesses],
                "per_element": [[_json_label(y),
                                 s if s is not None else None,
                                 v.to_json()]
                                for y, s, v in self.per_element]}


def _zigzag_certificate(interval: GPoset, maps, comparisons) -> Zigzag:
    tabulated = []
    for f in maps:
        if callable(f):
            tabulated.append(_sorted_pairs({x: f(x) for x in interval.labels}))
        else:
            tabulated.append(_sorted_pairs(dict(f)))
    return Zigzag(tuple(tabulated), tuple(comparisons))


def _certify_element(interval: GPoset, gens, stab, hint,
                     max_simplices: int) -> Verdict:
    """Contractibility of one fiber or punctured interval, equivariantly when
    gens is not None. The hint, if any, is tried before the generic search."""
    extra_maps = ()
    if hint is not None:
        kind = hint[0]
        if kind == "zigzag":
            _, maps, comparisons = hint
            verdict = _try_zigzag(interval, maps, comparisons, gens)
            if verdict is not None:
                if verdict.equivariant or gens is None:
                    return verdict
                upgraded = _upgrade_by_fixed_points(interval, stab, verdict,
                                                   max_simplices)
                if upgraded is not None:
                    return upgraded
        elif kind == "conical":
            extra_maps = (hint[1:],)
        else:
            raise ValueError(f"unknown hint kind {kind!r}")
    verdict = contractibility_verdict(interval, equivariance_gens=gens,
                                      extra_maps=extra_maps,
                                      max_simplices=max_simplices)
    if verdict.status != CONTRACTIBLE or gens is None or verdict.equivariant:
        return verdict
    upgraded = _upgrade_by_fixed_points(interval, stab, verdict, max_simplices)
    return verdict if upgraded is None else upgraded


def _try_zigzag(interval: GPoset, maps, comparisons, gens) -> Verdict | None:
    try:
        if gens is not None and verify_zigzag(interval, maps, comparisons,
                                              gens, require_constant_end=True):
            cert = _zigzag_certificate(interval, maps, comparisons)
            return Verdict(CONTRACTIBLE, "zigzag", cert, True,
                           {"length": len(cert.maps)})
        if verify_zigzag(interval, maps, comparisons,
                         require_constant_end=True):
            cert = _zigzag_certificate(interval, maps, comparisons)
            return Verdict(CONTRACTIBLE, "zigzag", cert,
                           None if gens is None else False,
                           {"length": len(cert.maps)})
    except MapNotWellDefined:
        pass
    return None


def _upgrade_by_fixed_points(interval: GPoset, stab, plain: Verdict,
                             max_simplices: int) -> Verdict | None:
    """A plain certificate plus contractibility of every fixed subposet of
    the stabilizer settles equivariant contractibility either way."""
    scan = fixed_point_contractibility_scan(interval, stab, max_simplices)
    if scan is None:
        return None
    overall, per = scan
    if overall == CONTRACTIBLE:
        detail = dict(plain.detail)
        detail.update({"stabilizer": stab.index, "fixed_point_scan": per})
        return Verdict(CONTRACTIBLE, "fixed-point-scan", plain.certificate,
                       True, detail)
    if overall == NOT_CONTRACTIBLE:
        return Verdict(NOT_CONTRACTIBLE, "fixed-point-scan", None, False,
                       {"stabilizer": stab.index, "fixed_point_scan": per,
                        "plainly_contractible": True})
    return None


def verify_inclusion_equivalence(sub: GPoset, ambient: GPoset, mode: str, *,
                                 certifier=None, equivariant: bool | None = None,
                                 reps=None,
                                 max_simplices: int = DEFAULT_SIMPLEX_CAP
                                 ) -> InclusionResult:
    """Certify that sub -> ambient induces a homotopy equivalence.

    mode picks the hypothesis: "fibers" checks sub_{<=y} for every y in the
    ambient poset (stabilizer-equivariantly); "upper" / "lower" check the
    punctured intervals ambient_{>P} / ambient_{<P} for P outside sub
    (plainly); "upper-equivariant" is the upper check with stabilizer
    equivariance demanded. equivariant overrides the mode default.

    certifier(label, interval) may return ("zigzag", maps, comparisons) or
    ("conical", f, apex, direction) to try a known construction first.
    reps, when given, replaces the conjugacy-representative choice.

    Aggregation: PASS when every element certifies, FAIL when some hypothesis
    poset is NOT_CONTRACTIBLE (witnesses listed), else INCONCLUSIVE.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    _check_subposet(sub, ambient)
    demand = (mode in ("fibers", "upper-equivariant")
              if equivariant is None else equivariant)
    lat = ambient.lattice
    if demand and lat is None:
        raise ValueError("equivariant modes need a lattice-backed poset")

    if mode == "fibers":
        pool = list(ambient.labels)
    else:
        inside = set(sub.labels)
        pool = [x for x in ambient.labels if x not in inside]
    pool = ([ambient._label_of(r) for r in reps] if reps is not None
            else _conjugacy_reps(ambient, sub, pool))

    per = []
    failing = []
    undecided = []
    for y in pool:
        if mode == "fibers":
            interval = sub.below(y)
        elif mode == "lower":
            interval = ambient.below(y, strict=True)
        else:
            interval = ambient.above(y, strict=True)
        stab = gens = None
        if demand:
            stab = lat.normalizer(lat.ref(y))
            gens = lat.generating_set(stab)
        hint = certifier(y, interval) if certifier is not None else None
        verdict = _certify_element(interval, gens, stab, hint, max_simplices)
        per.append((y, stab.index if stab is not None else None, verdict))
        if verdict.status == NOT_CONTRACTIBLE:
            failing.append(y)
        elif verdict.status == UNKNOWN or (demand and not verdict.equivariant):
            undecided.append(y)

    if failing:
        outcome, witnesses = FAIL, tuple(failing)
    elif undecided:
        outcome, witnesses = INCONCLUSIVE, tuple(undecided)
    else:
        outcome, witnesses = PASS, ()
    return InclusionResult(mode, outcome, tuple(per), witnesses, _CLAIMS[mode])


# --------------------------------------------------------------------------
# fixed-point avatar comparisons


@dataclass(frozen=True)
class FixedPointComparison:
    subgroup: int
    order: int
    status: str          # CERTIFIED | HOMOLOGY-CONSISTENT | MISMATCH
    method: str
    certificate: object | None
    detail: dict

    def to_json(self):
        cert = self.certificate.to_json() if self.certificate is not None else None
        return {"subgroup": self.subgroup, "order": self.order,
                "status": self.status, "method": self.method,
                "certificate": cert, "detail": self.detail}


@dataclass(frozen=True)
class FixedPointScan:
    per_subgroup: tuple

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.per_subgroup}
        if MISMATCH in statuses:
            return MISMATCH
        if HOMOLOGY_CONSISTENT in statuses:
            return HOMOLOGY_CONSISTENT
        return CERTIFIED

    def mismatches(self) -> tuple:
        return tuple(c for c in self.per_subgroup if c.status == MISMATCH)

    def to_json(self):
        return {"status": self.status,
                "per_subgroup": [c.to_json() for c in self.per_subgroup]}


def _profile_of(poset: GPoset, max_simplices: int):
    return homology(order_complex(poset, max_simplices))


def _compare_pair(h, left: GPoset, right: GPoset, retraction,
                  max_simplices: int) -> FixedPointComparison:
    _check_subposet(left, right)
    if set(left.labels) == set(right.labels):
        return FixedPointComparison(h.index, h.order, CERTIFIED, "equal", None,
                                    {"size": len(left)})
    if left.is_empty() != right.is_empty():
        sizes = {"left": len(left), "right": len(right)}
        return FixedPointComparison(h.index, h.order, MISMATCH, "emptiness",
                                    None, sizes)
    if retraction is not None:
        hint = retraction(h, left, right)
        if hint is not None:
            f, side = hint
            try:
                if verify_monotone_retraction(right, f, side, left):
                    fmap = (dict(f) if not callable(f)
                            else {x: f(x) for x in right.labels})
                    cert = MonotoneRetraction(_sorted_pairs(fmap), side,
                                              tuple(left.labels))
                    return FixedPointComparison(h.index, h.order, CERTIFIED,
                                                "retraction", cert,
                                                {"image": len(set(fmap.values()))})
            except MapNotWellDefined:
                pass
    vl = contractibility_verdict(left, max_simplices=max_simplices)
    vr = contractibility_verdict(right, max_simplices=max_simplices)
    if vl.status == CONTRACTIBLE and vr.status == CONTRACTIBLE:
        return FixedPointComparison(h.index, h.order, CERTIFIED,
                                    "both-contractible", None,
                                    {"left": vl.method, "right": vr.method})
    statuses = {vl.status, vr.status}
    if statuses == {CONTRACTIBLE, NOT_CONTRACTIBLE}:
        return FixedPointComparison(h.index, h.order, MISMATCH,
                                    "contractibility", None,
                                    {"left": vl.status, "right": vr.status})
    pl = _profile_of(left, max_simplices)
    pr = _profile_of(right, max_simplices)
    agree = pl == pr
    detail = {"left": pl.to_json(), "right": pr.to_json()}
    return FixedPointComparison(h.index, h.order,
                                HOMOLOGY_CONSISTENT if agree else MISMATCH,
                                "homology", None, detail)


def fixed_point_equivalence_scan(subgroups, left_of, right_of, *,
                                 retraction=None,
                                 max_simplices: int = DEFAULT_SIMPLEX_CAP
                                 ) -> FixedPointScan:
    """Compare designated avatar posets over a list of subgroup refs.

    left_of(h) must be a subposet of right_of(h). Grading per h: equal label
    sets or a verified retraction (retraction(h, left, right) returning
    (f, side), f mapping the right poset into the left one) or both posets
    contractible give CERTIFIED; failing that, equal homology profiles give
    HOMOLOGY-CONSISTENT, anything else MISMATCH.
    """
    rows = []
    for h in subgroups:
        rows.append(_compare_pair(h, left_of(h), right_of(h), retraction,
                                  max_simplices))
    return FixedPointScan(tuple(rows))
