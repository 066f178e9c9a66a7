"""Plan execution: load a group, build its lattice, run verification suites,
and assemble one deterministic report dictionary.

Reports carry no timestamps or environment data; two runs of the same plan on
the same inputs serialize byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .cache import lattice_for
from .collections import CONDITIONS, KINDS, collection_context
from .group import PermutationGroup, load_group
from .lattice import DEFAULT_ORDER_CAP
from .poset import DEFAULT_SIMPLEX_CAP
from .tables import (SKIPPED, TABLE31, TABLE44, is_dihedral8,
                     verify_counterexamples, verify_inclusion_chains,
                     verify_table_edges)

REPORT_FORMAT = "sclab-report/1"

SUITES = ("table31", "table44", "counterexamples", "inclusions",
          "conditions", "all")

# analyses the report deliberately leaves out; listed so a reader of the
# report knows the boundary of what a clean run claims
NOT_CHECKED = (
    "equivariant (Bredon) homology decompositions",
    "ampleness and sharpness of homology approximations",
    "mod-p group cohomology comparisons",
    "groups beyond the order cap (sporadic-scale inputs)",
)


@dataclass(frozen=True)
class VerificationPlan:
    group: str                     # file path or builtin:NAME
    prime: int
    suite: str = "all"
    max_order: int = DEFAULT_ORDER_CAP
    max_simplices: int = DEFAULT_SIMPLEX_CAP
    cache_dir: Path | None = None
    strict: bool = False

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; expected one of "
                             + ", ".join(SUITES))
        if self.prime < 2:
            raise ValueError(f"prime must be at least 2, got {self.prime}")

    def to_json(self) -> dict:
        return {"group": self.group, "prime": self.prime, "suite": self.suite,
                "max_order": self.max_order,
                "max_simplices": self.max_simplices,
                "strict": self.strict}


def _group_section(group: PermutationGroup) -> dict:
    return {"name": group.name, "degree": group.degree, "order": group.order,
            "hash": group.content_hash,
            "generators": [group.elements[i].cycle_string()
                           for i in group.generator_indices]}


def _collections_section(ctx) -> dict:
    return {kind: len(ctx.collection(kind).members) for kind in KINDS}


def _table_section(lattice, prime, table, max_simplices) -> dict:
    results = verify_table_edges(lattice, prime, table,
                                 max_simplices=max_simplices)
    return {"edges": [r.to_json() for r in results]}


def _counterexamples_section(lattice, prime, max_simplices) -> dict:
    applicable = is_dihedral8(lattice.group) and prime == 2
    results = verify_counterexamples(lattice, prime,
                                     max_simplices=max_simplices)
    section = {"applicable": applicable,
               "edges": [r.to_json() for r in results]}
    if not applicable:
        section["note"] = ("documented counterexamples concern the dihedral "
                           "group of order 8 at p = 2 only")
    return section


def _inclusions_section(lattice, prime) -> dict:
    return {"chains": verify_inclusion_chains(lattice, prime)}


def _conditions_section(lattice, prime) -> dict:
    ctx = collection_context(lattice, prime)
    reports = {c: ctx.condition(c).to_json() for c in CONDITIONS}
    section = {"reports": reports}
    if ctx.condition("Ch").holds:
        section["radical_collections_coincide"] = ctx.equalities_under_Ch()
    else:
        section["radical_collections_coincide"] = None
    return section


def run(plan: VerificationPlan) -> dict:
    """Execute the plan and return the report dictionary."""
    plan.validate()
    group = load_group(plan.group, max_order=plan.max_order)
    lattice = lattice_for(group, cache_dir=plan.cache_dir,
                          max_order=plan.max_order)
    ctx = collection_context(lattice, plan.prime)

    suites: dict = {}
    wanted = SUITES[:-1] if plan.suite == "all" else (plan.suite,)
    for suite in wanted:
        if suite == TABLE31 or suite == TABLE44:
            suites[suite] = _table_section(lattice, plan.prime, suite,
                                           plan.max_simplices)
        elif suite == "counterexamples":
            suites[suite] = _counterexamples_section(lattice, plan.prime,
                                                     plan.max_simplices)
        elif suite == "inclusions":
            suites[suite] = _inclusions_section(lattice, plan.prime)
        elif suite == "conditions":
            suites[suite] = _conditions_section(lattice, plan.prime)

    report = {
        "format": REPORT_FORMAT,
        "plan": plan.to_json(),
        "group": _group_section(group),
        "lattice": {"subgroups": len(lattice),
                    "conjugacy_classes": len(lattice.orbit_representatives())},
        "collections": _collections_section(ctx),
        "suites": suites,
        "not_checked": list(NOT_CHECKED),
    }
    report["summary"] = summarize(report)
    return report


def run_inclusions(plan: VerificationPlan) -> dict:
    """Convenience wrapper: the plan's suite forced to the inclusion chains."""
    return run(VerificationPlan(plan.group, plan.prime, "inclusions",
                                plan.max_order, plan.max_simplices,
                                plan.cache_dir, plan.strict))


def _iter_edges(report: dict):
    for section in report["suites"].values():
        yield from section.get("edges", ())


def summarize(report: dict) -> dict:
    counts = {"CERTIFIED": 0, "HOMOLOGY-CONSISTENT": 0, "MISMATCH": 0,
              "INCONCLUSIVE": 0, SKIPPED: 0}
    for edge in _iter_edges(report):
        counts[edge["status"]] += 1
    chain_rows = report["suites"].get("inclusions", {}).get("chains", [])
    violations = sum(1 for row in chain_rows if not row["holds"])
    return {
        "edges": sum(counts.values()),
        "by_status": counts,
        "chain_violations": violations,
        "mismatch_found": counts["MISMATCH"] > 0 or violations > 0,
        "inconclusive_found": counts["INCONCLUSIVE"] > 0,
    }


def exit_status(report: dict, *, strict: bool = False) -> int:
    summary = report["summary"]
    if summary["mismatch_found"]:
        return 1
    if strict and summary["inconclusive_found"]:
        return 2
    return 0
