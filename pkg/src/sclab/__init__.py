"""Collections of p-subgroups of a finite group, and certified verification
of the homotopy comparisons between them."""

from .collections import (CONDITIONS, KINDS, Collection, CollectionContext,
                          ConditionReport, collection_context)
from .contract import (CONTRACTIBLE, NOT_CONTRACTIBLE, UNKNOWN,
                       CollapseSequence, ConePoint, ConicalContraction,
                       HomologyWitness, MonotoneRetraction, Verdict, Zigzag,
                       contractibility_verdict, verify_certificate)
from .equivalence import (FixedPointScan, InclusionResult,
                          fixed_point_equivalence_scan,
                          verify_inclusion_equivalence)
from .errors import SclabError
from .group import PermutationGroup, builtin_group, load_group, parse_group_text
from .homology import HomologyProfile, homology
from .lattice import SubgroupLattice, SubgroupRef, enumerate_subgroups
from .poset import GPoset, OrderComplex, order_complex
from .report import emit_report
from .runner import VerificationPlan, exit_status, run, run_inclusions
from .tables import (EdgeResult, EdgeSpec, verify_counterexamples,
                     verify_inclusion_chains, verify_table_edges)

__version__ = "0.1.0"

__all__ = [
    "CONDITIONS", "CONTRACTIBLE", "KINDS", "NOT_CONTRACTIBLE", "UNKNOWN",
    "CollapseSequence", "Collection", "CollectionContext", "ConditionReport",
    "ConePoint", "ConicalContraction", "EdgeResult", "EdgeSpec",
    "FixedPointScan", "GPoset", "HomologyProfile", "HomologyWitness",
    "InclusionResult", "MonotoneRetraction", "OrderComplex",
    "PermutationGroup", "SclabError", "SubgroupLattice", "SubgroupRef",
    "Verdict", "VerificationPlan", "Zigzag", "builtin_group",
    "collection_context", "contractibility_verdict", "emit_report",
    "enumerate_subgroups", "exit_status", "fixed_point_equivalence_scan",
    "homology", "load_group", "order_complex", "parse_group_text", "run",
    "run_inclusions", "verify_certificate", "verify_counterexamples",
    "verify_inclusion_chains", "verify_inclusion_equivalence",
    "verify_table_edges",
]
