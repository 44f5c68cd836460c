"""Exact computer algebra for the N=1 and N=2 super Schroedinger algebras
of (1+1)-dimensional spacetime: structure tables and adjoint maps,
lowest-weight (Verma) modules with PBW normal ordering, singular vector
search, factor-module classification, the invariant bilinear form, and
vector-field realizations on polynomial superspace."""

from .scalars import (GradedScalar, OddVariableAlgebra, QI, ScalarRing,
                      parse_qi, parse_rational)
from .superalgebra import (AdjointMap, StructureTable, build_adjoint,
                           build_algebra, closes_under_bracket,
                           identity_adjoint, triangular_decompose,
                           verify_adjoint, verify_structure)
from .verma import LowestWeight, ModuleVector, VermaModule
from .singular import (SingularVectorReport, check_recurrences,
                       closed_form_n1, closed_form_n2, closed_form_n2_extra,
                       expected_closed_forms, find_singular, in_span)
from .quotient import (ClassificationRecord, FactorModule, GramMatrix,
                       classify, find_singular_in_factor, gram, gram_pair,
                       intertwiner_failures, quotient_by_singular,
                       reachable_weight)
from .realization import (SuperDiffOp, SuperPoly, SuperSpace,
                          build_realization, chi_eta_ops, verify_chi_eta,
                          verify_relations)

__version__ = "0.1.0"

__all__ = [
    "AdjointMap", "ClassificationRecord", "FactorModule", "GradedScalar",
    "GramMatrix", "LowestWeight", "ModuleVector", "OddVariableAlgebra", "QI",
    "ScalarRing", "SingularVectorReport", "StructureTable", "SuperDiffOp",
    "SuperPoly", "SuperSpace", "VermaModule", "build_adjoint",
    "build_algebra", "build_realization", "check_recurrences", "chi_eta_ops",
    "classify", "closed_form_n1", "closed_form_n2", "closed_form_n2_extra",
    "closes_under_bracket", "expected_closed_forms", "find_singular",
    "find_singular_in_factor", "gram", "gram_pair", "identity_adjoint",
    "in_span", "intertwiner_failures", "parse_qi", "parse_rational",
    "quotient_by_singular", "reachable_weight", "triangular_decompose",
    "verify_adjoint", "verify_chi_eta", "verify_relations",
    "verify_structure",
]
