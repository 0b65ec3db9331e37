"""Exact symbolic calculus for decorated chain strata on two-pointed moduli
of stable curves, with linear-combination certificates over boundary
relations."""

from .calculus import (
    diamond,
    glue_tail,
    mul_delta013,
    mul_psi,
    mul_sep_divisor,
    omega_apply,
    pullback_forget,
    pushforward_forget,
    unit_03,
)
from .certify import (
    Certificate,
    CertifyOutcome,
    certify_zero,
    verify_certificate,
)
from .constructors import (
    make_B,
    make_B_onepoint,
    make_b_arrow,
    make_c,
    make_c_arrow,
    make_c_arrow_left,
    make_d,
    make_e,
)
from .core import (
    Bamboo,
    FormalSum,
    KappaUnsupported,
    OmegaMarker,
    Term,
    Vertex,
    canonical_key,
    chain,
    reflect,
    sentinel,
    single_vertex,
)
from .export import export_admcycles, parse_admcycles
from .relations import EnumBudget, RelationInstance, default_budget, enumerate_instances, expand

__all__ = [
    "Bamboo",
    "Certificate",
    "CertifyOutcome",
    "EnumBudget",
    "FormalSum",
    "KappaUnsupported",
    "OmegaMarker",
    "RelationInstance",
    "Term",
    "Vertex",
    "canonical_key",
    "certify_zero",
    "chain",
    "default_budget",
    "diamond",
    "enumerate_instances",
    "expand",
    "export_admcycles",
    "glue_tail",
    "make_B",
    "make_B_onepoint",
    "make_b_arrow",
    "make_c",
    "make_c_arrow",
    "make_c_arrow_left",
    "make_d",
    "make_e",
    "mul_delta013",
    "mul_psi",
    "mul_sep_divisor",
    "omega_apply",
    "parse_admcycles",
    "pullback_forget",
    "pushforward_forget",
    "reflect",
    "sentinel",
    "single_vertex",
    "unit_03",
    "verify_certificate",
]
