"""Exact identity checks, empirical bound reports and verification suites."""

from .bounds import (
    BoundSpec,
    campanato_test_set,
    check_campanato_equiv,
    check_ddKj,
    check_HK,
    check_kernel_RT,
    check_lemma_CN,
    check_lip_eg,
    check_maximal_atoms,
    check_QQ,
    grade_hczo,
    heat_hczo,
    riesz_hczo,
    zero_kernel,
)
from .identities import (
    IdentityResult,
    assert_identity,
    check_commutation,
    check_heat_series,
    check_identityA,
    check_identityC,
    check_ladder,
    check_leibniz,
    check_leibniz_discrete,
    check_leibniz_ladder,
    check_partition,
    check_semigroup,
    identity_a_constant,
    run_identities,
)
from .suites import SUITES, ConfigError, SuiteResult, WindowCheck, export_result, run_suite

__all__ = [
    "BoundSpec",
    "ConfigError",
    "IdentityResult",
    "SUITES",
    "SuiteResult",
    "WindowCheck",
    "assert_identity",
    "campanato_test_set",
    "check_HK",
    "check_QQ",
    "check_campanato_equiv",
    "check_commutation",
    "check_ddKj",
    "check_heat_series",
    "check_identityA",
    "check_identityC",
    "check_kernel_RT",
    "check_ladder",
    "check_lemma_CN",
    "check_leibniz",
    "check_leibniz_discrete",
    "check_leibniz_ladder",
    "check_lip_eg",
    "check_maximal_atoms",
    "check_partition",
    "check_semigroup",
    "export_result",
    "grade_hczo",
    "heat_hczo",
    "identity_a_constant",
    "riesz_hczo",
    "run_identities",
    "run_suite",
    "zero_kernel",
]
