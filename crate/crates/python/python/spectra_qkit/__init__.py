"""Spectral zeta functions of cyclic hyperbolic groups, exact q-series and
identity audits."""

from ._spectra_qkit import (
    Estimate,
    FormalSeries,
    ModularParameter,
    dedekind_eta,
    dedekind_eta_series,
    euler_specialization,
    fock_graded_dim_series,
    goettsche_series,
    ktheory_euler_series,
    manifest,
    partition_gf,
    point_case_series,
    ruelle,
    run_suite,
    super_character_series,
    super_supertrace,
    verify_table_row,
    verify_zero,
    weber_f,
    weber_f_series,
    z_gamma,
    z_gamma_logseries,
    z_ratio,
)


def tau(value: complex) -> ModularParameter:
    """Shorthand for ``ModularParameter.from_complex``."""
    return ModularParameter.from_complex(complex(value))


__all__ = [
    "Estimate",
    "FormalSeries",
    "ModularParameter",
    "dedekind_eta",
    "dedekind_eta_series",
    "euler_specialization",
    "fock_graded_dim_series",
    "goettsche_series",
    "ktheory_euler_series",
    "manifest",
    "partition_gf",
    "point_case_series",
    "ruelle",
    "run_suite",
    "super_character_series",
    "super_supertrace",
    "tau",
    "verify_table_row",
    "verify_zero",
    "weber_f",
    "weber_f_series",
    "z_gamma",
    "z_gamma_logseries",
    "z_ratio",
]
