"""Exact arithmetic for linear forms in q-zeta values."""

from ._qzeta import (
    __version__,
    apery_limits,
    cyclotomic,
    dnp,
    empirical_mu,
    group_order,
    inclusion,
    jacobi_check,
    linform,
    measure,
    mertens_ratio,
    omega,
    ord_phi_factorial,
    rho,
    run_cli,
    zeta_q_enclosure,
    zeta_q_series,
    zeta_q_value,
)

__all__ = [
    "apery_limits",
    "cyclotomic",
    "dnp",
    "empirical_mu",
    "group_order",
    "inclusion",
    "jacobi_check",
    "linform",
    "measure",
    "mertens_ratio",
    "omega",
    "ord_phi_factorial",
    "rho",
    "run_cli",
    "zeta_q_enclosure",
    "zeta_q_series",
    "zeta_q_value",
]
