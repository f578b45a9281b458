"""Independent ground truth: exact truncated-lattice DP and seeded Monte Carlo."""

from .dp import LatticeWindow, ModelTag, VisitTable, dp_expected_visits, steps_for_moment, steps_for_residual
from .mc import SimResult, mc_simulate
from .verify import CheckRecord, VerifyReport, verify

__all__ = [
    "CheckRecord",
    "LatticeWindow",
    "ModelTag",
    "SimResult",
    "VerifyReport",
    "VisitTable",
    "dp_expected_visits",
    "mc_simulate",
    "steps_for_moment",
    "steps_for_residual",
    "verify",
]
