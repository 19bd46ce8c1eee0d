"""Finite-dimensional workbench for PU(N)/U(n) monopole moduli computations.

The library has four computational layers:

* :mod:`monopoles.cohomology` -- exact integer/rational arithmetic in the
  degree-two cohomology of a closed oriented 4-manifold, and the expected
  dimension formulas of the monopole and instanton deformation complexes.
* :mod:`monopoles.mu_kernel` -- the quadratic spinor map built from the
  orthogonal projections onto ``sl(2) (x) sl(n)`` and ``sl(2) (x) C id``,
  with numerically certified properness and zero-divisor margins.
* :mod:`monopoles.kaehler` -- single-fiber linear algebra of the monopole
  equations on a Kahler surface: the trace-interpolating brace operator,
  Clifford action on self-dual forms, curvature-equation splitting, the
  decoupling inequality and the identity-obstruction margin.
* :mod:`monopoles.reductions` -- enumeration of circle-action fixed-point
  candidates (proper subbundle splittings) under Chern-Weil curvature
  windows, Uhlenbeck strata bookkeeping, and the generic tau=0 vanishing
  verdict.

Everything is a pure function of its inputs; randomized estimates are
deterministic given their seed.
"""

from .cohomology import (
    BundleData,
    CohClass2,
    FourManifold,
    InconsistentTopologyError,
    SpincStructure,
    cup,
    dirac_index,
    expected_dim_asd,
    expected_dim_pun,
    expected_dim_un,
    p1_su,
)
from .kaehler import (
    PointwiseField,
    brace,
    clifford_sd,
    decoupling_bound,
    impossibility_margin,
    impossibility_margin_closed_form,
    mu_kaehler,
    verify_curvature_split,
)
from .mu_kernel import (
    BlockEndo,
    SpinorPair,
    mu,
    mu_norm_batch,
    outer,
    project_P,
    project_Q,
    properness_constant_estimate,
    quartic_form,
    zero_divisor_margin,
)
from .optim import OptimizationReport
from .reductions import (
    CurvatureBounds,
    InconsistentCandidateError,
    ReductionCandidate,
    chern_weil_c2_window,
    component_dims,
    enumerate_reductions,
    generic_tau0_vanishing,
    tau_parameter,
    uhlenbeck_strata,
    whitney_complement,
)

__version__ = "0.1.0"

__all__ = [
    "BlockEndo",
    "BundleData",
    "CohClass2",
    "CurvatureBounds",
    "FourManifold",
    "InconsistentCandidateError",
    "InconsistentTopologyError",
    "OptimizationReport",
    "PointwiseField",
    "ReductionCandidate",
    "SpincStructure",
    "SpinorPair",
    "brace",
    "chern_weil_c2_window",
    "clifford_sd",
    "component_dims",
    "cup",
    "decoupling_bound",
    "dirac_index",
    "enumerate_reductions",
    "expected_dim_asd",
    "expected_dim_pun",
    "expected_dim_un",
    "generic_tau0_vanishing",
    "impossibility_margin",
    "impossibility_margin_closed_form",
    "mu",
    "mu_kaehler",
    "mu_norm_batch",
    "outer",
    "p1_su",
    "project_P",
    "project_Q",
    "properness_constant_estimate",
    "quartic_form",
    "tau_parameter",
    "uhlenbeck_strata",
    "verify_curvature_split",
    "whitney_complement",
    "zero_divisor_margin",
]
