"""Network criticality (tau = 2n Tr(L+)) of r-nearest-neighbor cycles and tori."""

from .criticality import (
    CriticalityValue,
    tau_closed_form,
    tau_cycle_asymptotic,
    tau_cycle_closed_form,
    tau_from_spectrum,
    tau_torus_asymptotic,
    tau_torus_closed_form,
)
from .optimizer import OptimizationProblem, OptimizationResult, PowerModel, node_power, solve
from .spectra import (
    Spectrum,
    TopologySpec,
    circulant_eigenvalues,
    cycle_spectrum,
    dirichlet_kernel,
    torus_spectrum,
)
from .stochastic import (
    AsymmetricRingSpec,
    StochasticRingModel,
    expected_laplacian,
    tau_asymmetric_ring,
    tau_link_failures,
    tau_neighbor_switching,
    tau_random_links,
)

__version__ = "0.1.0"
