"""Exact post-quench dynamics and quantum-resource measures of the XY chain.

The package solves the global transverse-field quench of the periodic
spin-1/2 XY chain in closed form via its free-fermion modes, evaluates the
nearest-neighbour correlators at any time and system size, and computes three
resource measures of the two-site reduced state: the l1-norm and
relative-entropy steered quantum coherences and a magic resource quantifier.
Sweeps over the post-quench field resolve the equilibrium critical point, and
the first finite-size revival time scales linearly with chain length.

Every analytic path is backed by an independent oracle (exact diagonalisation,
measurement-ensemble averaging, Pauli-trace sums, extended-precision
summation); see the oracle module and the bundled test suite.
"""

__version__ = "0.1.0"

from .model import ModelParams, MomentumMode, build_momentum_grid, dispersion, mode_arrays
from .correlators import (CorrelatorSeries, CorrelatorSet, compute_F, compute_QG,
                          correlator_series, correlators_nn)
from .measures import (XState, assemble_xstate, c_l1, c_re, characteristic_matrix,
                       h2, measure_arrays, mrq)
from .oracle import (EDState, build_hamiltonian, compute_F_reference, ed_build,
                     ed_correlators, ed_two_site_rdm, mode_consistency_correlators,
                     mrq_pauli, qubit_l1_coherence, qubit_re_coherence,
                     sample_x_states, sqc_ensemble, sqc_ensemble_terms)
from .sweeps import (MeasureRecord, NoRevivalError, RevivalFit, SweepSpec,
                     detect_first_revival, fit_linear, resolve_workers, scan_revivals,
                     series_measures, sweep_grid, time_series)

__all__ = [
    "__version__",
    "ModelParams", "MomentumMode", "build_momentum_grid", "dispersion", "mode_arrays",
    "CorrelatorSeries", "CorrelatorSet", "compute_F", "compute_QG",
    "correlator_series", "correlators_nn",
    "XState", "assemble_xstate", "c_l1", "c_re", "characteristic_matrix",
    "h2", "measure_arrays", "mrq",
    "EDState", "build_hamiltonian", "compute_F_reference", "ed_build",
    "ed_correlators", "ed_two_site_rdm", "mode_consistency_correlators",
    "mrq_pauli", "qubit_l1_coherence", "qubit_re_coherence",
    "sample_x_states", "sqc_ensemble", "sqc_ensemble_terms",
    "MeasureRecord", "NoRevivalError", "RevivalFit", "SweepSpec",
    "detect_first_revival", "fit_linear", "resolve_workers", "scan_revivals",
    "series_measures", "sweep_grid", "time_series",
]
