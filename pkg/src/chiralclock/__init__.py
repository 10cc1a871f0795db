"""Driven Z3 chiral clock chains: simulation, spectra, sweeps.

State-vector Floquet simulator for qutrit chains with chiral clock
interactions, plus the spectral diagnostics (quasienergy triplets, cat
eigenvectors, gap-ratio statistics) and observable pipelines (period-3
magnetization response, clock autocorrelators, glass order) that
characterize the subharmonic phase and its decay.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    OMEGA,
    QutritState,
    apply_global,
    apply_local,
    basis_index,
    clock_z,
    fractional_power,
    index_to_trits,
    shift_x,
    subspace_x12,
    trits_from_string,
    trits_to_string,
)
from .model import (  # noqa: E402
    BondCoupling,
    ChainParams,
    CrossKerrAngles,
    CrossKerrMappingError,
    DisorderSpec,
    PRNG_ALGORITHM,
    SiteField,
    cross_kerr_coefficients,
    diagonal_energies,
    epsilon_prime,
    epsilon_prime_vector,
    epsilon_z3,
    epsilon_z3_vector,
    map_cross_kerr,
    sample_disorder,
    two_site_diagonal,
    unmap_to_cross_kerr,
    wrap_angle,
    wrap_pm_pi,
)
from .floquet import (  # noqa: E402
    FloquetOperator,
    KickSpec,
    TrajectoryRecord,
    apply_cycle,
    autocorrelator_trajectory,
    build_floquet,
    kick_matrix,
    run_trajectory,
)
from .observables import (  # noqa: E402
    ObservableSet,
    SpectroscopyGrid,
    all_populations,
    average_autocorrelator,
    chi_ea,
    chi_ea_baseline_subtract,
    entropy,
    fft_response,
    magnetization,
    pairwise_clock_correlations,
    purity,
    reduced_density,
    site_populations,
    subharmonic_fraction,
    subspace_magnetization,
)
from .spectral import (  # noqa: E402
    CatStateReport,
    SpectralReport,
    analytic_g1_spectrum,
    cat_state_check,
    circular_gaps,
    dense_floquet,
    gap_ratio_stat,
    orbit_masses,
    pairing_errors,
    quasienergies,
    spectral_report,
)
from .sweep import (  # noqa: E402
    InitialStateFamily,
    RunManifest,
    SweepConfig,
    initial_state_strings,
    make_initial_states,
    run_sweep,
)
from .cli import cli_main  # noqa: E402
