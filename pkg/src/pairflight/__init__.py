"""Flight-time statistics for pairs of identical quantum particles.

Quantum wave packets have no unique arrival time.  This package adopts an
operational definition: a detection screen is placed far from the source and
the arrival-time distribution is read off from the probability density (or
probability current) crossing the screen as a function of time.  For a pair
of identical particles the exchange symmetry of the two-particle state
shifts those distributions even when the particles never interact; the
modules here quantify that shift for free flight, scattering off a point
barrier, and relativistic propagation.
"""

__version__ = "0.1.0"

from .wavepacket import (
    ReducedUnits,
    CoherentState,
    free_psi,
    free_density,
    survival_single,
)
from .pairstats import (
    ExchangeStatistics,
    ParticlePair,
    DegeneratePairError,
    normalization_sq,
    pair_density_free,
    boson_density_dx,
    boson_density_dk,
    fermion_density_dx,
    fermion_coincident_density,
    overlap_pair,
    overlap_limits,
)
from .barrier import (
    DeltaBarrier,
    EpsilonConvention,
    Channel,
    ScatteredPair,
    transmission_amp,
    reflection_amp,
    phase_delay,
    imag_time_transmitted,
    imag_time_reflected,
    filter_shift,
    psi_T_exact,
    psi_R_exact,
    psi_T_asym,
    psi_R_asym,
    pair_scattered_psi,
)
from .relkin import (
    RelativisticState,
    electron_psi,
    electron_density,
    photon_density,
    rel_pair_screen_density,
)
from .flighttime import (
    QuadratureSpec,
    QuadratureError,
    UnsupportedChannelError,
    Weighting,
    FlightTimeDistribution,
    screen_density_free,
    screen_density_scattered,
    arrival_distribution,
    arrival_family,
    free_distribution,
    mean_flight_time,
)
from .analysis import (
    CaseConfig,
    CASE_I,
    CASE_II,
    SCAN_GAMMAS,
    GammaScanPoint,
    LinearFit,
    linear_fit,
    mean_time_table,
    gamma_scan,
    scaled_case,
    predicted_intercept,
    tail_exponent,
)
