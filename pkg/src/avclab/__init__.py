"""Simulation laboratory and analytic calculator for power-constrained
jamming channels where the jammer sees the transmission through its own
noisy channel.

Layering: geometry (sphere measure, caps, coverings, tail bounds) ->
capacity (closed-form rates, scalar optimizations, regime classifier)
-> codec (spherical codebooks and exact decoders) -> jammers (attack
strategies) -> experiments (Monte Carlo harnesses) -> cli (TOML in,
CSV out).
"""

__version__ = "0.1.0"

from .capacity import (
    CapacityVerdict,
    ChannelParams,
    KeyRegime,
    OptResult,
    awgn_rate,
    classify,
    list_disambiguation_penalty,
    maximize_myop_ld_radius,
    minimize_scale_babble,
    myop_ld_radius,
    rate_gv,
    rate_ld,
    rate_lp,
    rate_myop,
    rate_rankin,
    symmetrization_pe_floor,
)
from .codec import (
    CodebookSizeError,
    DecodeOutcome,
    SphericalCodebook,
    encode,
    generate,
    list_decode,
    load_codebook,
    min_distance_decode,
    save_codebook,
)
from .experiments import (
    ListSurvey,
    OgsPartition,
    StripCensus,
    TrialConfig,
    TrialTally,
    blob_and_reverse_sizes,
    build_ogs,
    list_size_survey,
    quasi_uniformity,
    region_sweep,
    run_pe,
    strip_census,
    wilson_interval,
)
from .geometry import (
    CapSpec,
    LogMeasure,
    StripSpec,
    ball_cap_fraction,
    ball_cap_log2_fraction,
    ball_log_volume,
    cap_fraction,
    cap_log2_fraction,
    sphere_log_area,
    strip_fraction,
    uniform_sphere_sample,
)
from .jammers import (
    ATTACKS,
    CODEBOOK_FREE_ATTACKS,
    InfeasibleAttackError,
    JamContext,
    JamResult,
    awgn_observe,
    jam_oblivious,
    jam_push_to_origin,
    jam_scale_and_babble,
    jam_silent,
    jam_symmetrize_z_agnostic,
    jam_symmetrize_z_aware,
)

__all__ = [name for name in dir() if not name.startswith("_")]
