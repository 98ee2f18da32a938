"""Limited-feedback intercell interference nulling.

Quantized-CSI beamforming with per-channel feedback bits, analytical
rate-loss bounds, adaptive bit allocation across the serving and
interfering stations, and a seven-cell Monte Carlo simulator.
"""

from .allocator import (
    BitAllocation,
    InterfererWeight,
    allocate,
    desired_bits_high_snr,
    desired_bits_low_snr,
    effective_interferer_set,
    equal_bit_allocation,
    exhaustive_allocation,
    partition_interferer_bits,
    round_allocation,
)
from .bounds import (
    LinkParams,
    approx_loss_user,
    desired_term_bound,
    interference_term_bound,
    lemma1_beta_form,
    lemma1_binomial_sum,
    loss_upper_bound,
)
from .errors import CapacityError, ConfigError, NumericalError, SingularMatrixError
from .fading import (
    SPEED_OF_LIGHT,
    DopplerParams,
    clarke_correlation,
    cost231_pathloss_db,
    gauss_markov_evolve,
    link_budget,
    rayleigh_channel,
)
from .numerics import RngStream, bessel_j0, beta_fn, ln_gamma, right_pseudo_inverse
from .precoder import Beamformer, CellSideInfo, icin_beamformer, sinr, sum_rate
from .quantizer import (
    Codebook,
    QuantizedDirection,
    generate_codebook,
    quantize,
    rvq_sin2_samples,
    statistical_quantize,
)
from .simulator import (
    Scenario,
    SimConfig,
    SweepReport,
    SweepRow,
    build_hex_scenario,
    load_config,
    run_sweep,
    run_trial,
    user_link_params,
)

__version__ = "0.1.0"

__all__ = [
    "BitAllocation",
    "InterfererWeight",
    "allocate",
    "desired_bits_high_snr",
    "desired_bits_low_snr",
    "effective_interferer_set",
    "equal_bit_allocation",
    "exhaustive_allocation",
    "partition_interferer_bits",
    "round_allocation",
    "LinkParams",
    "approx_loss_user",
    "desired_term_bound",
    "interference_term_bound",
    "lemma1_beta_form",
    "lemma1_binomial_sum",
    "loss_upper_bound",
    "CapacityError",
    "ConfigError",
    "NumericalError",
    "SingularMatrixError",
    "SPEED_OF_LIGHT",
    "DopplerParams",
    "clarke_correlation",
    "cost231_pathloss_db",
    "gauss_markov_evolve",
    "link_budget",
    "rayleigh_channel",
    "RngStream",
    "bessel_j0",
    "beta_fn",
    "ln_gamma",
    "right_pseudo_inverse",
    "Beamformer",
    "CellSideInfo",
    "icin_beamformer",
    "sinr",
    "sum_rate",
    "Codebook",
    "QuantizedDirection",
    "generate_codebook",
    "quantize",
    "rvq_sin2_samples",
    "statistical_quantize",
    "Scenario",
    "SimConfig",
    "SweepReport",
    "SweepRow",
    "build_hex_scenario",
    "load_config",
    "run_sweep",
    "run_trial",
    "user_link_params",
    "__version__",
]
