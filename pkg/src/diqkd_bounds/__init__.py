"""Key-rate bounds and partial-transpose attacks for device-independent QKD.

A dense numpy library for the key--shield state family, privacy squeezing
and advantage distillation, the advantage-distillation Devetak-Winter lower
bound, the 2*beta upper bound for partially transposed block states, and
statistics-preserving transpose attacks on state and channel devices.
"""

from .linalg import (
    DEFAULT_DENSE_LIMIT,
    DensityMatrix,
    binary_entropy,
    is_ppt,
    min_eigenvalue,
    partial_transpose,
    permute_subsystems,
    shannon_entropy,
    trace_norm,
)
from .states import (
    BellParams,
    BlockBellState,
    advantage_distill_block,
    bell_power_params,
    default_noise_weight,
    flat_unitary,
    fourier_unitary,
    hadamard_power_unitary,
    make_bell_diagonal,
    make_rho_d,
    privacy_squeeze,
    shield_operators,
)
from .bounds import (
    BoundReport,
    RegionPoint,
    DecompositionReport,
    gap_condition,
    k_ad_dw,
    k_ad_dw_unsimplified,
    k_upper_ppt_block,
    region_sweep,
    rho_d_bounds,
    threshold_search,
    verify_transposed_decomposition,
)
from .devices import (
    ConditionalDistribution,
    MeasurementSet,
    Povm,
    StateDevice,
    device_statistics,
    devices_equivalent,
    distribution_distance,
    transpose_attack,
)
from .channels import (
    ChannelChoi,
    apply_channel,
    channel_device_statistics,
    choi_from_kraus,
    completely_depolarizing_channel,
    identity_channel,
    is_completely_copositive,
    output_transposed_choi,
    transpose_channel_attack,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DENSE_LIMIT",
    "DensityMatrix",
    "binary_entropy",
    "is_ppt",
    "min_eigenvalue",
    "partial_transpose",
    "permute_subsystems",
    "shannon_entropy",
    "trace_norm",
    "BellParams",
    "BlockBellState",
    "advantage_distill_block",
    "bell_power_params",
    "default_noise_weight",
    "flat_unitary",
    "fourier_unitary",
    "hadamard_power_unitary",
    "make_bell_diagonal",
    "make_rho_d",
    "privacy_squeeze",
    "shield_operators",
    "BoundReport",
    "RegionPoint",
    "DecompositionReport",
    "gap_condition",
    "k_ad_dw",
    "k_ad_dw_unsimplified",
    "k_upper_ppt_block",
    "region_sweep",
    "rho_d_bounds",
    "threshold_search",
    "verify_transposed_decomposition",
    "ConditionalDistribution",
    "MeasurementSet",
    "Povm",
    "StateDevice",
    "device_statistics",
    "devices_equivalent",
    "distribution_distance",
    "transpose_attack",
    "ChannelChoi",
    "apply_channel",
    "channel_device_statistics",
    "choi_from_kraus",
    "completely_depolarizing_channel",
    "identity_channel",
    "is_completely_copositive",
    "output_transposed_choi",
    "transpose_channel_attack",
]
