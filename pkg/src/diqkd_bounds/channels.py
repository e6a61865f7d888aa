"""Channels in the Choi representation: complete positivity and complete
co-positivity tests, channel application, channel-device statistics, and the
output-transpose attack."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    TOL_PSD,
    DensityMatrix,
    _permuted_matrix,
    min_eigenvalue,
    require_hermitian,
)
from .devices import (
    ConditionalDistribution,
    MeasurementSet,
    StateDevice,
    device_statistics,
)

# Kraus completeness and trace preservation are checked within this (max-abs).
TOL_TP = 1e-10


@dataclass(frozen=True)
class ChannelChoi:
    """Normalized Choi matrix of a channel, factors ordered (input, output).

    The Choi matrix is the channel applied to half of the normalized
    maximally entangled state, so it has unit trace, it is PSD exactly when
    the channel is completely positive, and trace preservation reads
    tr_out(choi) = I/d_in.
    """

    choi: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        d_i, d_o = int(self.d_in), int(self.d_out)
        if d_i < 1 or d_o < 1:
            raise ValueError("channel dimensions must be positive")
        j = require_hermitian(self.choi, "Choi matrix")
        if j.shape[0] != d_i * d_o:
            raise ValueError(
                f"Choi side {j.shape[0]} does not match d_in*d_out = {d_i * d_o}"
            )
        w = min_eigenvalue(j)
        if w < -TOL_PSD:
            raise ValueError(
                f"Choi matrix is not PSD (eigenvalue {w:.3e}); map is not "
                "completely positive"
            )
        marginal = np.trace(j.reshape(d_i, d_o, d_i, d_o), axis1=1, axis2=3)
        dev = float(np.abs(marginal - np.eye(d_i) / d_i).max())
        if dev > TOL_TP:
            raise ValueError(f"channel is not trace-preserving ({dev:.3e} off)")
        j.setflags(write=False)
        object.__setattr__(self, "choi", j)
        object.__setattr__(self, "d_in", d_i)
        object.__setattr__(self, "d_out", d_o)


def choi_from_kraus(kraus) -> ChannelChoi:
    """Choi matrix of the channel with the given Kraus operators.

    Operators are (d_out, d_in) matrices with sum K^dag K = I.
    """
    ks = [np.asarray(k, dtype=complex) for k in kraus]
    if not ks:
        raise ValueError("need at least one Kraus operator")
    d_out, d_in = ks[0].shape
    if any(k.shape != (d_out, d_in) for k in ks):
        raise ValueError("Kraus operators have inconsistent shapes")
    comp = sum(k.conj().T @ k for k in ks)
    dev = float(np.abs(comp - np.eye(d_in)).max())
    if dev > TOL_TP:
        raise ValueError(f"Kraus operators sum to identity {dev:.3e} off")
    j = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for k in ks:
        w = k.T.reshape(-1)  # w[(i, o)] = K[o, i]
        j += np.outer(w, w.conj())
    return ChannelChoi(j / d_in, d_in, d_out)


def identity_channel(d: int) -> ChannelChoi:
    """The identity channel on a d-dimensional system."""
    return choi_from_kraus([np.eye(d)])


def completely_depolarizing_channel(d_in: int, d_out: int | None = None) -> ChannelChoi:
    """The channel sending every state to the maximally mixed output."""
    d_out = d_in if d_out is None else int(d_out)
    j = np.eye(d_in * d_out, dtype=complex) / (d_in * d_out)
    return ChannelChoi(j, d_in, d_out)


def apply_channel(
    channel: ChannelChoi, rho: DensityMatrix, subsystem: int
) -> DensityMatrix:
    """Apply the channel to one tensor factor of ``rho`` via Choi contraction."""
    dims = rho.dims
    n = len(dims)
    if not 0 <= subsystem < n:
        raise ValueError(f"subsystem index {subsystem} out of range")
    if dims[subsystem] != channel.d_in:
        raise ValueError(
            f"subsystem dimension {dims[subsystem]} does not match channel "
            f"input {channel.d_in}"
        )
    order = [i for i in range(n) if i != subsystem] + [subsystem]
    moved = _permuted_matrix(rho.matrix, dims, order)
    rest = moved.shape[0] // channel.d_in
    t = moved.reshape(rest, channel.d_in, rest, channel.d_in)
    j4 = channel.choi.reshape(
        channel.d_in, channel.d_out, channel.d_in, channel.d_out
    )
    out = np.einsum("aibj,iojp->aobp", t, j4) * channel.d_in
    out_m = out.reshape(rest * channel.d_out, rest * channel.d_out)
    moved_dims = [dims[i] for i in order[:-1]] + [channel.d_out]
    inverse = np.argsort(order)
    final = _permuted_matrix(out_m, moved_dims, inverse)
    final_dims = list(dims)
    final_dims[subsystem] = channel.d_out
    return DensityMatrix(final, tuple(final_dims))


def output_transposed_choi(channel: ChannelChoi) -> np.ndarray:
    """Choi matrix of (transpose after channel): partial transpose on the output factor."""
    d_i, d_o = channel.d_in, channel.d_out
    t = channel.choi.reshape(d_i, d_o, d_i, d_o).transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(channel.choi.shape)


def is_completely_copositive(channel: ChannelChoi) -> tuple[bool, float]:
    """Whether composing the channel with a transpose still gives a channel.

    Tests PSD-ness of the Choi matrix partially transposed on the output
    side; the witness is its smallest eigenvalue.
    """
    witness = min_eigenvalue(output_transposed_choi(channel))
    return witness >= -TOL_PSD, witness


def channel_device_statistics(
    measurements: MeasurementSet, rho: DensityMatrix, channel: ChannelChoi
) -> ConditionalDistribution:
    """Statistics of a device that sends half of ``rho`` through the channel.

    p(a, b | x, y) = tr[(id kron channel)(rho) (A_a^x kron B_b^y)]; Bob's
    effects act on the channel output.
    """
    out = apply_channel(channel, rho, subsystem=1)
    return device_statistics(StateDevice(measurements, out))


def transpose_channel_attack(
    measurements: MeasurementSet, rho: DensityMatrix, channel: ChannelChoi
) -> tuple[MeasurementSet, DensityMatrix, ChannelChoi]:
    """Turn a device for the channel into one for the output-transposed channel.

    Returns (Alice POVMs unchanged + Bob POVMs transposed, the same input
    state, the Choi matrix of transpose-after-channel).  The statistics are
    unchanged.  Only available when the channel is completely co-positive,
    otherwise the transposed map is not a channel.
    """
    ccp, witness = is_completely_copositive(channel)
    if not ccp:
        raise ValueError(
            f"channel is not completely co-positive (witness eigenvalue "
            f"{witness:.3e}); the transpose attack is unavailable"
        )
    flipped = ChannelChoi(
        output_transposed_choi(channel), channel.d_in, channel.d_out
    )
    bob = tuple(p.transposed() for p in measurements.bob)
    return MeasurementSet(measurements.alice, bob), rho, flipped
