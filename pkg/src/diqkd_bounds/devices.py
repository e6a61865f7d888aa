"""Measurement devices: POVMs on bipartite states, their conditional
statistics, the partial-transpose attack, and device closeness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    TOL_PROB,
    TOL_PSD,
    DensityMatrix,
    is_ppt,
    min_eigenvalue,
    partial_transpose,
    require_hermitian,
)

# Effects of a POVM must sum to the identity within this (max-abs).
TOL_COMPLETE = 1e-10


@dataclass(frozen=True)
class Povm:
    """A measurement: Hermitian PSD effects summing to the identity.

    Effects are symmetrized and stored read-only.
    """

    effects: tuple[np.ndarray, ...]

    def __post_init__(self):
        effects = []
        side = None
        for k, e in enumerate(self.effects):
            e = require_hermitian(e, f"effect {k}")
            if side is None:
                side = e.shape[0]
            elif e.shape[0] != side:
                raise ValueError("effects act on different dimensions")
            w = min_eigenvalue(e)
            if w < -TOL_PSD:
                raise ValueError(f"effect {k} is not PSD (eigenvalue {w:.3e})")
            e.setflags(write=False)
            effects.append(e)
        if not effects:
            raise ValueError("a POVM needs at least one effect")
        dev = float(np.abs(sum(effects) - np.eye(side)).max())
        if dev > TOL_COMPLETE:
            raise ValueError(f"effects sum to identity {dev:.3e} off")
        object.__setattr__(self, "effects", tuple(effects))

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    @property
    def outcomes(self) -> int:
        return len(self.effects)

    def transposed(self) -> "Povm":
        """The POVM with every effect transposed (still a valid POVM)."""
        return Povm(tuple(e.T for e in self.effects))


@dataclass(frozen=True)
class MeasurementSet:
    """Alice's and Bob's POVM families, indexed by setting.

    All POVMs on a side must share dimension and outcome count so that
    statistics form a rectangular (x, y, a, b) table.
    """

    alice: tuple[Povm, ...]
    bob: tuple[Povm, ...]

    def __post_init__(self):
        alice = tuple(self.alice)
        bob = tuple(self.bob)
        if not alice or not bob:
            raise ValueError("each side needs at least one POVM")
        for side_name, povms in (("Alice", alice), ("Bob", bob)):
            dims = {p.dim for p in povms}
            counts = {p.outcomes for p in povms}
            if len(dims) != 1:
                raise ValueError(f"{side_name} POVMs act on different dimensions")
            if len(counts) != 1:
                raise ValueError(f"{side_name} POVMs have different outcome counts")
        object.__setattr__(self, "alice", alice)
        object.__setattr__(self, "bob", bob)

    @property
    def dim_alice(self) -> int:
        return self.alice[0].dim

    @property
    def dim_bob(self) -> int:
        return self.bob[0].dim


@dataclass(frozen=True)
class StateDevice:
    """A measurement set together with the bipartite state it measures."""

    measurements: MeasurementSet
    state: DensityMatrix

    def __post_init__(self):
        if len(self.state.dims) != 2:
            raise ValueError("device state must declare exactly two factors")
        da, db = self.state.dims
        m = self.measurements
        if m.dim_alice != da or m.dim_bob != db:
            raise ValueError(
                f"measurement dimensions ({m.dim_alice}, {m.dim_bob}) do not "
                f"match state dims ({da}, {db})"
            )


@dataclass(frozen=True)
class ConditionalDistribution:
    """Outcome table p(a, b | x, y), indexed (x, y, a, b).

    Nonnegative with each (x, y) slice summing to one.
    """

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.ndim != 4:
            raise ValueError("table must be indexed (x, y, a, b)")
        lo = float(t.min())
        if lo < -TOL_PROB:
            raise ValueError(f"negative probability {lo:.3e} in table")
        t = np.clip(t, 0.0, None)
        sums = t.sum(axis=(2, 3))
        dev = float(np.abs(sums - 1.0).max())
        if dev > TOL_PROB:
            raise ValueError(f"a setting's outcome distribution sums to 1 {dev:.3e} off")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.table.shape


def device_statistics(device: StateDevice) -> ConditionalDistribution:
    """The conditional table p(a, b | x, y) = tr[(A_a^x kron B_b^y) rho]."""
    rho = device.state.matrix
    alice = device.measurements.alice
    bob = device.measurements.bob
    table = np.empty(
        (len(alice), len(bob), alice[0].outcomes, bob[0].outcomes)
    )
    for x, pa in enumerate(alice):
        for y, pb in enumerate(bob):
            for a, ea in enumerate(pa.effects):
                for b, eb in enumerate(pb.effects):
                    table[x, y, a, b] = float(
                        np.trace(np.kron(ea, eb) @ rho).real
                    )
    return ConditionalDistribution(table)


def transpose_attack(device: StateDevice) -> StateDevice:
    """Replace (rho, Bob's POVMs) by (partial transpose of rho, transposed POVMs).

    Every p(a, b | x, y) is unchanged, so the two devices are
    indistinguishable from their statistics.  Only available when the state
    is PPT across Alice|Bob; otherwise the partial transpose is not a state
    and the attack does not exist.
    """
    ppt, witness = is_ppt(device.state, cut=1)
    if not ppt:
        raise ValueError(
            f"state is not PPT across Alice|Bob (witness eigenvalue "
            f"{witness:.3e}); the transpose attack is unavailable"
        )
    flipped = DensityMatrix(
        partial_transpose(device.state, 1), device.state.dims
    )
    bob = tuple(p.transposed() for p in device.measurements.bob)
    return StateDevice(
        MeasurementSet(device.measurements.alice, bob), flipped
    )


def distribution_distance(
    p: ConditionalDistribution, q: ConditionalDistribution
) -> float:
    """sup over settings (x, y) of the L1 distance between outcome distributions."""
    if p.shape != q.shape:
        raise ValueError(f"distribution shapes differ: {p.shape} vs {q.shape}")
    return float(np.abs(p.table - q.table).sum(axis=(2, 3)).max())


def devices_equivalent(d1: StateDevice, d2: StateDevice, eps: float) -> bool:
    """Whether the two devices produce eps-close statistics."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return distribution_distance(device_statistics(d1), device_statistics(d2)) <= eps
