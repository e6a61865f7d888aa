"""Seeded random states, measurements, and channels.

Used by the test suite and the demo scripts.  Random PPT states are built
as mixtures of pure product states (separable, hence PPT by construction);
random co-positive channels as mixtures of measure-and-prepare channels.
"""

from __future__ import annotations

import numpy as np

from .channels import ChannelChoi
from .devices import MeasurementSet, Povm, StateDevice
from .linalg import DensityMatrix, hermitian_part


def _unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng: np.random.Generator) -> DensityMatrix:
    """Full-rank random density matrix (Wishart-style)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, (dim,))


def random_product_mixture(
    dim_a: int, dim_b: int, terms: int, rng: np.random.Generator
) -> DensityMatrix:
    """Random mixture of pure product states; separable, hence always PPT."""
    weights = rng.random(terms)
    weights /= weights.sum()
    m = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for w in weights:
        v = np.kron(_unit_vector(dim_a, rng), _unit_vector(dim_b, rng))
        m += w * np.outer(v, v.conj())
    return DensityMatrix(m, (dim_a, dim_b))


def random_povm(dim: int, outcomes: int, rng: np.random.Generator) -> Povm:
    """Random POVM: Wishart effects normalized by the inverse square root of their sum."""
    gs = []
    for _ in range(outcomes):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        gs.append(g @ g.conj().T)
    total = hermitian_part(sum(gs))
    w, v = np.linalg.eigh(total)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return Povm(tuple(inv_sqrt @ g @ inv_sqrt for g in gs))


def random_measurement_set(
    dim_a: int,
    dim_b: int,
    rng: np.random.Generator,
    settings: tuple[int, int] = (2, 2),
    outcomes: tuple[int, int] = (2, 2),
) -> MeasurementSet:
    alice = tuple(random_povm(dim_a, outcomes[0], rng) for _ in range(settings[0]))
    bob = tuple(random_povm(dim_b, outcomes[1], rng) for _ in range(settings[1]))
    return MeasurementSet(alice, bob)


def random_ppt_device(
    dim_a: int, dim_b: int, rng: np.random.Generator, terms: int = 4
) -> StateDevice:
    """Random device on a separable (hence PPT) state with random POVMs."""
    return StateDevice(
        random_measurement_set(dim_a, dim_b, rng),
        random_product_mixture(dim_a, dim_b, terms, rng),
    )


def random_measure_prepare_channel(
    d_in: int, d_out: int, terms: int, rng: np.random.Generator
) -> ChannelChoi:
    """Random measure-and-prepare channel; completely positive and co-positive.

    The channel measures a random POVM and prepares a random state per
    outcome, so its Choi matrix is a sum of product terms and stays PSD
    under output transposition.
    """
    povm = random_povm(d_in, terms, rng)
    j = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for effect in povm.effects:
        prep = random_density(d_out, rng).matrix
        j += np.kron(effect.T, prep)
    return ChannelChoi(j / d_in, d_in, d_out)


def random_kraus_channel(
    d_in: int, d_out: int, terms: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Kraus operators of a random channel, from a Haar-style random isometry."""
    if d_out * terms < d_in:
        raise ValueError("need d_out * terms >= d_in for an isometry")
    g = rng.standard_normal((d_out * terms, d_in)) + 1j * rng.standard_normal(
        (d_out * terms, d_in)
    )
    q, _ = np.linalg.qr(g)
    return [q[k * d_out : (k + 1) * d_out, :] for k in range(terms)]
