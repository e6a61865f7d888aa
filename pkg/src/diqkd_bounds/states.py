"""State families with a key-qubit pair and shield qudits, plus the two
structural maps (privacy squeezing, advantage distillation) relating them
to two-qubit Bell-diagonal states."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_DENSE_LIMIT,
    TOL_PROB,
    DensityMatrix,
    is_ppt,
    permute_subsystems,
    trace_norm,
)

# Block trace norms of a valid state must be pairwise symmetric within this.
TOL_NORM = 1e-10

# The assembled 4d^2 matrix has factors (key_A, key_B, shield_A, shield_B);
# Alice holds factors {0, 2}, Bob holds {1, 3}, so the PPT cut transposes
# the key_B qubit jointly with the shield_B qudit.
BOB_CUT = (1, 3)

UNITARY_KINDS = ("fourier", "hadamard")


@dataclass(frozen=True)
class BellParams:
    """Bell-diagonal parameters (alpha, beta, gamma, delta).

    Normalized so that 2*alpha + 2*beta = 1.  The associated 4x4 matrix has
    eigenvalues alpha +- gamma and beta +- delta, so gamma <= alpha and
    delta <= beta are required for positivity.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            v = float(getattr(self, name))
            if v < -TOL_PROB:
                raise ValueError(f"{name} = {v!r} is negative")
            object.__setattr__(self, name, max(v, 0.0))
        dev = abs(2 * self.alpha + 2 * self.beta - 1.0)
        if dev > TOL_PROB:
            raise ValueError(f"2*alpha + 2*beta differs from one by {dev:.3e}")
        if self.gamma > self.alpha + TOL_PROB:
            raise ValueError("gamma exceeds alpha; matrix would not be PSD")
        if self.delta > self.beta + TOL_PROB:
            raise ValueError("delta exceeds beta; matrix would not be PSD")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)


def make_bell_diagonal(params: BellParams) -> DensityMatrix:
    """Two-qubit Bell-diagonal state for the given parameters.

    Diagonal (alpha, beta, beta, alpha), corners gamma, inner off-diagonal
    delta, all divided by 2*alpha + 2*beta.
    """
    a, b, g, d = params.as_tuple()
    m = np.array(
        [
            [a, 0, 0, g],
            [0, b, d, 0],
            [0, d, b, 0],
            [g, 0, 0, a],
        ],
        dtype=complex,
    ) / (2 * a + 2 * b)
    return DensityMatrix(m, (2, 2))


def fourier_unitary(d: int) -> np.ndarray:
    """d x d discrete Fourier matrix; all entries have modulus 1/sqrt(d)."""
    if d < 1:
        raise ValueError("dimension must be positive")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / math.sqrt(d)


def hadamard_power_unitary(d: int) -> np.ndarray:
    """Tensor power of the 2x2 Hadamard matrix; d must be a power of two."""
    if d < 1 or d & (d - 1):
        raise ValueError(f"Hadamard tensor power needs d a power of two, got {d}")
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    u = np.array([[1.0]])
    while u.shape[0] < d:
        u = np.kron(u, h)
    return u.astype(complex)


def flat_unitary(kind: str, d: int) -> np.ndarray:
    """Unitary with all entries of modulus 1/sqrt(d), by kind."""
    if kind == "fourier":
        return fourier_unitary(d)
    if kind == "hadamard":
        return hadamard_power_unitary(d)
    raise ValueError(f"unknown unitary kind {kind!r}; expected one of {UNITARY_KINDS}")


@dataclass(frozen=True)
class BlockBellState:
    """Key-qubit pair with a d-dimensional shield on each side, in block form.

    In the key-pair basis (00, 01, 10, 11) the density matrix is

        [[A1,    0,   0,  C ],
         [ 0,   B1,   D,  0 ],
         [ 0,  D^+,  B2,  0 ],
         [C^+,   0,   0,  A2]]

    with every block acting on the shield pair (A'B', a d*d-dimensional
    space with B' the inner/faster index).  Weights are folded into the
    blocks: alpha = ||A1||_1 = ||A2||_1 and beta = ||B1||_1 = ||B2||_1 with
    2*alpha + 2*beta = 1.  D defaults to zero.

    The assembled matrix is ordered (key_A, key_B, shield_A, shield_B)
    with dims (2, 2, d, d); Alice|Bob is the {0, 2} | {1, 3} split.
    """

    shield_dim: int
    A1: np.ndarray
    A2: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    C: np.ndarray
    D: np.ndarray | None = None
    density: DensityMatrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        d = int(self.shield_dim)
        if d < 1:
            raise ValueError("shield dimension must be positive")
        object.__setattr__(self, "shield_dim", d)
        dd = d * d
        blocks = {}
        for name in ("A1", "A2", "B1", "B2", "C", "D"):
            blk = getattr(self, name)
            if blk is None and name == "D":
                blk = np.zeros((dd, dd), dtype=complex)
            blk = np.asarray(blk, dtype=complex)
            if blk.shape != (dd, dd):
                raise ValueError(f"block {name} must have shape ({dd}, {dd})")
            blk = blk.copy()
            blk.setflags(write=False)
            object.__setattr__(self, name, blk)
            blocks[name] = blk
        na1, na2 = trace_norm(blocks["A1"]), trace_norm(blocks["A2"])
        nb1, nb2 = trace_norm(blocks["B1"]), trace_norm(blocks["B2"])
        if abs(na1 - na2) > TOL_NORM or abs(nb1 - nb2) > TOL_NORM:
            raise ValueError("A or B block trace norms are asymmetric")
        if abs(na1 + na2 + nb1 + nb2 - 1.0) > TOL_NORM:
            raise ValueError("block trace norms do not sum to one")
        object.__setattr__(self, "density", self._assemble())

    def _assemble(self) -> DensityMatrix:
        d = self.shield_dim
        dd = d * d
        m = np.zeros((4 * dd, 4 * dd), dtype=complex)
        grid = {
            (0, 0): self.A1,
            (1, 1): self.B1,
            (2, 2): self.B2,
            (3, 3): self.A2,
            (0, 3): self.C,
            (3, 0): self.C.conj().T,
            (1, 2): self.D,
            (2, 1): self.D.conj().T,
        }
        for (i, j), blk in grid.items():
            m[i * dd : (i + 1) * dd, j * dd : (j + 1) * dd] = blk
        return DensityMatrix(m, (2, 2, d, d))

    def is_ppt(self) -> tuple[bool, float]:
        """PPT verdict and witness eigenvalue across the Alice|Bob cut."""
        return is_ppt(self.density, BOB_CUT)

    def to_bipartite(self) -> DensityMatrix:
        """Regroup factors to (Alice, Bob) = (key_A shield_A, key_B shield_B).

        Returns the same state with dims (2d, 2d), the layout expected by
        measurement devices.
        """
        grouped = permute_subsystems(self.density, (0, 2, 1, 3))
        side = 2 * self.shield_dim
        return DensityMatrix(grouped.matrix, (side, side))


def shield_operators(d: int, unitary: str = "fourier") -> tuple[np.ndarray, np.ndarray]:
    """The shield-pair operators (X, Y) of the key--shield family.

    X = sum_ij u_ij |ij><ji| / (d sqrt(d)) for a flat unitary u, and
    Y = sum_i |ii><ii| / d.  Both have unit trace norm, and X X^dag is
    1/d^4 times the identity.
    """
    u = flat_unitary(unitary, d)
    dd = d * d
    x = np.zeros((dd, dd), dtype=complex)
    ij = np.repeat(np.arange(d), d) * d + np.tile(np.arange(d), d)
    ji = np.tile(np.arange(d), d) * d + np.repeat(np.arange(d), d)
    x[ij, ji] = u.ravel() / (d * math.sqrt(d))
    y = np.zeros((dd, dd), dtype=complex)
    idx = np.arange(d) * (d + 1)
    y[idx, idx] = 1.0 / d
    return x, y


def default_noise_weight(d: int) -> float:
    """p = 1/(sqrt(d) + 1), the largest diagonal-noise weight keeping the family PPT."""
    return 1.0 / (math.sqrt(d) + 1.0)


def make_rho_d(
    d: int,
    unitary: str = "fourier",
    p: float | None = None,
    dense_limit: int = DEFAULT_DENSE_LIMIT,
) -> BlockBellState:
    """Key--shield state with shield dimension d per side.

    Blocks: A1 = A2 = (1-p) sqrt(X X^dag)/2, B1 = B2 = p Y/2,
    C = (1-p) X/2, D = 0, with (X, Y) from :func:`shield_operators`.
    The squeezed parameters are ((1-p)/2, p/2, (1-p)/2, 0).  When ``p`` is
    omitted it defaults to 1/(sqrt(d)+1).
    """
    d = int(d)
    if d < 1:
        raise ValueError("shield dimension must be positive")
    side = 4 * d * d
    if side > dense_limit:
        raise ValueError(
            f"matrix side {side} exceeds the dense limit {dense_limit}; "
            "use the closed-form bounds for large d"
        )
    if p is None:
        p = default_noise_weight(d)
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise weight p = {p!r} outside [0, 1]")
    x, y = shield_operators(d, unitary)
    # sqrt(X X^dag) via eigendecomposition; for these X it equals I/d^2.
    w, v = np.linalg.eigh(x @ x.conj().T)
    sqrt_xx = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    a_block = 0.5 * (1.0 - p) * sqrt_xx
    b_block = 0.5 * p * y
    return BlockBellState(
        shield_dim=d,
        A1=a_block,
        A2=a_block,
        B1=b_block,
        B2=b_block,
        C=0.5 * (1.0 - p) * x,
    )


def privacy_squeeze(state) -> BellParams:
    """Collapse every block to its trace norm.

    Yields the two-qubit Bell-diagonal parameters (alpha, beta, gamma,
    delta) = (||A1||_1, ||B1||_1, ||C||_1, ||D||_1); the squeezed state has
    the same ccq reduction, hence no less distillable key.  Accepts a
    BlockBellState or any object exposing the six block attributes.
    """
    na1, na2 = trace_norm(state.A1), trace_norm(state.A2)
    nb1, nb2 = trace_norm(state.B1), trace_norm(state.B2)
    if abs(na1 - na2) > TOL_NORM:
        raise ValueError(f"||A1||_1 and ||A2||_1 differ by {abs(na1 - na2):.3e}")
    if abs(nb1 - nb2) > TOL_NORM:
        raise ValueError(f"||B1||_1 and ||B2||_1 differ by {abs(nb1 - nb2):.3e}")
    return BellParams(
        alpha=(na1 + na2) / 2,
        beta=(nb1 + nb2) / 2,
        gamma=trace_norm(state.C),
        delta=trace_norm(state.D),
    )


def _tensor_power_grouped(block: np.ndarray, d: int, m: int) -> np.ndarray:
    """m-fold tensor power of a shield-pair block, regrouped by side.

    The plain kron power carries the shield factors interleaved as
    (A'_1 B'_1 ... A'_m B'_m); the result is re-indexed to the grouped
    order (A'_1..A'_m, B'_1..B'_m) so that the output block again acts on
    a (shield_A, shield_B) pair, now of dimension d^m each.
    """
    out = block
    for _ in range(m - 1):
        out = np.kron(out, block)
    row = list(range(0, 2 * m, 2)) + list(range(1, 2 * m, 2))
    axes = row + [i + 2 * m for i in row]
    t = out.reshape((d,) * (4 * m)).transpose(axes)
    side = d ** (2 * m)
    return np.ascontiguousarray(t).reshape(side, side)


def advantage_distill_block(
    state: BlockBellState, m: int, dense_limit: int = DEFAULT_DENSE_LIMIT
) -> BlockBellState:
    """m-round advantage distillation acting directly on the key qubits.

    Every block is replaced by its m-fold tensor power and the state is
    renormalized to unit trace; the shield dimension becomes d^m per side.
    """
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return state
    d = state.shield_dim
    side = 4 * d ** (2 * m)
    if side > dense_limit:
        raise ValueError(
            f"matrix side {side} exceeds the dense limit {dense_limit}"
        )
    pw = {
        name: _tensor_power_grouped(getattr(state, name), d, m)
        for name in ("A1", "A2", "B1", "B2", "C", "D")
    }
    z = float(
        sum(np.trace(pw[name]).real for name in ("A1", "A2", "B1", "B2"))
    )
    return BlockBellState(
        shield_dim=d**m,
        A1=pw["A1"] / z,
        A2=pw["A2"] / z,
        B1=pw["B1"] / z,
        B2=pw["B2"] / z,
        C=pw["C"] / z,
        D=pw["D"] / z,
    )


def bell_power_params(params: BellParams, m: int) -> BellParams:
    """Parameters of the m-round distilled Bell-diagonal state.

    (alpha, beta, gamma, delta) -> (alpha^m, beta^m, gamma^m, delta^m)
    renormalized by 2 alpha^m + 2 beta^m.  Values are rescaled by their
    maximum before powering so large m cannot underflow everything at once.
    """
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    vals = np.array(params.as_tuple(), dtype=float)
    scaled = (vals / vals.max()) ** m
    z = 2 * (scaled[0] + scaled[1])
    return BellParams(*(scaled / z))
