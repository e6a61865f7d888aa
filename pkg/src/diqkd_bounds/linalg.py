"""Dense complex linear algebra for key-rate bound computations.

Conventions fixed here once for the whole package: entropies are in bits
(log base 2) with 0*log(0) = 0, Hermitian inputs are symmetrized as
(M + M^dag)/2 before any eigensolve, and all tolerances are absolute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Absolute tolerances; double-precision eigensolvers on sides <= 4096 keep
# backward errors well below these.
TOL_HERM = 1e-10
TOL_TRACE = 1e-10
TOL_PSD = 1e-9
TOL_PROB = 1e-10

# Dense constructors refuse matrices beyond this side unless overridden.
DEFAULT_DENSE_LIMIT = 4096

LOG2 = np.log(2.0)


def hermitian_part(m: np.ndarray) -> np.ndarray:
    """Return (M + M^dag)/2."""
    return (m + m.conj().T) / 2


def require_hermitian(m: np.ndarray, label: str = "matrix") -> np.ndarray:
    """Symmetrize ``m`` if it is Hermitian within TOL_HERM, else raise."""
    m = np.asarray(m, dtype=complex)
    dev = float(np.abs(m - m.conj().T).max())
    if dev > TOL_HERM:
        raise ValueError(f"{label} is not Hermitian (deviation {dev:.3e})")
    return hermitian_part(m)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD trace-one matrix with declared subsystem dimensions.

    ``dims`` lists the tensor factors in row-major (kron) order; their
    product must equal the matrix side.  The stored matrix is the Hermitian
    average of the input and is marked read-only, so instances can be shared
    freely across threads.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"invalid subsystem dimensions {dims}")
        if int(np.prod(dims)) != m.shape[0]:
            raise ValueError(
                f"dims {dims} do not factor the matrix side {m.shape[0]}"
            )
        m = require_hermitian(m, "density matrix")
        tr_dev = abs(float(np.trace(m).real) - 1.0)
        if tr_dev > TOL_TRACE:
            raise ValueError(f"trace differs from one by {tr_dev:.3e}")
        lo = float(np.linalg.eigvalsh(m)[0])
        if lo < -TOL_PSD:
            raise ValueError(f"matrix is not PSD (minimum eigenvalue {lo:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def side(self) -> int:
        return self.matrix.shape[0]


def _subsystem_tuple(subsystems, n: int) -> tuple[int, ...]:
    if isinstance(subsystems, (int, np.integer)):
        subsystems = (int(subsystems),)
    subs = tuple(sorted({int(s) for s in subsystems}))
    if not subs:
        raise ValueError("no subsystem given")
    for s in subs:
        if not 0 <= s < n:
            raise ValueError(f"subsystem index {s} out of range for {n} factors")
    return subs


def _permuted_matrix(matrix: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors of a square matrix; order[i] = old index of new factor i."""
    n = len(dims)
    axes = list(order) + [p + n for p in order]
    t = matrix.reshape(tuple(dims) * 2).transpose(axes)
    return np.ascontiguousarray(t).reshape(matrix.shape)


def partial_transpose(rho: DensityMatrix, subsystems) -> np.ndarray:
    """Transpose the chosen tensor factor(s) of ``rho``.

    A pure index permutation: applying it twice returns the entry array
    bit-for-bit, and Hermiticity and trace are preserved.  ``subsystems``
    is a factor index or an iterable of factor indices (a joint cut, e.g.
    a key qubit together with its shield, is transposed by listing both).
    """
    dims = rho.dims
    n = len(dims)
    subs = _subsystem_tuple(subsystems, n)
    axes = list(range(2 * n))
    for s in subs:
        axes[s], axes[s + n] = axes[s + n], axes[s]
    t = rho.matrix.reshape(dims * 2).transpose(axes)
    return np.ascontiguousarray(t).reshape(rho.matrix.shape)


def permute_subsystems(rho: DensityMatrix, order: Sequence[int]) -> DensityMatrix:
    """Reorder the tensor factors of ``rho``; order[i] is the old position of new factor i."""
    if sorted(order) != list(range(len(rho.dims))):
        raise ValueError("order must be a permutation of the subsystem indices")
    m = _permuted_matrix(rho.matrix, rho.dims, order)
    return DensityMatrix(m, tuple(rho.dims[p] for p in order))


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values; equals sum |eigenvalues| for Hermitian input."""
    m = np.asarray(m, dtype=complex)
    return float(np.linalg.svd(m, compute_uv=False).sum())


def min_eigenvalue(m: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix (symmetrized before solving)."""
    m = require_hermitian(m)
    return float(np.linalg.eigvalsh(m)[0])


def is_ppt(rho: DensityMatrix, cut) -> tuple[bool, float]:
    """Positive-partial-transpose test across the given factor(s).

    Returns (verdict, witness) where the witness is the smallest eigenvalue
    of the partially transposed matrix; the verdict is True when it is
    >= -TOL_PSD.
    """
    witness = min_eigenvalue(partial_transpose(rho, cut))
    return witness >= -TOL_PSD, witness


def probability_vector(weights) -> np.ndarray:
    """Validate and return a probability vector (clipping -TOL_PROB dust to zero)."""
    p = np.asarray(weights, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("empty probability vector")
    lo = float(p.min())
    if lo < -TOL_PROB:
        raise ValueError(f"negative weight {lo:.3e} in probability vector")
    dev = abs(float(p.sum()) - 1.0)
    if dev > TOL_PROB:
        raise ValueError(f"weights sum to 1 {dev:.3e} off")
    return np.clip(p, 0.0, None)


def shannon_entropy(weights) -> float:
    """Shannon entropy in bits, -sum p_i log2 p_i, with 0*log(0) = 0."""
    p = probability_vector(weights)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0  # avoid -0.0


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x) on [0, 1], h(0) = h(1) = 0."""
    x = float(x)
    if not -TOL_PROB <= x <= 1.0 + TOL_PROB:
        raise ValueError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))
