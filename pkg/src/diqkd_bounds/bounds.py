"""Key-rate bound formulas: the advantage-distillation Devetak-Winter lower
bound, the 2*beta upper bound for partially transposed block states, the
closed-form bounds of the key--shield family, the gap condition, and the
threshold search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import (
    DensityMatrix,
    binary_entropy,
    min_eigenvalue,
    partial_transpose,
    shannon_entropy,
    trace_norm,
)
from .states import BOB_CUT, BellParams, BlockBellState

# Strict-inequality gap claims are reported only beyond this margin; points
# within it are treated as boundary (gap not established).
TOL_GAP = 1e-9

# A D block (or delta) above this is outside the 2*beta bound's shape.
TOL_BLOCK_ZERO = 1e-10


@dataclass(frozen=True)
class BoundReport:
    """Lower/upper key-rate pair in bits per copy; the gap is lower - upper."""

    lower: float
    upper: float
    gap: float = field(init=False)
    gap_established: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "gap", self.lower - self.upper)
        object.__setattr__(self, "gap_established", self.gap > TOL_GAP)


@dataclass(frozen=True)
class RegionPoint:
    """One evaluation of the gap condition at (a, alpha).

    in_gap is True when entropy_value < threshold_value - TOL_GAP with
    threshold_value = 2*alpha.
    """

    a: float
    alpha: float
    entropy_value: float
    threshold_value: float
    in_gap: bool


def _params_tuple(params) -> tuple[float, float, float, float]:
    """Unpack BellParams or a raw (alpha, beta, gamma, delta) sequence.

    Raw tuples need not be normalized (the bound formulas are invariant
    under a positive rescaling) but must be nonnegative with gamma <= alpha
    and delta <= beta.
    """
    if isinstance(params, BellParams):
        return params.as_tuple()
    vals = tuple(float(v) for v in params)
    if len(vals) != 4:
        raise ValueError("expected (alpha, beta, gamma, delta)")
    a, b, g, d = vals
    scale = max(a, b, g, d)
    if scale <= 0 or min(vals) < -1e-12 * scale:
        raise ValueError("parameters must be nonnegative with alpha + beta > 0")
    slack = 1e-12 * scale
    if g > a + slack or d > b + slack:
        raise ValueError("need gamma <= alpha and delta <= beta")
    return (max(a, 0.0), max(b, 0.0), max(g, 0.0), max(d, 0.0))


def k_ad_dw(params, m: int = 1) -> float:
    """Advantage-distillation Devetak-Winter key-rate lower bound, in bits.

    1 - H((a^m + g^m, a^m - g^m, b^m + d^m, b^m - d^m) / (2 a^m + 2 b^m)).
    Scale-invariant in the parameters; the parameters are rescaled by their
    maximum before powering for numerical stability.  May be negative, in
    which case the formula guarantees no key.
    """
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    a, b, g, d = _params_tuple(params)
    scale = max(a, b, g, d)
    a, b, g, d = a / scale, b / scale, g / scale, d / scale
    am, bm, gm, dm = a**m, b**m, g**m, d**m
    weights = np.array([am + gm, am - gm, bm + dm, bm - dm])
    weights = np.clip(weights, 0.0, None) / (2 * am + 2 * bm)
    return 1.0 - shannon_entropy(weights)


def k_ad_dw_unsimplified(params, m: int = 1) -> float:
    """The same lower bound in its epsilon / lambda_eq / lambda_dif form.

    1 - h(eps) - (1 - eps) h((1 - lambda_eq^m)/2) - eps h((1 - lambda_dif^m)/2)
    with eps = beta^m / (alpha^m + beta^m), lambda_eq = gamma/alpha and
    lambda_dif = delta/beta.  Kept deliberately independent of
    :func:`k_ad_dw` as a cross-check; requires alpha > 0 (for beta = 0 the
    eps branch vanishes and lambda_dif is irrelevant).
    """
    m = int(m)
    if m < 1:
        raise ValueError("m must be a positive integer")
    a, b, g, d = _params_tuple(params)
    if a <= 0:
        raise ValueError("the unsimplified form needs alpha > 0")
    scale = max(a, b)
    eps = (b / scale) ** m / ((a / scale) ** m + (b / scale) ** m)
    lam_eq = g / a
    value = 1.0 - binary_entropy(eps)
    value -= (1.0 - eps) * binary_entropy((1.0 - lam_eq**m) / 2)
    if b > 0:
        lam_dif = d / b
        value -= eps * binary_entropy((1.0 - lam_dif**m) / 2)
    return value


def k_upper_ppt_block(state) -> float:
    """Upper bound 2*beta on the key of the partially transposed state.

    Applies to block Bell-diagonal states with separable A/B blocks and a
    vanishing D block; separability of the blocks is the caller's
    hypothesis and is not verified.  Accepts a BlockBellState, BellParams,
    or a raw parameter tuple.
    """
    if isinstance(state, BlockBellState):
        if trace_norm(state.D) > TOL_BLOCK_ZERO:
            raise ValueError("the 2*beta bound needs a vanishing D block")
        return trace_norm(state.B1) + trace_norm(state.B2)
    a, b, g, d = _params_tuple(state)
    if d > TOL_BLOCK_ZERO * max(a, b, 1.0):
        raise ValueError("the 2*beta bound needs delta = 0")
    return 2 * b / (2 * a + 2 * b)


@dataclass(frozen=True)
class DecompositionReport:
    """Numerical check of the decomposition of a partially transposed block state.

    The partial transpose of a PPT block Bell-diagonal state (D = 0) splits
    as 2*alpha * corr + 2*beta * acorr, with corr the key-correlated
    separable part built from the A blocks and acorr the key-anticorrelated
    part built from the B and C blocks.  Residuals are max-abs deviations
    between the directly transposed state and the reconstruction: over the
    corr support, over the acorr support, and over the whole matrix.
    """

    alpha: float
    beta: float
    ppt_witness: float
    corr_residual: float
    acorr_residual: float
    total_residual: float
    corr_min_eigenvalue: float
    acorr_min_eigenvalue: float
    corr_trace: float
    acorr_trace: float

    @property
    def max_residual(self) -> float:
        return max(self.corr_residual, self.acorr_residual, self.total_residual)


def _shield_partial_transpose(block: np.ndarray, d: int) -> np.ndarray:
    """Transpose the B' factor of a shield-pair block (dims d x d, B' inner)."""
    t = block.reshape(d, d, d, d).transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t).reshape(d * d, d * d)


def verify_transposed_decomposition(state: BlockBellState) -> DecompositionReport:
    """Verify the convex decomposition of the partially transposed state.

    Builds corr and acorr from the blocks of ``state`` (independently of the
    full-matrix partial transpose), checks both are valid states, and
    reports the reconstruction residuals against the directly transposed
    density matrix.  Raises when the state is not PPT (the summands would
    not be states) or carries a nonzero D block.
    """
    d = state.shield_dim
    dd = d * d
    if trace_norm(state.D) > TOL_BLOCK_ZERO:
        raise ValueError("decomposition is stated for a vanishing D block")
    alpha = (trace_norm(state.A1) + trace_norm(state.A2)) / 2
    beta = (trace_norm(state.B1) + trace_norm(state.B2)) / 2
    ppt, witness = state.is_ppt()
    if not ppt:
        raise ValueError(
            f"state is not PPT (witness eigenvalue {witness:.3e}); "
            "the decomposition summands would not be states"
        )

    rho_g = partial_transpose(state.density, BOB_CUT)
    grid = rho_g.reshape(4, dd, 4, dd)

    def summand(positions: dict[tuple[int, int], np.ndarray], weight: float):
        m = np.zeros_like(rho_g)
        for (i, j), blk in positions.items():
            m[i * dd : (i + 1) * dd, j * dd : (j + 1) * dd] = blk
        if weight <= TOL_BLOCK_ZERO:
            # zero-weight summand: reported with zero trace, not a state
            zero = np.zeros_like(rho_g)
            residual = max(
                float(np.abs(grid[i, :, j, :]).max()) for (i, j) in positions
            )
            return zero, residual, 0.0, 0.0
        m /= 2 * weight
        residual = max(
            float(np.abs(grid[i, :, j, :] - 2 * weight * m[i * dd : (i + 1) * dd, j * dd : (j + 1) * dd]).max())
            for (i, j) in positions
        )
        DensityMatrix(m, (2, 2, d, d))  # PSD and trace-one check
        return m, residual, min_eigenvalue(m), float(np.trace(m).real)

    pt = lambda blk: _shield_partial_transpose(blk, d)
    corr_blocks = {(0, 0): pt(state.A1), (3, 3): pt(state.A2)}
    acorr_blocks = {
        (1, 1): pt(state.B1),
        (2, 2): pt(state.B2),
        (1, 2): pt(state.C),
        (2, 1): pt(state.C).conj().T,
    }
    corr, corr_res, corr_eig, corr_tr = summand(corr_blocks, alpha)
    acorr, acorr_res, acorr_eig, acorr_tr = summand(acorr_blocks, beta)
    total_res = float(np.abs(rho_g - 2 * alpha * corr - 2 * beta * acorr).max())
    return DecompositionReport(
        alpha=alpha,
        beta=beta,
        ppt_witness=witness,
        corr_residual=corr_res,
        acorr_residual=acorr_res,
        total_residual=total_res,
        corr_min_eigenvalue=corr_eig,
        acorr_min_eigenvalue=acorr_eig,
        corr_trace=corr_tr,
        acorr_trace=acorr_tr,
    )


def rho_d_bounds(d: int) -> BoundReport:
    """Closed-form key bounds for the key--shield family at p = 1/(sqrt(d)+1).

    lower = 1 - H((sqrt(d), 1/2, 1/2) / (sqrt(d) + 1)) is the single-copy
    advantage-distillation Devetak-Winter rate of the squeezed state;
    upper = 1/(sqrt(d) + 1) = 2*beta bounds the key of the partially
    transposed state.  No matrix is materialized, so d may be arbitrarily
    large (sqrt in double precision is accurate far beyond 2^40).
    """
    d = int(d)
    if d < 1:
        raise ValueError("dimension must be positive")
    s = math.sqrt(d)
    lower = 1.0 - shannon_entropy(np.array([s, 0.5, 0.5]) / (s + 1.0))
    upper = 1.0 / (s + 1.0)
    return BoundReport(lower=lower, upper=upper)


def gap_condition(alpha: float, a: float) -> RegionPoint:
    """Evaluate the two-parameter gap condition at (a, alpha).

    With gamma = alpha*a and beta = 1/2 - alpha, the condition
    H((1+a)*alpha, (1-a)*alpha, 1/2-alpha, 1/2-alpha) < 2*alpha certifies
    a gap between the device-independent and device-dependent key.
    """
    alpha = float(alpha)
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a = {a!r} outside [0, 1]")
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha = {alpha!r} outside [0, 1/2]")
    weights = np.array(
        [(1 + a) * alpha, (1 - a) * alpha, 0.5 - alpha, 0.5 - alpha]
    )
    entropy = shannon_entropy(np.clip(weights, 0.0, None))
    threshold = 2 * alpha
    return RegionPoint(
        a=a,
        alpha=alpha,
        entropy_value=entropy,
        threshold_value=threshold,
        in_gap=entropy < threshold - TOL_GAP,
    )


def region_sweep(a_grid: int, alpha_grid: int) -> list[RegionPoint]:
    """Evaluate the gap condition on a row-major grid over [0,1] x [0,1/2].

    ``a`` is the outer (slow) index and ``alpha`` the inner one; the
    ordering is deterministic so sweeps can serve as regression artifacts.
    """
    a_grid, alpha_grid = int(a_grid), int(alpha_grid)
    if a_grid < 2 or alpha_grid < 2:
        raise ValueError("grid counts must be at least 2")
    return [
        gap_condition(alpha, a)
        for a in np.linspace(0.0, 1.0, a_grid)
        for alpha in np.linspace(0.0, 0.5, alpha_grid)
    ]


def threshold_search(
    predicate: Callable[[int], BoundReport], lo: int, hi: int
) -> int:
    """Least d in [lo, hi] whose report establishes a gap.

    The gap must be monotone increasing over the range, which is verified
    by a coarse scan before bisecting; raises if the scan is not monotone
    or no gap exists in the range.
    """
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise ValueError("empty search range")
    stride = max(1, (hi - lo) // 16)
    scan = list(range(lo, hi, stride)) + [hi]
    gaps = [predicate(d).gap for d in scan]
    if any(b <= a for a, b in zip(gaps, gaps[1:])):
        raise ValueError("gap is not monotone increasing over the scanned range")
    if predicate(lo).gap_established:
        return lo
    if not predicate(hi).gap_established:
        raise ValueError(f"no established gap for d in [{lo}, {hi}]")
    a, b = lo, hi  # invariant: no gap at a, gap at b
    while b - a > 1:
        mid = (a + b) // 2
        if predicate(mid).gap_established:
            b = mid
        else:
            a = mid
    return b
