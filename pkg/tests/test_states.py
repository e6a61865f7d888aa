import numpy as np
import pytest

from diqkd_bounds.linalg import DensityMatrix, is_ppt, trace_norm
from diqkd_bounds.states import (
    BOB_CUT,
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


# -------------------------------------------------------------- parameters


def test_bell_params_validation():
    BellParams(0.25, 0.25, 0.1, 0.05)
    with pytest.raises(ValueError, match="gamma"):
        BellParams(0.25, 0.25, 0.3, 0.0)
    with pytest.raises(ValueError, match="delta"):
        BellParams(0.25, 0.25, 0.0, 0.3)
    with pytest.raises(ValueError, match="2\\*alpha"):
        BellParams(0.3, 0.3, 0.0, 0.0)
    with pytest.raises(ValueError, match="negative"):
        BellParams(0.6, -0.1, 0.0, 0.0)


def test_make_bell_diagonal_pure_and_mixed():
    phi = make_bell_diagonal(BellParams(0.5, 0.0, 0.5, 0.0))
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    assert np.abs(phi.matrix - np.outer(v, v)).max() < 1e-15

    mixed = make_bell_diagonal(BellParams(0.25, 0.25, 0.0, 0.0))
    assert np.abs(mixed.matrix - np.eye(4) / 4).max() < 1e-15


def test_make_bell_diagonal_eigenvalues():
    # oracle: 4x4 eigensolve; eigenvalues are alpha +- gamma, beta +- delta
    rho = make_bell_diagonal(BellParams(3 / 8, 1 / 8, 1 / 4, 0.0))
    np.testing.assert_allclose(
        np.linalg.eigvalsh(rho.matrix), [1 / 8, 1 / 8, 1 / 8, 5 / 8], atol=1e-14
    )


# --------------------------------------------------------------- unitaries


@pytest.mark.parametrize(
    "kind,dims",
    [("fourier", (2, 3, 4, 8)), ("hadamard", (2, 4, 8))],
)
def test_flat_unitaries(kind, dims):
    for d in dims:
        u = flat_unitary(kind, d)
        assert np.abs(u @ u.conj().T - np.eye(d)).max() < 1e-12
        assert np.abs(np.abs(u) - 1 / np.sqrt(d)).max() < 1e-12


def test_hadamard_requires_power_of_two():
    with pytest.raises(ValueError, match="power of two"):
        hadamard_power_unitary(3)
    with pytest.raises(ValueError, match="unknown unitary kind"):
        flat_unitary("walsh", 2)


def test_fourier_matches_direct_formula():
    d = 5
    u = fourier_unitary(d)
    for j in range(d):
        for k in range(d):
            assert abs(u[j, k] - np.exp(2j * np.pi * j * k / d) / np.sqrt(d)) < 1e-14


# ---------------------------------------------------------- shield operators


@pytest.mark.parametrize(
    "kind,dims",
    [("fourier", (2, 3, 4, 8)), ("hadamard", (2, 4, 8))],
)
def test_shield_operator_norms(kind, dims):
    for d in dims:
        x, y = shield_operators(d, kind)
        assert abs(trace_norm(x) - 1.0) < 1e-10
        assert abs(trace_norm(y) - 1.0) < 1e-10
        # X X^dag is the identity over d^4 for any flat unitary
        assert np.abs(x @ x.conj().T - np.eye(d * d) / d**4).max() < 1e-14


# ------------------------------------------------------------- constructors


def test_make_rho_d_blocks_d2_hadamard():
    p = default_noise_weight(2)  # 1/(sqrt(2)+1)
    s = make_rho_d(2, unitary="hadamard")
    assert abs(trace_norm(s.C) - (1 - p) / 2) < 1e-12
    # A blocks are (1-p)/2 * I/d^2 because sqrt(X X^dag) = I/d^2
    assert np.abs(s.A1 - (1 - p) / 2 * np.eye(4) / 4).max() < 1e-12
    assert np.array_equal(s.A1, s.A2)


def test_make_rho_d_degenerate_p_one():
    s = make_rho_d(2, p=1.0)
    assert trace_norm(s.A1) == 0.0
    assert trace_norm(s.C) == 0.0
    params = privacy_squeeze(s)
    assert params.beta == pytest.approx(0.5, abs=1e-12)
    assert params.alpha == 0.0


def test_make_rho_d_is_ppt_at_default_noise():
    for d, kind in ((2, "fourier"), (3, "fourier"), (4, "fourier"), (2, "hadamard"), (4, "hadamard")):
        s = make_rho_d(d, unitary=kind)
        ok, witness = s.is_ppt()
        assert ok, f"d={d} {kind} witness {witness}"


def test_make_rho_d_d4_fourier_p_third_is_ppt():
    ok, _ = make_rho_d(4, unitary="fourier", p=1 / 3).is_ppt()
    assert ok


def test_make_rho_d_valid_density_up_to_d8():
    for d in range(2, 9):
        s = make_rho_d(d)  # DensityMatrix invariants checked on assembly
        assert s.density.dims == (2, 2, d, d)
        assert abs(np.trace(s.density.matrix).real - 1.0) < 1e-12


def test_make_rho_d_rejects_bad_input():
    with pytest.raises(ValueError, match="dense limit"):
        make_rho_d(40)
    with pytest.raises(ValueError, match="outside"):
        make_rho_d(2, p=1.5)
    with pytest.raises(ValueError, match="positive"):
        make_rho_d(0)


def test_block_bell_state_rejects_asymmetric_norms():
    dd = 4
    a = np.eye(dd) / dd * 0.25
    b = np.eye(dd) / dd * 0.25
    with pytest.raises(ValueError, match="asymmetric"):
        BlockBellState(2, A1=a, A2=2 * a, B1=b, B2=b, C=np.zeros((dd, dd)))


def test_bipartite_regrouping_keeps_ppt_witness():
    # the (2,2,d,d) cut {key_B, shield_B} and the (2d, 2d) cut over Bob's
    # whole side must agree
    s = make_rho_d(3)
    _, w_grouped = is_ppt(s.density, BOB_CUT)
    _, w_bipartite = is_ppt(s.to_bipartite(), 1)
    assert abs(w_grouped - w_bipartite) < 1e-12


# ------------------------------------------------------------------ squeeze


def test_privacy_squeeze_of_rho_d():
    for d in (2, 3, 4):
        p = default_noise_weight(d)
        params = privacy_squeeze(make_rho_d(d))
        assert params.alpha == pytest.approx((1 - p) / 2, abs=1e-12)
        assert params.beta == pytest.approx(p / 2, abs=1e-12)
        assert params.gamma == pytest.approx((1 - p) / 2, abs=1e-12)
        assert params.delta == 0.0


def test_privacy_squeeze_identity_on_scalar_blocks():
    # d = 1: blocks are scalars and squeezing returns them unchanged
    s = BlockBellState(
        1,
        A1=[[0.3]],
        A2=[[0.3]],
        B1=[[0.2]],
        B2=[[0.2]],
        C=[[0.25]],
    )
    params = privacy_squeeze(s)
    assert params.as_tuple() == pytest.approx((0.3, 0.2, 0.25, 0.0), abs=1e-14)


def test_privacy_squeeze_zero_c_gives_zero_gamma():
    s = make_rho_d(2, p=1.0)
    assert privacy_squeeze(s).gamma == 0.0


def test_privacy_squeeze_rejects_asymmetric_blocks():
    from types import SimpleNamespace

    bad = SimpleNamespace(
        A1=np.eye(2) * 0.2,
        A2=np.eye(2) * 0.05,
        B1=np.eye(2) * 0.05,
        B2=np.eye(2) * 0.2,
        C=np.zeros((2, 2)),
        D=np.zeros((2, 2)),
    )
    with pytest.raises(ValueError, match="differ"):
        privacy_squeeze(bad)


# ------------------------------------------------------------- distillation


def test_advantage_distill_m1_is_identity():
    s = make_rho_d(2)
    assert advantage_distill_block(s, 1) is s


def test_advantage_distill_block_structure():
    s = make_rho_d(2, unitary="hadamard")
    s2 = advantage_distill_block(s, 2)
    assert s2.shield_dim == 4
    assert s2.density.dims == (2, 2, 4, 4)
    assert np.abs(s2.D).max() == 0.0  # zero block stays zero
    ok, _ = s2.is_ppt()
    assert ok  # tensor powers of a PPT block state stay PPT


def test_advantage_distill_respects_dense_limit():
    s = make_rho_d(4)
    with pytest.raises(ValueError, match="dense limit"):
        advantage_distill_block(s, 4)


def test_squeeze_commutes_with_distillation():
    # squeezing after distillation equals powering the squeezed parameters
    for d, kind in ((2, "fourier"), (2, "hadamard")):
        s = make_rho_d(d, unitary=kind)
        base = privacy_squeeze(s)
        for m in (1, 2, 3):
            left = privacy_squeeze(advantage_distill_block(s, m))
            right = bell_power_params(base, m)
            assert np.abs(
                np.array(left.as_tuple()) - np.array(right.as_tuple())
            ).max() < 1e-10


def test_tensor_power_regrouping_matches_permutation_matrix_route():
    # independent route: build the interleaved-to-grouped permutation as an
    # explicit 0/1 matrix and conjugate the plain kron power with it; the
    # full complex C block must agree entry for entry
    d, m = 2, 2
    s = make_rho_d(d, unitary="fourier")
    s2 = advantage_distill_block(s, m)
    z = 2 * (trace_norm(s.A1) ** 2 + trace_norm(s.B1) ** 2)

    side = d ** (2 * m)
    perm = np.zeros((side, side))
    for i1 in range(d):
        for j1 in range(d):
            for i2 in range(d):
                for j2 in range(d):
                    interleaved = ((i1 * d + j1) * d + i2) * d + j2
                    grouped = ((i1 * d + i2) * d + j1) * d + j2
                    perm[grouped, interleaved] = 1.0
    for name in ("A1", "B1", "C"):
        blk = getattr(s, name)
        want = perm @ np.kron(blk, blk) @ perm.T / z
        got = getattr(s2, name)
        assert np.abs(got - want).max() < 1e-14


def test_tensor_power_regrouping_matches_kron_on_diagonal_blocks():
    # for diagonal blocks the regrouping is a permutation similarity that
    # can be checked against an explicit two-copy construction
    s = make_rho_d(2)
    s2 = advantage_distill_block(s, 2)
    d = 2
    # B1 is diagonal: entries of the grouped power must be the products
    # B1[(i1 j1),(i1 j1)] * B1[(i2 j2),(i2 j2)] at grouped index
    # ((i1 i2),(j1 j2))
    b = np.real(np.diag(s.B1))
    got = np.real(np.diag(s2.B1))
    z = 2 * (trace_norm(s.A1) ** 2 + trace_norm(s.B1) ** 2)
    for i1 in range(d):
        for j1 in range(d):
            for i2 in range(d):
                for j2 in range(d):
                    grouped = ((i1 * d + i2) * d + j1) * d + j2
                    want = b[i1 * d + j1] * b[i2 * d + j2] / z
                    assert abs(got[grouped] - want) < 1e-14


# ------------------------------------------------------------- Bell powers


def test_bell_power_params_identity_and_fixed_point():
    p = BellParams(0.4, 0.1, 0.3, 0.05)
    assert bell_power_params(p, 1).as_tuple() == pytest.approx(p.as_tuple(), abs=1e-15)
    pure = BellParams(0.5, 0.0, 0.5, 0.0)
    for m in (1, 2, 5):
        assert bell_power_params(pure, m).as_tuple() == pytest.approx(
            pure.as_tuple(), abs=1e-15
        )


def test_bell_power_params_m2_arithmetic():
    got = bell_power_params(BellParams(0.4, 0.1, 0.3, 0.05), 2)
    want = np.array([0.16, 0.01, 0.09, 0.0025]) / 0.34
    assert np.abs(np.array(got.as_tuple()) - want).max() < 1e-14
