import numpy as np
import pytest

from diqkd_bounds.bounds import region_sweep
from diqkd_bounds.channels import choi_from_kraus
from diqkd_bounds.devices import device_statistics
from diqkd_bounds.sampling import (
    random_kraus_channel,
    random_measurement_set,
    random_ppt_device,
    random_product_mixture,
)
from diqkd_bounds.serialize import (
    channel_device_from_doc,
    channel_device_to_doc,
    channel_from_doc,
    distribution_to_csv,
    matrix_from_doc,
    matrix_to_doc,
    region_to_csv,
    state_device_from_doc,
    state_device_to_doc,
)


def test_matrix_roundtrip():
    rng = np.random.default_rng(40)
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    doc = matrix_to_doc(m)
    assert np.array_equal(matrix_from_doc(doc), m)


def test_matrix_from_doc_defaults_imaginary_to_zero():
    m = matrix_from_doc({"re": [[1.0, 0.0], [0.0, 1.0]]})
    assert np.array_equal(m, np.eye(2))
    with pytest.raises(ValueError, match="shapes"):
        matrix_from_doc({"re": [[1.0]], "im": [[0.0, 0.0]]})


def test_state_device_roundtrip():
    rng = np.random.default_rng(41)
    dev = random_ppt_device(2, 3, rng)
    doc = state_device_to_doc(dev)
    assert doc["kind"] == "state"
    back = state_device_from_doc(doc)
    assert np.abs(back.state.matrix - dev.state.matrix).max() < 1e-15
    table0 = device_statistics(dev).table
    table1 = device_statistics(back).table
    assert np.abs(table0 - table1).max() < 1e-15


def test_state_device_doc_kind_checked():
    with pytest.raises(ValueError, match="kind"):
        state_device_from_doc({"kind": "channel"})


def test_channel_device_roundtrip():
    rng = np.random.default_rng(42)
    ms = random_measurement_set(2, 2, rng)
    rho = random_product_mixture(2, 3, 2, rng)
    c = choi_from_kraus(random_kraus_channel(3, 2, 2, rng))
    doc = channel_device_to_doc(ms, rho, c)
    m2, r2, c2 = channel_device_from_doc(doc)
    assert np.abs(r2.matrix - rho.matrix).max() < 1e-15
    assert np.abs(c2.choi - c.choi).max() < 1e-15
    assert len(m2.alice) == len(ms.alice)


def test_channel_from_kraus_doc():
    rng = np.random.default_rng(43)
    ks = random_kraus_channel(2, 2, 2, rng)
    doc = {"kraus": [matrix_to_doc(k) for k in ks]}
    c = channel_from_doc(doc)
    assert np.abs(c.choi - choi_from_kraus(ks).choi).max() < 1e-15


def test_distribution_csv_layout():
    rng = np.random.default_rng(44)
    dev = random_ppt_device(2, 2, rng)
    csv = distribution_to_csv(device_statistics(dev))
    lines = csv.split("\n")
    assert lines[0] == "x,y,a,b,p"
    assert lines[1].startswith("0,0,0,0,")
    assert csv.endswith("\n")
    # 2 settings x 2 settings x 2 outcomes x 2 outcomes rows plus header
    assert len(lines) == 1 + 16 + 1  # trailing newline yields empty element


def test_region_csv_is_deterministic():
    points = region_sweep(3, 3)
    a = region_to_csv(points)
    b = region_to_csv(region_sweep(3, 3))
    assert a == b
    assert a.split("\n")[0] == "a,alpha,entropy,threshold,in_gap"
    assert ",true" in a or ",false" in a
