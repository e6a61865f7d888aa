"""Document formats: JSON device/channel descriptions and CSV tables.

Matrices are stored as nested real/imag arrays with dimensions declared
explicitly, so documents are portable and diffable.  Floats are written
with shortest round-trip formatting for byte-stable regression output.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .channels import ChannelChoi, choi_from_kraus
from .devices import ConditionalDistribution, MeasurementSet, Povm, StateDevice
from .linalg import DensityMatrix

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    """Shortest round-trip decimal form of a float."""
    return repr(float(x))


def matrix_to_doc(m: np.ndarray) -> dict[str, Any]:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_doc(doc: dict[str, Any]) -> np.ndarray:
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError("re and im parts have different shapes")
    return re + 1j * im


def _povms_to_doc(povms) -> list[list[dict[str, Any]]]:
    return [[matrix_to_doc(e) for e in p.effects] for p in povms]


def _povms_from_doc(doc) -> tuple[Povm, ...]:
    return tuple(Povm(tuple(matrix_from_doc(e) for e in p)) for p in doc)


def measurements_to_doc(measurements: MeasurementSet) -> dict[str, Any]:
    return {
        "alice_povms": _povms_to_doc(measurements.alice),
        "bob_povms": _povms_to_doc(measurements.bob),
    }


def measurements_from_doc(doc: dict[str, Any]) -> MeasurementSet:
    return MeasurementSet(
        _povms_from_doc(doc["alice_povms"]), _povms_from_doc(doc["bob_povms"])
    )


def state_to_doc(state: DensityMatrix) -> dict[str, Any]:
    return {"dims": list(state.dims), "matrix": matrix_to_doc(state.matrix)}


def state_from_doc(doc: dict[str, Any]) -> DensityMatrix:
    return DensityMatrix(matrix_from_doc(doc["matrix"]), tuple(doc["dims"]))


def state_device_to_doc(device: StateDevice) -> dict[str, Any]:
    doc = {"schema_version": SCHEMA_VERSION, "kind": "state"}
    doc["state"] = state_to_doc(device.state)
    doc.update(measurements_to_doc(device.measurements))
    return doc


def state_device_from_doc(doc: dict[str, Any]) -> StateDevice:
    if doc.get("kind") != "state":
        raise ValueError(f"expected a state device document, got kind {doc.get('kind')!r}")
    return StateDevice(measurements_from_doc(doc), state_from_doc(doc["state"]))


def channel_to_doc(channel: ChannelChoi) -> dict[str, Any]:
    return {
        "d_in": channel.d_in,
        "d_out": channel.d_out,
        "choi": matrix_to_doc(channel.choi),
    }


def channel_from_doc(doc: dict[str, Any]) -> ChannelChoi:
    if "kraus" in doc:
        return choi_from_kraus([matrix_from_doc(k) for k in doc["kraus"]])
    return ChannelChoi(matrix_from_doc(doc["choi"]), doc["d_in"], doc["d_out"])


def channel_device_to_doc(
    measurements: MeasurementSet, rho: DensityMatrix, channel: ChannelChoi
) -> dict[str, Any]:
    doc = {"schema_version": SCHEMA_VERSION, "kind": "channel"}
    doc["state"] = state_to_doc(rho)
    doc.update(measurements_to_doc(measurements))
    doc["channel"] = channel_to_doc(channel)
    return doc


def channel_device_from_doc(
    doc: dict[str, Any],
) -> tuple[MeasurementSet, DensityMatrix, ChannelChoi]:
    if doc.get("kind") != "channel":
        raise ValueError(f"expected a channel device document, got kind {doc.get('kind')!r}")
    return (
        measurements_from_doc(doc),
        state_from_doc(doc["state"]),
        channel_from_doc(doc["channel"]),
    )


def distribution_to_csv(dist: ConditionalDistribution) -> str:
    """CSV dump of a conditional table, columns x,y,a,b,p, LF line endings."""
    lines = ["x,y,a,b,p"]
    nx, ny, na, nb = dist.shape
    for x in range(nx):
        for y in range(ny):
            for a in range(na):
                for b in range(nb):
                    lines.append(f"{x},{y},{a},{b},{fmt_float(dist.table[x, y, a, b])}")
    return "\n".join(lines) + "\n"


def region_to_csv(points) -> str:
    """CSV dump of a region sweep, columns a,alpha,entropy,threshold,in_gap."""
    lines = ["a,alpha,entropy,threshold,in_gap"]
    for pt in points:
        lines.append(
            ",".join(
                (
                    fmt_float(pt.a),
                    fmt_float(pt.alpha),
                    fmt_float(pt.entropy_value),
                    fmt_float(pt.threshold_value),
                    "true" if pt.in_gap else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"
