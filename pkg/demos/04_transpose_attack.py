"""The transpose attack: two devices, identical statistics, different key.

For a PPT state, replacing (rho, Bob's POVMs) by (partially transposed
rho, transposed POVMs) produces exactly the same conditional distribution
p(a, b | x, y).  No device-independent protocol can tell the devices
apart, so the key any such protocol certifies is bounded by the *weaker*
of the two states.  On an NPT state the transposed matrix is not a state
and the attack simply does not exist.
"""

import numpy as np

from diqkd_bounds import (
    DensityMatrix,
    StateDevice,
    device_statistics,
    distribution_distance,
    make_rho_d,
    transpose_attack,
)
from diqkd_bounds.sampling import random_measurement_set

rng = np.random.default_rng(5)

# a device measuring rho_2 (PPT by construction) with random 2-setting POVMs
state = make_rho_d(2).to_bipartite()
device = StateDevice(random_measurement_set(4, 4, rng), state)
attacked = transpose_attack(device)

p = device_statistics(device)
q = device_statistics(attacked)
print(f"rho_2 device: statistics distance after attack = {distribution_distance(p, q):.2e}")
print("sample of the table (setting x=0, y=0):")
print(np.array2string(p.table[0, 0], precision=6))

# attacking twice restores the original device exactly
twice = transpose_attack(attacked)
print(f"\nattack twice returns the device: state deviation "
      f"{np.abs(twice.state.matrix - device.state.matrix).max():.1e}")

# a maximally entangled state is NPT: the attack must refuse
v = np.zeros(4)
v[0] = v[3] = 1 / np.sqrt(2)
entangled = StateDevice(
    random_measurement_set(2, 2, rng), DensityMatrix(np.outer(v, v), (2, 2))
)
try:
    transpose_attack(entangled)
except ValueError as exc:
    print(f"\nmaximally entangled state: {exc}")
