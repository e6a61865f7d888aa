"""The channel version of the transpose attack.

A channel device sends half of an input state through a channel and
measures both ends.  If the channel is completely co-positive (its Choi
matrix stays PSD under output transposition), composing it with a
transpose is again a channel, and the device built from it has identical
statistics.  The identity channel is *not* co-positive, so the attack
refuses it.
"""

import numpy as np

from diqkd_bounds import (
    channel_device_statistics,
    distribution_distance,
    identity_channel,
    is_completely_copositive,
    transpose_channel_attack,
)
from diqkd_bounds.sampling import (
    random_measure_prepare_channel,
    random_measurement_set,
    random_product_mixture,
)

rng = np.random.default_rng(9)

channel = random_measure_prepare_channel(2, 2, terms=3, rng=rng)
ok, witness = is_completely_copositive(channel)
print(f"measure-and-prepare channel: completely co-positive = {ok} (witness {witness:.3e})")

rho = random_product_mixture(2, 2, terms=3, rng=rng)
measurements = random_measurement_set(2, 2, rng)

p = channel_device_statistics(measurements, rho, channel)
fm, fr, fc = transpose_channel_attack(measurements, rho, channel)
q = channel_device_statistics(fm, fr, fc)
print(f"statistics distance after the attack: {distribution_distance(p, q):.2e}")

ident = identity_channel(2)
ok, witness = is_completely_copositive(ident)
print(f"\nidentity channel: completely co-positive = {ok} (witness {witness:+.2f})")
try:
    transpose_channel_attack(measurements, rho, ident)
except ValueError as exc:
    print(f"attack refused: {exc}")
