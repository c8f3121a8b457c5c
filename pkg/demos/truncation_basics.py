"""Quantum-scissors truncation of a coherent state to a quartit.

Walks through the core workflow: build the eight-port device, inspect
its scattering matrix, read off the heralded coefficients, and truncate
a weak coherent field to the first four Fock components.
"""

import math

import numpy as np

from qscissors import (GqsdSpec, MeasurementEvent, TruncationTarget,
                       coherent_expansion, conditional_amplitudes,
                       fock_expansion, gqsd_matrix, truncate,
                       truncation_defect)

# The flagship device: every heralded coefficient equals 1/12 when each
# auxiliary mode carries one photon and each detector fires once.
spec = GqsdSpec(transmittances=[1 / 3, 1 / 4, 1, 1 / 3, 1 / 2],
                phases=(0, 0, 0, 0, math.pi / 2, 0))
event = MeasurementEvent(fock_inputs=(1, 1, 1), counts=(1, 1, 1))

print("scattering matrix S (note S14 = 0 -- no path from input 4 to output 1):")
s = gqsd_matrix(spec)
for row in s:
    print("  " + "  ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row))

c = conditional_amplitudes(spec, event)
print("\nheralded coefficients c_n for the (1,1,1) count pattern:")
for n, cn in enumerate(c.c):
    print(f"  c_{n} = {cn:+.12f}   (1/12 = {1 / 12:.12f})")
defect = truncation_defect(c, TruncationTarget.full(4))
print(f"truncation defect Delta = {defect:.3e}")

# Truncate a coherent state: the output keeps the first four Fock
# amplitudes exactly (up to normalization) because all c_n are equal.
field = coherent_expansion(alpha=0.4)
qudit, probability = truncate(spec, event, field)
print(f"\ncoherent input alpha = 0.4 (cutoff at n = {field.n_max})")
print(f"heralding probability = {probability:.6e}")
print("truncated state vs renormalized input:")
kept = np.array(field.gammas[:4])
kept = kept / np.linalg.norm(kept)
for n in range(4):
    print(f"  out_{n} = {qudit.coeffs[n]:+.9f}   input_{n} = {kept[n]:+.9f}")

# Teleportation identity: a state already confined to n < 4 passes
# through unchanged.
pre_truncated = fock_expansion([0.6, 0.0, 0.8j, 0.0])
out, _ = truncate(spec, event, pre_truncated)
print("\npre-truncated input (0.6, 0, 0.8i, 0) is teleported exactly:")
print("  output:", np.round(out.as_array(), 12))
