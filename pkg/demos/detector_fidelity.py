"""Truncation fidelity with realistic photodetectors.

Compares conventional (click / no-click), single-photon resolving
(0 / 1 / 2+) and fully number-resolving detectors, including finite
efficiency and dark counts, for the quartit and d = 5 devices.
"""

import math

from qscissors import (CONVENTIONAL, NUMBER_RESOLVING, SINGLE_PHOTON,
                       DetectorModel, GqsdSpec, MeasurementEvent,
                       coherent_expansion, conditional_density_matrix,
                       embed_input, evolve, fidelity, nu_from_dark_rate,
                       outcome_for_count, truncate)

TAU_RES = 10e-9  # 10 ns resolution window

DEVICES = [
    ("quartit", GqsdSpec([0.78494, 0.69001, 1, 0.87451, 0.70185],
                         (0, 0, 0, 0, math.pi, 0)),
     MeasurementEvent((1, 1, 1), (1, 1, 1))),
    ("d=5", GqsdSpec([0.30464, 0.38775, 1, 0.81740, 0.18438],
                     (0, 0, 0, math.pi, 0, 0)),
     MeasurementEvent((1, 2, 1), (1, 2, 1))),
]

DETECTORS = [
    ("conventional", CONVENTIONAL, 0.7, 100.0),
    ("single-photon", SINGLE_PHOTON, 0.88, 1e4),
    ("number-resolving", NUMBER_RESOLVING, 0.88, 1e4),
]

field = coherent_expansion(alpha=0.4)
print(f"input: coherent state alpha = 0.4, Fock cutoff n = {field.n_max}\n")

for device_name, spec, event in DEVICES:
    psi = embed_input(field, 3, event.fock_inputs)
    phi = evolve(psi, spec.elements())
    ideal, p_ideal = truncate(spec, event, field)
    print(f"--- {device_name} device, counts {event.counts} ---")
    print(f"ideal heralding probability = {p_ideal:.4e}")
    for label, kind, eta, r_dark in DETECTORS:
        nu = nu_from_dark_rate(r_dark, TAU_RES)
        models = [DetectorModel(kind, eta, nu)] * 3
        outcomes = [outcome_for_count(kind, n) for n in event.counts]
        rho, probability = conditional_density_matrix(phi, models, outcomes)
        f = fidelity(rho, ideal)
        print(f"  {label:<17} eta = {eta:.2f}  nu = {nu:.0e}  "
              f"F = {f:.4f}  P = {probability:.4e}")
    print()

print("conventional detectors cannot distinguish one photon from many,")
print("so extra terms leak into the heralded state and the fidelity drops;")
print("resolving 0 / 1 / 2+ already recovers most of it.")
