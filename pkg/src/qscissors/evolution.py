"""Fock-state evolution through linear networks: multi-index oracle and fast per-element path."""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np

from .fock import PRUNE_TOL, MultimodeState, total_photons
from .network import BeamSplitter, ElementSpec, Mirror, PhaseShifter, element_matrix

ORACLE_PHOTON_LIMIT = 8


class OracleLimitError(RuntimeError):
    """Raised when the brute-force oracle is asked for too many photons."""


def evolve_fock_oracle(s: np.ndarray, occupation,
                       photon_limit: int = ORACLE_PHOTON_LIMIT) -> MultimodeState:
    """Evolve a single Fock product state by brute-force multi-index summation.

    Expands prod_i (sum_j S_ji a_j^dag)^{n_i} |0> over all N^M index
    tuples (M = total photons). Exponential cost; intended as the trusted
    reference for the fast path.
    """
    s = np.asarray(s, dtype=complex)
    n_modes = s.shape[0]
    occupation = tuple(int(n) for n in occupation)
    if len(occupation) != n_modes:
        raise ValueError("occupation length must match matrix dimension")
    m_total = total_photons(occupation)
    if m_total > photon_limit:
        raise OracleLimitError(
            f"{m_total} photons exceeds oracle limit {photon_limit}")

    if m_total == 0:
        return MultimodeState(n_modes, {occupation: 1.0})

    # Creation-operator source label per photon: n_i copies of mode i.
    labels = [i for i, n in enumerate(occupation) for _ in range(n)]
    prefactor = 1.0 / math.sqrt(math.prod(math.factorial(n) for n in occupation))

    amps: dict[tuple[int, ...], complex] = {}
    for targets in itertools.product(range(n_modes), repeat=m_total):
        coeff = prefactor
        for j, x in zip(targets, labels):
            coeff *= s[j, x]
        if coeff == 0:
            continue
        key = [0] * n_modes
        for j in targets:
            key[j] += 1
        key = tuple(key)
        # a^dag string on vacuum contributes sqrt(m_k!) per mode.
        coeff *= math.sqrt(math.prod(math.factorial(m) for m in key))
        amps[key] = amps.get(key, 0j) + coeff
    return MultimodeState(n_modes, amps)


def _apply_phase(state: MultimodeState, mode: int, phase: float) -> MultimodeState:
    amps = {}
    for key, amp in state.items():
        amps[key] = amp * cmath.exp(1j * phase * key[mode])
    return MultimodeState(state.modes, amps)


def _apply_beam_splitter(state: MultimodeState, i: int, j: int,
                         transmittance: float) -> MultimodeState:
    t = math.sqrt(transmittance)
    r = math.sqrt(1.0 - transmittance)
    amps: dict[tuple[int, ...], complex] = {}
    for key, amp in state.items():
        ni, nj = key[i], key[j]
        if ni == 0 and nj == 0:
            amps[key] = amps.get(key, 0j) + amp
            continue
        base = amp / math.sqrt(math.factorial(ni) * math.factorial(nj))
        # Expand (t a_i - r a_j)^ni (r a_i + t a_j)^nj on the two-mode block.
        for k in range(ni + 1):
            ck = math.comb(ni, k) * t ** k * (-r) ** (ni - k)
            for l in range(nj + 1):
                cl = math.comb(nj, l) * r ** l * t ** (nj - l)
                p = k + l
                q = ni + nj - p
                coeff = base * ck * cl * math.sqrt(math.factorial(p) * math.factorial(q))
                if coeff == 0:
                    continue
                out = list(key)
                out[i] = p
                out[j] = q
                out = tuple(out)
                amps[out] = amps.get(out, 0j) + coeff
    return MultimodeState(state.modes, amps)


def apply_element(state: MultimodeState, element: ElementSpec) -> MultimodeState:
    """Apply a single optical element to a sparse multimode state."""
    if isinstance(element, (PhaseShifter, Mirror)):
        return _apply_phase(state, element.mode, element.phase)
    if isinstance(element, BeamSplitter):
        i, j = element.modes
        return _apply_beam_splitter(state, i, j, element.transmittance)
    raise TypeError(f"unknown element {element!r}")


def evolve(state: MultimodeState, elements) -> MultimodeState:
    """Apply an element sequence in temporal order (first element first)."""
    for element in elements:
        state = apply_element(state, element)
    return state
