import math

import numpy as np
import pytest

from qscissors.detectors import (CONVENTIONAL, NUMBER_RESOLVING, SINGLE_PHOTON,
                                 DetectorModel, conditional_density_matrix,
                                 fidelity, nu_from_dark_rate, outcome_family,
                                 outcome_for_count, povm_for_outcome,
                                 povm_number_resolving)
from qscissors.evolution import evolve
from qscissors.fock import QuditState, coherent_expansion, embed_input
from qscissors.network import GqsdSpec
from qscissors.scissors import MeasurementEvent, truncate

PI = math.pi

TWELFTH_SPEC = GqsdSpec([1 / 3, 1 / 4, 1, 1 / 3, 1 / 2], (0, 0, 0, 0, PI / 2, 0))
QUARTIT_EVENT = MeasurementEvent((1, 1, 1), (1, 1, 1))


def quartit_output_state(alpha=0.4):
    field = coherent_expansion(alpha, 1e-12)
    psi = embed_input(field, 3, QUARTIT_EVENT.fock_inputs)
    return field, evolve(psi, TWELFTH_SPEC.elements())


class TestDarkCounts:
    def test_published_windows(self):
        assert abs(nu_from_dark_rate(100.0, 10e-9) - 1e-6) < 1e-20
        assert abs(nu_from_dark_rate(1e4, 10e-9) - 1e-4) < 1e-18
        assert nu_from_dark_rate(0.0, 10e-9) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            nu_from_dark_rate(-1.0, 1e-9)


class TestPovmWeights:
    def test_ideal_detector_is_projective(self):
        model = DetectorModel(NUMBER_RESOLVING, eta=1.0, nu=0.0)
        for registered in range(4):
            w = povm_number_resolving(model, registered, 6)
            expected = np.zeros(7)
            expected[registered] = 1.0
            assert np.allclose(w, expected, atol=0)

    def test_half_efficiency_single_count(self):
        # eta = 1/2, nu = 0: w_m = C(m,1) (1/2)^m = m / 2^m
        model = DetectorModel(NUMBER_RESOLVING, eta=0.5, nu=0.0)
        w = povm_number_resolving(model, 1, 8)
        expected = np.array([m * 0.5 ** m for m in range(9)])
        assert np.allclose(w, expected, atol=1e-15)

    def test_dark_counts_scale_vacuum_outcome(self):
        # N = 0: only the n = 0 term survives, w_m = e^{-nu} (1-eta)^m
        model = DetectorModel(NUMBER_RESOLVING, eta=0.88, nu=1e-4)
        w = povm_number_resolving(model, 0, 6)
        expected = math.exp(-1e-4) * (1 - 0.88) ** np.arange(7)
        assert np.allclose(w, expected, rtol=1e-12)

    def test_completeness(self):
        # summing over every outcome recovers the identity weight 1
        for kind in (CONVENTIONAL, SINGLE_PHOTON, NUMBER_RESOLVING):
            model = DetectorModel(kind, eta=0.7, nu=1e-4)
            total = np.zeros(7)
            for outcome in outcome_family(model, 6):
                total += povm_for_outcome(model, outcome, 6)
            assert np.max(np.abs(total - 1.0)) < 1e-9

    def test_invalid_outcomes(self):
        with pytest.raises(ValueError):
            povm_for_outcome(DetectorModel(CONVENTIONAL), 1, 4)
        with pytest.raises(ValueError):
            povm_for_outcome(DetectorModel(SINGLE_PHOTON), "click", 4)
        with pytest.raises(ValueError):
            povm_for_outcome(DetectorModel(NUMBER_RESOLVING), -1, 4)

    def test_model_validation(self):
        with pytest.raises(ValueError):
            DetectorModel("avalanche")
        with pytest.raises(ValueError):
            DetectorModel(CONVENTIONAL, eta=1.5)
        with pytest.raises(ValueError):
            DetectorModel(CONVENTIONAL, nu=-1e-6)


class TestOutcomeMapping:
    def test_coarse_graining(self):
        assert outcome_for_count(CONVENTIONAL, 0) == "no-click"
        assert outcome_for_count(CONVENTIONAL, 3) == "click"
        assert outcome_for_count(SINGLE_PHOTON, 1) == 1
        assert outcome_for_count(SINGLE_PHOTON, 2) == "2+"
        assert outcome_for_count(NUMBER_RESOLVING, 5) == 5

    def test_families(self):
        assert outcome_family(DetectorModel(CONVENTIONAL), 4) == \
            ["no-click", "click"]
        assert outcome_family(DetectorModel(SINGLE_PHOTON), 4) == [0, 1, "2+"]
        family = outcome_family(DetectorModel(NUMBER_RESOLVING, nu=0.0), 4)
        assert family == list(range(5))


class TestConditionalDensityMatrix:
    def test_ideal_detection_matches_truncation(self):
        field, phi = quartit_output_state()
        models = [DetectorModel(NUMBER_RESOLVING, 1.0, 0.0)] * 3
        rho, probability = conditional_density_matrix(phi, models, (1, 1, 1))
        ideal, p_ideal = truncate(TWELFTH_SPEC, QUARTIT_EVENT, field)
        assert abs(probability - p_ideal) < 1e-12
        assert abs(fidelity(rho, ideal) - 1.0) < 1e-10
        # the heralded state is pure for perfect number resolution
        assert abs(np.trace(rho @ rho).real - 1.0) < 1e-10

    def test_outcome_probabilities_sum_to_one(self):
        _, phi = quartit_output_state()
        for kind in (CONVENTIONAL, SINGLE_PHOTON):
            model = DetectorModel(kind, eta=0.7, nu=1e-4)
            total = 0.0
            for o2 in outcome_family(model, 8):
                for o3 in outcome_family(model, 8):
                    for o4 in outcome_family(model, 8):
                        _, p = conditional_density_matrix(
                            phi, [model] * 3, (o2, o3, o4))
                        total += p
            assert abs(total - 1.0) < 1e-9

    def test_fidelity_degrades_with_efficiency(self):
        field, phi = quartit_output_state()
        ideal, _ = truncate(TWELFTH_SPEC, QUARTIT_EVENT, field)
        fids = []
        for eta in (1.0, 0.9, 0.7):
            models = [DetectorModel(CONVENTIONAL, eta, 1e-6)] * 3
            outcomes = [outcome_for_count(CONVENTIONAL, n)
                        for n in QUARTIT_EVENT.counts]
            rho, _ = conditional_density_matrix(phi, models, outcomes)
            fids.append(fidelity(rho, ideal))
        assert fids[0] > fids[1] > fids[2]

    def test_requires_four_modes(self):
        from qscissors.fock import MultimodeState
        state = MultimodeState(3, {(0, 0, 0): 1.0})
        with pytest.raises(ValueError):
            conditional_density_matrix(
                state, [DetectorModel(CONVENTIONAL)] * 3, ("click",) * 3)


class TestFidelity:
    def test_pure_state(self):
        phi = QuditState.from_unnormalized([1.0, 1.0j, 0.5])
        rho = np.outer(phi.as_array(), np.conj(phi.as_array()))
        assert abs(fidelity(rho, phi) - 1.0) < 1e-14

    def test_maximally_mixed(self):
        phi = QuditState.from_unnormalized([1.0, 1.0, 1.0, 1.0])
        rho = np.eye(4) / 4.0
        assert abs(fidelity(rho, phi) - 0.25) < 1e-14

    def test_support_mismatch_padding(self):
        phi = QuditState.from_unnormalized([1.0, 0.0, 0.0, 0.0])
        rho = np.array([[1.0]])  # rho supported on |0> only
        assert abs(fidelity(rho, phi) - 1.0) < 1e-14
