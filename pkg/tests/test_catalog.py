import dataclasses

import numpy as np

from qscissors.catalog import (build_catalog, qutrit_relation_entries,
                               verify_catalog, verify_entry)
from qscissors.network import GqsdSpec


class TestCatalog:
    def test_all_entries_pass(self):
        results = verify_catalog()
        failures = [r.name for r in results if not r.passed]
        assert failures == []

    def test_names_unique(self):
        names = [e.name for e in build_catalog()]
        assert len(names) == len(set(names))

    def test_suppressed_amplitudes_vanish(self):
        for entry, result in zip(build_catalog(), verify_catalog()):
            if entry.exact:
                assert result.suppressed_max < 1e-10, entry.name

    def test_tampered_entry_fails(self):
        entry = build_catalog()[5]  # an exact quartit solution
        t = list(entry.spec.transmittances)
        t[0] += 0.05
        broken = dataclasses.replace(entry, spec=GqsdSpec(t, entry.spec.phases))
        assert not verify_entry(broken).passed

    def test_qutrit_relation_entries(self):
        entries = qutrit_relation_entries(np.linspace(0.05, 0.95, 7))
        assert len(entries) == 14
        for result in verify_catalog(entries):
            assert result.passed, result.name
