import csv
import math

import pytest

from qscissors import catalog
from qscissors.cli import (ConfigError, RunConfig, eval_number, main,
                           parse_complex)

QUARTIT_CONFIG = """
# published quartit truncation device
T = 1/3, 1/4, 1, 1/3, 1/2
xi = 0, 0, 0, 0, pi/2, 0
fock_inputs = 1, 1, 1
counts = 1, 1, 1
alpha = (0.4, 0)
"""


class TestEvalNumber:
    def test_expressions(self):
        assert eval_number("1/3") == 1 / 3
        assert abs(eval_number("pi/2") - math.pi / 2) < 1e-15
        assert abs(eval_number("(3 - sqrt(3))/6") - (3 - math.sqrt(3)) / 6) < 1e-15
        assert eval_number("-0.5") == -0.5

    def test_rejects_unknown_names(self):
        with pytest.raises(ConfigError):
            eval_number("__import__('os')")
        with pytest.raises(ConfigError):
            eval_number("open('x')")
        with pytest.raises(ConfigError):
            eval_number("not a number")


class TestParseComplex:
    def test_pair(self):
        assert parse_complex("(0.6, -0.8)") == 0.6 - 0.8j

    def test_bare_real(self):
        assert parse_complex("0.25") == 0.25 + 0j

    def test_malformed(self):
        with pytest.raises(ConfigError):
            parse_complex("(1, 2, 3)")


class TestRunConfig:
    def test_parse(self):
        cfg = RunConfig.parse(QUARTIT_CONFIG)
        assert cfg.transmittances == (1 / 3, 1 / 4, 1.0, 1 / 3, 1 / 2)
        assert cfg.phases[4] == math.pi / 2
        assert cfg.fock_inputs == (1, 1, 1)
        assert cfg.alpha == 0.4 + 0j

    def test_round_trip(self):
        cfg = RunConfig.parse(QUARTIT_CONFIG)
        cfg.target_keep = (0, 2)
        cfg.fix_t3 = 1.0
        again = RunConfig.parse(cfg.serialize())
        assert again == cfg

    def test_wrong_transmittance_count(self):
        with pytest.raises(ConfigError, match="'T'"):
            RunConfig.parse("T = 0.5, 0.5, 0.5, 0.5\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="mystery"):
            RunConfig.parse("mystery = 1\n")

    def test_error_carries_line_number(self):
        with pytest.raises(ConfigError, match="line 2"):
            RunConfig.parse("T = 1, 1, 1, 1, 1\nxi = bogus\n")


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(QUARTIT_CONFIG)
    return str(path)


class TestSubcommands:
    def test_matrix(self, config_path, capsys):
        assert main(["matrix", "--config", config_path]) == 0
        out = capsys.readouterr().out
        assert "unitarity residual" in out

    def test_truncate(self, config_path, capsys):
        assert main(["truncate", "--config", config_path]) == 0
        out = capsys.readouterr().out
        assert "c_0 = +0.083333" in out
        assert "success probability" in out

    def test_truncate_csv_output(self, config_path, tmp_path):
        out_path = tmp_path / "result.csv"
        assert main(["truncate", "--config", config_path,
                     "--format", "csv", "--out", str(out_path)]) == 0
        with open(out_path) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n", "c_re", "c_im", "out_re", "out_im"]
        assert abs(float(rows[1][1]) - 1 / 12) < 1e-10

    def test_verify(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "catalog entries pass" in out
        assert "FAIL" not in out

    def test_verify_reports_failure(self, capsys, monkeypatch):
        broken = catalog.build_catalog()[:3]
        import dataclasses
        from qscissors.network import GqsdSpec
        entry = broken[0]
        t = list(entry.spec.transmittances)
        t[0] = 0.9
        broken[0] = dataclasses.replace(entry,
                                        spec=GqsdSpec(t, entry.spec.phases))
        monkeypatch.setattr(catalog, "build_catalog", lambda: broken)
        assert main(["verify"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_optimize(self, tmp_path, capsys):
        cfg = RunConfig.parse(QUARTIT_CONFIG)
        cfg.fock_inputs = (1, 0, 0)
        cfg.counts = (0, 0, 1)
        cfg.seeds = 2
        cfg.max_iterations = 1000
        cfg.convergence_tol = 1e-10
        cfg.fix_t3 = 1.0
        path = tmp_path / "opt.cfg"
        path.write_text(cfg.serialize())
        assert main(["optimize", "--config", str(path)]) == 0
        assert "distinct solutions" in capsys.readouterr().out

    def test_optimize_seeded_from_config(self, tmp_path, capsys):
        cfg = RunConfig.parse(QUARTIT_CONFIG)
        cfg.seeds = 0
        cfg.max_iterations = 400
        cfg.convergence_tol = 1e-10
        cfg.fix_t3 = 1.0
        path = tmp_path / "seeded.cfg"
        path.write_text(cfg.serialize())
        assert main(["optimize", "--config", str(path),
                     "--seed-from-config"]) == 0
        out = capsys.readouterr().out
        assert "1 distinct solutions" in out
        assert "|c| = 0.0833" in out

    def test_fidelity(self, config_path, capsys):
        assert main(["fidelity", "--config", config_path]) == 0
        out = capsys.readouterr().out
        assert "F_c" in out and "F_s" in out and "F_r" in out

    def test_missing_config_file(self, capsys):
        assert main(["matrix", "--config", "/nonexistent/run.cfg"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_config(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("T = 0.5, 0.5\n")
        assert main(["truncate", "--config", str(path)]) == 2
        err = capsys.readouterr().err
        assert "T" in err

    def test_defaults_without_config(self, capsys):
        assert main(["matrix"]) == 0
