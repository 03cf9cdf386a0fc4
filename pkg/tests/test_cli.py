import json
import subprocess
import sys

import numpy as np
import pytest

from monoscope import cli, monogamy


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestInspect:
    def test_ghz(self, capsys):
        code, out, _ = run(capsys, "inspect", "ghz")
        assert code == 0
        assert "delta1" in out and "0.500000" in out

    def test_w_json(self, capsys):
        code, out, _ = run(capsys, "inspect", "w", "--json")
        rep = json.loads(out)
        assert rep["n_one_rest"] == pytest.approx(np.sqrt(2) / 3)
        assert rep["m_min"] == 1
        assert rep["ggm"] == pytest.approx(1 / 3)
        assert rep["three_tangle"] == pytest.approx(0.0, abs=1e-12)

    def test_gghz_product_limit(self, capsys):
        code, out, _ = run(capsys, "inspect", "gghz:1.0", "--json")
        rep = json.loads(out)
        assert code == 0 and rep["delta1"] == pytest.approx(0.0, abs=1e-12)

    def test_gghz_phase(self, capsys):
        _, out, _ = run(capsys, "inspect", "gghz:0.7:1.2", "--json")
        assert json.loads(out)["delta1"] == pytest.approx(np.sqrt(0.21))

    def test_state_file(self, capsys, tmp_path):
        f = tmp_path / "psi.txt"
        f.write_text("# W state\n" + "\n".join(
            f"{x} 0" for x in [0, 1 / np.sqrt(3), 1 / np.sqrt(3), 0, 1 / np.sqrt(3), 0, 0, 0]) + "\n")
        _, out, _ = run(capsys, "inspect", str(f), "--json")
        assert json.loads(out)["ggm"] == pytest.approx(1 / 3)

    def test_renormalize_warning(self, capsys, tmp_path, caplog):
        f = tmp_path / "psi.txt"
        f.write_text("0.70710678 0\n0 0\n0 0\n0.70710678 0\n")
        code, out, _ = run(capsys, "inspect", str(f), "--json")
        assert code == 0
        assert "renormalizing" in caplog.text
        assert json.loads(out)["n_one_rest"] == pytest.approx(0.5)

    @pytest.mark.parametrize("body", ["1 0\n1 0\n", "1 0\n0 0\n0 0\n", "1 0 0\n0 0\n", "x 0\n0 0\n"])
    def test_bad_files(self, capsys, tmp_path, body):
        f = tmp_path / "psi.txt"
        f.write_text(body)
        code, _, err = run(capsys, "inspect", str(f))
        assert code == 2 and "error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "inspect", str(tmp_path / "nope.txt"))
        assert code == 2

    def test_bad_gghz(self, capsys):
        assert run(capsys, "inspect", "gghz:1.5")[0] == 2


class TestActivate:
    def test_monogamous(self, capsys):
        code, out, _ = run(capsys, "activate", "ghz")
        assert code == 0 and "minimal activating copies: 1" in out

    def test_nonmonogamous_file(self, capsys, tmp_path):
        from monoscope import SeededRng, sample_w_class
        psi = next(p for p in (sample_w_class(SeededRng(i)) for i in range(100))
                   if monogamy.monogamy_score(monogamy.score_parts(p)) < -1e-3)
        m = monogamy.minimal_activation_copies(monogamy.score_parts(psi))
        f = tmp_path / "psi.txt"
        f.write_text("\n".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in psi.amplitudes))
        code, out, _ = run(capsys, "activate", str(f))
        assert code == 0 and m >= 2
        assert f"minimal activating copies: {m}" in out


class TestVerify:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert out.count("PASS") == 8 and "FAIL" not in out

    def test_list(self, capsys):
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0 and "pure_state_shortcut" in out.split()

    def test_unknown(self, capsys):
        assert run(capsys, "verify", "bogus")[0] == 2

    def test_detects_sign_flip(self, capsys, monkeypatch):
        real = monogamy.negativity_m_copies
        monkeypatch.setattr(monogamy, "negativity_m_copies", lambda n, m: -real(n, m))
        code, out, _ = run(capsys, "verify", "multicopy_negativity_vs_explicit")
        assert code == 1 and "FAIL" in out

    def test_detects_broken_product(self, capsys, monkeypatch):
        monkeypatch.setattr(monogamy, "negativity_product", lambda x, y: x + y)
        code, _, _ = run(capsys, "verify", "product_negativity_vs_explicit")
        assert code == 1


class TestRuns:
    def test_fig2(self, capsys, tmp_path):
        code, out, _ = run(capsys, "fig2", "--samples", "2000", "--out", str(tmp_path))
        assert code == 0
        assert (tmp_path / "activation_hist.csv").exists()
        assert (tmp_path / "manifest.json").exists()
        assert "(paper: 0.88)" in out and "(paper: 0.47)" in out

    def test_fig3(self, capsys, tmp_path):
        code, out, _ = run(capsys, "fig3", "--samples", "2000", "--class", "ghz",
                           "--out", str(tmp_path))
        assert code == 0
        assert "GHZ-class nonmonogamous fraction:" in out and "(paper: 0.088)" in out

    @pytest.mark.parametrize("cmd,word", [("fig4", "one-copy"), ("fig5", "two-copy")])
    def test_scatter(self, capsys, tmp_path, cmd, word):
        code, out, _ = run(capsys, cmd, "--samples", "500", "--out", str(tmp_path), "--format", "json")
        assert code == 0 and f"{word} boundary violations: 0" in out
        assert json.loads((tmp_path / "ggm_scatter.json").read_text())

    def test_pair_four(self, capsys, tmp_path):
        code, out, _ = run(capsys, "pair", "--class", "w", "--mode", "four", "--samples", "2000",
                           "--pool", "200", "--out", str(tmp_path))
        assert code == 0
        assert "failure_rate 0.0000" in out

    def test_env_out(self, tmp_path, monkeypatch):
        target = tmp_path / "envout"
        monkeypatch.setenv("MONOSCOPE_OUT", str(target))
        proc = subprocess.run([sys.executable, "-m", "monoscope", "fig3", "--samples", "200"],
                              capture_output=True, text=True, cwd=tmp_path)
        assert proc.returncode == 0, proc.stderr
        assert (target / "score_dist.csv").exists()

    def test_bad_samples(self, capsys, tmp_path):
        assert run(capsys, "fig3", "--samples", "0", "--out", str(tmp_path))[0] == 2
