"""The ``hak`` command line, driven through ``main(argv)``."""

import json

import numpy as np
import pytest

from hermite_kit.cli import EXIT_ASSERT, EXIT_CONFIG, EXIT_OK, main
from hermite_kit.core.basis import BasisSpec, CoefVec
from hermite_kit.core.grid import hermite_grid
from hermite_kit.core.io import coefvec_from_csv, coefvec_to_csv, gridfn_from_csv, gridfn_to_csv
from hermite_kit.spectral import projector_QN


def _read_kernel(path):
    rows = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    return np.array([[float(v) for v in r.split(",")] for r in rows[1:]])


def test_transform_round_trip(tmp_path, capsys):
    from hermite_kit.core.functions import hermite_eval_1d

    g = hermite_grid(12, 1, func=lambda p: hermite_eval_1d(3, p[:, 0]) - 0.5 * hermite_eval_1d(11, p[:, 0]))
    gridfn_to_csv(g, tmp_path / "in.csv")
    rc = main(["transform", "--input", str(tmp_path / "in.csv"), "--degree", "12", "--out", str(tmp_path / "o")])
    assert rc == EXIT_OK
    resid = float(capsys.readouterr().out.split("round-trip residual:")[1])
    assert resid <= 1e-10
    c = coefvec_from_csv(tmp_path / "o" / "coefvec.csv")
    assert c.basis.degree == 12
    man = json.loads((tmp_path / "o" / "manifest.json").read_text())
    assert man["config"]["command"] == "transform" and "out" not in man["config"]


def test_transform_inverse(tmp_path):
    c = CoefVec.unit(BasisSpec(1, 3), (2,))
    coefvec_to_csv(c, tmp_path / "c.csv")
    rc = main(["transform", "--inverse", "--input", str(tmp_path / "c.csv"), "--grid", "-1:1:3", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    f = gridfn_from_csv(tmp_path / "gridfn.csv")
    np.testing.assert_allclose(f.points[:, 0], [-1, 0, 1])


@pytest.mark.parametrize("text", ["", "# dim=1 weighted=true\n0.0,abc,1\n"])
def test_transform_bad_csv_is_config_error(tmp_path, text):
    (tmp_path / "bad.csv").write_text(text)
    assert main(["transform", "--input", str(tmp_path / "bad.csv"), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_transform_dimension_mismatch(tmp_path):
    gridfn_to_csv(hermite_grid(4, 1, func=lambda p: p[:, 0]), tmp_path / "g.csv")
    assert main(["transform", "--input", str(tmp_path / "g.csv"), "--dim", "2", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_kernel_constant_pseudo_equals_projector(tmp_path):
    rc = main(["kernel", "--op", "pseudo:constant:1", "--degree", "16", "--grid", "-2:2:5", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    tab = _read_kernel(tmp_path / "kernel.csv")
    np.testing.assert_allclose(tab[:, 2], projector_QN(16, tab[:, 0], tab[:, 1]), atol=1e-13)


def test_kernel_heat_diagnostic(tmp_path):
    assert main(["kernel", "--op", "heat:0.5", "--grid=-2:2:5", "--out", str(tmp_path)]) == EXIT_OK
    tab = _read_kernel(tmp_path / "kernel.csv")
    assert np.max(tab[:, 3]) <= 1e-10


def test_kernel_riesz_refuses_diagonal(tmp_path, capsys):
    assert main(["kernel", "--op", "riesz", "--alpha", "1", "--word", "A", "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "singular on the diagonal" in capsys.readouterr().err
    rc = main(
        ["kernel", "--op", "riesz", "--alpha", "1", "--word", "A", "--grid", "-1:1:3", "--ygrid", "-0.5:1.5:3",
         "--out", str(tmp_path)]
    )
    assert rc == EXIT_OK


def test_kernel_unknown_op_lists_registry(tmp_path, capsys):
    assert main(["kernel", "--op", "pseudo:nope", "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "available" in capsys.readouterr().err


def test_usage_error_exits_3(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["kernel", "--degree", "many"])
    assert exc.value.code == EXIT_CONFIG


def test_decompose_atom_single_piece(tmp_path):
    rc = main(["decompose", "--input", "atom:antisymmetric", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["pieces"] == ["a_j0.csv"]


def test_decompose_synthetic(tmp_path, capsys):
    rc = main(["decompose", "--input", "synthetic:odd-gauss", "--center", "0", "--radius", "0.0625", "--out", str(tmp_path)])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert float(out.split("reassembly L2 residual:")[1].split()[0]) <= 1e-8


def test_decompose_rejects_delta(tmp_path, capsys):
    rc = main(["decompose", "--input", "synthetic:odd-gauss", "--omega", "2.5", "--delta", "1", "--out", str(tmp_path)])
    assert rc == EXIT_CONFIG
    assert "delta > max(0, floor(omega) - n(1/p - 1))" in capsys.readouterr().err


def test_verify_exit_codes(tmp_path):
    assert main(["verify", "identities"]) == EXIT_OK
    assert main(["verify", "bogus"]) == EXIT_CONFIG
    assert main(["verify", "hczo", "--op", "zero", "--strict", "--out", str(tmp_path)]) == EXIT_OK


def test_verify_hczo_riesz_alpha_1_four_reports(tmp_path):
    assert main(["verify", "hczo", "--op", "riesz", "--alpha", "1", "--out", str(tmp_path)]) == EXIT_OK
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["counts"]["reports"] == 4


def test_verify_fails_on_hard_assertion(tmp_path, monkeypatch):
    from hermite_kit.verify import IdentityResult, SuiteResult, suites

    monkeypatch.setitem(suites.SUITES, "identities", lambda cfg: SuiteResult("identities", [IdentityResult("x", 1.0)]))
    assert main(["verify", "identities"]) == EXIT_ASSERT


def test_config_file_and_replay(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"op": "heat:0.3", "grid": "-1:1:3", "degree": 8}))
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["kernel", "--config", str(cfg), "--degree", "10", "--out", str(a)]) == EXIT_OK
    man = json.loads((a / "manifest.json").read_text())
    assert man["config"]["degree"] == 10
    assert main(["replay", str(a / "manifest.json"), "--out", str(b)]) == EXIT_OK
    assert (a / "kernel.csv").read_bytes() == (b / "kernel.csv").read_bytes()
    assert (a / "manifest.json").read_bytes() == (b / "manifest.json").read_bytes()
