import csv
import io
import json

import pytest

from hallmorph.cli import main


@pytest.fixture()
def a2_config(tmp_path):
    cfg = {
        "vertices": 2,
        "valuations": [1, 1],
        "arrows": [[1, 2, 1]],
        "q": 2,
    }
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_seed(a2_config, capsys):
    code, out, _ = run(capsys, "--config", a2_config, "--format", "json", "check-seed")
    assert code == 0
    rows = json.loads(out)
    assert all(r["ok"] for r in rows)
    names = {r["check"] for r in rows}
    assert "lambda(-B~) = (D;0)" in names


def test_check_seed_bad_lambda(tmp_path, capsys):
    cfg = {
        "vertices": 2,
        "arrows": [[1, 2]],
        "q": 2,
        "lambda": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg))
    code, _, err = run(capsys, "--config", str(path), "check-seed")
    assert code == 2
    assert "skew" in err or "error" in err


def test_cyclic_quiver_config(tmp_path, capsys):
    cfg = {"vertices": 2, "arrows": [[1, 2], [2, 1]], "q": 2}
    path = tmp_path / "cyc.json"
    path.write_text(json.dumps(cfg))
    code, _, err = run(capsys, "--config", str(path), "check-seed")
    assert code == 2


def test_catalog_command(a2_config, capsys, tmp_path):
    cache = tmp_path / "cache"
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "catalog", "--cache-dir", str(cache),
    )
    assert code == 0
    rows = json.loads(out)
    assert {r["label"] for r in rows} == {"S1", "S2", "P1"}
    assert any(cache.iterdir())
    # second run loads the cache
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "catalog", "--cache-dir", str(cache),
    )
    assert code == 0 and {r["label"] for r in json.loads(out)} == {"S1", "S2", "P1"}


def test_compute_hall_product(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "hall-product", "K[1,0]", "K[0,1]",
    )
    assert code == 0
    recs = json.loads(out)
    assert len(recs) == 1
    assert recs[0]["alpha"] == [1, 1]
    assert recs[0]["module_label"] == "0"
    # v^{Lambda(e1~, e2~)} = v^{-1} = sqrt-part 1/2 at q=2
    assert recs[0]["scalar"] == {"rat": "0", "sqrt_rat": "1/2"}


def test_compute_psi(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "psi", "X(M=S2)",
    )
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["equal"] is True
    assert rec["pipeline"] == rec["closed_form"]
    assert len(rec["pipeline"]) == 2


def test_compute_gvector(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "gvector", "X(M=S2)",
    )
    assert code == 0
    assert json.loads(out)[0]["gvector"] == [0, -1]


def test_compute_delta_and_ccchar(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "delta", "X(M=P1)",
    )
    assert code == 0
    assert len(json.loads(out)[0]["delta"]) == 3
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "ccchar", "X(M=P1)",
    )
    assert code == 0
    assert len(json.loads(out)[0]["ccchar"][0]["character"]) == 3


def test_compute_dh_psi(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "compute", "dh-psi", "u(M=S2)",
    )
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["equal"] is True


def test_compute_unknown_label(a2_config, capsys):
    code, _, err = run(
        capsys, "--config", a2_config, "compute", "psi", "X(M=S9)"
    )
    assert code == 2


def test_verify_suite_and_figures(a2_config, capsys, tmp_path):
    figs = tmp_path / "figs"
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "--samples", "10", "--max-dim", "2",
        "--figures", str(figs),
        "verify", "--suite", "gvectors",
    )
    assert code == 0
    rep = json.loads(out)[0]
    assert rep["failed"] == 0 and rep["rng_seed"] == 12345
    assert (figs / "suites.png").exists()


def test_verify_negative_control(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "--samples", "10", "--max-dim", "2",
        "verify", "--suite", "relations", "--corrupt-lambda", "0", "2",
    )
    assert code == 1
    rep = json.loads(out)[0]
    assert rep["failed"] > 0


def test_verify_csv_format(a2_config, capsys):
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "csv",
        "--samples", "5", "--max-dim", "2",
        "verify", "--suite", "integration",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["suite", "q", "rng_seed", "check", "ok", "detail"]
    assert all(r[4] == "True" for r in rows[1:])


def test_cluster_compare(a2_config, capsys, tmp_path):
    figs = tmp_path / "figs"
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json",
        "--figures", str(figs),
        "cluster-compare", "--depth", "5",
    )
    assert code == 0
    rows = json.loads(out)
    assert all(r["matched"] for r in rows)
    assert (figs / "cluster_compare.png").exists()


def test_out_file(a2_config, capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "--config", a2_config, "--format", "json", "--out", str(out_path),
        "compute", "gvector", "X(M=S1)",
    )
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())[0]["gvector"] == [-1, 1]


def test_missing_config(capsys):
    code, _, err = run(capsys, "compute", "psi", "X(M=S1)")
    assert code == 2
    assert "config" in err
