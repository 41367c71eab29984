"""Command line interface: pipelines, exit codes, report envelopes."""

import json

import pytest

from liemorph.cli import main
from liemorph.report import body_bytes, load_report


def test_check_identities_stdout(capsys):
    assert main(["check-identities", "--max-size", "3"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert set(rep) == {"meta", "body"}
    assert rep["meta"]["command"] == "check-identities"
    assert rep["body"]["all_hold"] is True
    assert rep["body"]["n_checks"] > 0


def test_envelope_meta_is_consistent(tmp_path):
    out = tmp_path / "r.json"
    assert main(["basis", "--group", "sp_r:2", "--out", str(out)]) == 0
    rep = load_report(out)
    meta = rep["meta"]
    assert set(meta) == {"command", "argv", "timestamp", "wall_time_s",
                         "body_sha256"}
    import hashlib
    assert meta["body_sha256"] == hashlib.sha256(body_bytes(rep)).hexdigest()


def test_usage_errors_exit_2(capsys, tmp_path):
    cases = [
        ["basis", "--group", "nope:3"],
        ["verify-lemma", "--group", "sl_r:3"],          # no battery there
        ["make-family", "--constructor", "glr-isotropic", "--group", "sl_r:3"],
        ["verify-family"],                              # no family source
        ["make-morphism", "--constructor", "upq-pair", "--degree", "1,1"],
        ["make-morphism", "--constructor", "glr-isotropic", "--degree", "1,1"],
        ["verify-morphism", "--morphism-file", str(tmp_path / "absent.json")],
    ]
    for argv in cases:
        assert main(argv) == 2, argv
        err = capsys.readouterr().err
        assert err.startswith("error:"), argv


def test_full_pipeline(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    mor = tmp_path / "mor.json"
    dua = tmp_path / "dua.json"

    assert main(["make-family", "--constructor", "spr-v", "--out", str(fam)]) == 0
    assert main(["verify-family", "--family-file", str(fam),
                 "--samples", "6", "--out", str(tmp_path / "vf.json")]) == 0
    assert main(["make-morphism", "--family-file", str(fam),
                 "--degree", "2", "--out", str(mor)]) == 0
    assert main(["verify-morphism", "--morphism-file", str(mor),
                 "--samples", "10", "--out", str(tmp_path / "vm.json")]) == 0
    assert main(["dualize", "--family-file", str(fam), "--out", str(dua)]) == 0
    assert main(["verify-dual", "--family-file", str(dua),
                 "--samples", "6", "--out", str(tmp_path / "vd.json")]) == 0
    capsys.readouterr()

    art = json.loads(dua.read_text())
    assert art["kind"] == "dual-family"
    assert art["dual_label"] == "Sp(2)"
    assert art["claimed"]["lambda"] == [-0.5, -0.0]
    vm = load_report(tmp_path / "vm.json")
    assert vm["body"]["ok"] is True
    assert vm["body"]["degree"] == [2, 0]


def test_bi_family_pipeline_with_bidegree(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    mor = tmp_path / "mor.json"
    assert main(["make-family", "--constructor", "upq-bi", "--out", str(fam)]) == 0
    assert main(["make-morphism", "--family-file", str(fam),
                 "--degree", "1,1", "--out", str(mor)]) == 0
    assert main(["verify-morphism", "--morphism-file", str(mor),
                 "--samples", "10", "--out", str(tmp_path / "vm.json")]) == 0
    # single-integer degree is rejected for bi-eigenfamilies
    assert main(["make-morphism", "--family-file", str(fam),
                 "--degree", "2"]) == 2
    capsys.readouterr()


def test_tampered_morphism_fails_with_exit_1(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    mor = tmp_path / "mor.json"
    main(["make-family", "--constructor", "spr-v", "--out", str(fam)])
    main(["make-morphism", "--family-file", str(fam), "--degree", "2",
          "--out", str(mor)])
    data = json.loads(mor.read_text())
    # bend one generator coefficient: the family stops being an eigenfamily
    data["family"]["generators"][0]["coeff"][0][0] = [0.9, 0.4]
    mor.write_text(json.dumps(data))
    rc = main(["verify-morphism", "--morphism-file", str(mor),
               "--samples", "10", "--out", str(tmp_path / "vm.json")])
    capsys.readouterr()
    assert rc == 1
    rep = load_report(tmp_path / "vm.json")
    assert rep["body"]["ok"] is False


def test_out_dir_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("LIEMORPH_OUT_DIR", str(tmp_path))
    assert main(["make-family", "--constructor", "spr-v",
                 "--out", "nested/fam.json"]) == 0
    capsys.readouterr()
    assert (tmp_path / "nested" / "fam.json").exists()
    # absolute paths ignore the env var
    other = tmp_path / "abs.json"
    assert main(["make-family", "--constructor", "spr-v",
                 "--out", str(other)]) == 0
    capsys.readouterr()
    assert other.exists()


def test_report_body_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify-family", "--constructor", "spr-v", "--samples", "5"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    ra, rb = load_report(a), load_report(b)
    assert body_bytes(ra) == body_bytes(rb)
    assert ra["meta"]["body_sha256"] == rb["meta"]["body_sha256"]


def test_verify_lemma_reports_diagnostics(tmp_path, capsys):
    out = tmp_path / "lem.json"
    assert main(["verify-lemma", "--group", "so_pq:2,2", "--samples", "6",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    body = load_report(out)["body"]
    assert body["ok"] is True
    assert body["diagnostics"]["deviation[kappa[x,x]_sign_variant]"] > 0.5
