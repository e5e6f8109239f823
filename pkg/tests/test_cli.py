import json
import subprocess
import sys

from nonassoc.catalog import catalog_get
from nonassoc.cli import run
from nonassoc.structure import save_algebra


def _write(tmp_path, name, params=None):
    A = catalog_get(name, params or {})
    path = tmp_path / f"{name}.json"
    save_algebra(A, path)
    return str(path)


def test_variety_check_exit_codes(tmp_path, capsys):
    sl2 = _write(tmp_path, "sl2")
    assert run(["variety", "check", sl2, "--variety", "malcev"]) == 0
    capsys.readouterr()
    assert run(["variety", "check", sl2, "--variety", "commutative"]) == 1
    capsys.readouterr()
    assert run(["variety", "check", sl2, "--variety", "nope"]) == 2
    capsys.readouterr()


def test_usage_errors(tmp_path, capsys):
    assert run(["variety", "check", str(tmp_path / "missing.json"),
                "--variety", "lie"]) == 2
    capsys.readouterr()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = run(["variety", "check", str(bad), "--variety", "lie"])
    out = capsys.readouterr()
    assert code == 2
    assert "line" in out.err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 2
    capsys.readouterr()


def test_invalid_algebra_structure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"name": "x", "field": "Q", "dim": 2,
         "ops": [{"name": "mul", "arity": 2,
                  "table": [{"args": [0, 9], "out": [[0, "1"]]}]}]}))
    assert run(["variety", "check", str(bad), "--variety", "lie"]) == 2
    capsys.readouterr()
    bad.write_text(json.dumps(
        {"name": "x", "field": "GF(4)", "dim": 1, "ops": []}))
    assert run(["variety", "check", str(bad), "--variety", "lie"]) == 2
    capsys.readouterr()


def test_json_flag_after_subcommand(tmp_path, capsys):
    sl2 = _write(tmp_path, "sl2")
    assert run(["der", "space", sl2, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "1"


def test_catalog_get_pipe(tmp_path, capsys):
    assert run(["catalog", "get", "NF", "-p", "n=3"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["dim"] == 3
    assert run(["catalog", "get", "R", "-p", "seq=2,1"]) == 0
    capsys.readouterr()


def test_der_space_json_report(tmp_path, capsys):
    m8 = _write(tmp_path, "M8")
    assert run(["--json", "der", "space", m8, "--local-generic"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out)
    assert doc["schema"] == "1"
    assert doc["dim"] == 28


def test_json_determinism(tmp_path, capsys):
    sl2 = _write(tmp_path, "sl2")
    assert run(["--json", "der", "space", sl2]) == 0
    first = capsys.readouterr().out
    assert run(["--json", "der", "space", sl2]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_degen_cli(tmp_path, capsys):
    nf2 = _write(tmp_path, "NF", {"n": 2})
    zero = tmp_path / "zero2.json"
    save_algebra(catalog_get("abelian", {"n": 2}), zero)
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps([["t", "0"], ["0", "t^3"]]))
    assert run(["degen", "verify", "--from", nf2, "--to", str(zero),
                "--cert", str(cert)]) == 0
    capsys.readouterr()
    assert run(["degen", "obstruct", "--from", nf2, "--to", str(zero)]) == 0
    capsys.readouterr()
    # reversed direction is obstructed
    assert run(["degen", "obstruct", "--from", str(zero), "--to", nf2]) == 1
    capsys.readouterr()


def test_poisson_cli(tmp_path, capsys):
    tp4 = _write(tmp_path, "tp4")
    assert run(["poisson", "check", tp4, "--kind", "poisson"]) == 0
    capsys.readouterr()
    sl2 = _write(tmp_path, "sl2")
    assert run(["--json", "poisson", "tps-space", sl2, "--op", "mul"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 0 and doc["certified_empty"]


def test_incidence_cli(tmp_path, capsys):
    poset = tmp_path / "p.json"
    poset.write_text(json.dumps(
        {"elements": ["1", "2", "3", "4"],
         "covers": [["1", "3"], ["1", "4"], ["2", "3"], ["2", "4"]]}))
    sigma = tmp_path / "s.json"
    sigma.write_text(json.dumps({"1<3": "1", "1<4": "2", "2<3": "3",
                                 "2<4": "5/2"}))
    assert run(["incidence", "poisson-equiv", "--poset", str(poset),
                "--sigma", str(sigma)]) == 0
    capsys.readouterr()
    assert run(["--json", "incidence", "poisson-equiv", "--poset", str(poset),
                "--exhaustive-gf", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["agree"] and doc["total"] == 81
    assert run(["incidence", "build", "--poset", str(poset)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 8


def test_ext_cli(tmp_path, capsys):
    ab2 = _write(tmp_path, "abelian", {"n": 2})
    assert run(["--json", "ext", "cocycles", "--algebra", ab2,
                "--variety", "lie", "--s", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["Z2_dim"], doc["B2_dim"], doc["H2_dim"]) == (1, 0, 1)
    theta = tmp_path / "theta.json"
    theta.write_text(json.dumps([[["0", "1"], ["-1", "0"]]]))
    out_path = tmp_path / "ext.json"
    assert run(["ext", "build", "--algebra", ab2, "--theta", str(theta),
                "--out", str(out_path)]) == 0
    capsys.readouterr()
    from nonassoc.structure import load_algebra
    ext = load_algebra(out_path)
    assert ext.dim == 3


def test_kantor_cli(tmp_path, capsys):
    o = _write(tmp_path, "octonions")
    assert run(["kantor", "square", "--a", o, "--u", "0"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 8
    assert run(["kantor", "u2"]) == 0
    capsys.readouterr()
    assert run(["conservative", _write(tmp_path, "sl2")]) == 0
    capsys.readouterr()


def test_identity_cli(tmp_path, capsys):
    nf3 = _write(tmp_path, "NF", {"n": 3})
    assert run(["identity", "eval", nf3, "--identity",
                "(x*y)*z - (x*z)*y - x*(y*z)"]) == 0
    capsys.readouterr()
    assert run(["identity", "eval", nf3, "--identity", "x*y - y*x"]) == 1
    capsys.readouterr()


def test_hd_cli(tmp_path, capsys):
    ut2 = _write(tmp_path, "uppertri", {"n": 2})
    eye = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    zero = [["0"] * 3 for _ in range(3)]
    # d = (id, ad(e12), 0) is a higher derivation of T_2 since ad(e12)^2 = 0
    from nonassoc.incidence import _left_mult, _right_mult
    from nonassoc.catalog import catalog_get as _cg
    from fractions import Fraction as F
    A = _cg("uppertri", {"n": 2})
    r = [F(0), F(1), F(0)]
    admat = [[str(_left_mult(A, r)[i][j] - _right_mult(A, r)[i][j])
              for j in range(3)] for i in range(3)]
    seq_path = tmp_path / "seq.json"
    seq_path.write_text(json.dumps([eye, admat, zero]))
    assert run(["incidence", "hd-check", "--algebra", ut2,
                "--sequence", str(seq_path)]) == 0
    capsys.readouterr()
    bad_path = tmp_path / "bad_seq.json"
    bad_path.write_text(json.dumps(
        [eye, [["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]], zero]))
    assert run(["incidence", "hd-check", "--algebra", ut2,
                "--sequence", str(bad_path)]) == 1
    capsys.readouterr()
    assert run(["incidence", "hd-compose", "--algebra", ut2,
                "--d1", str(seq_path), "--d2", str(seq_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["mats"]) == 3


def test_der_local_cli(tmp_path, capsys):
    m8 = _write(tmp_path, "M8")
    phi = tmp_path / "phi.json"
    M = [["0"] * 8 for _ in range(8)]
    M[0][1] = "1"
    M[1][0] = "-1"
    phi.write_text(json.dumps(M))
    assert run(["der", "local", m8, "--phi", str(phi)]) == 0
    capsys.readouterr()
    M[1][0] = "1"  # symmetric: refuted
    phi.write_text(json.dumps(M))
    assert run(["der", "local", m8, "--phi", str(phi)]) == 1
    capsys.readouterr()


def test_poisson_customary_cli(tmp_path, capsys):
    tp4 = _write(tmp_path, "tp4")
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"m": 2, "terms": [
        {"c": "1", "pairs": [[1, 2]], "D": []},
        {"c": "1", "pairs": [[2, 1]], "D": []}]}))
    assert run(["poisson", "customary", tp4, "--g", str(g)]) == 0
    capsys.readouterr()
    g.write_text(json.dumps({"m": 2, "terms": [
        {"c": "1", "pairs": [[1, 2]], "D": []}]}))
    assert run(["poisson", "customary", tp4, "--g", str(g)]) == 1
    capsys.readouterr()


def test_kantor_product_with_op_flags(tmp_path, capsys):
    tp4 = _write(tmp_path, "tp4")
    assert run(["kantor", "product", "--a", tp4, "--b", tp4, "--u", "0",
                "--op-a", "bracket", "--op-b", "mul"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ops"][0]["table"] == []  # [[bracket, mul]] is zero on tp4


def test_catalog_round_trips_through_cli(tmp_path, capsys):
    """catalog get NAME | variety check passes the defining variety."""
    cases = [("sl2", {}, "lie"), ("NF", {"n": 3}, "leibniz"),
             ("octonions", {}, "alternative"),
             ("zinbiel-free1", {"n": 3}, "zinbiel"),
             ("tp4", {}, None)]
    for name, params, variety in cases:
        path = _write(tmp_path, name, params)
        if variety:
            assert run(["variety", "check", path, "--variety", variety]) == 0
        else:
            assert run(["poisson", "check", path, "--kind", "poisson"]) == 0
        capsys.readouterr()


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "nonassoc.cli", "catalog",
                           "list"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "octonions" in proc.stdout
