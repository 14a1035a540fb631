"""End-to-end runs of the batch front end, in process."""

import io
import json
import sys

import pytest

from affineschur.cli import run
from affineschur.hecke import HeckeElement, t_basis
from affineschur.laurent import Laurent
from affineschur.quantum import TensorVector
from affineschur.schur import SchurElement
from affineschur.weyl import WindowPerm


def invoke(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_weyl_core_exits_zero(monkeypatch, capsys):
    code, out, err = invoke(
        ["verify", "weyl-core", "--r", "3", "--len", "6", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "weyl-core"
    assert report["failed"] == 0
    assert all(c["status"] == "pass" for c in report["checks"])


def test_hecke_mul_generator_square(monkeypatch, capsys):
    s1 = t_basis(WindowPerm.s(3, 1)).to_obj()
    code, out, _ = invoke(
        ["hecke", "mul", "--json"], stdin=json.dumps([s1, s1]),
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    got = HeckeElement.from_obj(json.loads(out))
    want = HeckeElement.unit(3).scale(Laurent.q()) + t_basis(WindowPerm.s(3, 1)).scale(
        Laurent.q() - 1
    )
    assert got == want


def test_malformed_window_exits_two(monkeypatch, capsys):
    code, out, err = invoke(
        ["weyl", "length"], stdin='{"r": 3, "window": [1, 1, 3]}',
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 2
    assert out == ""
    assert "residue" in err


def test_empty_stdin_exits_two(monkeypatch, capsys):
    code, _, err = invoke(["hecke", "mul"], stdin="", monkeypatch=monkeypatch, capsys=capsys)
    assert code == 2
    assert "JSON" in err


def test_reports_are_byte_identical(monkeypatch, capsys):
    argv = ["verify", "hecke-core", "--r", "3", "--seed", "7", "--json"]
    _, first, _ = invoke(argv, monkeypatch=monkeypatch, capsys=capsys)
    _, second, _ = invoke(argv, monkeypatch=monkeypatch, capsys=capsys)
    assert first == second


def test_report_checks_sorted_by_name(monkeypatch, capsys):
    code, out, _ = invoke(
        ["verify", "hecke-core", "--json"], monkeypatch=monkeypatch, capsys=capsys
    )
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    assert names == sorted(names)


def test_weyl_compose_round_trips(monkeypatch, capsys):
    a = WindowPerm.s(3, 1)
    b = WindowPerm.rho(3)
    code, out, _ = invoke(
        ["weyl", "compose", "--json"], stdin=json.dumps([a.to_obj(), b.to_obj()]),
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    assert WindowPerm.from_obj(json.loads(out)) == a * b


def test_schur_phi_round_trips(monkeypatch, capsys):
    payload = {"n": 3, "r": 3, "lambda": [2, 1, 0], "mu": [1, 1, 1], "d": {"window": [1, 2, 3]}}
    code, out, _ = invoke(
        ["schur", "phi", "--json"], stdin=json.dumps(payload),
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    elt = SchurElement.from_obj(json.loads(out))
    assert not elt.is_zero()
    assert SchurElement.from_obj(elt.to_obj()) == elt


def test_quantum_act_matches_direct_computation(monkeypatch, capsys):
    payload = {
        "element": {"n": 3, "terms": [{"word": [["E", 1]], "coeff": {"0": 1}}]},
        "vector": {"n": 3, "r": 2, "terms": [{"key": [2, 2], "coeff": {"0": 1}}]},
    }
    code, out, _ = invoke(
        ["quantum", "act", "--json"], stdin=json.dumps(payload),
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    got = TensorVector.from_obj(json.loads(out))
    want = TensorVector(3, 2, {(1, 2): Laurent.v(-1), (2, 1): Laurent.one()})
    assert got == want


def test_quantum_kappa_reports_exponents(monkeypatch, capsys):
    payload = {
        "n": 3,
        "r": 3,
        "terms": [
            {"lambda": [2, 1, 0], "mu": [2, 1, 0], "d": {"window": [1, 2, 3]}, "coeff": {"0": 1}}
        ],
    }
    code, out, _ = invoke(
        ["quantum", "kappa", "--json"], stdin=json.dumps(payload),
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    rows = json.loads(out)["exponents"]
    assert rows == [{"lambda": [2, 1, 0], "f": -2, "g": 0}]


def test_theta_help_documents_the_summation(monkeypatch, capsys):
    code, out, _ = invoke(["schur", "theta", "--help"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0
    assert "Kazhdan-Lusztig" in out
    assert "coset" in out


def test_failed_check_maps_to_exit_one(monkeypatch, capsys):
    import affineschur.cli as cli
    from affineschur.verify import SuiteReport

    rep = SuiteReport("weyl-core", {"r": 3}, [("broken", False, {"why": "forced"})], 0.0)
    monkeypatch.setattr(cli, "run_suite", lambda name, **kw: rep)
    code, out, err = invoke(
        ["verify", "weyl-core", "--json"], monkeypatch=monkeypatch, capsys=capsys
    )
    assert code == 1
    body = json.loads(out)
    assert body["failed"] == 1
    assert body["checks"][0]["witness"] == {"why": "forced"}


def test_unknown_suite_exits_two(monkeypatch, capsys):
    code, _, _ = invoke(["verify", "nonsense"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 2


@pytest.mark.parametrize("argv", [["weyl", "length"], ["quantum", "tau"]])
def test_not_json_exits_two(argv, monkeypatch, capsys):
    code, _, err = invoke(argv, stdin="not json {", monkeypatch=monkeypatch, capsys=capsys)
    assert code == 2
    assert "JSON" in err