import json

import pytest

from padicembed import cli, polyarith


@pytest.fixture
def biquad_spec(tmp_path):
    path = tmp_path / "field.json"
    path.write_text(json.dumps({
        "defining_poly": ["1", "0", "-10", "0", "1"],
        "elements": {"sqrt2": {"num": ["0", "-9", "0", "1"], "den": "2"},
                     "sqrt3": {"num": ["0", "11", "0", "-1"], "den": "2"}}}))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    payload = json.loads(out)
    assert payload["schema_version"] == cli.SCHEMA_VERSION
    return code, payload["result"], out


def test_embed_with_generators(capsys, biquad_spec):
    code, res, _ = run_json(capsys, "embed", "--field", biquad_spec, "--generators", "sqrt2,sqrt3",
                            "--elements", "sqrt2")
    assert code == 0
    assert res["primitive"]["coefficients"] == [1, 1]
    assert set(res["valuations"].values()) == {0}
    p = res["p"]
    assert all(0 <= dgt < p for dgt in res["eta"]["digits"]) and len(res["eta"]["digits"]) == 64


def test_embed_quadratic_and_cyclotomic(capsys):
    code, res, _ = run_json(capsys, "embed", "--poly", "x^2-2", "--elements", "alpha")
    assert code == 0 and res["p"] == 7
    assert res["eta"]["digits"][:2] == [3, 1]            # 10 = 3 + 1*7
    assert res["skipped_primes"] == [[2, "B"], [3, "A"], [5, "A"]]
    code, res, _ = run_json(capsys, "embed", "--cyclotomic", "5", "--elements", "1+z")
    assert code == 0 and res["p"] == 11


def test_json_reports_are_byte_identical(capsys, biquad_spec):
    args = ("embed", "--field", biquad_spec, "--elements", "sqrt2,sqrt3,1+alpha")
    _, _, first = run_json(capsys, *args)
    _, _, second = run_json(capsys, *args)
    assert first == second
    assert first == json.dumps(json.loads(first), sort_keys=True) + "\n"


def test_exit_codes(capsys, biquad_spec, monkeypatch):
    assert run(capsys, "embed", "--poly", "x^2-2", "--elements", "alpha", "--p-max", "5")[0] == 4
    monkeypatch.setenv(cli.P_MAX_ENV, "5")
    assert run(capsys, "embed", "--poly", "x^2-2", "--elements", "alpha")[0] == 4
    monkeypatch.delenv(cli.P_MAX_ENV)
    assert run(capsys, "embed", "--poly", "x^2-", "--elements", "alpha")[0] == 2
    assert run(capsys, "primitive", "--field", biquad_spec, "--generators", "sqrt2")[0] == 3
    assert run(capsys, "embed", "--field", "/nonexistent.json")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["embed", "--precision", "notanumber"])
    assert exc.value.code == 2


def test_internal_assertion_exit_code(capsys, monkeypatch):
    from padicembed import modular

    def broken(*a, **k):
        raise modular.InternalAssertionFailed("boom")
    monkeypatch.setattr(modular, "generic_prime", broken)
    assert run(capsys, "generic-prime", "--poly", "x^2+1")[0] == 5


def test_primitive_and_coords(capsys, biquad_spec):
    code, res, _ = run_json(capsys, "primitive", "--field", biquad_spec)
    assert res["coefficients"] == [1, 1] and res["min_poly"] == ["1", "0", "-10", "0", "1"]
    code, res, _ = run_json(capsys, "coords", "--field", biquad_spec, "--elements", "sqrt2,3/4")
    assert res["elements"]["sqrt2"]["b"] == "2" and res["elements"]["sqrt2"]["a"] == ["0", "-9", "0", "1"]
    assert res["elements"]["3/4"]["b"] == "4" and res["elements"]["sqrt2"]["passed"]


def test_heights_command(capsys):
    code, res, _ = run_json(capsys, "heights", "--poly", "[-2, 0, 1]")
    assert abs(res["mahler"] - 2) < 1e-12 and res["passed"] and abs(res["h"] - 0.34657359) < 1e-8


def test_prime_commands(capsys):
    assert run_json(capsys, "simple-root-prime", "--poly", "x^2-2", "--Q", "6")[1]["p"] == 7
    res = run_json(capsys, "generic-prime", "--poly", "x^2+x+3")[1]
    assert (res["case"], res["p"], res["bound"]) == (1, 3, "3")


def test_verify_lemmas_command(capsys):
    code, res, _ = run_json(capsys, "verify-lemmas", "--poly", "x^2+1", "--ell", "5", "--L", "10,37",
                            "--product-L", "255")
    assert code == 0 and res["passed"] and res["product"]["passed"] and res["product"]["omega_ratio"] > 1


def test_delta_bounds_sharpness(capsys):
    res = run_json(capsys, "delta", "--m", "20", "--ell", "41")[1]
    assert res["delta"] == 2 and res["root_count"] == 8 and res["exact"]
    res = run_json(capsys, "bounds", "--name", "generic_prime",
                   "--inputs", '{"case": 2, "H": 1, "d": 2, "M": 2}', "--empirical", "5")[1]
    assert res["bound_value"] == pytest.approx(32) and res["passed"]
    assert run_json(capsys, "sharpness", "primes", "--n", "2", "--R", "3")[1]["p"] == 17
    res = run_json(capsys, "sharpness", "quadratic", "--k", "15", "--t", "2", "--samples", "50")[1]
    assert res["passed"] and res["min_height"] > 5


def test_verify_all_quick(capsys):
    code, res, _ = run_json(capsys, "verify-all", "--scope", "quick")
    assert code == 0 and res["ok"] and res["total_checks"] >= 900


def test_verify_all_fault_injection(capsys, monkeypatch):
    real = polyarith.discriminant
    monkeypatch.setattr(polyarith, "discriminant", lambda f: -real(f))
    code, out, _ = run(capsys, "verify-all", "--scope", "quick")
    assert code == 1
    assert "FAIL discriminant_bound" in out
