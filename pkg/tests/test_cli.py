import json
from fractions import Fraction

import pytest

from lpl.cli import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_REFUSED,
    InputError,
    main,
    parse_model,
    parse_problem,
    parse_rational,
    render_human,
    render_json,
    run,
    serialize_model,
)
from lpl.linalg import Subspace, vec

from conftest import FIXTURES


# ---------------------------------------------------------------------------
# rationals


def test_parse_rational():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(5) == Fraction(5)
    assert parse_rational("+2/4") == Fraction(1, 2)


def test_parse_rational_rejects_bad_input():
    for bad in ["1/0", "0.5", "1e3", "a", "1/ 2", "", "--3", None, 2.5]:
        with pytest.raises(InputError):
            parse_rational(bad)


# ---------------------------------------------------------------------------
# model files


def test_parse_model_round_trip(sl2, gl2, heisenberg):
    for algebra in (sl2, gl2, heisenberg):
        again = parse_model(serialize_model(algebra))
        assert again == algebra


def test_parse_model_errors():
    cases = [
        ("not json", "malformed"),
        (json.dumps([1, 2]), "object"),
        (json.dumps({"dim": 0}), "positive"),
        (json.dumps({"dim": 2, "basis": ["x"]}), "label"),
        (json.dumps({"dim": 2, "brackets": [{"i": 1, "j": 0}]}), "indices"),
        (
            json.dumps(
                {
                    "dim": 2,
                    "brackets": [
                        {"i": 0, "j": 1, "terms": [{"k": 0, "coefficient": "1/0"}]}
                    ],
                }
            ),
            "denominator",
        ),
        (
            json.dumps(
                {
                    "dim": 2,
                    "brackets": [
                        {"i": 0, "j": 1, "terms": [{"k": 5, "coefficient": "1"}]}
                    ],
                }
            ),
            "range",
        ),
    ]
    for text, needle in cases:
        with pytest.raises(InputError, match=needle):
            parse_model(text)


def test_parse_model_rejects_jacobi_failure():
    broken = {
        "dim": 3,
        "brackets": [
            {"i": 0, "j": 1, "terms": [{"k": 2, "coefficient": "-1"}]},
            {"i": 0, "j": 2, "terms": [{"k": 1, "coefficient": "-1"}]},
            {"i": 1, "j": 2, "terms": [{"k": 1, "coefficient": "1"}]},
        ],
    }
    with pytest.raises(InputError, match="Jacobi"):
        parse_model(json.dumps(broken))


# ---------------------------------------------------------------------------
# problem files


def test_parse_problem_fixture():
    text = (FIXTURES / "gl2_alt_slice.json").read_text()
    problem = parse_problem(text, base_dir=FIXTURES)
    assert problem.algebra.dim == 4
    assert problem.h == Subspace.span(
        4, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    )
    assert problem.base == vec([1, 0, 0, 0])
    assert problem.r == Subspace.span(4, [[0, 0, 1, 1]])


def test_parse_problem_defaults_and_overrides(sl2):
    data = {"h_basis": [["1", "0", "0"]]}
    problem = parse_problem(data, model_override=sl2, samples=7, seed=3)
    assert problem.base == vec([0, 0, 0])
    assert problem.r is None
    assert problem.sampling.count == 7 and problem.sampling.seed == 3


def test_parse_problem_errors(sl2):
    with pytest.raises(InputError, match="model"):
        parse_problem({"h_basis": []})
    with pytest.raises(InputError, match="h_basis"):
        parse_problem({}, model_override=sl2)
    with pytest.raises(InputError, match="rationals"):
        parse_problem({"h_basis": [["1", "0"]]}, model_override=sl2)


# ---------------------------------------------------------------------------
# command dispatch


def load_fixture_problem(name):
    text = (FIXTURES / name).read_text()
    return parse_problem(text, base_dir=FIXTURES)


def test_run_classify_sl2_transverse():
    report = run("classify", load_fixture_problem("sl2_transverse.json"))
    assert report["coisotropic"]["verdict"] is False
    assert report["pre_poisson"]["verdict"] == "certified_constant"
    assert report["pre_poisson"]["rank"] == 3
    assert report["cosymplectic_at_base"] is True


def test_run_classify_sl2_coisotropic():
    report = run("classify", load_fixture_problem("sl2_coisotropic.json"))
    assert report["coisotropic"]["verdict"] is True
    report = run("classify", load_fixture_problem("sl2_character.json"))
    assert report["coisotropic"]["verdict"] is True


def test_run_pair_gl2():
    report = run("pair", load_fixture_problem("gl2_prepoisson.json"))
    assert report["k"] == {
        "ambient_dim": 4,
        "basis": [["1", "0", "0", "0"], ["0", "0", "0", "1"]],
    }
    assert report["symmetric_pair"]["symmetric_pair"] is True
    assert report["induced_structure"]["brackets"] == []


def test_run_bracket_and_casimir(sl2):
    from lpl.cli import Problem
    from lpl.submanifold import SampleSpec

    problem = Problem(sl2, Subspace.zero(3), vec([0, 0, 0]), None, SampleSpec())
    rep = run("bracket", problem, ("nu1", "nu2"))
    assert rep["bracket"] == "-nu3"
    rep = run("casimir", problem, ("nu1^2 + nu2^2 - nu3^2",))
    assert rep["casimir"] is True
    rep = run("casimir", problem, ("nu1",))
    assert rep["casimir"] is False
    with pytest.raises(InputError):
        run("bracket", problem, ("nu1",))


# ---------------------------------------------------------------------------
# the executable


def test_main_validate_ok(capsys):
    assert main(["validate", "--model", "sl2.json"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "jacobi_ok: True" in out


def test_main_input_error(capsys):
    assert main(["classify", "--problem", "missing.json"]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_main_refuses_nonconstant_rank(capsys):
    assert main(["extend", "--problem", "gl2_line.json"]) == EXIT_REFUSED
    assert "refused:" in capsys.readouterr().err


def test_main_refuses_pair_for_moving_conormal(capsys):
    assert main(["pair", "--problem", "gl2_alt_slice.json"]) == EXIT_REFUSED
    assert "refused:" in capsys.readouterr().err


def test_main_classify_needs_problem(capsys):
    assert main(["classify", "--model", "sl2.json"]) == EXIT_INPUT_ERROR


def test_main_json_is_deterministic(capsys):
    args = ["classify", "--problem", "sl2_transverse.json", "--json"]
    assert main(args) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    parsed = json.loads(first)
    assert parsed["command"] == "classify"
    assert first == render_json(parsed)


def test_main_bracket_with_polynomials(capsys):
    assert main(["bracket", "--model", "sl2.json", "nu1", "nu3", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["bracket"] == "-nu2"


def test_main_bad_polynomial(capsys):
    assert main(["casimir", "--model", "sl2.json", "nu9"]) == EXIT_INPUT_ERROR


def test_render_human_nested():
    text = render_human({"a": {"b": 1}, "c": [{"d": "x"}], "e": True})
    assert "a:" in text and "b: 1" in text and "e: True" in text
    assert text.endswith("\n")
