import math

import pytest

from degdirac.fields import ZERO, Constant, FieldSum, Linear, Sinusoid
from degdirac.scenario import (DEFAULT_TOLERANCES, MAX_TERMS, ScenarioError, builtin_scenario_text,
                               load_scenario, parse_number, parse_scenario)

BASE = "params.alpha = pi/3\nparams.beta = pi/12\n"


def err_key(text):
    with pytest.raises(ScenarioError) as exc:
        parse_scenario(text)
    return exc.value.key


@pytest.mark.parametrize("text, value", [
    ("pi/3", math.pi / 3), ("2*pi/5", 2 * math.pi / 5), ("-pi", -math.pi), ("1e-4", 1e-4),
    ("(1 + 2) * 3", 9.0), ("pi**2", math.pi**2), ("+0.5", 0.5),
])
def test_parse_number(text, value):
    assert parse_number(text) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text", ["__import__('os')", "x", "abs(1)", "[1]", "'a'"])
def test_parse_number_rejects(text):
    with pytest.raises(ValueError):
        parse_number(text)


def test_defaults():
    sc = parse_scenario(BASE)
    assert sc.mass == 1.0 and sc.seed == 42 and sc.samples == 1000 and sc.step == 1e-4
    assert sc.h == ZERO and sc.g == ZERO and sc.s == ZERO
    assert sc.tolerances == DEFAULT_TOLERANCES


def test_builtin_default():
    sc = parse_scenario(builtin_scenario_text("default"))
    assert sc.alpha == pytest.approx(math.pi / 3) and sc.beta == pytest.approx(math.pi / 12)
    assert (sc.grid.n_t, sc.grid.n_z) == (5, 5)


def test_unknown_builtin():
    with pytest.raises(FileNotFoundError):
        builtin_scenario_text("nope")


def test_single_terms():
    sc = parse_scenario(BASE + "h.kind = sinusoid\nh.amplitude = 0.5\nh.k = [1, 2, 3, 4]\nh.phase = pi/4\n"
                        "g.kind = dh_dz\ns.kind = constant\ns.value = 2\n")
    assert sc.h == Sinusoid(0.5, 1, 2, 3, 4, math.pi / 4)
    assert sc.g == sc.h.partial(3)
    assert sc.s == Constant(2.0)


def test_numbered_terms():
    sc = parse_scenario(BASE + "s.0.kind = linear\ns.0.k = [1, 0, 0, 0]\ns.1.kind = constant\ns.1.value = 3\n")
    assert sc.s == FieldSum((Linear(1, 0, 0, 0), Constant(3.0)))
    assert sc.s.value((2, 0, 0, 0)) == 5.0


def test_max_terms():
    ok = "".join(f"h.{i}.kind = constant\nh.{i}.value = {i}\n" for i in range(MAX_TERMS))
    assert len(parse_scenario(BASE + ok).h.terms) == MAX_TERMS
    too_many = ok + f"h.{MAX_TERMS}.kind = zero\n"
    assert err_key(BASE + too_many) == f"h.{MAX_TERMS}"


def test_round_trip(tmp_path):
    text = (BASE + "params.mass = 0.7\nparams.c1_im = 0.25\nparams.charge = -2\n"
            "h.0.kind = sinusoid\nh.0.amplitude = 0.3\nh.0.k = [0.1, 0.2, 0.3, 0.4]\nh.0.phase = 1\n"
            "h.1.kind = linear\nh.1.k = [1, -1, 0, 2]\ng.kind = dh_dz\ns.kind = constant\ns.value = -0.5\n"
            "grid.n_t = 3\ngrid.t_max = 1\nrun.seed = 7\nrun.mass_offset = 0.01\ntol.residual = 1e-8\n"
            "output.report = r.json\n")
    sc = parse_scenario(text)
    again = parse_scenario(sc.to_text())
    assert again == sc
    p = tmp_path / "x.scenario"
    p.write_text(sc.to_text())
    assert load_scenario(p) == sc


def test_comments_and_blank_lines():
    sc = parse_scenario("# header\n\n" + BASE.replace("pi/3", "pi/3   # trailing"))
    assert sc.alpha == pytest.approx(math.pi / 3)


@pytest.mark.parametrize("extra, key", [
    ("params.gamma = 1\n", "params.gamma"),
    ("tol.bogus = 1\n", "tol.bogus"),
    ("params.mass = abc\n", "params.mass"),
    ("h.kind = cubic\n", "h.kind"),
    ("h.kind = dh_dz\n", "h.kind"),
    ("h.k = [1, 2]\nh.kind = linear\n", "h.k"),
    ("h.kind = linear\n", "h.k"),
    ("s.1.kind = zero\n", "s"),
    ("s.kind = zero\ns.0.kind = zero\n", "s.0.kind"),
    ("run.samples = 0\n", "run.samples"),
    ("run.step = -1\n", "run.step"),
    ("run.seed = 1.5\n", "run.seed"),
    ("grid.n_t = 0\n", "grid"),
    ("grid.t_min = 2\ngrid.t_max = 1\n", "grid"),
    ("params.mass = -1\n", "params"),
    ("params.charge = 0\n", "params"),
    ("params.alpha = 1\n", "params.alpha"),
])
def test_errors(extra, key):
    assert err_key(BASE + extra) == key


def test_missing_alpha():
    assert err_key("params.beta = 0.1\n") == "params.alpha"


def test_garbage_line():
    assert err_key(BASE + "this is not a pair\n") == "line 3"


@pytest.mark.parametrize("beta", ["pi/3", "pi/6", "pi/3 + pi"])
def test_degenerate_angles(beta):
    assert err_key(f"params.alpha = pi/3\nparams.beta = {beta}\n") == "alpha/beta"
