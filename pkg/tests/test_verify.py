import json
import math

import numpy as np
import pytest

from degdirac import verify as vf
from degdirac.fields import ZERO, Linear, Sinusoid
from degdirac.scenario import ScenarioError, builtin_scenario_text, parse_scenario
from degdirac.solutions import DegenerateParams, potential_family, spinor, validate_params

from conftest import ORIGIN


@pytest.fixture(scope="module")
def default_report():
    return vf.run_suite(parse_scenario(builtin_scenario_text("default")))


class TestResidual:
    def test_zero_fields(self, p0, events):
        for e in events:
            assert vf.dirac_residual(p0, ZERO, ZERO, ZERO, e)[1] < 1e-12

    def test_random_fields(self, rng):
        for p in vf.sample_params(rng, 100):
            h, g, s = vf.random_field(rng), vf.random_field(rng), vf.random_field(rng)
            e = vf.sample_events(rng, 1)[0]
            assert vf.dirac_residual(p, h, g, s, e)[1] < 1e-9

    def test_finite_difference_mode(self, rng):
        for p in vf.sample_params(rng, 50):
            h = vf.random_field(rng)
            e = vf.sample_events(rng, 1)[0]
            assert vf.dirac_residual(p, h, h.partial(3), ZERO, e, mode="finite-difference")[1] < 1e-5

    def test_mass_offset_gives_offset_times_norm(self, p0, events):
        for e in events[:20]:
            _, n = vf.dirac_residual(p0, ZERO, ZERO, ZERO, e, mass_offset=0.1)
            assert n == pytest.approx(0.1 * math.sqrt(2), rel=1e-10)

    def test_as_printed_fails(self, p0):
        assert vf.dirac_residual(p0, ZERO, ZERO, ZERO, ORIGIN, as_printed=True)[1] > 1.0

    def test_wrong_potential_fails(self, p0):
        b = potential_family(p0, ZERO, ZERO, ZERO, ORIGIN)
        _, n = vf.residual_with(p0, ZERO, ORIGIN, (b[0] + 0.1, *b[1:]))
        assert n == pytest.approx(0.1 * math.sqrt(2), rel=1e-10)

    def test_unknown_mode(self, p0):
        with pytest.raises(ValueError):
            vf.dirac_residual(p0, ZERO, ZERO, ZERO, ORIGIN, mode="spectral")

    def test_fd_gradient_second_order(self, p0):
        h = Sinusoid(0.7, 0.2, -0.4, 0.3, 0.5)
        e = np.array([0.3, -0.2, 0.5, 1.1])
        from degdirac.solutions import spinor_gradient
        exact = spinor_gradient(p0, h, e)
        e1 = np.abs(vf.fd_spinor_gradient(p0, h, e, 1e-2) - exact).max()
        e2 = np.abs(vf.fd_spinor_gradient(p0, h, e, 1e-3) - exact).max()
        assert 80 < e1 / e2 < 120


class TestDegeneracy:
    def test_not_degenerate(self):
        dag, tr = vf.degeneracy_check(np.array([1, 0, 0, 0], dtype=complex))
        assert abs(dag) > 0.5

    def test_zero_spinor(self):
        assert vf.degeneracy_check(np.zeros(4, dtype=complex)) == (0, 0)

    def test_family_is_degenerate(self, rng):
        for p in vf.sample_params(rng, 200, min_denom=1e-3, min_cos_sum=1e-3, min_sin_diff=1e-3):
            psi = spinor(p, vf.random_field(rng), vf.sample_events(rng, 1)[0])
            dag, tr = vf.degeneracy_check(psi)
            nrm = np.vdot(psi, psi).real
            assert abs(dag) <= 1e-12 * nrm
            assert abs(tr) / nrm > 0.0


class TestSpin:
    def test_origin(self, p0):
        s = vf.spin_expectation(spinor(p0, ZERO, ORIGIN))
        assert s == pytest.approx((0.68301270189221932338, 0.0, 0.18301270189221932338), abs=1e-14)

    def test_closed_matches_bilinear(self, rng):
        for p in vf.sample_params(rng, 100):
            e = vf.sample_events(rng, 1)[0]
            a = vf.spin_expectation(spinor(p, vf.random_field(rng), e))
            b = vf.spin_closed(p, e)
            assert np.allclose(a, b, atol=1e-12 * abs(p.c1) ** 2)

    def test_zero_amplitude(self):
        p = DegenerateParams(math.pi / 3, math.pi / 12, 1.0, 0j)
        assert vf.spin_closed(p, ORIGIN) == (0.0, 0.0, 0.0)

    def test_rotates_with_phase(self, p0, events):
        perp0 = math.hypot(*vf.spin_closed(p0, ORIGIN)[:2])
        for e in events[:20]:
            s = vf.spin_closed(p0, e)
            assert math.hypot(s.sx, s.sy) == pytest.approx(perp0, rel=1e-12)


class TestSync:
    def test_p0_antiparallel(self, p0, events):
        for e in events:
            angle, kind = vf.sync_check(p0, e)
            assert angle < 1e-9 and kind == "antiparallel"

    def test_sign_rule(self, rng):
        for p in vf.sample_params(rng, 100):
            expected = "parallel" if math.cos(p.alpha - p.beta) * math.cos(p.alpha) * math.cos(p.beta) < 0 \
                else "antiparallel"
            assert vf.sync_check(p, ORIGIN)[1] == expected

    def test_consistent_over_events(self, rng):
        for p in vf.sample_params(rng, 50):
            kinds = {vf.sync_check(p, e)[1] for e in vf.sample_events(rng, 10)}
            assert len(kinds) == 1

    def test_degenerate_direction(self):
        # alpha - beta = pi/2 makes sin 2a + sin 2b, and so the transverse spin, vanish
        p = validate_params(DegenerateParams(0.4, 0.4 - math.pi / 2, 1.0))
        with pytest.raises(vf.DegenerateDirection):
            vf.sync_check(p, ORIGIN)

    def test_massless(self):
        p = validate_params(DegenerateParams(math.pi / 3, math.pi / 12, 0.0))
        with pytest.raises(vf.DegenerateDirection):
            vf.sync_check(p, ORIGIN)


class TestSampling:
    def test_bounds(self, rng):
        for p in vf.sample_params(rng, 300):
            assert abs(p.denom) >= 0.5 and abs(p.cos_sum) >= 0.2 and abs(p.sin_diff) >= 0.2
            assert 0.2 <= p.mass <= 1.0

    def test_events_in_box(self, rng):
        ev = vf.sample_events(rng, 500, box=2.0)
        assert ev.shape == (500, 4) and np.abs(ev).max() <= 2.0


class TestSuite:
    def test_default_passes(self, default_report):
        failed = [c.name for c in default_report.checks if not c.passed]
        assert failed == []

    def test_check_names_unique(self, default_report):
        names = [c.name for c in default_report.checks]
        assert len(names) == len(set(names))

    def test_findings(self, default_report):
        f = {x["name"]: x for x in default_report.findings}
        assert f["a0_sign"]["max_residual_as_printed"] > 1.0
        assert f["a0_sign"]["max_residual_verified"] < 1e-12
        assert f["constant_s_magnetic_field"]["max_relative_error_as_printed"] > 0.1

    def test_json_schema(self, default_report):
        d = json.loads(default_report.to_json())
        assert d["schema_version"] == 1 and d["seed"] == 42
        assert d["summary"]["failed"] == 0 and d["summary"]["total"] == len(d["checks"])
        for c in d["checks"]:
            assert set(c) == {"name", "samples", "max_residual", "tolerance", "pass", "notes"}

    def test_deterministic(self, default_report):
        again = vf.run_suite(parse_scenario(builtin_scenario_text("default")))
        assert again.to_json() == default_report.to_json()

    def test_corrupted_mass_fails(self):
        rep = vf.run_suite(parse_scenario(builtin_scenario_text("corrupted_mass").replace(
            "run.samples = 1000", "run.samples = 50")))
        assert not rep.all_passed
        for name in ("residual_general", "residual_simplified", "residual_family"):
            c = rep.check(name)
            assert not c.passed
            assert c.max_residual == pytest.approx(0.1 * math.sqrt(2), rel=1e-9)

    def test_degenerate_raises(self):
        with pytest.raises(ScenarioError) as exc:
            parse_scenario(builtin_scenario_text("degenerate_angles"))
        assert exc.value.key == "alpha/beta"

    def test_seed_changes_events(self):
        sc = parse_scenario(builtin_scenario_text("default").replace("run.samples = 1000", "run.samples = 20"))
        a = vf.run_suite(sc, seed=1).check("residual_general").max_residual
        b = vf.run_suite(sc, seed=2).check("residual_general").max_residual
        assert a != b

    def test_nontrivial_fields(self):
        text = builtin_scenario_text("default").replace("run.samples = 1000", "run.samples = 100")
        text = text.replace("h.kind = zero", "h.kind = sinusoid\nh.amplitude = 0.8\nh.k = [0.3, 0.2, -0.5, 0.4]")
        text = text.replace("g.kind = zero", "g.kind = linear\ng.k = [0.1, 0.2, 0.3, 0.4]")
        text = text.replace("s.kind = zero", "s.kind = constant\ns.value = 0.5")
        rep = vf.run_suite(parse_scenario(text))
        assert [c.name for c in rep.checks if not c.passed] == []

    def test_tolerance_override(self):
        sc = parse_scenario(builtin_scenario_text("default").replace("run.samples = 1000", "run.samples = 20"))
        rep = vf.run_suite(sc, tolerances={"residual": 1e-30})
        assert not rep.check("residual_general").passed
