"""Command-line entry point.

    degdirac verify SCENARIO [--seed N] [--tol X] [--step H] [--out report.json]
    degdirac sample SCENARIO [OUT_CSV]
    degdirac freq PARTICLE (--denom X | --n N)
    degdirac resonance N ALPHA

SCENARIO is a path, or ``builtin:NAME`` for a bundled scenario (``default``,
``corrupted_mass``, ``degenerate_angles``).

Exit codes: 0 success, 1 check failure or no solution, 2 input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import electromagnetics as em
from .scenario import ScenarioError, builtin_scenario_text, parse_number, parse_scenario
from .solutions import DegenerateParams, NoSolution, ParamDegenerate, phase_d, potential_family, resonance_angles
from .verify import dirac_residual, run_suite, spin_closed

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

SAMPLE_COLUMNS = (
    "t", "x", "y", "z", "d", "a0", "a1", "a2", "a3",
    "Ex", "Ey", "Ez", "Bx", "By", "Bz",
    "Sx_spin", "Sy_spin", "Sz_spin", "Sz_poynting", "residual_norm",
)

PARTICLES = {
    "electron": em.ELECTRON_MASS_KG,
    "proton": em.PROTON_MASS_KG,
    "muon": em.MUON_MASS_KG,
}


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"degdirac: {msg}", file=sys.stderr)


def read_scenario(ref: str, args=None):
    if ref.startswith("builtin:"):
        try:
            text = builtin_scenario_text(ref.split(":", 1)[1])
        except FileNotFoundError as exc:
            raise InputError(str(exc)) from None
    else:
        try:
            text = Path(ref).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read scenario {ref!r}: {exc.strerror or exc}") from None
    sc = parse_scenario(text)
    if args is not None:
        if args.seed is not None:
            sc.seed = args.seed
        if args.step is not None:
            if not args.step > 0:
                raise ScenarioError("--step", "must be positive")
            sc.step = args.step
        if args.tol is not None:
            if not args.tol > 0:
                raise ScenarioError("--tol", "must be positive")
            sc.tolerances["residual"] = args.tol
    return sc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_verify(args) -> int:
    sc = read_scenario(args.scenario, args)
    report = run_suite(sc)
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<30} {c.max_residual:<12.4g} tol {c.tolerance:.3g}",
              file=sys.stderr)
    for f in report.findings:
        print(f"finding: {f['name']}", file=sys.stderr)
    out = args.out or sc.report_path
    _write(out, report.to_json() + "\n")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def sample_rows(sc):
    """Yield one dict per grid point, t outer and z inner."""
    p = sc.validated_params()
    h, g, s = sc.h, sc.g, sc.s
    gr = sc.grid
    for t in np.linspace(gr.t_min, gr.t_max, gr.n_t):
        for z in np.linspace(gr.z_min, gr.z_max, gr.n_z):
            e = (float(t), gr.x, gr.y, float(z))
            a = potential_family(p, h, g, s, e)
            f = em.em_fields(p, h, g, s, e)
            sp = spin_closed(p, e)
            _, res = dirac_residual(p, h, g, s, e, mass_offset=sc.mass_offset)
            yield dict(zip(SAMPLE_COLUMNS, (
                *e, phase_d(p, e), *a, *f.E, *f.B, *sp, em.poynting_from_fields(f)[2], res)))


def cmd_sample(args) -> int:
    sc = read_scenario(args.scenario, args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SAMPLE_COLUMNS)
    for row in sample_rows(sc):
        w.writerow([format(float(row[c]) + 0.0, ".17g") for c in SAMPLE_COLUMNS])
    _write(args.out_csv or args.out or sc.csv_path, buf.getvalue())
    return EXIT_OK


def _mass(particle: str) -> float:
    if particle in PARTICLES:
        return PARTICLES[particle]
    try:
        m = float(particle)
    except ValueError:
        raise InputError(f"unknown particle {particle!r}; use electron, proton, muon or a mass in kg") from None
    if not m > 0 or not math.isfinite(m):
        raise InputError(f"mass must be positive, got {particle}")
    return m


def _energy(ev: float) -> str:
    if ev >= 1e9:
        return f"{ev / 1e9:.6g} GeV"
    return f"{ev / 1e6:.6g} MeV"


def cmd_freq(args) -> int:
    m = _mass(args.particle)
    if args.n is not None:
        if args.n < 1:
            raise InputError("n must be >= 1")
        denom = 2.0 / args.n
    else:
        denom = parse_number(args.denom) if args.denom is not None else 1.0
    try:
        f, ev = em.si_convert(m, denom)
    except em.DomainError as exc:
        raise InputError(str(exc)) from None
    rest = m * em.sc.c**2 / em.sc.eV
    print(f"particle        {args.particle}")
    print(f"mass_kg         {m:.10g}")
    print(f"denominator     {denom:.10g}")
    print(f"frequency_hz    {f:.6e}")
    print(f"photon_energy   {_energy(ev)}")
    if args.n is not None:
        print(f"pair_energy_x_n {_energy(args.n * 2 * rest)}  (n = {args.n})")
    return EXIT_OK


def cmd_resonance(args) -> int:
    alpha = parse_number(args.alpha)
    try:
        beta = resonance_angles(args.n, alpha)
    except NoSolution as exc:
        _err(f"NoSolution: {exc}")
        return EXIT_FAIL
    except ParamDegenerate as exc:
        _err(f"ParamDegenerate: alpha/beta: {exc}")
        return EXIT_FAIL
    p = DegenerateParams(alpha, beta, 1.0)
    wd = em.wave_descriptor(p)
    print(f"n               {args.n}")
    print(f"alpha           {alpha:.10g}")
    print(f"beta            {beta:.10g}")
    print(f"cos2a-cos2b     {p.denom:.10g}")
    for cond, margin in p.margins().items():
        print(f"margin          {margin:.6g}  ({cond})")
    print("valid           yes")
    print(f"omega_d         {wd.omega_d:.10g}  (per unit mass)")
    print(f"k_d             {wd.k_d:.10g}")
    print(f"v_ph            {wd.v_ph:.10g}")
    print(f"f_electron_hz   {wd.f_si:.6e}")
    print(f"photon_energy   {_energy(wd.photon_energy_si)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed for event sampling")
    common.add_argument("--tol", type=float, default=None, help="tolerance for the analytic Dirac residual")
    common.add_argument("--step", type=float, default=None, help="finite-difference step")
    common.add_argument("--out", default=None, help="output path ('-' for stdout)")

    ap = argparse.ArgumentParser(prog="degdirac", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[common], help="write fields and spin on the scenario grid as CSV")
    p.add_argument("scenario")
    p.add_argument("out_csv", nargs="?")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("freq", parents=[common], help="SI frequency and photon energy")
    p.add_argument("particle", help="electron, proton, muon, or a mass in kg")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--denom", default=None, help="cos 2alpha - cos 2beta (default 1)")
    grp.add_argument("--n", type=int, default=None, help="use denominator 2/n")
    p.set_defaults(func=cmd_freq)

    p = sub.add_parser("resonance", parents=[common], help="beta with cos 2alpha - cos 2beta = 2/n")
    p.add_argument("n", type=int)
    p.add_argument("alpha", help="radians; pi arithmetic allowed")
    p.set_defaults(func=cmd_resonance)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ScenarioError, InputError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except (ValueError, SyntaxError) as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
