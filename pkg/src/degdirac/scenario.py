"""Scenario files: flat ``key = value`` text with dotted section keys.

Example::

    # canonical parameter point
    params.alpha = pi/3
    params.beta  = pi/12
    params.mass  = 1
    h.kind = zero
    s.0.kind = sinusoid
    s.0.amplitude = 0.5
    s.0.k = [0.4, 0.3, -0.7, 0.2]
    run.seed = 42

Numbers may be written as simple arithmetic in ``pi`` (``pi/3``, ``2*pi/5``).
A field (``h``, ``g``, ``s``) is either one term (``h.kind = ...``) or up to
eight numbered terms ``h.0.*`` .. ``h.7.*`` that are summed. Term kinds:

    zero
    constant   h.value
    linear     h.k = [k_t, k_x, k_y, k_z]
    sinusoid   h.amplitude, h.k, h.phase
    dh_dz      (g only) g = dh/dz, which selects the simplified potential

A missing field means zero.
"""

from __future__ import annotations

import ast
import math
import operator
import re
from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path

from .fields import ZERO, Constant, FieldSum, Linear, ScalarField, Sinusoid
from .solutions import DegenerateParams, ParamDegenerate, validate_params

MAX_TERMS = 8
FIELD_NAMES = ("h", "g", "s")

DEFAULT_TOLERANCES = {
    "exact": 1e-10,
    "residual": 1e-9,
    "fd_residual": 1e-5,
    "fd_rel": 1e-6,
    "degeneracy": 1e-12,
    "charge_floor": 0.05,
    "kappa": 1e-12,
    "spin": 1e-12,
    "angle": 1e-9,
    "poynting": 1e-9,
    "zero_potential": 1e-12,
    "free_residual": 1e-10,
    "si_rel": 5e-3,
    "resonance_rel": 1e-3,
    "order_min": 1.8,
    "order_max": 2.2,
}


class ScenarioError(ValueError):
    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_number(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_number(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_number(node.left), _eval_number(node.right))
    raise ValueError("not a number")


def parse_number(text: str) -> float:
    return _eval_number(ast.parse(text.strip(), mode="eval").body)


def _number(raw: dict, key: str, default=None) -> float:
    if key not in raw:
        if default is None:
            raise ScenarioError(key, "missing")
        return default
    try:
        v = parse_number(raw[key])
    except (ValueError, SyntaxError, ZeroDivisionError):
        raise ScenarioError(key, f"not a number: {raw[key]!r}") from None
    if not math.isfinite(v):
        raise ScenarioError(key, "must be finite")
    return v


def _integer(raw: dict, key: str, default: int) -> int:
    v = _number(raw, key, float(default))
    if v != int(v):
        raise ScenarioError(key, "must be an integer")
    return int(v)


def _vector(raw: dict, key: str) -> tuple[float, ...]:
    if key not in raw:
        raise ScenarioError(key, "missing")
    text = raw[key].strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ScenarioError(key, "expected [k_t, k_x, k_y, k_z]")
    try:
        vals = tuple(parse_number(t) for t in text[1:-1].split(","))
    except (ValueError, SyntaxError, ZeroDivisionError):
        raise ScenarioError(key, f"bad vector {text!r}") from None
    if len(vals) != 4:
        raise ScenarioError(key, "expected 4 components")
    return vals


def _term(raw: dict, prefix: str, allow_dh_dz: bool):
    kind = raw.get(f"{prefix}.kind", "").strip()
    if kind == "zero":
        return ZERO
    if kind == "constant":
        return Constant(_number(raw, f"{prefix}.value"))
    if kind == "linear":
        return Linear(*_vector(raw, f"{prefix}.k"))
    if kind == "sinusoid":
        return Sinusoid(_number(raw, f"{prefix}.amplitude", 1.0), *_vector(raw, f"{prefix}.k"),
                        _number(raw, f"{prefix}.phase", 0.0))
    if kind == "dh_dz" and allow_dh_dz:
        return "dh_dz"
    raise ScenarioError(f"{prefix}.kind", f"unknown kind {kind!r}")


_TERM_KEYS = {"kind", "value", "k", "amplitude", "phase"}


def _parse_field(raw: dict, name: str):
    keys = [k for k in raw if k.split(".")[0] == name]
    if not keys:
        return ZERO
    if f"{name}.kind" in raw:
        for k in keys:
            if k.count(".") != 1 or k.split(".")[1] not in _TERM_KEYS:
                raise ScenarioError(k, "unknown key")
        return _term(raw, name, allow_dh_dz=(name == "g"))
    idx = set()
    for k in keys:
        parts = k.split(".")
        if len(parts) != 3 or not parts[1].isdigit() or parts[2] not in _TERM_KEYS:
            raise ScenarioError(k, "unknown key")
        idx.add(int(parts[1]))
    if max(idx) >= MAX_TERMS:
        raise ScenarioError(f"{name}.{max(idx)}", f"at most {MAX_TERMS} terms")
    if idx != set(range(len(idx))):
        raise ScenarioError(name, "terms must be numbered 0, 1, 2, ... without gaps")
    return FieldSum(tuple(_term(raw, f"{name}.{i}", allow_dh_dz=False) for i in sorted(idx)))


def field_to_lines(name: str, f) -> list[str]:
    if f == "dh_dz":
        return [f"{name}.kind = dh_dz"]
    if f == ZERO:
        return [f"{name}.kind = zero"]
    # a bare term is written in single-term form, a sum with numbered terms
    numbered = isinstance(f, FieldSum)
    terms = f.terms
    if len(terms) > MAX_TERMS:
        raise ValueError(f"{name}: at most {MAX_TERMS} terms")
    out = []
    for i, t in enumerate(terms):
        pre = f"{name}.{i}" if numbered else name
        if isinstance(t, Constant):
            out += [f"{pre}.kind = constant", f"{pre}.value = {t.c!r}"]
        elif isinstance(t, Linear):
            out += [f"{pre}.kind = linear", f"{pre}.k = [{', '.join(map(repr, map(float, t.k)))}]"]
        elif isinstance(t, Sinusoid):
            out += [f"{pre}.kind = sinusoid", f"{pre}.amplitude = {t.amplitude!r}",
                    f"{pre}.k = [{', '.join(map(repr, map(float, t.k)))}]", f"{pre}.phase = {t.phase!r}"]
        else:
            raise TypeError(f"cannot serialize {t!r}")
    return out


@dataclass(frozen=True)
class Grid:
    t_min: float = 0.0
    t_max: float = 0.0
    n_t: int = 1
    z_min: float = 0.0
    z_max: float = 0.0
    n_z: int = 1
    x: float = 0.0
    y: float = 0.0


@dataclass
class Scenario:
    alpha: float
    beta: float
    mass: float = 1.0
    c1_re: float = 1.0
    c1_im: float = 0.0
    charge: float = 1.0
    h_spec: ScalarField = ZERO
    g_spec: object = ZERO  # ScalarField or "dh_dz"
    s_spec: ScalarField = ZERO
    grid: Grid = field(default_factory=Grid)
    seed: int = 42
    samples: int = 1000
    box: float = 5.0
    step: float = 1e-4
    mass_offset: float = 0.0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    report_path: str | None = None
    csv_path: str | None = None

    @property
    def params(self) -> DegenerateParams:
        return DegenerateParams(self.alpha, self.beta, self.mass, complex(self.c1_re, self.c1_im), self.charge)

    @property
    def h(self) -> ScalarField:
        return self.h_spec

    @property
    def g(self) -> ScalarField:
        return self.h_spec.partial(3) if self.g_spec == "dh_dz" else self.g_spec

    @property
    def s(self) -> ScalarField:
        return self.s_spec

    def validated_params(self):
        try:
            return validate_params(self.params)
        except ParamDegenerate as exc:
            raise ScenarioError("alpha/beta", f"parameter constraint violation, {exc}") from exc
        except ValueError as exc:
            raise ScenarioError("params", str(exc)) from exc

    def to_dict(self) -> dict:
        """Key/value view used in reports."""
        return dict(line.split(" = ", 1) for line in self.to_text().splitlines() if " = " in line)

    def to_text(self) -> str:
        lines = [
            f"params.alpha = {self.alpha!r}",
            f"params.beta = {self.beta!r}",
            f"params.mass = {self.mass!r}",
            f"params.c1_re = {self.c1_re!r}",
            f"params.c1_im = {self.c1_im!r}",
            f"params.charge = {self.charge!r}",
        ]
        for name in FIELD_NAMES:
            lines += field_to_lines(name, getattr(self, f"{name}_spec"))
        for f in dc_fields(Grid):
            lines.append(f"grid.{f.name} = {getattr(self.grid, f.name)!r}")
        lines += [
            f"run.seed = {self.seed}",
            f"run.samples = {self.samples}",
            f"run.box = {self.box!r}",
            f"run.step = {self.step!r}",
            f"run.mass_offset = {self.mass_offset!r}",
        ]
        lines += [f"tol.{k} = {v!r}" for k, v in self.tolerances.items()]
        if self.report_path:
            lines.append(f"output.report = {self.report_path}")
        if self.csv_path:
            lines.append(f"output.csv = {self.csv_path}")
        return "\n".join(lines) + "\n"


_LINE = re.compile(r"^([A-Za-z_][\w.]*)\s*=\s*(.*?)\s*$")


def _raw_pairs(text: str) -> dict[str, str]:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mt = _LINE.match(line)
        if not mt:
            raise ScenarioError(f"line {lineno}", f"cannot parse {line!r}")
        key, value = mt.groups()
        if key in raw:
            raise ScenarioError(key, "duplicate key")
        raw[key] = value
    return raw


_SCALAR_KEYS = {
    "params": {"alpha", "beta", "mass", "c1_re", "c1_im", "charge"},
    "grid": {f.name for f in dc_fields(Grid)},
    "run": {"seed", "samples", "box", "step", "mass_offset"},
    "output": {"report", "csv"},
}


def parse_scenario(text: str) -> Scenario:
    raw = _raw_pairs(text)
    for key in raw:
        section, _, rest = key.partition(".")
        if section in FIELD_NAMES:
            continue
        if section == "tol":
            if rest not in DEFAULT_TOLERANCES:
                raise ScenarioError(key, "unknown tolerance")
            continue
        if rest not in _SCALAR_KEYS.get(section, ()):
            raise ScenarioError(key, "unknown key")

    fs = {name: _parse_field(raw, name) for name in FIELD_NAMES}
    gdef = Grid()
    grid = Grid(
        t_min=_number(raw, "grid.t_min", gdef.t_min), t_max=_number(raw, "grid.t_max", gdef.t_max),
        n_t=_integer(raw, "grid.n_t", gdef.n_t),
        z_min=_number(raw, "grid.z_min", gdef.z_min), z_max=_number(raw, "grid.z_max", gdef.z_max),
        n_z=_integer(raw, "grid.n_z", gdef.n_z),
        x=_number(raw, "grid.x", gdef.x), y=_number(raw, "grid.y", gdef.y),
    )
    if grid.n_t < 1 or grid.n_z < 1:
        raise ScenarioError("grid", "counts must be >= 1")
    if grid.t_max < grid.t_min or grid.z_max < grid.z_min:
        raise ScenarioError("grid", "max must not be below min")
    tol = dict(DEFAULT_TOLERANCES)
    for k in DEFAULT_TOLERANCES:
        tol[k] = _number(raw, f"tol.{k}", DEFAULT_TOLERANCES[k])
    sc = Scenario(
        alpha=_number(raw, "params.alpha"),
        beta=_number(raw, "params.beta"),
        mass=_number(raw, "params.mass", 1.0),
        c1_re=_number(raw, "params.c1_re", 1.0),
        c1_im=_number(raw, "params.c1_im", 0.0),
        charge=_number(raw, "params.charge", 1.0),
        h_spec=fs["h"], g_spec=fs["g"], s_spec=fs["s"],
        grid=grid,
        seed=_integer(raw, "run.seed", 42),
        samples=_integer(raw, "run.samples", 1000),
        box=_number(raw, "run.box", 5.0),
        step=_number(raw, "run.step", 1e-4),
        mass_offset=_number(raw, "run.mass_offset", 0.0),
        tolerances=tol,
        report_path=raw.get("output.report"),
        csv_path=raw.get("output.csv"),
    )
    if sc.samples < 1:
        raise ScenarioError("run.samples", "must be >= 1")
    if not sc.step > 0:
        raise ScenarioError("run.step", "must be positive")
    if not sc.box > 0:
        raise ScenarioError("run.box", "must be positive")
    if sc.seed < 0:
        raise ScenarioError("run.seed", "must be non-negative")
    if sc.h_spec == "dh_dz" or sc.s_spec == "dh_dz":
        raise ScenarioError("h/s", "dh_dz is only valid for g")
    sc.validated_params()
    return sc


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def builtin_scenario_text(name: str) -> str:
    from importlib.resources import files

    res = files("degdirac") / "scenarios" / f"{name}.scenario"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled scenario named {name!r}")
    return res.read_text(encoding="utf-8")
