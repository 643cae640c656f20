"""Real scalar fields on spacetime with exact analytic gradients.

The arbitrary functions h, g and s that parametrize the degenerate solutions
are drawn from a closed family: constants, linear forms, sinusoids and finite
sums of these. Every member knows its value and its four partial derivatives
in closed form, and :func:`fd_grad` provides an independent central-difference
oracle for them.

Coordinates are ordered ``(t, x, y, z)`` in natural units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

DEFAULT_STEP = 1e-4


class Event(NamedTuple):
    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0


class Gradient4(NamedTuple):
    d_t: float
    d_x: float
    d_y: float
    d_z: float


def as_event(e) -> Event:
    if isinstance(e, Event):
        return e
    t, x, y, z = (float(c) for c in e)
    return Event(t, x, y, z)


def _dot(k, e):
    return k[0] * e[0] + k[1] * e[1] + k[2] * e[2] + k[3] * e[3]


class ScalarField:
    """Base class; subclasses implement ``value`` and ``grad``."""

    def value(self, e) -> float:
        raise NotImplementedError

    def grad(self, e) -> Gradient4:
        raise NotImplementedError

    def partial(self, axis: int) -> "ScalarField":
        """Field equal to the derivative along coordinate ``axis`` (0=t .. 3=z)."""
        raise NotImplementedError

    @property
    def terms(self) -> tuple["ScalarField", ...]:
        return (self,)

    def __add__(self, other):
        if not isinstance(other, ScalarField):
            return NotImplemented
        return FieldSum(self.terms + other.terms)

    def scaled(self, factor: float) -> "ScalarField":
        raise NotImplementedError

    def __mul__(self, factor):
        if isinstance(factor, ScalarField):
            return NotImplemented
        return self.scaled(float(factor))

    __rmul__ = __mul__

    def __neg__(self):
        return self.scaled(-1.0)

    def __sub__(self, other):
        if not isinstance(other, ScalarField):
            return NotImplemented
        return self + (-other)

    def __call__(self, e) -> float:
        return self.value(e)


@dataclass(frozen=True)
class Constant(ScalarField):
    c: float = 0.0

    def value(self, e):
        return float(self.c)

    def grad(self, e):
        return Gradient4(0.0, 0.0, 0.0, 0.0)

    def partial(self, axis):
        return Constant(0.0)

    def scaled(self, factor):
        return Constant(self.c * factor)


@dataclass(frozen=True)
class Linear(ScalarField):
    """k_t t + k_x x + k_y y + k_z z."""

    k_t: float = 0.0
    k_x: float = 0.0
    k_y: float = 0.0
    k_z: float = 0.0

    @property
    def k(self):
        return (self.k_t, self.k_x, self.k_y, self.k_z)

    def value(self, e):
        return float(_dot(self.k, e))

    def grad(self, e):
        return Gradient4(*map(float, self.k))

    def partial(self, axis):
        return Constant(float(self.k[axis]))

    def scaled(self, factor):
        return Linear(*(k * factor for k in self.k))


@dataclass(frozen=True)
class Sinusoid(ScalarField):
    """A sin(k_t t + k_x x + k_y y + k_z z + phase)."""

    amplitude: float = 1.0
    k_t: float = 0.0
    k_x: float = 0.0
    k_y: float = 0.0
    k_z: float = 0.0
    phase: float = 0.0

    @property
    def k(self):
        return (self.k_t, self.k_x, self.k_y, self.k_z)

    def value(self, e):
        return self.amplitude * math.sin(_dot(self.k, e) + self.phase)

    def grad(self, e):
        c = self.amplitude * math.cos(_dot(self.k, e) + self.phase)
        return Gradient4(c * self.k_t, c * self.k_x, c * self.k_y, c * self.k_z)

    def partial(self, axis):
        # d/dx_mu [A sin(u)] = A k_mu cos(u) = A k_mu sin(u + pi/2)
        return Sinusoid(self.amplitude * self.k[axis], *self.k, self.phase + math.pi / 2)

    def scaled(self, factor):
        return Sinusoid(self.amplitude * factor, *self.k, self.phase)


@dataclass(frozen=True)
class FieldSum(ScalarField):
    parts: tuple[ScalarField, ...] = ()

    @property
    def terms(self):
        return self.parts

    def value(self, e):
        return float(sum(p.value(e) for p in self.parts))

    def grad(self, e):
        g = np.zeros(4)
        for p in self.parts:
            g += p.grad(e)
        return Gradient4(*map(float, g))

    def partial(self, axis):
        return FieldSum(tuple(p.partial(axis) for p in self.parts))

    def scaled(self, factor):
        return FieldSum(tuple(p.scaled(factor) for p in self.parts))


ZERO = Constant(0.0)


def field_eval(f: ScalarField, e) -> float:
    return f.value(e)


def field_grad(f: ScalarField, e) -> Gradient4:
    return f.grad(e)


def fd_grad(f: ScalarField, e, step: float = DEFAULT_STEP) -> Gradient4:
    """Central-difference gradient of ``f`` at ``e``; truncation error is O(step**2)."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    e = np.asarray(e, dtype=float)
    out = []
    for mu in range(4):
        de = np.zeros(4)
        de[mu] = step
        out.append((f.value(e + de) - f.value(e - de)) / (2.0 * step))
    return Gradient4(*out)
