"""Exponential-screened Coulomb potentials and the potential-string grammar.

Potential strings look like ``ecsc:A=1,delta=0.06,g=1`` or ``gesc:b=0.02``.
Families: ``ecsc``, ``gesc``, ``yukawa``, ``coulomb``.
"""
from dataclasses import dataclass, fields

import numpy as np


class PotentialParseError(ValueError):
    pass


@dataclass(frozen=True)
class ECSC:
    """-(A/r) exp(-delta1 r) cos(g delta2 r)."""

    delta1: float = 0.0
    delta2: float = 0.0
    A: float = 1.0
    g: float = 1.0

    family = "ecsc"

    @classmethod
    def screened(cls, delta, A=1.0, g=1.0):
        return cls(delta1=delta, delta2=delta, A=A, g=g)

    def __call__(self, r):
        return -self.A / r * np.exp(-self.delta1 * r) * np.cos(self.g * self.delta2 * r)


@dataclass(frozen=True)
class GESC:
    """-(a/r) [1 + (1 + b r) exp(-2 b r)]."""

    b: float = 0.0
    a: float = 1.0

    family = "gesc"

    def __call__(self, r):
        br = self.b * r
        return -self.a / r * (1.0 + (1.0 + br) * np.exp(-2.0 * br))


@dataclass(frozen=True)
class Coulomb:
    Z: float = 1.0

    family = "coulomb"

    def __call__(self, r):
        return -self.Z / r


@dataclass(frozen=True)
class Yukawa:
    delta: float = 0.0
    A: float = 1.0

    family = "yukawa"

    def __call__(self, r):
        return -self.A / r * np.exp(-self.delta * r)


PotentialSpec = ECSC | GESC | Coulomb | Yukawa

FAMILIES = {cls.family: cls for cls in (ECSC, GESC, Coulomb, Yukawa)}


def _validate(spec):
    for f in fields(spec):
        v = getattr(spec, f.name)
        if not np.isfinite(v):
            raise ValueError(f"{f.name} must be finite")
        if f.name in ("A", "a", "Z") and v <= 0:
            raise ValueError(f"{f.name} must be positive")
        if f.name not in ("A", "a", "Z") and v < 0:
            raise ValueError(f"{f.name} must be non-negative")


def evaluate(spec, r):
    """v(r) for ``r > 0``; accepts scalars or arrays."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("potential is singular at r <= 0")
    v = spec(r_arr)
    return float(v) if v.ndim == 0 else v


def effective_potential(spec, l, r):
    """l(l+1)/(2 r^2) + v(r)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    r_arr = np.asarray(r, dtype=float)
    v = evaluate(spec, r_arr)
    if l == 0:
        return v
    out = l * (l + 1) / (2.0 * r_arr ** 2) + v
    return float(out) if np.ndim(out) == 0 else out


def parse_potential(text):
    """Parse ``family:key=value,...``; unknown families or keys raise."""
    family, sep, body = text.strip().partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise PotentialParseError(f"unknown potential family {family!r}")
    params = {}
    if sep and body.strip():
        for item in body.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or not key:
                raise PotentialParseError(f"malformed parameter {item!r}")
            if key in params:
                raise PotentialParseError(f"duplicate parameter {key!r}")
            try:
                params[key] = float(value)
            except ValueError:
                raise PotentialParseError(f"bad value for {key!r}: {value!r}") from None

    if family == "ecsc":
        allowed = {"A", "g", "delta", "delta1", "delta2"}
        unknown = set(params) - allowed
        if unknown:
            raise PotentialParseError(f"unknown ecsc parameter(s): {sorted(unknown)}")
        if "delta" in params and ({"delta1", "delta2"} & set(params)):
            raise PotentialParseError("give either delta or delta1/delta2, not both")
        delta = params.pop("delta", None)
        if delta is not None:
            params["delta1"] = params["delta2"] = delta
        kwargs = params
    else:
        cls = FAMILIES[family]
        allowed = {f.name for f in fields(cls)}
        unknown = set(params) - allowed
        if unknown:
            raise PotentialParseError(f"unknown {family} parameter(s): {sorted(unknown)}")
        kwargs = params
    spec = FAMILIES[family](**kwargs)
    try:
        _validate(spec)
    except ValueError as exc:
        raise PotentialParseError(str(exc)) from None
    return spec


def _fmt(v):
    return repr(float(v)).removesuffix(".0") if float(v).is_integer() else repr(float(v))


def format_potential(spec):
    """Canonical string form; inverse of :func:`parse_potential`.

    Parameters equal to their defaults are omitted, and ECSC with
    delta1 == delta2 is written with a single ``delta`` key.
    """
    parts = []
    if isinstance(spec, ECSC):
        if spec.A != 1.0:
            parts.append(f"A={_fmt(spec.A)}")
        if spec.delta1 == spec.delta2:
            parts.append(f"delta={_fmt(spec.delta1)}")
        else:
            parts.append(f"delta1={_fmt(spec.delta1)}")
            parts.append(f"delta2={_fmt(spec.delta2)}")
        if spec.g != 1.0:
            parts.append(f"g={_fmt(spec.g)}")
    else:
        for f in fields(spec):
            value = getattr(spec, f.name)
            if value != f.default or f.name in ("b", "delta", "Z"):
                parts.append(f"{f.name}={_fmt(value)}")
    return f"{spec.family}:" + ",".join(parts)


def with_screening(spec, value):
    """Copy of ``spec`` with its screening parameter replaced."""
    if isinstance(spec, ECSC):
        return ECSC(delta1=value, delta2=value, A=spec.A, g=spec.g)
    if isinstance(spec, GESC):
        return GESC(b=value, a=spec.a)
    if isinstance(spec, Yukawa):
        return Yukawa(delta=value, A=spec.A)
    raise ValueError(f"{spec.family} has no screening parameter")
