"""Numerical verification battery for the identities the library satisfies.

Each identity draws seeded random sample points, measures a residual that
is zero in exact arithmetic, and grades it against a tolerance. Residuals
of identities whose sides grow with t are scaled by 1/(1+|reference|), so
one tolerance works across identities; the rest are absolute.

Seeding is per identity (a string mix of the seed and the identity name),
so a single identity produces the same report whether it runs alone or as
part of the full battery.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .antidiff import (
    antidifference,
    cos_antidifference,
    definite_sum,
    exp_antidifference,
    gamma_ratio_product,
    mueller_sum,
    offset_residual,
    periodic_antidifference,
    resolvent_sum,
    sin_antidifference,
)
from .errors import DomainError
from .numkit import digamma, floor_mod, ln_gamma
from .opalgebra import factorization_identity_check

IDENTITY_NAMES = (
    "digamma",
    "lngamma",
    "gammaratio",
    "exponential",
    "sincos",
    "mueller",
    "offset",
    "factor-e2minus4",
    "factor-e2plus1",
    "periodic",
    "fundamental",
)

_INTEGER_MARGIN = 1e-6


def fmt17(x: float) -> str:
    """Shortest-field rendering at 17 significant digits (binary64-exact)."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # fold -0.0 so renderings stay sign-stable
    return format(x, ".17g")


@dataclass
class VerifyReport:
    """Residual summary for one identity; passed iff max residual <= tol."""

    name: str
    samples: int
    max_abs_residual: float
    passed: bool
    witnesses: list[float] = field(default_factory=list)

    def format_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{self.name}: samples={self.samples} "
            f"max_abs_residual={fmt17(self.max_abs_residual)} {status}"
        )
        if self.witnesses:
            shown = ",".join(fmt17(w) for w in self.witnesses[:5])
            line += f" witnesses=[{shown}]"
        return line


def _draw_noninteger(rng: random.Random, lo: float, hi: float) -> float:
    while True:
        t = rng.uniform(lo, hi)
        if abs(t - round(t)) > _INTEGER_MARGIN:
            return t


def _digamma_residual(rng):
    t = _draw_noninteger(rng, 0.0, 20.0)
    frac = t - math.floor(t)
    tail = 0.0
    for s in range(1, math.floor(t) + 1):
        tail += 1.0 / (t - s)
    return t, abs(digamma(t) - digamma(frac) - tail)


def _lngamma_residual(rng):
    t = _draw_noninteger(rng, 0.0, 20.0)
    frac = t - math.floor(t)
    log_sum = 0.0
    for s in range(1, math.floor(t) + 1):
        log_sum += math.log(t - s)
    return t, abs(log_sum - (ln_gamma(t) - ln_gamma(frac)))


def _gammaratio_residual(rng):
    t = _draw_noninteger(rng, 0.0, 20.0)
    frac = t - math.floor(t)
    ref = math.exp(ln_gamma(t) - ln_gamma(frac))
    return t, abs(gamma_ratio_product(t) - ref) / (1.0 + abs(ref))


_EXP_BASES = (0.5, 2.0, 3.0)


def _exponential_residual(rng, i):
    a = _EXP_BASES[i % len(_EXP_BASES)]
    t = rng.uniform(1.0, 12.0)
    frac = t - math.floor(t)
    defect = antidifference(lambda u: a**u, t).value - exp_antidifference(a, t)
    expected = -(a**frac) / (a - 1.0)
    return t, abs(defect - expected) / (1.0 + abs(expected))


def _sincos_residual(rng):
    t = rng.uniform(0.0, 20.0)
    rs = abs(sin_antidifference(t + 1.0) - sin_antidifference(t) - math.sin(t))
    rc = abs(cos_antidifference(t + 1.0) - cos_antidifference(t) - math.cos(t))
    return t, max(rs, rc)


_MUELLER_BASES = (0.3, 0.5, 0.9)


def _mueller_residual(rng, i):
    a = _MUELLER_BASES[i % len(_MUELLER_BASES)]
    f = lambda u: a**u
    x = rng.uniform(0.1, 10.0)

    def defect(u):
        return mueller_sum(f, u).value - resolvent_sum(f, u, 1.0).value

    return x, abs(defect(x + 1.0) - defect(x))


def _offset_residual_max(rng):
    x = _draw_noninteger(rng, 0.0, 20.0)
    r1 = offset_residual(digamma, lambda u: 1.0 / u, x)
    r2 = offset_residual(ln_gamma, math.log, x)
    return x, max(abs(r1), abs(r2))


_FACTOR_CORPUS = (
    lambda u: 1.0,
    math.sin,
    math.cos,
    lambda u: 0.5**u,
    lambda u: 1.0 / (1.0 + u * u),
)


def _factor_residual(rng, name):
    t = rng.uniform(0.0, 12.0)
    f = _FACTOR_CORPUS[rng.randrange(len(_FACTOR_CORPUS))]
    gap = factorization_identity_check(name, f, t)
    if name == "E2minus4":
        scale = sum(4.0**s * f(t - 2.0 * s) for s in range(1, max(floor_mod(t, 2.0).n, 0) + 1))
    else:
        scale = sum(
            (-1.0) ** (s - 1) * f(t - 2.0 * s)
            for s in range(1, max(floor_mod(t, 2.0).n, 0) + 1)
        )
    return t, gap / (1.0 + abs(scale))


_PERIODIC_CASES = (
    (lambda x: math.sin(2.0 * math.pi * x), 1.0),
    (lambda x: math.cos(math.pi * x), 2.0),
    (lambda x: 0.5 + math.cos(2.0 * math.pi * x / 3.0), 3.0),
)


def _periodic_residual(rng, i):
    f, T = _PERIODIC_CASES[i % len(_PERIODIC_CASES)]
    t = rng.uniform(0.0, 12.0)
    closed = periodic_antidifference(f, T, t)
    direct = antidifference(lambda u: f(T * u), t).value
    return t, abs(closed - direct) / (1.0 + abs(direct))


def _fundamental_residual(rng):
    n = rng.randint(1, 1000)
    via = definite_sum(lambda k: k * k, 1, n)
    closed = n * (n + 1) * (2 * n + 1) / 6.0
    return float(n), abs(via - closed)


def run_identity(name: str, samples: int = 200, tol: float = 1e-8, seed: int = 42) -> VerifyReport:
    """Run one identity battery and return its report."""
    if name not in IDENTITY_NAMES:
        raise DomainError(f"unknown identity {name!r}; known: {', '.join(IDENTITY_NAMES)}")
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples!r}")
    if tol < 0.0:
        raise DomainError(f"tolerance must be nonnegative, got {tol!r}")
    rng = random.Random(f"{seed}:{name}")
    max_resid = 0.0
    witnesses: list[float] = []
    for i in range(samples):
        if name == "digamma":
            t, r = _digamma_residual(rng)
        elif name == "lngamma":
            t, r = _lngamma_residual(rng)
        elif name == "gammaratio":
            t, r = _gammaratio_residual(rng)
        elif name == "exponential":
            t, r = _exponential_residual(rng, i)
        elif name == "sincos":
            t, r = _sincos_residual(rng)
        elif name == "mueller":
            t, r = _mueller_residual(rng, i)
        elif name == "offset":
            t, r = _offset_residual_max(rng)
        elif name == "factor-e2minus4":
            t, r = _factor_residual(rng, "E2minus4")
        elif name == "factor-e2plus1":
            t, r = _factor_residual(rng, "E2plus1")
        elif name == "periodic":
            t, r = _periodic_residual(rng, i)
        else:
            t, r = _fundamental_residual(rng)
        max_resid = max(max_resid, r)
        if r > tol:
            witnesses.append(t)
    return VerifyReport(name, samples, max_resid, not witnesses, witnesses)


def run_battery(
    identity: str = "all", samples: int = 200, tol: float = 1e-8, seed: int = 42
) -> list[VerifyReport]:
    """Run one named identity, or all of them in declaration order."""
    names = IDENTITY_NAMES if identity == "all" else (identity,)
    return [run_identity(name, samples=samples, tol=tol, seed=seed) for name in names]
