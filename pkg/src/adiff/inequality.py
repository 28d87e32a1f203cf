"""General solutions of first-order linear difference inequalities.

For y(t+h) - lam*y(t) >= 0 (or <= 0) with h > 0 and real lam != 0, the
general solution combines a homogeneous part and a sign-constrained
particular part:

    y(t) = |lam|^(t/h) * mu(t) + sum_{s=1..floor_h(t)} lam^(s-1) slack(t - s*h)

where mu is h-periodic when lam > 0 and h-antiperiodic when lam < 0 (so the
homogeneous part reproduces lam*y under the shift either way), and slack is
>= 0 for the >= inequality, <= 0 for <=. The shift then gives
y(t+h) - lam*y(t) = slack(t), which has the required sign.

Constraints are enforced by sampling, not proof: construction checks the
slack sign on the caller's range and mu's (anti)periodicity on [0, 4h],
64 points each by default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from .antidiff import RealFunction
from .errors import NonPositiveShift, PeriodicityViolation, SignViolation, ZeroLambda
from .numkit import floor_mod

MEMBERSHIP_TOL = 1e-10
SIGN_TOL = 1e-10
#: check_inequality flags direction violations below -1e-10 (GEQ) so that
#: boundary solutions with slack identically zero still pass.
BOUNDARY_TOL = 1e-10
SLACK_MATCH_TOL = 1e-9
DEFAULT_SAMPLES = 64


class Direction(enum.Enum):
    GEQ = "geq"
    LEQ = "leq"


class Periodicity(enum.Enum):
    PERIODIC = "periodic"
    ANTIPERIODIC = "antiperiodic"


@dataclass(frozen=True)
class InequalitySpec:
    """Parameters of y(t+h) - lam*y(t) {>=, <=} 0."""

    h: float
    lam: float
    direction: Direction

    def __post_init__(self):
        h = float(self.h)
        if not math.isfinite(h) or h <= 0.0:
            raise NonPositiveShift(f"h must be positive and finite, got {self.h!r}")
        lam = float(self.lam)
        if lam == 0.0 or not math.isfinite(lam):
            raise ZeroLambda(f"lambda must be a nonzero finite real, got {self.lam!r}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "lam", lam)
        if not isinstance(self.direction, Direction):
            object.__setattr__(self, "direction", Direction(self.direction))


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of an (anti)periodicity sampling check; falsy when it failed."""

    ok: bool
    witness: float | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_membership(
    mu: RealFunction,
    h: float,
    kind: Periodicity,
    t_samples: Sequence[float],
    tol: float = MEMBERSHIP_TOL,
) -> MembershipResult:
    """Sample mu(t+h) = mu(t) (PERIODIC) or = -mu(t) (ANTIPERIODIC).

    Tolerance is mixed: |difference| <= tol * (1 + |mu(t)|). Returns the
    first failing sample as witness instead of raising.
    """
    if not math.isfinite(h) or h <= 0.0:
        raise NonPositiveShift(f"h must be positive and finite, got {h!r}")
    sign = 1.0 if kind is Periodicity.PERIODIC else -1.0
    for t in t_samples:
        base = mu(t)
        if abs(mu(t + h) - sign * base) > tol * (1.0 + abs(base)):
            return MembershipResult(False, witness=t)
    return MembershipResult(True)


def _grid(lo: float, hi: float, count: int) -> list[float]:
    if count < 2:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


@dataclass
class SolutionFunction:
    """Constructed general solution; call it like a function of t."""

    spec: InequalitySpec
    mu: RealFunction
    slack: RealFunction

    def homogeneous(self, t: float) -> float:
        return abs(self.spec.lam) ** (t / self.spec.h) * self.mu(t)

    def particular(self, t: float) -> float:
        h, lam = self.spec.h, self.spec.lam
        n = max(floor_mod(t, h).n, 0)
        acc = 0.0
        w = 1.0
        for s in range(1, n + 1):
            acc += w * self.slack(t - s * h)
            w *= lam
        return acc

    def __call__(self, t: float) -> float:
        return self.homogeneous(t) + self.particular(t)


@dataclass
class InequalityReport:
    """check_inequality outcome over a sample set."""

    direction: Direction
    samples: int
    min_residual: float
    max_residual: float
    violations: list[float] = field(default_factory=list)
    max_slack_mismatch: float = 0.0
    passed: bool = True


def build_solution(
    spec: InequalitySpec,
    mu: RealFunction,
    slack: RealFunction,
    t_range: tuple[float, float] = (0.0, 10.0),
    samples: int = DEFAULT_SAMPLES,
) -> SolutionFunction:
    """Validate the ingredients by sampling, then assemble the solution.

    slack must be >= 0 (direction GEQ) or <= 0 (LEQ) across t_range; mu
    must be h-periodic for lam > 0 and h-antiperiodic for lam < 0, checked
    on [0, 4h]. Violations raise with the failing sample as witness.
    """
    lo, hi = t_range
    for t in _grid(lo, hi, samples):
        v = slack(t)
        if spec.direction is Direction.GEQ and v < -SIGN_TOL:
            raise SignViolation(
                f"slack({t!r}) = {v!r} is negative but the inequality direction is >=",
                witness=t,
            )
        if spec.direction is Direction.LEQ and v > SIGN_TOL:
            raise SignViolation(
                f"slack({t!r}) = {v!r} is positive but the inequality direction is <=",
                witness=t,
            )
    kind = Periodicity.PERIODIC if spec.lam > 0 else Periodicity.ANTIPERIODIC
    membership = check_membership(mu, spec.h, kind, _grid(0.0, 4.0 * spec.h, samples))
    if not membership:
        raise PeriodicityViolation(
            f"mu is not {kind.value} with period {spec.h} (fails at t = {membership.witness!r})",
            witness=membership.witness,
        )
    return SolutionFunction(spec, mu, slack)


def check_inequality(
    y: SolutionFunction, t_samples: Sequence[float]
) -> InequalityReport:
    """Evaluate r(t) = y(t+h) - lam*y(t) at each sample and grade it.

    Records the residual range, any sample where the residual crosses the
    direction boundary beyond BOUNDARY_TOL, and how far the residual drifts
    from slack(t) (they agree up to rounding of the homogeneous part).
    """
    spec = y.spec
    residuals = []
    report = InequalityReport(
        direction=spec.direction,
        samples=len(t_samples),
        min_residual=math.inf,
        max_residual=-math.inf,
    )
    for t in t_samples:
        r = y(t + spec.h) - spec.lam * y(t)
        residuals.append(r)
        report.min_residual = min(report.min_residual, r)
        report.max_residual = max(report.max_residual, r)
        if spec.direction is Direction.GEQ and r < -BOUNDARY_TOL:
            report.violations.append(t)
        elif spec.direction is Direction.LEQ and r > BOUNDARY_TOL:
            report.violations.append(t)
        expected = y.slack(t)
        mismatch = abs(r - expected) / (1.0 + abs(expected))
        report.max_slack_mismatch = max(report.max_slack_mismatch, mismatch)
    report.passed = not report.violations and report.max_slack_mismatch <= SLACK_MATCH_TOL
    return report
