"""Factored shift-operator algebra and nested-sum particular solutions.

An operator is an ordered product of linear factors (E^h - lam*I), where
E^h shifts the argument by h: (E^h y)(t) = y(t + h). Applying one factor
to y gives y(t+h) - lam*y(t); a product applies them in sequence (they
commute, which the test suite checks).

A particular solution of  product_i (E^{h_i} - lam_i I) y = f  is built by
composing single-factor resolvent sums: the innermost resolvent integrates
f, the next integrates that result, and so on. Unfolding the composition
yields exactly the nested sum

    y(t) = sum_{s_n} ... sum_{s_1} (prod_i lam_i^(s_i - 1)) f(t - sum_i s_i h_i)

with bound floor_{h_i}(t - sum of the outer offsets) on each level. The
composition memoizes inner values per call, which collapses the
multiplicative term count without changing any floating-point operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .antidiff import RealFunction
from .errors import DomainError, NonFiniteInput, NonPositiveShift, TermBudgetExceeded, ZeroLambda
from .numkit import floor_mod

Scalar = Union[float, complex]

_DEFAULT_MAX_TERMS = 10_000_000


@dataclass(frozen=True)
class LinearFactor:
    """One factor (E^h - lam*I) with positive shift h and nonzero lam."""

    h: float
    lam: complex

    def __post_init__(self):
        h = float(self.h)
        if not math.isfinite(h) or h <= 0.0:
            raise NonPositiveShift(f"factor shift must be positive and finite, got {self.h!r}")
        lam = complex(self.lam)
        if lam == 0:
            raise ZeroLambda("factor coefficient must be nonzero")
        if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
            raise NonFiniteInput(f"factor coefficient must be finite, got {self.lam!r}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class FactoredOperator:
    """Ordered product of linear factors; order never changes the result."""

    factors: tuple[LinearFactor, ...]

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise DomainError("operator needs at least one factor")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, Scalar]]) -> "FactoredOperator":
        """Build from (h, lam) pairs, e.g. [(1, 2), (1, -2)]."""
        return cls(tuple(LinearFactor(h, lam) for h, lam in pairs))


@dataclass(frozen=True)
class TermBudget:
    """Upper bound on summand evaluations a nested sum may require."""

    max_terms: int = _DEFAULT_MAX_TERMS

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError(f"budget must be positive, got {self.max_terms!r}")


def apply_operator(op: FactoredOperator, y: Callable[[float], Scalar], t: float) -> complex:
    """Apply the factored difference operator to y at t.

    Expands recursively: one factor contributes y(t+h) - lam*y(t); the rest
    of the product acts on both pieces. y is evaluated at every shifted
    point t + sum of a subset of the h_i.
    """
    factors = op.factors

    def expand(i: int, u: float) -> complex:
        if i < 0:
            return complex(y(u))
        f = factors[i]
        return expand(i - 1, u + f.h) - f.lam * expand(i - 1, u)

    return expand(len(factors) - 1, t)


def estimate_terms(op: FactoredOperator, t: float) -> int:
    """Product over factors of max(floor_h(t), 1): a bound on summand count."""
    total = 1
    for f in op.factors:
        total *= max(floor_mod(t, f.h).n, 1)
    return total


def _resolvent_layer(g: Callable[[float], complex], lam: complex, h: float):
    """Memoized single-factor resolvent over an inner complex-valued layer.

    The cache is local to this layer (hence to one particular_solution
    call) and keyed by the argument, so results are bit-reproducible.
    """
    cache: dict[float, complex] = {}

    def resolve(u: float) -> complex:
        hit = cache.get(u)
        if hit is not None:
            return hit
        n = max(floor_mod(u, h).n, 0)
        acc = 0j
        w = 1.0 + 0j
        for s in range(1, n + 1):
            acc += w * g(u - h * s)
            w *= lam
        cache[u] = acc
        return acc

    return resolve


def particular_solution(
    op: FactoredOperator, f: RealFunction, t: float, budget: TermBudget | None = None
) -> complex:
    """Particular solution of op y = f at t by composed resolvent sums.

    The factor list is folded left to right: factors[0] integrates f,
    factors[1] integrates that, and so on. The value equals the literal
    nested sum of the multi-factor solution formula term for term.
    Raises :class:`TermBudgetExceeded` if the nested-sum bound from
    :func:`estimate_terms` is above the budget before any evaluation.
    """
    if budget is None:
        budget = TermBudget()
    estimate = estimate_terms(op, t)
    if estimate > budget.max_terms:
        raise TermBudgetExceeded(
            f"nested sum needs up to {estimate} evaluations, budget is {budget.max_terms}"
        )
    g: Callable[[float], complex] = lambda u: complex(f(u))
    for factor in op.factors:
        g = _resolvent_layer(g, factor.lam, factor.h)
    return g(t)


def repeated_factor_solution(
    lam: Scalar, m: int, f: RealFunction, t: float, budget: TermBudget | None = None
) -> complex:
    """Particular solution of (E - lam*I)^m y = f: m identical unit-shift factors."""
    if m < 1 or m != int(m):
        raise DomainError(f"multiplicity must be a positive integer, got {m!r}")
    op = FactoredOperator(tuple(LinearFactor(1.0, lam) for _ in range(int(m))))
    return particular_solution(op, f, t, budget)


def verify_particular(
    op: FactoredOperator, f: RealFunction, t: float, budget: TermBudget | None = None
) -> float:
    """|op y_p - f| at t for the constructed particular solution y_p.

    This is the universal residual: zero (to rounding) for every operator,
    summand, and point within budget.
    """
    y_p = lambda u: particular_solution(op, f, u, budget)
    return abs(apply_operator(op, y_p, t) - f(t))


def _ipow(k: int) -> complex:
    """Exact k-th power of the imaginary unit."""
    return (1.0 + 0j, 1j, -1.0 + 0j, -1j)[k % 4]


def factorization_identity_check(name: str, f: RealFunction, t: float) -> float:
    """|LHS - RHS| of a two-route summation identity for E^2 - 4I or E^2 + I.

    Both routes compute (a scaled version of) the same particular solution:
    the left side runs the double sum from the conjugate/opposite factor
    pair, the right side the single sum with shift 2. ``name`` selects
    ``"E2minus4"``  (pair (E-2I)(E+2I), weights (-1)^(s1-1) 2^(s1+s2) vs
    4^s) or ``"E2plus1"`` (pair (E-iI)(E+iI), weights (-1)^s1 i^(s1+s2) vs
    (-1)^(s-1)).
    """
    t = float(t)
    if not math.isfinite(t):
        raise NonFiniteInput(f"t must be finite, got {t!r}")
    n1 = max(math.floor(t), 0)
    n2 = max(floor_mod(t, 2.0).n, 0)
    if name == "E2minus4":
        lhs: complex = 0j
        for s2 in range(1, n1 + 1):
            for s1 in range(1, n1 - s2 + 1):
                sign = -1.0 if (s1 - 1) % 2 else 1.0
                lhs += sign * 2.0 ** (s1 + s2) * f(t - s1 - s2)
        rhs: complex = 0j
        for s in range(1, n2 + 1):
            rhs += 4.0**s * f(t - 2.0 * s)
    elif name == "E2plus1":
        lhs = 0j
        for s2 in range(1, n1 + 1):
            for s1 in range(1, n1 - s2 + 1):
                sign = -1.0 if s1 % 2 else 1.0
                lhs += sign * _ipow(s1 + s2) * f(t - s1 - s2)
        rhs = 0j
        for s in range(1, n2 + 1):
            sign = -1.0 if (s - 1) % 2 else 1.0
            rhs += sign * f(t - 2.0 * s)
    else:
        raise DomainError(f"unknown identity {name!r}; use 'E2minus4' or 'E2plus1'")
    return abs(lhs - rhs)
