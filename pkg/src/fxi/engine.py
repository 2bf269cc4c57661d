"""Length tables, xi step functions and finite-e estimates of Frobenius invariants.

For f in the maximal ideal of F_p[x_1..x_m] (m = n + 1) and q = p^e the
modules M_{e,t} = f^t R / f^{t+1} R, R = F_p[x]/(x_1^q, ..., x_m^q), have
lengths ``dims[t] - dims[t+1]`` where ``dims`` is the image chain of
multiplication by f.  Everything reported from here on is an exact
``Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .linalg import image_chain, image_dimension
from .ring import Polynomial, pow_truncated, truncate


class EngineInvariantError(AssertionError):
    """A computed table violated an identity that must hold exactly."""


@dataclass(frozen=True)
class LengthTable:
    """``lengths[t] = l(M_{e,t})`` for t < mu; all later lengths are 0."""

    p: int
    e: int
    nvars: int
    lengths: tuple[int, ...]
    mu: int

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def n(self) -> int:
        return self.nvars - 1

    def length(self, t: int) -> int:
        return self.lengths[t] if 0 <= t < len(self.lengths) else 0

    def padded(self) -> list[int]:
        """Lengths for t = 0..q-1."""
        return [self.length(t) for t in range(self.q)]


def _validate(table: LengthTable) -> None:
    total = sum(table.lengths)
    if total != table.q**table.nvars:
        raise EngineInvariantError(f"total mass {total} != {table.q ** table.nvars}")
    if any(a < b for a, b in zip(table.lengths, table.lengths[1:])):
        raise EngineInvariantError(f"lengths not decreasing: {table.lengths}")
    if table.mu > table.q or min(table.lengths, default=1) <= 0:
        raise EngineInvariantError(f"bad mu {table.mu} or zero length before mu")


@lru_cache(maxsize=256)
def length_table(f: Polynomial, e: int, strategy: str = "dense",
                 capacity: int | None = None) -> LengthTable:
    """Length table of f at Frobenius exponent e."""
    if f.is_zero or not f.in_maximal_ideal:
        raise ValueError("f must be a nonzero element of the maximal ideal")
    chain = image_chain(truncate(f, e), strategy=strategy, capacity=capacity)
    if not chain.terminated:
        raise EngineInvariantError("image chain did not reach 0 by t = q")
    dims = chain.dims
    lengths = tuple(a - b for a, b in zip(dims, dims[1:]))
    table = LengthTable(f.p, e, f.nvars, lengths, len(dims) - 1)
    _validate(table)
    return table


def mu_value(f: Polynomial, e: int, capacity: int | None = None) -> int:
    """Least t >= 1 with f^t in m^[p^e].

    The variant with t >= 0 agrees, as f^0 = 1 never lies in m^[p^e].
    """
    return length_table(f, e, capacity=capacity).mu


def c_value(table: LengthTable, t: int) -> Fraction:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return Fraction(table.length(t), table.p ** (table.e * table.n))


@dataclass(frozen=True)
class XiStep:
    """Step function on [0, 1]: ``values[t]`` on [t/q, (t+1)/q), ``value_at_one`` at 1."""

    p: int
    e: int
    values: tuple[Fraction, ...]
    value_at_one: Fraction

    @property
    def q(self) -> int:
        return self.p**self.e

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("x must lie in [0, 1]")
        if x == 1:
            return self.value_at_one
        return self.values[math.floor(x * self.q)]

    def breakpoints(self) -> list[tuple[Fraction, Fraction]]:
        """``(x, value)`` at each left endpoint t/q, then ``(1, value_at_one)``."""
        pts = [(Fraction(t, self.q), v) for t, v in enumerate(self.values)]
        pts.append((Fraction(1), self.value_at_one))
        return pts


def xi_step(table: LengthTable) -> XiStep:
    values = tuple(c_value(table, t) for t in range(table.q))
    return XiStep(table.p, table.e, values, values[-1])


def interval_integral(table: LengthTable, a: int) -> Fraction:
    """Integral of xi_f over [a/q, (a+1)/q], i.e. l(M_{e,a}) / q^(n+1)."""
    if not 0 <= a < table.q:
        raise ValueError(f"a must lie in [0, {table.q})")
    return Fraction(table.length(a), table.q**table.nvars)


def phi_partial(table: LengthTable, x) -> Fraction:
    """``(1/q) * sum_{t < floor(x q)} C_{e,t}``, the level-e value of phi_f(x)."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    top = math.floor(x * table.q)
    return Fraction(sum(table.length(t) for t in range(top)), table.q**table.nvars)


@dataclass(frozen=True)
class EstimateSequence:
    kind: str  # ehk | fsig | fpt | pair
    values: tuple[tuple[int, Fraction], ...]
    monotonicity: str  # increasing | decreasing
    notes: tuple[str, ...] = field(default=())

    def is_monotone(self) -> bool:
        vals = [v for _, v in self.values]
        if self.monotonicity == "increasing":
            return all(a <= b for a, b in zip(vals, vals[1:]))
        return all(a >= b for a, b in zip(vals, vals[1:]))


def ehk_estimates(f: Polynomial, e_max: int, capacity: int | None = None) -> EstimateSequence:
    """C_{e,0} for e = 1..e_max; increases towards e_HK(R/(f))."""
    vals = tuple((e, c_value(length_table(f, e, capacity=capacity), 0)) for e in range(1, e_max + 1))
    return EstimateSequence("ehk", vals, "increasing")


def fedder_ae(f: Polynomial, e: int, capacity: int | None = None) -> int:
    """dim_k of (f^{q-1}) + m^[q] modulo m^[q], computed directly from the power."""
    return image_dimension(pow_truncated(truncate(f, e), f.p**e - 1), capacity=capacity)


def fsig_estimates(f: Polynomial, e_max: int, capacity: int | None = None) -> EstimateSequence:
    """a_e / p^{en} with a_e = l(M_{e,q-1}); decreases towards s(R/(f))."""
    vals = []
    for e in range(1, e_max + 1):
        table = length_table(f, e, capacity=capacity)
        vals.append((e, c_value(table, table.q - 1)))
    return EstimateSequence("fsig", tuple(vals), "decreasing")


def fpt_estimates(f: Polynomial, e_max: int, capacity: int | None = None) -> EstimateSequence:
    """mu_f(p^e)/p^e for e = 1..e_max.

    Each value is a certified upper bound for fpt(f); no lower bound is
    claimed.
    """
    vals = []
    a_last = 0
    for e in range(1, e_max + 1):
        table = length_table(f, e, capacity=capacity)
        vals.append((e, Fraction(table.mu, table.q)))
        a_last = table.length(table.q - 1)
    notes = ["each value is a certified upper bound for fpt(f)"]
    if a_last > 0:
        notes.append(
            f"a_e = {a_last} > 0 at e = {e_max}: xi_f(1) = 0 is not established, "
            "so fpt need not equal the vanishing point of xi_f"
        )
    return EstimateSequence("fpt", tuple(vals), "decreasing", tuple(notes))


def pair_exponent(p: int, e: int, t) -> int:
    """ceil(t (p^e - 1)) for rational t in [0, 1]."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    return math.ceil(t * (p**e - 1))


def pair_fsignature_estimate(f: Polynomial, e: int, t, capacity: int | None = None) -> Fraction:
    """Level-e estimate of s(R, f^t): dim(f^s R) / q^m with s = ceil(t (q-1))."""
    s = pair_exponent(f.p, e, t)
    g = pow_truncated(truncate(f, e), s)
    return Fraction(image_dimension(g, capacity=capacity), f.p ** (e * f.nvars))


def bracket(table: LengthTable, alpha) -> tuple[Fraction, Fraction | None]:
    """(C_{e, ceil(alpha q)}, C_{e, floor(alpha q) - 1}).

    The first sequence increases with e and the second decreases; together
    they enclose xi_f(alpha).  The upper value is None while
    floor(alpha q) - 1 < 0.
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    q = table.q
    lower = c_value(table, math.ceil(alpha * q))
    up_idx = math.floor(alpha * q) - 1
    upper = c_value(table, up_idx) if up_idx >= 0 else None
    return lower, upper


def bracket_sequences(f: Polynomial, e_max: int, alpha, capacity: int | None = None):
    """``[(e, lower, upper), ...]`` for e = 1..e_max."""
    out = []
    for e in range(1, e_max + 1):
        lower, upper = bracket(length_table(f, e, capacity=capacity), alpha)
        out.append((e, lower, upper))
    return out
