"""Closed forms for monomial hypersurfaces f = x_1^a_1 ... x_m^a_m.

Exponents are kept sorted, ``a_1 <= ... <= a_m``, so ``alphas[-1]`` is the
largest one.  Zero exponents are allowed; the all-zero vector is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ring import Polynomial, PrimeModulus


@dataclass(frozen=True)
class MonomialSpec:
    alphas: tuple[int, ...]
    p: int

    def __post_init__(self):
        alphas = tuple(sorted(int(a) for a in self.alphas))
        if len(alphas) < 2:
            raise ValueError("need at least two exponents (n >= 1)")
        if alphas[0] < 0 or alphas[-1] < 1:
            raise ValueError("exponents must be nonnegative and not all zero")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "p", int(PrimeModulus(self.p)))

    @property
    def n(self) -> int:
        return len(self.alphas) - 1

    @property
    def top(self) -> int:
        return self.alphas[-1]

    def polynomial(self) -> Polynomial:
        return Polynomial.monomial(self.alphas, self.p)


def elementary_symmetric(spec: MonomialSpec) -> list[int]:
    """[beta_1, ..., beta_m] of the exponents."""
    # coefficients of prod_j (1 + a_j z)
    coeffs = [1]
    for a in spec.alphas:
        coeffs = [c + a * prev for c, prev in zip(coeffs + [0], [0] + coeffs)]
    return coeffs[1:]


def closed_form_length(spec: MonomialSpec, e: int, t: int) -> int:
    """l(M_{e,t}) from the box-counting formula."""
    if e < 0 or t < 0:
        raise ValueError("e and t must be nonnegative")
    q = spec.p**e

    def box(s: int) -> int:
        return math.prod(q - s * a for a in spec.alphas)

    # t >= q/top  <=>  t*top >= q, and so on; all integer comparisons
    if t * spec.top >= q:
        return 0
    if (t + 1) * spec.top >= q:
        return box(t)
    return box(t) - box(t + 1)


def expanded_length(spec: MonomialSpec, e: int, t: int) -> int:
    """The same length for t < q/top - 1, expanded in the elementary symmetric values."""
    q = spec.p**e
    beta = elementary_symmetric(spec)
    m = len(spec.alphas)
    total = 0
    for j in range(1, m + 1):
        inner = sum(math.comb(j, i) * t**i for i in range(j))
        total += (-1) ** (j + 1) * inner * beta[j - 1] * q ** (m - j)
    return total


@dataclass(frozen=True)
class XiPolynomial:
    """``sum_k coefficients[k] x^k``, the limit of the steps on [0, 1/top)."""

    coefficients: tuple[int, ...]
    valid_below: Fraction

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**k for k, c in enumerate(self.coefficients)), Fraction(0))

    def derivative(self, order: int, x) -> Fraction:
        if order < 1:
            raise ValueError("order must be at least 1")
        x = Fraction(x)
        acc = Fraction(0)
        for k, c in enumerate(self.coefficients):
            if k >= order:
                acc += c * math.perm(k, order) * x ** (k - order)
        return acc


def xi_polynomial(spec: MonomialSpec) -> XiPolynomial:
    beta = elementary_symmetric(spec)
    coeffs = tuple((-1) ** (j + 1) * j * beta[j - 1] for j in range(1, len(beta) + 1))
    return XiPolynomial(coeffs, Fraction(1, spec.top))


def xi_polynomial_derivative(poly: XiPolynomial, order: int, x) -> Fraction:
    return poly.derivative(order, x)


def step_error_constant(spec: MonomialSpec) -> int:
    """K with |C_{e, floor(x q)} - xi(x)| <= K / q whenever floor(x q) < q/top - 1.

    Writing u = floor(x q)/q, the level-e value differs from the polynomial
    by sum_j beta_j [ j (x^{j-1} - u^{j-1}) + sum_{i<j-1} C(j,i) u^i / q^{j-1-i} ].
    Both brackets are at most j(j-1)/q and 2^j/q, and j(j-1) + 2^j <= j 2^j.
    """
    beta = elementary_symmetric(spec)
    return sum(j * 2**j * b for j, b in enumerate(beta, start=1))


def exact_fpt(spec: MonomialSpec) -> Fraction:
    return Fraction(1, spec.top)


def _gap_product(spec: MonomialSpec) -> int:
    return math.prod(spec.top - a for a in spec.alphas[:-1])


def left_limit_at_fpt(spec: MonomialSpec) -> Fraction:
    """Limit of xi_f(x) as x increases to 1/top."""
    return Fraction(_gap_product(spec), spec.top ** (spec.n - 1))


@dataclass(frozen=True)
class EpsilonAnalysis:
    """Residues eps_e = p^e mod top, with top = p^s * q and gcd(p, q) = 1."""

    s: int
    q: int
    preperiod: int
    period: int
    cycle: tuple[int, ...]  # eps_preperiod, ..., eps_{preperiod+period-1}
    limit_exists: bool
    limsup: int
    liminf: int


def _multiplicative_order(p: int, q: int) -> int:
    if q == 1:
        return 1
    k, acc = 1, p % q
    while acc != 1:
        acc = acc * p % q
        k += 1
    return k


def epsilon_analysis(spec: MonomialSpec) -> EpsilonAnalysis:
    p, top = spec.p, spec.top
    s, q = 0, top
    while q % p == 0:
        q //= p
        s += 1
    period = _multiplicative_order(p, q)
    eps = lambda e: pow(p, e, top)  # noqa: E731
    # periodic from e = s on; walk back while it already was
    pre = s
    while pre > 0 and eps(pre - 1) == eps(pre - 1 + period):
        pre -= 1
    cycle = tuple(eps(e) for e in range(pre, pre + period))
    return EpsilonAnalysis(s, q, pre, period, cycle, period == 1, max(cycle), min(cycle))


@dataclass(frozen=True)
class Classification:
    continuous: bool
    limit_exists_at_fpt: bool
    analysis: EpsilonAnalysis


def classify(spec: MonomialSpec) -> Classification:
    """Continuity of xi_f on [0, 1] and existence of lim xi_{f,e}(1/top)."""
    analysis = epsilon_analysis(spec)
    equal_top = spec.alphas[-1] == spec.alphas[-2]
    limit = equal_top or spec.p % analysis.q == 1 % analysis.q
    return Classification(equal_top, limit, analysis)


def limsup_at_fpt(spec: MonomialSpec) -> Fraction:
    """limsup_e C_{e, floor(q/top)}."""
    analysis = epsilon_analysis(spec)
    return Fraction(analysis.limsup * _gap_product(spec), spec.top**spec.n)


def liminf_at_fpt(spec: MonomialSpec) -> Fraction:
    """Companion of :func:`limsup_at_fpt` with the smallest cycle value.

    Obtained by the same substitution with min(cycle) in place of max(cycle);
    reported as a derived value only.
    """
    analysis = epsilon_analysis(spec)
    return Fraction(analysis.liminf * _gap_product(spec), spec.top**spec.n)


def hk_times_fpt(spec: MonomialSpec) -> Fraction:
    """e_HK(R/(f)) * fpt(f) = (sum of exponents) / top; always >= 1."""
    return Fraction(sum(spec.alphas), spec.top)
