"""Arithmetic in F_p and in the truncated ring F_p[x_1..x_m]/(x_1^q, ..., x_m^q).

Monomials inside the box [0, q)^m are encoded as a single integer in mixed
radix q, ``a_1 + a_2*q + a_3*q^2 + ...``.  That encoding is also the pivot
order used by the linear algebra in :mod:`fxi.linalg`.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

DEFAULT_CAPACITY = 2**24
_MAX_PRIME = 2**16


class CapacityError(RuntimeError):
    """Raised when q^m exceeds the configured capacity."""


class ParseError(ValueError):
    """Malformed polynomial text, or a polynomial outside the maximal ideal."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def default_capacity() -> int:
    env = os.environ.get("FXI_CAPACITY")
    return int(env) if env else DEFAULT_CAPACITY


def check_capacity(p: int, e: int, nvars: int, capacity: int | None = None) -> int:
    """Return q^m, raising CapacityError if it exceeds ``capacity``."""
    cap = default_capacity() if capacity is None else capacity
    size = p ** (e * nvars)
    if size > cap:
        raise CapacityError(
            f"p^(e*m) = {p}^{e * nvars} = {size} exceeds capacity {cap}"
        )
    return size


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeModulus(int):
    """A prime ``2 <= p < 2**16``; behaves as a plain int."""

    def __new__(cls, p: int):
        p = int(p)
        if not (2 <= p < _MAX_PRIME) or not _is_prime(p):
            raise ValueError(f"{p} is not a prime in [2, 2^16)")
        return super().__new__(cls, p)


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial over F_p in ``nvars`` variables.

    ``terms`` is a tuple of ``(exponents, coefficient)`` pairs sorted by
    exponent tuple, with coefficients in ``[1, p-1]``.
    """

    terms: tuple[tuple[tuple[int, ...], int], ...]
    p: int
    nvars: int

    @classmethod
    def from_dict(cls, terms: Mapping[tuple[int, ...], int], p: int, nvars: int) -> "Polynomial":
        p = PrimeModulus(p)
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in terms.items():
            exps = tuple(int(a) for a in exps)
            if len(exps) != nvars or min(exps) < 0:
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            acc[exps] = (acc.get(exps, 0) + int(c)) % p
        items = tuple(sorted((k, v) for k, v in acc.items() if v))
        return cls(items, int(p), nvars)

    @classmethod
    def monomial(cls, exps: Iterable[int], p: int) -> "Polynomial":
        exps = tuple(exps)
        return cls.from_dict({exps: 1}, p, len(exps))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def in_maximal_ideal(self) -> bool:
        return all(any(exps) for exps, _ in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.terms:
            factors = [f"x{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(exps) if a]
            if not factors:
                out.append(str(c))
            elif c == 1:
                out.append("*".join(factors))
            else:
                out.append(f"{c}*" + "*".join(factors))
        return " + ".join(out)


class TruncatedPoly:
    """Element of F_p[x_1..x_m]/(x_1^q, ..., x_m^q) with q = p^e.

    Terms are held as two parallel numpy arrays: encoded monomial indices
    (strictly increasing) and coefficients in ``[1, p-1]``.
    """

    __slots__ = ("index", "coef", "p", "e", "nvars", "q")

    def __init__(self, index, coef, p: int, e: int, nvars: int):
        self.index = np.asarray(index, dtype=np.int64)
        self.coef = np.asarray(coef, dtype=np.int64)
        self.p = int(p)
        self.e = int(e)
        self.nvars = int(nvars)
        self.q = self.p**self.e

    @classmethod
    def zero(cls, p: int, e: int, nvars: int) -> "TruncatedPoly":
        return cls(np.empty(0, np.int64), np.empty(0, np.int64), p, e, nvars)

    @classmethod
    def one(cls, p: int, e: int, nvars: int) -> "TruncatedPoly":
        return cls(np.zeros(1, np.int64), np.ones(1, np.int64), p, e, nvars)

    @classmethod
    def from_terms(cls, exps, coef, p: int, e: int, nvars: int) -> "TruncatedPoly":
        """Build from an (k, m) exponent array, combining duplicates and dropping
        anything outside the box."""
        exps = np.asarray(exps, dtype=np.int64).reshape(-1, nvars)
        coef = np.asarray(coef, dtype=np.int64).reshape(-1)
        q = p**e
        keep = np.all(exps < q, axis=1)
        idx = encode(exps[keep], q)
        return cls._combine(idx, coef[keep], p, e, nvars)

    @classmethod
    def _combine(cls, idx, coef, p, e, nvars) -> "TruncatedPoly":
        if idx.size == 0:
            return cls.zero(p, e, nvars)
        uniq, inv = np.unique(idx, return_inverse=True)
        acc = np.zeros(uniq.size, dtype=np.int64)
        np.add.at(acc, inv, coef % p)
        acc %= p
        nz = acc != 0
        return cls(uniq[nz], acc[nz], p, e, nvars)

    @property
    def ambient_dim(self) -> int:
        return self.q**self.nvars

    @property
    def is_zero(self) -> bool:
        return self.index.size == 0

    def __len__(self) -> int:
        return int(self.index.size)

    def exponents(self) -> np.ndarray:
        return decode(self.index, self.q, self.nvars)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(a) for a in ex): int(c) for ex, c in zip(self.exponents(), self.coef)}

    def same_ring(self, other: "TruncatedPoly") -> bool:
        return (self.p, self.e, self.nvars) == (other.p, other.e, other.nvars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return (
            self.same_ring(other)
            and np.array_equal(self.index, other.index)
            and np.array_equal(self.coef, other.coef)
        )

    def __add__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        _require_same_ring(self, other)
        return TruncatedPoly._combine(
            np.concatenate([self.index, other.index]),
            np.concatenate([self.coef, other.coef]),
            self.p, self.e, self.nvars,
        )

    def __mul__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        return mul_truncated(self, other)

    def __repr__(self) -> str:
        return f"TruncatedPoly({self.as_dict()!r}, p={self.p}, e={self.e})"


def encode(exps: np.ndarray, q: int) -> np.ndarray:
    exps = np.asarray(exps, dtype=np.int64)
    weights = q ** np.arange(exps.shape[-1], dtype=np.int64)
    return exps @ weights


def decode(index: np.ndarray, q: int, nvars: int) -> np.ndarray:
    index = np.asarray(index, dtype=np.int64)
    out = np.empty((index.size, nvars), dtype=np.int64)
    rest = index.copy()
    for j in range(nvars):
        out[:, j] = rest % q
        rest //= q
    return out


def _require_same_ring(a: TruncatedPoly, b: TruncatedPoly) -> None:
    if not a.same_ring(b):
        raise ValueError(
            f"ring mismatch: (p, e, m) = {(a.p, a.e, a.nvars)} vs {(b.p, b.e, b.nvars)}"
        )


def truncate(f: Polynomial, e: int) -> TruncatedPoly:
    """Image of ``f`` in R/m^[p^e]: every term with an exponent >= p^e is dropped."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    if not f.terms:
        return TruncatedPoly.zero(f.p, e, f.nvars)
    exps = np.array([t[0] for t in f.terms], dtype=np.int64)
    coef = np.array([t[1] for t in f.terms], dtype=np.int64)
    return TruncatedPoly.from_terms(exps, coef, f.p, e, f.nvars)


def mul_truncated(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    """Product in the truncated ring."""
    _require_same_ring(a, b)
    if a.is_zero or b.is_zero:
        return TruncatedPoly.zero(a.p, a.e, a.nvars)
    if len(a) > len(b):
        a, b = b, a
    q = a.q
    a_exps = a.exponents()
    b_exps = b.exponents()
    chunks_idx, chunks_coef = [], []
    for shift, c, sidx in zip(a_exps, a.coef, a.index):
        keep = np.all(b_exps + shift < q, axis=1)
        if keep.any():
            # encoding is additive as long as no coordinate leaves the box
            chunks_idx.append(b.index[keep] + sidx)
            chunks_coef.append(b.coef[keep] * c)
    if not chunks_idx:
        return TruncatedPoly.zero(a.p, a.e, a.nvars)
    return TruncatedPoly._combine(
        np.concatenate(chunks_idx), np.concatenate(chunks_coef), a.p, a.e, a.nvars
    )


def pow_truncated(f: TruncatedPoly, t: int) -> TruncatedPoly:
    """``f**t`` in the truncated ring, by repeated multiplication with ``f``."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    result = TruncatedPoly.one(f.p, f.e, f.nvars)
    for _ in range(t):
        result = mul_truncated(result, f)
        if result.is_zero:
            break
    return result


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>x\d+|[xyzw])|(?P<op>[-+*^]))"
)
_LETTERS = {"x": 1, "y": 2, "z": 3, "w": 4}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def variables_used(text: str) -> int:
    """Largest variable index mentioned in ``text`` (0 if none)."""
    top = 0
    for kind, val, _ in _tokenize(text):
        if kind == "var":
            top = max(top, _LETTERS[val] if val in _LETTERS else int(val[1:]))
    return top


def parse_polynomial(text: str, nvars: int, p: int) -> Polynomial:
    """Parse ``text`` into a nonzero polynomial lying in the maximal ideal.

    Grammar::

        expression := ['-'] term (('+'|'-') term)*
        term       := integer | [integer '*'] factor ('*' factor)*
        factor     := variable ['^' integer]
        variable   := 'x' index | 'x' | 'y' | 'z' | 'w'

    Bare integer terms are accepted only so that units can be rejected with
    a clear message.
    """
    p = PrimeModulus(p)
    if nvars < 2:
        raise ParseError("need at least 2 variables")
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    pos = 0
    acc: dict[tuple[int, ...], int] = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect_int() -> int:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != "int":
            where = tok[2] if tok else len(text)
            raise ParseError("expected an integer", where)
        pos += 1
        return int(tok[1])

    def parse_factor(exps: list[int]) -> None:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != "var":
            where = tok[2] if tok else len(text)
            raise ParseError("expected a variable", where)
        pos += 1
        name = tok[1]
        idx = _LETTERS[name] if name in _LETTERS else int(name[1:])
        if not 1 <= idx <= nvars:
            raise ParseError(f"variable {name} out of range for {nvars} variables", tok[2])
        power = 1
        nxt = peek()
        if nxt is not None and nxt[1] == "^":
            pos += 1
            power = expect_int()
        exps[idx - 1] += power

    def parse_term(sign: int) -> None:
        nonlocal pos
        exps = [0] * nvars
        coef = 1
        tok = peek()
        if tok is None:
            raise ParseError("expected a term", len(text))
        if tok[0] == "int":
            coef = int(tok[1])
            pos += 1
            nxt = peek()
            if nxt is None or nxt[1] in "+-":
                key = tuple(exps)
                acc[key] = acc.get(key, 0) + sign * coef
                return
            if nxt[1] != "*":
                raise ParseError("expected '*' after coefficient", nxt[2])
            pos += 1
        parse_factor(exps)
        while (nxt := peek()) is not None and nxt[1] == "*":
            pos += 1
            parse_factor(exps)
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + sign * coef

    sign = 1
    if tokens[0][1] in "+-":
        sign = -1 if tokens[0][1] == "-" else 1
        pos = 1
    parse_term(sign)
    while pos < len(tokens):
        tok = tokens[pos]
        if tok[1] not in "+-":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        pos += 1
        parse_term(-1 if tok[1] == "-" else 1)

    f = Polynomial.from_dict(acc, p, nvars)
    if f.is_zero:
        raise ParseError("zero polynomial (all coefficients vanish mod p)")
    if not f.in_maximal_ideal:
        raise ParseError("f must lie in the maximal ideal (nonzero constant term)")
    return f
