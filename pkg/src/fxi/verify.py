"""Exact identity checks over computed length tables, and the built-in corpus.

Every identity is checked in integer form (denominators multiplied out).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import engine
from .engine import LengthTable
from .monomial import MonomialSpec, closed_form_length
from .ring import CapacityError, Polynomial, default_capacity, parse_polynomial, variables_used

# Per-entry size limit used to pick e_max for the default corpus.
CORPUS_BUDGET = 2**18


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    subject: str
    passed: bool
    witness: dict | None = None
    skipped: bool = False
    note: str = ""


def _ok(check_id: str, subject: str) -> CheckResult:
    return CheckResult(check_id, subject, True)


def _fail(check_id: str, subject: str, **witness) -> CheckResult:
    return CheckResult(check_id, subject, False, witness)


def _describe(table: LengthTable) -> str:
    return f"p={table.p} e={table.e} m={table.nvars}"


def check_total_mass(table: LengthTable, subject: str = "") -> CheckResult:
    subject = subject or _describe(table)
    total = sum(table.lengths)
    expected = table.q**table.nvars
    if total == expected:
        return _ok("total_mass", subject)
    return _fail("total_mass", subject, sum=total, expected=expected)


def check_monotone(table: LengthTable, subject: str = "") -> CheckResult:
    subject = subject or _describe(table)
    ls = table.lengths
    for t in range(len(ls) - 1):
        if ls[t] < ls[t + 1]:
            return _fail("monotone", subject, t=t, lengths=[ls[t], ls[t + 1]])
    if len(ls) != table.mu or any(v <= 0 for v in ls):
        return _fail("monotone", subject, mu=table.mu, stored=len(ls),
                     nonpositive=[t for t, v in enumerate(ls) if v <= 0])
    return _ok("monotone", subject)


def _consecutive(a: LengthTable, b: LengthTable) -> None:
    if (a.p, a.nvars) != (b.p, b.nvars) or b.e != a.e + 1:
        raise ValueError("tables must share p and m and have consecutive e")


def check_recursion(table_e: LengthTable, table_e1: LengthTable, subject: str = "") -> CheckResult:
    """p^m l(M_{e,t}) = sum_{i<p} l(M_{e+1, pt+i}) for every t < p^e."""
    _consecutive(table_e, table_e1)
    subject = subject or f"{_describe(table_e)}->{table_e1.e}"
    p, m = table_e.p, table_e.nvars
    for t in range(table_e.q):
        lhs = p**m * table_e.length(t)
        rhs = sum(table_e1.length(p * t + i) for i in range(p))
        if lhs != rhs:
            return _fail("recursion", subject, t=t, lhs=lhs, rhs=rhs)
    return _ok("recursion", subject)


def check_sandwich(table_e: LengthTable, table_e1: LengthTable, subject: str = "") -> CheckResult:
    """l(M_{e+1,pt}) >= p^n l(M_{e,t}) >= l(M_{e+1,pt+p-1}) for every t < p^e."""
    _consecutive(table_e, table_e1)
    subject = subject or f"{_describe(table_e)}->{table_e1.e}"
    p, n = table_e.p, table_e.n
    for t in range(table_e.q):
        hi = table_e1.length(p * t)
        mid = p**n * table_e.length(t)
        lo = table_e1.length(p * t + p - 1)
        if not hi >= mid >= lo:
            return _fail("sandwich", subject, t=t, upper=hi, middle=mid, lower=lo)
    return _ok("sandwich", subject)


def check_fedder(f: Polynomial, e: int, table: LengthTable | None = None,
                 capacity: int | None = None, subject: str = "") -> CheckResult:
    """The splitting number from f^{q-1} equals the last length l(M_{e,q-1})."""
    table = table or engine.length_table(f, e, capacity=capacity)
    subject = subject or f"f={f} {_describe(table)}"
    direct = engine.fedder_ae(f, e, capacity=capacity)
    from_table = table.length(table.q - 1)
    if direct == from_table:
        return _ok("fedder", subject)
    return _fail("fedder", subject, fedder=direct, table=from_table)


def check_monomial_agreement(spec: MonomialSpec, e_max: int, capacity: int | None = None,
                             e_min: int = 0) -> CheckResult:
    subject = f"alpha={spec.alphas} p={spec.p} e<={e_max}"
    f = spec.polynomial()
    for e in range(e_min, e_max + 1):
        table = engine.length_table(f, e, capacity=capacity)
        for t in range(table.q):
            oracle = closed_form_length(spec, e, t)
            if oracle != table.length(t):
                return _fail("monomial_agreement", subject, e=e, t=t,
                             oracle=oracle, engine=table.length(t))
    return _ok("monomial_agreement", subject)


def check_estimates(tables: list[LengthTable], subject: str = "") -> CheckResult:
    """C_{e,0} increasing, a_e/p^{en} decreasing, mu/p^e decreasing,
    and mu_f(p^{e+1}) <= p mu_f(p^e), all as integer comparisons."""
    subject = subject or _describe(tables[0])
    for a, b in zip(tables, tables[1:]):
        _consecutive(a, b)
        p, n = a.p, a.n
        if not b.length(0) >= p**n * a.length(0):
            return _fail("estimates", subject, kind="ehk", e=a.e, c0=[a.length(0), b.length(0)])
        if not b.length(b.q - 1) <= p**n * a.length(a.q - 1):
            return _fail("estimates", subject, kind="fsig", e=a.e,
                         a_e=[a.length(a.q - 1), b.length(b.q - 1)])
        if not b.mu <= p * a.mu:
            return _fail("estimates", subject, kind="fpt", e=a.e, mu=[a.mu, b.mu])
    return _ok("estimates", subject)


@dataclass(frozen=True)
class CorpusEntry:
    f: str
    p: int
    nvars: int
    e_max: int

    def polynomial(self) -> Polynomial:
        return parse_polynomial(self.f, self.nvars, self.p)

    @property
    def size(self) -> int:
        return self.p ** (self.e_max * self.nvars)


@dataclass(frozen=True)
class Corpus:
    entries: tuple[CorpusEntry, ...] = field(default=())


def largest_e(p: int, nvars: int, budget: int) -> int:
    e = 0
    while p ** ((e + 1) * nvars) <= budget:
        e += 1
    return e


_DEFAULT_ITEMS = [
    ("x*y", 2), ("x*y", 3), ("x", 2), ("x^2", 3),
    ("x^2+y^3", 2), ("x^2+y^3", 3), ("x^2+y^3", 5), ("x^2+y^3", 7),
    ("x^3+y^3", 2), ("x^3+y^3", 7),
    ("x*y^2*z^3", 2), ("x^2+y^3+z^5", 2),
]


def default_corpus(budget: int = CORPUS_BUDGET) -> Corpus:
    entries = []
    for text, p in _DEFAULT_ITEMS:
        nvars = max(2, variables_used(text))
        entries.append(CorpusEntry(text, p, nvars, largest_e(p, nvars, budget)))
    return Corpus(tuple(entries))


def _monomial_spec(f: Polynomial) -> MonomialSpec | None:
    if f.is_monomial:
        return MonomialSpec(f.terms[0][0], f.p)
    return None


def _corrupted(table: LengthTable) -> LengthTable:
    lengths = list(table.lengths)
    lengths[-1] += 1
    return replace(table, lengths=tuple(lengths))


def run_entry(entry: CorpusEntry, capacity: int | None = None,
              corrupt: bool = False) -> list[CheckResult]:
    cap = default_capacity() if capacity is None else capacity
    subject = f"f={entry.f} p={entry.p} m={entry.nvars} e<={entry.e_max}"
    if entry.size > cap:
        return [CheckResult("capacity", subject, True, skipped=True,
                            note=f"p^(e*m) = {entry.size} exceeds capacity {cap}; skipped")]
    f = entry.polynomial()
    tables = [engine.length_table(f, e, capacity=cap) for e in range(entry.e_max + 1)]
    if corrupt:
        tables = [_corrupted(t) for t in tables]
    results = []
    for table in tables:
        sub = f"f={entry.f} p={entry.p} e={table.e}"
        results.append(check_total_mass(table, sub))
        results.append(check_monotone(table, sub))
        results.append(check_fedder(f, table.e, table, cap, sub))
    for a, b in zip(tables, tables[1:]):
        sub = f"f={entry.f} p={entry.p} e={a.e}->{b.e}"
        results.append(check_recursion(a, b, sub))
        results.append(check_sandwich(a, b, sub))
    results.append(check_estimates(tables[1:], subject))
    spec = _monomial_spec(f)
    if spec is not None and len(spec.alphas) >= 2:
        results.append(check_monomial_agreement(spec, entry.e_max, cap))
    return results


def run_corpus(corpus: Corpus, capacity: int | None = None,
               corrupt: bool = False) -> list[CheckResult]:
    """Run every check on every entry; failures come back as data."""
    results = []
    for entry in corpus.entries:
        try:
            results.extend(run_entry(entry, capacity, corrupt))
        except CapacityError as exc:
            results.append(CheckResult("capacity", f"f={entry.f} p={entry.p}", True,
                                       skipped=True, note=str(exc)))
    return sorted(results, key=lambda r: (r.subject, r.check_id))


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)


def random_entries(seed: int, count: int = 3, p: int = 3, nvars: int = 2,
                   e_max: int = 2) -> list[CorpusEntry]:
    """Seeded random sparse polynomials in the maximal ideal."""
    rng = np.random.default_rng(seed)
    out = []
    q = p**e_max
    while len(out) < count:
        k = int(rng.integers(1, 4))
        terms = []
        for _ in range(k):
            exps = rng.integers(0, min(q, 4), size=nvars)
            if not exps.any():
                exps[0] = 1
            coef = int(rng.integers(1, p))
            mono = "*".join(f"x{j + 1}^{a}" for j, a in enumerate(exps) if a)
            terms.append(f"{coef}*{mono}")
        text = " + ".join(terms)
        try:
            parse_polynomial(text, nvars, p)
        except ValueError:
            continue
        out.append(CorpusEntry(text, p, nvars, e_max))
    return out

