from dataclasses import replace

import pytest

from fxi.engine import LengthTable, length_table
from fxi.monomial import MonomialSpec
from fxi.ring import parse_polynomial
from fxi.verify import (
    Corpus, CorpusEntry, all_passed, check_estimates, check_fedder, check_monomial_agreement,
    check_monotone, check_recursion, check_sandwich, check_total_mass, default_corpus,
    random_entries, run_corpus, run_entry,
)

XY = parse_polynomial("x*y", 2, 2)
X3 = parse_polynomial("x", 2, 3)


def tab(lengths, p=2, e=2, nvars=2):
    return LengthTable(p, e, nvars, tuple(lengths), len(lengths))


def test_total_mass():
    assert check_total_mass(length_table(XY, 2)).passed
    assert check_total_mass(length_table(X3, 1)).passed
    bad = check_total_mass(tab([7, 5, 3, 2]))
    assert not bad.passed and bad.witness["sum"] == 17


def test_monotone():
    assert check_monotone(length_table(XY, 2)).passed
    bad = check_monotone(tab([3, 5], e=1, p=2))
    assert not bad.passed and bad.witness["t"] == 0
    assert check_monotone(tab([1], e=0)).passed
    assert not check_monotone(LengthTable(2, 1, 2, (3, 1, 0), 3)).passed


def test_recursion():
    assert check_recursion(length_table(XY, 1), length_table(XY, 2)).passed
    assert check_recursion(length_table(X3, 1), length_table(X3, 2)).passed
    shifted = tab([7, 4, 4, 1])
    bad = check_recursion(length_table(XY, 1), shifted)
    assert not bad.passed and bad.witness == {"t": 0, "lhs": 12, "rhs": 11}
    with pytest.raises(ValueError):
        check_recursion(length_table(XY, 1), length_table(XY, 3))


def test_sandwich():
    res = check_sandwich(length_table(XY, 1), length_table(XY, 2))
    assert res.passed and res.witness is None
    # swapping the first two lengths keeps the recursion but breaks the sandwich
    swapped = tab([5, 7, 3, 1])
    assert check_recursion(length_table(XY, 1), swapped).passed
    bad = check_sandwich(length_table(XY, 1), swapped)
    assert not bad.passed
    assert bad.witness == {"t": 0, "upper": 5, "middle": 6, "lower": 7}


def test_fedder():
    assert check_fedder(XY, 2).passed
    assert check_fedder(parse_polynomial("x^2+y^3", 2, 5), 1).passed
    assert check_fedder(parse_polynomial("x", 2, 2), 2).passed
    bad = check_fedder(XY, 2, table=tab([7, 5, 2, 2]))
    assert not bad.passed and bad.witness == {"fedder": 1, "table": 2}


def test_monomial_agreement():
    assert check_monomial_agreement(MonomialSpec((1, 1), 2), 3).passed
    assert check_monomial_agreement(MonomialSpec((1, 2), 3), 2).passed
    assert check_monomial_agreement(MonomialSpec((1, 2, 3), 2), 2).passed


def test_estimates_check():
    tables = [length_table(XY, e) for e in range(1, 4)]
    assert check_estimates(tables).passed
    broken = [tables[0], replace(tables[1], lengths=(5,) + tables[1].lengths[1:])]
    bad = check_estimates(broken)
    assert not bad.passed and bad.witness["kind"] == "ehk"


def test_witness_iff_failed():
    for r in run_entry(CorpusEntry("x^2+y^3", 3, 2, 2)):
        assert (r.witness is None) == r.passed


def test_empty_corpus():
    assert run_corpus(Corpus()) == []


def test_capacity_violating_entry_is_skipped():
    corpus = Corpus((CorpusEntry("x*y", 2, 2, 2), CorpusEntry("x*y", 2, 2, 6)))
    results = run_corpus(corpus, capacity=2**8)
    skipped = [r for r in results if r.skipped]
    assert len(skipped) == 1 and "e<=6" in skipped[0].subject
    assert "capacity" in skipped[0].note
    assert all_passed(results)


def test_corrupted_corpus_fails_every_table_check():
    results = run_corpus(Corpus((CorpusEntry("x*y", 2, 2, 2),)), corrupt=True)
    assert not all_passed(results)
    failing = {r.check_id for r in results if not r.passed}
    assert {"total_mass", "fedder", "recursion"} <= failing


def test_results_are_sorted():
    results = run_corpus(Corpus((CorpusEntry("x", 2, 2, 2), CorpusEntry("x*y", 3, 2, 1))))
    keys = [(r.subject, r.check_id) for r in results]
    assert keys == sorted(keys)


def test_default_corpus_contents():
    corpus = default_corpus()
    have = {(e.f, e.p) for e in corpus.entries}
    need = {("x*y", 2), ("x*y", 3), ("x", 2), ("x^2", 3), ("x^2+y^3", 2), ("x^2+y^3", 3),
            ("x^2+y^3", 5), ("x^2+y^3", 7), ("x^3+y^3", 2), ("x^3+y^3", 7),
            ("x*y^2*z^3", 2), ("x^2+y^3+z^5", 2)}
    assert need <= have
    for entry in corpus.entries:
        assert entry.e_max >= 1
        assert entry.size <= 2**24


def test_default_corpus_small_budget_passes():
    assert all_passed(run_corpus(default_corpus(budget=2**10)))


def test_random_entries_seeded():
    a = random_entries(7)
    assert a == random_entries(7)
    assert a != random_entries(8)
    results = run_corpus(Corpus(tuple(a)))
    assert results and all_passed(results)
