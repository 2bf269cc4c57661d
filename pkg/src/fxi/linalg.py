"""Exact linear algebra over F_p on the monomial basis of the truncated ring.

Two elimination paths compute the same numbers:

* ``"sparse"``: a pure-Python reduced echelon basis (:class:`EchelonBasis`)
  over the whole ring.  Simple and slow; used as a reference.
* ``"dense"``: the default.  Monomials are split into classes modulo the
  lattice spanned by differences of exponents in the support of the
  multiplier.  Multiplication by such an element maps each class into a
  single class, so the rank splits into small independent blocks, each
  eliminated densely by a compiled kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numba
import numpy as np

from .ring import TruncatedPoly, check_capacity, decode, inverse_table, mul_truncated

SparseVector = tuple[tuple[int, int], ...]

STRATEGIES = ("dense", "sparse")


def sparse_vector(entries: Mapping[int, int] | Iterable[tuple[int, int]], p: int) -> SparseVector:
    """Normalise to a sorted tuple of ``(index, coef)`` with nonzero coefficients mod p."""
    items = entries.items() if isinstance(entries, Mapping) else entries
    acc: dict[int, int] = {}
    for i, c in items:
        acc[int(i)] = (acc.get(int(i), 0) + int(c)) % p
    return tuple(sorted((i, c) for i, c in acc.items() if c))


class EchelonBasis:
    """Fully reduced echelon basis of sparse vectors over F_p.

    Each row's pivot is its smallest index, normalised to 1, and no row
    contains another row's pivot.
    """

    def __init__(self, p: int):
        self.p = int(p)
        self._rows: dict[int, dict[int, int]] = {}

    def rank(self) -> int:
        return len(self._rows)

    __len__ = rank

    @property
    def pivots(self) -> set[int]:
        return set(self._rows)

    def rows(self) -> list[SparseVector]:
        return [tuple(sorted(self._rows[k].items())) for k in sorted(self._rows)]

    def reduce(self, v) -> dict[int, int]:
        """Remainder of ``v`` after subtracting multiples of the rows."""
        p = self.p
        w = dict(sparse_vector(v, p))
        # rows are fully reduced, so one pass over the pivots present suffices
        for piv in [i for i in w if i in self._rows]:
            c = w.get(piv, 0)
            if not c:
                continue
            for j, a in self._rows[piv].items():
                val = (w.get(j, 0) - c * a) % p
                if val:
                    w[j] = val
                else:
                    w.pop(j, None)
        return w

    def insert(self, v) -> bool:
        """Insert ``v``; return True iff the rank grew."""
        w = self.reduce(v)
        if not w:
            return False
        p = self.p
        piv = min(w)
        scale = pow(w[piv], p - 2, p)
        w = {j: a * scale % p for j, a in w.items()}
        for row in self._rows.values():
            c = row.get(piv)
            if c:
                for j, a in w.items():
                    val = (row.get(j, 0) - c * a) % p
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        self._rows[piv] = w
        return True


@dataclass(frozen=True)
class ImageChain:
    """``dims[t] = dim_k f^t R`` for t = 0..T."""

    dims: tuple[int, ...]
    terminated: bool


# ---------------------------------------------------------------------------
# lattice classes


def _hnf(vectors: list[list[int]]) -> list[tuple[list[int], int]]:
    """Row Hermite-style echelon form over Z; returns (row, pivot column) pairs."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    m = len(rows[0])
    out = []
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[i0] = rows[i0], rows[r]
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
            clean = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    k = rows[i][col] // rows[r][col]
                    rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
                    clean = clean and rows[i][col] == 0
            if clean:
                break
        if r < len(rows) and rows[r][col] != 0:
            out.append((rows[r], col))
            r += 1
            if r == len(rows):
                break
    return out


def _reduce_mod_lattice(vecs: np.ndarray, basis) -> np.ndarray:
    out = np.array(vecs, dtype=np.int64, copy=True)
    for row, col in basis:
        k = np.floor_divide(out[:, col], row[col])
        out -= k[:, None] * np.asarray(row, dtype=np.int64)[None, :]
    return out


def _support_lattice(exps: np.ndarray):
    """Echelon basis of the lattice spanned by ``exps[i] - exps[0]``."""
    diffs = exps[1:] - exps[0]
    basis: list[tuple[list[int], int]] = []
    while diffs.size:
        red = _reduce_mod_lattice(diffs, basis)
        nz = np.flatnonzero(np.any(red != 0, axis=1))
        if nz.size == 0:
            break
        basis = _hnf([r for r, _ in basis] + [red[nz[0]].tolist()])
        diffs = diffs[nz[1:]]
    return basis


@dataclass(frozen=True)
class _Blocks:
    starts: np.ndarray
    counts: np.ndarray
    members: np.ndarray  # encoded monomials grouped by class, ascending inside a class
    member_exps: np.ndarray
    loc: np.ndarray  # position of each monomial inside its class
    next_class: np.ndarray  # class reached by multiplying with the support, -1 if none


@lru_cache(maxsize=32)
def _blocks(support: tuple[tuple[int, ...], ...], q: int, nvars: int) -> _Blocks:
    exps = np.array(support, dtype=np.int64).reshape(-1, nvars)
    basis = _support_lattice(exps)
    n = q**nvars
    all_exps = decode(np.arange(n, dtype=np.int64), q, nvars)
    reps, labels = np.unique(_reduce_mod_lattice(all_exps, basis), axis=0, return_inverse=True)
    labels = labels.reshape(-1)
    nclass = reps.shape[0]
    order = np.argsort(labels, kind="stable")
    counts = np.bincount(labels, minlength=nclass).astype(np.int64)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
    loc = np.empty(n, dtype=np.int64)
    loc[order] = np.arange(n, dtype=np.int64) - starts[labels[order]]

    shifted = _reduce_mod_lattice(reps + exps[0], basis)
    _, inv = np.unique(np.concatenate([reps, shifted]), axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    owner = np.full(2 * nclass, -1, dtype=np.int64)
    owner[inv[:nclass]] = np.arange(nclass)
    next_class = owner[inv[nclass:]]
    return _Blocks(starts, counts, order.astype(np.int64), all_exps[order], loc, next_class)


# ---------------------------------------------------------------------------
# compiled kernels


@numba.njit(cache=True)
def _echelonize(w, p, inv):
    rows, cols = w.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if w[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = w[r, j]
                w[r, j] = w[piv, j]
                w[piv, j] = tmp
        s = inv[w[r, c]]
        for j in range(c, cols):
            w[r, j] = w[r, j] * s % p
        for i in range(r + 1, rows):
            a = w[i, c]
            if a != 0:
                na = p - a
                for j in range(c, cols):
                    w[i, j] = (w[i, j] + na * w[r, j]) % p
        r += 1
    return r


@numba.njit(cache=True)
def _chain_kernel(p, inv, q, starts, counts, members, member_exps, loc, next_class,
                  term_exps, term_enc, term_coef, tmax, dims):
    nclass = starts.size
    k = term_coef.size
    m = member_exps.shape[1]
    for c0 in range(nclass):
        s = counts[c0]
        v = np.zeros((s, s), np.int64)
        for i in range(s):
            v[i, i] = 1
        d = s
        c = c0
        for t in range(1, tmax + 1):
            c2 = next_class[c]
            if c2 < 0:
                break
            w = np.zeros((d, counts[c2]), np.int64)
            base = starts[c]
            for j in range(s):
                g = base + j
                for i in range(k):
                    inside = True
                    for l in range(m):
                        if member_exps[g, l] + term_exps[i, l] >= q:
                            inside = False
                            break
                    if not inside:
                        continue
                    col = loc[members[g] + term_enc[i]]
                    cf = term_coef[i]
                    for r in range(d):
                        a = v[r, j]
                        if a != 0:
                            w[r, col] = (w[r, col] + a * cf) % p
            d = _echelonize(w, p, inv)
            if d == 0:
                break
            dims[t] += d
            v = w[:d].copy()
            s = counts[c2]
            c = c2


def _dense_dims(g: TruncatedPoly, tmax: int) -> np.ndarray:
    n = g.ambient_dim
    dims = np.zeros(tmax + 1, dtype=np.int64)
    dims[0] = n
    if g.is_zero or tmax == 0:
        return dims
    exps = g.exponents()
    blocks = _blocks(tuple(map(tuple, exps.tolist())), g.q, g.nvars)
    _chain_kernel(
        g.p, inverse_table(g.p), g.q, blocks.starts, blocks.counts, blocks.members,
        blocks.member_exps, blocks.loc, blocks.next_class,
        exps, g.index, g.coef, tmax, dims,
    )
    return dims


# ---------------------------------------------------------------------------
# sparse reference path


def _mul_sparse(g: dict[tuple[int, ...], int], v: Mapping[int, int], q: int, nvars: int, p: int):
    out: dict[int, int] = {}
    weights = [q**j for j in range(nvars)]
    for idx, c in v.items():
        rest = idx
        base = []
        for _ in range(nvars):
            base.append(rest % q)
            rest //= q
        for exps, a in g.items():
            if all(b + x < q for b, x in zip(base, exps)):
                key = idx + sum(x * w for x, w in zip(exps, weights))
                out[key] = (out.get(key, 0) + a * c) % p
    return out


def _sparse_image(g: TruncatedPoly, generators: Iterable[Mapping[int, int]]) -> EchelonBasis:
    terms = g.as_dict()
    basis = EchelonBasis(g.p)
    for v in generators:
        basis.insert(_mul_sparse(terms, v, g.q, g.nvars, g.p))
    return basis


# ---------------------------------------------------------------------------
# public operations


def image_dimension(g: TruncatedPoly, strategy: str = "dense", capacity: int | None = None) -> int:
    """``dim_k(g * R)``: the rank of multiplication by ``g`` on the truncated ring."""
    n = check_capacity(g.p, g.e, g.nvars, capacity)
    if g.is_zero:
        return 0
    if strategy == "dense":
        return int(_dense_dims(g, 1)[1])
    if strategy == "sparse":
        return _sparse_image(g, ({i: 1} for i in range(n))).rank()
    raise ValueError(f"unknown strategy {strategy!r}")


def image_chain(f: TruncatedPoly, t_max: int | None = None, strategy: str = "dense",
                capacity: int | None = None) -> ImageChain:
    """Dimensions of ``f^t * R`` for t = 0, 1, ... up to ``t_max`` (default q).

    Stops at the first t with dimension 0 and marks the chain terminated.
    """
    n = check_capacity(f.p, f.e, f.nvars, capacity)
    if f.index.size and f.index[0] == 0:
        raise ValueError("f must lie in the maximal ideal")
    t_max = f.q if t_max is None else t_max
    if t_max > f.q:
        raise ValueError(f"t_max must be at most q = {f.q}")

    if strategy == "dense":
        raw = [int(d) for d in _dense_dims(f, t_max)]
    elif strategy == "sparse":
        raw = [n]
        rows: list[Mapping[int, int]] = [{i: 1} for i in range(n)]
        for _ in range(t_max):
            if not rows:
                break
            basis = _sparse_image(f, rows)
            raw.append(basis.rank())
            rows = [dict(r) for r in basis.rows()]
        raw += [0] * (t_max + 1 - len(raw))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    if 0 in raw:
        end = raw.index(0)
        return ImageChain(tuple(raw[: end + 1]), True)
    return ImageChain(tuple(raw), False)


def naive_chain(f: TruncatedPoly, t_max: int | None = None, strategy: str = "dense",
                capacity: int | None = None) -> ImageChain:
    """Same numbers as :func:`image_chain`, one power and one rank per t."""
    n = check_capacity(f.p, f.e, f.nvars, capacity)
    t_max = f.q if t_max is None else t_max
    dims = [n]
    g = TruncatedPoly.one(f.p, f.e, f.nvars)
    for _ in range(t_max):
        g = mul_truncated(g, f)
        dims.append(image_dimension(g, strategy, capacity))
        if dims[-1] == 0:
            return ImageChain(tuple(dims), True)
    return ImageChain(tuple(dims), False)
