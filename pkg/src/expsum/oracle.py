"""Brute-force reference evaluators.

Nothing here is clever: every point of ``Z_N^n`` (or every vertex colouring)
is visited and evaluated from scratch.  numpy is used only to visit many
points per Python-level step.  Counts are exact integers and the conversion
to a complex number happens once, at the end.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .polyring import Multigraph, SparsePoly

DEFAULT_BUDGET = 10**8

# points evaluated per numpy batch
_CHUNK = 1 << 17
# largest modulus for which (N-1)^2 fits in int64
_INT64_MODULUS_LIMIT = 3_000_000_000


class BudgetExceededError(RuntimeError):
    """The enumeration would visit more points than the budget allows."""


@dataclass(frozen=True)
class CountVector:
    """``counts[k]`` is the number of points where ``f(x) = k (mod N)``."""

    N: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.N:
            raise ValueError(f"expected {self.N} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def value(self) -> complex:
        return brute_value(self, self.N)


def _check_budget(size: int, budget: int, what: str) -> None:
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    if size > budget:
        raise BudgetExceededError(f"{what} = {size} exceeds the budget {budget}")


def _digits(start: int, stop: int, base: int, width: int, dtype) -> np.ndarray:
    """Odometer points ``start..stop-1`` as rows; the last coordinate turns fastest."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=dtype)
    for col in range(width - 1, -1, -1):
        out[:, col] = idx % base
        idx //= base
    return out


def _vector_pow(x: np.ndarray, e: int, N: int) -> np.ndarray:
    if e == 1:
        return x
    result = np.ones_like(x)
    base = x
    while e:
        if e & 1:
            result = result * base % N
        e >>= 1
        if e:
            base = base * base % N
    return result


def _fits_unreduced(f: SparsePoly) -> bool:
    """Can every term be summed in int64 before a single final reduction?"""
    bound = sum(c * (f.N - 1) ** sum(exps) for exps, c in f.terms.items())
    return bound < 2**62


def _evaluate_chunk(f: SparsePoly, points: np.ndarray) -> np.ndarray:
    N = f.N
    if points.dtype != object and _fits_unreduced(f):
        total = np.zeros(points.shape[0], dtype=np.int64)
        for exps, c in f.terms.items():
            term = np.full(points.shape[0], c, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    term *= points[:, i] ** e
            total += term
        return total % N
    total = np.zeros(points.shape[0], dtype=points.dtype)
    for exps, c in f.terms.items():
        term = None
        for i, e in enumerate(exps):
            if e:
                factor = _vector_pow(points[:, i], e, N)
                term = factor if term is None else term * factor % N
        total = total + c if term is None else (total + term * c % N) % N
    return total % N


def brute_counts(N: int, f: SparsePoly, budget: int = DEFAULT_BUDGET) -> CountVector:
    """Exact value distribution of ``f`` over ``Z_N^n`` by full enumeration."""
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    if f.N != N:
        f = SparsePoly(f.n, N, dict(f.terms))
    size = N**f.n
    _check_budget(max(size, N), budget, f"N^n = {N}^{f.n}")
    counts = [0] * N
    if f.n == 0:
        counts[f.terms.get((), 0) % N] += 1
        return CountVector(N, tuple(counts))
    dtype = np.int64 if N < _INT64_MODULUS_LIMIT else object
    for start in range(0, size, _CHUNK):
        stop = min(size, start + _CHUNK)
        points = _digits(start, stop, N, f.n, np.int64).astype(dtype)
        values = _evaluate_chunk(f, points)
        if dtype is object:
            for k in values:
                counts[int(k)] += 1
        else:
            for k in np.flatnonzero(hist := np.bincount(values, minlength=N)):
                counts[int(k)] += int(hist[k])
    return CountVector(N, tuple(counts))


def _root(k: int, N: int) -> complex:
    # exact on the axes so that integer-valued sums come out clean
    if (4 * k) % N == 0:
        return (1, 1j, -1, -1j)[4 * k // N]
    return cmath.exp(2j * math.pi * k / N)


def brute_value(counts: CountVector, N: int | None = None) -> complex:
    """``sum_k counts[k] * exp(2*pi*i*k/N)`` in double precision."""
    N = counts.N if N is None else N
    if N != counts.N:
        raise ValueError(f"count vector has modulus {counts.N}, not {N}")
    return complex(sum(c * _root(k, N) for k, c in enumerate(counts.counts) if c))


# ------------------------------------------------------ partition functions


def _as_matrix(A) -> np.ndarray:
    mat = np.asarray(A, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    return mat


def _free_vertices(G: Multigraph, m: int, pins: Mapping[int, int]) -> list[int]:
    for vertex, color in pins.items():
        if not 1 <= vertex <= G.n:
            raise ValueError(f"pinned vertex {vertex} is outside 1..{G.n}")
        if not 0 <= color < m:
            raise ValueError(f"pin colour {color} is outside 0..{m - 1}")
    return [v for v in range(1, G.n + 1) if v not in pins]


def _colourings(G: Multigraph, m: int, pins: Mapping[int, int], budget: int):
    """Yield blocks of colourings as an array indexed by vertex (column 0 unused)."""
    free = _free_vertices(G, m, pins)
    size = m ** len(free)
    _check_budget(size, budget, f"m^|V| = {m}^{len(free)}")
    for start in range(0, size, _CHUNK):
        stop = min(size, start + _CHUNK)
        block = np.zeros((stop - start, G.n + 1), dtype=np.int64)
        if free:
            block[:, free] = _digits(start, stop, m, len(free), np.int64)
        for vertex, color in pins.items():
            block[:, vertex] = color
        yield block


def brute_partition_pinned(A, G: Multigraph, pins: Mapping[int, int], budget: int = DEFAULT_BUDGET) -> complex:
    """``Z_A(G)`` summed only over colourings that agree with ``pins`` (vertex -> colour)."""
    mat = _as_matrix(A)
    m = mat.shape[0]
    powers = [(u, v, mat**mult) for (u, v), mult in G.edges.items()]
    total = 0j
    for block in _colourings(G, m, pins, budget):
        weight = np.ones(block.shape[0], dtype=complex)
        for u, v, entry in powers:
            weight *= entry[block[:, u], block[:, v]]
        total += weight.sum()
    return complex(total)


def brute_partition(A, G: Multigraph, budget: int = DEFAULT_BUDGET) -> complex:
    """``Z_A(G) = sum over colourings xi of prod_{uv} A[xi(u), xi(v)]^mult``."""
    return brute_partition_pinned(A, G, {}, budget)


# -------------------------------------------- colour-pair profiles (reuse)


@dataclass(frozen=True)
class EdgeProfile:
    """Colourings of one graph grouped by how many edges hit each colour pair.

    ``pairs`` lists the unordered colour pairs ``(a, b)``, ``a <= b``;
    ``exponents[r, k]`` is how many edge occurrences join colours ``pairs[k]``
    in the r-th group and ``weights[r]`` is the number of colourings in it.
    For a symmetric matrix the partition function depends only on this data,
    so one profile serves every matrix of the same size.
    """

    m: int
    pairs: tuple[tuple[int, int], ...]
    exponents: np.ndarray
    weights: np.ndarray


def edge_profile(G: Multigraph, m: int, pins: Mapping[int, int] | None = None,
                 budget: int = DEFAULT_BUDGET) -> EdgeProfile:
    pins = dict(pins or {})
    pairs = tuple((a, b) for a in range(m) for b in range(a, m))
    pair_index = np.zeros((m, m), dtype=np.int64)
    for k, (a, b) in enumerate(pairs):
        pair_index[a, b] = pair_index[b, a] = k
    groups: dict[bytes, int] = {}
    rows: dict[bytes, np.ndarray] = {}
    for block in _colourings(G, m, pins, budget):
        counts = np.zeros((block.shape[0], len(pairs)), dtype=np.int64)
        for (u, v), mult in G.edges.items():
            cols = pair_index[block[:, u], block[:, v]]
            counts[np.arange(block.shape[0]), cols] += mult
        uniq, freq = np.unique(counts, axis=0, return_counts=True)
        for row, c in zip(uniq, freq):
            key = row.tobytes()
            groups[key] = groups.get(key, 0) + int(c)
            rows.setdefault(key, row)
    keys = sorted(groups)
    exponents = np.array([rows[k] for k in keys], dtype=np.int64).reshape(len(keys), len(pairs))
    weights = np.array([groups[k] for k in keys], dtype=np.int64)
    return EdgeProfile(m, pairs, exponents, weights)


def evaluate_profile(profile: EdgeProfile, A) -> complex:
    """``Z_A`` of the profiled graph for a symmetric ``A``."""
    mat = _as_matrix(A)
    if mat.shape[0] != profile.m:
        raise ValueError(f"profile is for {profile.m}x{profile.m} matrices, got {mat.shape}")
    if not np.allclose(mat, mat.T):
        raise ValueError("profiles only apply to symmetric matrices")
    entries = np.array([mat[a, b] for a, b in profile.pairs])
    terms = np.prod(entries[None, :] ** profile.exponents, axis=1)
    return complex(np.dot(profile.weights, terms))
