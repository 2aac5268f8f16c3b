"""Necessary conditions for tractable partition functions, and their gadgets.

Matrices are symmetric with root-of-unity entries ``omega_M^e[i][j]`` and are
stored by their exponents, so row equality, linear dependence and Hadamard
closure are decided exactly.  Orthogonality is decided numerically with a
tolerance scaled by ``m``.

Gadget vertices are numbered ``u=1, v=2, a=3, b=4`` followed by the
per-copy vertices ``c_1..c_p`` and ``d_1..d_p``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .ntheory import is_prime_power
from .polyring import Hypergraph, Multigraph, SparsePoly, eval_point

DEFAULT_TOL = 1e-9

HARD = "Hard"
TRACTABLE = "TractableInClassC"
PASSED = "ConditionsPassed"


class PreconditionError(ValueError):
    """A condition test was applied to a matrix outside its domain."""


@dataclass(frozen=True)
class ExponentMatrix:
    """Symmetric ``m x m`` matrix with entries ``exp(2*pi*i*e[i][j]/M)``."""

    m: int
    M: int
    e: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.M < 1:
            raise ValueError(f"root order must be positive, got {self.M}")
        rows = tuple(tuple(int(x) % self.M for x in row) for row in self.e)
        if len(rows) != self.m or any(len(row) != self.m for row in rows):
            raise ValueError(f"exponent table is not {self.m}x{self.m}")
        for i, j in combinations(range(self.m), 2):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"exponent matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "e", rows)

    @classmethod
    def from_rows(cls, M: int, rows) -> ExponentMatrix:
        rows = [list(r) for r in rows]
        return cls(len(rows), M, tuple(tuple(r) for r in rows))

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.e, dtype=float).reshape(self.m, self.m) / self.M)

    def row(self, i: int) -> tuple[int, ...]:
        return self.e[i]

    def is_normalized(self) -> bool:
        return all(x == 0 for x in self.e[0])

    def to_json(self) -> dict:
        return {"m": self.m, "M": self.M, "exponents": [list(r) for r in self.e]}

    @classmethod
    def from_json(cls, data: dict) -> ExponentMatrix:
        return cls.from_rows(int(data["M"]), data["exponents"])

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def fourier_matrix(m: int) -> ExponentMatrix:
    """``e[i][j] = i*j mod m``."""
    return ExponentMatrix.from_rows(m, [[i * j % m for j in range(m)] for i in range(m)])


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of a yes/no condition; ``witness`` explains a failure (or is None)."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Rank1Witness:
    rows: tuple[int, int]
    cols: tuple[int, int]
    det: float


@dataclass(frozen=True)
class Decomposition:
    """``A`` equals ``A_prime`` blown up along ``block_map`` (index -> block)."""

    ell: int
    block_map: tuple[int, ...]
    A_prime: ExponentMatrix

    def to_json(self) -> dict:
        return {"ell": self.ell, "block_map": list(self.block_map), "A_prime": self.A_prime.to_json()}


@dataclass(frozen=True)
class HardnessVerdict:
    outcome: str
    witness: str
    decomposition: Decomposition | None = None
    # machine-checkable part of the witness, e.g. a row pair
    evidence: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": self.witness,
            "decomposition": None if self.decomposition is None else self.decomposition.to_json(),
        }


# ------------------------------------------------------------- conditions


def _inner(A: ExponentMatrix, i: int, j: int) -> complex:
    """``sum_k A[i,k] * conj(A[j,k])``."""
    diff = np.array(A.e[i], dtype=np.int64) - np.array(A.e[j], dtype=np.int64)
    return complex(np.exp(2j * np.pi * (diff % A.M) / A.M).sum())


def _dependent(A: ExponentMatrix, i: int, j: int) -> bool:
    """Rows are proportional iff their exponent difference is constant mod M."""
    diffs = {(a - b) % A.M for a, b in zip(A.e[i], A.e[j])}
    return len(diffs) <= 1


def is_discrete_unitary(A: ExponentMatrix, tol: float = DEFAULT_TOL) -> ConditionResult:
    if not A.is_normalized():
        return ConditionResult(False, "row/column 0 is not all ones")
    for i, j in combinations(range(A.m), 2):
        ip = abs(_inner(A, i, j))
        if ip > tol * A.m:
            return ConditionResult(False, f"rows {i} and {j} are not orthogonal (|inner product| = {ip:.6g})")
    return ConditionResult(True)


def rank1_violation(B, tol: float = DEFAULT_TOL) -> Rank1Witness | None:
    """Find a nonsingular 2x2 submatrix with at least three nonzero entries.

    "Nonzero" and "nonsingular" are judged relative to the largest entry:
    entries above ``tol * scale`` count, and determinants above
    ``tol * scale**2`` with ``scale = max(1, max |B|)``.
    """
    mat = np.asarray(B, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if np.any(mat < -tol):
        raise ValueError("rank-1 test expects a nonnegative matrix")
    m = mat.shape[0]
    scale = max(1.0, float(np.abs(mat).max(initial=0.0)))
    nonzero = (mat > tol * scale).astype(int)
    for i, j in combinations(range(m), 2):
        for k, l in combinations(range(m), 2):
            if nonzero[i, k] + nonzero[i, l] + nonzero[j, k] + nonzero[j, l] < 3:
                continue
            det = mat[i, k] * mat[j, l] - mat[i, l] * mat[j, k]
            if abs(det) > tol * scale * scale:
                return Rank1Witness((i, j), (k, l), float(det))
    return None


def orthogonality_violation(A: ExponentMatrix, tol: float = DEFAULT_TOL) -> tuple[int, int] | None:
    """First row pair that is neither linearly dependent nor orthogonal."""
    for i, j in combinations(range(A.m), 2):
        if _dependent(A, i, j):
            continue
        if abs(_inner(A, i, j)) > tol * A.m:
            return (i, j)
    return None


def _hadamard(A: ExponentMatrix, i: int, j: int) -> tuple[int, ...]:
    return tuple((a + b) % A.M for a, b in zip(A.e[i], A.e[j]))


def group_condition(A: ExponentMatrix, tol: float = DEFAULT_TOL) -> ConditionResult:
    """Is the row set closed under entrywise product?  Needs a discrete unitary A."""
    unitary = is_discrete_unitary(A, tol)
    if not unitary:
        raise PreconditionError(f"group condition needs a discrete unitary matrix: {unitary.witness}")
    rows = set(A.e)
    for i in range(A.m):
        for j in range(i, A.m):
            if _hadamard(A, i, j) not in rows:
                return ConditionResult(False, (i, j))
    return ConditionResult(True)


def row_classes(A: ExponentMatrix) -> tuple[int, ...]:
    """Block index of each row, blocks numbered by first appearance."""
    first: dict[tuple[int, ...], int] = {}
    return tuple(first.setdefault(row, len(first)) for row in A.e)


def generalized_group_condition(A: ExponentMatrix, tol: float = DEFAULT_TOL) -> HardnessVerdict:
    if not A.is_normalized():
        raise PreconditionError("generalized group condition needs row/column 0 to be all ones")
    for i, j in combinations(range(A.m), 2):
        if A.e[i] != A.e[j] and abs(_inner(A, i, j)) > tol * A.m:
            raise PreconditionError(
                f"rows {i} and {j} are neither equal nor orthogonal; use orthogonality_violation"
            )
    block_map = row_classes(A)
    ell = max(block_map) + 1
    sizes = [block_map.count(k) for k in range(ell)]
    if any(s * ell != A.m for s in sizes):
        k = next(k for k, s in enumerate(sizes) if s * ell != A.m)
        return HardnessVerdict(
            HARD,
            f"row class {k} has {sizes[k]} rows but m/ell = {A.m}/{ell}",
            evidence=("block-size", k, sizes[k]),
        )
    reps = [block_map.index(k) for k in range(ell)]
    rows = set(A.e)
    for ia, a in enumerate(reps):
        for b in reps[ia:]:
            if _hadamard(A, a, b) not in rows:
                return HardnessVerdict(
                    HARD,
                    f"Group Condition fails: the product of rows {a} and {b} is not a row",
                    evidence=("group", a, b),
                )
    A_prime = ExponentMatrix.from_rows(A.M, [[A.e[r][s] for s in reps] for r in reps])
    for i in range(A.m):
        for j in range(A.m):
            assert A.e[i][j] == A_prime.e[block_map[i]][block_map[j]], "block decomposition mismatch"
    order = sorted(range(A.m), key=lambda i: (block_map[i], i))
    return HardnessVerdict(
        TRACTABLE,
        f"A = J x A' with ell = {ell} blocks of size {A.m // ell}; index order {order}",
        Decomposition(ell, block_map, A_prime),
        evidence=("decomposition", ell),
    )


# ---------------------------------------------------------- S[q, h] matrices


def _retarget(h: SparsePoly, q: int) -> SparsePoly:
    if h.n != 2:
        raise ValueError(f"expected a polynomial in 2 variables, got {h.n}")
    return h if h.N == q else SparsePoly(2, q, dict(h.terms))


def matrix_from_h(q: int, h: SparsePoly, symmetrize: bool = False) -> ExponentMatrix:
    """``e[i][j] = h(i, j)`` (plus ``h(j, i)`` when symmetrizing) mod q."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    h = _retarget(h, q)
    table = [[eval_point(h, (i, j)) for j in range(q)] for i in range(q)]
    if symmetrize:
        table = [[(table[i][j] + table[j][i]) % q for j in range(q)] for i in range(q)]
    return ExponentMatrix.from_rows(q, table)


def in_class_C(q: int, h: SparsePoly, symmetrize: bool = False) -> bool:
    """Symmetric and vanishing whenever either argument is 0 (checked on all of Z_q^2)."""
    h = _retarget(h, q)

    def value(i: int, j: int) -> int:
        v = eval_point(h, (i, j))
        return (v + eval_point(h, (j, i))) % q if symmetrize else v

    return all(value(i, j) == value(j, i) for i in range(q) for j in range(q)) and all(
        value(0, x) == 0 and value(x, 0) == 0 for x in range(q)
    )


def classify_S(q: int, h: SparsePoly, symmetrize: bool = False, tol: float = DEFAULT_TOL) -> HardnessVerdict:
    """Run the hardness conditions on the matrix ``omega_q^h(i, j)``.

    Inside class C the tractable outcome is ``TractableInClassC``; outside it
    only ``ConditionsPassed`` can be claimed.
    """
    if is_prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    A = matrix_from_h(q, h, symmetrize)
    member = in_class_C(q, h, symmetrize)
    pair = orthogonality_violation(A, tol)
    if pair is not None:
        i, j = pair
        ip = abs(_inner(A, i, j))
        return HardnessVerdict(
            HARD,
            f"rows {i} and {j} are neither linearly dependent nor orthogonal (|inner product| = {ip:.6g})",
            evidence=("orthogonality", i, j),
        )
    if not A.is_normalized():
        return HardnessVerdict(PASSED, "no orthogonality violation; row 0 is not all ones so the group conditions do not apply")
    verdict = generalized_group_condition(A, tol)
    if verdict.outcome == TRACTABLE and not member:
        return HardnessVerdict(PASSED, verdict.witness + " (h is outside class C)", verdict.decomposition, verdict.evidence)
    return verdict


# ----------------------------------------------------------------- gadgets


@dataclass(frozen=True)
class Gadget:
    graph: Multigraph
    u: int = 1
    v: int = 2


def _bundle_graph(n: int, single, bundles, M: int) -> Multigraph:
    edges: dict[tuple[int, int], int] = {}
    for pair in single:
        key = tuple(sorted(pair))
        edges[key] = edges.get(key, 0) + 1
    for pair in bundles:
        key = tuple(sorted(pair))
        edges[key] = edges.get(key, 0) + M - 1
    return Multigraph(n, edges)


def gadget_Hp(p: int, M: int) -> Gadget:
    """Gadget whose pinned partition function is ``B^[p]``."""
    if p < 1 or M < 1:
        raise ValueError(f"need p >= 1 and M >= 1, got p={p}, M={M}")
    u, v, a, b = 1, 2, 3, 4
    single, bundles = [], []
    for i in range(1, p + 1):
        c, d = 4 + i, 4 + p + i
        single += [(u, c), (c, b), (d, a), (d, v)]
        bundles += [(c, v), (c, a), (d, b), (d, u)]
    return Gadget(_bundle_graph(2 * p + 4, single, bundles, M))


def gadget_star(M: int) -> Gadget:
    """Gadget whose pinned partition function is ``|<A_i, A_j>|^2``."""
    if M < 1:
        raise ValueError(f"need M >= 1, got {M}")
    u, v, a, b = 1, 2, 3, 4
    return Gadget(_bundle_graph(4, [(u, a), (b, v)], [(a, v), (u, b)], M))


def replace_edges(G: Multigraph, gadget: Gadget) -> Multigraph:
    """Replace every edge occurrence ``xy`` (x < y) by a fresh copy of the gadget."""
    inner = [w for w in range(1, gadget.graph.n + 1) if w not in (gadget.u, gadget.v)]
    edges: dict[tuple[int, int], int] = {}
    n = G.n
    for x, y in G.edge_occurrences():
        relabel = {gadget.u: x, gadget.v: y}
        for w in inner:
            n += 1
            relabel[w] = n
        for (s, t), mult in gadget.graph.edges.items():
            key = tuple(sorted((relabel[s], relabel[t])))
            edges[key] = edges.get(key, 0) + mult
    return Multigraph(n, edges)


def star_matrix(A: ExponentMatrix) -> np.ndarray:
    """``A*[i, j] = |sum_a A[i,a] conj(A[j,a])|^2``."""
    mat = A.to_complex()
    return np.abs(mat @ mat.conj().T) ** 2


def bp_matrix(A: ExponentMatrix, p: int) -> np.ndarray:
    """``B[i, j] = sum_{a,b} |<A_i o conj(A_j), A_a o conj(A_b)>|^(2p)``."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    mat = A.to_complex()
    m = A.m
    # row (i, j) of pairs is the Hadamard product A_i o conj(A_j)
    pairs = (mat[:, None, :] * mat.conj()[None, :, :]).reshape(m * m, m)
    gram = np.abs(pairs @ pairs.conj().T) ** (2 * p)
    return gram.sum(axis=1).reshape(m, m)


# ------------------------------------------------ reductions from the corollaries


def cor51_matrix(q: int) -> np.ndarray:
    """``sum_k omega_q^(i j k)``, evaluated exactly: q if q | ij, else 0."""
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    idx = np.arange(q)
    return np.where(np.outer(idx, idx) % q == 0, q, 0).astype(complex)


def cor51_hypergraph(G: Multigraph) -> Hypergraph:
    """One triple ``(u, v, w_e)`` per edge occurrence, ``w_e`` a fresh vertex."""
    occurrences = G.edge_occurrences()
    triples = [(u, v, G.n + k + 1) for k, (u, v) in enumerate(occurrences)]
    return Hypergraph(3, G.n + len(occurrences), tuple(triples))


def cor52_digraph(G: Multigraph) -> Hypergraph:
    """Both orientations of every edge occurrence."""
    arcs = []
    for u, v in G.edge_occurrences():
        arcs += [(u, v), (v, u)]
    return Hypergraph(2, G.n, tuple(arcs))
