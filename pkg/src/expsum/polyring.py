"""Polynomials over Z_N, the text parser, and structural constructions.

Variables are written ``x1 .. xn`` in text and in the hypergraph/multigraph
files; internally exponent vectors and quadratic coefficient keys are
0-indexed.

Polynomial grammar (whitespace is ignored)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := [integer ['*']] factor (['*'] factor)* | integer
    factor := 'x' index ['^' integer]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

MAX_EXPONENT = 2**31

Exponent = tuple[int, ...]


class ParseError(ValueError):
    """Malformed polynomial or graph text; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class DegreeError(ValueError):
    """A monomial of degree above 2 reached a quadratic-only operation."""


@dataclass(frozen=True, eq=True)
class SparsePoly:
    """Polynomial in ``n`` variables with coefficients in ``[1, N)``.

    ``terms`` maps exponent vectors to nonzero reduced coefficients.
    """

    n: int
    N: int
    terms: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"modulus must be positive, got {self.N}")
        clean = {}
        for exps, c in self.terms.items():
            exps = tuple(exps)
            if len(exps) != self.n:
                raise ValueError(f"exponent vector {exps} has length != {self.n}")
            if any(e < 0 or e >= MAX_EXPONENT for e in exps):
                raise ValueError(f"exponent out of range in {exps}")
            c %= self.N
            if c:
                clean[exps] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_terms(cls, n: int, N: int, terms: Iterable[tuple[int, Sequence[int]]]) -> SparsePoly:
        """Build from (coefficient, exponents) pairs, merging duplicates."""
        acc: dict[Exponent, int] = {}
        for c, exps in terms:
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + c
        return cls(n, N, acc)

    @property
    def monomials(self) -> list[tuple[int, Exponent]]:
        return [(c, e) for e, c in sorted(self.terms.items(), key=_mono_order)]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return format_poly(self)


def _mono_order(item):
    exps = item[0]
    return (-sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class QuadraticPoly:
    """``sum_{i<=j} quad[i,j] x_i x_j + sum_i lin[i] x_i + const`` over Z_N."""

    n: int
    N: int
    quad: Mapping[tuple[int, int], int] = field(default_factory=dict)
    lin: Mapping[int, int] = field(default_factory=dict)
    const: int = 0

    def __post_init__(self):
        quad = {}
        for (i, j), c in self.quad.items():
            if i > j:
                i, j = j, i
            if not (0 <= i and j < self.n):
                raise ValueError(f"index pair {(i, j)} out of range for n={self.n}")
            c %= self.N
            if c:
                quad[(i, j)] = (quad.get((i, j), 0) + c) % self.N
        lin = {}
        for i, c in self.lin.items():
            if not 0 <= i < self.n:
                raise ValueError(f"index {i} out of range for n={self.n}")
            c %= self.N
            if c:
                lin[i] = c
        object.__setattr__(self, "quad", {k: v for k, v in quad.items() if v})
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "const", self.const % self.N)

    def to_sparse(self) -> SparsePoly:
        terms = []
        for (i, j), c in self.quad.items():
            e = [0] * self.n
            e[i] += 1
            e[j] += 1
            terms.append((c, e))
        for i, c in self.lin.items():
            e = [0] * self.n
            e[i] = 1
            terms.append((c, e))
        terms.append((self.const, [0] * self.n))
        return SparsePoly.from_terms(self.n, self.N, terms)


@dataclass(frozen=True)
class Hypergraph:
    """r-uniform hypergraph on vertices 1..n; edges are ordered r-tuples (a multiset)."""

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        edges = tuple(tuple(e) for e in self.edges)
        for e in edges:
            if len(e) != self.r:
                raise ValueError(f"edge {e} does not have arity {self.r}")
            if any(not 1 <= v <= self.n for v in e):
                raise ValueError(f"edge {e} has a vertex outside 1..{self.n}")
        object.__setattr__(self, "edges", edges)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices 1..n without self-loops.

    ``edges`` maps a sorted vertex pair to its multiplicity (>= 1).
    """

    n: int
    edges: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[tuple[int, int], int] = {}
        for (u, v), mult in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {(u, v)} has a vertex outside 1..{self.n}")
            if mult < 0:
                raise ValueError(f"negative multiplicity on {(u, v)}")
            key = (min(u, v), max(u, v))
            clean[key] = clean.get(key, 0) + mult
        object.__setattr__(self, "edges", {k: m for k, m in sorted(clean.items()) if m})

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Multigraph:
        acc: dict[tuple[int, int], int] = {}
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            acc[key] = acc.get(key, 0) + 1
        return cls(n, acc)

    @property
    def num_edges(self) -> int:
        return sum(self.edges.values())

    def edge_occurrences(self) -> list[tuple[int, int]]:
        """Every edge repeated by its multiplicity, in sorted order."""
        return [e for e, mult in self.edges.items() for _ in range(mult)]


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|(\+)|(-)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(2)), start))
        elif m.group(3):
            tokens.append(("^", None, start))
        elif m.group(4):
            tokens.append(("*", None, start))
        elif m.group(5):
            tokens.append(("+", None, start))
        elif m.group(6):
            tokens.append(("-", None, start))
        else:
            raise ParseError(f"unexpected character {m.group(7)!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, N: int, n: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.N = N
        self.n = n

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> SparsePoly:
        acc: dict[Exponent, int] = {}
        sign = 1
        kind = self.peek()[0]
        if kind in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            c, exps = self.term()
            acc[exps] = acc.get(exps, 0) + sign * c
            kind, _, pos = self.peek()
            if kind == "end":
                break
            if kind not in "+-":
                raise ParseError("expected '+' or '-'", pos)
            sign = -1 if self.take()[0] == "-" else 1
        return SparsePoly(self.n, self.N, acc)

    def term(self) -> tuple[int, Exponent]:
        coeff = 1
        exps = [0] * self.n
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            coeff = value
            if self.peek()[0] == "*":
                self.take()
                if self.peek()[0] != "var":
                    raise ParseError("expected a variable after '*'", self.peek()[2])
            elif self.peek()[0] != "var":
                return coeff, tuple(exps)
        elif kind != "var":
            raise ParseError("expected a term", pos)
        while True:
            self.factor(exps)
            kind, _, pos = self.peek()
            if kind == "*":
                self.take()
                if self.peek()[0] != "var":
                    raise ParseError("expected a variable after '*'", self.peek()[2])
            elif kind != "var":
                break
        return coeff, tuple(exps)

    def factor(self, exps: list[int]) -> None:
        _, index, pos = self.take()
        if not 1 <= index <= self.n:
            raise ParseError(f"variable x{index} outside x1..x{self.n}", pos)
        power = 1
        if self.peek()[0] == "^":
            self.take()
            kind, value, p = self.take()
            if kind != "int":
                raise ParseError("expected an integer exponent after '^'", p)
            power = value
        exps[index - 1] += power
        if exps[index - 1] >= MAX_EXPONENT:
            raise ParseError(f"exponent of x{index} exceeds 2^31", pos)


def parse_poly(text: str, N: int, n: int) -> SparsePoly:
    """Parse ``text`` into a polynomial over Z_N in variables x1..xn."""
    if N < 1 or n < 0:
        raise ValueError(f"invalid modulus/arity N={N}, n={n}")
    return _Parser(text, N, n).parse()


def format_poly(f: SparsePoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for c, exps in f.monomials:
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------- constructions


def as_quadratic(f: SparsePoly) -> QuadraticPoly:
    quad: dict[tuple[int, int], int] = {}
    lin: dict[int, int] = {}
    const = 0
    for exps, c in f.terms.items():
        deg = sum(exps)
        support = [i for i, e in enumerate(exps) if e]
        if deg > 2:
            raise DegreeError(f"monomial {format_poly(SparsePoly(f.n, f.N, {exps: c}))} has degree {deg} > 2")
        if deg == 0:
            const = c
        elif deg == 1:
            lin[support[0]] = c
        elif len(support) == 1:
            quad[(support[0], support[0])] = c
        else:
            quad[(support[0], support[1])] = c
    return QuadraticPoly(f.n, f.N, quad, lin, const)


def eval_point(f: SparsePoly, x: Sequence[int]) -> int:
    if len(x) != f.n:
        raise ValueError(f"point has {len(x)} coordinates, polynomial has {f.n} variables")
    N = f.N
    total = 0
    for exps, c in f.terms.items():
        term = c
        for xi, e in zip(x, exps):
            if e:
                term = term * pow(xi, e, N) % N
        total += term
    return total % N


def h_type_expand(h: SparsePoly, G: Hypergraph, N: int | None = None) -> SparsePoly:
    """Sum of copies of ``h`` placed on the ordered edges of ``G``."""
    if h.n != G.r:
        raise ValueError(f"template has {h.n} variables but the hypergraph has arity {G.r}")
    N = h.N if N is None else N
    acc: dict[Exponent, int] = {}
    for edge in G.edges:
        for exps, c in h.terms.items():
            target = [0] * G.n
            for vertex, e in zip(edge, exps):
                target[vertex - 1] += e
            key = tuple(target)
            acc[key] = acc.get(key, 0) + c
    return SparsePoly(G.n, N, acc)


def scalar_retarget(f: SparsePoly, a: int, N_new: int) -> SparsePoly:
    """``a*f`` with coefficients reduced modulo ``N_new``."""
    return SparsePoly(f.n, N_new, {e: a * c for e, c in f.terms.items()})


def _poly_mul(p: dict, q: dict, N: int) -> dict:
    out: dict[Exponent, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            out[key] = (out.get(key, 0) + c1 * c2) % N
    return {k: v for k, v in out.items() if v}


def affine_substitute(f: SparsePoly, T: Sequence[Sequence[int]], t: Sequence[int]) -> SparsePoly:
    """Compose ``f`` with ``x = T y + t`` (any degree, expanded mod N)."""
    n, N = f.n, f.N
    if len(T) != n or any(len(row) != n for row in T) or len(t) != n:
        raise ValueError(f"substitution must be {n}x{n} with a length-{n} shift")
    unit = tuple([0] * n)
    rows = []
    for i in range(n):
        row: dict[Exponent, int] = {}
        for k in range(n):
            if T[i][k] % N:
                e = [0] * n
                e[k] = 1
                row[tuple(e)] = T[i][k] % N
        if t[i] % N:
            row[unit] = t[i] % N
        rows.append(row)
    acc: dict[Exponent, int] = {}
    for exps, c in f.terms.items():
        term = {unit: c}
        for i, e in enumerate(exps):
            for _ in range(e):
                term = _poly_mul(term, rows[i], N)
        for k, v in term.items():
            acc[k] = acc.get(k, 0) + v
    return SparsePoly(n, N, acc)


# ------------------------------------------------------------ graph files


def _data_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(fields, lineno):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(fields)!r}") from None


def read_hypergraph(text: str) -> Hypergraph:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty hypergraph file")
    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 2:
        raise ParseError(f"line {lineno}: header must be 'r n'")
    r, n = head
    edges = []
    for lineno, fields in lines[1:]:
        edge = _ints(fields, lineno)
        if len(edge) != r:
            raise ParseError(f"line {lineno}: edge must list {r} vertices")
        edges.append(tuple(edge))
    try:
        return Hypergraph(r, n, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_hypergraph(G: Hypergraph) -> str:
    lines = [f"{G.r} {G.n}"] + [" ".join(map(str, e)) for e in G.edges]
    return "\n".join(lines) + "\n"


def read_multigraph(text: str) -> Multigraph:
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty multigraph file")
    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 1:
        raise ParseError(f"line {lineno}: header must be the vertex count")
    edges: dict[tuple[int, int], int] = {}
    for lineno, fields in lines[1:]:
        vals = _ints(fields, lineno)
        if len(vals) != 3 or vals[2] < 1:
            raise ParseError(f"line {lineno}: expected 'u v mult' with mult >= 1")
        u, v, mult = vals
        key = (min(u, v), max(u, v))
        edges[key] = edges.get(key, 0) + mult
    try:
        return Multigraph(head[0], edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_multigraph(G: Multigraph) -> str:
    lines = [str(G.n)] + [f"{u} {v} {mult}" for (u, v), mult in G.edges.items()]
    return "\n".join(lines) + "\n"
