"""Exact evaluation of ``Z(N, f) = sum_{x in Z_N^n} exp(2*pi*i*f(x)/N)`` for quadratic f.

Runs in time polynomial in n, log N and the coefficient size, and never
factors N.  The modulus is split as ``2^k * N'`` by Chinese remaindering; odd
moduli are handled by completing squares against Gauss sums (splitting N
further whenever a coefficient exposes a proper coprime factor); powers of
two by a parity normalization followed by halving or square completion; and
modulus 2 by pairing off cross terms.

The work is kept on an explicit stack of subproblems.  Each subproblem is a
mutable quadratic form; every step either finishes it, replaces it with a
strictly smaller one (fewer variables or a smaller modulus), or splits it
into two coprime-modulus pieces, multiplying an exact factor into the
running product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cyclovalue import ONE, ZERO, SymbolicValue, integer, mul, root_of_unity, scale
from .gauss import gauss_sum
from .ntheory import coprime_split, ext_gcd, mod_inverse
from .polyring import DegreeError, QuadraticPoly, SparsePoly, as_quadratic, scalar_retarget


@dataclass
class _Form:
    """Working copy of a quadratic form over Z_N.

    Variables are identified by their original 0-based index; ``quad`` keys
    are pairs ``(i, j)`` with ``i <= j``.  ``vars`` lists every variable still
    summed over, including ones with no coefficients.
    """

    N: int
    vars: list[int]
    quad: dict[tuple[int, int], int] = field(default_factory=dict)
    lin: dict[int, int] = field(default_factory=dict)
    const: int = 0

    @classmethod
    def from_quadratic(cls, f: QuadraticPoly, N: int) -> _Form:
        form = cls(N, list(range(f.n)), dict(f.quad), dict(f.lin), f.const)
        form.reduce()
        return form

    def reduce(self) -> None:
        N = self.N
        self.quad = {k: c % N for k, c in self.quad.items() if c % N}
        self.lin = {k: c % N for k, c in self.lin.items() if c % N}
        self.const %= N

    def coefficients(self):
        yield from self.quad.values()
        yield from self.lin.values()

    def add_quad(self, i: int, j: int, c: int) -> None:
        key = (i, j) if i <= j else (j, i)
        v = (self.quad.get(key, 0) + c) % self.N
        if v:
            self.quad[key] = v
        else:
            self.quad.pop(key, None)

    def add_lin(self, i: int, c: int) -> None:
        v = (self.lin.get(i, 0) + c) % self.N
        if v:
            self.lin[i] = v
        else:
            self.lin.pop(i, None)

    def pop_variable(self, s: int) -> tuple[int, dict[int, int], int]:
        """Remove every term containing ``x_s``.

        Returns ``(diag, cross, lin)`` so that the removed part equals
        ``diag*x_s^2 + x_s*(sum_k cross[k]*x_k + lin)``.
        """
        diag = self.quad.pop((s, s), 0)
        cross = {}
        for k in self.vars:
            if k == s:
                continue
            c = self.quad.pop((k, s) if k < s else (s, k), 0)
            if c:
                cross[k] = c
        return diag, cross, self.lin.pop(s, 0)

    def add_square(self, scale_: int, affine: dict[int, int], const: int) -> None:
        """Add ``scale_ * (sum_k affine[k] x_k + const)^2``."""
        items = sorted(affine.items())
        N = self.N
        quad = self.quad
        for a, (i, ci) in enumerate(items):
            sci = scale_ * ci % N
            self.add_quad(i, i, sci * ci)
            twice = 2 * sci
            # rank-one update of row i, inlined: this loop is the hot path
            for j, cj in items[a + 1:]:
                key = (i, j)
                v = (quad.get(key, 0) + twice * cj) % N
                if v:
                    quad[key] = v
                else:
                    quad.pop(key, None)
            self.add_lin(i, twice * const)
        self.const = (self.const + scale_ * const * const) % N

    def substitute(self, s: int, affine: dict[int, int], const: int) -> None:
        """Replace ``x_s`` by ``sum_k affine[k] x_k + const``.

        ``affine`` may mention ``s`` itself, which then denotes the new
        variable occupying slot ``s``.
        """
        diag, cross, lin = self.pop_variable(s)
        if diag:
            self.add_square(diag, affine, const)
        for k, c in cross.items():
            for j, a in affine.items():
                self.add_quad(k, j, c * a)
            self.add_lin(k, c * const)
        if lin:
            for j, a in affine.items():
                self.add_lin(j, lin * a)
            self.const = (self.const + lin * const) % self.N

    def drop_unused(self) -> int:
        used = set(self.lin)
        used.update(v for v in self.vars if (v, v) in self.quad)
        if len(used) < len(self.vars):
            for i, j in self.quad:
                used.add(i)
                used.add(j)
        before = len(self.vars)
        self.vars = [v for v in self.vars if v in used]
        return before - len(self.vars)


@dataclass
class _Step:
    """Outcome of one reduction step: ``Z(form) = factor * prod Z(children)``."""

    factor: SymbolicValue
    children: list[_Form] = field(default_factory=list)


def _power(base: int, e: int) -> SymbolicValue:
    return integer(base**e) if e else ONE


# ------------------------------------------------------------- dispatch


def _step(form: _Form) -> _Step:
    # forms arrive reduced: constructors call reduce() and updates stay mod N
    factor = root_of_unity(form.const, form.N)
    form.const = 0
    N = form.N
    if N == 1:
        return _Step(factor)
    unused = form.drop_unused()
    factor = mul(factor, _power(N, unused))
    if not form.vars:
        return _Step(factor)
    two_part = N & -N
    if two_part != 1 and two_part != N:
        return _Step(factor, _crt_children(form, two_part, N // two_part))
    if two_part == 1:
        inner = _odd_step(form)
    elif N == 2:
        inner = _Step(integer(_mod2_value(form)))
    else:
        inner = _pow2_step(form)
    inner.factor = mul(factor, inner.factor)
    return inner


def _crt_children(form: _Form, N1: int, N2: int) -> list[_Form]:
    """Pieces of the coprime split ``Z(N1 N2, f) = Z(N1, a f) * Z(N2, b f)``."""
    _, b, a = ext_gcd(N1, N2)  # b*N1 + a*N2 = 1
    children = []
    for modulus, mult in ((N1, a), (N2, b)):
        child = _Form(
            modulus,
            list(form.vars),
            {k: c * mult for k, c in form.quad.items()},
            {k: c * mult for k, c in form.lin.items()},
            form.const * mult,
        )
        child.reduce()
        children.append(child)
    return children


def _run(form: _Form) -> SymbolicValue:
    depth_limit = len(form.vars) + form.N.bit_length()
    acc = ONE
    stack = [(form, 0)]
    while stack:
        current, depth = stack.pop()
        assert depth <= depth_limit, f"reduction depth {depth} exceeds {depth_limit}"
        step = _step(current)
        acc = mul(acc, step.factor)
        if acc.is_zero:
            return ZERO
        stack.extend((child, depth + 1) for child in step.children)
    return acc


# ------------------------------------------------------------ odd modulus


def _try_split(N: int, c: int) -> tuple[int, int] | None:
    if math.gcd(c, N) == 1:
        return None
    return coprime_split(N, c).factors


def _eliminate_odd(form: _Form, s: int) -> SymbolicValue:
    """Complete the square in ``x_s`` (its square coefficient is a unit mod odd N)."""
    N = form.N
    diag, cross, lin = form.pop_variable(s)
    form.vars.remove(s)
    # diag*x^2 + x*L = diag*(x + L/(2 diag))^2 - L^2/(4 diag)
    form.add_square(-mod_inverse(4 * diag, N), cross, lin)
    return gauss_sum(diag, N)


def _odd_step(form: _Form) -> _Step:
    N = form.N
    # One modular product stands in for a gcd per coefficient: if it is a
    # unit, so is every coefficient and no coprime split can exist.
    prod = 1
    for c in form.coefficients():
        prod = prod * c % N
    all_units = math.gcd(prod, N) == 1
    if not all_units:
        for key in sorted(form.quad):
            split = _try_split(N, form.quad[key])
            if split:
                return _Step(ONE, _crt_children(form, *split))
        for key in sorted(form.lin):
            split = _try_split(N, form.lin[key])
            if split:
                return _Step(ONE, _crt_children(form, *split))

    def unit(c: int) -> bool:
        return c != 0 and (all_units or math.gcd(c, N) == 1)

    quad = form.quad
    order = sorted(form.vars)
    coprime_diag = next((v for v in order if unit(quad.get((v, v), 0))), None)
    coprime_cross = None
    if coprime_diag is None:
        coprime_cross = min((k for k, c in quad.items() if k[0] != k[1] and unit(c)), default=None)
    coprime_lin = next((v for v in order if unit(form.lin.get(v, 0))), None)

    # every coefficient is now a unit or divisible by all primes of N
    if coprime_diag is not None:
        return _Step(_eliminate_odd(form, coprime_diag), [form])
    if coprime_cross is not None:
        i, j = coprime_cross
        # x_i = y_i + y_j, x_j = y_i - y_j, done as two single-slot substitutions
        form.substitute(j, {i: 1, j: -2}, 0)
        form.substitute(i, {i: 1, j: 1}, 0)
        return _Step(_eliminate_odd(form, i), [form])
    if coprime_lin is not None:
        # no quadratic unit but a linear unit: the sum over that variable vanishes
        return _Step(ZERO)
    d = N
    for c in form.coefficients():
        d = math.gcd(d, c)
    n = len(form.vars)
    child = _Form(
        N // d,
        list(form.vars),
        {k: c // d for k, c in form.quad.items()},
        {k: c // d for k, c in form.lin.items()},
    )
    return _Step(_power(d, n), [child])


# ------------------------------------------------------ power-of-2 modulus


def _normalize_parity(form: _Form) -> tuple[int, bool]:
    """Make every cross and linear coefficient even.

    Returns ``(halvings, vanished)``: the value of the form before the call is
    ``2**-halvings`` times its value after, or zero if ``vanished``.
    """
    N = form.N
    halvings = 0
    while True:
        assert halvings <= len(form.vars), "parity normalization failed to advance"
        order = form.vars
        t = None
        for pos, v in enumerate(order):
            if form.lin.get(v, 0) % 2 or any(
                form.quad.get((v, w), 0) % 2 for w in order[pos + 1:]
            ):
                t = pos
                break
        if t is None:
            return halvings, False
        xt = order[t]
        later = order[t + 1:]
        ell = next((w for w in later if form.quad.get((xt, w), 0) % 2), None)
        if ell is None:
            # only the linear coefficient of x_t is odd: f_1 is odd everywhere
            return halvings, True
        inv = mod_inverse(form.quad[(xt, ell)], N)
        affine = {ell: 2 * inv}
        for w in order[:t]:
            c = form.quad.get((w, xt), 0)
            if c:
                affine[w] = -inv * c
        for w in later:
            if w != ell:
                c = form.quad.get((xt, w), 0)
                if c:
                    affine[w] = -inv * c
        form.substitute(ell, {k: v % N for k, v in affine.items()}, -inv * form.lin.get(xt, 0) % N)
        halvings += 1


def _pow2_step(form: _Form) -> _Step:
    halvings, vanished = _normalize_parity(form)
    if vanished:
        return _Step(ZERO)
    factor = scale(ONE, 1, 2**halvings)
    N = form.N
    odd_diag = next((v for v in form.vars if form.quad.get((v, v), 0) % 2), None)
    if odd_diag is None:
        n = len(form.vars)
        child = _Form(
            N // 2,
            list(form.vars),
            {k: c // 2 for k, c in form.quad.items()},
            {k: c // 2 for k, c in form.lin.items()},
        )
        # the parity substitutions may have produced a constant term
        factor = mul(mul(factor, root_of_unity(form.const, N)), _power(2, n))
        return _Step(factor, [child])
    s = odd_diag
    diag, cross, lin = form.pop_variable(s)
    form.vars.remove(s)
    # diag*x^2 + 2x*H = diag*(x + H/diag)^2 - H^2/diag with H = (cross.x + lin)/2
    half = {k: c // 2 for k, c in cross.items()}
    form.add_square(-mod_inverse(diag, N), half, lin // 2)
    return _Step(mul(factor, gauss_sum(diag, N)), [form])


# ---------------------------------------------------------------- modulus 2


def _mod2_value(form: _Form) -> int:
    """``sum_{x in {0,1}^n} (-1)^{f(x)}`` for the form's polynomial over Z_2."""
    quad: dict[tuple[int, int], int] = {}
    lin: dict[int, int] = {}
    for (i, j), c in form.quad.items():
        if c % 2:
            if i == j:
                lin[i] = lin.get(i, 0) ^ 1
            else:
                quad[(i, j)] = 1
    for i, c in form.lin.items():
        if c % 2:
            lin[i] = lin.get(i, 0) ^ 1
    return _mod2_sum(len(form.vars), quad, {k for k, v in lin.items() if v}, form.const % 2)


def _mod2_sum(n: int, quad: dict, lin: set, const: int) -> int:
    factor = 1
    quad = {k for k, v in quad.items() if v}
    lin = set(lin)
    while quad:
        u, v = min(quad)
        quad.discard((u, v))
        # f = x_u x_v + x_u A + x_v B + C;  sum over x_u, x_v gives 2 (-1)^{A B}
        A_vars, B_vars = set(), set()
        for i, j in list(quad):
            if u in (i, j) or v in (i, j):
                quad.discard((i, j))
                other_u = j if i == u else i if j == u else None
                if other_u is not None:
                    A_vars ^= {other_u}
                else:
                    B_vars ^= {j if i == v else i}
        A_const = 1 if u in lin else 0
        B_const = 1 if v in lin else 0
        lin.discard(u)
        lin.discard(v)
        # add A*B where A = A_vars + A_const, B = B_vars + B_const
        for a in A_vars:
            for b in B_vars:
                if a == b:
                    lin ^= {a}
                else:
                    quad ^= {(min(a, b), max(a, b))}
        if A_const:
            lin ^= B_vars
        if B_const:
            lin ^= A_vars
        const ^= A_const & B_const
        factor *= 2
        n -= 2
    if lin:
        return 0
    return factor * (-1) ** const * 2**n


# -------------------------------------------------------------- public API


def _to_quadratic(f, N: int) -> QuadraticPoly:
    if isinstance(f, QuadraticPoly):
        return f
    if isinstance(f, SparsePoly):
        if f.degree > 2:
            raise DegreeError(f"polynomial has degree {f.degree} > 2")
        return as_quadratic(f)
    raise TypeError(f"expected SparsePoly or QuadraticPoly, got {type(f).__name__}")


def _check_result(value: SymbolicValue) -> SymbolicValue:
    assert value.is_zero or value.coeff.denominator == 1, f"non-integral coefficient in {value}"
    return value


def z_eval(N: int, f) -> SymbolicValue:
    """Exact ``Z(N, f)``; f is a quadratic ``SparsePoly`` or ``QuadraticPoly``.

    The coefficients of f are read as integers and reduced modulo ``N``.
    """
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    return _check_result(_run(_Form.from_quadratic(_to_quadratic(f, N), N)))


def crt_split_eval(N1: int, N2: int, f) -> SymbolicValue:
    """``Z(N1 N2, f)`` as ``Z(N1, a f) * Z(N2, b f)`` where ``b N1 + a N2 = 1``."""
    if N1 <= 1 or N2 <= 1 or math.gcd(N1, N2) != 1:
        raise ValueError(f"need coprime moduli > 1, got {N1} and {N2}")
    if isinstance(f, QuadraticPoly):
        f = f.to_sparse()
    _, b, a = ext_gcd(N1, N2)
    return mul(z_eval(N1, scalar_retarget(f, a, N1)), z_eval(N2, scalar_retarget(f, b, N2)))


def z_odd(N: int, f) -> SymbolicValue:
    if N < 3 or N % 2 == 0:
        raise ValueError(f"z_odd needs an odd modulus >= 3, got {N}")
    return z_eval(N, f)


def z_pow2(k: int, f) -> SymbolicValue:
    if k < 1:
        raise ValueError(f"z_pow2 needs k >= 1, got {k}")
    return z_eval(1 << k, f)


def z_mod2_int(f) -> int:
    """``sum_x (-1)^{f(x)}`` over ``{0,1}^n`` as an exact integer."""
    q = _to_quadratic(f, 2)
    form = _Form(2, list(range(q.n)), dict(q.quad), dict(q.lin), q.const)
    form.reduce()
    return _mod2_value(form)


def z_mod2(f) -> SymbolicValue:
    return integer(z_mod2_int(f))
