import cmath
import itertools
import math
import random
import sys

from hypothesis import settings

from expsum.polyring import QuadraticPoly, SparsePoly, eval_point

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def direct_sum(N: int, f: SparsePoly) -> complex:
    """Point-by-point sum, deliberately independent of the oracle module."""
    total = 0j
    for x in itertools.product(range(N), repeat=f.n):
        total += cmath.exp(2j * math.pi * eval_point(f, x) / N)
    return total


def random_quadratic(rng: random.Random, N: int, n: int) -> QuadraticPoly:
    quad = {(i, j): rng.randrange(N) for i in range(n) for j in range(i, n)}
    lin = {i: rng.randrange(N) for i in range(n)}
    return QuadraticPoly(n, N, quad, lin, rng.randrange(N))


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
