import random

import pytest

from humbertqf import BinaryQF, TernaryQF


@pytest.fixture
def rng():
    return random.Random(20260811)


def random_binary_pd(rng, coeff=12, content_one=False, even_b=False):
    """Random positive definite binary form with small coefficients."""
    while True:
        a = rng.randint(1, coeff)
        b = rng.randint(-coeff, coeff)
        if even_b:
            b = 2 * (b // 2)
        c = rng.randint(1, coeff)
        q = BinaryQF(a, b, c)
        if not q.is_positive_definite():
            continue
        if content_one and q.content() != 1:
            continue
        return q


def random_ternary_pd(rng, coeff=6, content_one=False, even_cross=False):
    """Random positive definite ternary form with small coefficients."""
    while True:
        a, b, c = (rng.randint(1, coeff) for _ in range(3))
        r, s, t = (rng.randint(-coeff, coeff) for _ in range(3))
        if even_cross:
            r, s, t = 2 * (r // 2), 2 * (s // 2), 2 * (t // 2)
        f = TernaryQF(a, b, c, r, s, t)
        if not f.is_positive_definite():
            continue
        if content_one and f.content() != 1:
            continue
        return f


def random_sl2(rng, shears=5, bound=3):
    m = ((1, 0), (0, 1))
    for _ in range(shears):
        c = rng.randint(-bound, bound)
        if rng.random() < 0.5:
            m = ((m[0][0] + c * m[0][1], m[0][1]), (m[1][0] + c * m[1][1], m[1][1]))
        else:
            m = ((m[0][0], m[0][1] + c * m[0][0]), (m[1][0], m[1][1] + c * m[1][0]))
    return m


def random_gl3(rng, steps=6, bound=3):
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-bound, bound)
        for k in range(3):
            m[k][i] += c * m[k][j]
    if rng.random() < 0.5:
        m[0], m[1] = m[1], m[0]
    return m


def random_triple(rng, d_max=50, k_max=4):
    from humbertqf import PolarizationTriple

    d = rng.randint(1, d_max)
    k = rng.randint(-k_max, k_max)
    target = k * k * d + 1
    divisors = [n for n in range(1, target + 1) if target % n == 0]
    n = rng.choice(divisors)
    return PolarizationTriple(n, target // n, k, d)
