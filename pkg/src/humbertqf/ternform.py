"""Integral ternary quadratic forms.

A form [a, b, c, r, s, t] is a*x^2 + b*y^2 + c*z^2 + r*yz + s*xz + t*xy.
Its coefficient matrix is M(f) = [[2a, t, s], [t, 2b, r], [s, r, 2c]], so
disc(f) = -4abc - rst + ar^2 + bs^2 + ct^2 = det(M(f)) / (-2).

The module provides the adjoint/reciprocal calculus and the Brandt genus
invariants I1, I2 (16*disc = I1^2*I2 for primitive forms), assigned
characters, genus equivalence, a canonical reduction for positive definite
forms, the classical construction of a binary form represented by a ternary
form, prime-value searches, and the classifier for forms that arise as
refined Humbert invariants ("geometric" forms).

Reduction convention.  eisenstein_reduce returns the unique class
representative whose basis values are the successive minima (so the leading
coefficient is the minimum of the form) and whose cross coefficients
minimise the key (|r|, |s|, |t|, r, -s, -t) lexicographically among all
minima-attaining bases.  The representative is computed exactly (integer
LLL preprocessing, then a finite basis search), is idempotent, and is
cross-validated against a brute-force GL3(Z) oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .binform import BinaryQF
from .errors import SearchExhaustedError
from .numtheory import (
    Character,
    assigned_character_set,
    crt,
    egcd,
    eval_character,
    factor,
    is_prime,
)

DEFAULT_SEARCH_BUDGET = 10**6


class TernaryQF:
    """Integral ternary quadratic form [a, b, c, r, s, t]."""

    __slots__ = ("a", "b", "c", "r", "s", "t")

    def __init__(self, a: int, b: int, c: int, r: int, s: int, t: int):
        self.a = int(a)
        self.b = int(b)
        self.c = int(c)
        self.r = int(r)
        self.s = int(s)
        self.t = int(t)

    def __repr__(self) -> str:
        return f"TernaryQF{self.coefficients()}"

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryQF) and self.coefficients() == other.coefficients()

    def __hash__(self) -> int:
        return hash(self.coefficients())

    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return self.a, self.b, self.c, self.r, self.s, self.t

    def __call__(self, x: int, y: int, z: int) -> int:
        return (
            self.a * x * x
            + self.b * y * y
            + self.c * z * z
            + self.r * y * z
            + self.s * x * z
            + self.t * x * y
        )

    def gram(self) -> list[list[int]]:
        """Coefficient matrix M(f) (even diagonal, f(v) = v^T M v / 2)."""
        return [
            [2 * self.a, self.t, self.s],
            [self.t, 2 * self.b, self.r],
            [self.s, self.r, 2 * self.c],
        ]

    def bilinear(self, u: tuple[int, int, int], v: tuple[int, int, int]) -> int:
        """Polar form value u^T M(f) v = f(u+v) - f(u) - f(v)."""
        m = self.gram()
        return sum(u[i] * m[i][j] * v[j] for i in range(3) for j in range(3))

    def disc(self) -> int:
        a, b, c, r, s, t = self.coefficients()
        return -4 * a * b * c - r * s * t + a * r * r + b * s * s + c * t * t

    def content(self) -> int:
        return gcd(gcd(gcd(self.a, self.b), gcd(self.c, self.r)), gcd(self.s, self.t))

    def divide(self, m: int) -> "TernaryQF":
        if any(x % m for x in self.coefficients()):
            raise ValueError(f"{m} does not divide all coefficients of {self}")
        return TernaryQF(*(x // m for x in self.coefficients()))

    def scale(self, m: int) -> "TernaryQF":
        return TernaryQF(*(m * x for x in self.coefficients()))

    def primitive_part(self) -> "TernaryQF":
        return self.divide(self.content())

    def is_positive_definite(self) -> bool:
        a = self.a
        m2 = 4 * self.a * self.b - self.t * self.t
        return a > 0 and m2 > 0 and self.disc() < 0

    def transform(self, u: list[list[int]]) -> "TernaryQF":
        """The form f(U v) for a 3x3 integer matrix U given as rows."""
        cols = [(u[0][j], u[1][j], u[2][j]) for j in range(3)]
        a = self(*cols[0])
        b = self(*cols[1])
        c = self(*cols[2])
        r = self.bilinear(cols[1], cols[2])
        s = self.bilinear(cols[0], cols[2])
        t = self.bilinear(cols[0], cols[1])
        return TernaryQF(a, b, c, r, s, t)

    def restrict(self, u: tuple[int, int, int], w: tuple[int, int, int]) -> BinaryQF:
        """The binary form f(x*u + y*w) cut out by a 3x2 transformation."""
        return BinaryQF(self(*u), self.bilinear(u, w), self(*w))


def disc_ternary(f: TernaryQF) -> int:
    """Discriminant -4abc - rst + ar^2 + bs^2 + ct^2 (equals det M(f) / -2)."""
    return f.disc()


def adjoint(f: TernaryQF) -> TernaryQF:
    """The form whose coefficient matrix is -2 * adj(M(f))."""
    m = f.gram()
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = (
                m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            )
            cof[j][i] = (-1) ** (i + j) * minor  # transposed: adjugate
    madj = [[-2 * cof[i][j] for j in range(3)] for i in range(3)]
    return TernaryQF(
        madj[0][0] // 2, madj[1][1] // 2, madj[2][2] // 2, madj[1][2], madj[0][2], madj[0][1]
    )


def reciprocal(f: TernaryQF) -> tuple[TernaryQF, int]:
    """(F, I1) with adjoint(f) = I1 * F, F primitive positive definite.

    For positive definite f the adjoint is negative definite, so I1 < 0.
    """
    if f.content() != 1:
        raise ValueError("reciprocal-needs-primitive: content > 1")
    if not f.is_positive_definite():
        raise ValueError("reciprocal: form must be positive definite")
    adj = adjoint(f)
    i1 = -adj.content()
    return adj.divide(i1), i1


def brandt_invariants(f: TernaryQF) -> tuple[int, int]:
    """(I1, I2) for a primitive positive definite form; 16*disc = I1^2 * I2."""
    fb, i1 = reciprocal(f)
    _, i2 = reciprocal(fb)
    assert 16 * f.disc() == i1 * i1 * i2
    return i1, i2


def is_improperly_primitive(f: TernaryQF) -> bool:
    """All coefficients even, half form primitive, some halved cross coefficient odd."""
    if any(x % 2 for x in f.coefficients()):
        return False
    half = f.divide(2)
    return half.content() == 1 and any(x % 2 for x in (half.r, half.s, half.t))


@dataclass(frozen=True)
class GenusInvariants:
    """Brandt invariants I1, I2 plus the classical (Omega, Delta) when defined."""

    I1: int
    I2: int
    omega: int | None
    delta: int | None
    primitivity: str  # properly-primitive | improperly-primitive | imprimitive-other


def basic_invariants(f: TernaryQF) -> GenusInvariants:
    """Genus invariants of f, or of its primitive core for the supported imprimitive shapes.

    Accepted inputs: primitive forms (properly primitive when all cross
    coefficients are even, otherwise the classical improperly primitive
    class, whose double carries the same data); improperly primitive forms
    (computed on f/2); and forms of content 4 whose half is improperly
    primitive (computed on f/4, the shape taken by imprimitive refined
    Humbert invariants).
    """
    if not f.is_positive_definite():
        raise ValueError("basic_invariants: form must be positive definite")
    cont = f.content()
    if cont == 1:
        i1, i2 = brandt_invariants(f)
        if all(x % 2 == 0 for x in (f.r, f.s, f.t)):
            omega = -i1 // 4 if i1 % 4 == 0 else None
            return GenusInvariants(i1, i2, omega, None, "properly-primitive")
        # odd cross coefficients: the double 2f is the classical improperly
        # primitive form, with Omega = -I1(f) and Delta = -I2(f)/8
        delta = -i2 // 8 if i2 % 8 == 0 else None
        return GenusInvariants(i1, i2, -i1, delta, "improperly-primitive")
    if is_improperly_primitive(f):
        half = f.divide(2)
        i1, i2 = brandt_invariants(half)
        return GenusInvariants(i1, i2, -i1, -i2 // 8, "improperly-primitive")
    if cont == 4 and is_improperly_primitive(f.divide(2)):
        quarter = f.divide(4)
        i1, i2 = brandt_invariants(quarter)
        return GenusInvariants(i1, i2, -i1, -i2 // 8, "imprimitive-other")
    raise ValueError(f"basic_invariants: unsupported primitivity class (content {cont})")


def represent_coprime_ternary(f: TernaryQF, n: int) -> tuple[tuple[int, int, int], int]:
    """Primitive vector v with f(v) coprime to n, by the per-prime congruence construction."""
    if f.content() != 1:
        raise ValueError("represent_coprime_ternary: form must be primitive")
    if n < 1:
        raise ValueError("represent_coprime_ternary: n must be positive")
    primes = [p for p, _ in factor(n)] if n > 1 else []
    if not primes:
        return (1, 0, 0), f.a
    picks = []
    for p in primes:
        if f.a % p != 0:
            picks.append((1, 0, 0))
        elif f.b % p != 0:
            picks.append((0, 1, 0))
        elif f.c % p != 0:
            picks.append((0, 0, 1))
        elif f.r % p != 0:
            picks.append((0, 1, 1))
        elif f.s % p != 0:
            picks.append((1, 0, 1))
        else:
            picks.append((1, 1, 0))
    v = tuple(crt([pk[i] for pk in picks], primes) for i in range(3))
    g = gcd(gcd(v[0], v[1]), v[2])
    if g > 1:
        v = tuple(x // g for x in v)
    value = f(*v)
    assert gcd(value, n) == 1
    return v, value


def character_data(f: TernaryQF) -> list[tuple[Character, int]]:
    """Assigned characters of a primitive form (selected from I1) with their values.

    To read the reciprocal-side characters X(F) pass the reciprocal itself,
    whose leading invariant is I2(f).
    """
    i1, _ = brandt_invariants(f)
    chars = assigned_character_set(i1)
    if not chars:
        return []
    odd_part = 1
    for chi in chars:
        if chi.kind == "odd-prime":
            odd_part *= chi.modulus
    _, value = represent_coprime_ternary(f, 2 * odd_part)
    return [(chi, eval_character(chi, value)) for chi in chars]


def genus_equal(f1: TernaryQF, f2: TernaryQF) -> bool:
    """Genus equivalence for properly primitive positive definite forms.

    Decided by Brandt invariants plus assigned character values on the forms
    and on their reciprocals.
    """
    for f in (f1, f2):
        if f.content() != 1 or not f.is_positive_definite():
            raise ValueError("genus_equal: both forms must be primitive positive definite")
        if any(x % 2 for x in (f.r, f.s, f.t)):
            raise ValueError("genus_equal: only properly primitive forms are supported")
    inv1, inv2 = brandt_invariants(f1), brandt_invariants(f2)
    if inv1 != inv2:
        return False
    if dict(character_data(f1)) != dict(character_data(f2)):
        return False
    fb1, _ = reciprocal(f1)
    fb2, _ = reciprocal(f2)
    return dict(character_data(fb1)) == dict(character_data(fb2))


# ---------------------------------------------------------------------------
# canonical reduction
# ---------------------------------------------------------------------------


def _lll_gram(gram: list[list[int]]) -> list[list[int]]:
    """Rows of a unimodular matrix whose basis LLL-reduces the given Gram matrix."""
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def ip(u, v):
        return sum(u[i] * gram[i][j] * v[j] for i in range(3) for j in range(3))

    delta = Fraction(99, 100)
    k = 1
    guard = 0
    while k < 3:
        guard += 1
        if guard > 10000:
            raise RuntimeError("LLL failed to terminate")
        # Gram-Schmidt data for the current basis
        b_star_sq = []
        mu = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            norm = Fraction(ip(basis[i], basis[i]))
            for j in range(i):
                mu[i][j] = Fraction(ip(basis[i], basis[j]))
                for l in range(j):
                    mu[i][j] -= mu[i][l] * mu[j][l] * b_star_sq[l]
                mu[i][j] /= b_star_sq[j]
                norm -= mu[i][j] ** 2 * b_star_sq[j]
            b_star_sq.append(norm)
        # size-reduce b_k against b_{k-1}, ..., b_0
        for j in range(k - 1, -1, -1):
            q = mu[k][j]
            if abs(q) > Fraction(1, 2):
                m = int(q + Fraction(1, 2)) if q > 0 else -int(-q + Fraction(1, 2))
                basis[k] = [basis[k][i] - m * basis[j][i] for i in range(3)]
                mu_kj = Fraction(ip(basis[k], basis[j]))
                for l in range(j):
                    mu_kj -= mu[k][l] * mu[j][l] * b_star_sq[l]
                mu[k][j] = mu_kj / b_star_sq[j]
                for l in range(j):
                    mu[k][l] -= m * mu[j][l]
        # recompute after size reduction
        b_star_sq = []
        mu = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            norm = Fraction(ip(basis[i], basis[i]))
            for j in range(i):
                mu[i][j] = Fraction(ip(basis[i], basis[j]))
                for l in range(j):
                    mu[i][j] -= mu[i][l] * mu[j][l] * b_star_sq[l]
                mu[i][j] /= b_star_sq[j]
                norm -= mu[i][j] ** 2 * b_star_sq[j]
            b_star_sq.append(norm)
        if b_star_sq[k] >= (delta - mu[k][k - 1] ** 2) * b_star_sq[k - 1]:
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            k = max(k - 1, 1)
    return basis


def _short_vectors(f: TernaryQF, bound: int) -> list[tuple[tuple[int, int, int], int]]:
    """Sign-normalised vectors with 0 < f(v) <= bound (complete), with values."""
    m = f.gram()
    detm = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    # per-coordinate box bound: v_i^2 <= 2 * bound * adj(M)_ii / det(M)
    bounds = []
    for i in range(3):
        rows = [r for r in range(3) if r != i]
        adj_ii = m[rows[0]][rows[0]] * m[rows[1]][rows[1]] - m[rows[0]][rows[1]] * m[rows[1]][rows[0]]
        bounds.append(isqrt(2 * bound * adj_ii // detm) + 1)
    out = []
    for x in range(0, bounds[0] + 1):
        for y in range(0 if x == 0 else -bounds[1], bounds[1] + 1):
            z_start = 1 if x == 0 and y == 0 else -bounds[2]
            for z in range(z_start, bounds[2] + 1):
                value = f(x, y, z)
                if 0 < value <= bound:
                    out.append(((x, y, z), value))
    return out


def _rank(vectors: list[tuple[int, int, int]]) -> int:
    """Rank over Q of a list of integer 3-vectors (fraction-free elimination)."""
    rows = [list(v) for v in vectors]
    rank = 0
    col = 0
    while rank < len(rows) and col < 3:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                a, b = rows[rank][col], rows[i][col]
                rows[i] = [a * rows[i][j] - b * rows[rank][j] for j in range(3)]
        rank += 1
        col += 1
    return rank


def _det3(cols) -> int:
    (a, d, g), (b, e, h), (c, f, i) = cols
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def eisenstein_reduce(f: TernaryQF) -> TernaryQF:
    """Canonical reduced representative of the GL3(Z)-class of f.

    The output diagonal equals the successive minima of f; the cross
    coefficients minimise (|r|, |s|, |t|, r, -s, -t) lexicographically over
    all minima-attaining bases.  Idempotent, discriminant- and
    content-preserving.
    """
    if not f.is_positive_definite():
        raise ValueError("eisenstein_reduce: form must be positive definite")
    lll_rows = _lll_gram(f.gram())
    g = f.transform([[lll_rows[j][i] for j in range(3)] for i in range(3)])
    bound = max(g.a, g.b, g.c)
    shorts = _short_vectors(g, bound)
    shorts.sort(key=lambda pv: (pv[1], pv[0]))
    # successive minima via rank growth over the sorted list
    lambdas = []
    chosen: list[tuple[int, int, int]] = []
    for v, value in shorts:
        if _rank(chosen + [v]) > len(chosen):
            chosen.append(v)
            lambdas.append(value)
            if len(lambdas) == 3:
                break
    l1, l2, l3 = lambdas
    cands1 = [v for v, val in shorts if val == l1]
    cands2 = [v for v, val in shorts if val == l2]
    cands3 = [v for v, val in shorts if val == l3]
    best_key = None
    best = None
    for u1 in cands1:
        for sign1 in (1, -1):
            v1 = (sign1 * u1[0], sign1 * u1[1], sign1 * u1[2])
            for u2 in cands2:
                for sign2 in (1, -1):
                    v2 = (sign2 * u2[0], sign2 * u2[1], sign2 * u2[2])
                    for u3 in cands3:
                        for sign3 in (1, -1):
                            v3 = (sign3 * u3[0], sign3 * u3[1], sign3 * u3[2])
                            if abs(_det3((v1, v2, v3))) != 1:
                                continue
                            r = g.bilinear(v2, v3)
                            s = g.bilinear(v1, v3)
                            t = g.bilinear(v1, v2)
                            key = (abs(r), abs(s), abs(t), r, -s, -t)
                            if best_key is None or key < best_key:
                                best_key = key
                                best = (g(*v1), g(*v2), g(*v3), r, s, t)
    if best is None:
        raise RuntimeError("eisenstein_reduce: no unimodular minima basis found")
    reduced = TernaryQF(*best)
    assert reduced.disc() == f.disc() and reduced.content() == f.content()
    return reduced


def equivalent_ternary(f1: TernaryQF, f2: TernaryQF) -> bool:
    """GL3(Z)-equivalence, decided by comparing canonical reduced forms."""
    if f1.disc() != f2.disc() or f1.content() != f2.content():
        return False
    return eisenstein_reduce(f1) == eisenstein_reduce(f2)


# ---------------------------------------------------------------------------
# binary sections and prime values
# ---------------------------------------------------------------------------


def _three_term_bezout(a1: int, a2: int, a3: int) -> tuple[int, int, int]:
    """(l, m, n) with a1*l + a2*m + a3*n = gcd = 1, via two Euclid passes."""
    g12, alpha_p, beta_p = egcd(a1, a2)
    g, alpha, beta = egcd(g12, a3)
    if g != 1:
        raise ValueError("three-term Bezout: gcd is not 1")
    return alpha * alpha_p, alpha * beta_p, beta


_PERM_IDENTITY = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
_PERM_SWAP_YZ = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
_PERM_SWAP_XZ = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def produce_phi(
    f: TernaryQF, v: tuple[int, int, int]
) -> tuple[tuple[tuple[int, int], tuple[int, int], tuple[int, int]], BinaryQF]:
    """Binary form properly represented by f, built from a primitive vector v.

    Returns (T, phi) where T is a 3x2 integer matrix (rows) whose 2x2 minors
    are coprime, and phi(x, y) = f(T (x, y)).  When v is a vector of the
    classical reciprocal of f, disc(phi) = -4 * Omega_f * F_f(v).
    The construction uses g = gcd(z0, x0 + y0), the column
    (z0/g, z0/g, -(x0+y0)/g), a Bezout solution, and a coordinate swap when
    z0 = 0.
    """
    x0, y0, z0 = v
    if gcd(gcd(x0, y0), z0) != 1:
        raise ValueError("produce_phi: vector must be primitive")
    if z0 == 0:
        if y0 != 0:
            perm = _PERM_SWAP_YZ
        elif x0 != 0:
            perm = _PERM_SWAP_XZ
        else:
            raise ValueError("produce_phi: zero vector")
        g_perm = f.transform(perm)
        w = tuple(sum(perm[i][j] * v[j] for j in range(3)) for i in range(3))
        t_inner, phi = produce_phi(g_perm, w)
        # undo the permutation on the rows of T
        t_rows = tuple(tuple(row) for row in t_inner)
        t_full = tuple(
            tuple(sum(perm[i][j] * t_rows[j][col] for j in range(3)) for col in (0, 1))
            for i in range(3)
        )
        return t_full, phi
    g = gcd(z0, x0 + y0)
    a1 = z0 // g
    a2 = z0 // g
    a3 = -(x0 + y0) // g
    l, m, n = _three_term_bezout(a1, a2, a3)
    b1 = a1 - m * z0 + n * y0
    b2 = a2 - n * x0 + l * z0
    b3 = a3 - l * y0 + m * x0
    col_a = (a1, a2, a3)
    col_b = (b1, b2, b3)
    minors = [
        col_a[i] * col_b[j] - col_a[j] * col_b[i] for i, j in ((0, 1), (0, 2), (1, 2))
    ]
    assert gcd(gcd(minors[0], minors[1]), minors[2]) == 1
    phi = f.restrict(col_a, col_b)
    t_matrix = ((a1, b1), (a2, b2), (a3, b3))
    return t_matrix, phi


def _shell_vectors_3d(rho: int) -> list[tuple[int, int, int]]:
    """Sign-normalised vectors of max-norm exactly rho, lexicographically ascending."""
    vecs = []
    for x in range(0, rho + 1):
        for y in range(-rho, rho + 1):
            for z in range(-rho, rho + 1):
                if max(abs(x), abs(y), abs(z)) != rho:
                    continue
                if x == 0 and (y < 0 or (y == 0 and z < 0)):
                    continue
                vecs.append((x, y, z))
    vecs.sort()
    return vecs


def prime_represented_ternary(
    f: TernaryQF, avoid: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> tuple[tuple[int, int, int], int]:
    """First (v, p) with f(v) = p an odd prime coprime to avoid.

    Enumerates concentric max-norm shells; within a shell candidates are
    ordered by value, ties lexicographically.
    """
    if f.content() != 1 or not f.is_positive_definite():
        raise ValueError("prime_represented_ternary: form must be primitive positive definite")
    evaluations = 0
    rho = 1
    while True:
        batch = []
        for v in _shell_vectors_3d(rho):
            evaluations += 1
            batch.append((f(*v), v))
        for value, v in sorted(batch):
            if value % 2 == 1 and gcd(value, avoid) == 1 and is_prime(value):
                return v, value
        if evaluations > budget:
            raise SearchExhaustedError(
                "prime-search-exhausted", budget, f"form {f.coefficients()}"
            )
        rho += 1


# ---------------------------------------------------------------------------
# geometric classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometricClassification:
    """Outcome of the geometric-form test."""

    geometric: bool
    case: str | None  # 'primitive' | 'imprimitive' | None
    witness: tuple[int, int, int, int] | None  # (x, y, z, n)
    detail: str = ""


def _values_mod4_ok(f: TernaryQF) -> bool:
    """Exhaustive check that f only takes values 0, 1 mod 4."""
    return all(
        f(x, y, z) % 4 in (0, 1) for x in range(4) for y in range(4) for z in range(4)
    )


def _square_witness(
    f: TernaryQF, coprime_to: int, max_shell: int
) -> tuple[int, int, int, int] | None:
    """First vector (shells, then value, then lex) with f(v) = n^2 and gcd(n, coprime_to) = 1."""
    for rho in range(1, max_shell + 1):
        batch = sorted((f(*v), v) for v in _shell_vectors_3d(rho))
        for value, v in batch:
            n = isqrt(value)
            if n * n == value and gcd(n, coprime_to) == 1:
                return (*v, n)
    return None


def is_geometric(f: TernaryQF, max_shell: int | None = None) -> GeometricClassification:
    """Classify whether f can occur as the refined Humbert invariant of a surface.

    Primitive case: every value must be 0 or 1 mod 4 (decided exactly by
    residue exhaustion) and f must represent a square coprime to its
    discriminant.  Imprimitive case: f/2 must be improperly primitive and f
    must represent (2n)^2 with gcd(n, disc) = 1.  The square search is a
    bounded enumeration: a negative answer that is not forced by the residue
    test means "no witness within the bound", which is reported in detail.
    """
    if not f.is_positive_definite():
        return GeometricClassification(False, None, None, "not positive definite")
    disc = f.disc()
    cont = f.content()
    if max_shell is None:
        max_shell = max(32, abs(disc))
    if cont == 1:
        if not _values_mod4_ok(f):
            return GeometricClassification(False, "primitive", None, "takes a value 2 or 3 mod 4")
        witness = _square_witness(f, disc, max_shell)
        if witness is None:
            return GeometricClassification(
                False, "primitive", None, f"no coprime square witness within shell bound {max_shell}"
            )
        return GeometricClassification(True, "primitive", witness)
    if cont == 4 and is_improperly_primitive(f.divide(2)):
        quarter = f.divide(4)
        witness = _square_witness(quarter, disc, max_shell)
        if witness is None:
            return GeometricClassification(
                False,
                "imprimitive",
                None,
                f"no coprime square witness within shell bound {max_shell}",
            )
        return GeometricClassification(True, "imprimitive", witness)
    return GeometricClassification(
        False, None, None, f"content {cont} does not match either classification case"
    )
