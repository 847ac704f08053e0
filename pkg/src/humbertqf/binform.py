"""Integral binary quadratic forms.

A form [a, b, c] is a*x^2 + b*xy + c*y^2 with exact integer coefficients.
This module provides Gauss reduction and GL2(Z)-equivalence, the classical
genus machinery (assigned characters, principal genus test), deterministic
representation searches, and the polarization-triple algebra: the set P(d)
of triples (n, m, k) with n, m > 0 and n*m - k^2*d = 1, the associated form
q_s, and the inverse problem of recovering a triple from a form of type d.

All searches are deterministic.  Vectors are enumerated in concentric
max-norm shells; inside a shell candidates are ordered by form value and
ties are broken lexicographically on the sign-normalised vector (first
nonzero coordinate positive).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import SearchExhaustedError
from .numtheory import (
    Character,
    assigned_character_set,
    crt,
    egcd,
    eval_character,
    factor,
    is_prime,
    modinv,
    sqrt_mod_raw,
)

DEFAULT_SEARCH_BUDGET = 10**6


class BinaryQF:
    """Integral binary quadratic form a*x^2 + b*xy + c*y^2."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int, c: int):
        self.a = int(a)
        self.b = int(b)
        self.c = int(c)

    def __repr__(self) -> str:
        return f"BinaryQF({self.a}, {self.b}, {self.c})"

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryQF) and (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def coefficients(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c

    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def primitive_part(self) -> "BinaryQF":
        g = self.content()
        return BinaryQF(self.a // g, self.b // g, self.c // g)

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc() < 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def scale(self, m: int) -> "BinaryQF":
        return BinaryQF(m * self.a, m * self.b, m * self.c)

    def transform(self, u: tuple[tuple[int, int], tuple[int, int]]) -> "BinaryQF":
        """The form q(U v) for a 2x2 integer matrix U given as rows."""
        p, q_ = u[0]
        r, s = u[1]
        a = self(p, r)
        c = self(q_, s)
        b = self(p + q_, r + s) - a - c
        return BinaryQF(a, b, c)

    def mirror(self) -> "BinaryQF":
        """The improperly equivalent form q(x, -y)."""
        return BinaryQF(self.a, -self.b, self.c)


@dataclass(frozen=True)
class PolarizationTriple:
    """Triple s = (n, m, k) in P(d): n, m > 0 and n*m - k^2*d = 1."""

    n: int
    m: int
    k: int
    d: int

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError(f"invalid triple: modulus d = {self.d} must be positive")
        if self.n <= 0 or self.m <= 0:
            raise ValueError(f"invalid triple ({self.n}, {self.m}, {self.k}): n, m must be positive")
        if self.n * self.m - self.k * self.k * self.d != 1:
            raise ValueError(
                f"invalid triple ({self.n}, {self.m}, {self.k}): n*m - k^2*{self.d} != 1"
            )


def reduce(q: BinaryQF) -> tuple[BinaryQF, tuple[tuple[int, int], tuple[int, int]]]:
    """Gauss-reduced representative and the unimodular transform reaching it.

    The canonical form satisfies |b| <= a <= c with b >= 0 when |b| = a or
    a = c.  The returned matrix U (determinant +1, acting by columns)
    satisfies q.transform(U) == reduced.
    """
    if not q.is_positive_definite():
        raise ValueError(f"reduce: form {q.coefficients()} is not positive definite")
    a, b, c = q.a, q.b, q.c
    u11, u12, u21, u22 = 1, 0, 0, 1
    while True:
        if c < a:
            # (x, y) -> (-y, x)
            a, b, c = c, -b, a
            u11, u12, u21, u22 = -u12, u11, -u22, u21
            continue
        if b > a or b <= -a:
            # pull b into (-a, a] via x -> x + delta * y
            delta = (a - b) // (2 * a)
            b2 = b + 2 * a * delta
            c2 = a * delta * delta + b * delta + c
            b, c = b2, c2
            u12, u22 = u12 + delta * u11, u22 + delta * u21
            continue
        if a == c and b < 0:
            a, b, c = c, -b, a
            u11, u12, u21, u22 = -u12, u11, -u22, u21
            break
        break
    reduced = BinaryQF(a, b, c)
    transform = ((u11, u12), (u21, u22))
    assert q.transform(transform) == reduced
    return reduced, transform


def equivalent(q1: BinaryQF, q2: BinaryQF) -> bool:
    """GL2(Z)-equivalence, decided by comparing reduced forms of both orientations."""
    r1, _ = reduce(q1)
    r2, _ = reduce(q2)
    if r1 == r2:
        return True
    r2m, _ = reduce(q2.mirror())
    return r1 == r2m


def reduced_forms_of_disc(disc: int, content: int = 1) -> list[BinaryQF]:
    """All reduced positive definite forms of the given discriminant and content.

    Enumerates the primitive reduced forms of disc/content^2 and scales them;
    the list is complete, duplicate-free and lexicographically ascending.
    """
    if content < 1:
        raise ValueError("reduced_forms_of_disc: content must be positive")
    if disc >= 0:
        raise ValueError("reduced_forms_of_disc: discriminant must be negative")
    if disc % (content * content) != 0:
        raise ValueError(f"reduced_forms_of_disc: {content}^2 does not divide {disc}")
    d0 = disc // (content * content)
    if d0 % 4 not in (0, 1):
        raise ValueError(f"reduced_forms_of_disc: {d0} is not 0 or 1 mod 4")
    forms = []
    a_max = isqrt(abs(d0) // 3)
    for a in range(1, a_max + 1):
        for b in range(-a, a + 1):
            if (b - d0) % 2 != 0:
                continue
            num = b * b - d0
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(BinaryQF(content * a, content * b, content * c))
    forms.sort(key=lambda f: f.coefficients())
    return forms


def represent_coprime(q: BinaryQF, n: int) -> tuple[int, int, int]:
    """A primitive vector (x, y) with q(x, y) coprime to n, by the congruence construction.

    Per prime p | n a residue pair is chosen -- (1,0) if p does not divide a,
    (0,1) if p does not divide c, else (1,1) -- the pairs are glued by the
    Chinese remainder theorem and the common gcd is divided out.
    """
    if q.content() != 1:
        raise ValueError("represent_coprime: form must be primitive")
    if n < 1:
        raise ValueError("represent_coprime: n must be positive")
    primes = [p for p, _ in factor(n)] if n > 1 else []
    if not primes:
        return 1, 0, q.a
    xs, ys = [], []
    for p in primes:
        if q.a % p != 0:
            xs.append(1)
            ys.append(0)
        elif q.c % p != 0:
            xs.append(0)
            ys.append(1)
        else:
            # p | gcd(a, c); primitivity forces p to miss b
            xs.append(1)
            ys.append(1)
    x = crt(xs, primes)
    y = crt(ys, primes)
    g = gcd(x, y)
    if g > 1:
        x //= g
        y //= g
    value = q(x, y)
    assert gcd(value, n) == 1
    return x, y, value


def character_set(q: BinaryQF) -> list[Character]:
    """Assigned characters of a primitive form, read off its discriminant."""
    if q.content() != 1:
        raise ValueError("character_set: form must be primitive")
    return assigned_character_set(q.disc())


def character_values(q: BinaryQF) -> list[tuple[Character, int]]:
    """The common character values, evaluated at one represented value coprime to 2*disc."""
    chars = character_set(q)
    if not chars:
        return []
    _, _, value = represent_coprime(q, 2 * abs(q.disc()))
    return [(chi, eval_character(chi, value)) for chi in chars]


def in_principal_genus(q: BinaryQF) -> bool:
    """True iff every assigned character of the primitive part has value +1."""
    if not q.is_positive_definite():
        return False
    return all(v == 1 for _, v in character_values(q.primitive_part()))


def form_representing_prime(d: int, p: int) -> BinaryQF:
    """The form [p, b, (b^2 - d)/(4p)] of discriminant d representing the odd prime p.

    Exists iff d is a quadratic residue mod p (and p does not divide d).
    b is pinned deterministically: the square root of d mod p produced by the
    power map a^((p+1)/4) for p = 3 (mod 4) (Tonelli-Shanks otherwise),
    lifted by +p when its parity disagrees with d.  Then 0 < b < 2p and
    b^2 = d (mod 4p).
    """
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"form_representing_prime: {d} is not a negative discriminant")
    if p < 3 or not is_prime(p):
        raise ValueError(f"form_representing_prime: {p} is not an odd prime")
    if d % p == 0:
        raise ValueError(f"prime-not-represented: {p} divides {d}")
    r = sqrt_mod_raw(d % p, p)
    if r is None:
        raise ValueError(f"prime-not-represented: {d} is not a square modulo {p}")
    b = r if (r - d) % 2 == 0 else r + p
    assert (b * b - d) % (4 * p) == 0 and 0 < b < 2 * p
    form = BinaryQF(p, b, (b * b - d) // (4 * p))
    assert form.disc() == d and form.content() == 1
    return form


def _solutions_of_value(q: BinaryQF, value: int) -> list[tuple[int, int]]:
    """All sign-normalised (x, y) with q(x, y) == value, sorted by (shell, lex)."""
    a, b, c = q.a, q.b, q.c
    d = q.disc()
    sols = set()
    y_max = isqrt(4 * a * value // abs(d)) + 1
    for y in range(-y_max, y_max + 1):
        # a x^2 + (b y) x + (c y^2 - value) = 0
        disc_x = b * b * y * y - 4 * a * (c * y * y - value)
        if disc_x < 0:
            continue
        rt = isqrt(disc_x)
        if rt * rt != disc_x:
            continue
        for sgn in (1, -1) if rt else (1,):
            num = -b * y + sgn * rt
            if num % (2 * a) == 0:
                v = (num // (2 * a), y)
                if v == (0, 0):
                    continue
                if v[0] < 0 or (v[0] == 0 and v[1] < 0):
                    v = (-v[0], -v[1])
                sols.add(v)
    return sorted(sols, key=lambda v: (max(abs(v[0]), abs(v[1])), v))


def represented_square(
    q: BinaryQF, coprime_to: int, bound: int
) -> tuple[int, int, int] | None:
    """Smallest N <= bound with gcd(N, coprime_to) = 1 and q primitively representing N^2.

    Returns (x, y, N) for the first solution in (shell, lex) order, or None.
    """
    if not q.is_positive_definite():
        raise ValueError("represented_square: form must be positive definite")
    for n in range(1, bound + 1):
        if gcd(n, coprime_to) != 1:
            continue
        for x, y in _solutions_of_value(q, n * n):
            if gcd(x, y) == 1:
                return x, y, n
    return None


def q_s(s: PolarizationTriple) -> BinaryQF:
    """The form [n^2, 2*k*d*(n*m + 2), m^2*d*(n*m + 3)] attached to the triple s."""
    n, m, k, d = s.n, s.m, s.k, s.d
    return BinaryQF(n * n, 2 * k * d * (n * m + 2), m * m * d * (n * m + 3))


def _complete_to_unimodular(x: int, y: int) -> tuple[int, int]:
    """Deterministic (z, w) with x*z - y*w = 1 for a primitive pair (x, y).

    w is the balanced residue in (-|x|/2, |x|/2] of the Bezout solution when
    x != 0; for x = 0 (so y = +-1) the convention is (z, w) = (0, -y).
    """
    if gcd(x, y) != 1:
        raise ValueError("cannot complete a non-primitive vector")
    if x == 0:
        return 0, -y
    g, u, v = egcd(x, y)
    w = -v
    half = abs(x)
    w %= half
    if 2 * w > half:
        w -= half
    z = (1 + y * w) // x
    assert x * z - y * w == 1
    return z, w


def type_d_triple(phi: BinaryQF, d: int) -> PolarizationTriple:
    """Recover s = (n, m, k) in P(d) with q_s equivalent to phi, for phi of type d.

    Follows the constructive recipe: find the smallest represented square N^2
    coprime to d, move it to the leading coefficient, then solve the
    congruence for k (odd N: k = (2d)^{-1} b mod N^2, smallest nonnegative;
    even N: k = |d* (b/2 + cbar*N/2)| with d* = d^{-1} mod N^2 and
    cbar = c mod 4 in {0, 1}).
    """
    if d <= 0:
        raise ValueError("type_d_triple: d must be positive")
    if phi.disc() != -16 * d:
        raise ValueError(f"not-type-d: disc {phi.disc()} != -16*{d}")
    if not in_principal_genus(phi.primitive_part()):
        raise ValueError("not-type-d: primitive part is not in the principal genus")
    found = represented_square(phi, d, (16 * d) ** 3)
    if found is None:
        raise ValueError("not-type-d: no represented square found within the bound")
    x, y, n_val = found
    z, w = _complete_to_unimodular(x, y)
    phi_t = phi.transform(((x, w), (y, z)))
    assert phi_t.a == n_val * n_val
    if phi_t.b % 2 != 0:
        raise ValueError("not-type-d: odd middle coefficient after transport")
    b_half = phi_t.b // 2
    n_sq = n_val * n_val
    if n_val % 2 == 1:
        k = b_half * modinv(2 * d, n_sq) % n_sq if n_sq > 1 else 0
    else:
        if b_half % 2 != 0:
            raise ValueError("not-type-d: middle coefficient not divisible by 4 at even N")
        c_bar = phi_t.c % 4
        if c_bar not in (0, 1):
            raise ValueError(f"not-type-d: trailing coefficient {phi_t.c} is {c_bar} mod 4")
        d_star = modinv(d, n_sq)
        k = abs(d_star * (b_half // 2 + c_bar * n_val // 2))
    if (k * k * d + 1) % n_val != 0:
        raise ValueError("not-type-d: recovered k fails the determinant identity")
    m = (k * k * d + 1) // n_val
    return PolarizationTriple(n_val, m, k, d)


def _shell_vectors_2d(rho: int):
    """Sign-normalised vectors of max-norm exactly rho, lexicographically ascending."""
    vecs = []
    for x in range(0, rho + 1):
        for y in range(-rho, rho + 1):
            if max(abs(x), abs(y)) != rho:
                continue
            if x == 0 and y < 0:
                continue
            vecs.append((x, y))
    vecs.sort()
    return vecs


def prime_represented_binary(
    q: BinaryQF, avoid: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> tuple[int, int, int]:
    """First (x, y, p) with the primitive part of q taking a prime value p coprime to avoid.

    Enumerates concentric max-norm shells; within a shell candidates are
    ordered by value, ties lexicographically.
    """
    if not q.is_positive_definite():
        raise ValueError("prime search needs a positive definite form")
    q0 = q.primitive_part()
    evaluations = 0
    rho = 1
    while True:
        batch = []
        for v in _shell_vectors_2d(rho):
            evaluations += 1
            batch.append((q0(*v), v))
        for value, v in sorted(batch):
            if gcd(value, avoid) == 1 and is_prime(value):
                return v[0], v[1], value
        if evaluations > budget:
            raise SearchExhaustedError("prime-search-exhausted", budget, f"form {q.coefficients()}")
        rho += 1
