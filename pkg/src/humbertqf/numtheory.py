"""Exact arbitrary-precision number-theoretic kernel.

Everything here is a pure function of its arguments, uses Python integers
only, and is deterministic: the same input always produces the same output.
The primality test is a Miller-Rabin round over the fixed witness set
{2, 3, ..., 37}, which is known to be correct for all n < 3317044064679887385961981
(about 3.3e24); larger inputs are rejected rather than answered
probabilistically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

# Largest bound for which the fixed Miller-Rabin witness set below is a proven
# deterministic primality test (Sorenson-Webster).
_MR_PROVEN_BOUND = 3317044064679887385961981
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_DIVISION_LIMIT = 10**6


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g.

    egcd(0, 0) is (0, 0, 0) by convention.
    """
    if a == 0 and b == 0:
        return 0, 0, 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def modinv(a: int, m: int) -> int:
    """Inverse of a modulo m, as the smallest positive representative."""
    g, x, _ = egcd(a, m)
    if g != 1:
        raise ValueError(f"modinv: {a} is not invertible modulo {m}")
    return x % m


def crt(residues: list[int], moduli: list[int]) -> int:
    """Chinese remainder lift: the unique v in [0, prod(moduli)) with v = r_i mod m_i.

    The moduli must be pairwise coprime.
    """
    if len(residues) != len(moduli):
        raise ValueError("crt: residues and moduli must have equal length")
    v, m = 0, 1
    for r_i, m_i in zip(residues, moduli):
        if m_i <= 0:
            raise ValueError("crt: moduli must be positive")
        if gcd(m, m_i) != 1:
            raise ValueError(f"crt-moduli-not-coprime: gcd({m}, {m_i}) > 1")
        g, u, w = egcd(m, m_i)
        assert g == 1
        # v' = v mod m, r_i mod m_i
        v = (v * w * m_i + r_i * u * m) % (m * m_i)
        m *= m_i
    return v


def jacobi(a: int, n: int) -> int:
    """Legendre-Jacobi symbol (a/n) for odd positive n; 0 iff gcd(a, n) > 1."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi: modulus must be odd and positive, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class Character:
    """A real character used as a genus ('assigned') character.

    kind is one of 'odd-prime' (the quadratic residue symbol mod an odd prime),
    'minus-four', 'eight', 'minus-four-times-eight'; modulus is the odd prime,
    4, 8 and 8 respectively.
    """

    kind: str
    modulus: int

    def __post_init__(self):
        if self.kind == "odd-prime":
            if self.modulus < 3 or self.modulus % 2 == 0 or not is_prime(self.modulus):
                raise ValueError(f"character modulus {self.modulus} is not an odd prime")
        elif self.kind == "minus-four":
            if self.modulus != 4:
                raise ValueError("minus-four character has modulus 4")
        elif self.kind in ("eight", "minus-four-times-eight"):
            if self.modulus != 8:
                raise ValueError(f"{self.kind} character has modulus 8")
        else:
            raise ValueError(f"unknown character kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "odd-prime":
            return f"chi_{self.modulus}"
        return {"minus-four": "chi_-4", "eight": "chi_8", "minus-four-times-eight": "chi_-4*chi_8"}[self.kind]


def chi_odd_prime(ell: int) -> Character:
    return Character("odd-prime", ell)


CHI_MINUS_FOUR = Character("minus-four", 4)
CHI_EIGHT = Character("eight", 8)
CHI_MINUS_FOUR_EIGHT = Character("minus-four-times-eight", 8)


def eval_character(chi: Character, x: int) -> int:
    """Value of the character at x, which must be coprime to its modulus."""
    if gcd(x, chi.modulus) != 1:
        raise ValueError(f"character-undefined: gcd({x}, {chi.modulus}) > 1")
    if chi.kind == "odd-prime":
        return jacobi(x, chi.modulus)
    x %= 8
    if chi.kind == "minus-four":
        return -1 if x % 4 == 3 else 1
    if chi.kind == "eight":
        return 1 if x in (1, 7) else -1
    # minus-four-times-eight
    return 1 if x in (1, 3) else -1


def is_prime(n: int) -> bool:
    """Deterministic primality test, valid for all n < 3.3e24 (documented in README)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= _MR_PROVEN_BOUND:
        raise ValueError(f"is_prime: {n} exceeds the deterministic guarantee bound")
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod_raw(a: int, p: int) -> int | None:
    """A deterministic square root of a modulo the odd prime p, or None.

    Returns the root produced by the power map a^((p+1)/4) when p = 3 (mod 4)
    and by Tonelli-Shanks (non-residue searched upward from 2) when
    p = 1 (mod 4).  Not normalised: the caller picks a convention.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"sqrt_mod: modulus {p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks, deterministic non-residue search from 2 upward.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def sqrt_mod(a: int, p: int) -> int | None:
    """Smallest nonnegative r with r*r = a (mod p), or None if a is a non-residue."""
    r = sqrt_mod_raw(a, p)
    if r is None or r == 0:
        return r
    return min(r, p - r)


def _pollard_rho(n: int) -> int:
    """Brent's cycle variant of Pollard rho; n must be odd, composite, not a prime power hit by trial division."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x, y, d = 2, 2, 1
        q = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            q = q * abs(x - y) % n
            if q == 0:
                d = gcd(abs(x - y), n)
                break
            d = gcd(q, n)
        if d != n and d != 1:
            return d
        if d == n:
            d = gcd(abs(x - y), n)
            if 1 < d < n:
                return d
        c += 1


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorisation of n >= 1 as (prime, exponent) pairs, primes ascending."""
    if n < 1:
        raise ValueError("factor: argument must be positive")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < _TRIAL_DIVISION_LIMIT:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += increments[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            r = isqrt(m)
            if r * r == m:
                stack.extend((r, r))
                continue
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return sorted(factors.items())


def odd_prime_divisors(n: int) -> list[int]:
    """Ascending odd prime divisors of |n| (n != 0)."""
    return [p for p, _ in factor(abs(n)) if p != 2]


def assigned_character_set(delta: int) -> list[Character]:
    """Assigned characters attached to a (negative) form discriminant or genus invariant.

    The odd part contributes the residue symbols of the odd primes dividing
    delta.  The 2-adic part follows the classical table for discriminants
    -4n: n=1 (4) or n=4 (8) give chi_-4; n=2 (8) gives chi_-4*chi_8;
    n=6 (8) gives chi_8; n=0 (8) gives all three; n=3 (4) and odd delta give
    none.  For the invariants handled by the genus pipeline this agrees with
    the Brandt rule (full set when 32 | delta, chi_-4 alone when
    delta = 16 mod 32).
    """
    if delta == 0:
        raise ValueError("assigned_character_set: zero invariant")
    chars = [chi_odd_prime(p) for p in odd_prime_divisors(delta)]
    if delta % 2 == 0:
        if delta % 4 != 0:
            raise ValueError(f"assigned_character_set: unhandled invariant residue {delta} = 2 (mod 4)")
        n = abs(delta) // 4
        if n % 8 == 0:
            chars += [CHI_MINUS_FOUR, CHI_EIGHT, CHI_MINUS_FOUR_EIGHT]
        elif n % 8 == 4 or n % 4 == 1:
            chars.append(CHI_MINUS_FOUR)
        elif n % 8 == 2:
            chars.append(CHI_MINUS_FOUR_EIGHT)
        elif n % 8 == 6:
            chars.append(CHI_EIGHT)
        # n = 3 (mod 4): no 2-adic character
    # odd delta: no 2-adic character
    return chars
