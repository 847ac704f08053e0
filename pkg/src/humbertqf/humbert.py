"""Construction of principally polarized CM product surfaces from ternary forms.

Given a positive definite integral ternary form f that satisfies the
classification conditions (see ternform.is_geometric), the pipeline builds an
explicit descriptor of a surface E x E' with a principal polarization whose
refined Humbert invariant is equivalent to f:

  1. a binary "degree form" locating the pair of isogenous CM curves
     (qf_primitive / qf_imprimitive, or the content shortcut in simplified
     mode),
  2. an odd prime p represented by the reciprocal form, coprime to the
     degree-form discriminant,
  3. the equivalent degree form kappa*[p, b', (b'^2 - D')/(4p)] exposing a
     cyclic isogeny of degree kappa*p,
  4. a binary section phi of f (or f/2) through the prime witness vector,
  5. the polarization triple s = (n, m, k) in P(kappa*p) with q_s ~ phi
     (or 2*phi),
  6. the closed-formula refined Humbert invariant of the result, reduced and
     compared against f as a self-verification.

The underlying curves are E = C/O_D and E' = C/L where L is the lattice of
Q(sqrt(D')) with basis {p, (-b' + sqrt(D'))/2}; the descriptor records this
lattice data symbolically through (D, D', p, b').
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from . import binform, ternform
from .binform import BinaryQF, PolarizationTriple
from .errors import NotGeometricError
from .numtheory import assigned_character_set, eval_character, jacobi, odd_prime_divisors
from .ternform import TernaryQF

DEFAULT_SEARCH_BUDGET = 10**6


def refined_humbert(qtilde: BinaryQF, s: PolarizationTriple) -> TernaryQF:
    """Refined Humbert invariant of (E x E', D(n, m, k*h)) with degree form qtilde.

    qtilde = [a, b, c] must have leading coefficient a equal to s.d, the
    degree of the cyclic isogeny h.
    """
    a, b, c = qtilde.coefficients()
    if a != s.d:
        raise ValueError(f"degree-mismatch: leading coefficient {a} != isogeny degree {s.d}")
    n, m, k = s.n, s.m, s.k
    return TernaryQF(
        n * n,
        m * m * (m * n + 3) * a,
        b * b * k * k + 4 * c,
        -2 * b * m * (m * n + 1),
        -2 * b * k * n,
        2 * k * a * (m * n + 2),
    )


def qf_primitive(f: TernaryQF) -> BinaryQF:
    """Degree form for a primitive geometric f: kappa times the first reduced
    class of discriminant 16*disc(f)/I1^2 whose character values match the
    reciprocal of f."""
    fb, i1 = ternform.reciprocal(f)
    if (-i1) % 16 != 0:
        raise ValueError(f"qf_primitive: I1 = {i1} is not divisible by 16")
    kappa = (-i1) // 16
    d_prime = 16 * f.disc() // (i1 * i1)
    candidates = binform.reduced_forms_of_disc(d_prime, 1)
    chars = assigned_character_set(d_prime)
    odd_part = 1
    for chi in chars:
        if chi.kind == "odd-prime":
            odd_part *= chi.modulus
    _, value = ternform.represent_coprime_ternary(fb, 2 * odd_part)
    fb_values = {chi: eval_character(chi, value) for chi in chars}
    for q_prime in candidates:
        if dict(binform.character_values(q_prime)) == fb_values:
            return q_prime.scale(kappa)
    table = ", ".join(
        f"{q.coefficients()}: {[(str(c), v) for c, v in binform.character_values(q)]}"
        for q in candidates
    )
    raise ValueError(
        f"qf_primitive: no class of discriminant {d_prime} matches the reciprocal values "
        f"{[(str(c), v) for c, v in fb_values.items()]}; classes: {table}"
    )


def qf_imprimitive(f: TernaryQF) -> BinaryQF:
    """Degree form for an imprimitive geometric f (content 4).

    With I1 = |I1(f/4)| and I2 = -I2(f/4)/8, searches the smallest a > 0 with
    -2*I2 a square modulo every prime of a and (-1/a) = -(-1/I1), then the
    smallest even b > 0 with -2*I2 = b^2 (mod 4a), and returns
    I1 * [a, b, (b^2 + 2*I2)/(4a)].
    """
    if f.content() != 4 or not ternform.is_improperly_primitive(f.divide(2)):
        raise ValueError("qf_imprimitive: form is not an imprimitive geometric candidate")
    i1_raw, i2_raw = ternform.brandt_invariants(f.divide(4))
    big_i1 = -i1_raw
    big_i2 = -i2_raw // 8
    if big_i1 <= 0 or big_i1 % 2 == 0 or big_i2 <= 0 or big_i2 % 2 == 1:
        raise ValueError(f"qf_imprimitive: invariants I1={big_i1}, I2={big_i2} out of range")
    target = -jacobi(-1, big_i1)
    a = 1
    while True:
        if jacobi(-1, a) == target and all(
            jacobi(-2 * big_i2, p) == 1 for p in _odd_primes_of(a)
        ):
            break
        a += 2
    b = 2
    while (b * b + 2 * big_i2) % (4 * a) != 0:
        b += 2
    q = BinaryQF(big_i1 * a, big_i1 * b, big_i1 * ((b * b + 2 * big_i2) // (4 * a)))
    assert q.disc() == -2 * big_i2 * big_i1 * big_i1 and q.content() == big_i1
    return q


def _odd_primes_of(n: int) -> list[int]:
    return odd_prime_divisors(n) if n > 1 else []


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Full output of the construction.

    E = C/O_D and E' = C/L with L the lattice of Q(sqrt(Dprime)) spanned by
    {p, (-bprime + sqrt(Dprime))/2}; the polarization is D(n, m, k*h) for a
    cyclic isogeny h of degree kappa*p = isogeny_degree.
    """

    D: int
    Dprime: int
    kappa: int
    p: int
    bprime: int
    degree_form: BinaryQF
    triple: PolarizationTriple
    isogeny_degree: int
    verification_form: TernaryQF
    reduced_verification_form: TernaryQF

    def to_json(self) -> dict:
        """JSON value with every integer rendered as a decimal string."""
        return {
            "D": str(self.D),
            "Dprime": str(self.Dprime),
            "kappa": str(self.kappa),
            "p": str(self.p),
            "bprime": str(self.bprime),
            "degree_form": [str(x) for x in self.degree_form.coefficients()],
            "triple": {
                "n": str(self.triple.n),
                "m": str(self.triple.m),
                "k": str(self.triple.k),
                "d": str(self.triple.d),
            },
            "isogeny_degree": str(self.isogeny_degree),
            "verification_form": [str(x) for x in self.verification_form.coefficients()],
            "reduced_verification_form": [
                str(x) for x in self.reduced_verification_form.coefficients()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceDescriptor":
        t = data["triple"]
        triple = _raw_triple(int(t["n"]), int(t["m"]), int(t["k"]), int(t["d"]))
        return cls(
            D=int(data["D"]),
            Dprime=int(data["Dprime"]),
            kappa=int(data["kappa"]),
            p=int(data["p"]),
            bprime=int(data["bprime"]),
            degree_form=BinaryQF(*(int(x) for x in data["degree_form"])),
            triple=triple,
            isogeny_degree=int(data["isogeny_degree"]),
            verification_form=TernaryQF(*(int(x) for x in data["verification_form"])),
            reduced_verification_form=TernaryQF(
                *(int(x) for x in data["reduced_verification_form"])
            ),
        )


def _raw_triple(n: int, m: int, k: int, d: int) -> PolarizationTriple:
    """Build a PolarizationTriple without invariant validation (for untrusted input)."""
    t = object.__new__(PolarizationTriple)
    object.__setattr__(t, "n", n)
    object.__setattr__(t, "m", m)
    object.__setattr__(t, "k", k)
    object.__setattr__(t, "d", d)
    return t


def construct(
    f: TernaryQF,
    mode: str = "full",
    budget: int = DEFAULT_SEARCH_BUDGET,
    max_shell: int | None = None,
) -> SurfaceDescriptor:
    """Run the construction pipeline on a geometric form.

    mode is 'full' (degree form located through its genus class) or
    'simplified' (degree form rebuilt directly from the discriminant and the
    content of the adjoint; same outputs).  The returned descriptor is
    self-verifying: reduced_verification_form equals the reduced input
    whenever the construction is sound, which verify() re-checks.
    """
    if mode not in ("full", "simplified"):
        raise ValueError(f"construct: unknown mode {mode!r}")
    classification = ternform.is_geometric(f, max_shell=max_shell)
    if not classification.geometric:
        raise NotGeometricError(classification.detail)
    cont = f.content()
    if mode == "full":
        if classification.case == "primitive":
            q = qf_primitive(f)
            section_base = f
        else:
            q = qf_imprimitive(f)
            section_base = f.divide(2)
        kappa = q.content()
        d_deg = q.disc()
        reciprocal_base = f if cont == 1 else f.divide(4)
    else:
        f_prime = f.divide(cont)
        _, i1 = ternform.reciprocal(f_prime)
        if cont == 1 and (-i1) % 16 != 0:
            raise ValueError(f"construct: I1 = {i1} is not divisible by 16")
        kappa = (-i1) // 16 if cont == 1 else -i1
        d_deg = f.disc() // 16
        section_base = f if cont == 1 else f.divide(2)
        reciprocal_base = f_prime
    d_prime = d_deg // (kappa * kappa)
    fb, _ = ternform.reciprocal(reciprocal_base)
    v, p = ternform.prime_represented_ternary(
        fb, abs(d_deg if mode == "full" else reciprocal_base.disc()), budget
    )
    core = binform.form_representing_prime(d_prime, p)
    qtilde = core.scale(kappa)
    _, phi = ternform.produce_phi(section_base, v)
    degree = kappa * p
    if cont == 1:
        assert phi.disc() == -16 * degree
        s = binform.type_d_triple(phi, degree)
    else:
        assert phi.disc() == -4 * degree and phi.content() == 2
        s = binform.type_d_triple(phi.scale(2), degree)
    verification = refined_humbert(qtilde, s)
    reduced = ternform.eisenstein_reduce(verification)
    return SurfaceDescriptor(
        D=d_deg,
        Dprime=d_prime,
        kappa=kappa,
        p=p,
        bprime=core.b,
        degree_form=qtilde,
        triple=s,
        isogeny_degree=degree,
        verification_form=verification,
        reduced_verification_form=reduced,
    )


def verify_detailed(descriptor: SurfaceDescriptor, f: TernaryQF) -> tuple[bool, list[str]]:
    """Re-check every descriptor invariant and the reduction identity against f."""
    diagnostics: list[str] = []
    s = descriptor.triple
    if s.n <= 0 or s.m <= 0 or s.n * s.m - s.k * s.k * s.d != 1:
        diagnostics.append(f"triple ({s.n}, {s.m}, {s.k}) is not in P({s.d})")
    if s.d != descriptor.kappa * descriptor.p:
        diagnostics.append("triple modulus differs from kappa * p")
    if descriptor.isogeny_degree != descriptor.kappa * descriptor.p:
        diagnostics.append("isogeny degree differs from kappa * p")
    if descriptor.degree_form.a != descriptor.isogeny_degree:
        diagnostics.append("degree form does not represent the isogeny degree at (1, 0)")
    if descriptor.degree_form.disc() != descriptor.D:
        diagnostics.append("degree form discriminant differs from D")
    if descriptor.degree_form.content() != descriptor.kappa:
        diagnostics.append("degree form content differs from kappa")
    if descriptor.kappa * descriptor.kappa * descriptor.Dprime != descriptor.D:
        diagnostics.append("Dprime * kappa^2 differs from D")
    if descriptor.degree_form.primitive_part().b != descriptor.bprime:
        diagnostics.append("bprime differs from the primitive part of the degree form")
    if descriptor.D * 16 != f.disc():
        diagnostics.append("16 * D differs from disc(f)")
    try:
        recomputed = refined_humbert(descriptor.degree_form, s)
    except ValueError as exc:
        diagnostics.append(str(exc))
        return False, diagnostics
    if recomputed != descriptor.verification_form:
        diagnostics.append("stored verification form differs from the recomputation")
    if recomputed.disc() != 16 * descriptor.D:
        diagnostics.append("verification form discriminant differs from 16 * D")
    if not recomputed.is_positive_definite():
        diagnostics.append("verification form is not positive definite")
        return False, diagnostics
    reduced = ternform.eisenstein_reduce(recomputed)
    if reduced != descriptor.reduced_verification_form:
        diagnostics.append("stored reduced verification form differs from the recomputation")
    if reduced != ternform.eisenstein_reduce(f):
        diagnostics.append("verification form is not equivalent to the input form")
    return not diagnostics, diagnostics


def verify(descriptor: SurfaceDescriptor, f: TernaryQF) -> bool:
    """True iff the descriptor is internally consistent and reproduces f."""
    ok, _ = verify_detailed(descriptor, f)
    return ok


def subcover_degrees(f: TernaryQF, max_n: int) -> list[int]:
    """All N <= max_n such that f primitively represents N^2."""
    if max_n < 1:
        return []
    reduced = ternform.eisenstein_reduce(f)
    degrees = set()
    for v, value in ternform._short_vectors(reduced, max_n * max_n):
        n = isqrt(value)
        if n * n == value and gcd(gcd(v[0], v[1]), v[2]) == 1:
            degrees.add(n)
    return sorted(degrees)


def has_D6(f: TernaryQF) -> bool:
    """True iff f is equivalent to one of the three dihedral-of-order-12 shapes.

    The shapes are [4,4,4,4,4,4], [4,4,c,4,4,4] and [4,4,c,0,0,-4] with
    c = 0, 1 (mod 4) and c > 1; the candidate c is recovered from the
    discriminant before the equivalence test.
    """
    disc = f.disc()
    candidates = []
    if disc == -128:
        candidates.append(TernaryQF(4, 4, 4, 4, 4, 4))
    if (64 - disc) % 48 == 0:
        c = (64 - disc) // 48
        if c > 1 and c % 4 in (0, 1):
            candidates.append(TernaryQF(4, 4, c, 4, 4, 4))
    if disc % 48 == 0:
        c = -disc // 48
        if c > 1 and c % 4 in (0, 1):
            candidates.append(TernaryQF(4, 4, c, 0, 0, -4))
    return any(ternform.equivalent_ternary(f, g) for g in candidates)
