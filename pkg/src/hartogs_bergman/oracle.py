"""Independent ground truth for the closed-form kernels.

Three instruments, all independent of the closed forms they test:

* Monomial basis norms.  On a Reinhardt domain the Laurent monomials
  z1^a z2^b are pairwise orthogonal, and on H(gamma) the square norm is
  available in closed form by polar integration:

      ||z1^a z2^b||^2 = 4 pi^2 / ((2a+2) (2b+2+(2a+2)/gamma)),

  admissible exactly when 2b + 2 + (2a+2)/gamma > 0 (a >= 0, b may be
  negative).  Completeness of this system on H(gamma) is the standard
  Reinhardt fact and is assumed here.

* The kernel series sum over the normalized monomial basis,
  sum s^a t^b / norm_sq(a, b), truncated on a rectangle with an analytic
  geometric tail bound.

* Monte Carlo integration against uniform samples, for inner products and
  for the reproducing property itself.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .domain import DomainError, DomainSpec, Point2C, _fill_uniform, _volume, contains
from .kernels import (
    NEAR_SINGULAR_THRESHOLD,
    PI_SQ,
    THIN_VARIANT_DEFAULT,
    ThinVariant,
    kernel_num_den,
)

__all__ = [
    "NonconvergentTruncation",
    "MonomialIndex",
    "SeriesTruncation",
    "Monomial",
    "McEstimate",
    "ReproducingReport",
    "is_admissible",
    "b_min",
    "monomial_norm_sq",
    "basis_norms",
    "kernel_series",
    "inner_product_mc",
    "parse_function",
    "reproducing_check",
    "reproducing_residuals_batch",
]


class NonconvergentTruncation(ArithmeticError):
    """The series tail bound exceeds the requested tolerance."""


def _require_triangle(spec: DomainSpec) -> Fraction:
    if not spec.is_triangle:
        raise ValueError(f"monomial basis requires a Hartogs triangle, got {spec}")
    return spec.gamma


def is_admissible(spec: DomainSpec, a: int, b: int) -> bool:
    """Square-integrability of z1^a z2^b on the triangle, decided exactly."""
    g = _require_triangle(spec)
    if a < 0:
        return False
    return Fraction(2 * b + 2) + Fraction(2 * a + 2) / g > 0


def b_min(spec: DomainSpec, a: int) -> int:
    """Smallest admissible z2-power for a given z1-power."""
    g = _require_triangle(spec)
    bound = Fraction(-1) - Fraction(a + 1) / g
    return math.floor(bound) + 1


@dataclass(frozen=True)
class MonomialIndex:
    """Basis exponent pair with its exact-formula square norm."""

    a: int
    b: int
    norm_sq: float


def monomial_norm_sq(spec: DomainSpec, a: int, b: int) -> float:
    g = _require_triangle(spec)
    if not is_admissible(spec, a, b):
        raise ValueError(f"monomial ({a}, {b}) is not square-integrable on {spec}")
    factor = Fraction(2 * b + 2) + Fraction(2 * a + 2) / g
    return 4.0 * PI_SQ / ((2 * a + 2) * float(factor))


def basis_norms(spec: DomainSpec, a_max: int, b_max: int) -> list[MonomialIndex]:
    """All admissible indices with 0 <= a <= a_max, b_min(a) <= b <= b_max."""
    if a_max < 0 or b_max < 0:
        raise ValueError("truncation bounds must be nonnegative")
    out = []
    for a in range(a_max + 1):
        for b in range(b_min(spec, a), b_max + 1):
            out.append(MonomialIndex(a, b, monomial_norm_sq(spec, a, b)))
    return out


@dataclass(frozen=True)
class SeriesTruncation:
    a_max: int
    b_max: int
    terms_used: int
    tail_estimate: float


def _sum_rectangle(spec: DomainSpec, s: complex, t: complex, a_max: int, b_max: int):
    g = _require_triangle(spec)
    gf = float(g)
    bmins = [b_min(spec, a) for a in range(a_max + 1)]
    # Longest row: b_min is nonincreasing in a.
    tpow = np.power(t, np.arange(b_max - bmins[-1] + 1))
    total = 0.0j
    terms = 0
    # Running row leader s^a t^(b_min(a)).  For in-domain pairs
    # |s| < |t|^{1/gamma}, so |lead| <= |t|^(-1 - 1/gamma): bounded, and the
    # update below never multiplies a huge power by a tiny one.
    lead = t ** bmins[0]
    for a in range(a_max + 1):
        length = b_max - bmins[a] + 1
        m = np.arange(length)
        coef = (2 * a + 2) * (2.0 * (bmins[a] + m) + 2.0 + (2 * a + 2) / gf)
        total += lead * np.dot(tpow[:length], coef)
        terms += length
        if a < a_max:
            lead *= s * t ** (bmins[a + 1] - bmins[a])
    return total / (4.0 * PI_SQ), terms


def _tail_bound(spec: DomainSpec, abs_s: float, abs_t: float, a_max: int, b_max: int) -> float:
    """Upper bound on the dropped series mass, from geometric closed forms."""
    g = _require_triangle(spec)
    gf = float(g)
    x = abs_t
    if x >= 1.0:
        return math.inf
    rho = abs_s * x ** (-1.0 / gf)
    if rho >= 1.0:
        return math.inf
    one_mx = 1.0 - x

    # Rows a <= a_max, dropped powers b > b_max:
    #   sum_{b > B} x^b (2b + c) = 2 x^(B+1) ((B+1)(1-x) + x)/(1-x)^2
    #                              + c x^(B+1)/(1-x).
    xB = x ** (b_max + 1)
    t1 = 0.0
    spow = 1.0
    for a in range(a_max + 1):
        c = 2.0 + (2 * a + 2) / gf
        tail_b = 2.0 * xB * ((b_max + 1) * one_mx + x) / one_mx**2 + c * xB / one_mx
        t1 += spow * (2 * a + 2) * tail_b
        spow *= abs_s

    # Rows a > a_max in full.  Using |t|^b_min(a) <= |t|^(-1-(a+1)/gamma) and
    # the coefficient bound at b = b_min, each row is at most
    # (2a+2) rho^a |t|^(-1-1/gamma) (2/(1-x) + 2x/(1-x)^2).
    pref = x ** (-1.0 - 1.0 / gf) * (2.0 / one_mx + 2.0 * x / one_mx**2)
    geom = 2.0 * rho ** (a_max + 1) * ((a_max + 2) * (1.0 - rho) + rho) / (1.0 - rho) ** 2
    t2 = pref * geom
    return (t1 + t2) / (4.0 * PI_SQ)


def kernel_series(
    spec: DomainSpec,
    z: Point2C,
    w: Point2C,
    a_max: int | None = None,
    b_max: int | None = None,
    tol: float | None = 1e-8,
    *,
    check: bool = True,
    max_rect: int = 16384,
) -> tuple[complex, SeriesTruncation]:
    """Partial series sum with a certified tail bound.

    With explicit a_max/b_max the given rectangle is summed; otherwise the
    rectangle doubles until the tail bound drops below
    tol * max(1, |partial sum|).  A tail bound that cannot meet the
    tolerance raises NonconvergentTruncation.
    """
    if (a_max is None) != (b_max is None):
        raise ValueError("give both a_max and b_max, or neither for auto truncation")
    if check:
        for label, q in (("z", z), ("w", w)):
            if not contains(spec, q):
                raise DomainError(f"{label} = ({q.z1}, {q.z2}) is not inside {spec}")
    s = z.z1 * w.z1.conjugate()
    t = z.z2 * w.z2.conjugate()
    abs_s, abs_t = abs(s), abs(t)

    if a_max is not None and b_max is not None:
        value, terms = _sum_rectangle(spec, s, t, a_max, b_max)
        tail = _tail_bound(spec, abs_s, abs_t, a_max, b_max)
        trunc = SeriesTruncation(a_max, b_max, terms, tail)
        if tol is not None and not tail <= tol * max(1.0, abs(value)):
            raise NonconvergentTruncation(
                f"tail bound {tail:.3e} exceeds tolerance at rectangle ({a_max}, {b_max})"
            )
        return value, trunc

    if tol is None:
        raise ValueError("auto truncation requires a tolerance")
    size = 32
    while True:
        value, terms = _sum_rectangle(spec, s, t, size, size)
        tail = _tail_bound(spec, abs_s, abs_t, size, size)
        if tail <= tol * max(1.0, abs(value)):
            return value, SeriesTruncation(size, size, terms, tail)
        if size >= max_rect:
            raise NonconvergentTruncation(
                f"tail bound {tail:.3e} still above tolerance at rectangle ({size}, {size})"
            )
        size *= 2


@dataclass(frozen=True)
class Monomial:
    """A named test function z1^a z2^b (the CLI's closed function set)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 0:
            raise ValueError("z1 exponent must be >= 0 for holomorphy on the triangle")

    def __call__(self, z1, z2):
        return z1**self.a * z2**self.b

    def at(self, p: Point2C) -> complex:
        return p.z1**self.a * p.z2**self.b

    @property
    def name(self) -> str:
        return f"z1^{self.a}*z2^{self.b}"


_NAMED_FUNCTIONS = {
    "one": (0, 0),
    "z1": (1, 0),
    "z2": (0, 1),
    "z2inv": (0, -1),
}
_MONOMIAL_RE = re.compile(r"^z1\^(-?\d+)\*z2\^(-?\d+)$")


def parse_function(text: str) -> Monomial:
    """Parse "one", "z1", "z2", "z2inv" or "z1^a*z2^b" with integer exponents."""
    if text in _NAMED_FUNCTIONS:
        return Monomial(*_NAMED_FUNCTIONS[text])
    m = _MONOMIAL_RE.match(text)
    if not m:
        raise ValueError(f"unrecognized test function {text!r}")
    return Monomial(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class McEstimate:
    value: complex
    std_error: float
    n: int
    seed: int


def inner_product_mc(
    spec: DomainSpec, f, g, n: int, seed: int, *, chunk: int = 1_000_000
) -> McEstimate:
    """Monte Carlo estimate of integral of f * conj(g) over the domain."""
    if n < 1_000:
        raise ValueError(f"need at least 10^3 samples, got {n}")
    vol = _volume(spec)
    rng = np.random.default_rng(seed)
    total = 0.0j
    sq_re = 0.0
    sq_im = 0.0
    left = n
    while left:
        m = min(chunk, left)
        z1, z2 = _fill_uniform(rng, spec, m)
        vals = f(z1, z2) * np.conj(g(z1, z2))
        total += vals.sum()
        sq_re += float(np.dot(vals.real, vals.real))
        sq_im += float(np.dot(vals.imag, vals.imag))
        left -= m
    mean = total / n
    var = max(sq_re / n - mean.real**2, 0.0) + max(sq_im / n - mean.imag**2, 0.0)
    return McEstimate(vol * mean, vol * math.sqrt(var / n), n, seed)


@dataclass(frozen=True)
class ReproducingReport:
    residual: float
    estimate: complex
    expected: complex
    excluded: int
    n: int
    seed: int


def reproducing_check(
    spec: DomainSpec,
    f: Monomial,
    z: Point2C,
    n: int,
    seed: int,
    *,
    thin_variant: ThinVariant = THIN_VARIANT_DEFAULT,
    chunk: int = 1_000_000,
) -> ReproducingReport:
    """Relative residual of f(z) = integral B(z, w) f(w) dV(w) under MC.

    Samples with a near-singular kernel evaluation are excluded and counted.
    """
    reports = reproducing_residuals_batch(
        spec, (f,), (z,), n, seed, thin_variant=thin_variant, chunk=chunk
    )
    return reports[0][0]


def reproducing_residuals_batch(
    spec: DomainSpec,
    fs,
    zs,
    n: int,
    seed: int,
    *,
    thin_variant: ThinVariant = THIN_VARIANT_DEFAULT,
    chunk: int = 1_000_000,
) -> list[list[ReproducingReport]]:
    """Reproducing residuals for every (f, z) combination on one sample stream.

    Returns reports[i][j] for fs[i] and zs[j].  Sharing the stream keeps a
    10^7-sample battery affordable; estimates for different combinations
    are correlated but individually unbiased.
    """
    if n < 1_000:
        raise ValueError(f"need at least 10^3 samples, got {n}")
    for z in zs:
        if not contains(spec, z):
            raise DomainError(f"evaluation point ({z.z1}, {z.z2}) is not inside {spec}")
    for f in fs:
        if not is_admissible(spec, f.a, f.b):
            raise ValueError(f"{f.name} is not square-integrable on {spec}")
    vol = _volume(spec)
    rng = np.random.default_rng(seed)
    acc = [[0.0j for _ in zs] for _ in fs]
    excluded = [[0 for _ in zs] for _ in fs]
    left = n
    while left:
        m = min(chunk, left)
        w1, w2 = _fill_uniform(rng, spec, m)
        w1c, w2c = np.conj(w1), np.conj(w2)
        fvals = [f(w1, w2) for f in fs]
        for j, z in enumerate(zs):
            s = z.z1 * w1c
            t = z.z2 * w2c
            num, den = kernel_num_den(spec, s, t, thin_variant)
            ok = np.abs(den) >= NEAR_SINGULAR_THRESHOLD
            bad = int(m - ok.sum())
            kvals = np.where(ok, num, 0.0) / np.where(ok, den, 1.0)
            for i in range(len(fs)):
                acc[i][j] += complex(np.sum(kvals * fvals[i]))
                excluded[i][j] += bad
        left -= m
    out = []
    for i, f in enumerate(fs):
        row = []
        for j, z in enumerate(zs):
            kept = n - excluded[i][j]
            estimate = vol * acc[i][j] / kept
            expected = f.at(z)
            residual = abs(estimate - expected) / max(1.0, abs(expected))
            row.append(ReproducingReport(residual, estimate, expected, excluded[i][j], n, seed))
        out.append(row)
    return out
