"""Geometry of generalized Hartogs triangles and their reference bidiscs.

The central domains are H(gamma) = {(z1, z2) in C^2 : |z1|^gamma < |z2| < 1}
for rational exponents gamma = k ("fat", k >= 2), gamma = 1/k ("thin"),
and gamma = 1 (the classical Hartogs triangle).  The full bidisc D x D and
the punctured bidisc D x D* appear as comparison domains for the kernel
transformation identities.

Every domain here is Reinhardt (invariant under independent rotations of
each coordinate), so membership, distance to the boundary and Lebesgue
volume all reduce to the quarter-plane picture in the moduli
(r1, r2) = (|z1|, |z2|).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "BOUNDARY_MARGIN",
    "DomainError",
    "DomainKind",
    "DomainSpec",
    "Point2C",
    "PathKind",
    "BoundaryPath",
    "contains",
    "boundary_distance",
    "sample_uniform",
    "sample_uniform_arrays",
    "sampling_acceptance",
    "boundary_paths",
]

# Points closer to the boundary than this margin are classified as outside.
# Strictness keeps quadrature and series evaluation away from the singular
# denominators of the kernels.
BOUNDARY_MARGIN = 1e-14


class DomainError(ValueError):
    """A point lies outside the domain an operation requires."""


class DomainKind(enum.Enum):
    FAT = "fat"
    THIN = "thin"
    CLASSICAL = "classical"
    BIDISC = "bidisc"
    PUNCTURED_BIDISC = "punctured-bidisc"


@dataclass(frozen=True)
class DomainSpec:
    """Selects a domain: a Hartogs triangle of exponent gamma, or a bidisc.

    ``fat(k)`` has gamma = k and ``thin(k)`` has gamma = 1/k.  Since
    fat(1), thin(1) and the classical triangle are the same point set,
    both k = 1 variants canonicalize to ``classical`` at construction,
    so there is a single code path for gamma = 1.
    """

    kind: DomainKind
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind in (DomainKind.FAT, DomainKind.THIN):
            if self.k is None or int(self.k) < 1:
                raise ValueError(f"exponent index must be a positive integer, got {self.k!r}")
            object.__setattr__(self, "k", int(self.k))
            if self.k == 1:
                object.__setattr__(self, "kind", DomainKind.CLASSICAL)
                object.__setattr__(self, "k", None)
        elif self.k is not None:
            raise ValueError(f"domain kind {self.kind.value!r} takes no exponent index")

    @staticmethod
    def fat(k: int) -> "DomainSpec":
        return DomainSpec(DomainKind.FAT, k)

    @staticmethod
    def thin(k: int) -> "DomainSpec":
        return DomainSpec(DomainKind.THIN, k)

    @staticmethod
    def classical() -> "DomainSpec":
        return DomainSpec(DomainKind.CLASSICAL)

    @staticmethod
    def bidisc() -> "DomainSpec":
        return DomainSpec(DomainKind.BIDISC)

    @staticmethod
    def punctured_bidisc() -> "DomainSpec":
        return DomainSpec(DomainKind.PUNCTURED_BIDISC)

    @property
    def gamma(self) -> Fraction | None:
        """Exact exponent gamma, or None for the bidiscs."""
        if self.kind is DomainKind.FAT:
            return Fraction(self.k)
        if self.kind is DomainKind.THIN:
            return Fraction(1, self.k)
        if self.kind is DomainKind.CLASSICAL:
            return Fraction(1)
        return None

    @property
    def is_triangle(self) -> bool:
        return self.kind in (DomainKind.FAT, DomainKind.THIN, DomainKind.CLASSICAL)

    def __str__(self) -> str:
        if self.kind in (DomainKind.FAT, DomainKind.THIN):
            return f"{self.kind.value}:{self.k}"
        return self.kind.value

    @staticmethod
    def parse(text: str) -> "DomainSpec":
        """Parse the string form used by the CLI, e.g. "fat:2" or "bidisc"."""
        name, _, arg = text.partition(":")
        try:
            if name in ("fat", "thin"):
                return DomainSpec(DomainKind(name), int(arg))
            if arg:
                raise ValueError
            return DomainSpec(DomainKind(name))
        except ValueError:
            raise ValueError(f"unrecognized domain spec {text!r}") from None


@dataclass(frozen=True)
class Point2C:
    """A point (z1, z2) of C^2 with finite double-precision components."""

    z1: complex
    z2: complex

    def __post_init__(self) -> None:
        z1, z2 = complex(self.z1), complex(self.z2)
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)
        if not all(map(math.isfinite, (z1.real, z1.imag, z2.real, z2.imag))):
            raise ValueError(f"point components must be finite, got ({z1}, {z2})")


def _inside_mask(spec: DomainSpec, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    r1 = np.abs(z1)
    r2 = np.abs(z2)
    if spec.is_triangle:
        g = float(spec.gamma)
        return (r2 - r1**g > BOUNDARY_MARGIN) & (1.0 - r2 > BOUNDARY_MARGIN)
    inside = (1.0 - r1 > BOUNDARY_MARGIN) & (1.0 - r2 > BOUNDARY_MARGIN)
    if spec.kind is DomainKind.PUNCTURED_BIDISC:
        inside = inside & (r2 > BOUNDARY_MARGIN)
    return inside


def contains(spec: DomainSpec, p: Point2C) -> bool:
    """Strict membership; points within BOUNDARY_MARGIN of the boundary are out."""
    r1, r2 = abs(p.z1), abs(p.z2)
    if spec.is_triangle:
        g = float(spec.gamma)
        return (r2 - r1**g > BOUNDARY_MARGIN) and (1.0 - r2 > BOUNDARY_MARGIN)
    inside = (1.0 - r1 > BOUNDARY_MARGIN) and (1.0 - r2 > BOUNDARY_MARGIN)
    if spec.kind is DomainKind.PUNCTURED_BIDISC:
        inside = inside and (r2 > BOUNDARY_MARGIN)
    return inside


def _golden_min(f, lo: float, hi: float, xtol: float = 1e-12) -> tuple[float, float]:
    """Golden-section minimum of f on [lo, hi] (assumes the bracket holds it).

    The contraction continues past the absolute tolerance down to the
    floating-point spacing around the minimizer: near the origin the
    minimizer can sit at u ~ 1e-6 with curvature scale u^(2k), where an
    absolutely-placed evaluation point would swamp the true minimum.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(300):
        if b - a <= min(xtol, 4.0 * math.ulp(max(abs(a), abs(b)))):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, min(f(x), fc, fd)


def boundary_distance(spec: DomainSpec, p: Point2C) -> float:
    """Euclidean distance from an interior point to the boundary of H(gamma).

    By the Reinhardt symmetry the nearest boundary point shares the
    coordinate arguments of p, so the computation reduces to distances in
    the (r1, r2) modulus plane: min of the distance 1 - r2 to the top face
    and the distance to the curve r2 = r1^gamma.  The curve distance is a
    one-dimensional minimization over the curve parameter in [0, 1]; past
    parameter 1 both residuals increase, so nothing lies beyond.  The
    curve is parameterized along its flat axis (r1 for gamma >= 1, r2 for
    gamma < 1) to keep the minimizer well-conditioned near the origin.
    """
    if not spec.is_triangle:
        raise DomainError(f"boundary_distance requires a Hartogs triangle, got {spec}")
    if not contains(spec, p):
        raise DomainError(f"point ({p.z1}, {p.z2}) is not inside {spec}")
    r1, r2 = abs(p.z1), abs(p.z2)
    g = float(spec.gamma)
    if g >= 1.0:
        def sq_dist(u: float) -> float:
            return (u - r1) ** 2 + (u**g - r2) ** 2
    else:
        e = 1.0 / g

        def sq_dist(u: float) -> float:
            return (u**e - r1) ** 2 + (u - r2) ** 2

    # The squared distance need not be unimodal in u (two local minima can
    # coexist for steep curves), so bracket the global minimum on a coarse
    # grid before refining.
    grid = np.linspace(0.0, 1.0, 257)
    if g >= 1.0:
        vals = (grid - r1) ** 2 + (grid**g - r2) ** 2
    else:
        vals = (grid ** (1.0 / g) - r1) ** 2 + (grid - r2) ** 2
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    _, fmin = _golden_min(sq_dist, float(lo), float(hi))
    fmin = min(fmin, float(vals[i]))
    # Coordinate projections onto the curve.  Near the origin the basin
    # around the minimizer is narrower than one ulp, and these candidates
    # hit it exactly where iterative placement cannot.
    for u in (r1, r2):
        if 0.0 <= u <= 1.0:
            fmin = min(fmin, sq_dist(u))
    return min(1.0 - r2, math.sqrt(fmin))


def _disc_samples(rng: np.random.Generator, n: int) -> np.ndarray:
    # Uniform w.r.t. area on the unit disc.
    r = np.sqrt(rng.random(n))
    theta = rng.random(n) * (2.0 * np.pi)
    return r * np.exp(1j * theta)


def _fill_uniform(
    rng: np.random.Generator, spec: DomainSpec, n: int, max_chunk: int = 4_000_000
) -> tuple[np.ndarray, np.ndarray]:
    """Draw n in-domain points by rejection from the enclosing bidisc."""
    z1 = np.empty(n, dtype=np.complex128)
    z2 = np.empty(n, dtype=np.complex128)
    got = 0
    rounds = 0
    while got < n:
        if rounds > 10_000:
            raise RuntimeError(f"rejection sampling failed to converge for {spec}")
        m = min(max(4096, 2 * (n - got)), max_chunk)
        c1 = _disc_samples(rng, m)
        c2 = _disc_samples(rng, m)
        keep = _inside_mask(spec, c1, c2)
        k1 = c1[keep]
        take = min(k1.size, n - got)
        z1[got : got + take] = k1[:take]
        z2[got : got + take] = c2[keep][:take]
        got += take
        rounds += 1
    return z1, z2


def sample_uniform_arrays(spec: DomainSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Array form of sample_uniform: two complex arrays (z1, z2) of length n."""
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return _fill_uniform(rng, spec, n)


def sample_uniform(spec: DomainSpec, n: int, seed: int) -> list[Point2C]:
    """n i.i.d. points, uniform w.r.t. Lebesgue measure on the domain.

    Rejection sampling from the enclosing bidisc; reproducible for a fixed
    seed. The expected acceptance ratio is vol(domain) / pi^2 > 0.
    """
    z1, z2 = sample_uniform_arrays(spec, n, seed)
    return [Point2C(a, b) for a, b in zip(z1.tolist(), z2.tolist())]


def sampling_acceptance(spec: DomainSpec, n_proposals: int, seed: int) -> float:
    """Fraction of bidisc proposals landing inside; estimates vol/pi^2."""
    if n_proposals < 1:
        raise ValueError(f"proposal count must be >= 1, got {n_proposals}")
    rng = np.random.default_rng(seed)
    c1 = _disc_samples(rng, n_proposals)
    c2 = _disc_samples(rng, n_proposals)
    return float(np.mean(_inside_mask(spec, c1, c2)))


def _volume(spec: DomainSpec) -> float:
    # Lebesgue volume; internal helper for the Monte Carlo integrators.
    if spec.is_triangle:
        g = spec.gamma
        return math.pi**2 * float(g / (g + 1))
    return math.pi**2


class PathKind(enum.Enum):
    ORIGIN = "origin"
    SMOOTH_LEVI_FLAT = "smooth-levi-flat"
    TOP_FACE = "top-face"
    CORNER = "corner"


@dataclass(frozen=True)
class BoundaryPath:
    """A sequence of interior points approaching a named boundary target."""

    spec: DomainSpec
    kind: PathKind
    target: Point2C
    samples: tuple[Point2C, ...]
    params: tuple[float, ...]


def boundary_paths(spec: DomainSpec, which: PathKind, steps: int = 20) -> BoundaryPath:
    """Canonical boundary-approach sequence with parameter halved each step.

    Origin:           (0, eps) -> (0, 0), the boundary singularity.
    TopFace:          (0, 1 - eps) -> (0, 1).
    SmoothLeviFlat:   fixed |z2| = 1/2, |z1|^gamma rising to 1/2 from inside.
    Corner:           ((1-eps)^(2/gamma), 1-eps) -> (1, 1), kept comparably
                      far from both boundary faces (nontangential).
    """
    if not spec.is_triangle:
        raise DomainError(f"boundary paths require a Hartogs triangle, got {spec}")
    if steps < 20:
        raise ValueError(f"need at least 20 halving steps, got {steps}")
    g = float(spec.gamma)
    eps = [2.0**-m for m in range(1, steps + 1)]
    if which is PathKind.ORIGIN:
        target = Point2C(0.0, 0.0)
        pts = [Point2C(0.0, e) for e in eps]
    elif which is PathKind.TOP_FACE:
        target = Point2C(0.0, 1.0)
        pts = [Point2C(0.0, 1.0 - e) for e in eps]
    elif which is PathKind.SMOOTH_LEVI_FLAT:
        target = Point2C(0.5 ** (1.0 / g), 0.5)
        pts = [Point2C(((1.0 - e) * 0.5) ** (1.0 / g), 0.5) for e in eps]
    elif which is PathKind.CORNER:
        target = Point2C(1.0, 1.0)
        pts = [Point2C((1.0 - e) ** (2.0 / g), 1.0 - e) for e in eps]
    else:
        raise ValueError(f"unknown path kind {which!r}")
    for q in pts:
        if not contains(spec, q):
            raise RuntimeError(f"path sample ({q.z1}, {q.z2}) escaped {spec}")
    dists = [abs(q.z1 - target.z1) ** 2 + abs(q.z2 - target.z2) ** 2 for q in pts]
    if any(b >= a for a, b in zip(dists, dists[1:])):
        raise RuntimeError("path samples must approach the target strictly")
    return BoundaryPath(spec, which, target, tuple(pts), tuple(eps))
