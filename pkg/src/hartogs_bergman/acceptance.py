"""The acceptance battery: every headline claim, runnable end to end.

Each criterion function pins its own seeds and tolerances and returns a
CriterionResult; ``run_all`` executes them in order.  The same battery
backs the ``reproduce`` CLI command and the acceptance test module.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .analysis import diagonal_ratio, lqk_witness, ramadanov_table, thin_nonvanishing
from .domain import DomainSpec, PathKind, Point2C, boundary_paths, _fill_uniform
from .kernels import bergman_reference, bergman_thin, kernel
from .oracle import (
    Monomial,
    inner_product_mc,
    is_admissible,
    kernel_series,
    monomial_norm_sq,
    reproducing_residuals_batch,
)
from .polynomials import verify_coefficient_identities
from .transforms import bell_residual, biholo_residual, shear, shear_iter

__all__ = ["CriterionResult", "ALL_CRITERIA", "run_all"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str
    elapsed_s: float

    def __post_init__(self) -> None:
        # Criteria computed through numpy comparisons can hand over
        # np.bool_, which the json encoder rejects.
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "elapsed_s", float(self.elapsed_s))


def _pairs(spec: DomainSpec, n_pairs: int, seed: int, keep=None, batch: int = 512):
    """First n_pairs of independent uniform point pairs passing a filter."""
    rng = np.random.default_rng(seed)
    out = []
    rounds = 0
    while len(out) < n_pairs:
        if rounds > 10_000:
            raise RuntimeError("pair filter accepts too rarely")
        z1, z2 = _fill_uniform(rng, spec, 2 * batch)
        for i in range(batch):
            z = Point2C(z1[i], z2[i])
            w = Point2C(z1[batch + i], z2[batch + i])
            if keep is None or keep(z, w):
                out.append((z, w))
                if len(out) == n_pairs:
                    break
        rounds += 1
    return out


def criterion_1_exact_identities() -> CriterionResult:
    """Coefficient identities hold exactly for 2 <= k <= 50."""
    t0 = time.perf_counter()
    report = verify_coefficient_identities(50)
    elapsed = time.perf_counter() - t0
    ok = report.all_pass and elapsed < 5.0
    detail = (
        "all 49 exponents agree coefficient-by-coefficient"
        if report.all_pass
        else "; ".join(f"k={c.k}: {c.detail}" for c in report.failures)
    )
    return CriterionResult(1, "exact-identities", ok, detail, elapsed)


def criterion_2_fat_series() -> CriterionResult:
    """Fat closed forms match the series oracle to 1e-6 at 50 pairs per k."""
    t0 = time.perf_counter()
    worst = 0.0
    for k in (1, 2, 3, 4):
        spec = DomainSpec.fat(k)

        def small_args(z, w):
            return abs(z.z1 * w.z1.conjugate()) <= 0.4 and abs(z.z2 * w.z2.conjugate()) <= 0.4

        for z, w in _pairs(spec, 50, seed=1000 + k, keep=small_args):
            closed = kernel(spec, z, w).value
            series, _ = kernel_series(spec, z, w, tol=1e-10)
            worst = max(worst, abs(series - closed) / abs(closed))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60.0
    return CriterionResult(2, "fat-kernel-vs-series", ok, f"max relative deviation {worst:.3e}", elapsed)


def criterion_3_thin_resolution() -> CriterionResult:
    """Exactly one thin denominator variant survives both oracles."""
    t0 = time.perf_counter()
    good_series = good_pull = 0.0
    bad_series = bad_pull = 0.0
    for k in (2, 3, 4):
        spec = DomainSpec.thin(k)
        m = shear_iter(k)

        def workable(z, w):
            s = z.z1 * w.z1.conjugate()
            t = z.z2 * w.z2.conjugate()
            return abs(t) <= 0.7 and abs(s) <= 0.75 * abs(t) ** k

        for z, w in _pairs(spec, 25, seed=2000 + k, keep=workable):
            series, _ = kernel_series(spec, z, w, tol=1e-10)
            pull = (
                m.jacobian(z)
                * bergman_reference(DomainSpec.punctured_bidisc(), m.image(z), m.image(w)).value
                * m.jacobian(w).conjugate()
            )
            v_good = bergman_thin(k, z, w, variant="1-t").value
            v_bad = bergman_thin(k, z, w, variant="1-s").value
            good_series = max(good_series, abs(v_good - series) / abs(series))
            good_pull = max(good_pull, abs(v_good - pull) / abs(pull))
            bad_series = max(bad_series, abs(v_bad - series) / abs(series))
            bad_pull = max(bad_pull, abs(v_bad - pull) / abs(pull))
    elapsed = time.perf_counter() - t0
    ok = (
        good_series <= 1e-6
        and good_pull <= 1e-12
        and bad_series > 1e-3
        and bad_pull > 1e-3
        and elapsed < 60.0
    )
    detail = (
        f"variant 1-t: series dev {good_series:.3e}, pullback dev {good_pull:.3e}; "
        f"variant 1-s fails with devs {bad_series:.3e} / {bad_pull:.3e}"
    )
    return CriterionResult(3, "thin-denominator-resolution", ok, detail, elapsed)


def criterion_4_covering_rule() -> CriterionResult:
    """Branched-covering transformation residual <= 1e-9 for k = 2..8."""
    t0 = time.perf_counter()
    worst = 0.0
    classical = DomainSpec.classical()
    for k in range(2, 9):
        fat = DomainSpec.fat(k)
        zs = _pairs(classical, 100, seed=3000 + k)
        ws = _pairs(fat, 100, seed=3500 + k)
        for (z, _), (w, _) in zip(zs, ws):
            worst = max(worst, bell_residual(k, z, w))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 10.0
    return CriterionResult(4, "covering-rule", ok, f"max relative residual {worst:.3e}", elapsed)


def criterion_5_biholo_invariance() -> CriterionResult:
    """Shear invariance <= 1e-13; thin chain shears <= 1e-12."""
    t0 = time.perf_counter()
    classical = DomainSpec.classical()
    punctured = DomainSpec.punctured_bidisc()
    worst_shear = 0.0
    for z, w in _pairs(classical, 1000, seed=4000):
        worst_shear = max(worst_shear, biholo_residual(shear(), classical, punctured, z, w))
    worst_chain = 0.0
    for k in (1, 2, 3, 4):
        src, dst = DomainSpec.thin(k + 1), DomainSpec.thin(k)
        for z, w in _pairs(src, 200, seed=4100 + k):
            worst_chain = max(worst_chain, biholo_residual(shear(), src, dst, z, w))
    elapsed = time.perf_counter() - t0
    ok = worst_shear <= 1e-13 and worst_chain <= 1e-12
    detail = f"shear residual {worst_shear:.3e}, chain residual {worst_chain:.3e}"
    return CriterionResult(5, "biholomorphic-invariance", ok, detail, elapsed)


def criterion_6_kernel_zeros() -> CriterionResult:
    """Fat witnesses vanish to 1e-12; thin kernels never vanish."""
    t0 = time.perf_counter()
    worst_witness = max(lqk_witness(k).numerator_abs for k in range(2, 51))
    hits = 0
    min_abs = math.inf
    for k in (1, 2, 3, 4):
        rep = thin_nonvanishing(k, 100_000, seed=5000 + k)
        hits += rep.zero_hits
        min_abs = min(min_abs, rep.min_abs_value)
    elapsed = time.perf_counter() - t0
    ok = worst_witness <= 1e-12 and hits == 0
    detail = f"max witness numerator {worst_witness:.3e}; thin zero hits {hits}, min |B| {min_abs:.3e}"
    return CriterionResult(6, "kernel-zeros", ok, detail, elapsed)


_REPRODUCING_POINTS = (Point2C(0.1, 0.5), Point2C(0.2, 0.6), Point2C(0.15, 0.75))
_REPRODUCING_FUNCTIONS = (Monomial(0, 0), Monomial(1, 0), Monomial(0, 1))


def criterion_7_reproducing() -> CriterionResult:
    """Monte Carlo reproducing-property residual <= 2% at n = 1e7."""
    t0 = time.perf_counter()
    worst = 0.0
    per_domain_ok = True
    details = []
    for spec, seed in ((DomainSpec.fat(1), 6001), (DomainSpec.fat(2), 6002)):
        t_dom = time.perf_counter()
        reports = reproducing_residuals_batch(
            spec, _REPRODUCING_FUNCTIONS, _REPRODUCING_POINTS, 10_000_000, seed
        )
        dom_elapsed = time.perf_counter() - t_dom
        dom_worst = max(r.residual for row in reports for r in row)
        worst = max(worst, dom_worst)
        per_domain_ok = per_domain_ok and dom_elapsed < 120.0
        details.append(f"{spec}: max residual {dom_worst:.3e}")
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.02 and per_domain_ok
    return CriterionResult(7, "reproducing-property", ok, "; ".join(details), elapsed)


def _variance_safe_monomials(spec: DomainSpec, count: int) -> list[Monomial]:
    # Doubled admissibility keeps the norm estimator's variance finite.
    out = []
    for total in range(0, 12):
        for a in range(0, total + 1):
            for b in range(-total, total + 1):
                if a + abs(b) != total:
                    continue
                if is_admissible(spec, a, b) and is_admissible(spec, 2 * a, 2 * b):
                    out.append(Monomial(a, b))
                    if len(out) == count:
                        return out
    raise RuntimeError("not enough variance-safe monomials")


def criterion_8_basis_norms() -> CriterionResult:
    """MC inner products match closed-form norms within 3 standard errors."""
    t0 = time.perf_counter()
    specs = (
        DomainSpec.classical(),
        DomainSpec.fat(2),
        DomainSpec.fat(3),
        DomainSpec.thin(2),
        DomainSpec.thin(3),
    )
    n = 200_000
    norm_fails = cross_fails = 0
    worst_norm_sigma = worst_cross_sigma = 0.0
    for si, spec in enumerate(specs):
        monomials = _variance_safe_monomials(spec, 10)
        for mi, m in enumerate(monomials):
            est = inner_product_mc(spec, m, m, n, seed=7000 + 100 * si + mi)
            norm = monomial_norm_sq(spec, m.a, m.b)
            diff = abs(est.value - norm)
            # The constant monomial integrates exactly (zero variance), so
            # the 3-sigma band widens by floating-point roundoff alone.
            ok = diff <= 3.0 * est.std_error + 16.0 * np.finfo(float).eps * norm
            sigma = diff / est.std_error if est.std_error > 0.0 else 0.0
            worst_norm_sigma = max(worst_norm_sigma, sigma)
            norm_fails += not ok
        cross = [
            (f, g)
            for i, f in enumerate(monomials)
            for g in monomials[i + 1 :]
            if is_admissible(spec, f.a + g.a, f.b + g.b)
        ][:10]
        for ci, (f, g) in enumerate(cross):
            est = inner_product_mc(spec, f, g, n, seed=7600 + 100 * si + ci)
            sigma = abs(est.value) / est.std_error
            worst_cross_sigma = max(worst_cross_sigma, sigma)
            cross_fails += sigma > 3.0
    elapsed = time.perf_counter() - t0
    ok = norm_fails == 0 and cross_fails == 0
    detail = (
        f"worst norm deviation {worst_norm_sigma:.2f} sigma, "
        f"worst cross term {worst_cross_sigma:.2f} sigma"
    )
    return CriterionResult(8, "basis-norms", ok, detail, elapsed)


def criterion_9_boundary_asymptotics() -> CriterionResult:
    """Diagonal blow-up ratio quotients <= 10 on path tails."""
    t0 = time.perf_counter()
    specs = [DomainSpec.fat(k) for k in range(1, 6)] + [DomainSpec.thin(k) for k in range(2, 6)]
    kinds = (PathKind.ORIGIN, PathKind.TOP_FACE, PathKind.SMOOTH_LEVI_FLAT)
    worst = 0.0
    worst_at = ""
    for spec in specs:
        for kind in kinds:
            rep = diagonal_ratio(spec, boundary_paths(spec, kind))
            q = rep.tail_quotient(10)
            if q > worst:
                worst, worst_at = q, f"{spec}/{kind.value}"
    elapsed = time.perf_counter() - t0
    ok = worst <= 10.0
    return CriterionResult(
        9, "boundary-asymptotics", ok, f"worst tail quotient {worst:.3f} at {worst_at}", elapsed
    )


_RAMADANOV_POINTS = (Point2C(0.5, 0.6), Point2C(0.3, 0.7), Point2C(0.2, 0.9))


def criterion_10_ramadanov() -> CriterionResult:
    """Fat kernels converge to the bidisc kernel as the exponent grows."""
    t0 = time.perf_counter()
    table = ramadanov_table(_RAMADANOV_POINTS, 25)
    ok = True
    details = []
    for j, (p, k0) in enumerate(zip(table.points, table.k_start)):
        errors = [table.errors[i][j] for i in range(len(table.ks))]
        tail = errors[-10:]
        decreasing = all(b < a for a, b in zip(tail, tail[1:]))
        shrunk = errors[-1] < errors[k0 - 1] / 10.0
        ok = ok and decreasing and shrunk
        details.append(
            f"({p.z1.real:g},{p.z2.real:g}): e_{k0}={errors[k0 - 1]:.3e}, e_25={errors[-1]:.3e}"
        )
    elapsed = time.perf_counter() - t0
    return CriterionResult(10, "ramadanov-convergence", ok, "; ".join(details), elapsed)


ALL_CRITERIA: tuple[tuple[int, str, Callable[[], CriterionResult]], ...] = (
    (1, "exact-identities", criterion_1_exact_identities),
    (2, "fat-kernel-vs-series", criterion_2_fat_series),
    (3, "thin-denominator-resolution", criterion_3_thin_resolution),
    (4, "covering-rule", criterion_4_covering_rule),
    (5, "biholomorphic-invariance", criterion_5_biholo_invariance),
    (6, "kernel-zeros", criterion_6_kernel_zeros),
    (7, "reproducing-property", criterion_7_reproducing),
    (8, "basis-norms", criterion_8_basis_norms),
    (9, "boundary-asymptotics", criterion_9_boundary_asymptotics),
    (10, "ramadanov-convergence", criterion_10_ramadanov),
)


def run_all(numbers: Iterable[int] | None = None, log=None) -> list[CriterionResult]:
    """Run the selected criteria (all by default), logging one line each."""
    wanted = set(numbers) if numbers is not None else None
    results = []
    for number, name, fn in ALL_CRITERIA:
        if wanted is not None and number not in wanted:
            continue
        res = fn()
        if log is not None:
            status = "PASS" if res.passed else "FAIL"
            print(
                f"[{status}] criterion {res.number} ({res.name}): {res.details} "
                f"[{res.elapsed_s:.2f}s]",
                file=log,
            )
        results.append(res)
    return results
