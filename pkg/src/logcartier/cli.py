"""Command-line front end: run cohomology computations and verification
suites, emit JSON/CSV/text reports.

Exit codes: 0 success, 1 usage or invalid input, 2 resource cap exceeded,
3 verification failure.  Identical configs produce byte-identical output;
timings are omitted unless requested, since they never reproduce.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from itertools import combinations, product
from math import comb

import numpy as np

from . import __version__
from .cartier import (
    ZBDecomposition,
    c_minus_one_surjectivity,
    cartier,
    cartier_slice_matrix,
    etale_obstruction_demo,
    inverse_cartier,
    nu_sections,
    slice_bijection_ok,
)
from .cech import (
    BlowupSpace,
    ProjectiveSpace,
    ResourceLimit,
    SheafSpec,
    blowup_cohomology,
    cech_cohomology,
    connecting_map_check,
    formal_functions_check,
    generator_check,
)
from .forms import FormRing
from .gflinalg import FpMatrix, PrimeField
from .purity import (
    GysinSetup,
    closed_iso_compatible,
    commuting_square,
    gysin_residue,
    gysin_residue_closed,
    iterated_purity,
    nu_purity_report,
)
from .sequences import (
    FiltrationSpec,
    closed_residue_complex,
    closed_slice_basis,
    euler_complex,
    filtration,
    fundamental_ses_check,
    pullback_ses,
    residue_complex_all_divisors,
    residue_complex_drop,
    residue_complex_twist,
)

SCHEMA_VERSION = "1"

SUITES = (
    "cartier",
    "residue",
    "euler",
    "filtration",
    "generators",
    "purity-square",
    "nu",
    "obstruction",
    "pullback",
    "blowup",
    "projective",
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "verify"
    suite: str = "all"
    p: int = 2
    m: int = 2
    n: int = 2
    c: int = 2
    j: int = 1
    l: int = 0
    space: str = "P2"
    log_indices: tuple = ()
    box_radius: int | None = None
    max_radius: int = 64
    output: str | None = None
    fmt: str = "text"
    jobs: int = 1
    timings: bool = False
    expect_dims: str | None = None

    def validate(self):
        try:
            PrimeField(self.p)
        except ValueError as e:
            raise UsageError(str(e))
        if self.p > 251:
            raise UsageError("p must be at most 251")
        if not 1 <= self.m <= 6:
            raise UsageError("m must be between 1 and 6")
        if not 0 <= self.n <= 6:
            raise UsageError("n must be between 0 and 6")
        if not 2 <= self.c <= 6:
            raise UsageError("c must be between 2 and 6")
        if self.max_radius > 64 or (self.box_radius or 0) > 64:
            raise UsageError("weight box radius is capped at 64")
        if self.fmt not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["log_indices"] = list(self.log_indices)
        # presentation-only: same math config must give identical bytes
        # whatever the destination
        d.pop("output")
        d.pop("fmt")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        kw = {k: v for k, v in d.items() if k in names}
        kw["log_indices"] = tuple(kw.get("log_indices", ()))
        return cls(**kw)


@dataclass
class CheckResult:
    name: str
    params: str
    passed: bool
    dims: str = ""
    statement: str = ""
    elapsed_ms: float | None = None

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json_dict(self, timings: bool) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "dims": self.dims,
            "statement": self.statement,
            "elapsed_ms": round(self.elapsed_ms, 3) if timings and self.elapsed_ms is not None else None,
        }


def _run_checks(specs, jobs: int) -> list[CheckResult]:
    """specs: (name, params, statement, thunk -> (passed, dims)).  A crash in
    a thunk is a FAIL with the error text, never an abort of the run."""

    def run(one):
        name, params, statement, fn = one
        t0 = time.perf_counter()
        try:
            passed, dims = fn()
        except ResourceLimit:
            raise
        except Exception as e:  # noqa: BLE001 - verification must report, not die
            passed, dims = False, f"error: {type(e).__name__}: {e}"
        dt = (time.perf_counter() - t0) * 1000.0
        return CheckResult(name, params, passed, str(dims), statement, dt)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(run, specs))
    return [run(s) for s in specs]


# -- ring helpers ----------------------------------------------------------------


def poly_ring(p: int, m: int, radius: int, log=None) -> FormRing:
    """Polynomial chart ring T_1..T_m with the given log subset (default all)."""
    idx = tuple(range(m))
    return FormRing(
        p,
        names=tuple(f"T{i + 1}" for i in range(m)),
        log=idx if log is None else tuple(sorted(log)),
        laurent=(),
        window=tuple((0, radius) for _ in range(m)),
    )


def _log_subsets(m: int):
    """The log-set grid: every subset for m <= 2, a representative chain
    for m = 3 (full powerset is 8 rings; the chain exercises all sizes)."""
    if m <= 2:
        return [frozenset(s) for k in range(m + 1) for s in combinations(range(m), k)]
    return [frozenset(), frozenset({0}), frozenset({0, 1}), frozenset(range(m))]


# -- cartier suite ---------------------------------------------------------------


def suite_cartier(p: int, m: int) -> list[CheckResult]:
    specs = []
    radius = 2 * p
    big_radius = 2 * p * p + 2

    def main_axiom():
        checked = 0
        for log in (None, ()):
            ring = poly_ring(p, m, radius, log=log)
            rng = random.Random(0)
            polys = []
            for w in product(range(3), repeat=m):
                polys.append(ring.monomial(w))
            for _ in range(5):
                f = ring.zero(0)
                for _ in range(3):
                    w = tuple(rng.randrange(3) for _ in range(m))
                    f = f + ring.monomial(w) * rng.randrange(1, p)
                polys.append(f)
            for f in polys:
                fpow = ring.one()
                for _ in range(p - 1):
                    fpow = fpow.wedge(f)
                lhs = cartier(fpow.wedge(f.d()))
                if lhs != f.d():
                    return False, f"C(f^(p-1)df) != df for {f}"
                checked += 1
        return True, f"checked={checked}"

    specs.append(
        (
            "cartier-main-axiom",
            f"p={p} m={m}",
            "C(f^(p-1) df) = df for monomials and random polynomials",
            main_axiom,
        )
    )

    def inverse_identity():
        checked = 0
        for log in (None, ()):
            ring = poly_ring(p, m, big_radius, log=log)
            for j in range(m + 1):
                for w in product(range(2 * p + 1), repeat=m):
                    src = ring.slice(j, w)
                    if src.dim == 0:
                        continue
                    pw = tuple(p * x for x in w)
                    zb, back, matc = cartier_slice_matrix(ring, j, pw)
                    if back is None:
                        return False, f"pw={pw} not divisible by p?"
                    cinv = FpMatrix.from_columns(
                        p,
                        [zb.slice.to_vector(inverse_cartier(src.basis_form(k))) for k in range(src.dim)],
                        zb.slice.dim,
                    )
                    for k in range(src.dim):
                        zc = zb.Z_basis.solve(cinv.column(k))
                        if zc is None:
                            return False, f"C^-1 image not closed at (j={j}, w={w})"
                        out = matc.apply(zc)
                        e = np.zeros(src.dim, dtype=np.int64)
                        e[k] = 1
                        if not np.array_equal(out, e):
                            return False, f"C(C^-1(eta)) != eta at (j={j}, w={w})"
                        checked += 1
        return True, f"checked={checked}"

    specs.append(
        (
            "cartier-inverse-identity",
            f"p={p} m={m} |w|<=2p",
            "C(C^-1(eta)) = eta on every slice basis element",
            inverse_identity,
        )
    )

    def kernel_is_exact():
        checked = 0
        for log in (None, ()):
            ring = poly_ring(p, m, radius, log=log)
            for j in range(m + 1):
                for w in ring.iter_weights(j):
                    if not ring.in_window(w):
                        continue  # exact forms at shell weights have antiderivatives outside the box
                    zb, src, matc = cartier_slice_matrix(ring, j, w)
                    if src is None:
                        checked += 1  # p does not divide w; exactness asserted inside
                        continue
                    kern = FpMatrix.from_columns(p, matc.kernel_basis(), zb.dim_Z)
                    b_in_z = FpMatrix.from_columns(
                        p,
                        [zb.Z_basis.solve(zb.B_basis.column(t)) for t in range(zb.dim_B)],
                        zb.dim_Z,
                    )
                    if not kern.same_column_space(b_in_z):
                        return False, f"ker C != B at (j={j}, w={w})"
                    checked += 1
        return True, f"slices={checked}"

    specs.append(
        (
            "cartier-kernel-exact-forms",
            f"p={p} m={m}",
            "C(omega) = 0 exactly on the exact forms, per slice",
            kernel_is_exact,
        )
    )

    def frobenius_linearity():
        checked = 0
        ring = poly_ring(p, m, radius)
        for j in range(m + 1):
            for w in product(range(p + 1), repeat=m):
                _s, zbasis = _closed_basis(ring, j, w)
                for k in range(zbasis.cols):
                    omega = ring.slice(j, w).from_vector(zbasis.column(k))
                    for i in range(m):
                        f = ring.monomial(tuple(1 if t == i else 0 for t in range(m)))
                        lhs = cartier(_pow(f, p).wedge(omega))
                        rhs = f.wedge(cartier(omega))
                        if lhs != rhs:
                            return False, f"C(f^p w) != f C(w) at (j={j}, w={w}, i={i})"
                        checked += 1
        return True, f"checked={checked}"

    specs.append(
        (
            "cartier-frobenius-linear",
            f"p={p} m={m}",
            "C(f^p omega) = f C(omega) for coordinate monomials f",
            frobenius_linearity,
        )
    )

    def wedge_multiplicative():
        ring = poly_ring(p, m, radius)
        rng = random.Random(1)
        pool = []
        for j in range(m + 1):
            for w in product(range(p + 1), repeat=m):
                _s, zbasis = _closed_basis(ring, j, w)
                for k in range(zbasis.cols):
                    pool.append((j, w, ring.slice(j, w).from_vector(zbasis.column(k))))
        checked = 0
        for _ in range(min(250, len(pool) * len(pool))):
            j1, _w1, a = pool[rng.randrange(len(pool))]
            j2, _w2, b = pool[rng.randrange(len(pool))]
            if j1 + j2 > m:
                continue
            lhs = cartier(a.wedge(b))
            rhs = cartier(a).wedge(cartier(b))
            if lhs != rhs:
                return False, f"C(a^b) mismatch at degrees ({j1},{j2})"
            checked += 1
        return True, f"pairs={checked}"

    specs.append(
        (
            "cartier-wedge-multiplicative",
            f"p={p} m={m}",
            "C(omega ^ omega') = C(omega) ^ C(omega') on closed forms",
            wedge_multiplicative,
        )
    )

    def additive():
        ring = poly_ring(p, m, radius)
        rng = random.Random(2)
        checked = 0
        for j in range(m + 1):
            for w in product(range(p + 1), repeat=m):
                s, zbasis = _closed_basis(ring, j, w)
                if zbasis.cols < 2:
                    continue
                for _ in range(3):
                    a = s.from_vector(zbasis.column(rng.randrange(zbasis.cols)))
                    b = s.from_vector(zbasis.column(rng.randrange(zbasis.cols)))
                    if cartier(a + b) != cartier(a) + cartier(b):
                        return False, f"additivity fails at (j={j}, w={w})"
                    checked += 1
        return True, f"pairs={checked}"

    specs.append(
        ("cartier-additive", f"p={p} m={m}", "C(omega + omega') = C(omega) + C(omega')", additive)
    )

    def weight_scaling():
        ring = poly_ring(p, m, radius)
        bij = 0
        for j in range(m + 1):
            for w in product(range(3), repeat=m):
                if not slice_bijection_ok(ring, j, w):
                    return False, f"C^-1 not bijective onto Z/B at (j={j}, w={w})"
                bij += 1
        killed = 0
        for j in range(m + 1):
            for w in ring.iter_weights(j):
                if not ring.in_window(w):
                    continue
                if any(x % p for x in w):
                    zb = ZBDecomposition(ring, j, w)
                    if zb.dim_Z != zb.dim_B:
                        return False, f"closed slice not exact at non-p weight {w}"
                    killed += 1
        return True, f"bijections={bij} annihilated={killed}"

    specs.append(
        (
            "cartier-weight-scaling",
            f"p={p} m={m}",
            "C^-1: Omega_w -> (Z/B)_pw bijective; closed slices at p-indivisible weights are exact",
            weight_scaling,
        )
    )
    return _run_checks(specs, 1)


def _pow(f, k: int):
    out = f.ring.one()
    for _ in range(k):
        out = out.wedge(f)
    return out


def _closed_basis(ring: FormRing, j: int, w):
    return closed_slice_basis(ring, j, w)


# -- residue suite ---------------------------------------------------------------


def suite_residue(p: int, m: int) -> list[CheckResult]:
    specs = []
    for log in _log_subsets(m):
        if not log:
            continue
        z = min(log)
        ring = poly_ring(p, m, p + 2, log=log)
        for a in range(1, m + 1):

            def one(ring=ring, a=a, z=z):
                counts = [0, 0, 0, 0]
                for w in ring.iter_weights(a):
                    cxs = [
                        residue_complex_drop(ring, a, z, w),
                        residue_complex_twist(ring, a, z, w),
                        closed_residue_complex(ring, a, z, w),
                    ]
                    if a == 1:
                        cxs.append(residue_complex_all_divisors(ring, w))
                    for t, cx in enumerate(cxs):
                        if not cx.is_exact():
                            return False, f"sequence {t} fails at w={w}: {cx.exactness_verdicts()}"
                        counts[t] += 1
                return True, f"slices={counts}"

            specs.append(
                (
                    "residue-exactness",
                    f"p={p} m={m} log={sorted(log)} a={a}",
                    "divisor-drop, twist, closed (and a=1 all-divisors) residue sequences exact per weight",
                    one,
                )
            )

    def laurent_spot():
        # T2 inverted, residues taken along V(T1): the divisor still meets
        # the chart, while sections carry genuinely negative T2 exponents
        ring = FormRing(
            p,
            names=("T1", "T2"),
            log=(0, 1),
            laurent=(1,),
            window=((0, 2), (-2, 2)),
        )
        checked = 0
        for w in ring.iter_weights(1):
            for cx in (
                residue_complex_drop(ring, 1, 0, w),
                residue_complex_twist(ring, 1, 0, w),
                closed_residue_complex(ring, 1, 0, w),
            ):
                if not cx.is_exact():
                    return False, f"Laurent slice fails at w={w}"
                checked += 1
        return True, f"slices={checked}"

    specs.append(
        (
            "residue-laurent-spot",
            f"p={p} m=2 laurent",
            "residue sequences stay exact when another chart variable is inverted",
            laurent_spot,
        )
    )
    return _run_checks(specs, 1)


# -- euler suite -----------------------------------------------------------------


def suite_euler(p: int, n: int) -> list[CheckResult]:
    specs = []
    for nn in range(1, n + 1):
        for j in range(nn + 1):
            for l in (0, 1):

                def one(nn=nn, j=j, l=l):
                    checked = 0
                    for w in product(range(-2, 3), repeat=nn + 1):
                        if sum(w) != l:
                            continue
                        for inverted in (None, frozenset({0})):
                            cx = euler_complex(p, nn, j, l, w, inverted=inverted)
                            if not cx.is_exact():
                                return False, f"w={w} chart={inverted}: {cx.exactness_verdicts()}"
                            checked += 1
                    return True, f"slices={checked}"

                specs.append(
                    (
                        "euler-exactness",
                        f"p={p} n={nn} j={j} l={l}",
                        "wedge-power Euler sequence exact per weight on torus and one-coordinate charts",
                        one,
                    )
                )
    return _run_checks(specs, 1)


# -- filtration suite ------------------------------------------------------------


def suite_filtration(p: int) -> list[CheckResult]:
    specs = []
    for u in range(1, 6):
        for w in range(1, 6):

            def one(u=u, w=w):
                v = u + w
                for k in range(v + 1):
                    rep = filtration(FiltrationSpec(u, w, k), p)
                    if not rep.ok:
                        return False, f"k={k} graded={rep.graded_dims} expected={rep.expected_dims}"
                    if rep.graded_dims != [comb(u, k - i) * comb(w, i) for i in range(k + 1)]:
                        return False, f"k={k} dims mismatch"
                return True, f"k=0..{v}"

            specs.append(
                (
                    "filtration-graded-dims",
                    f"p={p} u={u} w={w}",
                    "two-step filtration of Wedge^k(U+W): graded pieces are Wedge^(k-i)U (x) Wedge^iW",
                    one,
                )
            )
    return _run_checks(specs, 1)


# -- generators suite ------------------------------------------------------------


def suite_generators(p: int, n: int) -> list[CheckResult]:
    specs = []
    for nn in range(1, n + 1):
        for j in range(nn + 1):

            def gen(nn=nn, j=j):
                rep = generator_check(p, nn, j)
                return rep.spans, f"H^{j} dim={rep.h_dim}"

            specs.append(
                (
                    "generator-cocycle",
                    f"p={p} n={nn} j={j}",
                    "alternating dlog cocycle spans H^j(P^n, Omega^j)",
                    gen,
                )
            )

        def conn(nn=nn):
            rep = connecting_map_check(p, nn)
            return rep.is_isomorphism, f"scalar={rep.image_class_scalar} H^n dim={rep.h_top_dim}"

        specs.append(
            (
                "connecting-isomorphism",
                f"p={p} n={nn}",
                "boundary map H^(n-1)(D, Omega^(n-1)) -> H^n(P^n, Omega^n) hits the generator",
                conn,
            )
        )
    return _run_checks(specs, 1)


# -- purity suite ----------------------------------------------------------------


def suite_purity(p: int, m: int, nmax: int = 2) -> list[CheckResult]:
    specs = []
    for mm in range(2, max(m, 2) + 1):
        ring = poly_ring(p, mm, 2 * p)
        setup = GysinSetup(ring, 0)
        for n in range(0, min(nmax, mm - 1) + 1):

            def square(setup=setup, n=n):
                rep = commuting_square(setup, n)
                return rep.ok, f"checked={rep.checked} failures={len(rep.failures)}"

            specs.append(
                (
                    "purity-commuting-square",
                    f"p={p} m={mm} n={n}",
                    "residue(C(eta)) = C(residue(eta)) on closed slice bases",
                    square,
                )
            )

            def gysin(setup=setup, n=n, ring=ring):
                ok = 0
                for w in ring.iter_weights(n):
                    g1 = gysin_residue(setup, n, w)
                    g2 = gysin_residue_closed(setup, n, w)
                    if not (g1.ok and g2.ok):
                        return False, f"w={w} coker={g1.coker_dim} target={g1.target_dim}"
                    if not closed_iso_compatible(setup, n, w):
                        return False, f"w={w}: closed iso not a restriction"
                    ok += 1
                return True, f"slices={ok}"

            specs.append(
                (
                    "gysin-residue-iso",
                    f"p={p} m={mm} n={n}",
                    "coker(no-pole forms -> log forms) isomorphic to divisor forms via residue, plain and closed",
                    gysin,
                )
            )

            def nu_pure(setup=setup, n=n):
                rep = nu_purity_report(setup, n)
                return (
                    rep.ok,
                    f"nu expected={rep.expected_nu_dim} computed={rep.computed_nu_dim} obstruction={rep.obstruction_dim}",
                )

            specs.append(
                (
                    "nu-purity-dims",
                    f"p={p} m={mm} n={n}",
                    "ker(C-1) on Gysin cokernels has the nu_Z(n-1) dimension; C-1 cokernel reported",
                    nu_pure,
                )
            )

        if mm >= 2:

            def iterated(ring=ring, mm=mm):
                rep = iterated_purity(ring, (0, 1), min(2, mm))
                return rep.ok, f"r=2 weights={len(rep.per_weight)}"

            specs.append(
                (
                    "iterated-purity",
                    f"p={p} m={mm} r=2",
                    "composite of two residues surjects onto Omega^(n-2) slices, order-independently",
                    iterated,
                )
            )
    return _run_checks(specs, 1)


# -- nu suite --------------------------------------------------------------------


def suite_nu(p: int, m: int) -> list[CheckResult]:
    specs = []
    for log in _log_subsets(m):
        ring = poly_ring(p, m, 2 * p, log=log)
        for n in range(0, m + 2):

            def one(ring=ring, log=log, n=n):
                rep = nu_sections(ring, n)
                want = comb(len(log), n)
                if rep.dim != want:
                    return False, f"dim {rep.dim} != C({len(log)},{n})={want}"
                if not rep.matches_dlog_span:
                    return False, "kernel differs from the dlog wedge span"
                for f in rep.basis:
                    if not f.d().is_zero():
                        return False, "nu section not closed"
                    if cartier(f) != f:
                        return False, "nu section not fixed by C"
                return True, f"dim={rep.dim}"

            specs.append(
                (
                    "nu-dimension",
                    f"p={p} m={m} log={sorted(log)} n={n}",
                    "ker(C-1) on closed n-forms = span of dlog wedges, dimension C(|L|, n)",
                    one,
                )
            )

    def as_preimages():
        ring = poly_ring(p, m, 2 * p)
        targets = [ring.zero(0), ring.monomial(tuple(1 if i == 0 else 0 for i in range(m)))]
        if m >= 2:
            targets.append(
                ring.monomial(tuple(1 if i < 2 else 0 for i in range(m)))
                + ring.monomial(tuple(0 for _ in range(m)))
            )
        wedge = tuple(range(min(m, 2)))
        done = 0
        for h in targets:
            cert = c_minus_one_surjectivity(ring, h, wedge)
            if not cert.ok:
                return False, f"certificate fails for h={h}"
            done += 1
        return True, f"targets={done}"

    specs.append(
        (
            "nu-artin-schreier-preimage",
            f"p={p} m={m}",
            "(C-1) preimages of h * dlog wedges exist in the rank-p extension gamma^p - gamma = h",
            as_preimages,
        )
    )
    return _run_checks(specs, 1)


# -- obstruction suite -----------------------------------------------------------


def suite_obstruction(p: int) -> list[CheckResult]:
    def demo():
        rep = etale_obstruction_demo(p, bound=8)
        return rep.ok, (
            f"base_solution={rep.base_solution_exists} "
            f"certificate_ok={rep.certificate.ok} control_found={rep.control_solution is not None}"
        )

    return _run_checks(
        [
            (
                "etale-obstruction",
                f"p={p} bound=8",
                "gamma^p - gamma = 1/t: no Laurent solution up to degree 8, solvable in the rank-p extension",
                demo,
            )
        ],
        1,
    )


# -- pullback suite --------------------------------------------------------------


def suite_pullback(p: int, c: int) -> list[CheckResult]:
    specs = []
    for cc in range(2, c + 1):
        for n in range(0, cc):

            def one(cc=cc, n=n):
                checked = 0
                for w in product(range(-1, 2), repeat=cc):
                    for chart in range(cc):
                        cx = pullback_ses(p, cc, n, w, chart=chart)
                        if not cx.is_exact():
                            return False, f"w={w} chart={chart}: {cx.exactness_verdicts()}"
                        checked += 1
                return True, f"slices={checked}"

            specs.append(
                (
                    "pullback-ses",
                    f"p={p} c={cc} n={n}",
                    "0 -> Omega^n(log) -> pullback-log forms -> Omega^(n-1)(log) -> 0 exact per weight",
                    one,
                )
            )

    def conormal():
        for mm in (2, 3):
            ring = poly_ring(p, mm, p + 1)
            rep = fundamental_ses_check(ring, 0)
            if not rep.ok:
                return False, f"m={mm}: conormal/restriction bookkeeping fails"
        return True, "m=2,3"

    specs.append(
        (
            "fundamental-ses",
            f"p={p}",
            "conormal map vanishes on log restriction and slice dims split as pullback + lower degree",
            conormal,
        )
    )
    return _run_checks(specs, 1)


# -- blowup suite ----------------------------------------------------------------


def suite_blowup(p: int, jobs: int = 1) -> list[CheckResult]:
    specs = []
    for m, c in ((2, 2), (3, 2), (3, 3)):
        for j in range(m + 1):

            def one(m=m, c=c, j=j):
                rep = blowup_cohomology(m, c, j, p, jobs=jobs)
                higher = rep.dims[1:]
                if any(higher):
                    return False, f"H^(i>0) = {higher}"
                return rep.stabilized, f"dims={rep.dims} box_weights={len(rep.per_weight)}"

            specs.append(
                (
                    "blowup-acyclicity",
                    f"p={p} m={m} c={c} j={j}",
                    "higher Cech cohomology of log forms on the blowup vanishes over stabilized boxes",
                    one,
                )
            )

    def formal(c=2, j=1):
        rep = formal_functions_check(c, j, 3, p)
        return rep.ok, f"ses_exact={rep.ses_exact} pieces={len(rep.pieces)}"

    specs.append(
        (
            "formal-functions",
            f"p={p} c=2 j=1 l<=3",
            "thickened exceptional-fiber cohomology vanishes via the pullback sequence and twist vanishing",
            formal,
        )
    )
    return _run_checks(specs, 1)


# -- projective table suite ------------------------------------------------------


def suite_projective(p: int, n: int) -> list[CheckResult]:
    specs = []
    for nn in range(1, n + 1):

        def table(nn=nn):
            for j in range(nn + 1):
                rep = cech_cohomology(SheafSpec(p=p, space=ProjectiveSpace(nn), j=j))
                want = [1 if i == j else 0 for i in range(nn + 1)]
                if rep.dims != want:
                    return False, f"Omega^{j}: dims={rep.dims}"
            return True, f"delta table 0..{nn}"

        specs.append(
            (
                "projective-diagonal",
                f"p={p} n={nn}",
                "dim H^i(P^n, Omega^j) = 1 if i = j else 0",
                table,
            )
        )

        def twists(nn=nn):
            for j in range(nn + 1):
                for l in (1, 2, 3):
                    rep = cech_cohomology(SheafSpec(p=p, space=ProjectiveSpace(nn), j=j, l=l))
                    if any(rep.dims[1:]):
                        return False, f"Omega^{j}({l}): dims={rep.dims}"
            return True, "l=1..3"

        specs.append(
            (
                "projective-twist-vanishing",
                f"p={p} n={nn}",
                "H^i(P^n, Omega^j(l)) = 0 for i >= 1, l >= 1",
                twists,
            )
        )

        def log_twists(nn=nn):
            for l in (0, 1, 2, 3):
                rep = cech_cohomology(
                    SheafSpec(p=p, space=ProjectiveSpace(nn), j=nn, S=frozenset({0}), l=l)
                )
                if any(rep.dims[1:]):
                    return False, f"Omega^{nn}(log)({l}): dims={rep.dims}"
            return True, "l=0..3"

        specs.append(
            (
                "projective-log-vanishing",
                f"p={p} n={nn}",
                "H^i(P^n, Omega^n(log V(X_0))(l)) = 0 for i >= 1, l >= 0",
                log_twists,
            )
        )
    return _run_checks(specs, 1)


# -- command implementations -----------------------------------------------------


def _collect_suite(cfg: RunConfig) -> list[CheckResult]:
    out = []
    todo = SUITES if cfg.suite == "all" else (cfg.suite,)
    runners = {
        "cartier": lambda: suite_cartier(cfg.p, cfg.m),
        "residue": lambda: suite_residue(cfg.p, cfg.m),
        "euler": lambda: suite_euler(cfg.p, cfg.n),
        "filtration": lambda: suite_filtration(cfg.p),
        "generators": lambda: suite_generators(cfg.p, cfg.n),
        "purity-square": lambda: suite_purity(cfg.p, cfg.m),
        "nu": lambda: suite_nu(cfg.p, cfg.m),
        "obstruction": lambda: suite_obstruction(cfg.p),
        "pullback": lambda: suite_pullback(cfg.p, cfg.c),
        "blowup": lambda: suite_blowup(cfg.p, jobs=cfg.jobs),
        "projective": lambda: suite_projective(cfg.p, cfg.n),
    }
    if cfg.jobs > 1 and cfg.suite == "all":
        with ThreadPoolExecutor(max_workers=cfg.jobs) as ex:
            for results in ex.map(lambda s: runners[s](), todo):
                out.extend(results)
    else:
        for s in todo:
            out.extend(runners[s]())
    return out


def _emit(cfg: RunConfig, payload: str) -> None:
    if cfg.output and cfg.output != "-":
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _checks_payload(cfg: RunConfig, checks: list[CheckResult]) -> str:
    if cfg.fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "tool": "logcartier",
            "version": __version__,
            "checks": [c.to_json_dict(cfg.timings) for c in checks],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["check", "params", "verdict", "dims", "elapsed_ms"])
        for c in checks:
            ms = f"{c.elapsed_ms:.3f}" if cfg.timings and c.elapsed_ms is not None else ""
            wr.writerow([c.name, c.params, c.verdict, c.dims, ms])
        return buf.getvalue()
    lines = []
    for c in checks:
        ms = f"  ({c.elapsed_ms:.1f} ms)" if cfg.timings and c.elapsed_ms is not None else ""
        lines.append(f"{c.verdict}  {c.name}  [{c.params}]  {c.dims}{ms}")
    npass = sum(1 for c in checks if c.passed)
    lines.append(f"{npass}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> int:
    checks = _collect_suite(cfg)
    _emit(cfg, _checks_payload(cfg, checks))
    return 0 if all(c.passed for c in checks) else 3


def _spec_from_config(cfg: RunConfig) -> SheafSpec:
    sp = cfg.space.strip()
    if sp.lower() == "blowup":
        return SheafSpec(p=cfg.p, space=BlowupSpace(m=cfg.m, c=cfg.c), j=cfg.j)
    if sp.upper().startswith("P") and sp[1:].isdigit():
        nn = int(sp[1:])
        if not 1 <= nn <= 6:
            raise UsageError("projective dimension must be between 1 and 6")
        return SheafSpec(
            p=cfg.p,
            space=ProjectiveSpace(nn),
            j=cfg.j,
            S=frozenset(cfg.log_indices),
            l=cfg.l,
        )
    raise UsageError(f"unknown space {cfg.space!r} (use P<n> or blowup)")


def cmd_cohomology(cfg: RunConfig) -> int:
    spec = _spec_from_config(cfg)
    t0 = time.perf_counter()
    rep = cech_cohomology(
        spec, box_radius=cfg.box_radius, max_radius=cfg.max_radius, jobs=cfg.jobs
    )
    if cfg.timings:
        rep.elapsed_ms = round((time.perf_counter() - t0) * 1000.0, 3)
    if cfg.fmt == "json":
        payload = json.dumps(rep.to_json_dict(), sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["check", "params", "verdict", "dims", "elapsed_ms"])
        ms = f"{rep.elapsed_ms:.3f}" if cfg.timings and rep.elapsed_ms is not None else ""
        wr.writerow(
            [
                "cohomology",
                spec.label(),
                "OK" if rep.stabilized else "UNSTABLE",
                " ".join("inf" if d is None else str(d) for d in rep.dims),
                ms,
            ]
        )
        payload = buf.getvalue()
    else:
        dims = ", ".join("inf" if d is None else str(d) for d in rep.dims)
        lines = [
            spec.label(),
            f"dims: [{dims}]",
            f"stabilized: {str(rep.stabilized).lower()}",
            f"box: {list(rep.box)}",
            f"weights with nonzero dims: {len(rep.per_weight)}",
        ]
        payload = "\n".join(lines) + "\n"
    _emit(cfg, payload)
    if cfg.expect_dims is not None:
        want = [None if t == "inf" else int(t) for t in cfg.expect_dims.split(",")]
        if want != list(rep.dims):
            sys.stderr.write(f"expected dims {want}, computed {list(rep.dims)}\n")
            return 3
    return 0


def cmd_report(cfg: RunConfig) -> int:
    checks = _collect_suite(cfg)
    reports = []
    for nn in range(1, min(cfg.n, 2) + 1):
        for j in range(nn + 1):
            rep = cech_cohomology(SheafSpec(p=cfg.p, space=ProjectiveSpace(nn), j=j))
            reports.append(rep.to_json_dict())
    rep = blowup_cohomology(2, 2, 1, cfg.p)
    reports.append(rep.to_json_dict())
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": "logcartier",
        "version": __version__,
        "config": cfg.to_dict(),
        "checks": [c.to_json_dict(cfg.timings) for c in checks],
        "cohomology": reports,
    }
    _emit(cfg, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0 if all(c.passed for c in checks) else 3


# -- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="logcartier", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("-p", type=int, default=2, help="prime characteristic")
        sp.add_argument("--jobs", type=int, default=None, help="worker threads (env LOGCARTIER_JOBS)")
        sp.add_argument("--format", dest="fmt", default="text", help="json | csv | text")
        sp.add_argument("--output", default=None, help="output path ('-' = stdout)")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings")

    co = sub.add_parser("cohomology", help="Cech cohomology of one sheaf")
    common(co)
    co.add_argument("--space", default="P2", help="P<n> or blowup")
    co.add_argument("--sheaf", default="Omega", help="Omega (default) or O (degree-0 forms)")
    co.add_argument("--form-degree", dest="j", type=int, default=None)
    co.add_argument("--twist", dest="l", type=int, default=0)
    co.add_argument("--log-index", dest="log_indices", type=int, action="append", default=[])
    co.add_argument("--m", type=int, default=2)
    co.add_argument("--c", type=int, default=2)
    co.add_argument("--box-radius", dest="box_radius", type=int, default=None)
    co.add_argument("--max-box-radius", dest="max_radius", type=int, default=64)
    co.add_argument("--expect-dims", default=None, help="comma list; mismatch exits 3")

    ve = sub.add_parser("verify", help="run a verification suite")
    common(ve)
    ve.add_argument("suite", nargs="?", default="all", help=f"one of {', '.join(SUITES)} or all")
    ve.add_argument("-m", type=int, default=2)
    ve.add_argument("-n", type=int, default=2)
    ve.add_argument("-c", type=int, default=2)

    re_ = sub.add_parser("report", help="consolidated JSON report")
    common(re_)
    re_.add_argument("-m", type=int, default=2)
    re_.add_argument("-n", type=int, default=2)
    re_.add_argument("-c", type=int, default=2)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("LOGCARTIER_JOBS", "1"))
    cfg = RunConfig(
        command=args.command,
        p=args.p,
        jobs=max(1, jobs),
        fmt=args.fmt,
        output=args.output,
        timings=bool(args.timings),
    )
    for name in ("m", "n", "c", "l", "space", "box_radius", "max_radius", "expect_dims", "suite"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "log_indices"):
        cfg.log_indices = tuple(sorted(set(args.log_indices)))
    if hasattr(args, "j"):
        if args.j is not None:
            cfg.j = args.j
        elif getattr(args, "sheaf", "Omega") == "O":
            cfg.j = 0
    if getattr(args, "sheaf", "Omega") not in ("O", "Omega"):
        raise UsageError(f"unknown sheaf {args.sheaf!r}")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        cfg.validate()
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    try:
        if cfg.command == "cohomology":
            return cmd_cohomology(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_report(cfg)
    except ResourceLimit as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return 2
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"i/o error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
