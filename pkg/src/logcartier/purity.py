"""Gysin maps and purity at section level, on one affine chart.

R^1 i^! of the log n-forms along a coordinate center Z = V(T_z) is the
cokernel of Omega^n(log D) -> Omega^n(log(D+Z)) on each weight slice, and the
residue at z identifies that cokernel with Omega^{n-1}_Z(log D|_Z).  The same
statement holds for closed forms via the closed residue sequence, the Cartier
operator commutes with the residue, and ker(C - 1) on the cokernels recovers
nu_Z(n-1).  The cokernel of C - 1 (the next i^! term of nu) is reported but
never asserted zero: in the polynomial or Laurent model it survives, and only
Artin-Schreier covers kill it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .cartier import ZBDecomposition, cartier, nu_sections
from .forms import FormRing, LogForm, slice_map_matrix
from .gflinalg import FpMatrix
from .sequences import (
    SliceComplex,
    closed_residue_complex,
    closed_slice_basis,
    residue_complex_drop,
)


@dataclass(frozen=True)
class GysinSetup:
    """Chart ring whose log set contains the center index z; the background
    divisor D is the rest of the log set."""

    ring: FormRing
    z: int

    def __post_init__(self):
        if self.z not in self.ring.log:
            raise ValueError("the center must be a log coordinate")

    @property
    def background(self) -> frozenset:
        return frozenset(self.ring.log) - {self.z}


@dataclass
class GysinSlice:
    """One weight slice of the Gysin identification.

    `complex` is the residue sequence sub -> big -> target; `iso` is the
    residue matrix restricted to cokernel representatives (big-slice basis
    columns completing the image of the inclusion), in target coordinates.
    """

    w: tuple
    complex: SliceComplex
    coker_dim: int
    target_dim: int
    reps: tuple
    iso: FpMatrix

    @property
    def ok(self) -> bool:
        return (
            self.complex.is_exact()
            and self.coker_dim == self.target_dim
            and self.iso.rank() == self.target_dim
        )


def _coker_reps(inc: FpMatrix, big_dim: int) -> list[int]:
    """Basis indices of the big space completing im(inc), deterministically."""
    aug = inc.hstack(FpMatrix.identity(inc.p, big_dim))
    return [k - inc.cols for k in aug.column_space_pivots() if k >= inc.cols]


def gysin_residue(setup: GysinSetup, n: int, w) -> GysinSlice:
    """coker(Omega^n(log D)_w -> Omega^n(log(D+Z))_w) compared with the
    weight-w slice of Omega^{n-1}_Z(log D|_Z) through the residue at z."""
    w = tuple(int(x) for x in w)
    cx = residue_complex_drop(setup.ring, n, setup.z, w)
    inc, res = cx.maps
    reps = _coker_reps(inc, cx.dims[1])
    iso = FpMatrix.from_columns(
        setup.ring.p, [res.column(k) for k in reps], cx.dims[2]
    )
    return GysinSlice(w, cx, len(reps), cx.dims[2], tuple(reps), iso)


def gysin_residue_closed(setup: GysinSetup, n: int, w) -> GysinSlice:
    """The closed-forms analogue: coker on Z-form slices vs ZOmega^{n-1}_Z."""
    w = tuple(int(x) for x in w)
    cx = closed_residue_complex(setup.ring, n, setup.z, w)
    inc, res = cx.maps
    reps = _coker_reps(inc, cx.dims[1])
    iso = FpMatrix.from_columns(
        setup.ring.p, [res.column(k) for k in reps], cx.dims[2]
    )
    return GysinSlice(w, cx, len(reps), cx.dims[2], tuple(reps), iso)


def closed_iso_compatible(setup: GysinSetup, n: int, w) -> bool:
    """The closed-forms residue is the restriction of the all-forms one:
    Z maps into Z and B maps into B on the divisor."""
    ring, z = setup.ring, setup.z
    w = tuple(int(x) for x in w)
    if w[z] != 0:
        return True  # target slice is zero; nothing to compare
    big = ZBDecomposition(ring, n, w)
    dring, _ = ring.drop_var(z)
    wd = tuple(x for k, x in enumerate(w) if k != z)
    tgt = ZBDecomposition(dring, n - 1, wd)
    res = slice_map_matrix(big.slice, tgt.slice, lambda f: f.residue(z))
    z_to_z = tgt.Z_basis.contains_columns(res @ big.Z_basis)
    b_to_b = tgt.B_basis.contains_columns(res @ big.B_basis)
    return z_to_z and b_to_b


# -- the commuting square res o C = C o res -------------------------------------


def eta_decomposition(ring: FormRing, z: int, form: LogForm):
    """form = gamma + eta' ^ dlog T_z with gamma free of dlog T_z."""
    gamma_terms: dict = {}
    prime_terms: dict = {}
    for (a, gens), c in form.terms.items():
        if z not in gens:
            gamma_terms[(a, gens)] = c
            continue
        k = gens.index(z)
        rest = gens[:k] + gens[k + 1 :]
        sign = (-1) ** (len(gens) - 1 - k)
        prime_terms[(a, rest)] = (prime_terms.get((a, rest), 0) + sign * c) % ring.p
    gamma = LogForm(ring, form.degree, gamma_terms)
    prime = LogForm(ring, max(form.degree - 1, 0), prime_terms)
    return gamma, prime


@dataclass
class SquareReport:
    ring: FormRing
    z: int
    n: int
    checked: int
    failures: list
    decomposition_failures: list

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures and not self.decomposition_failures


def commuting_square(setup: GysinSetup, n: int) -> SquareReport:
    """residue(C(eta)) = C(residue(eta)) for every closed slice-basis form
    eta in ZOmega^{n+1}(log(D+Z)) over the weight window, plus the
    eta = gamma + eta' ^ dlog T_z decomposition reconstruction."""
    ring, z = setup.ring, setup.z
    p = ring.p
    dring, _ = ring.drop_var(z)
    checked = 0
    failures = []
    decomp_failures = []
    for w in ring.iter_weights(n + 1):
        if w[z] < 0 or not ring.in_window(w):
            continue  # skip Laurent weights (no divisor slice) and the outer
            # degree shell, where the window truncates antiderivatives
        s, zb = closed_slice_basis(ring, n + 1, w)
        for k in range(zb.cols):
            eta = s.from_vector(zb.column(k))
            ceta = cartier(eta)
            path_a = ceta.residue(z) if not ceta.is_zero() else dring.zero(n)
            path_b = cartier(eta.residue(z))
            checked += 1
            if path_a != path_b:
                failures.append((w, k))
            gamma, prime = eta_decomposition(ring, z, eta)
            if gamma + prime.wedge(ring.gen(z)) != eta:
                decomp_failures.append((w, k))
    return SquareReport(ring, z, n, checked, failures, decomp_failures)


# -- nu on the divisor through the Gysin identification -------------------------


@dataclass
class NuPurityReport:
    setup: GysinSetup
    n: int
    r: int
    square_ok: bool
    expected_nu_dim: int
    computed_nu_dim: int
    obstruction_dim: int
    per_weight_coker: dict
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return self.square_ok and self.expected_nu_dim == self.computed_nu_dim

    def to_json_dict(self) -> dict:
        ring = self.setup.ring
        return {
            "setup": {
                "p": ring.p,
                "names": list(ring.names),
                "log": sorted(ring.log),
                "z": self.setup.z,
            },
            "n": self.n,
            "r": self.r,
            "square_ok": self.square_ok,
            "nu_dims": {
                "expected": self.expected_nu_dim,
                "computed": self.computed_nu_dim,
            },
            "obstruction_dim": self.obstruction_dim,
            "elapsed_ms": self.elapsed_ms,
        }


def nu_purity_report(setup: GysinSetup, n: int) -> NuPurityReport:
    """ker(C - 1) on the Gysin cokernels vs nu_Z(n-1), with the cokernel of
    C - 1 reported as the obstruction term.

    C sends closed forms to arbitrary forms, so C - 1 runs from the closed
    cokernel (= ZOmega^{n-1} on the divisor, via residue) into the plain
    cokernel (= Omega^{n-1}), the weight-w block landing in blocks w and w/p.
    The kernel is the same coupled linear system across the window as in the
    direct nu computation on the divisor.
    """
    ring, z = setup.ring, setup.z
    p = ring.p
    if n == 0:
        # coker of O -> O is zero and nu_Z(-1) = 0
        square = commuting_square(setup, 0)
        return NuPurityReport(setup, 0, 1, square.ok, 0, 0, 0, {})
    weights = [w for w in ring.iter_weights(n) if w[z] == 0 and ring.in_window(w)]
    closed = {}
    plain = {}
    for w in weights:
        ccx = closed_residue_complex(ring, n, z, w)
        cinc, _res = ccx.maps
        _s1, z1 = ccx.spaces[1]
        closed[w] = (_coker_reps(cinc, ccx.dims[1]), z1)
        pcx = residue_complex_drop(ring, n, z, w)
        pinc, _res = pcx.maps
        preps = _coker_reps(pinc, pcx.dims[1])
        units = []
        for k in preps:
            e = np.zeros(pcx.dims[1], dtype=np.int64)
            e[k] = 1
            units.append(e)
        # units complete the image to the full slice, so quotient
        # coordinates exist for every vector and the rep part is unique
        solver = FpMatrix.from_columns(p, units, pcx.dims[1]).hstack(pinc)
        plain[w] = (preps, solver)

    def quot(w, vec):
        preps, solver = plain[w]
        sol = solver.solve(vec)
        if sol is None:
            raise AssertionError("plain cokernel representatives do not span")
        return sol[: len(preps)]

    row_off = {}
    rows = 0
    for w in weights:
        row_off[w] = rows
        rows += len(plain[w][0])
    cols = []
    for w in weights:
        creps, z1 = closed[w]
        pw = tuple(x // p for x in w) if all(x % p == 0 for x in w) else None
        for rep in creps:
            amb = z1.column(rep)
            col = np.zeros(rows, dtype=np.int64)
            qw = quot(w, amb)
            col[row_off[w] : row_off[w] + len(qw)] -= qw
            if pw is not None and pw in plain:
                cf = cartier(ring.slice(n, w).from_vector(amb))
                if not cf.is_zero():
                    qp = quot(pw, ring.slice(n, pw).to_vector(cf))
                    col[row_off[pw] : row_off[pw] + len(qp)] += qp
            cols.append(col % p)
    cm1 = FpMatrix.from_columns(p, cols, rows)
    computed = cm1.nullity()
    obstruction = cm1.cokernel_dim()
    dring, _ = ring.drop_var(z)
    expected = nu_sections(dring, n - 1).dim
    square = commuting_square(setup, n - 1)
    per_weight = {w: len(closed[w][0]) for w in weights if closed[w][0]}
    return NuPurityReport(
        setup=setup,
        n=n,
        r=1,
        square_ok=square.ok,
        expected_nu_dim=expected,
        computed_nu_dim=computed,
        obstruction_dim=obstruction,
        per_weight_coker=per_weight,
    )


# -- iterated (codimension r) purity ---------------------------------------------


@dataclass
class IteratedPurityReport:
    ring: FormRing
    chain: tuple
    n: int
    r: int
    shift: int
    per_weight: dict
    steps_exact: bool
    composite_surjective: bool
    order_independent: bool

    @property
    def ok(self) -> bool:
        return self.steps_exact and self.composite_surjective and self.order_independent


def _adjusted_chain(chain):
    """Chain indices in the coordinates of the successively dropped rings."""
    out = []
    dropped: list[int] = []
    for z in chain:
        out.append(z - sum(1 for d in dropped if d < z))
        dropped.append(z)
    return out


def _composite_dims(ring: FormRing, order, n: int) -> dict:
    """Per-weight (target dim, composite residue rank) for one drop order."""
    adjusted = _adjusted_chain(order)
    out = {}
    for w in ring.iter_weights(n):
        if any(w[z] != 0 for z in order):
            continue
        if n < len(order):
            out[w] = (0, 0)  # target degree is negative; nothing to hit
            continue
        s = ring.slice(n, w)
        forms = [s.basis_form(k) for k in range(s.dim)]
        cur = ring
        for zc in adjusted:
            forms = [f.residue(zc) for f in forms]
            cur, _ = cur.drop_var(zc)
        wd = tuple(x for k, x in enumerate(w) if k not in set(order))
        tgt = cur.slice(n - len(order), wd)
        mat = FpMatrix.from_columns(ring.p, [tgt.to_vector(f) for f in forms], tgt.dim)
        out[w] = (tgt.dim, mat.rank())
    return out


def iterated_purity(ring: FormRing, chain, n: int) -> IteratedPurityReport:
    """Compose r single-divisor residues along a chain of coordinate centers;
    the composite hits the full Omega^{n-r} slice on the common zero weights,
    each single step is an exact sequence, and the per-weight dimensions do
    not depend on the order of the chain.  The homological shift [-r] is
    bookkeeping, recorded as metadata."""
    chain = tuple(int(z) for z in chain)
    if len(set(chain)) != len(chain):
        raise ValueError("chain indices must be distinct")
    if any(z not in ring.log for z in chain):
        raise ValueError("chain indices must be log coordinates")
    r = len(chain)
    steps_exact = True
    cur = ring
    deg = n
    for zc in _adjusted_chain(chain):
        for w in cur.iter_weights(deg):
            if not residue_complex_drop(cur, deg, zc, w).is_exact():
                steps_exact = False
        cur, _ = cur.drop_var(zc)
        deg -= 1
    base = _composite_dims(ring, chain, n)
    order_independent = all(
        _composite_dims(ring, perm, n) == base for perm in permutations(chain)
    )
    surjective = all(rank == dim for dim, rank in base.values())
    per_weight = {w: dim for w, (dim, _rank) in base.items() if dim}
    return IteratedPurityReport(
        ring=ring,
        chain=chain,
        n=n,
        r=r,
        shift=-r,
        per_weight=per_weight,
        steps_exact=steps_exact,
        composite_surjective=surjective,
        order_independent=order_independent,
    )
