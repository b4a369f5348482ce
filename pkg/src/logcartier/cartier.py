"""Frobenius, inverse Cartier, the Cartier operator, Z/B decompositions, the
dlog kernel space nu(n), and Artin-Schreier extensions.

Conventions.  On our generator basis the inverse Cartier map is

    C^{-1}(T^a) = T^{pa},  C^{-1}(dT_i) = T_i^{p-1} dT_i,
    C^{-1}(dlog T_i) = dlog T_i,

multiplicative on wedges, and induces a bijection Omega_w -> (Z/B)_{pw} per
weight slice.  The Cartier operator C on closed forms is computed by solving
C^{-1}(eta) = omega mod B on each slice; closed slices of weight not divisible
by p are exact and map to 0.  We standardize on the operator C - 1 (never
1 - C) in kernel/cokernel bookkeeping.

Artin-Schreier extensions adjoin gamma with gamma^p - gamma = h, as a free
rank-p module with basis 1, gamma, ..., gamma^{p-1}.  Since
(C - 1)(gamma^p * omega) = (gamma - gamma^p) * omega = -h * omega for a
C-fixed dlog wedge omega, the preimage certificate for a target h * omega is
eta' = -gamma^p * omega (for p = 2 the sign is invisible and eta' = gamma^2 *
omega on the nose).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .forms import FormRing, LogForm, WeightSlice, WindowOverflow, slice_map_matrix
from .gflinalg import FpMatrix


def frobenius(f: LogForm) -> LogForm:
    """x -> x^p on 0-forms: every exponent is multiplied by p."""
    if f.degree != 0:
        raise ValueError("frobenius acts on 0-forms")
    ring = f.ring
    out = {}
    for (a, gens), c in f.terms.items():
        pa = ring.check_window(tuple(x * ring.p for x in a))
        out[(pa, gens)] = c
    return LogForm(ring, 0, out)


def inverse_cartier(form: LogForm) -> LogForm:
    """A Z-representative of the inverse-Cartier class of `form`, at weight
    p * w.  Coefficients are untouched (c^p = c in F_p)."""
    ring = form.ring
    p = ring.p
    out = {}
    for (a, gens), c in form.terms.items():
        na = list(x * p for x in a)
        for g in gens:
            if g not in ring.log:
                na[g] += p - 1
        na = tuple(na)
        if not ring.in_window(na):
            raise WindowOverflow(
                f"inverse Cartier exponent {na} outside window {ring.window}"
            )
        out[(na, gens)] = c
    return LogForm(ring, form.degree, out)


class ZBDecomposition:
    """Closed (Z) and exact (B) forms of one weight slice, with quotient reps.

    Z_basis / B_basis / quotient_basis are matrices whose columns are
    coordinates in the slice basis; B's columns are the pivot columns of the
    incoming differential, so all bases are deterministic.
    """

    def __init__(self, ring: FormRing, j: int, w):
        self.ring = ring
        self.degree = j
        self.weight = tuple(int(x) for x in w)
        self.slice = ring.slice(j, self.weight)
        up = ring.slice(j + 1, self.weight)
        self.d_out = slice_map_matrix(self.slice, up, lambda f: f.d())
        if j == 0:
            self.d_in = FpMatrix.zeros(ring.p, self.slice.dim, 0)
        else:
            down = ring.slice(j - 1, self.weight)
            self.d_in = slice_map_matrix(down, self.slice, lambda f: f.d())
        self.Z_basis = FpMatrix.from_columns(
            ring.p, self.d_out.kernel_basis(), self.slice.dim
        )
        pivots = self.d_in.column_space_pivots()
        self.B_basis = FpMatrix.from_columns(
            ring.p, [self.d_in.column(k) for k in pivots], self.slice.dim
        )
        if not self.Z_basis.contains_columns(self.B_basis):
            raise AssertionError("exact forms must be closed (d^2 != 0?)")
        # complete B to Z greedily, in Z-basis order
        quotient = []
        cur = self.B_basis
        for k in range(self.Z_basis.cols):
            cand = cur.hstack(
                FpMatrix.from_columns(ring.p, [self.Z_basis.column(k)], self.slice.dim)
            )
            if cand.rank() > cur.rank():
                quotient.append(self.Z_basis.column(k))
                cur = cand
        self.quotient_basis = FpMatrix.from_columns(ring.p, quotient, self.slice.dim)

    @property
    def dim_Z(self) -> int:
        return self.Z_basis.cols

    @property
    def dim_B(self) -> int:
        return self.B_basis.cols

    @property
    def dim_quotient(self) -> int:
        return self.quotient_basis.cols

    def z_forms(self) -> list[LogForm]:
        return [self.slice.from_vector(self.Z_basis.column(k)) for k in range(self.dim_Z)]

    def contains_closed(self, form: LogForm) -> bool:
        v = self.slice.to_vector(form)
        return self.d_out.apply(v).max(initial=0) == 0

    def is_exact(self, form: LogForm) -> bool:
        return self.B_basis.solve(self.slice.to_vector(form)) is not None


def zb_decomposition(ring: FormRing, j: int, w) -> ZBDecomposition:
    return ZBDecomposition(ring, j, w)


def _divides(p: int, w) -> bool:
    return all(x % p == 0 for x in w)


def cartier_slice_matrix(ring: FormRing, j: int, w):
    """Matrix of C on the Z-basis of slice (j, w), into slice (j, w/p) coords.

    Returns (zb, source_slice, matrix).  For weights not divisible by p the
    source is None and the matrix is the zero map into a 0-dim space; the
    closed slice is verified to be exact in that case.
    """
    zb = ZBDecomposition(ring, j, w)
    p = ring.p
    if not _divides(p, zb.weight):
        if zb.dim_Z != zb.dim_B:
            raise AssertionError(
                f"closed slice at non-p-divisible weight {w} is not exact"
            )
        return zb, None, FpMatrix.zeros(p, 0, zb.dim_Z)
    src = ring.slice(j, tuple(x // p for x in zb.weight))
    cinv = slice_map_matrix(src, zb.slice, inverse_cartier)
    system = cinv.hstack(zb.B_basis)
    cols = []
    for k in range(zb.dim_Z):
        x = system.solve(zb.Z_basis.column(k))
        if x is None:
            raise AssertionError(
                f"inverse Cartier not surjective onto Z/B at (j={j}, w={w})"
            )
        cols.append(x[: src.dim])
    return zb, src, FpMatrix.from_columns(p, cols, src.dim)


def slice_bijection_ok(ring: FormRing, j: int, w) -> bool:
    """Whether C^{-1}: Omega_{w} -> (Z/B)_{p w} is a bijection on the slice."""
    src = ring.slice(j, w)
    pw = tuple(x * ring.p for x in src.weight)
    zb = ZBDecomposition(ring, j, pw)
    cinv = slice_map_matrix(src, zb.slice, inverse_cartier)
    if not zb.Z_basis.contains_columns(cinv):
        return False  # image must be closed
    aug = cinv.hstack(zb.B_basis)
    injective = aug.rank() == src.dim + zb.dim_B
    surjective = src.dim + zb.dim_B == zb.dim_Z
    return injective and surjective


def cartier(form: LogForm) -> LogForm:
    """The Cartier operator on a closed form (any mix of weights)."""
    if not form.d().is_zero():
        raise ValueError("Cartier operator needs a closed form")
    ring = form.ring
    out = None
    for w, part in form.homogeneous_parts().items():
        zb, src, mat = cartier_slice_matrix(ring, form.degree, w)
        zvec = zb.Z_basis.solve(zb.slice.to_vector(part))
        if zvec is None:
            raise AssertionError("closed part not in Z basis span")
        if src is None:
            continue
        piece = src.from_vector(mat.apply(zvec))
        out = piece if out is None else out + piece
    return out if out is not None else ring.zero(form.degree)


# -- nu(n): kernel of C - 1 on closed n-forms --------------------------------


@dataclass
class NuReport:
    ring: FormRing
    n: int
    basis: tuple
    truncated: bool
    expected_dlog_dim: int
    matches_dlog_span: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def dlog_wedge(ring: FormRing, indices) -> LogForm:
    """dlog T_{i_1} ^ ... ^ dlog T_{i_n} for log indices i_1 < ... < i_n."""
    out = ring.one()
    for i in indices:
        out = out.wedge(ring.gen(i) if i in ring.log else ring.dlog(i))
    return out


def nu_sections(ring: FormRing, n: int) -> NuReport:
    """Brute-force ker(C - 1) on closed n-forms across the weight window.

    C couples the slices at weights w and p*w; since |p^k w| grows without
    bound for w != 0, every coupling chain exits the window and the kernel is
    computed exactly for window-supported forms.  On Laurent rings the result
    is flagged truncated (the honest statement is about the window only).

    Weights on the outer degree shell (w_i = hi + 1 at a dT generator) are
    skipped: their exact forms have antiderivatives outside the window, so
    the Z/B split there is an artifact of the box, not of the ring.
    """
    p = ring.p
    weights = [w for w in ring.iter_weights(n) if ring.in_window(w)]
    w_index = {w: k for k, w in enumerate(weights)}
    slices = [ring.slice(n, w) for w in weights]
    zbs = {}
    cmats = {}
    for k, w in enumerate(weights):
        if slices[k].dim == 0:
            continue
        zb, src, mat = cartier_slice_matrix(ring, n, w)
        if zb.dim_Z:
            zbs[k] = zb
            cmats[k] = (src, mat)

    row_offset = {}
    total_rows = 0
    for k, s in enumerate(slices):
        row_offset[k] = total_rows
        total_rows += s.dim
    col_blocks = sorted(zbs)
    col_offset = {}
    total_cols = 0
    for k in col_blocks:
        col_offset[k] = total_cols
        total_cols += zbs[k].dim_Z

    m = np.zeros((total_rows, total_cols), dtype=np.int64)
    for k in col_blocks:
        zb = zbs[k]
        src, mat = cmats[k]
        for c in range(zb.dim_Z):
            col = col_offset[k] + c
            zcol = zb.Z_basis.column(c)
            m[row_offset[k] : row_offset[k] + slices[k].dim, col] -= zcol
            if src is not None:
                tgt = w_index[src.weight]
                img = mat.column(c)
                m[row_offset[tgt] : row_offset[tgt] + src.dim, col] += img
    system = FpMatrix(p, m)
    basis_forms = []
    for vec in system.kernel_basis():
        form = ring.zero(n)
        for k in col_blocks:
            zb = zbs[k]
            coords = vec[col_offset[k] : col_offset[k] + zb.dim_Z]
            if coords.max(initial=0) == 0:
                continue
            form = form + slices[k].from_vector(zb.Z_basis.apply(coords))
        basis_forms.append(form)

    expected = comb(len(ring.log), n)
    matches = False
    if not ring.laurent:
        wedges = [dlog_wedge(ring, I) for I in combinations(sorted(ring.log), n)]
        matches = _same_span(ring, weights, slices, row_offset, total_rows, basis_forms, wedges)
    return NuReport(
        ring=ring,
        n=n,
        basis=tuple(basis_forms),
        truncated=bool(ring.laurent),
        expected_dlog_dim=expected,
        matches_dlog_span=matches,
    )


def _global_vector(slices, w_index, row_offset, total_rows, form):
    v = np.zeros(total_rows, dtype=np.int64)
    for w, part in form.homogeneous_parts().items():
        k = w_index[w]
        v[row_offset[k] : row_offset[k] + slices[k].dim] = slices[k].to_vector(part)
    return v


def _same_span(ring, weights, slices, row_offset, total_rows, forms_a, forms_b):
    w_index = {w: k for k, w in enumerate(weights)}
    va = [
        _global_vector(slices, w_index, row_offset, total_rows, f) for f in forms_a
    ]
    vb = [
        _global_vector(slices, w_index, row_offset, total_rows, f) for f in forms_b
    ]
    ma = FpMatrix.from_columns(ring.p, va, total_rows)
    mb = FpMatrix.from_columns(ring.p, vb, total_rows)
    return ma.same_column_space(mb)


# -- Artin-Schreier extensions ------------------------------------------------


class ASForm:
    """A differential form over an Artin-Schreier extension: a vector of p
    base-ring forms, coefficient k being the gamma^k component."""

    __slots__ = ("ext", "degree", "coeffs")

    def __init__(self, ext: "ArtinSchreierExtension", degree: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != ext.p:
            raise ValueError("need exactly p gamma-components")
        self.ext = ext
        self.degree = degree
        self.coeffs = tuple(coeffs)

    def __add__(self, other: "ASForm") -> "ASForm":
        return ASForm(
            self.ext,
            self.degree,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __sub__(self, other: "ASForm") -> "ASForm":
        return ASForm(
            self.ext,
            self.degree,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ASForm)
            and other.ext is self.ext
            and other.degree == self.degree
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __repr__(self) -> str:
        parts = [f"g^{k}*({c})" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "<AS " + (" + ".join(parts) if parts else "0") + ">"


class ArtinSchreierExtension:
    """A[gamma]/(gamma^p - gamma - h): free of rank p over the base ring A.

    Elements and forms are coefficient vectors in the basis 1..gamma^{p-1};
    multiplication reduces with gamma^p = gamma + h, and the differential uses
    d(gamma) = -dh (differentiate the defining relation; d(gamma^p) = 0).
    """

    def __init__(self, ring: FormRing, h: LogForm):
        if h.ring != ring or h.degree != 0:
            raise ValueError("h must be a 0-form of the base ring")
        self.ring = ring
        self.h = h
        self.p = ring.p

    def module_rank(self) -> int:
        return self.p

    def form(self, degree: int, coeffs) -> ASForm:
        return ASForm(self, degree, coeffs)

    def embed(self, base_form: LogForm) -> ASForm:
        coeffs = [base_form] + [
            self.ring.zero(base_form.degree) for _ in range(self.p - 1)
        ]
        return ASForm(self, base_form.degree, coeffs)

    def gamma(self) -> ASForm:
        z = self.ring.zero(0)
        coeffs = [z, self.ring.one()] + [z for _ in range(self.p - 2)]
        return ASForm(self, 0, coeffs)

    def multiply(self, x: ASForm, y: ASForm) -> ASForm:
        """Product of a 0-form extension element with any extension form."""
        if x.degree != 0:
            raise ValueError("left factor must be a 0-form")
        p = self.p
        raw = [self.ring.zero(y.degree) for _ in range(2 * p - 1)]
        for i, ci in enumerate(x.coeffs):
            if ci.is_zero():
                continue
            for k, ck in enumerate(y.coeffs):
                if ck.is_zero():
                    continue
                raw[i + k] = raw[i + k] + ci.wedge(ck)
        for e in range(2 * p - 2, p - 1, -1):
            c = raw[e]
            if c.is_zero():
                continue
            raw[e] = self.ring.zero(y.degree)
            raw[e - p + 1] = raw[e - p + 1] + c
            raw[e - p] = raw[e - p] + self.h.wedge(c)
        return ASForm(self, y.degree, raw[:p])

    def power(self, x: ASForm, k: int) -> ASForm:
        out = self.embed(self.ring.one())
        for _ in range(k):
            out = self.multiply(x, out)
        return out

    def d(self, x: ASForm) -> ASForm:
        dh = self.h.d()
        out = [self.ring.zero(x.degree + 1) for _ in range(self.p)]
        for k, c in enumerate(x.coeffs):
            out[k] = out[k] + c.d()
            if k >= 1 and not c.is_zero():
                out[k - 1] = out[k - 1] - (dh.wedge(c)) * k
        return ASForm(self, x.degree + 1, out)

    def inverse_cartier_form(self, x: ASForm) -> ASForm:
        """C^{-1} over the extension: gamma^k T^a w_I -> gamma^{pk} (base C^{-1}),
        with gamma^{pk} = (gamma + h)^k reduced in the module basis."""
        out = None
        gp = self.power(self.gamma(), self.p)  # = gamma + h
        for k, c in enumerate(x.coeffs):
            if c.is_zero():
                continue
            piece = self.multiply(self.power(gp, k), self.embed(inverse_cartier(c)))
            out = piece if out is None else out + piece
        if out is None:
            return ASForm(self, x.degree, [self.ring.zero(x.degree)] * self.p)
        return out


@dataclass
class ASCertificate:
    """Preimage certificate for (C - 1) eta' = h * dlog-wedge in the extension."""

    extension: ArtinSchreierExtension
    target: LogForm
    eta_prime: ASForm
    closed: bool
    is_inverse_cartier_preimage: bool
    c_minus_one_hits_target: bool
    module_rank: int

    @property
    def ok(self) -> bool:
        return (
            self.closed
            and self.is_inverse_cartier_preimage
            and self.c_minus_one_hits_target
            and self.module_rank == self.extension.p
        )


def c_minus_one_surjectivity(ring: FormRing, h: LogForm, wedge_indices) -> ASCertificate:
    """Build the Artin-Schreier extension for h and certify that
    eta' = -gamma^p * dlog-wedge satisfies (C - 1)(eta') = h * dlog-wedge."""
    ext = ArtinSchreierExtension(ring, h)
    omega = dlog_wedge(ring, tuple(wedge_indices))
    target = h.wedge(omega)
    gamma_p = ext.power(ext.gamma(), ring.p)
    minus_gamma_p = ASForm(ext, 0, [c * (ring.p - 1) for c in gamma_p.coeffs])
    eta_prime = ext.multiply(minus_gamma_p, ext.embed(omega))
    minus_gamma = ext.multiply(
        ASForm(ext, 0, [c * (ring.p - 1) for c in ext.gamma().coeffs]),
        ext.embed(omega),
    )
    closed = ext.d(eta_prime).is_zero()
    # eta' must be exactly C^{-1}(-gamma * omega), which pins C(eta') = -gamma*omega
    preimage_ok = ext.inverse_cartier_form(minus_gamma) == eta_prime
    hits = (minus_gamma - eta_prime) == ext.embed(target)
    # module-finiteness: gamma^{p-1} * gamma^{p-1} reduces inside the rank-p basis
    _ = ext.power(ext.gamma(), 2 * ring.p - 2)
    return ASCertificate(
        extension=ext,
        target=target,
        eta_prime=eta_prime,
        closed=closed,
        is_inverse_cartier_preimage=preimage_ok,
        c_minus_one_hits_target=hits,
        module_rank=ext.module_rank(),
    )


def artin_schreier_solve(ring: FormRing, h: LogForm, exponents) -> LogForm | None:
    """Solve gamma^p - gamma = h with gamma supported on the given exponents
    (an F_p-linear problem, since x -> x^p is additive and F_p-linear)."""
    if h.degree != 0:
        raise ValueError("h must be a 0-form")
    p = ring.p
    exps = [tuple(int(x) for x in e) for e in exponents]
    rows = sorted({tuple(x * p for x in e) for e in exps} | set(exps) |
                  {a for (a, _g) in h.terms})
    rix = {a: k for k, a in enumerate(rows)}
    m = np.zeros((len(rows), len(exps)), dtype=np.int64)
    for c, e in enumerate(exps):
        m[rix[tuple(x * p for x in e)], c] += 1
        m[rix[e], c] -= 1
    b = np.zeros(len(rows), dtype=np.int64)
    for (a, _g), coeff in h.terms.items():
        b[rix[a]] = coeff
    x = FpMatrix(p, m).solve(b)
    if x is None:
        return None
    out = ring.zero(0)
    for c, e in enumerate(exps):
        if int(x[c]) % p:
            out = out + ring.monomial(e, int(x[c]))
    return out


@dataclass
class ObstructionReport:
    p: int
    bound: int
    base_solution_exists: bool
    certificate: ASCertificate
    control_solution: LogForm | None

    @property
    def ok(self) -> bool:
        return (
            not self.base_solution_exists
            and self.certificate.ok
            and self.control_solution is not None
        )


def etale_obstruction_demo(p: int, bound: int = 8) -> ObstructionReport:
    """gamma^p - gamma = 1/t has no Laurent solution supported on t^{-bound}..
    t^{bound}, but the rank-p extension supplies one; the control equation
    gamma^p - gamma = t^p - t is solvable in the base (gamma = t works)."""
    ring = FormRing(
        p,
        names=("t",),
        laurent=(0,),
        window=((-p * bound - 1, p * bound + 1),),
    )
    h = ring.monomial((-1,))
    exps = [(k,) for k in range(-bound, bound + 1)]
    base = artin_schreier_solve(ring, h, exps)
    cert = c_minus_one_surjectivity(ring, h, ())
    control_h = ring.monomial((p,)) - ring.monomial((1,))
    control = artin_schreier_solve(ring, control_h, exps)
    if control is not None:
        if not (frobenius(control) - control == control_h):
            raise AssertionError("control solution does not satisfy its equation")
    return ObstructionReport(
        p=p,
        bound=bound,
        base_solution_exists=base is not None,
        certificate=cert,
        control_solution=control,
    )
