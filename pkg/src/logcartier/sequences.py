"""Exact-sequence machinery on weight slices.

Everything here is a finite complex of F_p vector spaces: a SliceComplex holds
node dimensions and the matrices between them, and exactness is three rank
computations per node.  The builders cover the Euler sequence on P^n (in
homogeneous dlog coordinates), the three residue sequences for a coordinate
log divisor, the closed-forms residue sequence, the pullback sequence on an
exceptional divisor, the two-step filtration of a wedge power, and the
conormal sequence for a monomial center.

The homogeneous model of P^n used by this module and by the cech module: the
ambient ring is Laurent in X_0..X_n with every variable log, so the weight-w
degree-j slice has basis X^w dlog X_A over the j-subsets A.  Sections of
Omega^j(log D_S)(l) on the chart where the X_i (i in I) are invertible are
the X^w dlog X_A with sum(w) = l, w_i >= 0 off I, w_i >= 1 for i in A outside
S and I, intersected with the kernel of the Euler contraction
iota(dlog X_A) = sum_t (-1)^t dlog X_{A minus a_t}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .forms import FormRing, LogForm, WeightSlice, slice_map_matrix
from .gflinalg import FpMatrix


class SliceComplex:
    """A finite complex of based F_p spaces with explicit matrices.

    maps[k] goes from node k to node k + 1 and must be dims[k+1] x dims[k].
    Exactness at the end nodes means injectivity / surjectivity, so a
    three-node complex with all homology zero is a short exact sequence.
    """

    def __init__(self, p: int, labels, dims, maps, spaces=None):
        self.p = p
        self.labels = list(labels)
        self.dims = [int(d) for d in dims]
        self.maps = list(maps)
        self.spaces = spaces
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError("need exactly one map per consecutive node pair")
        for k, mt in enumerate(self.maps):
            if mt.cols != self.dims[k] or mt.rows != self.dims[k + 1]:
                raise ValueError(f"matrix {k} shape does not match node dims")

    def composition_zero(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if not (b @ a).is_zero():
                return False
        return True

    def homology_dims(self) -> list[int]:
        out = []
        for k, d in enumerate(self.dims):
            rk_out = self.maps[k].rank() if k < len(self.maps) else 0
            rk_in = self.maps[k - 1].rank() if k > 0 else 0
            out.append(d - rk_out - rk_in)
        return out

    def exactness_verdicts(self) -> list[bool]:
        return [h == 0 for h in self.homology_dims()]

    def is_exact(self) -> bool:
        return self.composition_zero() and all(self.exactness_verdicts())

    def __repr__(self) -> str:
        arrow = " -> ".join(f"{L}[{d}]" for L, d in zip(self.labels, self.dims))
        return f"<SliceComplex {arrow}>"


# -- transports between rings over the same variables -------------------------


def transport(form: LogForm, dst: FormRing) -> LogForm:
    """Reinterpret a form in a ring with the same variables but a possibly
    different log set.  dlog factors at variables that stop being log pick up
    the 1/T_i explicitly; dT factors at newly-log variables are rewritten to
    T_i dlog T_i by the target constructors.  Raises WindowOverflow when the
    result needs a pole the target does not allow."""
    src = form.ring
    if dst.names != src.names:
        raise ValueError("transport needs identical variable names")
    out = dst.zero(form.degree)
    for (a, gens), c in form.terms.items():
        a2 = list(a)
        parts = []
        for g in gens:
            if g in src.log and g not in dst.log:
                a2[g] -= 1
                parts.append(dst.dT(g))
            elif g in src.log:
                parts.append(dst.gen(g))
            else:
                parts.append(dst.dT(g))
        t = dst.monomial(tuple(a2), c)
        for q in parts:
            t = t.wedge(q)
        out = out + t
    return out


def divisor_lift(ring: FormRing, z: int, form: LogForm) -> LogForm:
    """Embed a form over ring.drop_var(z) back into ring, with T_z-exponent 0."""
    sub, imap = ring.drop_var(z)
    if form.ring != sub:
        raise ValueError("form is not over the ring with variable z dropped")
    inv = {new: old for old, new in imap.items()}
    out = {}
    for (a, gens), c in form.terms.items():
        na = [0] * ring.m
        for new, x in enumerate(a):
            na[inv[new]] = x
        out[(tuple(na), tuple(inv[g] for g in gens))] = c
    return LogForm(ring, form.degree, out)


def plain_ring(ring: FormRing) -> FormRing:
    """The same coefficient ring with an empty log set."""
    return FormRing(
        ring.field, names=ring.names, log=(), laurent=ring.laurent, window=ring.window
    )


def forget_log(ring: FormRing, z: int) -> FormRing:
    """The same ring with z removed from the log set (log along D - D_z only)."""
    return FormRing(
        ring.field,
        names=ring.names,
        log=ring.log - {z},
        laurent=ring.laurent,
        window=ring.window,
    )


# -- Euler contraction and the homogeneous projective model -------------------


def euler_contraction(form: LogForm, skip=frozenset()) -> LogForm:
    """iota(dlog X_{a_0} ^ ... ^ dlog X_{a_j}) = sum_t (-1)^t dlog X_{A-a_t};
    generators listed in `skip` pair to zero (used for the pullback class
    gamma, which the Euler field does not see)."""
    ring = form.ring
    acc: dict = {}
    for (a, gens), c in form.terms.items():
        for t, g in enumerate(gens):
            if g in skip:
                continue
            if g not in ring.log:
                raise ValueError("Euler contraction needs dlog generators")
            key = (a, gens[:t] + gens[t + 1 :])
            v = (acc.get(key, 0) + (-1) ** t * c) % ring.p
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return LogForm(ring, form.degree - 1, acc)


def projective_ring(p: int, n: int, box) -> FormRing:
    """Homogeneous model of P^n: Laurent ring in X_0..X_n, all variables log.
    `box` is the exponent window, one (lo, hi) pair per coordinate."""
    idx = tuple(range(n + 1))
    return FormRing(
        p,
        names=tuple(f"X{i}" for i in range(n + 1)),
        log=idx,
        laurent=idx,
        window=box,
    )


def weight_ring(p: int, n: int, w) -> FormRing:
    """Projective ring whose window is exactly big enough for weight w."""
    box = tuple((min(int(x), 0), max(int(x), 0)) for x in w)
    return FormRing(
        p,
        names=tuple(f"X{i}" for i in range(n + 1)),
        log=tuple(range(n + 1)),
        laurent=tuple(range(n + 1)),
        window=box,
    )


@dataclass
class SectionSpace:
    """A subspace of one ambient weight slice, with a deterministic basis.

    `allowed` are the ambient basis indices satisfying the chart/divisor
    constraints; `basis` columns (ambient coordinates) span the subspace after
    the contraction constraint is imposed.
    """

    ambient: WeightSlice
    allowed: tuple
    basis: FpMatrix

    @property
    def dim(self) -> int:
        return self.basis.cols

    def basis_forms(self) -> list[LogForm]:
        return [self.ambient.from_vector(self.basis.column(k)) for k in range(self.dim)]

    def coords_of_vector(self, v):
        x = self.basis.solve(v)
        if x is None:
            raise ValueError("vector is not a section of this space")
        return x

    def coords(self, form: LogForm):
        return self.coords_of_vector(self.ambient.to_vector(form))

    def contains(self, form: LogForm) -> bool:
        try:
            self.coords(form)
        except ValueError:
            return False
        return True


def log_section_space(ring, j, S, I, w, contract_skip=frozenset()) -> SectionSpace:
    """Sections of Omega^j(log D_S) twisted to multidegree w, on the chart
    where the X_i with i in I are invertible.  See the module docstring for
    the basis description."""
    S = frozenset(S)
    I = frozenset(I)
    w = tuple(int(x) for x in w)
    sl = ring.slice(j, w)
    if j < 0 or any(w[i] < 0 for i in range(ring.m) if i not in I):
        return SectionSpace(sl, (), FpMatrix.zeros(ring.p, sl.dim, 0))
    allowed = tuple(
        k
        for k, (_a, gens) in enumerate(sl.basis)
        if all(w[g] >= 1 for g in gens if g not in S and g not in I)
    )
    lower = ring.slice(j - 1, w)
    full = slice_map_matrix(sl, lower, lambda f: euler_contraction(f, contract_skip))
    sub = FpMatrix.from_columns(ring.p, [full.column(k) for k in allowed], lower.dim)
    cols = []
    for v in sub.kernel_basis():
        amb = np.zeros(sl.dim, dtype=np.int64)
        for t, k in enumerate(allowed):
            amb[k] = v[t]
        cols.append(amb)
    return SectionSpace(sl, allowed, FpMatrix.from_columns(ring.p, cols, sl.dim))


def euler_complex(p, n, j, l, w, inverted=None) -> SliceComplex:
    """Weight-w slice of 0 -> Omega^j -> Wedge^j(O(-1)^{n+1}) -> Omega^{j-1} -> 0
    on P^n, over the chart with the `inverted` coordinates invertible (default:
    the full torus).  The middle term in dlog coordinates is span{X^w dlog X_A}
    with the chart divisibility constraints but no contraction constraint; the
    right map is the Euler contraction."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    w = tuple(int(x) for x in w)
    if len(w) != n + 1 or sum(w) != l:
        raise ValueError("weight must have n+1 components summing to the twist")
    inverted = (
        frozenset(range(n + 1)) if inverted is None else frozenset(int(i) for i in inverted)
    )
    ring = weight_ring(p, n, w)
    left = log_section_space(ring, j, frozenset(), inverted, w)
    right = log_section_space(ring, j - 1, frozenset(), inverted, w)
    sj = left.ambient
    sjm = ring.slice(j - 1, w)
    ok_global = all(w[i] >= 0 for i in range(n + 1) if i not in inverted)
    mid_idx = (
        tuple(
            k
            for k, (_a, gens) in enumerate(sj.basis)
            if all(w[g] >= 1 for g in gens if g not in inverted)
        )
        if ok_global
        else ()
    )
    m0 = FpMatrix.from_columns(
        p,
        [
            np.array([left.basis.column(k)[i] for i in mid_idx], dtype=np.int64)
            for k in range(left.dim)
        ],
        len(mid_idx),
    )
    full = slice_map_matrix(sj, sjm, euler_contraction)
    m1 = FpMatrix.from_columns(
        p,
        [right.coords_of_vector(full.column(k)) for k in mid_idx],
        right.dim,
    )
    return SliceComplex(
        p,
        [f"Omega^{j}", f"Wedge^{j}(O(-1)^{n + 1})", f"Omega^{j - 1}"],
        [left.dim, len(mid_idx), right.dim],
        [m0, m1],
        spaces=[left, mid_idx, right],
    )


# -- residue sequences ---------------------------------------------------------


def _dropped_target(ring, z, j, w):
    """The weight-w graded piece of i_* Omega^j_{D_z}: nonzero only at w_z = 0."""
    dring, _ = ring.drop_var(z)
    wd = tuple(x for k, x in enumerate(w) if k != z)
    if w[z] != 0 or j < 0:
        return dring, None
    return dring, dring.slice(j, wd)


def residue_complex_all_divisors(ring: FormRing, w) -> SliceComplex:
    """0 -> Omega^1_w -> Omega^1(log D)_w -> (+)_{z in L} (O_{D_z})_w -> 0."""
    w = tuple(int(x) for x in w)
    plain = plain_ring(ring)
    s0 = plain.slice(1, w)
    s1 = ring.slice(1, w)
    m0 = slice_map_matrix(s0, s1, lambda f: transport(f, ring))
    divisors = sorted(ring.log)
    blocks = []
    for z in divisors:
        _dring, tgt = _dropped_target(ring, z, 0, w)
        blocks.append((z, tgt))
    rows = sum(t.dim for _z, t in blocks if t is not None)
    cols = []
    for k in range(s1.dim):
        f = s1.basis_form(k)
        segs = [np.zeros(0, dtype=np.int64)]
        for z, tgt in blocks:
            if tgt is None:
                continue
            segs.append(tgt.to_vector(f.residue(z)))
        cols.append(np.concatenate(segs))
    m1 = FpMatrix.from_columns(ring.p, cols, rows)
    return SliceComplex(
        ring.p,
        ["Omega^1", "Omega^1(log D)", "sum O_{D_z}"],
        [s0.dim, s1.dim, rows],
        [m0, m1],
    )


def residue_complex_drop(ring: FormRing, a: int, z: int, w) -> SliceComplex:
    """0 -> Omega^a(log(D - D_z))_w -> Omega^a(log D)_w -> Omega^{a-1}_{D_z}(log)_w -> 0."""
    if z not in ring.log:
        raise ValueError("z must be a log index")
    w = tuple(int(x) for x in w)
    sub = forget_log(ring, z)
    s0 = sub.slice(a, w)
    s1 = ring.slice(a, w)
    m0 = slice_map_matrix(s0, s1, lambda f: transport(f, ring))
    _dring, s2 = _dropped_target(ring, z, a - 1, w)
    if s2 is None:
        m1 = FpMatrix.zeros(ring.p, 0, s1.dim)
        dim2 = 0
    else:
        m1 = slice_map_matrix(s1, s2, lambda f: f.residue(z))
        dim2 = s2.dim
    return SliceComplex(
        ring.p,
        ["Omega^a(log D-D_z)", "Omega^a(log D)", "Omega^{a-1}_{D_z}(log)"],
        [s0.dim, s1.dim, dim2],
        [m0, m1],
    )


def residue_complex_twist(ring: FormRing, a: int, z: int, w) -> SliceComplex:
    """0 -> Omega^a(log D)(-D_z)_w -> Omega^a(log(D - D_z))_w -> Omega^a_{D_z}(log)_w -> 0.

    The twisted subsheaf is realized as T_z * Omega^a(log D) at weight w - e_z.
    """
    if z not in ring.log:
        raise ValueError("z must be a log index")
    w = tuple(int(x) for x in w)
    ez = tuple(1 if k == z else 0 for k in range(ring.m))
    wm = tuple(x - e for x, e in zip(w, ez))
    sub = forget_log(ring, z)
    s0 = ring.slice(a, wm)
    s1 = sub.slice(a, w)
    tz = ring.monomial(ez)
    m0 = slice_map_matrix(s0, s1, lambda f: transport(tz.wedge(f), sub))
    _dring, s2 = _dropped_target(ring, z, a, w)
    if s2 is None:
        m1 = FpMatrix.zeros(ring.p, 0, s1.dim)
        dim2 = 0
    else:
        m1 = slice_map_matrix(s1, s2, lambda f: f.restrict(z))
        dim2 = s2.dim
    return SliceComplex(
        ring.p,
        ["T_z*Omega^a(log D)", "Omega^a(log D-D_z)", "Omega^a_{D_z}(log)"],
        [s0.dim, s1.dim, dim2],
        [m0, m1],
    )


def residue_complexes(ring: FormRing, a: int, z: int):
    """All three residue sequences over every weight in the ring's box.

    The all-divisors sequence only exists for a = 1; its list is empty
    otherwise.  Returns {"all_divisors": [...], "drop": [...], "twist": [...]}.
    """
    weights = list(ring.iter_weights(a))
    out = {"all_divisors": [], "drop": [], "twist": []}
    for w in weights:
        if a == 1:
            out["all_divisors"].append(residue_complex_all_divisors(ring, w))
        out["drop"].append(residue_complex_drop(ring, a, z, w))
        out["twist"].append(residue_complex_twist(ring, a, z, w))
    return out


# -- closed-forms variant ------------------------------------------------------


def closed_slice_basis(ring: FormRing, j: int, w):
    """(slice, matrix whose columns are a basis of the closed forms)."""
    s = ring.slice(j, w)
    up = ring.slice(j + 1, w)
    dmat = slice_map_matrix(s, up, lambda f: f.d())
    return s, FpMatrix.from_columns(ring.p, dmat.kernel_basis(), s.dim)


def induced_on_subspaces(mat: FpMatrix, src_basis: FpMatrix, dst_basis: FpMatrix) -> FpMatrix:
    """The matrix of `mat` restricted to given source/target subspace bases;
    raises if the image leaves the target subspace."""
    cols = []
    for k in range(src_basis.cols):
        y = mat.apply(src_basis.column(k))
        x = dst_basis.solve(y)
        if x is None:
            raise AssertionError("map does not respect the subspaces")
        cols.append(x)
    return FpMatrix.from_columns(mat.p, cols, dst_basis.cols)


def closed_residue_complex(ring: FormRing, a: int, z: int, w) -> SliceComplex:
    """0 -> ZOmega^a(log(D - D_z))_w -> ZOmega^a(log D)_w -> ZOmega^{a-1}_{D_z}_w -> 0."""
    if z not in ring.log:
        raise ValueError("z must be a log index")
    w = tuple(int(x) for x in w)
    sub = forget_log(ring, z)
    s0, z0 = closed_slice_basis(sub, a, w)
    s1, z1 = closed_slice_basis(ring, a, w)
    m0_full = slice_map_matrix(s0, s1, lambda f: transport(f, ring))
    m0 = induced_on_subspaces(m0_full, z0, z1)
    dring, s2 = _dropped_target(ring, z, a - 1, w)
    if s2 is None:
        m1 = FpMatrix.zeros(ring.p, 0, z1.cols)
        dim2 = 0
        z2 = None
    else:
        wd = tuple(x for k, x in enumerate(w) if k != z)
        s2, z2 = closed_slice_basis(dring, a - 1, wd)
        m1_full = slice_map_matrix(s1, s2, lambda f: f.residue(z))
        m1 = induced_on_subspaces(m1_full, z1, z2)
        dim2 = z2.cols
    return SliceComplex(
        ring.p,
        ["ZOmega^a(log D-D_z)", "ZOmega^a(log D)", "ZOmega^{a-1}_{D_z}"],
        [z0.cols, z1.cols, dim2],
        [m0, m1],
        spaces=[(s0, z0), (s1, z1), (s2, z2)],
    )


def closed_preimage(ring: FormRing, z: int, zeta: LogForm) -> LogForm:
    """For closed zeta on D_z, the closed form dlog T_z ^ lift(zeta) has
    residue zeta (the constructive half of the closed residue sequence)."""
    lifted = divisor_lift(ring, z, zeta)
    return ring.gen(z).wedge(lifted)


# -- pullback sequence on the exceptional divisor ------------------------------


def pullback_ses(p: int, c: int, n: int, w, chart: int = 0) -> SliceComplex:
    """Weight-w slice, on one chart of E = P^{c-1} with log divisor V(X_0), of

        0 -> Omega^n(log) -> Omega^{n,pullback-log} -> Omega^{n-1}(log) -> 0.

    The pullback log structure adds one weight-0 generator gamma (the class of
    dlog of the ideal generator; its differential vanishes on E), so the middle
    sections are eta' + eta ^ gamma and the right map extracts eta, here via the
    residue at the gamma variable (a sign (-1)^(n-1) against the left-wedge
    convention, harmless for exactness)."""
    if c < 2:
        raise ValueError("need c >= 2")
    w = tuple(int(x) for x in w)
    if len(w) != c:
        raise ValueError("weight needs c components")
    npro = c - 1
    base = weight_ring(p, npro, w)
    gi = c  # index of the gamma variable in the extended ring
    ext = FormRing(
        p,
        names=base.names + ("Gam",),
        log=tuple(range(c + 1)),
        laurent=tuple(range(c)),
        window=base.window + ((0, 0),),
    )
    wext = w + (0,)
    left = log_section_space(base, n, {0}, {chart}, w)
    right = log_section_space(base, n - 1, {0}, {chart}, w)
    mid = log_section_space(ext, n, {0, gi}, {chart}, wext, contract_skip={gi})

    def embed(form: LogForm) -> LogForm:
        out = {}
        for (a, gens), cf in form.terms.items():
            out[(a + (0,), gens)] = cf
        return LogForm(ext, form.degree, out)

    m0 = FpMatrix.from_columns(
        p, [mid.coords(embed(f)) for f in left.basis_forms()], mid.dim
    )
    m1 = FpMatrix.from_columns(
        p, [right.coords(f.residue(gi)) for f in mid.basis_forms()], right.dim
    )
    return SliceComplex(
        p,
        [f"Omega^{n}(log)", f"Omega^{n},pullback-log", f"Omega^{n - 1}(log)"],
        [left.dim, mid.dim, right.dim],
        [m0, m1],
        spaces=[left, mid, right],
    )


# -- two-step filtration of a wedge power --------------------------------------


@dataclass(frozen=True)
class FiltrationSpec:
    """V = U (+) W free of ranks u, w; k-th wedge power filtered by the number
    of W-factors."""

    u: int
    w: int
    k: int

    @property
    def v(self) -> int:
        return self.u + self.w

    def __post_init__(self):
        if self.u < 0 or self.w < 0 or self.k < 0:
            raise ValueError("ranks and wedge power must be nonnegative")


@dataclass
class FiltrationReport:
    spec: FiltrationSpec
    graded_dims: list
    expected_dims: list
    total_ok: bool
    step_complexes: list
    phi_permutation_ok: bool
    corollary_u: SliceComplex | None
    corollary_w: SliceComplex | None

    @property
    def ok(self) -> bool:
        steps = all(cx.is_exact() for cx in self.step_complexes)
        cors = all(
            cx.is_exact() for cx in (self.corollary_u, self.corollary_w) if cx is not None
        )
        return (
            self.graded_dims == self.expected_dims
            and self.total_ok
            and self.phi_permutation_ok
            and steps
            and cors
        )


def _is_signed_permutation_onto(mat: FpMatrix, rank_needed: int) -> bool:
    """Every nonzero column is +-(a standard basis vector), targets distinct,
    and the nonzero columns number rank_needed."""
    seen = set()
    nonzero = 0
    for k in range(mat.cols):
        col = mat.column(k)
        nz = [i for i, x in enumerate(col) if x % mat.p]
        if not nz:
            continue
        if len(nz) != 1 or col[nz[0]] % mat.p not in (1, mat.p - 1):
            return False
        if nz[0] in seen:
            return False
        seen.add(nz[0])
        nonzero += 1
    return nonzero == rank_needed


def filtration(spec: FiltrationSpec, p: int = 2) -> FiltrationReport:
    u, wr, k, v = spec.u, spec.w, spec.k, spec.v
    basis = list(combinations(range(v), k))
    bindex = {A: t for t, A in enumerate(basis)}

    def wcount(A) -> int:
        return sum(1 for i in A if i >= u)

    graded, expected = [], []
    step_complexes = []
    perm_ok = True
    for i in range(k + 1):
        members = [A for A in basis if wcount(A) == i]
        graded.append(len(members))
        expected.append(comb(u, k - i) * comb(wr, i))
        # 0 -> F_{i-1} -> F_i -> Wedge^{k-i}U (x) Wedge^iW -> 0
        f_prev = [A for A in basis if wcount(A) <= i - 1]
        f_cur = f_prev + members
        tensor = [
            (a_u, b_w)
            for a_u in combinations(range(u), k - i)
            for b_w in combinations(range(u, v), i)
        ]
        tindex = {t: s for s, t in enumerate(tensor)}
        cur_index = {A: s for s, A in enumerate(f_cur)}
        inc_np = np.zeros((len(f_cur), len(f_prev)), dtype=np.int64)
        for s, A in enumerate(f_prev):
            inc_np[cur_index[A], s] = 1
        inc = FpMatrix(p, inc_np)
        phi_np = np.zeros((len(tensor), len(f_cur)), dtype=np.int64)
        for s, A in enumerate(f_cur):
            if wcount(A) == i:
                a_u = tuple(x for x in A if x < u)
                b_w = tuple(x for x in A if x >= u)
                phi_np[tindex[(a_u, b_w)], s] = 1
        phi = FpMatrix(p, phi_np)
        step_complexes.append(
            SliceComplex(
                p,
                [f"F_{i - 1}", f"F_{i}", f"gr_{i}"],
                [len(f_prev), len(f_cur), len(tensor)],
                [inc, phi],
            )
        )
        if not _is_signed_permutation_onto(phi, len(members)):
            perm_ok = False

    total_ok = sum(graded) == comb(v, k) and sum(expected) == comb(v, k)

    cor_u = None
    if u == 1:
        # 0 -> U (x) Wedge^{k-1}W -> Wedge^k V -> Wedge^k W -> 0
        left = [A for A in basis if 0 in A]
        right = [A for A in basis if 0 not in A]
        m0 = np.zeros((len(basis), len(left)), dtype=np.int64)
        for s, A in enumerate(left):
            m0[bindex[A], s] = 1
        m1 = np.zeros((len(right), len(basis)), dtype=np.int64)
        ridx = {A: s for s, A in enumerate(right)}
        for A in right:
            m1[ridx[A], bindex[A]] = 1
        cor_u = SliceComplex(
            p,
            ["U(x)Wedge^{k-1}W", "Wedge^k V", "Wedge^k W"],
            [len(left), len(basis), len(right)],
            [FpMatrix(p, m0), FpMatrix(p, m1)],
        )
    cor_w = None
    if wr == 1:
        # 0 -> Wedge^k U -> Wedge^k V -> Wedge^{k-1}U (x) W -> 0
        last = v - 1
        left = [A for A in basis if last not in A]
        right = [A for A in basis if last in A]
        m0 = np.zeros((len(basis), len(left)), dtype=np.int64)
        for s, A in enumerate(left):
            m0[bindex[A], s] = 1
        m1 = np.zeros((len(right), len(basis)), dtype=np.int64)
        ridx = {A: s for s, A in enumerate(right)}
        for A in right:
            m1[ridx[A], bindex[A]] = 1
        cor_w = SliceComplex(
            p,
            ["Wedge^k U", "Wedge^k V", "Wedge^{k-1}U(x)W"],
            [len(left), len(basis), len(right)],
            [FpMatrix(p, m0), FpMatrix(p, m1)],
        )

    return FiltrationReport(
        spec=spec,
        graded_dims=graded,
        expected_dims=expected,
        total_ok=total_ok,
        step_complexes=step_complexes,
        phi_permutation_ok=perm_ok,
        corollary_u=cor_u,
        corollary_w=cor_w,
    )


# -- conormal sequence for a monomial center -----------------------------------


@dataclass
class ConormalReport:
    ring: FormRing
    z: int
    conormal_image_zero: bool
    dims_match: bool
    checked_weights: int

    @property
    def ok(self) -> bool:
        return self.conormal_image_zero and self.dims_match and self.checked_weights > 0


def fundamental_ses_check(ring: FormRing, z: int, degrees=None) -> ConormalReport:
    """For the immersion V(T_z) with T_z a log variable: d(f T_z) restricts to
    zero on V(T_z) (so the conormal map I/I^2 -> i^*Omega^log is trivial), and
    i^*Omega^j,log has the same slice dimensions as the pullback-log module
    Omega^j_Z (+) Omega^{j-1}_Z ^ gamma."""
    if z not in ring.log:
        raise ValueError("the center must be cut out by a log variable")
    conormal_zero = True
    for b in ring.iter_weights(0):
        be = tuple(x + (1 if k == z else 0) for k, x in enumerate(b))
        if not ring.in_window(be):
            continue
        img = ring.monomial(be).d().restrict(z)
        if not img.is_zero():
            conormal_zero = False
    dring, _ = ring.drop_var(z)
    degrees = range(0, ring.m + 1) if degrees is None else degrees
    dims_match = True
    checked = 0
    for j in degrees:
        for w in ring.iter_weights(j):
            if w[z] != 0:
                continue
            wd = tuple(x for k, x in enumerate(w) if k != z)
            lhs = ring.slice(j, w).dim
            rhs = dring.slice(j, wd).dim + dring.slice(j - 1, wd).dim
            checked += 1
            if lhs != rhs:
                dims_match = False
    return ConormalReport(
        ring=ring,
        z=z,
        conormal_image_zero=conormal_zero,
        dims_match=dims_match,
        checked_weights=checked,
    )
