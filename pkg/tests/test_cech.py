"""Cech cohomology engine vs two independent oracles.

The twisted structure sheaf is recomputed here from scratch (plain monomial
dictionaries, textbook alternating differential) and the twisted j-forms are
checked against the classical closed-form dimensions, which hold over any
field for projective space.  Blowup charts are pinned by the derivation
identity du = d(chart monomial) rather than by re-deriving the atlas.
"""

from itertools import combinations, product
from math import comb

import numpy as np
import pytest

from logcartier.cech import (
    BlowupSpace,
    CohomologyReport,
    ProjectiveSpace,
    ResourceLimit,
    SheafSpec,
    blowup_charts,
    blowup_cohomology,
    blowup_ring,
    blowup_section_space,
    cech_cohomology,
    connecting_map_check,
    formal_functions_check,
    generator_check,
)
from logcartier.gflinalg import FpMatrix

# -- specs -----------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        ProjectiveSpace(-1)
    with pytest.raises(ValueError):
        BlowupSpace(m=2, c=3)
    with pytest.raises(ValueError):
        BlowupSpace(m=3, c=1)
    with pytest.raises(ValueError):
        SheafSpec(3, ProjectiveSpace(2), 1, S=frozenset({3}))
    with pytest.raises(ValueError):
        SheafSpec(3, BlowupSpace(2, 2), 1, l=1)
    with pytest.raises(ValueError):
        SheafSpec(3, BlowupSpace(2, 2), 1, S=frozenset({0}))


def test_spec_labels():
    s = SheafSpec(3, ProjectiveSpace(2), 1, S=frozenset({0, 2}), l=-1)
    assert s.label() == "P2 Omega^1 log[0, 2] twist -1"
    assert SheafSpec(2, BlowupSpace(3, 2), 1).label() == "Bl(m=3,c=2) Omega^1"


# -- oracle 1: the structure sheaf from scratch ------------------------------


def _oracle_twist_dims(p, n, l):
    """Cohomology of the degree-l twist on P^n, recomputed on raw monomial
    dictionaries over the coordinate cover.  Each monomial's subcomplex is
    decided by its negative support alone, so any box containing the
    all-nonnegative and all-negative solutions of sum(w) = l is exact."""
    R = abs(l) + n + 2
    verts = range(n + 1)
    exps = [w for w in product(range(-R, R + 1), repeat=n + 1) if sum(w) == l]
    levels = [list(combinations(verts, k + 1)) for k in range(n + 1)]
    bases = {}
    for lev in levels:
        for I in lev:
            mono = sorted(w for w in exps if all(w[i] >= 0 for i in verts if i not in I))
            bases[I] = {w: k for k, w in enumerate(mono)}
    dims = [sum(len(bases[I]) for I in lev) for lev in levels]
    offs = []
    for lev in levels:
        off, table = 0, {}
        for I in lev:
            table[I] = off
            off += len(bases[I])
        offs.append(table)
    deltas = []
    for k in range(n):
        arr = np.zeros((dims[k + 1], dims[k]), dtype=np.int64)
        for J in levels[k + 1]:
            for t, g in enumerate(J):
                I = tuple(x for x in J if x != g)
                for w, c in bases[I].items():
                    arr[offs[k + 1][J] + bases[J][w], offs[k][I] + c] += (-1) ** t
        deltas.append(FpMatrix(p, arr))
    out = []
    for k in range(n + 1):
        r_in = deltas[k - 1].rank() if k > 0 else 0
        r_out = deltas[k].rank() if k < n else 0
        out.append(dims[k] - r_in - r_out)
    return out


@pytest.mark.parametrize("p", [2, 5])
@pytest.mark.parametrize("n", [1, 2])
def test_twist_matches_independent_monomial_engine(p, n):
    for l in range(-4, 4):
        spec = SheafSpec(p, ProjectiveSpace(n), 0, l=l)
        assert cech_cohomology(spec).dims == _oracle_twist_dims(p, n, l)


# -- oracle 2: closed-form dimensions for twisted j-forms --------------------


def _closed_form_h(n, i, j, l):
    """h^i(P^n, Omega^j(l)): concentrated in degree 0 (l > j), degree j
    (l = 0), or degree n (l < j - n), with binomial-product dimensions."""
    if i == 0 and l > j:
        return comb(l + n - j, l) * comb(l - 1, j)
    if i == j and l == 0:
        return 1
    if i == n and l < j - n:
        return comb(-l + j, -l) * comb(-l - 1, n - j)
    return 0


@pytest.mark.parametrize("p", [2, 3])
def test_forms_match_closed_form_dimensions(p):
    for n in (1, 2):
        for j in range(n + 1):
            for l in range(-3, 4):
                spec = SheafSpec(p, ProjectiveSpace(n), j, l=l)
                want = [_closed_form_h(n, i, j, l) for i in range(n + 1)]
                assert cech_cohomology(spec).dims == want, (n, j, l)


def test_forms_closed_form_spot_p3():
    spec = SheafSpec(2, ProjectiveSpace(3), 2, l=0)
    assert cech_cohomology(spec).dims == [0, 0, 1, 0]
    spec = SheafSpec(3, ProjectiveSpace(3), 1, l=2)
    # h^0 = C(2+3-1, 2) * C(1, 1) = 6
    assert cech_cohomology(spec).dims == [6, 0, 0, 0]


# -- log sheaves: symmetry and additivity ------------------------------------


def test_log_dims_depend_only_on_arrangement_size():
    for l in (0, 1):
        a = cech_cohomology(SheafSpec(3, ProjectiveSpace(2), 1, S=frozenset({0}), l=l))
        b = cech_cohomology(SheafSpec(3, ProjectiveSpace(2), 1, S=frozenset({2}), l=l))
        assert a.dims == b.dims


def _chi(dims):
    return sum((-1) ** i * d for i, d in enumerate(dims))


@pytest.mark.parametrize("j", [1, 2])
def test_residue_additivity_of_euler_characteristics(j):
    # adding the hyperplane X_0 to the arrangement adds the characteristic
    # of (j-1)-forms on that hyperplane, by the residue sequence
    p = 3
    for base in (frozenset(), frozenset({1})):
        for l in (-1, 0, 1, 2):
            mid = cech_cohomology(SheafSpec(p, ProjectiveSpace(2), j, S=base | {0}, l=l))
            sub = cech_cohomology(SheafSpec(p, ProjectiveSpace(2), j, S=base, l=l))
            quo = cech_cohomology(
                SheafSpec(p, ProjectiveSpace(1), j - 1, S=frozenset(range(len(base))), l=l)
            )
            assert _chi(mid.dims) == _chi(sub.dims) + _chi(quo.dims), (base, l)


def test_top_log_twist_is_a_line_bundle_twist():
    # on P^n, top forms with one log pole carry the same cohomology as the
    # structure sheaf twisted down by n
    for n in (1, 2):
        for l in (-1, 0, 1, 2):
            logd = cech_cohomology(SheafSpec(5, ProjectiveSpace(n), n, S=frozenset({0}), l=l))
            line = cech_cohomology(SheafSpec(5, ProjectiveSpace(n), 0, l=l - n))
            assert logd.dims == line.dims


# -- report plumbing ----------------------------------------------------------


def test_report_per_weight_sums_to_totals():
    rep = cech_cohomology(SheafSpec(2, ProjectiveSpace(2), 1))
    assert dict(rep.per_weight) == {(0, 0, 0): [0, 1, 0]}
    totals = [0] * 3
    for d in rep.per_weight.values():
        for i, x in enumerate(d):
            totals[i] += x
    assert totals == rep.dims
    assert rep.stabilized


def test_report_json_shape():
    rep = cech_cohomology(SheafSpec(3, ProjectiveSpace(1), 0, l=1))
    doc = rep.to_json_dict()
    assert doc["spec"]["space"] == {"kind": "projective", "n": 1}
    assert doc["spec"]["p"] == 3 and doc["spec"]["l"] == 1
    assert doc["dims"] == [2, 0]
    assert doc["stabilized"] is True
    ws = [tuple(e["w"]) for e in doc["per_weight"]]
    assert ws == sorted(ws)
    blow = blowup_cohomology(2, 2, 0, 2)
    bdoc = blow.to_json_dict()
    assert bdoc["spec"]["space"] == {"kind": "blowup", "m": 2, "c": 2}
    assert bdoc["dims"][0] is None


def test_resource_limit_is_loud():
    spec = SheafSpec(2, ProjectiveSpace(2), 0, l=9)
    with pytest.raises(ResourceLimit):
        cech_cohomology(spec, box_radius=1, max_radius=1)
    with pytest.raises(ResourceLimit):
        cech_cohomology(spec, box_radius=8, max_radius=4)


# -- explicit generators and the connecting map -------------------------------


@pytest.mark.parametrize("p", [2, 5])
def test_alternating_generator_spans(p):
    for n in (1, 2, 3):
        for j in range(n + 1):
            rep = generator_check(p, n, j)
            assert rep.spans, (n, j)
            assert rep.h_dim == 1


def test_generator_check_rejects_bad_degree():
    with pytest.raises(ValueError):
        generator_check(3, 2, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_connecting_map_is_an_isomorphism(p):
    for n in (1, 2, 3):
        rep = connecting_map_check(p, n)
        assert rep.is_isomorphism, n
        assert rep.image_class_scalar == 1
        assert rep.lift_residue_matches


def test_connecting_map_needs_a_divisor():
    with pytest.raises(ValueError):
        connecting_map_check(3, 0)


# -- blowup charts -------------------------------------------------------------


def test_atlas_validation_and_strict_transform():
    with pytest.raises(ValueError):
        blowup_charts(3, 1)
    with pytest.raises(ValueError):
        blowup_charts(2, 3)
    atlas = blowup_charts(3, 2)
    assert len(atlas.charts) == 2
    assert not atlas.strict_transform_on_chart(0)
    assert atlas.strict_transform_on_chart(1)


def test_chart_exponents_invert_weights():
    for c in (2, 3):
        atlas = blowup_charts(3, c)
        for ch in atlas.charts:
            for b in product(range(-2, 3), repeat=3):
                w = [0, 0, 0]
                for i, e in enumerate(b):
                    w = [a + e * v for a, v in zip(w, ch.var_weight(i))]
                assert ch.exponents_from_weight(tuple(w)) == b


def test_chart_generators_are_derivatives_of_chart_monomials():
    # du_i = d(T-monomial of u_i); log generators are the dlog of the same
    ring = blowup_ring(3, 3, 6)
    for c in (2, 3):
        for ch in blowup_charts(3, c).charts:
            for i in range(3):
                vw = ch.var_weight(i)
                mono = ring.monomial(vw)
                if i in ch.log:
                    want = ring.monomial(tuple(-x for x in vw)).wedge(mono.d())
                else:
                    want = mono.d()
                assert ch.gen_form(ring, i) == want, (c, ch.q, i)


def test_chart_log_sets():
    atlas = blowup_charts(2, 2)
    assert atlas.charts[0].log == frozenset({0})
    assert atlas.charts[1].log == frozenset({0, 1})


def test_blowup_sections_by_hand():
    # chart 0 of the plane blowup: T_1 = u_1, T_2 = u_1 u_2
    ring = blowup_ring(3, 2, 5)
    atlas = blowup_charts(2, 2)
    assert blowup_section_space(ring, atlas, 0, (0,), (1, 0)).dim == 1
    assert blowup_section_space(ring, atlas, 0, (0,), (-1, 1)).dim == 1  # u_2
    assert blowup_section_space(ring, atlas, 0, (0,), (1, -1)).dim == 0
    assert blowup_section_space(ring, atlas, 0, (0, 1), (1, -1)).dim == 1


@pytest.mark.parametrize("p", [2, 3])
def test_blowup_higher_cohomology_vanishes_small(p):
    for j in (0, 1, 2):
        rep = blowup_cohomology(2, 2, j, p)
        assert rep.dims[0] is None
        assert all(d == 0 for d in rep.dims[1:]), (j, rep.dims)
        assert rep.stabilized
    rep = blowup_cohomology(3, 2, 1, p)
    assert rep.dims[0] is None and all(d == 0 for d in rep.dims[1:])


def test_formal_functions_small():
    rep = formal_functions_check(2, 1, 2, 2)
    assert rep.ok
    rep3 = formal_functions_check(3, 1, 2, 3)
    assert rep3.ok
