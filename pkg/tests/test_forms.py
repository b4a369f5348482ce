"""Graded log differential forms: ring algebra, weights, d, residue, slices."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logcartier.forms import (
    FormRing,
    LogPoleError,
    WindowOverflow,
    format_form,
    parse_form,
)


def ring2(p=3, log=(0, 1), laurent=(), window=((0, 4), (0, 4))):
    return FormRing(p, names=("T1", "T2"), log=log, laurent=laurent, window=window)


def test_generator_weights():
    r = ring2()
    assert r.gen_weight(0) == (0, 0)  # dlog carries no weight
    plain = FormRing(3, names=("T1", "T2"), log=(), window=((0, 4), (0, 4)))
    assert plain.gen_weight(0) == (1, 0)  # dT does


def test_monomial_weight_and_coefficient():
    r = ring2()
    f = r.monomial((2, 1), 2)
    assert f.weight() == (2, 1)
    assert f.coefficient((2, 1), ()) == 2
    assert f.coefficient((0, 0), ()) == 0


def test_wedge_anticommutes_on_generators():
    r = ring2()
    a, b = r.gen(0), r.gen(1)
    assert a.wedge(b) == -(b.wedge(a))
    assert a.wedge(a).is_zero()


def test_wedge_on_zero_forms_is_multiplication():
    r = ring2()
    f = r.monomial((1, 0)) + r.monomial((0, 1))
    g = r.monomial((1, 0))
    fg = f.wedge(g)
    assert fg.coefficient((2, 0), ()) == 1
    assert fg.coefficient((1, 1), ()) == 1


def test_d_squared_zero():
    r = ring2()
    f = r.monomial((2, 1)) + r.monomial((1, 2), 2)
    assert f.d().d().is_zero()
    g = f.wedge(r.gen(0))
    assert g.d().d().is_zero()


def test_d_leibniz():
    r = ring2()
    f = r.monomial((1, 0))
    g = r.monomial((0, 2), 2)
    lhs = f.wedge(g).d()
    rhs = f.d().wedge(g) + f.wedge(g.d())
    assert lhs == rhs


def test_dlog_derivative():
    # d(T1^a) = a * T1^a dlogT1 on a log ring
    r = ring2()
    f = r.monomial((2, 0))
    df = f.d()
    assert df.coefficient((2, 0), (0,)) == 2


def test_dT_derivative_on_plain_ring():
    # d(T1^2) = 2 T1 dT1 when T1 is not a log variable
    r = FormRing(5, names=("T1", "T2"), log=(), window=((0, 4), (0, 4)))
    df = r.monomial((2, 0)).d()
    assert df.coefficient((1, 0), (0,)) == 2


def test_char_p_kills_p_th_powers():
    r = ring2(p=3)
    assert r.monomial((3, 0)).d().is_zero()


def test_homogeneous_parts_split():
    r = ring2()
    f = r.monomial((1, 0)) + r.monomial((0, 2), 2)
    parts = f.homogeneous_parts()
    assert set(parts) == {(1, 0), (0, 2)}
    assert sum(parts.values(), r.zero(0)) == f


def test_window_overflow_is_loud():
    r = ring2(window=((0, 2), (0, 2)))
    f = r.monomial((2, 0))
    with pytest.raises(WindowOverflow):
        f.wedge(f)
    with pytest.raises(WindowOverflow):
        r.monomial((3, 0))


def test_laurent_exponents_allowed_in_window():
    r = ring2(laurent=(0,), window=((-2, 2), (0, 2)))
    f = r.monomial((-2, 1))
    assert f.weight() == (-2, 1)
    assert not f.is_zero()


def test_residue_of_dlog_is_one():
    r = ring2()
    res = r.gen(0).residue(0)
    assert res == res.ring.one()


def test_residue_drops_the_variable():
    r = ring2()
    # dlogT1 sits leftmost in T2 dlogT1 ^ dlogT2, so extraction costs no sign
    form = r.monomial((0, 1)).wedge(r.gen(0)).wedge(r.gen(1))
    res = form.residue(0)
    dr = res.ring
    assert dr.m == 1
    assert res.coefficient((1,), (0,)) == 1
    # swapping the wedge order flips the sign
    swapped = r.monomial((0, 1)).wedge(r.gen(1)).wedge(r.gen(0))
    assert swapped.residue(0) == -res


def test_residue_requires_log_index():
    plain = FormRing(3, names=("T1", "T2"), log=(1,), window=((0, 4), (0, 4)))
    with pytest.raises(ValueError):
        plain.gen(0).residue(0)


def test_residue_kills_no_pole_terms():
    r = ring2()
    assert r.monomial((1, 0)).wedge(r.gen(1)).residue(0).is_zero()


def test_restrict_sets_variable_to_zero():
    r = FormRing(3, names=("T1", "T2"), log=(1,), window=((0, 4), (0, 4)))
    f = r.monomial((0, 1)) + r.monomial((1, 1))
    g = f.restrict(0)
    assert g.coefficient((1,), ()) == 1
    assert g.weights() == [(1,)]


def test_restrict_refuses_log_pole():
    r = ring2()
    with pytest.raises(LogPoleError):
        r.gen(0).restrict(0)


def test_slice_dims_count_monomials():
    r = ring2()
    s = r.slice(1, (1, 1))
    # T1 T2 dlogT1 and T1 T2 dlogT2
    assert s.dim == 2
    plain = FormRing(3, names=("T1", "T2"), log=(), window=((0, 4), (0, 4)))
    # weight (1,1) in degree 1: T1 dT2 and T2 dT1
    assert plain.slice(1, (1, 1)).dim == 2


def test_slice_vector_roundtrip():
    r = ring2()
    s = r.slice(1, (2, 0))
    for k in range(s.dim):
        f = s.basis_form(k)
        v = s.to_vector(f)
        assert s.from_vector(v) == f


def test_slice_rejects_foreign_form():
    r = ring2()
    s = r.slice(1, (2, 0))
    with pytest.raises(ValueError):
        s.to_vector(r.monomial((1, 1)).wedge(r.gen(0)))


def test_iter_weights_covers_slice_support():
    r = ring2(window=((0, 2), (0, 2)))
    seen = set(r.iter_weights(1))
    for w in seen:
        assert len(w) == 2
    assert (0, 0) in seen and (2, 2) in seen


def test_drop_var_relabels():
    r = ring2()
    dr, imap = r.drop_var(0)
    assert dr.m == 1
    assert dr.names == ("T2",)
    assert imap == {1: 0}


def test_format_parse_roundtrip():
    r = ring2()
    forms = [
        r.zero(1),
        r.gen(0),
        r.monomial((2, 1), 2).wedge(r.gen(0)).wedge(r.gen(1)),
        r.monomial((1, 0)) + r.monomial((0, 1), 2),
    ]
    for f in forms:
        assert parse_form(r, format_form(f)) == f


def test_parse_accepts_minus():
    r = ring2()
    f = parse_form(r, "T1 - T2")
    assert f.coefficient((1, 0), ()) == 1
    assert f.coefficient((0, 1), ()) == r.p - 1


def test_parse_mixed_generators():
    r = FormRing(3, names=("T1", "T2"), log=(0,), window=((0, 4), (0, 4)))
    f = parse_form(r, "2*T1^2*T2 dlogT1^dT2")
    assert f.degree == 2
    assert f.coefficient((2, 1), (0, 1)) == 2


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_wedge_associative_property(p, data):
    r = FormRing(p, names=("T1", "T2", "T3"), log=(0, 2), window=((0, 6),) * 3)

    def rand_form(degree):
        f = r.zero(degree)
        for _ in range(2):
            a = tuple(data.draw(st.integers(0, 1)) for _ in range(3))
            gens = tuple(sorted(data.draw(st.sets(st.integers(0, 2), min_size=degree, max_size=degree))))
            c = data.draw(st.integers(0, p - 1))
            g = r.monomial(a, c)
            for i in gens:
                g = g.wedge(r.gen(i))
            f = f + g
        return f

    a, b, c = rand_form(0), rand_form(1), rand_form(1)
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))
    # graded commutativity in degree (1,1)
    assert b.wedge(c) == -(c.wedge(b))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_d_is_linear_property(p, data):
    r = FormRing(p, names=("T1", "T2"), log=(0,), window=((0, 5), (0, 5)))
    terms = []
    for _ in range(3):
        a = (data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2)))
        terms.append(r.monomial(a, data.draw(st.integers(0, p - 1))))
    f, g = terms[0] + terms[1], terms[2]
    assert (f + g).d() == f.d() + g.d()
    assert (f - g).d() == f.d() - g.d()
