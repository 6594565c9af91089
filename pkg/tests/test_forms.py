import itertools

import pytest
from hypothesis import given
import hypothesis.strategies as st

from polarkit import forms, gf
from polarkit.forms import FormKind, Subspace

SPACES = [("W", 4, 3), ("W", 6, 2), ("Q", 5, 3), ("Q+", 4, 2), ("Q+", 6, 3),
          ("Q-", 4, 3), ("Q-", 6, 2), ("H", 4, 4), ("H", 3, 9)]


@st.composite
def form_and_vectors(draw, n=2):
    kind, d, q = draw(st.sampled_from(SPACES))
    form = forms.standard_form(kind, d, gf.field_of_order(q))
    vs = [tuple(draw(st.integers(0, q - 1)) for _ in range(d)) for _ in range(n)]
    return (form, *vs)


@given(form_and_vectors(n=2))
def test_polarization_identity(fuv):
    """Q(u+v) - Q(u) - Q(v) = B(u, v) for the quadratic kinds; for the others
    evaluate_pair *is* the form."""
    form, u, v = fuv
    F = form.field
    w = tuple(F.add(a, b) for a, b in zip(u, v))
    lhs = F.sub(F.sub(form.evaluate(w), form.evaluate(u)), form.evaluate(v))
    if form.kind.is_quadratic:
        assert lhs == form.evaluate_pair(u, v)
    elif form.kind is FormKind.SYMPLECTIC:
        assert form.evaluate_pair(u, u) == 0


@given(form_and_vectors(n=2))
def test_pair_symmetry(fuv):
    form, u, v = fuv
    F = form.field
    a, b = form.evaluate_pair(u, v), form.evaluate_pair(v, u)
    if form.kind is FormKind.SYMPLECTIC:
        assert a == F.neg(b)
    elif form.kind is FormKind.HERMITIAN:
        assert a == F.frobenius(b, form.sigma)
    else:
        assert a == b


@given(form_and_vectors(n=2))
def test_pair_functional_matches(fuv):
    form, u, s = fuv
    F = form.field
    row = form.pair_functional(s)
    acc = 0
    for x, w in zip(u, row):
        acc = F.add(acc, F.mul(x, w))
    assert acc == form.evaluate_pair(u, s)


@given(form_and_vectors(n=1))
def test_bilinearity(fu):
    form, u = fu
    F = form.field
    lam = F.generator
    scaled = tuple(F.mul(lam, x) for x in u)
    got = form.evaluate_pair(scaled, u)
    assert got == F.mul(lam, form.evaluate_pair(u, u))


def test_standard_symplectic_layout():
    F = gf.field(3)
    form = forms.standard_form("W", 4, F)
    e = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    assert form.evaluate_pair(e[0], e[2]) == 1
    assert form.evaluate_pair(e[2], e[0]) == F.neg(1)
    assert form.evaluate_pair(e[0], e[1]) == 0
    assert all(form.evaluate_pair(v, v) == 0 for v in e)


def test_standard_minus_tail_is_anisotropic():
    F = gf.field(3)
    form = forms.standard_form("Q-", 6, F)
    for a in F.elements():
        for b in F.elements():
            v = (0, 0, 0, 0, a, b)
            if (a, b) != (0, 0):
                assert form.evaluate(v) != 0


@pytest.mark.parametrize("kind,d", [("W", 5), ("Q+", 5), ("Q-", 3), ("Q", 4)])
def test_standard_form_parity_errors(kind, d):
    with pytest.raises(ValueError):
        forms.standard_form(kind, d, gf.field(3))


def test_parse_kind():
    assert forms.parse_kind("Q+") is FormKind.PLUS
    assert forms.parse_kind("W") is FormKind.SYMPLECTIC
    assert forms.parse_kind(FormKind.HERMITIAN) is FormKind.HERMITIAN
    with pytest.raises(ValueError):
        forms.parse_kind("X")


# -- restriction / perp -----------------------------------------------------


def test_restriction_of_hyperbolic_pair():
    F = gf.field(3)
    form = forms.standard_form("Q+", 6, F)
    S = Subspace.span(F, [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)])
    rep = forms.classify_restriction(form, S)
    assert rep.kind is FormKind.PLUS and rep.nondegenerate


def test_restriction_of_elliptic_tail():
    F = gf.field(3)
    form = forms.standard_form("Q-", 6, F)
    S = Subspace.span(F, [(0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)])
    rep = forms.classify_restriction(form, S)
    assert rep.kind is FormKind.MINUS and rep.nondegenerate


def test_restriction_of_parabolic_axis():
    F = gf.field(3)
    form = forms.standard_form("Q", 5, F)
    S = Subspace.span(F, [(1, 0, 0, 0, 0)])
    rep = forms.classify_restriction(form, S)
    assert rep.kind is FormKind.PARABOLIC and rep.nondegenerate


@pytest.mark.parametrize("kind,d,q", SPACES)
def test_perp_dimension(kind, d, q):
    F = gf.field_of_order(q)
    form = forms.standard_form(kind, d, F)
    S = Subspace.span(F, [tuple(1 if j == 0 else 0 for j in range(d))])
    P = forms.perp(form, S)
    assert P.dim == d - 1
    PP = forms.perp(form, P)
    assert PP.dim == 1 and PP.contains_subspace(S)


# -- constructors -----------------------------------------------------------


def test_diagonal_form_kinds():
    F3, F5 = gf.field(3), gf.field(5)
    assert forms.diagonal_form(F3, (1, 2)).kind is FormKind.PLUS    # x^2 - y^2
    assert forms.diagonal_form(F3, (1, 1)).kind is FormKind.MINUS   # -1 nonsquare
    assert forms.diagonal_form(F5, (1, 1)).kind is FormKind.PLUS    # -1 = 2^2
    assert forms.diagonal_form(F3, (1, 1, 1)).kind is FormKind.PARABOLIC


def test_diagonal_form_rejects_char2():
    with pytest.raises(ValueError):
        forms.diagonal_form(gf.field(2), (1, 1))


def test_quadratic_form_agrees_with_diagonal():
    F = gf.field(7)
    C = [[3, 0, 0], [0, 1, 0], [0, 0, 6]]
    qf = forms.quadratic_form(F, C)
    df = forms.diagonal_form(F, (3, 1, 6))
    assert qf.kind is df.kind
    for v in itertools.product(range(7), repeat=3):
        assert qf.evaluate(v) == df.evaluate(v)


def test_form_serialize_shape():
    form = forms.standard_form("H", 3, gf.field(2, 2))
    d = form.serialize()
    assert d["kind"] == "H" and d["q"] == 4 and d["d"] == 3
    assert len(d["matrix"]) == 3


# -- subspaces --------------------------------------------------------------


def test_span_is_canonical():
    F = gf.field(3)
    S1 = Subspace.span(F, [(1, 2, 0, 1), (0, 1, 1, 1)])
    S2 = Subspace.span(F, [(2, 4 % 3, 0, 2), (1, 0, 1 % 3, 2)])  # scaled + mixed
    assert S1.rows == S2.rows
    assert S1.dim == 2


def test_subspace_vectors_and_contains():
    F = gf.field(2)
    S = Subspace.span(F, [(1, 0, 1), (0, 1, 1)])
    vecs = list(S.vectors())          # nonzero vectors only
    assert len(vecs) == 3
    for v in vecs:
        assert S.contains(v)
    assert S.contains((0, 0, 0))
    assert not S.contains((1, 1, 1))


def test_zero_subspace():
    F = gf.field(3)
    Z = Subspace.zero(F, 4)
    assert Z.dim == 0
    assert Z.contains((0, 0, 0, 0))
