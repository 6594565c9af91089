import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from polarkit import constructions, fieldred, forms, gf, group, intriguing, polar


def _w19_down(alpha=None):
    F9, F3 = gf.field(3, 2), gf.field(3)
    return fieldred.reduce(1, forms.standard_form("W", 2, F9), F3, alpha=alpha)


# -- applicability ----------------------------------------------------------


def test_unknown_row():
    with pytest.raises(ValueError, match="row"):
        fieldred.reduce(4, forms.standard_form("W", 2, gf.field(3, 2)),
                        gf.field(3))


def test_row_kind_mismatch():
    F9 = gf.field(3, 2)
    with pytest.raises(ValueError, match="row 1 starts from"):
        fieldred.reduce(1, forms.standard_form("Q+", 4, F9), gf.field(3))
    with pytest.raises(ValueError, match="row 1 starts from"):
        fieldred.reduce(1, forms.standard_form("Q", 3, F9), gf.field(3))


def test_needs_proper_subfield():
    F3 = gf.field(3)
    with pytest.raises(ValueError):
        fieldred.reduce(1, forms.standard_form("W", 2, F3), F3)


def test_incompatible_fields():
    with pytest.raises(ValueError):
        fieldred.reduce(1, forms.standard_form("W", 2, gf.field(3, 2)),
                        gf.field(2))


def test_row9_parity():
    F9 = gf.field(3, 2)
    with pytest.raises(ValueError, match="odd"):
        fieldred.reduce(9, forms.standard_form("H", 2, F9), gf.field(3))


def test_row10_needs_even_b():
    # GF(729)/GF(9) has odd degree 3; the Hermitian source itself is fine
    F729 = gf.field(3, 6)
    with pytest.raises(ValueError, match="even b"):
        fieldred.reduce(10, forms.standard_form("H", 2, F729), gf.field(3, 2))


# -- the traced form and alpha ----------------------------------------------


def test_alpha_zero_rejected():
    with pytest.raises(ValueError, match="unit"):
        _w19_down(alpha=0)


def test_alpha_recorded_and_serialized():
    F9 = gf.field(3, 2)
    fr = _w19_down(alpha=F9.generator)
    assert fr.alpha == F9.generator
    d = fr.serialize()
    assert d == {"row": 1, "q": 3, "b": 2, "d": 4,
                 "alpha": F9.coeffs(F9.generator)}


def test_row9_alpha_must_be_fixed_by_involution():
    F9 = gf.field(3, 2)
    hform = forms.standard_form("H", 3, F9)
    fieldred.reduce(9, hform, gf.field(3), alpha=2)       # 2 is in GF(3)
    with pytest.raises(ValueError):
        fieldred.reduce(9, hform, gf.field(3), alpha=F9.generator)


def test_alpha_square_class_decides_the_graph():
    """The SL2(5) point partition of PG(3,3) is alpha-independent, but its
    classification under the traced form is decided by alpha mod squares:
    nonsquare alphas make both orbits 5-tight, squares make them 2-ovoids."""
    F9 = gf.field(3, 2)
    gset = constructions.sl2_5_in_sl2_9()
    orbits = constructions.vector_orbit_reps(gset, 2)
    partitions = set()
    for alpha in F9.units():
        fr = _w19_down(alpha=alpha)
        sp = fr.small_space
        sets = []
        for o in orbits:
            idx = {sp.index[group._canonical(fr.small_field,
                                             fr.flattener.flatten(v))]
                   for v in o}
            sets.append(tuple(sorted(idx)))
        partitions.add(frozenset(sets))
        for s in sets:
            rep = intriguing.classify(sp, polar.PointSet(sp, s))
            if F9.is_square(alpha):
                assert (rep.ovoid_m, rep.h1, rep.h2) == (2, 5, 8)
            else:
                assert (rep.tight_i, rep.h1, rep.h2) == (5, 8, 5)
    assert len(partitions) == 1


def test_nonsquare_alpha_reproduces_standard_gram():
    F9 = gf.field(3, 2)
    fr = _w19_down(alpha=F9.generator)
    std = forms.standard_form("W", 4, gf.field(3))
    assert fr.small_space.form.data == std.data


# -- point counts and blow-ups ----------------------------------------------


@pytest.mark.parametrize("row,q,b,d,large,small", [
    (1, 3, 2, 4, 10, 40),
    (2, 2, 2, 8, 25, 135),
    (3, 3, 2, 4, 0, 10),      # anisotropic elliptic line upstairs
    (3, 3, 2, 8, 82, 1066),
    (9, 3, 2, 6, 28, 112),
    (10, 2, 2, 8, 45, 135),
])
def test_table_point_counts(row, q, b, d, large, small):
    assert fieldred.table_point_counts(row, q, b, d) == (large, small)


def test_blow_up_row1_covers_w33():
    fr = _w19_down()
    m1 = fieldred.blow_up(fr)
    assert len(m1) == 40
    rep = intriguing.classify(fr.small_space, m1)
    assert rep.tight_i == 10 and rep.h1 == 13


def test_blow_up_row2():
    F4, F2 = gf.field(2, 2), gf.field(2)
    fr = fieldred.reduce(2, forms.standard_form("Q+", 4, F4), F2)
    m1 = fieldred.blow_up(fr)
    rep = intriguing.classify(fr.small_space, m1)
    assert (len(m1), rep.tight_i, rep.h1, rep.h2) == (75, 5, 43, 35)
    comp = intriguing.classify(fr.small_space, m1.complement())
    assert comp.tight_i == 4


def test_blow_up_row3_is_an_ovoid():
    """Unlike rows 1 and 2, the elliptic-to-elliptic blow-up is an m-ovoid
    with m = (q^b - 1)/(q - 1): Q-(3,9) -> Q-(7,3) gives a 4-ovoid."""
    F9, F3 = gf.field(3, 2), gf.field(3)
    fr = fieldred.reduce(3, forms.standard_form("Q-", 4, F9), F3)
    m1 = fieldred.blow_up(fr)
    rep = intriguing.classify(fr.small_space, m1)
    assert len(m1) == fr.large_space.num_points * (9 - 1) // (3 - 1) == 328
    assert (rep.ovoid_m, rep.h1, rep.h2) == (4, 85, 112)


def test_blow_up_row9_covers_qminus():
    F9, F3 = gf.field(3, 2), gf.field(3)
    fr = fieldred.reduce(9, forms.standard_form("H", 3, F9), F3)
    m1 = fieldred.blow_up(fr)
    assert len(m1) == fr.small_space.num_points == 112


def test_blow_up_row10():
    F4, F2 = gf.field(2, 2), gf.field(2)
    fr = fieldred.reduce(10, forms.standard_form("H", 4, F4), F2)
    m1 = fieldred.blow_up(fr)
    rep = intriguing.classify(fr.small_space, m1)
    assert rep.is_intriguing


# -- lifting and pushing ----------------------------------------------------


def test_push_down_lift_up_roundtrip():
    fr = _w19_down()
    big = polar.PointSet(fr.large_space, (0, 3, 7))
    small = fieldred.push_down(fr, big)
    assert len(small) == 3 * (9 - 1) // (3 - 1)    # 4 small points per large
    back = fieldred.lift_up(fr, small)
    assert back.members == big.members


def test_lift_up_rejects_partial_scalar_classes():
    fr0, sets = constructions.sl2_5_reduced_sets()
    with pytest.raises(ValueError, match="scalar"):
        fieldred.lift_up(fr0, sets[0])


def test_push_down_wrong_space():
    fr = _w19_down()
    with pytest.raises(ValueError):
        fieldred.push_down(fr, polar.PointSet(fr.small_space, (0,)))


# -- the flattener ----------------------------------------------------------


@given(st.data())
@settings(max_examples=60)
def test_flattener_roundtrip(data):
    fr = _w19_down()
    L = fr.large_field
    v = tuple(data.draw(st.integers(0, 8)) for _ in range(2))
    flat = fr.flattener.flatten(v)
    assert len(flat) == 4
    assert fr.flattener.unflatten(flat) == v


def test_flatten_is_additive():
    fr = _w19_down()
    L, S = fr.large_field, fr.small_field
    a, b = (3, 5), (7, 1)
    sa, sb = fr.flattener.flatten(a), fr.flattener.flatten(b)
    asum = tuple(L.add(x, y) for x, y in zip(a, b))
    ssum = tuple(S.add(x, y) for x, y in zip(sa, sb))
    assert fr.flattener.flatten(asum) == ssum
