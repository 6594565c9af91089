"""Classification of intriguing sets, plus the feasibility and Zsigmondy
helpers.  Frozen values were computed independently (direct perp counting
over the enumerated point lists) before being asserted here."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from polarkit import constructions, fieldred, forms, gf, group, intriguing, polar
from polarkit.intriguing import FeasibilityQuery, classify, feasibility, zsigmondy


def _lines(space):
    """All maximal totally singular subspaces of a rank-2 space, as point
    index frozensets (spans of collinear point pairs)."""
    assert space.rank == 2
    F = space.form.field
    out = set()
    n = space.num_points
    for i in range(n):
        for j in range(i + 1, n):
            if not space.collinear(i, j):
                continue
            S = forms.Subspace.span(F, [space.points[i], space.points[j]],
                                    ambient=space.d)
            pts = []
            for v in S.vectors():
                lead = next(x for x in v if x)
                if lead == 1:
                    pts.append(space.index[v])
            out.add(frozenset(pts))
    return out


# -- classification ---------------------------------------------------------


def test_full_set_w33(w33):
    rep = classify(w33, polar.full_set(w33))
    assert (rep.size, rep.h1, rep.h2) == (40, 13, None)
    assert rep.tight_i == 10 and rep.ovoid_m == 4
    assert rep.is_intriguing


def test_full_set_q63():
    sp = polar.build(forms.standard_form("Q", 7, gf.field(3)))
    rep = classify(sp, polar.full_set(sp))
    assert (rep.size, rep.h1) == (364, 121)
    assert rep.tight_i == 28 and rep.ovoid_m == 13


def test_generator_is_one_tight(w33, q43):
    for sp in (w33, q43):
        rep = classify(sp, polar.maximal_ts_points(sp))
        assert rep.tight_i == 1
        assert (rep.h1, rep.h2) == (4, 1)


def test_generator_complement_q63():
    sp = polar.build(forms.standard_form("Q", 7, gf.field(3)))
    comp = polar.maximal_ts_points(sp).complement()
    rep = classify(sp, comp)
    assert (rep.size, rep.h1, rep.h2) == (351, 117, 108)
    assert rep.tight_i == 27


def test_not_intriguing(w33):
    rep = classify(w33, polar.PointSet(w33, tuple(range(7))))
    assert not rep.is_intriguing
    assert rep.tight_i is None and rep.ovoid_m is None


def test_classify_rejects_empty(w33):
    with pytest.raises(ValueError):
        classify(w33, polar.PointSet(w33, ()))


def test_classify_rejects_foreign_set(w33, q43):
    with pytest.raises(ValueError):
        classify(w33, polar.PointSet(q43, (0, 1)))


@given(st.data())
@settings(max_examples=40)
def test_complement_count_identity(w33, data):
    """Double counting: the perp-count vectors of M and of its complement sum
    to the constant collinearity vector, for *any* M."""
    members = data.draw(st.sets(st.integers(0, 39), min_size=1, max_size=39))
    M = polar.PointSet(w33, tuple(members))
    a = intriguing._raw_counts(w33, list(M.members))
    b = intriguing._raw_counts(w33, list(M.complement().members))
    assert np.all(a + b == intriguing._collinear_constant(w33))


@given(st.data())
@settings(max_examples=25)
def test_classify_branches_agree(qm52, data):
    """classify streams small sets directly and large sets through the
    complement; forcing a set through both paths must agree."""
    members = data.draw(st.sets(st.integers(0, 26), min_size=10, max_size=17))
    M = polar.PointSet(qm52, tuple(members))
    via_m = intriguing._raw_counts(qm52, list(M.members))
    via_c = (intriguing._collinear_constant(qm52)
             - intriguing._raw_counts(qm52, list(M.complement().members)))
    assert np.all(via_m == via_c)


def test_intriguing_complement_parameters(q43):
    """The complement of an i-tight set is (theta - i)-tight."""
    gen = polar.maximal_ts_points(q43)
    rep = classify(q43, gen.complement())
    assert rep.tight_i == q43.ovoid_number - 1 == 9


# -- ovoids meet every generator in m points --------------------------------


def test_ovoids_meet_lines_w33():
    fr0, sets = constructions.sl2_5_reduced_sets()
    # alpha = 1 reading: the same partition is a pair of 2-ovoids
    sp1 = fieldred.reduce(1, forms.standard_form("W", 2, fr0.large_field),
                          fr0.small_field, alpha=1).small_space
    lines = _lines(sp1)
    assert len(lines) == 40
    for s in sets:
        for line in lines:
            assert len(line & set(s.members)) == 2


def test_ovoid_meets_lines_q43(q43):
    S = polar.nonsingular_point_with_residual(q43, "Q-")
    ovoid = polar.perp_residual(q43, S)
    assert classify(q43, ovoid).ovoid_m == 1
    for line in _lines(q43):
        assert len(line & set(ovoid.members)) == 1


def test_dlength_ovoids_meet_lines_h34():
    part = constructions.dlength_partition("H", 4, 4)
    lines = _lines(part.space)
    for length, m in ((2, 2), (4, 3)):
        M = part.classes[length]
        assert classify(part.space, M).ovoid_m == m
        for line in lines:
            assert len(line & set(M.members)) == m


def test_rank3_ovoid_meets_greedy_generator():
    part = constructions.dlength_partition("Q", 3, 7)
    gen = set(polar.maximal_ts_points(part.space).members)
    for length, m in ((3, 5), (6, 8)):
        M = part.classes[length]
        assert classify(part.space, M).ovoid_m == m
        assert len(gen & set(M.members)) == m


# -- feasibility ------------------------------------------------------------


def test_feasibility_sl25_in_w33():
    q = FeasibilityQuery(kind=forms.parse_kind("W"), d=4, q=3, group_order=120)
    rep = feasibility(q)
    assert rep.dim_ok and rep.divisibility_ok
    assert rep.witness_i == 5     # 20 + 20 is the only split dividing 120


def test_feasibility_tiny_group_fails_divisibility():
    q = FeasibilityQuery(kind=forms.parse_kind("W"), d=4, q=3, group_order=7)
    rep = feasibility(q)
    assert not rep.divisibility_ok and rep.witness_i is None


def test_feasibility_dim_bound_blocks_large_spaces():
    q = FeasibilityQuery(kind=forms.parse_kind("Q+"), d=24, q=3, group_order=120)
    assert not feasibility(q).dim_ok


def test_feasibility_rejects_bad_order():
    with pytest.raises(ValueError):
        feasibility(FeasibilityQuery(kind=forms.parse_kind("W"), d=4, q=3,
                                     group_order=0))


# -- Zsigmondy --------------------------------------------------------------


def _primitive_part(n, k):
    """n^k - 1 with every prime shared with a smaller n^i - 1 stripped out.
    What survives is exactly the product of primitive prime powers."""
    R = n ** k - 1
    for i in range(1, k):
        if k % i:
            continue
        g = math.gcd(R, n ** i - 1)
        while g > 1:
            R //= g
            g = math.gcd(R, n ** i - 1)
    return R


def _oracle_check(n, k, p):
    """Verify zsigmondy's answer against the gcd-stripped primitive part,
    with no integer factorization at all."""
    R = _primitive_part(n, k)
    if p is None:
        assert R == 1, (n, k, R)
        return
    assert R % p == 0
    # p really is prime and primitive
    assert all(p % d for d in range(2, int(p ** 0.5) + 1))
    assert (n ** k - 1) % p == 0
    assert all((n ** i - 1) % p for i in range(1, k))
    # nothing primitive is smaller: primitive primes are = 1 (mod k)
    step = k if k > 1 else 1
    for r in range(1 + step, p, step):
        assert (n ** k - 1) % r or math.gcd(_primitive_part(n, k), r) == 1 \
            or any(r % d == 0 for d in range(2, int(r ** 0.5) + 1))


@pytest.mark.parametrize("n,k,expected", [
    (2, 6, None), (7, 2, None), (3, 2, None),    # n + 1 a power of two
    (2, 10, 11), (6, 2, 7), (2, 12, 13), (3, 5, 11), (2, 1, None), (4, 3, 7),
])
def test_zsigmondy_spot_values(n, k, expected):
    got = zsigmondy(n, k)
    assert got == expected
    _oracle_check(n, k, got)


def test_zsigmondy_small_grid_matches_oracle():
    for n in range(2, 13):
        for k in range(1, 9):
            _oracle_check(n, k, zsigmondy(n, k))


def test_zsigmondy_input_validation():
    with pytest.raises(ValueError):
        zsigmondy(1, 3)
    with pytest.raises(ValueError):
        zsigmondy(2, 0)
    with pytest.raises(ValueError):
        zsigmondy(2, 64)      # over the 63-bit budget
