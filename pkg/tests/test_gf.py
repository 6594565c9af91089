import pytest
from hypothesis import given
import hypothesis.strategies as st

from polarkit import gf
from strategies import SMALL_ORDERS, field_and_elements, fields


@given(field_and_elements(n=3))
def test_ring_axioms(fxyz):
    F, x, y, z = fxyz
    assert F.add(x, F.add(y, z)) == F.add(F.add(x, y), z)
    assert F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z)
    assert F.add(x, y) == F.add(y, x)
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, 0) == x and F.mul(x, 1) == x
    assert F.add(x, F.neg(x)) == 0
    assert F.sub(x, y) == F.add(x, F.neg(y))


@given(field_and_elements(n=2, nonzero=True))
def test_division(fxy):
    F, x, y = fxy
    assert F.mul(x, F.inv(x)) == 1
    assert F.mul(F.div(x, y), y) == x


def test_inv_zero_raises():
    F = gf.field(5)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(fields())
def test_generator_order(F):
    g = F.generator
    seen = set()
    x = 1
    for _ in range(F.q - 1):
        seen.add(x)
        x = F.mul(x, g)
    assert x == 1
    assert len(seen) == F.q - 1


@given(field_and_elements(n=1, nonzero=True))
def test_exp_log_roundtrip(fx):
    F, x = fx
    assert F.exp[F.log[x]] == x


@given(field_and_elements(n=1))
def test_coeffs_roundtrip(fx):
    F, x = fx
    cs = F.coeffs(x)
    assert len(cs) == F.f
    assert all(0 <= c < F.p for c in cs)
    assert F.from_coeffs(cs) == x


@given(field_and_elements(n=2))
def test_frobenius_is_field_automorphism(fxy):
    F, x, y = fxy
    assert F.frobenius(x) == F.pow(x, F.p)
    assert F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y))
    assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))
    assert F.frobenius(x, F.f) == x


@given(fields())
def test_square_census(F):
    nonzero_squares = {F.mul(x, x) for x in F.units()}
    if F.p == 2:
        assert len(nonzero_squares) == F.q - 1   # squaring is a bijection
    else:
        assert len(nonzero_squares) == (F.q - 1) // 2
    for x in F.elements():
        root = F.sqrt(x)
        if F.is_square(x):
            assert root is not None and F.mul(root, root) == x
        else:
            assert root is None


def test_field_is_cached():
    assert gf.field(3, 2) is gf.field(3, 2)
    assert gf.field_of_order(9) is gf.field(3, 2)


@pytest.mark.parametrize("bad", [1, 6, 12, 100])
def test_non_prime_powers_rejected(bad):
    with pytest.raises(ValueError):
        gf.field_of_order(bad)


@pytest.mark.parametrize("small,large", [(2, 4), (2, 16), (3, 9), (3, 27),
                                         (4, 16), (5, 25), (9, 81)])
def test_embedding_roundtrip(small, large):
    S, L = gf.field_of_order(small), gf.field_of_order(large)
    emb = gf.embedding(S, L)
    for a in S.elements():
        y = emb.up(a)
        assert emb.contains(y)
        assert emb.down(y) == a
    # up is a ring homomorphism
    for a in S.elements():
        for b in S.elements():
            assert emb.up(S.add(a, b)) == L.add(emb.up(a), emb.up(b))
            assert emb.up(S.mul(a, b)) == L.mul(emb.up(a), emb.up(b))


def test_embedding_trace_and_norm():
    S, L = gf.field(3), gf.field(3, 2)
    emb = gf.embedding(S, L)
    # trace is the sum of conjugates, additive, and onto
    traces = {emb.trace(y) for y in L.elements()}
    assert traces == set(S.elements())
    for y in L.elements():
        conj_sum = L.add(y, L.frobenius(y, emb.small.f))
        assert emb.up(emb.trace(y)) == conj_sum
    # norm is multiplicative and onto the units
    norms = {emb.norm(y) for y in L.units()}
    assert norms == set(S.units())
    for y in L.units():
        for z in L.units():
            assert emb.norm(L.mul(y, z)) == S.mul(emb.norm(y), emb.norm(z))


def test_embedding_requires_compatible_orders():
    with pytest.raises(ValueError):
        gf.embedding(gf.field_of_order(4), gf.field_of_order(8))
    with pytest.raises(ValueError):
        gf.embedding(gf.field(3), gf.field(2, 2))


def test_down_rejects_outsiders():
    emb = gf.embedding(gf.field(2), gf.field(2, 2))
    with pytest.raises(ValueError):
        emb.down(gf.field(2, 2).generator)


@given(fields(orders=[4, 8, 9, 16, 25, 27]))
def test_exp_basis_spans(F):
    """{g^0, ..., g^(f-1)} is an F_p-basis: its F_p-span hits every element."""
    import itertools

    basis = [F.exp[j] for j in range(F.f)]
    span = set()
    for cs in itertools.product(range(F.p), repeat=F.f):
        acc = 0
        for c, b in zip(cs, basis):
            acc = F.add(acc, F.mul(c, b))
        span.add(acc)
    assert len(span) == F.q


def test_in_subfield():
    F = gf.field(2, 4)
    sub = [a for a in F.elements() if F.in_subfield(a, 4)]
    assert len(sub) == 4
