import random
from fractions import Fraction

import pytest

from skeinlat.cyclotomic import CycContext, CycNum, cyclotomic_poly, poly_resultant
from skeinlat.laurent import IntLaurent, LocLaurent


def test_cyclotomic_polys():
    assert cyclotomic_poly(20) == (1, 0, -1, 0, 1, 0, -1, 0, 1)
    assert cyclotomic_poly(14) == (1, -1, 1, -1, 1, -1, 1)
    assert cyclotomic_poly(7) == (1,) * 7
    assert cyclotomic_poly(4) == (1, 0, 1)


def test_resultant_small():
    # Res(X^2+1, X^2-2) = (i^2-2)((-i)^2-2) = 9
    assert poly_resultant([1, 0, 1], [-2, 0, 1]) == 9
    assert poly_resultant([-1, 1], [-2, 1]) == -1
    assert poly_resultant(list(cyclotomic_poly(5)), [-1, 1]) == 5


def test_context_shapes():
    c5 = CycContext(5)
    assert (c5.n, c5.phi, c5.a_exp, c5.d) == (20, 8, 2, 2)
    c7 = CycContext(7)
    assert (c7.n, c7.phi, c7.a_exp, c7.d) == (14, 6, 1, 3)
    with pytest.raises(ValueError):
        CycContext(9)


@pytest.mark.parametrize("p", [5, 7])
def test_root_relations(p):
    ctx = CycContext(p)
    assert ctx.A ** (2 * p) == 1
    assert ctx.A ** p == -1
    assert ctx.q ** p == 1
    assert ctx.q == ctx.A * ctx.A
    if p % 4 == 1:
        i = ctx.i_power(1)
        assert i * i == -1
    else:
        assert ctx.i_power(2) == -1
        with pytest.raises(ValueError):
            ctx.i_power(1)


@pytest.mark.parametrize("p,nrm", [(5, 25), (7, 7)])
def test_one_minus_q_norm(p, nrm):
    ctx = CycContext(p)
    assert ctx.one_minus_q.norm() == nrm


@pytest.mark.parametrize("p", [5, 7])
def test_valuation_of_p(p):
    ctx = CycContext(p)
    k, cof = ctx.from_int(p).valuation_one_minus_q()
    assert k == p - 1
    assert cof.is_unit()


@pytest.mark.parametrize("p", [5, 7])
def test_one_plus_A_associate_one_minus_q(p):
    ctx = CycContext(p)
    one_plus_A = ctx.one + ctx.A
    assert one_plus_A.is_associate(ctx.one_minus_q)
    assert not ctx.from_int(p).is_associate(ctx.one_minus_q)


@pytest.mark.parametrize("p", [5, 7])
def test_units(p):
    ctx = CycContext(p)
    assert ctx.A.is_unit()
    assert (ctx.q_pow(1) + ctx.q_pow(-1)).is_unit()
    assert not ctx.one_minus_q.is_unit()
    assert not (ctx.one / 2).is_unit()


@pytest.mark.parametrize("p", [5, 7])
def test_norm_dual_route(p):
    ctx = CycContext(p)
    rng = random.Random(12345 + p)
    for _ in range(8):
        vec = tuple(rng.randrange(-9, 10) for _ in range(ctx.phi))
        den = rng.randrange(1, 5)
        x = CycNum(ctx, vec, den)
        assert x.norm() == x.norm_resultant()


@pytest.mark.parametrize("p", [5, 7])
def test_inverse(p):
    ctx = CycContext(p)
    x = ctx.from_int(3) + ctx.A
    assert x * x.inverse() == 1
    assert ctx.q ** -1 == ctx.q_pow(-1)
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inverse()


def test_galois_and_conj():
    ctx = CycContext(5)
    assert ctx.A.conj() == ctx.A_pow(-1)
    x = ctx.from_int(2) + 3 * ctx.q
    assert x.conj().conj() == x
    # conjugation is a ring map
    y = ctx.one + ctx.A
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()


def test_plus_subring():
    c5 = CycContext(5)
    assert c5.plus_m == 11
    assert c5.q.in_plus_subring()
    assert c5.one_minus_q.in_plus_subring()
    assert not c5.i_power(1).in_plus_subring()
    assert not (c5.q / 2).in_plus_subring()
    c7 = CycContext(7)
    assert c7.plus_m == 1
    assert c7.A.in_plus_subring()


@pytest.mark.parametrize("p", [5, 7])
def test_laurent_embedding(p):
    ctx = CycContext(p)
    f = IntLaurent({0: 1, 1: 1})
    assert ctx.from_A_laurent(f) == ctx.one + ctx.A
    # the embedding is a ring map
    g = IntLaurent({-2: 3, 1: -1})
    assert ctx.from_A_laurent(f * g) == ctx.from_A_laurent(f) * ctx.from_A_laurent(g)
    half = ctx.from_A_loc(LocLaurent(IntLaurent(1), 1))
    assert half * (ctx.one + ctx.A) == 1
    assert not half.is_integral()


def test_json_roundtrip():
    ctx = CycContext(5)
    x = (ctx.from_int(7) + 3 * ctx.A) / 4
    obj = x.to_json()
    assert obj["p"] == 5
    assert CycNum.from_json(obj, ctx) == x
    y = CycNum.from_json(obj)
    assert y.vec == x.vec and y.den == x.den
