import random
from functools import lru_cache

import pytest

from skeinlat.matrices import (
    diagonal,
    identity,
    map_entries,
    mat_eq,
    mat_inverse,
    mat_mul,
    mat_vec,
    transpose,
)
from skeinlat.recoupling import qint
from skeinlat.torus import (
    DegeneracyError,
    RefutationError,
    TorusVector,
    TQFTParams,
    associate_certificate,
    basis_e,
    basis_omega,
    basis_v,
    det_w_certificate,
    e_gram_closed,
    form_preserved,
    gram,
    hermitian_pairing,
    hopf_bracket,
    hopf_matrix,
    hopf_pairing_closed,
    modular_relation_scalar,
    omega,
    omega_product,
    pairing_bracket,
    reduce_e,
    reduce_skein,
    s_matrix,
    twist_matrix_v_at,
    v_gram_closed,
    v_in_omega_span,
    v_matrix,
    vandermonde_certificate,
    verify_unimodular,
    w_matrix,
)

PRIMES = (3, 5, 7, 11, 13)


@lru_cache(maxsize=None)
def params_for(p: int) -> TQFTParams:
    return TQFTParams(p)


def rand_vector(params, rng) -> TorusVector:
    coords = [params.ctx.from_int(rng.randrange(-4, 5)) for _ in range(params.d)]
    return TorusVector(params, coords)


# ---------------------------------------------------------------------------
# parameters


@pytest.mark.parametrize("p", PRIMES)
def test_params_d_and_ring(p):
    params = params_for(p)
    assert params.d == (p - 1) // 2
    assert params.ctx.p == p


@pytest.mark.parametrize("p", PRIMES)
def test_d_valuation(p):
    # D is associate to (1-q)^(d-1)
    params = params_for(p)
    cert = associate_certificate(params, params.D, "D")
    assert cert["ok"] and cert["associate_exponent"] == params.d - 1


@pytest.mark.parametrize("p", PRIMES)
def test_eta_inverts_d(p):
    params = params_for(p)
    assert params.D * params.eta == 1
    cert = associate_certificate(params, params.eta, "eta")
    assert cert["ok"] and cert["associate_exponent"] == -(params.d - 1)


def test_dims_squared_sum_to_d_squared():
    for p in PRIMES:
        params = params_for(p)
        total = params.ctx.zero
        for dim in params.dims:
            total = total + dim * dim
        assert total == params.D * params.D


def test_kappa_square():
    for p in PRIMES:
        params = params_for(p)
        assert params.kappa * params.kappa == params.ctx.A_pow(-6 - p * (p + 1) // 2)


def test_p3_d_is_one():
    assert params_for(3).D == 1


# ---------------------------------------------------------------------------
# vectors and reduction


def test_reduce_folds_e_d():
    params = params_for(7)
    d = params.d
    assert reduce_e(params, [0] * d + [1]) == basis_e(params)[d - 1]
    # e_{d+i} = e_{d-1-i}
    assert reduce_e(params, [0] * (d + 1) + [1]) == basis_e(params)[d - 2]
    # e_{p-1} = 0
    raw = [0] * (2 * d) + [1]
    assert reduce_e(params, raw) == TorusVector(params, [params.ctx.zero] * d)
    with pytest.raises(ValueError):
        reduce_e(params, [0] * (2 * d + 1) + [1])


def test_z_action_matches_recursion():
    params = params_for(11)
    es = basis_e(params)
    d = params.d
    for i in range(d - 1):
        expect = es[i + 1] if i == 0 else es[i - 1] + es[i + 1]
        assert es[i].z_action() == expect
    assert es[d - 1].z_action() == es[d - 2] + es[d - 1]


def test_z_action_at_p3_is_identity():
    # d = 1: z e_0 = e_1 folds straight back to e_0
    params = params_for(3)
    e0 = basis_e(params)[0]
    assert e0.z_action() == e0


def test_reduce_skein_matches_iterated_z():
    params = params_for(7)
    e0 = basis_e(params)[0]
    cur = e0
    for k in range(1, 6):
        cur = cur.z_action()
        assert reduce_skein(params, {k: 1}) == cur


def test_twist_eigenvector():
    params = params_for(7)
    for i, e in enumerate(basis_e(params)):
        assert e.twist() == e.scale(params.mu(i))
        assert e.twist(3).twist(-3) == e


def test_vector_linearity():
    params = params_for(5)
    rng = random.Random(11)
    x, y = rand_vector(params, rng), rand_vector(params, rng)
    assert (x + y) - y == x
    assert (x + y).z_action() == x.z_action() + y.z_action()
    assert (x + y).conj() == x.conj() + y.conj()


# ---------------------------------------------------------------------------
# omega


def test_omega_p5_closed_form():
    # omega = D^-1 (e_0 - [2] e_1)
    params = params_for(5)
    om = omega(params)
    two = params.ctx.from_q_laurent(qint(2))
    assert om.coords[0] == params.eta
    assert om.coords[1] == -params.eta * two


@pytest.mark.parametrize("p", PRIMES)
def test_omega_product_route_agrees(p):
    params = params_for(p)
    assert omega_product(params) == omega(params)
    omega(params, cross_check=True)


@pytest.mark.parametrize("p", PRIMES)
def test_omega_hopf_projection(p):
    # the omega-colored meridian keeps only e_0, scaled by D
    params = params_for(p)
    om = omega(params)
    h = hopf_matrix(params)
    for j in range(params.d):
        acc = params.ctx.zero
        for i in range(params.d):
            acc = acc + om.coords[i] * h[i][j]
        assert acc == (params.D if j == 0 else params.ctx.zero)


# ---------------------------------------------------------------------------
# Hermitian pairing: closed form against the bracket engine


@pytest.mark.parametrize("p", (5, 7))
def test_pairing_engine_on_e_basis(p):
    params = params_for(p)
    es = basis_e(params)
    for i in range(params.d):
        for j in range(params.d):
            expect = params.D if i == j else params.ctx.zero
            assert hermitian_pairing(es[i], es[j]) == expect
            assert pairing_bracket(es[i], es[j]) == expect


@pytest.mark.parametrize("p", (5, 7))
def test_pairing_engine_on_v_basis(p):
    params = params_for(p)
    vs = basis_v(params)
    closed = v_gram_closed(params)
    for i in range(params.d):
        for j in range(params.d):
            assert pairing_bracket(vs[i], vs[j]) == closed[i][j]


def test_pairing_engine_random_vectors():
    params = params_for(5)
    rng = random.Random(23)
    for _ in range(4):
        x, y = rand_vector(params, rng), rand_vector(params, rng)
        assert pairing_bracket(x, y) == hermitian_pairing(x, y)


def test_pairing_sesquilinear():
    params = params_for(7)
    rng = random.Random(5)
    x, y = rand_vector(params, rng), rand_vector(params, rng)
    c = params.ctx.A_pow(3) + 2
    assert hermitian_pairing(x.scale(c), y) == c * hermitian_pairing(x, y)
    assert hermitian_pairing(x, y.scale(c)) == c.conj() * hermitian_pairing(x, y)


def test_pairing_hermitian_symmetry():
    for p in (5, 7, 11):
        params = params_for(p)
        rng = random.Random(p)
        x, y = rand_vector(params, rng), rand_vector(params, rng)
        assert hermitian_pairing(x, y) == hermitian_pairing(y, x).conj()


# ---------------------------------------------------------------------------
# Hopf pairing


@pytest.mark.parametrize("p", (5, 7))
def test_hopf_oracle_matches_closed_form(p):
    params = params_for(p)
    es = basis_e(params)
    for i in range(params.d):
        for j in range(params.d):
            closed = hopf_pairing_closed(params, i, j)
            assert hopf_bracket(params, es[i], es[j]) == closed


def test_hopf_row_zero_is_quantum_dimension():
    for p in (5, 7, 11):
        params = params_for(p)
        h = hopf_matrix(params)
        assert h[0] == params.dims


def test_hopf_is_symmetric_and_real():
    params = params_for(11)
    h = hopf_matrix(params)
    assert mat_eq(h, transpose(h))
    assert all(x.conj() == x for row in h for x in row)


# ---------------------------------------------------------------------------
# Gram matrices and certificates


@pytest.mark.parametrize("p", PRIMES)
def test_e_gram(p):
    params = params_for(p)
    ge = gram(basis_e(params))
    assert mat_eq(ge, e_gram_closed(params))
    cert = verify_unimodular(params, ge, "e")
    d = params.d
    assert cert["ok"]
    assert cert["associate_exponent"] == d * (d - 1)
    assert cert["unit"] == (d == 1)


@pytest.mark.parametrize("p", PRIMES)
def test_omega_gram_unimodular(p):
    params = params_for(p)
    cert = verify_unimodular(params, gram(basis_omega(params)), "omega")
    assert cert["ok"] and cert["unit"]
    assert cert["associate_exponent"] == 0


@pytest.mark.parametrize("p", PRIMES)
def test_v_gram_unimodular_and_integral(p):
    params = params_for(p)
    gv = gram(basis_v(params))
    assert mat_eq(gv, v_gram_closed(params))
    # integral entries even where i+j >= d, where p | c_{i+j}
    assert all(x.is_integral() for row in gv for x in row)
    cert = verify_unimodular(params, gv, "v")
    assert cert["ok"] and cert["unit"]


def test_v_gram_p5_determinant():
    # det = D^2 A / (1+A)^2, unit; the (0,0) entry is D itself
    params = params_for(5)
    ctx = params.ctx
    gv = v_gram_closed(params)
    assert gv[0][0] == params.D
    det = gv[0][0] * gv[1][1] - gv[0][1] * gv[1][0]
    unit1a = ctx.one + ctx.A
    assert det * unit1a * unit1a == params.D * params.D * ctx.A
    assert det.is_unit()


@pytest.mark.parametrize("p", PRIMES)
def test_det_w_certificate(p):
    params = params_for(p)
    d = params.d
    cert = det_w_certificate(params)
    assert cert["associate_exponent"] == -(d * (d - 1) // 2)


@pytest.mark.parametrize("p", PRIMES)
def test_vandermonde_certificate(p):
    params = params_for(p)
    d = params.d
    cert = vandermonde_certificate(params)
    assert cert["associate_exponent"] == d * (d - 1) // 2


@pytest.mark.parametrize("p", PRIMES)
def test_v_in_e_determinant_valuation(p):
    # the v-basis coordinate matrix over e has det (1+A)^(-d(d-1)/2), a pure
    # unit times the same power of (1-q)
    params = params_for(p)
    ctx = params.ctx
    det = ctx.one
    vm = v_matrix(params)
    for j in range(params.d):
        det = det * vm[j][j]
    cert = associate_certificate(params, det, "v over e")
    assert cert["ok"]
    assert cert["associate_exponent"] == -(params.d * (params.d - 1) // 2)


def test_gram_of_dependent_vectors_degenerates():
    params = params_for(5)
    e0 = basis_e(params)[0]
    with pytest.raises(DegeneracyError):
        verify_unimodular(params, gram([e0, e0.scale(2)]), "bogus")


def test_associate_certificate_rejects_stray_prime():
    params = params_for(5)
    cert = associate_certificate(params, params.ctx.from_int(2), "two")
    assert not cert["ok"] and not cert["unit"]
    assert cert["associate_exponent"] == 0


# ---------------------------------------------------------------------------
# lattice comparisons


@pytest.mark.parametrize("p", PRIMES)
def test_v_in_omega_span_integral_both_ways(p):
    params = params_for(p)
    c = v_in_omega_span(params)
    ctx = params.ctx
    # reconstruct v^j from the coordinates
    w = w_matrix(params)
    back = mat_mul(c, w, ctx.zero)
    assert mat_eq(back, [list(v.coords) for v in basis_v(params)])


def test_omega_in_v_coordinates_integral():
    for p in (5, 7, 11, 13):
        params = params_for(p)
        ctx = params.ctx
        vinv = mat_inverse(v_matrix(params), ctx.one, ctx.zero, ctx.inv)
        coords = mat_vec(vinv, list(omega(params).coords), ctx.zero)
        assert all(x.is_integral() for x in coords)


# ---------------------------------------------------------------------------
# mapping class action


@pytest.mark.parametrize("p", PRIMES)
def test_s_matrix_is_involution(p):
    params = params_for(p)
    ctx = params.ctx
    s = s_matrix(params)
    assert mat_eq(mat_mul(s, s, ctx.zero), identity(params.d, ctx.one, ctx.zero))
    assert mat_eq(s, transpose(s))


def test_s_matrix_anchor_entries():
    params = params_for(5)
    s = s_matrix(params)
    assert s[0][0] == params.eta
    # column 0 of eta H is eta <e_j>
    for j, dim in enumerate(params.dims):
        assert s[j][0] == params.eta * dim


@pytest.mark.parametrize("p", (5, 7, 11, 13))
def test_s_matrix_v_basis_integral(p):
    params = params_for(p)
    sv = s_matrix(params, "v")
    assert all(x.is_integral() for row in sv for x in row)
    # conjugation, not the form push-forward: eta H(v^0, v^0) alone is eta,
    # which is not integral for d > 1
    assert not (params.eta * hopf_pairing_closed(params, 0, 0)).is_integral()


def test_s_matrix_rejects_unknown_basis():
    with pytest.raises(ValueError):
        s_matrix(params_for(5), "w")


@pytest.mark.parametrize("p", (5, 7, 11))
def test_twist_preserves_form(p):
    params = params_for(p)
    ctx = params.ctx
    t_e = diagonal([params.mu(i) for i in range(params.d)], ctx.zero)
    assert form_preserved(gram(basis_e(params)), t_e, ctx.zero)
    t_v = twist_matrix_v_at(params)
    assert form_preserved(gram(basis_v(params)), t_v, ctx.zero)


@pytest.mark.parametrize("p", (5, 7, 11))
def test_s_preserves_form(p):
    params = params_for(p)
    ctx = params.ctx
    assert form_preserved(gram(basis_e(params)), s_matrix(params), ctx.zero)
    assert form_preserved(gram(basis_v(params)), s_matrix(params, "v"), ctx.zero)


@pytest.mark.parametrize("p", (5, 7, 11, 13))
def test_twist_matrix_v_is_conjugated_eigenvalue_matrix(p):
    params = params_for(p)
    ctx = params.ctx
    vm = v_matrix(params)
    vinv = mat_inverse(vm, ctx.one, ctx.zero, ctx.inv)
    diag = diagonal([params.mu(i) for i in range(params.d)], ctx.zero)
    conj = mat_mul(vinv, mat_mul(diag, vm, ctx.zero), ctx.zero)
    assert mat_eq(conj, twist_matrix_v_at(params))


@pytest.mark.parametrize("p", PRIMES)
def test_modular_relation_scalar(p):
    cert = modular_relation_scalar(params_for(p))
    assert cert["ok"]
    assert cert["scalar"].is_unit()
