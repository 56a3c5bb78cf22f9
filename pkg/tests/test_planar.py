from functools import lru_cache

import pytest

from skeinlat.matrices import ldl_decomposition, mat_eq
from skeinlat.planar import (
    COLORS,
    CurveArrangement,
    HigherGramReport,
    RefutationError,
    arrangement_set_genus2,
    arrangement_set_genus3,
    expand_arrangement,
    expansion_matrix_genus2,
    gram_bracket,
    gram_closed_genus2,
    gram_genus2,
    genus3_p5_report,
    graph_colorings_genus2,
    graph_colorings_genus3,
    graph_norm_genus2,
    graph_norm_genus3,
    monomial_arrangement,
    non_unimodular_witness,
    pairing_closed_genus2,
    triangular_certificate_genus2,
)
from skeinlat.recoupling import (
    count_spine_colorings,
    quantum_dim_at,
    rank_polynomial_genus3,
    rank_polynomial_genus5,
    verlinde_float,
)
from skeinlat.torus import TQFTParams

PRIMES = (5, 7, 11)


@lru_cache(maxsize=None)
def params_for(p: int) -> TQFTParams:
    return TQFTParams(p)


@lru_cache(maxsize=None)
def genus2_report(p: int, basis: str) -> HigherGramReport:
    return gram_genus2(p, basis=basis)


@lru_cache(maxsize=None)
def genus3_report(color: str) -> HigherGramReport:
    return genus3_p5_report(color=color)


def fusion_gram(params, color):
    # independent assembly: expansion rows against the diagonal graph Gram
    rows = expansion_matrix_genus2(params, color)
    cols = graph_colorings_genus2(params.p)
    norms = [graph_norm_genus2(params, *c) for c in cols]
    ctx = params.ctx
    out = []
    for ri in rows:
        line = []
        for rj in rows:
            acc = ctx.zero
            for k in range(len(cols)):
                term = ri[k] * rj[k].conj()
                if term:
                    acc = acc + term * norms[k]
            line.append(acc)
        out.append(line)
    return out


# ---------------------------------------------------------------------------
# curve arrangements


def test_arrangement_rejects_crossing_curves():
    with pytest.raises(ValueError):
        CurveArrangement(3, (frozenset({0, 1}), frozenset({1, 2})))


def test_arrangement_rejects_empty_curve():
    with pytest.raises(ValueError):
        CurveArrangement(2, (frozenset(),))


def test_arrangement_rejects_foreign_holes():
    with pytest.raises(ValueError):
        CurveArrangement(2, (frozenset({2}),))


def test_arrangement_rejects_unsupported_genus():
    with pytest.raises(ValueError):
        CurveArrangement(4, (frozenset({0}),))


def test_arrangement_canonical_order_and_hash():
    a = CurveArrangement(3, (frozenset({2}), frozenset({0, 1}), frozenset({0, 1})))
    b = CurveArrangement(3, (frozenset({0, 1}), frozenset({2}), frozenset({0, 1})))
    assert a == b and hash(a) == hash(b)
    assert a.multiplicity({0, 1}) == 2
    assert a.hole_cover(1) == 2 and a.hole_cover(2) == 1


def test_monomial_arrangement_exponents():
    arr = monomial_arrangement(2, 3, 1)
    assert (arr.alpha, arr.beta, arr.gamma) == (2, 3, 1)
    assert arr.curve_count == 6
    assert arr.lead_coloring() == (3, 4, 2)
    with pytest.raises(ValueError):
        monomial_arrangement(-1, 0, 0)


def test_nested_curves_are_laminar():
    arr = CurveArrangement(2, (frozenset({0}), frozenset({0, 1})))
    assert arr.genus == 2 and arr.curve_count == 2


# ---------------------------------------------------------------------------
# index sets and counts


@pytest.mark.parametrize("p", (5, 7, 11, 13))
def test_genus2_counts(p):
    d = (p - 1) // 2
    arrs = arrangement_set_genus2(p)
    r = d * (d + 1) * (2 * d + 1) // 6
    assert len(arrs) == r == count_spine_colorings(2, p)
    assert sum(a.curve_count for a in arrs) == (d - 1) * r


@pytest.mark.parametrize("p", (5, 7, 11, 13))
def test_genus2_curve_count_per_gamma_block(p):
    # within fixed gamma the curves sum to (d-1)(d-gamma)^2
    d = (p - 1) // 2
    arrs = arrangement_set_genus2(p)
    for gamma in range(d):
        block = [a for a in arrs if a.gamma == gamma]
        assert len(block) == (d - gamma) ** 2
        assert sum(a.curve_count for a in block) == (d - 1) * (d - gamma) ** 2


def test_genus2_p5_index_set_explicit():
    arrs = arrangement_set_genus2(5)
    got = [(a.alpha, a.beta, a.gamma) for a in arrs]
    assert got == [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0), (0, 0, 1)]


@pytest.mark.parametrize("p", PRIMES)
def test_genus2_lead_coloring_bijection_in_order(p):
    # arrangement order and coloring order agree under the lead map
    arrs = arrangement_set_genus2(p)
    cols = graph_colorings_genus2(p)
    assert sorted(a.lead_coloring() for a in arrs) == sorted(cols)
    d = (p - 1) // 2
    for k in range(0, p - 2, 2):
        assert sum(1 for c in cols if c[2] == k) == (d - k // 2) ** 2


def test_genus3_arrangements():
    arrs = arrangement_set_genus3()
    assert len(arrs) == 15 == count_spine_colorings(3, 5)
    assert sum(a.curve_count for a in arrs) == 22
    assert len(set(arrs)) == 15
    leads = [a.lead_coloring() for a in arrs]
    assert leads == sorted(graph_colorings_genus3(5))
    # every hole is covered at most once, so loop colors stay below d = 2
    assert all(a.hole_cover(h) <= 1 for a in arrs for h in range(3))


def test_genus3_colorings_p7_are_admissible_and_sorted():
    cols = graph_colorings_genus3(7)
    assert cols == sorted(cols) and len(cols) == len(set(cols))
    assert len(cols) == count_spine_colorings(3, 7)
    for a, c in cols:
        assert all(x < 3 for x in a) and all(x % 2 == 0 for x in c)


# ---------------------------------------------------------------------------
# expansion over the graph basis


def test_expand_empty_arrangement():
    params = params_for(5)
    coords = expand_arrangement(params, monomial_arrangement(0, 0, 0))
    assert set(coords) == {(0, 0, 0)}
    assert coords[(0, 0, 0)] == params.ctx.one


def test_expand_single_curve_is_exact():
    params = params_for(5)
    coords = expand_arrangement(params, monomial_arrangement(1, 0, 0))
    assert set(coords) == {(1, 0, 0)}
    assert coords[(1, 0, 0)] == params.ctx.one


def test_expand_c110_support():
    # two curves around different holes never meet: single graph term
    params = params_for(5)
    coords = expand_arrangement(params, monomial_arrangement(1, 1, 0))
    assert set(coords) == {(1, 1, 0)}
    assert coords[(1, 1, 0)] == params.ctx.one


def test_expand_two_parallel_curves_split():
    # z^2 = e_2 + e_0 around one hole
    params = params_for(7)
    coords = expand_arrangement(params, monomial_arrangement(2, 0, 0))
    assert set(coords) == {(0, 0, 0), (2, 0, 0)}
    assert coords[(0, 0, 0)] == params.ctx.one
    assert coords[(2, 0, 0)] == params.ctx.one


def test_expand_needs_genus2():
    params = params_for(5)
    with pytest.raises(ValueError):
        expand_arrangement(params, arrangement_set_genus3()[0])


def test_expand_unknown_color():
    params = params_for(5)
    with pytest.raises(ValueError):
        expand_arrangement(params, monomial_arrangement(1, 0, 0), "w")


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("color", ("z", "v"))
def test_triangular_certificate(p, color):
    cert = triangular_certificate_genus2(params_for(p), color)
    assert cert["ok"] and cert["support_ok"] and cert["diagonal_ok"]


def test_triangular_certificate_rejects_omega():
    with pytest.raises(ValueError):
        triangular_certificate_genus2(params_for(5), "omega")


@pytest.mark.parametrize("p", (5, 7))
def test_omega_expansion_folds_into_graph_range(p):
    # omega cables reach colors past d-1 and must fold back into the basis
    params = params_for(p)
    cols = set(graph_colorings_genus2(p))
    for arr in arrangement_set_genus2(p):
        coords = expand_arrangement(params, arr, "omega")
        assert coords and set(coords) <= cols


# ---------------------------------------------------------------------------
# pairings: two routes and the state-sum oracle


@pytest.mark.parametrize("p", (5, 7))
@pytest.mark.parametrize("color", COLORS)
def test_fusion_route_equals_projection_route(p, color):
    params = params_for(p)
    assert mat_eq(fusion_gram(params, color), gram_closed_genus2(params, color))


@pytest.mark.parametrize("color", COLORS)
def test_gram_bracket_oracle_p5(color):
    params = params_for(5)
    arrs = arrangement_set_genus2(5)
    assert mat_eq(
        gram_bracket(params, arrs, color), gram_closed_genus2(params, color)
    )


def test_pairing_is_hermitian():
    params = params_for(7)
    x = monomial_arrangement(1, 0, 1)
    y = monomial_arrangement(0, 1, 1)
    fwd = pairing_closed_genus2(params, x, y, "v")
    assert fwd.conj() == pairing_closed_genus2(params, y, x, "v")


@pytest.mark.parametrize("p", PRIMES)
def test_empty_pairing_is_d_squared(p):
    params = params_for(p)
    empty = monomial_arrangement(0, 0, 0)
    assert pairing_closed_genus2(params, empty, empty) == params.D * params.D


def test_pairing_closed_needs_genus2():
    params = params_for(5)
    empty3 = arrangement_set_genus3()[0]
    with pytest.raises(ValueError):
        pairing_closed_genus2(params, empty3, empty3)


@pytest.mark.parametrize("p", (5, 7))
def test_ldl_recovers_expansion_and_norms(p):
    # Gram_A = L diag L* with L the expansion matrix and diag the graph norms
    params = params_for(p)
    ctx = params.ctx
    gram = gram_closed_genus2(params, "z")
    lower, diag = ldl_decomposition(gram, ctx.one, ctx.zero, ctx.inv, lambda v: v.conj())
    cols = graph_colorings_genus2(p)
    norms = [graph_norm_genus2(params, *c) for c in cols]
    assert diag == norms
    assert mat_eq(lower, expansion_matrix_genus2(params, "z"))


def test_ldl_diag_v_color_p5():
    # v-diagonal picks up |1+A|^(-2n) against the z norms
    params = params_for(5)
    ctx = params.ctx
    gram = gram_closed_genus2(params, "v")
    _, diag = ldl_decomposition(gram, ctx.one, ctx.zero, ctx.inv, lambda v: v.conj())
    inv1a = ctx.inv(ctx.one + ctx.A)
    arrs = arrangement_set_genus2(5)
    norms = [graph_norm_genus2(params, *c) for c in graph_colorings_genus2(5)]
    for k, arr in enumerate(arrs):
        scale = inv1a ** arr.curve_count * inv1a.conj() ** arr.curve_count
        assert diag[k] == scale * norms[k]


# ---------------------------------------------------------------------------
# genus-2 determinant reports


@pytest.mark.parametrize("p", (5, 7))
def test_gram_genus2_graph_basis(p):
    rep = genus2_report(p, "G")
    d = (p - 1) // 2
    assert rep.rank == d * (d + 1) * (2 * d + 1) // 6
    assert rep.rank_term == 2 * (d - 1) * rep.rank
    assert rep.associate_exponent == rep.rank_term == rep.expected_exponent
    assert rep.unit_cofactor and not rep.unimodular


@pytest.mark.parametrize("p", (5, 7))
def test_gram_genus2_plain_arrangements(p):
    rep = genus2_report(p, "A")
    assert rep.associate_exponent == rep.rank_term
    assert rep.base_change_valuation == 0
    assert not rep.unimodular


@pytest.mark.parametrize("p", (5, 7))
def test_gram_genus2_v_basis_unimodular(p):
    rep = genus2_report(p, "Av")
    assert rep.base_change_valuation == -2 * rep.curve_total
    assert rep.associate_exponent == 0
    assert rep.unimodular and rep.unit_cofactor


def test_gram_genus2_rejects_unknown_basis():
    with pytest.raises(ValueError):
        gram_genus2(5, basis="B")


@pytest.mark.parametrize("p", (5, 7))
def test_genus2_witness_is_vacuous(p):
    assert non_unimodular_witness(p, 2, genus2_report(p, "A")) is None


def test_report_json_round_trip_fields():
    rep = genus2_report(5, "Av")
    out = rep.to_json()
    assert out["p"] == 5 and out["basis"] == "Av" and out["unimodular"] is True
    assert "gram" not in out
    assert "gram" in rep.to_json(include_gram=True)


# ---------------------------------------------------------------------------
# genus 3 at p = 5


def test_genus3_block_diagonal_by_loop_colors():
    # arrangements with different hole covers pair to zero
    params = params_for(5)
    arrs = arrangement_set_genus3()
    gram = gram_bracket(params, arrs, "z")
    for i, x in enumerate(arrs):
        for j, y in enumerate(arrs):
            if x.lead_coloring()[0] != y.lead_coloring()[0]:
                assert gram[i][j].is_zero()


def test_genus3_singleton_norms_match_closed_form():
    # all-singleton families expand to a single graph term: norms on the nose
    params = params_for(5)
    arrs = arrangement_set_genus3()
    gram = gram_bracket(params, arrs, "z")
    for i, arr in enumerate(arrs):
        if all(len(s) == 1 for s in arr.curves):
            a, c = arr.lead_coloring()
            assert c == (0, 0, 0)
            assert gram[i][i] == graph_norm_genus3(params, a, c)


@pytest.mark.parametrize("color", ("v", "omega"))
def test_genus3_report(color):
    rep = genus3_report(color)
    assert rep.rank == 15 and rep.curve_total == 22
    assert rep.rank_term == 45 and rep.base_change_valuation == -44
    assert rep.associate_exponent == 1
    assert rep.unit_cofactor and not rep.unimodular
    assert rep.plus_subring is True


@pytest.mark.parametrize("color", ("v", "omega"))
def test_genus3_witness(color):
    rep = genus3_report(color)
    w = non_unimodular_witness(5, 3, rep)
    assert w["ok"] and w["gram_valuation"] == 1 and w["parity_anchor"] == 45


def test_genus3_report_rejects_other_colors():
    with pytest.raises(ValueError):
        genus3_p5_report(color="z")


def test_witness_rejects_mismatched_instance():
    rep = genus3_report("v")
    with pytest.raises(ValueError):
        non_unimodular_witness(7, 3, rep)


def test_witness_refutes_even_valuation_on_odd_instance():
    rep = genus3_report("v")
    fake = HigherGramReport(
        p=rep.p, genus=rep.genus, basis=rep.basis, color=rep.color,
        rank=rep.rank, curve_total=rep.curve_total, rank_term=45,
        base_change_valuation=-44, associate_exponent=2,
        unit_cofactor=True, unimodular=False, plus_subring=True,
        det=rep.det, gram=rep.gram,
    )
    with pytest.raises(RefutationError):
        non_unimodular_witness(5, 3, fake)


# ---------------------------------------------------------------------------
# rank checks


def test_rank_polynomials_match_enumeration():
    for k in (1, 2, 3):
        assert rank_polynomial_genus3(k) == count_spine_colorings(3, 4 * k + 1)
    assert rank_polynomial_genus3(1) == 15
    assert rank_polynomial_genus3(3) == 3549
    assert rank_polynomial_genus5(1) == 175 == count_spine_colorings(5, 5)


def test_rank_polynomial_rejects_bad_k():
    with pytest.raises(ValueError):
        rank_polynomial_genus3(0)


def test_rank_parity_oddness():
    # p = 5 mod 8 gives odd genus-3 rank: the parity behind the witness
    assert rank_polynomial_genus3(1) % 2 == 1
    assert count_spine_colorings(3, 13) % 2 == 1


@pytest.mark.parametrize("genus,p", ((2, 5), (2, 13), (3, 5), (3, 13), (5, 5)))
def test_verlinde_float_cross_check(genus, p):
    assert abs(verlinde_float(genus, p) - count_spine_colorings(genus, p)) < 1e-6


# ---------------------------------------------------------------------------
# transparency of the top color


@pytest.mark.parametrize("p", PRIMES)
def test_top_color_has_reflected_dimensions(p):
    # <p-2-r> = <r>: the fold behind the projection closed form
    ctx = params_for(p).ctx
    for r in range(p - 1):
        assert quantum_dim_at(ctx, p - 2 - r) == quantum_dim_at(ctx, r)
