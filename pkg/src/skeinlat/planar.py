"""Handlebody skein pairings in genus 2 and 3 at an odd prime.

A genus-g handlebody is a disk with g holes times an interval; its skein
module is spanned by colored curve systems in the holed disk.  Two spanning
families matter here:

* curve arrangements: disjoint unions of simple closed curves, each curve
  recorded by the subset of holes it encloses.  In genus 2 an arrangement is
  the monomial x^alpha y^beta ztilde^gamma (curves around hole 0, hole 1,
  and both); in genus 3 it is a laminar multiset of nonempty hole subsets.
  Every curve may carry the plain strand z, the element v = (z+2)/(1+A), or
  the surgery element omega.

* graph colorings: admissible colorings of a spine with one loop per hole
  and arms joining the loops (a dumbbell in genus 2, a three-armed wheel in
  genus 3).  Loop colors stay below d = (p-1)/2; arm colors are even.

The Hermitian pairing of two handlebody elements is the bracket of X and
conj(Y) with one omega-cabled meridian circle around each hole.  An
omega-meridian keeps exactly the channels where it is blind: the trivial
color and the transparent color p-2 (quantum dimension one), each scaled by
D.  On graph elements this collapses the pairing to a product of theta
coefficients: distinct colorings are orthogonal and the norms have the
closed forms below.  Arrangements expand over graph colorings through
two-strand fusion, so their Gram matrix is a triangular change of basis away
from the diagonal graph Gram; the same matrix also comes straight from the
projection rule once every cable is folded over e_r = e_{p-2-r}, and the two
routes are compared entry by entry.  At p = 5 the honest state sum over
necklace diagrams arbitrates both.

Loop colors above d-1 fold the same way: a companion loop colored p-2 is
invisible, and fusing it in leaves the single channel p-2-s with a unit
coefficient.  Determinants are reported as associate certificates against
powers of 1-q, never as bare booleans.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .annulus import e_product_in_e, z_plus2_pow_in_e, z_power_in_e
from .bracket import RootCoeffs, kauffman_bracket, necklace_pd
from .cyclotomic import CycNum
from .matrices import Matrix, determinant, ldl_decomposition, map_entries, mat_eq
from .recoupling import p_admissible, quantum_dim_at, tet_at, theta_at
from .torus import DegeneracyError, RefutationError, TQFTParams, associate_certificate, omega

Coloring2 = tuple[int, int, int]
Coloring3 = tuple[tuple[int, int, int], tuple[int, int, int]]


# ---------------------------------------------------------------------------
# curve arrangements


@dataclass(frozen=True)
class CurveArrangement:
    """A disjoint family of curves in the g-holed disk.

    Each curve is the frozenset of holes it encloses.  The family must be
    laminar: two curves are either nested or disjoint, otherwise they cannot
    be drawn without crossing.  Curves are kept in a canonical order so the
    dataclass hashes and compares structurally.
    """

    genus: int
    curves: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.genus not in (2, 3):
            raise ValueError(f"unsupported genus {self.genus}")
        curves = tuple(frozenset(s) for s in self.curves)
        for s in curves:
            if not s:
                raise ValueError("a curve must enclose at least one hole")
            if not s <= set(range(self.genus)):
                raise ValueError(f"holes {sorted(s)} outside the {self.genus}-holed disk")
        for s, t in itertools.combinations(curves, 2):
            if not (s <= t or t <= s or not (s & t)):
                raise ValueError(f"curves {sorted(s)} and {sorted(t)} would cross")
        object.__setattr__(
            self, "curves", tuple(sorted(curves, key=lambda s: tuple(sorted(s))))
        )

    @property
    def curve_count(self) -> int:
        return len(self.curves)

    def multiplicity(self, holes) -> int:
        s = frozenset(holes)
        return sum(1 for c in self.curves if c == s)

    def hole_cover(self, hole: int) -> int:
        """Number of strands through the given hole: one per enclosing curve."""
        return sum(1 for c in self.curves if hole in c)

    # genus-2 monomial exponents
    @property
    def alpha(self) -> int:
        return self.multiplicity({0})

    @property
    def beta(self) -> int:
        return self.multiplicity({1})

    @property
    def gamma(self) -> int:
        return self.multiplicity({0, 1})

    def lead_coloring(self):
        """Graph coloring reached by fusing every pair into its top channel.

        Genus 2: (alpha+gamma, beta+gamma, 2 gamma).  Genus 3: loop colors are
        the hole covers and each arm carries twice the number of multi-hole
        curves running along it.
        """
        if self.genus == 2:
            return (self.alpha + self.gamma, self.beta + self.gamma, 2 * self.gamma)
        a = tuple(self.hole_cover(i) for i in range(3))
        c = tuple(
            2 * sum(1 for s in self.curves if len(s) >= 2 and i in s) for i in range(3)
        )
        return (a, c)

    def __repr__(self) -> str:
        parts = ",".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self.curves)
        return f"CurveArrangement(genus={self.genus}, [{parts}])"


def monomial_arrangement(alpha: int, beta: int, gamma: int) -> CurveArrangement:
    """x^alpha y^beta ztilde^gamma in the two-holed disk."""
    if min(alpha, beta, gamma) < 0:
        raise ValueError("exponents must be nonnegative")
    curves = (frozenset({0}),) * alpha + (frozenset({1}),) * beta
    curves += (frozenset({0, 1}),) * gamma
    return CurveArrangement(2, curves)


def arrangement_set_genus2(p: int) -> list[CurveArrangement]:
    """All monomials with gamma <= d-1 and alpha, beta <= d-1-gamma.

    The bounds keep every hole cover at most d-1, so each meridian sees at
    most d-1 strands.  Listed by (gamma, alpha, beta), which matches the
    arm-first order on graph colorings under lead_coloring.
    """
    d = _half(p)
    return [
        monomial_arrangement(alpha, beta, gamma)
        for gamma in range(d)
        for alpha in range(d - gamma)
        for beta in range(d - gamma)
    ]


def arrangement_set_genus3() -> list[CurveArrangement]:
    """All arrangements in the three-holed disk with hole covers at most one.

    A cover bound of one (the case d = 2) forces the curves to be pairwise
    disjoint as sets, so the families are the partitions of subsets of the
    holes: 15 of them carrying 22 curves in total.  Listed by lead coloring,
    loop part first.
    """
    out = []
    holes = (0, 1, 2)
    for mask in range(8):
        chosen = tuple(h for h in holes if mask >> h & 1)
        for blocks in _set_partitions(chosen):
            out.append(CurveArrangement(3, tuple(frozenset(b) for b in blocks)))
    out.sort(key=lambda arr: arr.lead_coloring())
    return out


def _set_partitions(items: tuple[int, ...]):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k in range(1 << len(rest)):
        block = (first,) + tuple(r for i, r in enumerate(rest) if k >> i & 1)
        remaining = tuple(r for i, r in enumerate(rest) if not k >> i & 1)
        for rest_blocks in _set_partitions(remaining):
            yield (block,) + rest_blocks


def _half(p: int) -> int:
    if p < 5 or p % 2 == 0:
        raise ValueError(f"need an odd p >= 5, got {p}")
    return (p - 1) // 2


# ---------------------------------------------------------------------------
# graph colorings and their norms


def graph_colorings_genus2(p: int) -> list[Coloring2]:
    """Dumbbell colorings (i, j, k): loops i, j below d, even arm k <= 2 min.

    Ordered arm first; the block with arm k is a (d - k/2)^2 square."""
    d = _half(p)
    return [
        (i, j, k)
        for k in range(0, p - 2, 2)
        for i in range(k // 2, d)
        for j in range(k // 2, d)
    ]


def graph_colorings_genus3(p: int) -> list[Coloring3]:
    """Wheel colorings ((a1,a2,a3), (c1,c2,c3)).

    Loops a_i below d; arm c_i even with (a_i, a_i, c_i) admissible; the
    three arms meet a central vertex, so (c1, c2, c3) must be admissible too.
    Ordered loops first."""
    d = _half(p)
    arms: dict[int, list[int]] = {}
    for a in range(d):
        arms[a] = [c for c in range(0, p - 2, 2) if p_admissible(p, a, a, c)]
    out = []
    for a in itertools.product(range(d), repeat=3):
        for c in itertools.product(arms[a[0]], arms[a[1]], arms[a[2]]):
            if p_admissible(p, *c):
                out.append((a, c))
    out.sort()
    return out


def graph_norm_genus2(params: TQFTParams, i: int, j: int, k: int) -> CycNum:
    """(G(i,j,k), G(i,j,k)) = D^2 theta(i,i,k) theta(j,j,k) / (<i><j><k>).

    Each omega-meridian contributes a factor D and collapses its loop into a
    bubble theta(i,i,k)/<k>; the normalization <i> per loop and one leftover
    <k> balance the count.  Genus 1 degenerates to (e_i, e_i) = D.
    """
    ctx = params.ctx
    num = params.D * params.D * theta_at(ctx, i, i, k) * theta_at(ctx, j, j, k)
    den = quantum_dim_at(ctx, i) * quantum_dim_at(ctx, j) * quantum_dim_at(ctx, k)
    return num * ctx.inv(den)


def graph_norm_genus3(params: TQFTParams, a, c) -> CycNum:
    """Wheel norm: D^3 theta(c1,c2,c3) prod_i theta(a_i,a_i,c_i)/(<a_i><c_i>)."""
    ctx = params.ctx
    out = params.D * params.D * params.D * theta_at(ctx, c[0], c[1], c[2])
    for ai, ci in zip(a, c):
        out = out * theta_at(ctx, ai, ai, ci)
        out = out * ctx.inv(quantum_dim_at(ctx, ai) * quantum_dim_at(ctx, ci))
    return out


# ---------------------------------------------------------------------------
# class cables and fusion data

COLORS = ("z", "v", "omega")


def _fold_raw(params: TQFTParams, raw) -> list[CycNum]:
    """Reduce an annulus element to colors 0..p-2.

    e_{p-1} is dropped and e_{p-1+j} folds to -e_{p-1-j}; degrees past 2p-4
    never arise from products of reduced elements."""
    ctx, top = params.ctx, params.p - 1
    out = [ctx.zero] * top
    for k, coeff in enumerate(raw):
        if isinstance(coeff, int):
            if not coeff:
                continue
            coeff = ctx.from_int(coeff)
        elif not coeff:
            continue
        if k < top:
            out[k] = out[k] + coeff
        elif k > top:
            if k > 2 * top - 2:
                raise ValueError(f"degree {k} beyond the reducible range")
            out[2 * top - k] = out[2 * top - k] - coeff
    return out


def _annulus_product(params: TQFTParams, f: list[CycNum], g: list[CycNum]) -> list[CycNum]:
    """Reduced product of two annulus elements given over colors 0..p-2."""
    ctx, top = params.ctx, params.p - 1
    out = [ctx.zero] * top
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if not b:
                continue
            coeff = a * b
            for k in e_product_in_e(i, j):
                if k < top:
                    out[k] = out[k] + coeff
                elif k > top:
                    out[2 * top - k] = out[2 * top - k] - coeff
    return out


def _class_cable(params: TQFTParams, color: str, count: int) -> list[CycNum]:
    """e-coordinates over colors 0..p-2 of `count` parallel colored copies
    of one curve."""
    ctx = params.ctx
    if color == "z":
        return _fold_raw(params, z_power_in_e(count))
    if color == "v":
        unit = ctx.inv(ctx.one + ctx.A) ** count
        return _fold_raw(params, [unit * c for c in z_plus2_pow_in_e(count + 1)])
    if color == "omega":
        om = [params.eta * dim for dim in params.dims]
        om += [ctx.zero] * (params.p - 1 - params.d)
        out = [ctx.one] + [ctx.zero] * (params.p - 2)
        for _ in range(count):
            out = _annulus_product(params, out, om)
        return out
    raise ValueError(f"unknown color {color!r}; pick one of {COLORS}")


def _conj_cable(cable: list[CycNum]) -> list[CycNum]:
    # the e_i are real; conjugation touches coefficients only
    return [c.conj() for c in cable]


_split_cache: dict[tuple[int, int, int], CycNum] = {}
_fusion_cache: dict[tuple[int, int, int, int, int], CycNum] = {}


def _arm_split(params: TQFTParams, m: int, c: int) -> CycNum:
    """Two parallel m-strands along an arm: channel c carries <c>/theta(m,m,c).

    The top channel c = 2m has weight exactly one."""
    key = (params.p, m, c)
    got = _split_cache.get(key)
    if got is None:
        ctx = params.ctx
        got = quantum_dim_at(ctx, c) * ctx.inv(theta_at(ctx, m, m, c))
        _split_cache[key] = got
    return got


def _loop_fusion(params: TQFTParams, a: int, m: int, c: int, s: int) -> CycNum:
    """e_a alongside a loop colored m that carries an arm c: channel s weight.

    <s>/theta(a,m,s) opens the pair into channel s; the tetrahedral symbol
    slides the arm across and theta(s,s,c) renormalizes its attachment.  With
    no arm (c = 0) the tetrahedron degenerates to theta(a,m,s) and the weight
    is 1, matching plain annulus fusion."""
    key = (params.p, a, m, c, s)
    got = _fusion_cache.get(key)
    if got is None:
        ctx = params.ctx
        num = quantum_dim_at(ctx, s) * tet_at(ctx, a, s, m, c, m, s)
        den = theta_at(ctx, a, m, s) * theta_at(ctx, s, s, c)
        got = num * ctx.inv(den)
        _fusion_cache[key] = got
    return got


def _fold_unit(params: TQFTParams, s: int, c: int) -> CycNum:
    """Coefficient folding a loop color s > d-1 down to p-2-s.

    A companion loop colored p-2 equals e_0 in the module, and fusing it with
    the s-loop admits the single channel p-2-s; its weight is a unit."""
    return _loop_fusion(params, params.p - 2, s, c, params.p - 2 - s)


def _fused_loop(params: TQFTParams, cable: list[CycNum], m: int, c: int) -> dict[int, CycNum]:
    """Fuse a class cable onto a loop colored m with arm c; fold channels
    past d-1 back into the small range."""
    p, d = params.p, params.d
    out: dict[int, CycNum] = {}
    for a, xa in enumerate(cable):
        if not xa:
            continue
        for s in range(p - 1):
            if not (p_admissible(p, a, m, s) and p_admissible(p, s, s, c)):
                continue
            coeff = xa * _loop_fusion(params, a, m, c, s)
            if s >= d:
                coeff = coeff * _fold_unit(params, s, c)
                s = p - 2 - s
            acc = out.get(s)
            out[s] = coeff if acc is None else acc + coeff
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# expanding arrangements over the graph basis


def expand_arrangement(
    params: TQFTParams, arr: CurveArrangement, color: str = "z"
) -> dict[Coloring2, CycNum]:
    """Graph-basis coordinates of a colored genus-2 arrangement.

    The both-holes cable is split along the arm, then each single-hole cable
    fuses onto its loop.  For z and v the arrangement bounds keep every
    channel below d and the result is supported under the lead coloring with
    the lead coefficient a unit; omega-colored cables reach higher colors and
    fold back, and no triangularity is claimed for them.
    """
    if arr.genus != 2:
        raise ValueError("expansion over the dumbbell basis needs genus 2")
    p = params.p
    xc = _class_cable(params, color, arr.alpha)
    yc = _class_cable(params, color, arr.beta)
    zc = _class_cable(params, color, arr.gamma)
    out: dict[Coloring2, CycNum] = {}
    for m, zm in enumerate(zc):
        if not zm:
            continue
        for c in range(0, p - 2, 2):
            if not p_admissible(p, m, m, c):
                continue
            w = zm * _arm_split(params, m, c)
            left = _fused_loop(params, xc, m, c)
            right = _fused_loop(params, yc, m, c)
            for s, cs in left.items():
                ws = w * cs
                for t, ct in right.items():
                    key = (s, t, c)
                    term = ws * ct
                    acc = out.get(key)
                    out[key] = term if acc is None else acc + term
    return {k: v for k, v in out.items() if v}


def expansion_matrix_genus2(params: TQFTParams, color: str = "z") -> Matrix:
    """Rows: arrangements; columns: graph colorings, both in their lex order."""
    cols = {col: n for n, col in enumerate(graph_colorings_genus2(params.p))}
    mat = []
    for arr in arrangement_set_genus2(params.p):
        row = [params.ctx.zero] * len(cols)
        for key, val in expand_arrangement(params, arr, color).items():
            row[cols[key]] = val
        mat.append(row)
    return mat


def triangular_certificate_genus2(params: TQFTParams, color: str = "z") -> dict:
    """Support bound and lead coefficient of the expansion, as a certificate.

    Claim: every coloring in the support of an arrangement is componentwise
    at most its lead coloring, and the lead coefficient is 1 for z-colored
    curves and (1+A)^-n for v-colored ones (n = curve count).  Componentwise
    dominance implies lex dominance, so the matrix over the shared order is
    triangular with unit diagonal.
    """
    if color not in ("z", "v"):
        raise ValueError("triangularity is claimed for z and v cables only")
    ctx = params.ctx
    inv1a = ctx.inv(ctx.one + ctx.A)
    support_ok = True
    diagonal_ok = True
    for arr in arrangement_set_genus2(params.p):
        li, lj, lk = arr.lead_coloring()
        coords = expand_arrangement(params, arr, color)
        for (i, j, k) in coords:
            if i > li or j > lj or k > lk:
                support_ok = False
        want = ctx.one if color == "z" else inv1a ** arr.curve_count
        if coords.get((li, lj, lk)) != want:
            diagonal_ok = False
    ok = support_ok and diagonal_ok
    return {
        "claim": "arrangement expansion is unit-triangular over the graph basis",
        "p": params.p,
        "color": color,
        "support_ok": support_ok,
        "diagonal_ok": diagonal_ok,
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# the pairing: projection closed form and state-sum oracle


def pairing_closed_genus2(
    params: TQFTParams, x: CurveArrangement, y: CurveArrangement, color: str = "z"
) -> CycNum:
    """(X, Y) = D^2 sum_{m<d} P_m Q_m R_m / <m>, conjugate-linear in Y.

    P, Q, R are the reduced annulus products of the paired class cables
    around hole 0, hole 1, and both holes, folded into the small range by
    e_r = e_{p-2-r}: the color p-2 has dimension one and a parallel copy of
    it is invisible, and e_{p-2} e_r = e_{p-2-r} on the nose (the fold keeps
    <m> because <p-2-r> = <r>).  A meridian around two small-colored cables
    keeps only their matching channel, which forces the folded colors equal
    and leaves D^2/<m> once both meridians have fired."""
    if x.genus != 2 or y.genus != 2:
        raise ValueError("this closed form is the genus-2 pairing")
    ctx = params.ctx
    acc = ctx.zero
    pq = []
    for count_x, count_y in ((x.alpha, y.alpha), (x.beta, y.beta), (x.gamma, y.gamma)):
        fx = _class_cable(params, color, count_x)
        fy = _conj_cable(_class_cable(params, color, count_y))
        pq.append(_fold_transparent(params, _annulus_product(params, fx, fy)))
    for m in range(params.d):
        term = pq[0][m] * pq[1][m] * pq[2][m]
        if term:
            acc = acc + term * ctx.inv(quantum_dim_at(params.ctx, m))
    return params.D * params.D * acc


def _fold_transparent(params: TQFTParams, cable: list[CycNum]) -> list[CycNum]:
    """Fold an annulus element over e_r = e_{p-2-r} into colors 0..d-1."""
    return [cable[m] + cable[params.p - 2 - m] for m in range(params.d)]


def gram_closed_genus2(params: TQFTParams, color: str = "z") -> Matrix:
    arrs = arrangement_set_genus2(params.p)
    return _hermitian_fill(
        len(arrs), lambda i, j: pairing_closed_genus2(params, arrs[i], arrs[j], color)
    )


def _hermitian_fill(n: int, entry) -> Matrix:
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = entry(i, j)
            out[i][j] = val
            if i != j:
                out[j][i] = val.conj()
    return out


def _gram_from_rows(
    params: TQFTParams, rows: list[dict], norms: dict
) -> Matrix:
    """Gram_ij = sum_tau row_i[tau] norm_tau conj(row_j[tau])."""
    ctx = params.ctx

    def entry(i: int, j: int) -> CycNum:
        acc = ctx.zero
        for tau, a in rows[i].items():
            b = rows[j].get(tau)
            if b is not None:
                acc = acc + a * norms[tau] * b.conj()
        return acc

    return _hermitian_fill(len(rows), entry)


def _curve_z_terms(params: TQFTParams, color: str) -> dict[int, CycNum]:
    """One colored curve as a polynomial in its own core: degree -> weight."""
    ctx = params.ctx
    if color == "z":
        return {1: ctx.one}
    if color == "v":
        inv1a = ctx.inv(ctx.one + ctx.A)
        return {0: inv1a + inv1a, 1: inv1a}
    if color == "omega":
        return omega(params).coords_z()
    raise ValueError(f"unknown color {color!r}; pick one of {COLORS}")


def _arrangement_z_terms(
    params: TQFTParams, arr: CurveArrangement, color: str
) -> list[tuple[tuple[tuple[int, ...], ...], CycNum]]:
    """All ways to resolve the colored curves into parallel plain cores.

    A degree-k term puts k parallel copies of the curve's hole subset among
    the cores; the weights multiply across curves."""
    base = _curve_z_terms(params, color)
    items: list[tuple[tuple[tuple[int, ...], ...], CycNum]] = [((), params.ctx.one)]
    for s in arr.curves:
        subset = tuple(sorted(s))
        items = [
            (cores + (subset,) * k, coeff * ck)
            for cores, coeff in items
            for k, ck in base.items()
        ]
    return [(tuple(sorted(cores)), coeff) for cores, coeff in items]


def gram_bracket(
    params: TQFTParams,
    arrangements: list[CurveArrangement],
    color: str = "z",
    max_crossings: int | None = None,
) -> Matrix:
    """Honest Gram matrix: one omega-cabled meridian circle per hole, the
    resolved cores of X and conj(Y) threading their hole subsets.

    Conjugating Y mirrors its curves, which leaves the planar diagram alone
    and conjugates only coefficients.  Distinct entries share one bracket
    cache keyed by circle widths and the multiset of core subsets."""
    genus = arrangements[0].genus
    assert all(arr.genus == genus for arr in arrangements)
    ctx = params.ctx
    coeffs = RootCoeffs(ctx)
    om_z = sorted(omega(params).coords_z().items())
    terms = [_arrangement_z_terms(params, arr, color) for arr in arrangements]
    cache: dict[tuple, CycNum] = {}

    def entry(i: int, j: int) -> CycNum:
        total = ctx.zero
        for widths in itertools.product(om_z, repeat=genus):
            wc = ctx.one
            for _, c in widths:
                wc = wc * c
            wkey = tuple(w for w, _ in widths)
            for cores_x, cx in terms[i]:
                for cores_y, cy in terms[j]:
                    key = (wkey, tuple(sorted(cores_x + cores_y)))
                    got = cache.get(key)
                    if got is None:
                        diag = necklace_pd(list(wkey), [list(s) for s in key[1]])
                        got = kauffman_bracket(diag, coeffs, max_crossings)
                        cache[key] = got
                    total = total + wc * cx * cy.conj() * got
        return total

    return _hermitian_fill(len(arrangements), entry)


# ---------------------------------------------------------------------------
# determinant reports


@dataclass(frozen=True)
class HigherGramReport:
    """Gram determinant certificate for one basis of a handlebody module.

    rank_term is the valuation (d-1) * genus * rank of the graph Gram;
    base_change_valuation is twice the valuation of the change-of-basis
    determinant.  Their sum must equal the observed associate exponent, and
    unimodular records whether the determinant is a unit outright.
    """

    p: int
    genus: int
    basis: str
    color: str | None
    rank: int
    curve_total: int
    rank_term: int
    base_change_valuation: int
    associate_exponent: int
    unit_cofactor: bool
    unimodular: bool
    plus_subring: bool | None
    det: CycNum = field(repr=False)
    gram: tuple = field(repr=False)

    @property
    def expected_exponent(self) -> int:
        return self.rank_term + self.base_change_valuation

    def to_json(self, include_gram: bool = False) -> dict:
        out = {
            "p": self.p,
            "genus": self.genus,
            "basis": self.basis,
            "color": self.color,
            "rank": self.rank,
            "curve_total": self.curve_total,
            "rank_term": self.rank_term,
            "base_change_valuation": self.base_change_valuation,
            "expected_exponent": self.expected_exponent,
            "associate_exponent": self.associate_exponent,
            "unit_cofactor": self.unit_cofactor,
            "unimodular": self.unimodular,
            "plus_subring": self.plus_subring,
            "det": self.det.to_json(),
        }
        if include_gram:
            out["gram"] = [[x.to_json() for x in row] for row in self.gram]
        return out


def _det_at(params: TQFTParams, mat: Matrix) -> CycNum:
    ctx = params.ctx
    return determinant(mat, ctx.zero, lambda u, w: u * ctx.inv(w))


def _certified_report(
    params: TQFTParams,
    genus: int,
    basis: str,
    color: str | None,
    gram: Matrix,
    curve_total: int,
    rank_term: int,
    base_change_valuation: int,
    plus_subring: bool | None,
) -> HigherGramReport:
    det = _det_at(params, gram)
    if det.is_zero():
        raise DegeneracyError(f"singular Gram matrix for basis {basis}")
    cert = associate_certificate(
        params, det, f"genus-{genus} gram determinant", basis
    )
    expected = rank_term + base_change_valuation
    if not cert["ok"] or cert["associate_exponent"] != expected:
        raise RefutationError(
            f"{basis} gram determinant is not associate to (1-q)^{expected}: "
            f"exponent {cert['associate_exponent']}, unit cofactor {cert['ok']}"
        )
    return HigherGramReport(
        p=params.p,
        genus=genus,
        basis=basis,
        color=color,
        rank=len(gram),
        curve_total=curve_total,
        rank_term=rank_term,
        base_change_valuation=base_change_valuation,
        associate_exponent=cert["associate_exponent"],
        unit_cofactor=cert["ok"],
        unimodular=bool(cert["unit"]),
        plus_subring=plus_subring,
        det=det,
        gram=tuple(tuple(row) for row in gram),
    )


def gram_genus2(p: int, basis: str = "A") -> HigherGramReport:
    """Gram determinant certificate in genus 2.

    Bases: "G" the graph basis (diagonal, exponent 2(d-1)r); "A" plain curve
    arrangements (unit-triangular over G, same exponent); "Av" v-colored
    arrangements (diagonal picks up (1+A)^-n per arrangement and the
    determinant is a unit).  For A and Av the expansion route through the
    graph basis must agree entrywise with the projection closed form.
    """
    params = TQFTParams(p)
    arrs = arrangement_set_genus2(p)
    cols = graph_colorings_genus2(p)
    rank = len(arrs)
    curve_total = sum(arr.curve_count for arr in arrs)
    rank_term = (params.d - 1) * 2 * rank
    norms = {col: graph_norm_genus2(params, *col) for col in cols}
    if basis == "G":
        gram = _hermitian_fill(
            rank, lambda i, j: norms[cols[i]] if i == j else params.ctx.zero
        )
        return _certified_report(params, 2, basis, None, gram, curve_total, rank_term, 0, None)
    if basis not in ("A", "Av"):
        raise ValueError(f"unknown basis {basis!r}; pick G, A, or Av")
    color = "z" if basis == "A" else "v"
    rows = [expand_arrangement(params, arr, color) for arr in arrs]
    gram = _gram_from_rows(params, rows, norms)
    if not mat_eq(gram, gram_closed_genus2(params, color)):
        raise RefutationError(
            "genus-2 gram: graph expansion disagrees with the projection closed form"
        )
    base_change = 0 if basis == "A" else -2 * curve_total
    return _certified_report(
        params, 2, basis, color, gram, curve_total, rank_term, base_change, None
    )


def _subset_transform(params: TQFTParams, arrs: list[CurveArrangement], color: str) -> Matrix:
    """Coordinates of colored arrangements over plain ones, for
    multiplicity-free families closed under removing curves.

    A v-curve is ((curve) + 2) / (1+A); an omega-curve needs d = 2 and is
    the plus-normalized surgery cable (-i) eta (e_0 + <1> e_1).  The -i
    matters: eta = 1/D carries one factor of i (only i D lies in the
    q-subring), so a bare omega cable pushes every odd-curve-count pairing
    off that subring, while -i eta is an honest q-subring fraction."""
    ctx = params.ctx
    for arr in arrs:
        if any(arr.multiplicity(s) > 1 for s in arr.curves):
            raise ValueError("subset transform needs multiplicity-free arrangements")
    if color == "v":
        inv1a = ctx.inv(ctx.one + ctx.A)
        kept, dropped = inv1a, inv1a + inv1a
    elif color == "omega":
        if params.d != 2:
            raise ValueError("omega-colored curves stay single strands only at d = 2")
        eta_plus = ctx.i_power(3) * params.eta
        kept = eta_plus * quantum_dim_at(ctx, 1)
        dropped = eta_plus
    else:
        raise ValueError(f"no subset transform for color {color!r}")
    index = {frozenset_key(arr): n for n, arr in enumerate(arrs)}
    out = [[ctx.zero] * len(arrs) for _ in arrs]
    for i, arr in enumerate(arrs):
        curves = set(arr.curves)
        for r in range(len(arr.curves) + 1):
            for sub in itertools.combinations(sorted(curves, key=sorted), r):
                j = index[tuple(sorted(tuple(sorted(s)) for s in sub))]
                out[i][j] = kept ** r * dropped ** (len(curves) - r)
    return out


def frozenset_key(arr: CurveArrangement) -> tuple:
    return tuple(sorted(tuple(sorted(s)) for s in arr.curves))


def genus3_p5_report(color: str = "v") -> HigherGramReport:
    """Genus-3 Gram certificate at p = 5 over the index-two real subring.

    The 15 arrangements pair through the state sum; the triangular recolor
    to v or omega curves and the twist by i (one factor per odd genus) land
    every entry in the real subring Z[zeta_5].  The determinant must be a
    nonunit of valuation exactly one: 45 from the graph norms minus 44 from
    the 22 recolored curves on each side.  The factorization is checked on
    the spot: the unit-lower-triangular Cholesky factor of the plain Gram
    must reproduce the closed-form wheel norms on its diagonal.
    """
    if color not in ("v", "omega"):
        raise ValueError(f"recoloring needs v or omega, got {color!r}")
    params = TQFTParams(5)
    ctx = params.ctx
    arrs = arrangement_set_genus3()
    curve_total = sum(arr.curve_count for arr in arrs)
    gram_plain = gram_bracket(params, arrs, "z")
    _, diag = ldl_decomposition(gram_plain, ctx.one, ctx.zero, ctx.inv, lambda v: v.conj())
    norms = [graph_norm_genus3(params, *arr.lead_coloring()) for arr in arrs]
    if diag != norms:
        raise RefutationError(
            "genus-3 gram: Cholesky diagonal disagrees with the wheel norms"
        )
    trans = _subset_transform(params, arrs, color)
    n = len(arrs)
    half = [[_dot_row(ctx, trans[i], gram_plain, k) for k in range(n)] for i in range(n)]
    gram_col = [
        [_dot_conj(ctx, half[i], trans[j]) for j in range(n)] for i in range(n)
    ]
    tw = ctx.i_power(1)  # one factor of i per odd genus
    twisted = map_entries(lambda v: v * tw, gram_col)
    plus_ok = all(v.in_plus_subring() for row in twisted for v in row)
    rank_term = (params.d - 1) * 3 * n
    base_change = -2 * curve_total
    return _certified_report(
        params, 3, "A" + color, color, twisted, curve_total, rank_term,
        base_change, plus_ok,
    )


def _dot_row(ctx, coeffs: list[CycNum], mat: Matrix, k: int) -> CycNum:
    acc = ctx.zero
    for t, c in enumerate(coeffs):
        if c:
            acc = acc + c * mat[t][k]
    return acc


def _dot_conj(ctx, row: list[CycNum], coeffs: list[CycNum]) -> CycNum:
    acc = ctx.zero
    for t, c in enumerate(coeffs):
        if c:
            acc = acc + row[t] * c.conj()
    return acc


def non_unimodular_witness(p: int, genus: int, report: HigherGramReport) -> dict | None:
    """Parity obstruction to a unimodular basis, or None when there is none.

    Any two bases differ by a change with determinant contributing an even
    valuation (the factor and its conjugate), so every basis Gram
    determinant has valuation congruent to rank_term mod 2.  Odd rank_term
    therefore rules out unit determinants outright, and the report's odd
    exponent is the concrete witness.  A claimed odd instance whose report
    shows an even exponent is a refutation, not a witness.
    """
    if report.p != p or report.genus != genus:
        raise ValueError("report does not match the claimed instance")
    if report.rank_term % 2 == 0:
        return None
    if report.associate_exponent % 2 == 0:
        raise RefutationError(
            "odd-parity instance produced an even determinant valuation"
        )
    return {
        "claim": "no basis of this module has a unit Gram determinant",
        "p": p,
        "genus": genus,
        "basis": report.basis,
        "gram_valuation": report.associate_exponent,
        "parity_anchor": report.rank_term,
        "ok": True,
    }
