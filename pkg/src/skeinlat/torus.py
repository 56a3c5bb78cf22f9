"""The solid-torus skein module at a root of unity, rank d = (p-1)/2.

Specializing A and passing to the quotient of R[z] by e_{p-1} = 0 and the
folding e_{d+i} = e_{d-1-i} leaves the free module on e_0 .. e_{d-1}.  On it
live the twist t (diagonal with eigenvalues mu_i), the surgery element
omega = eta sum <e_i> e_i, the bilinear Hopf pairing H_ij =
(-1)^(i+j) [(i+1)(j+1)], and a Hermitian form with (e_i, e_j) = D delta_ij.

The form has a diagrammatic definition: put x and the conjugate of y on
parallel cores of a standardly embedded solid torus and one omega-colored
zero-framed meridian around them, then take the bracket of the whole link.
An omega-colored meridian kills every e_c with 0 < c <= 2d-2 threading it
and scales e_0 by D, so the definition collapses to D times the
e_0-coefficient of the product x conj(y); the closed forms here all come
from that projection rule, and pairing_bracket runs the honest state sum so
the two routes can be compared.

Certificates report a determinant together with its (1-q)-valuation and the
unit cofactor test, never a bare boolean.
"""

from __future__ import annotations

import math

from .annulus import twist_eigenvalue, twist_matrix_v, z_plus2_pow_in_e, z_poly_to_e, e_to_z_poly
from .bracket import RootCoeffs, kauffman_bracket, necklace_pd
from .cyclotomic import CycContext, CycNum
from .laurent import IntLaurent
from .matrices import (
    Matrix,
    determinant,
    diagonal,
    identity,
    map_entries,
    mat_eq,
    mat_inverse,
    mat_mul,
    transpose,
)
from .recoupling import qint, quantum_dim_at


class RefutationError(ArithmeticError):
    """A mandated cross-check failed: two routes to the same object disagree."""


class DegeneracyError(ArithmeticError):
    """A matrix that must be nonsingular turned out singular."""


class TQFTParams:
    """Constants of the theory at one odd prime p.

    D is the square root of -p/(q - q^-1)^2 built from the quadratic Gauss
    sum g = sum (k|p) q^k; for p = 1 mod 4, where g^2 = +p, a fourth root of
    unity is thrown in.  The sign of D is a convention and nothing downstream
    can see it: omega carries the compensating eta = D^-1.
    """

    def __init__(self, p: int):
        ctx = CycContext(p)
        self.ctx = ctx
        self.p = p
        self.d = ctx.d
        self.A = ctx.A
        self.q = ctx.q
        gauss = ctx.zero
        for k in range(1, p):
            leg = 1 if pow(k, self.d, p) == 1 else -1
            gauss = gauss + leg * ctx.q_pow(k)
        if p % 4 == 1:
            gauss = gauss * ctx.i_power(1)
        qdiff = ctx.q_pow(1) - ctx.q_pow(-1)
        self.D = gauss * ctx.inv(qdiff)
        self.eta = ctx.inv(self.D)
        half = (p + 1) // 2
        kappa = ctx.A_pow(-3) * ctx.i_power(half)
        self.kappa = -kappa if half % 2 else kappa
        self.dims = [quantum_dim_at(ctx, i) for i in range(self.d)]
        assert self.D * self.eta == ctx.one
        assert self.D.conj() == self.D
        assert self.D * self.D * qdiff * qdiff == ctx.from_int(-p)
        assert self.kappa * self.kappa == ctx.A_pow(-6 - p * (p + 1) // 2)
        total = ctx.zero
        for dim in self.dims:
            total = total + dim * dim
        assert total == self.D * self.D

    def mu(self, i: int) -> CycNum:
        """Twist eigenvalue (-1)^i A^(i^2+2i) on e_i."""
        return self.ctx.from_A_laurent(twist_eigenvalue(i))

    def __repr__(self) -> str:
        return f"TQFTParams(p={self.p})"


class TorusVector:
    """Element of the quotient module, coordinates over e_0 .. e_{d-1}."""

    __slots__ = ("params", "coords")

    def __init__(self, params: TQFTParams, coords):
        coords = tuple(coords)
        if len(coords) != params.d:
            raise ValueError(f"need {params.d} coordinates, got {len(coords)}")
        self.params = params
        self.coords = coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusVector):
            return NotImplemented
        return self.params.p == other.params.p and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.params.p, self.coords))

    def __add__(self, other: "TorusVector") -> "TorusVector":
        assert self.params.p == other.params.p
        return TorusVector(
            self.params, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other: "TorusVector") -> "TorusVector":
        return self + (-other)

    def __neg__(self) -> "TorusVector":
        return TorusVector(self.params, [-a for a in self.coords])

    def scale(self, c: CycNum | int) -> "TorusVector":
        return TorusVector(self.params, [a * c for a in self.coords])

    def conj(self) -> "TorusVector":
        """Coefficient conjugation; the e_i themselves are real."""
        return TorusVector(self.params, [a.conj() for a in self.coords])

    def is_integral(self) -> bool:
        return all(a.is_integral() for a in self.coords)

    def z_action(self) -> "TorusVector":
        """Multiply by z: e_i -> e_{i-1} + e_{i+1}, with e_d folding back to
        e_{d-1}."""
        ctx, d = self.params.ctx, self.params.d
        out = [ctx.zero] * d
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i > 0:
                out[i - 1] = out[i - 1] + c
            j = i + 1 if i + 1 < d else d - 1
            out[j] = out[j] + c
        return TorusVector(self.params, out)

    def twist(self, j: int = 1) -> "TorusVector":
        """t^j, diagonal: coordinate i picks up mu_i^j."""
        ctx = self.params.ctx
        out = []
        for i, c in enumerate(self.coords):
            m = ctx.A_pow((i * i + 2 * i) * j)
            if i % 2 and j % 2:
                m = -m
            out.append(c * m)
        return TorusVector(self.params, out)

    def coords_z(self) -> dict[int, CycNum]:
        """The same element written in powers of z (degrees below d)."""
        poly = e_to_z_poly(list(self.coords))
        return {k: v for k, v in poly.items() if v}

    def __repr__(self) -> str:
        return f"TorusVector(p={self.params.p}, {list(self.coords)!r})"


def reduce_e(params: TQFTParams, raw) -> TorusVector:
    """Fold a raw e-expansion into the quotient.

    Keeps k < d, reflects d <= k <= 2d-1 onto e_{2d-1-k}, drops k = p-1.
    Raw degrees beyond p-1 never arise from products of reduced elements and
    are rejected.
    """
    ctx, d = params.ctx, params.d
    out = [ctx.zero] * d
    for k, c in enumerate(raw):
        if isinstance(c, int):
            c = ctx.from_int(c)
        if k < d:
            out[k] = out[k] + c
        elif k < 2 * d:
            out[2 * d - 1 - k] = out[2 * d - 1 - k] + c
        elif k == 2 * d:
            continue
        else:
            raise ValueError(f"raw degree {k} is beyond e_{{p-1}}")
    return TorusVector(params, out)


def reduce_skein(params: TQFTParams, z_coeffs: dict[int, object]) -> TorusVector:
    """Image of an annulus element given in powers of z.

    Coefficients may be ints, A-Laurent polynomials, or CycNum.
    """
    ctx = params.ctx
    conv: dict[int, CycNum] = {}
    for k, c in z_coeffs.items():
        if isinstance(c, int):
            c = ctx.from_int(c)
        elif isinstance(c, IntLaurent):
            c = ctx.from_A_laurent(c)
        conv[k] = c
    return reduce_e(params, z_poly_to_e(conv, ctx.zero))


def basis_e(params: TQFTParams) -> list[TorusVector]:
    ctx, d = params.ctx, params.d
    return [
        TorusVector(params, [ctx.one if j == i else ctx.zero for j in range(d)])
        for i in range(d)
    ]


def omega(params: TQFTParams, cross_check: bool = False) -> TorusVector:
    """omega = eta sum <e_i> e_i, the element that implements surgery.

    With cross_check the eigenvector product construction must reproduce it.
    """
    out = TorusVector(params, [params.eta * dim for dim in params.dims])
    if cross_check and out != omega_product(params):
        raise RefutationError("omega: product construction disagrees with the sum")
    return out


def omega_product(params: TQFTParams) -> TorusVector:
    """omega as D times the projector onto the top z-eigenvector.

    z acts on the quotient with simple spectrum lam_i = -q^(i+1) - q^(-i-1),
    so D prod_{i>=1} (z - lam_i)/(lam_0 - lam_i) applied to e_0 lands on the
    lam_0 eigenline with the same normalization as the defining sum.
    """
    ctx, d = params.ctx, params.d
    lam = [-(ctx.q_pow(i + 1) + ctx.q_pow(-i - 1)) for i in range(d)]
    out = basis_e(params)[0]
    for i in range(1, d):
        out = (out.z_action() - out.scale(lam[i])).scale(ctx.inv(lam[0] - lam[i]))
    return out.scale(params.D)


def basis_omega(params: TQFTParams) -> list[TorusVector]:
    """The twist orbit omega, t(omega), .., t^{d-1}(omega)."""
    om = omega(params)
    return [om.twist(j) for j in range(params.d)]


def basis_v(params: TQFTParams) -> list[TorusVector]:
    """Powers of v = (z+2)/(1+A); triangular integer coordinates over the
    localization, diagonal (1+A)^-j."""
    ctx, d = params.ctx, params.d
    inv1a = ctx.inv(ctx.one + ctx.A)
    out = []
    for j in range(d):
        col = z_plus2_pow_in_e(j + 1)
        unit = inv1a**j
        out.append(
            TorusVector(
                params,
                [col[k] * unit if k <= j else ctx.zero for k in range(d)],
            )
        )
    return out


def w_matrix(params: TQFTParams) -> Matrix:
    """Row j holds the e-coordinates of t^j(omega)."""
    return [list(v.coords) for v in basis_omega(params)]


def v_matrix(params: TQFTParams) -> Matrix:
    """Column j holds the e-coordinates of v^j."""
    return transpose([list(v.coords) for v in basis_v(params)])


# ---------------------------------------------------------------------------
# pairings


def hermitian_pairing(x: TorusVector, y: TorusVector) -> CycNum:
    """(x, y) = D sum_i x_i conj(y_i), conjugate-linear in y.

    The omega-meridian projection rule: the meridian keeps only the
    e_0-component of x conj(y), scaled by D, and the e_0-coefficient of
    e_i e_j is delta_ij.
    """
    params = x.params
    assert params.p == y.params.p
    acc = params.ctx.zero
    for a, b in zip(x.coords, y.coords):
        if a and b:
            acc = acc + a * b.conj()
    return params.D * acc


def pairing_bracket(
    x: TorusVector, y: TorusVector, max_crossings: int | None = None
) -> CycNum:
    """The form as an honest bracket state sum.

    x and conj(y), expanded in z-powers, ride parallel zero-framed cores of
    the solid torus; one omega-cabled meridian encircles them all.  The cost
    is exponential in the z-degrees, so this is the small-p oracle against
    which hermitian_pairing is checked.
    """
    params = x.params
    assert params.p == y.params.p
    ctx = params.ctx
    coeffs = RootCoeffs(ctx)
    cache: dict[tuple[int, int], CycNum] = {}
    total = ctx.zero
    for m, cm in omega(params).coords_z().items():
        for a, ca in x.coords_z().items():
            for b, cb in y.conj().coords_z().items():
                key = (m, a + b)
                got = cache.get(key)
                if got is None:
                    diag = necklace_pd([m], [[0]] * (a + b))
                    got = kauffman_bracket(diag, coeffs, max_crossings)
                    cache[key] = got
                total = total + cm * ca * cb * got
    return total


def hopf_pairing_closed(params: TQFTParams, i: int, j: int) -> CycNum:
    """H_ij = (-1)^(i+j) [(i+1)(j+1)]: the zero-framed Hopf link with its
    components colored e_i and e_j."""
    v = params.ctx.from_q_laurent(qint((i + 1) * (j + 1)))
    return -v if (i + j) % 2 else v


def hopf_matrix(params: TQFTParams) -> Matrix:
    d = params.d
    return [[hopf_pairing_closed(params, i, j) for j in range(d)] for i in range(d)]


def hopf_bracket(
    params: TQFTParams,
    x: TorusVector,
    y: TorusVector,
    max_crossings: int | None = None,
) -> CycNum:
    """Bilinear bracket oracle: the Hopf link cabled by the z-expansions of
    x and y, no conjugation anywhere."""
    ctx = params.ctx
    coeffs = RootCoeffs(ctx)
    cache: dict[tuple[int, int], CycNum] = {}
    total = ctx.zero
    for a, ca in x.coords_z().items():
        for b, cb in y.coords_z().items():
            got = cache.get((a, b))
            if got is None:
                got = kauffman_bracket(
                    necklace_pd([a], [[0]] * b), coeffs, max_crossings
                )
                cache[(a, b)] = got
            total = total + ca * cb * got
    return total


# ---------------------------------------------------------------------------
# Gram matrices and certificates


def gram(basis: list[TorusVector]) -> Matrix:
    """G_ij = (b_i, b_j); Hermitian by construction."""
    return [[hermitian_pairing(x, y) for y in basis] for x in basis]


def e_gram_closed(params: TQFTParams) -> Matrix:
    return diagonal([params.D] * params.d, params.ctx.zero)


def v_gram_closed(params: TQFTParams) -> Matrix:
    """Closed form of the v-basis Gram matrix.

    (v^i, v^j) = D c_{i+j} A^j (1+A)^(-i-j) where c_m is the e_0-coefficient
    of (z+2)^m, the integer binom(2m+2, m)/(m+1); the stray A^j is
    conj(1+A)^-j = A^j (1+A)^-j.  Every entry is an algebraic integer, even
    for i+j >= d where that forces p to divide c_{i+j}.
    """
    ctx, d = params.ctx, params.d
    inv1a = ctx.inv(ctx.one + ctx.A)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            m = i + j
            c = z_plus2_pow_in_e(m + 1)[0]
            assert c == math.comb(2 * m + 2, m) // (m + 1)
            row.append(params.D * c * ctx.A_pow(j) * inv1a**m)
        out.append(row)
    return out


def associate_certificate(
    params: TQFTParams, value: CycNum, claim: str, basis: str | None = None
) -> dict:
    """Factor value as cofactor * (1-q)^exponent and test the cofactor.

    ok means the cofactor is a unit, i.e. (1-q) is the only non-unit content
    of value; unit means value itself is a unit.  Denominators must be
    p-powers (each contributes -(p-1) to the exponent); anything else lands
    in the cofactor and fails the unit test honestly.
    """
    ctx = params.ctx
    if value.is_zero():
        raise DegeneracyError(f"{claim}: value is zero")
    den = value.den
    drop = 0
    while den % ctx.p == 0:
        den //= ctx.p
        drop += ctx.p - 1
    val, _ = (value * value.den).valuation_one_minus_q()
    exponent = val - drop
    w = ctx.inv(ctx.one_minus_q) if exponent >= 0 else ctx.one_minus_q
    cof = value * w ** abs(exponent)
    ok = cof.is_unit()
    return {
        "claim": claim,
        "p": params.p,
        "basis": basis,
        "det": value,
        "associate_exponent": exponent,
        "unit": ok and exponent == 0,
        "ok": ok,
    }


def _det(params: TQFTParams, mat: Matrix) -> CycNum:
    ctx = params.ctx
    return determinant(mat, ctx.zero, lambda u, w: u * ctx.inv(w))


def verify_unimodular(params: TQFTParams, gram_mat: Matrix, basis: str) -> dict:
    """Determinant certificate for a Gram matrix."""
    det = _det(params, gram_mat)
    if det.is_zero():
        raise DegeneracyError("singular Gram matrix")
    return associate_certificate(params, det, "gram determinant", basis)


def det_w_certificate(params: TQFTParams) -> dict:
    """det W over the omega orbit, associate to (1-q)^(-d(d-1)/2)."""
    d = params.d
    expect = -(d * (d - 1) // 2)
    cert = associate_certificate(
        params,
        _det(params, w_matrix(params)),
        f"det W associate to (1-q)^({expect})",
        "omega",
    )
    if not cert["ok"] or cert["associate_exponent"] != expect:
        raise RefutationError(f"det W is not associate to (1-q)^({expect})")
    return cert


def vandermonde_certificate(params: TQFTParams) -> dict:
    """The Vandermonde factor [mu_i^j] of W: its determinant equals
    prod_{i<j} (mu_j - mu_i) and is associate to (1-q)^(d(d-1)/2)."""
    ctx, d = params.ctx, params.d
    mus = [params.mu(i) for i in range(d)]
    mat = [[mus[i] ** j for j in range(d)] for i in range(d)]
    det = _det(params, mat)
    prod = ctx.one
    for j in range(d):
        for i in range(j):
            prod = prod * (mus[j] - mus[i])
    if det != prod:
        raise RefutationError("vandermonde determinant disagrees with the product")
    expect = d * (d - 1) // 2
    cert = associate_certificate(
        params, det, f"vandermonde determinant associate to (1-q)^{expect}", "omega"
    )
    if not cert["ok"] or cert["associate_exponent"] != expect:
        raise RefutationError(
            f"vandermonde determinant is not associate to (1-q)^{expect}"
        )
    return cert


def v_in_omega_span(params: TQFTParams) -> Matrix:
    """Coordinates of the v-powers over the omega orbit.

    Row j solves v^j = sum_k C[j][k] t^k(omega).  C and C^-1 must both be
    integral: that is the equality of the two lattices.
    """
    ctx = params.ctx
    winv = mat_inverse(w_matrix(params), ctx.one, ctx.zero, ctx.inv)
    rows_v = [list(v.coords) for v in basis_v(params)]
    c = mat_mul(rows_v, winv, ctx.zero)
    cinv = mat_inverse(c, ctx.one, ctx.zero, ctx.inv)
    for mat in (c, cinv):
        if any(not x.is_integral() for row in mat for x in row):
            raise RefutationError(
                "v and omega spans differ: non-integral change of basis"
            )
    return c


# ---------------------------------------------------------------------------
# mapping class action


def s_matrix(params: TQFTParams, basis: str = "e") -> Matrix:
    """Matrix of the regluing involution S in the chosen basis.

    In the e-basis S = eta H: S(e_j) = eta sum_i H_ij e_i, and S^2 = 1
    exactly.  The v-basis matrix is the conjugated operator V^-1 S V, and
    every entry must be an algebraic integer; that is the statement that S
    preserves the v-lattice, and it is invisible entrywise (eta H(v^i, v^j)
    alone is not integral).
    """
    ctx = params.ctx
    se = map_entries(lambda h: params.eta * h, hopf_matrix(params))
    if basis == "e":
        return se
    if basis != "v":
        raise ValueError(f"unknown basis {basis!r}")
    vm = v_matrix(params)
    vinv = mat_inverse(vm, ctx.one, ctx.zero, ctx.inv)
    sv = mat_mul(vinv, mat_mul(se, vm, ctx.zero), ctx.zero)
    if any(not x.is_integral() for row in sv for x in row):
        raise RefutationError("S-matrix entries in the v-basis are not integral")
    return sv


def twist_matrix_v_at(params: TQFTParams) -> Matrix:
    """The twist in the v-basis, specialized at the root.

    The symbolic matrix has Z[A, A^-1] entries; here they become integral
    CycNum, and conjugating the eigenvalue matrix by the basis change must
    reproduce them.
    """
    return map_entries(params.ctx.from_A_laurent, twist_matrix_v(params.d))


def form_preserved(gram_mat: Matrix, op: Matrix, zero) -> bool:
    """op^T G conj(op) == G: op is an isometry of the Hermitian form."""
    right = mat_mul(gram_mat, map_entries(lambda x: x.conj(), op), zero)
    return mat_eq(mat_mul(transpose(op), right, zero), gram_mat)


def modular_relation_scalar(params: TQFTParams) -> dict:
    """(ST)^3 against S^2 = 1: the quotient is a unit scalar, recorded here
    rather than normalized away."""
    ctx, d = params.ctx, params.d
    s = s_matrix(params)
    t = diagonal([params.mu(i) for i in range(d)], ctx.zero)
    st = mat_mul(s, t, ctx.zero)
    cube = mat_mul(st, mat_mul(st, st, ctx.zero), ctx.zero)
    lam = cube[0][0]
    scalar_matrix = map_entries(lambda x: x * lam, identity(d, ctx.one, ctx.zero))
    ok = mat_eq(cube, scalar_matrix) and lam.is_unit()
    return {
        "claim": "(S T)^3 is a unit scalar times S^2",
        "p": params.p,
        "scalar": lam,
        "ok": ok,
    }
