"""Skein module of the solid torus as the polynomial ring R[z].

The twist eigenbasis e_0 = 1, e_1 = z, e_i = z e_{i-1} - e_{i-2} carries
eigenvalues mu_i = (-1)^i A^(i^2+2i).  The module tracks three bases of the
same space: powers of z, the e_i, and powers of v = (z+2)/(1+A).  The twist
map preserves the integral span of the v-powers; the certifying polynomials

    S_{m,i,n}(A) = (1/n) sum_{k=i}^n k^m C(2n, n-k) C(k+i-1, k-i) A^(k^2)

are divisible by (1+A)^(n-i), which is what makes the twist matrix in the
v-basis integral.  The twist-square variant replaces A by q, inserts a sign
(-1)^k in the sum, and localizes at (1-q); under the formal substitution
q -> -A it coincides with the plain story, which gives a free cross-check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .laurent import A, ONE_PLUS_A, IntLaurent, LocLaurent
from .matrices import Matrix


@lru_cache(maxsize=None)
def e_poly(i: int) -> IntLaurent:
    """e_i written in powers of z (IntLaurent reused as a z-polynomial)."""
    if i == 0:
        return IntLaurent(1)
    if i == 1:
        return IntLaurent({1: 1})
    return e_poly(i - 1).shift(1) - e_poly(i - 2)


@lru_cache(maxsize=None)
def z_power_in_e(k: int) -> tuple[int, ...]:
    """Coefficients of e_0..e_k in z^k."""
    if k == 0:
        return (1,)
    prev = z_power_in_e(k - 1)
    c = lambda j: prev[j] if 0 <= j < k else 0
    return tuple(c(j - 1) + c(j + 1) for j in range(k + 1))


def z_poly_to_e(coeffs: dict[int, object], zero: object) -> list[object]:
    """Expand a z-polynomial with arbitrary ring coefficients in the e-basis."""
    if not coeffs:
        return []
    top = max(coeffs)
    out = [zero] * (top + 1)
    for deg, c in coeffs.items():
        row = z_power_in_e(deg)
        for j, m in enumerate(row):
            if m:
                out[j] = out[j] + m * c
    return out


def e_to_z_poly(coeffs: list[object]) -> dict[int, object]:
    out: dict[int, object] = {}
    for j, c in enumerate(coeffs):
        for deg, m in e_poly(j).c.items():
            if deg in out:
                out[deg] = out[deg] + m * c
            else:
                out[deg] = m * c
    return out


def e_product_in_e(i: int, j: int) -> dict[int, int]:
    """e_i e_j expanded in the e-basis; all coefficients are 0 or 1."""
    prod = e_poly(i) * e_poly(j)
    vec = z_poly_to_e(dict(prod.c), 0)
    return {k: v for k, v in enumerate(vec) if v}


def z_plus2_pow_in_e(n: int) -> list[int]:
    """(z+2)^(n-1) = sum_{k=1}^n C(2n, n-k) (k/n) e_{k-1}; the list is the
    e_0..e_{n-1} coefficient vector and every entry is an integer."""
    out = []
    for k in range(1, n + 1):
        c = Fraction(math.comb(2 * n, n - k) * k, n)
        assert c.denominator == 1
        out.append(int(c))
    return out


def e_in_z_plus2(n: int) -> list[int]:
    """e_{n-1} = sum_{i=1}^n (-1)^(n-i) C(n+i-1, n-i) (z+2)^(i-1)."""
    return [(-1) ** (n - i) * math.comb(n + i - 1, n - i) for i in range(1, n + 1)]


def s_poly(m: int, i: int, n: int) -> IntLaurent:
    """S_{m,i,n}(A), assembled term by term with exact integer coefficients."""
    if not (1 <= i <= n and m >= 1):
        raise ValueError("need 1 <= i <= n and m >= 1")
    out = IntLaurent()
    for k in range(i, n + 1):
        c = Fraction(k ** m * math.comb(2 * n, n - k) * math.comb(k + i - 1, k - i), n)
        assert c.denominator == 1
        out = out + IntLaurent.monomial(int(c), k * k)
    return out


def s_tilde_poly(m: int, i: int, n: int) -> IntLaurent:
    """Twist-square variant: variable q, extra sign (-1)^k in the sum."""
    if not (1 <= i <= n and m >= 1):
        raise ValueError("need 1 <= i <= n and m >= 1")
    out = IntLaurent()
    for k in range(i, n + 1):
        c = Fraction(
            (-1) ** k * k ** m * math.comb(2 * n, n - k) * math.comb(k + i - 1, k - i),
            n,
        )
        assert c.denominator == 1
        out = out + IntLaurent.monomial(int(c), k * k)
    return out


def twist_eigenvalue(i: int) -> IntLaurent:
    """mu_i = (-1)^i A^(i^2 + 2i)."""
    return IntLaurent.monomial((-1) ** i, i * i + 2 * i)


def twist_sq_eigenvalue(i: int) -> IntLaurent:
    """Eigenvalue of the squared twist on e_i, written in the variable q."""
    return IntLaurent.monomial(1, (i * i + 2 * i))


def v_in_e_matrix(size: int) -> Matrix:
    """Columns are v^j in the e-basis, entries in the localization at 1+A.

    Upper triangular with diagonal (1+A)^-j, hence invertible over the
    localized ring.
    """
    cols = [z_plus2_pow_in_e(j + 1) for j in range(size)]
    return [
        [
            LocLaurent(IntLaurent(cols[j][k]), j) if k <= j else LocLaurent(0)
            for j in range(size)
        ]
        for k in range(size)
    ]


def twist_matrix_v(size: int) -> Matrix:
    """Matrix of the twist in the basis 1, v, .., v^(size-1); the divisibility
    of S_{1,i,n} by (1+A)^(n-i) makes every entry land in Z[A, A^-1]."""
    out = [[IntLaurent() for _ in range(size)] for _ in range(size)]
    for c in range(size):
        for r in range(c + 1):
            w = LocLaurent(s_poly(1, r + 1, c + 1), c - r)
            entry = w.as_int_laurent().shift(-1)
            out[r][c] = entry if r % 2 == 0 else -entry
    return out


def twist_sq_matrix_vtilde(size: int) -> Matrix:
    """Matrix of the squared twist in the basis of powers of (z+2)/(1-q),
    written in the variable q.  Built from the variant polynomials; the
    localization at (1-q) is carried out through the substitution q -> -A."""
    out = [[IntLaurent() for _ in range(size)] for _ in range(size)]
    for c in range(size):
        for r in range(c + 1):
            s_t = s_tilde_poly(1, r + 1, c + 1)
            w = LocLaurent(s_t.substitute_negate(), c - r)
            entry = w.as_int_laurent().substitute_negate().shift(-1)
            out[r][c] = entry if r % 2 else -entry
    return out
