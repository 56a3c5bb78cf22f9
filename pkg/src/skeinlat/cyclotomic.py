"""Cyclotomic integer arithmetic for the rings Z[zeta_n], n = 2p or 4p.

For an odd prime p the quantum parameter A is a primitive 2p-th root of
unity and q = A^2.  When p = 3 mod 4 the ring of interest is Z[zeta_2p]
(equal to Z[zeta_p]); when p = 1 mod 4 a fourth root of unity is adjoined
and everything lives in Z[zeta_4p].  Elements are integer coordinate
vectors in the power basis of zeta_n modulo the n-th cyclotomic
polynomial, over a positive integer denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .laurent import IntLaurent, LocLaurent


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quo = [0] * (len(num) - dd)
    for k in range(len(quo) - 1, -1, -1):
        c = num[k + dd]
        if c % lead:
            raise ValueError("not divisible")
        q = c // lead
        quo[k] = q
        if q:
            for j, b in enumerate(den):
                num[k + j] -= q * b
    if any(num):
        raise ValueError("not divisible")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Dense coefficients of Phi_n, low to high, via X^n - 1 = prod Phi_d."""
    if n == 1:
        return (-1, 1)
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = _poly_exact_div(f, list(cyclotomic_poly(d)))
    return tuple(f)


def poly_resultant(f: list[int], g: list[int]) -> int:
    """Resultant of integer polynomials by the subresultant PRS."""
    f = _poly_trim(list(f))
    g = _poly_trim(list(g))
    if not f or not g:
        return 0
    s = 1
    if len(f) < len(g):
        if (len(f) - 1) % 2 and (len(g) - 1) % 2:
            s = -s
        f, g = g, f
    gg = 1
    h = 1
    while len(g) - 1 > 0:
        da, db = len(f) - 1, len(g) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        # pseudo-remainder of lc(g)^(delta+1) * f by g
        r = [c * g[-1] ** (delta + 1) for c in f]
        for k in range(len(r) - db - 1, -1, -1):
            q, rem = divmod(r[k + db], g[-1])
            assert rem == 0
            if q:
                for j, b in enumerate(g):
                    r[k + j] -= q * b
        r = _poly_trim(r[:db])
        if not r:
            return 0
        f, g = g, [c // (gg * h ** delta) for c in r]
        gg = f[-1]
        if delta:
            h = gg ** delta // h ** (delta - 1)
    da = len(f) - 1
    return s * g[0] ** da // h ** (da - 1) if da else s * 1


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


class CycContext:
    """Shared tables for one ring Z[zeta_n], n = 2p (p = 3 mod 4) or 4p."""

    def __init__(self, p: int):
        if not _is_odd_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.d = (p - 1) // 2
        self.n = 2 * p if p % 4 == 3 else 4 * p
        phi_poly = cyclotomic_poly(self.n)
        self.phi = len(phi_poly) - 1
        # A = zeta_n when n = 2p, A = zeta_n^2 when n = 4p; q = A^2
        self.a_exp = 1 if self.n == 2 * p else 2
        # reduction table: zeta_n^j as a basis vector, all j < n
        red: list[tuple[int, ...]] = []
        for j in range(self.phi):
            red.append(tuple(1 if i == j else 0 for i in range(self.phi)))
        top = tuple(-c for c in phi_poly[: self.phi])
        red.append(top)
        for _ in range(self.phi + 1, self.n):
            prev = red[-1]
            row = [0] + list(prev[: self.phi - 1])
            ov = prev[self.phi - 1]
            if ov:
                row = [a + ov * b for a, b in zip(row, top)]
            red.append(tuple(row))
        self._red = red
        self._phi_poly = phi_poly
        self._inv_cache: dict[CycNum, CycNum] = {}
        # exponent of the Galois element cutting out the real-over-q subring:
        # identity when n = 2p, else fixes q and negates the fourth root
        if self.n == 2 * p:
            self.plus_m = 1
        else:
            self.plus_m = next(
                m for m in range(1, self.n, 2) if m % 4 == 3 and m % p == 1
            )
        self.zero = CycNum(self, (0,) * self.phi, 1)
        self.one = self.zeta_pow(0)
        self.A = self.zeta_pow(self.a_exp)
        self.q = self.zeta_pow(2 * self.a_exp)
        self.one_minus_q = self.one - self.q

    def from_int(self, v: int) -> "CycNum":
        vec = [0] * self.phi
        vec[0] = v
        return CycNum(self, tuple(vec), 1)

    def zeta_pow(self, e: int) -> "CycNum":
        return CycNum(self, self._red[e % self.n], 1)

    def A_pow(self, e: int) -> "CycNum":
        return self.zeta_pow(self.a_exp * e)

    def q_pow(self, e: int) -> "CycNum":
        return self.zeta_pow(2 * self.a_exp * e)

    def i_power(self, e: int) -> "CycNum":
        """Power of the primitive fourth root of unity, when it exists here."""
        if self.n == 4 * self.p:
            return self.zeta_pow(self.p * e)
        if e % 2:
            raise ValueError("no fourth root of unity in this ring")
        return self.from_int(-1 if (e // 2) % 2 else 1)

    def from_A_laurent(self, f: IntLaurent) -> "CycNum":
        vec = [0] * self.phi
        for e, v in f.c.items():
            row = self._red[(self.a_exp * e) % self.n]
            for i in range(self.phi):
                vec[i] += v * row[i]
        return CycNum(self, tuple(vec), 1)

    def from_q_laurent(self, f: IntLaurent) -> "CycNum":
        return self.from_A_laurent(f.substitute_power(2))

    def from_A_loc(self, x: LocLaurent) -> "CycNum":
        out = self.from_A_laurent(x.num)
        if x.k:
            out = out * self.inv(self.from_A_laurent(IntLaurent({0: 1, 1: 1}))) ** x.k
        return out

    def inv(self, x: "CycNum") -> "CycNum":
        """Cached field inverse via the product of Galois conjugates."""
        got = self._inv_cache.get(x)
        if got is None:
            got = x.inverse()
            self._inv_cache[x] = got
        return got

    def __repr__(self) -> str:
        return f"CycContext(p={self.p}, n={self.n})"


class CycNum:
    """Element of Q(zeta_n): integer vector over a positive denominator.

    Normalized so gcd of the entries and the denominator is 1, making
    equality structural.
    """

    __slots__ = ("ctx", "vec", "den")

    def __init__(self, ctx: CycContext, vec: tuple[int, ...], den: int = 1):
        if den < 0:
            vec = tuple(-v for v in vec)
            den = -den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den != 1:
            g = den
            for v in vec:
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                vec = tuple(v // g for v in vec)
                den //= g
        if not any(vec):
            den = 1
        self.ctx = ctx
        self.vec = vec
        self.den = den

    def is_zero(self) -> bool:
        return not any(self.vec)

    def __bool__(self) -> bool:
        return any(self.vec)

    def is_integral(self) -> bool:
        return self.den == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.den == other.den and self.vec == other.vec

    def __hash__(self) -> int:
        return hash((self.den, self.vec))

    def __add__(self, other: "CycNum | int") -> "CycNum":
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        da, db = self.den, other.den
        vec = tuple(a * db + b * da for a, b in zip(self.vec, other.vec))
        return CycNum(self.ctx, vec, da * db)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.ctx, tuple(-v for v in self.vec), self.den)

    def __sub__(self, other: "CycNum | int") -> "CycNum":
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "CycNum":
        return self.ctx.from_int(other) + (-self)

    def __mul__(self, other: "CycNum | int") -> "CycNum":
        if isinstance(other, int):
            return CycNum(self.ctx, tuple(v * other for v in self.vec), self.den)
        if not isinstance(other, CycNum):
            return NotImplemented
        phi = self.ctx.phi
        conv = [0] * (2 * phi - 1)
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        conv[i + j] += a * b
        vec = conv[:phi]
        red = self.ctx._red
        for idx in range(phi, 2 * phi - 1):
            c = conv[idx]
            if c:
                row = red[idx]
                for i in range(phi):
                    if row[i]:
                        vec[i] += c * row[i]
        return CycNum(self.ctx, tuple(vec), self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ctx.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def galois(self, k: int) -> "CycNum":
        """The automorphism zeta -> zeta^k, gcd(k, n) = 1."""
        ctx = self.ctx
        if math.gcd(k, ctx.n) != 1:
            raise ValueError("not a Galois exponent")
        vec = [0] * ctx.phi
        for j, v in enumerate(self.vec):
            if v:
                row = ctx._red[(j * k) % ctx.n]
                for i in range(ctx.phi):
                    if row[i]:
                        vec[i] += v * row[i]
        return CycNum(ctx, tuple(vec), self.den)

    def conj(self) -> "CycNum":
        return self.galois(self.ctx.n - 1)

    def _conjugate_product(self) -> "CycNum":
        """Product of self over all non-identity Galois conjugates."""
        ctx = self.ctx
        out = ctx.one
        for k in range(2, ctx.n):
            if math.gcd(k, ctx.n) == 1:
                out = out * self.galois(k)
        return out

    def norm(self) -> Fraction:
        """Field norm down to Q, exact."""
        if self.is_zero():
            return Fraction(0)
        z = self * self._conjugate_product()
        if any(z.vec[1:]):
            raise ArithmeticError("norm computation did not land in Q")
        return Fraction(z.vec[0], z.den)

    def norm_resultant(self) -> Fraction:
        """Same norm by the subresultant PRS; independent cross-check route."""
        if self.is_zero():
            return Fraction(0)
        res = poly_resultant(list(self.ctx._phi_poly), list(self.vec))
        return Fraction(res, self.den ** self.ctx.phi)

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        u = self._conjugate_product()
        z = self * u
        if any(z.vec[1:]):
            raise ArithmeticError("conjugate product did not land in Q")
        r = Fraction(z.vec[0], z.den)
        out = CycNum(
            self.ctx,
            tuple(v * r.denominator for v in u.vec),
            u.den * r.numerator,
        )
        if out * self != self.ctx.one:
            raise ArithmeticError("inverse check failed")
        return out

    def __truediv__(self, other: "CycNum | int") -> "CycNum":
        if isinstance(other, int):
            return CycNum(self.ctx, self.vec, self.den * other)
        return self * self.ctx.inv(other)

    def is_unit(self) -> bool:
        return self.den == 1 and abs(self.norm()) == 1

    def is_associate(self, other: "CycNum") -> bool:
        """True when self = unit * other in the ring of integers."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        z = self / other
        return z.den == 1 and abs(z.norm()) == 1

    def try_div_integral(self, other: "CycNum") -> "CycNum | None":
        z = self / other
        return z if z.den == 1 else None

    def valuation_one_minus_q(self) -> tuple[int, "CycNum"]:
        """Largest k with (1-q)^k dividing self in O, plus the cofactor.

        Requires self integral and nonzero.
        """
        if self.is_zero() or self.den != 1:
            raise ValueError("valuation needs a nonzero integral element")
        w_inv = self.ctx.inv(self.ctx.one_minus_q)
        k = 0
        cur = self
        while True:
            nxt = cur * w_inv
            if nxt.den != 1:
                return k, cur
            cur, k = nxt, k + 1

    def in_plus_subring(self) -> bool:
        """Integral and fixed by the involution fixing q, negating the
        fourth root of unity (identity when the ring is Z[zeta_2p])."""
        if self.den != 1:
            return False
        m = self.ctx.plus_m
        return m == 1 or self.galois(m) == self

    def to_json(self) -> dict:
        return {
            "p": self.ctx.p,
            "n": self.ctx.n,
            "coeffs": {str(i): str(v) for i, v in enumerate(self.vec) if v},
            "den": str(self.den),
        }

    @classmethod
    def from_json(cls, obj: dict, ctx: CycContext | None = None) -> "CycNum":
        if ctx is None:
            ctx = CycContext(int(obj["p"]))
        vec = [0] * ctx.phi
        for i, v in obj["coeffs"].items():
            vec[int(i)] = int(v)
        return cls(ctx, tuple(vec), int(obj.get("den", "1")))

    def __repr__(self) -> str:
        terms = [f"{v}*z^{i}" for i, v in enumerate(self.vec) if v] or ["0"]
        s = " + ".join(terms)
        return s if self.den == 1 else f"({s})/{self.den}"
