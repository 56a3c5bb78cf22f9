"""Exact Laurent polynomial arithmetic over the integers.

Everything downstream lives in Z[A, A^-1] or its localization at (1 + A), so
coefficients are plain Python ints keyed by exponent.  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


class IntLaurent:
    """Sparse Laurent polynomial in one variable with integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict[int, int] | int = 0):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        self.c: dict[int, int] = {e: v for e, v in coeffs.items() if v}

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "IntLaurent":
        return cls({exp: coeff})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntLaurent(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def coeff(self, exp: int) -> int:
        return self.c.get(exp, 0)

    def min_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return min(self.c)

    def max_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no exponents")
        return max(self.c)

    def __add__(self, other: "IntLaurent | int") -> "IntLaurent":
        if isinstance(other, int):
            other = IntLaurent(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, 0) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        return IntLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> "IntLaurent":
        return IntLaurent({e: -v for e, v in self.c.items()})

    def __sub__(self, other: "IntLaurent | int") -> "IntLaurent":
        return self + (-other if isinstance(other, IntLaurent) else -IntLaurent(other))

    def __rsub__(self, other: int) -> "IntLaurent":
        return IntLaurent(other) - self

    def __mul__(self, other: "IntLaurent | int") -> "IntLaurent":
        if isinstance(other, int):
            if not other:
                return IntLaurent()
            return IntLaurent({e: v * other for e, v in self.c.items()})
        if not isinstance(other, IntLaurent):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, 0) + v1 * v2
                if w:
                    out[e] = w
                else:
                    del out[e]
        return IntLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntLaurent":
        if n < 0:
            # only monomials with coefficient +-1 are units here
            if len(self.c) == 1:
                (e, v), = self.c.items()
                if v in (1, -1):
                    return IntLaurent({e * n: -1 if (v == -1 and n % 2) else 1})
            raise ValueError("negative power of a non-unit")
        out = IntLaurent(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "IntLaurent":
        """Multiply by A^k."""
        return IntLaurent({e + k: v for e, v in self.c.items()})

    def content(self) -> int:
        """Gcd of the coefficients; 0 for the zero polynomial."""
        g = 0
        for v in self.c.values():
            g = _igcd(g, v)
        return g

    def substitute_power(self, k: int) -> "IntLaurent":
        """Ring map A -> A^k.  k = -1 is the mirror/conjugation on Z[A, A^-1]."""
        if k == 0:
            raise ValueError("substitution must keep A invertible")
        return IntLaurent({e * k: v for e, v in self.c.items()})

    def conj(self) -> "IntLaurent":
        return self.substitute_power(-1)

    def substitute_negate(self) -> "IntLaurent":
        """Ring map A -> -A."""
        return IntLaurent({e: -v if e % 2 else v for e, v in self.c.items()})

    def derivative(self) -> "IntLaurent":
        return IntLaurent({e - 1: v * e for e, v in self.c.items() if e})

    def evaluate(self, x: "int | Fraction") -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for e, v in self.c.items():
            total += v * x ** e
        return total

    def exact_div(self, divisor: "IntLaurent") -> "IntLaurent":
        """Exact division in Z[A, A^-1]; raises ValueError when not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return IntLaurent()
        # shift both to honest polynomials, divide, shift back
        sm, dm = self.min_exp(), divisor.min_exp()
        num = {e - sm: v for e, v in self.c.items()}
        den = {e - dm: v for e, v in divisor.c.items()}
        dd = max(den)
        lead = den[dd]
        quo: dict[int, int] = {}
        while num:
            nd = max(num)
            if nd < dd:
                raise ValueError("not divisible")
            q, r = divmod(num[nd], lead)
            if r:
                raise ValueError("not divisible")
            quo[nd - dd] = q
            for e, v in den.items():
                t = e + nd - dd
                w = num.get(t, 0) - q * v
                if w:
                    num[t] = w
                else:
                    num.pop(t, None)
        return IntLaurent({e + sm - dm: v for e, v in quo.items()})

    def try_div_one_plus_var(self) -> "IntLaurent | None":
        """Quotient by (1 + A) if divisible, else None."""
        if self.is_zero():
            return IntLaurent()
        m, mx = self.min_exp(), self.max_exp()
        quo: dict[int, int] = {}
        carry = 0
        for e in range(m, mx):
            carry = self.c.get(e, 0) - carry
            if carry:
                quo[e] = carry
        if carry != self.c.get(mx, 0):
            return None
        return IntLaurent(quo)

    def val_one_plus_var(self) -> tuple[int, "IntLaurent"]:
        """Largest k with (1 + A)^k dividing self, and the cofactor.

        The zero polynomial reports valuation 0.
        """
        k = 0
        cur = self
        while not cur.is_zero():
            nxt = cur.try_div_one_plus_var()
            if nxt is None:
                break
            cur, k = nxt, k + 1
        return k, cur

    def to_json(self) -> dict:
        return {"var": "A", "coeffs": {str(e): str(v) for e, v in sorted(self.c.items())}}

    @classmethod
    def from_json(cls, obj: dict) -> "IntLaurent":
        return cls({int(e): int(v) for e, v in obj["coeffs"].items()})

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                term = str(v)
            else:
                mag = "" if abs(v) == 1 else f"{abs(v)}*"
                sgn = "-" if v < 0 else ""
                term = f"{sgn}{mag}A^{e}" if e != 1 else f"{sgn}{mag}A"
            parts.append(term)
        s = " + ".join(parts).replace("+ -", "- ")
        return s


ONE = IntLaurent(1)
ZERO = IntLaurent()
A = IntLaurent.monomial(1, 1)
ONE_PLUS_A = IntLaurent({0: 1, 1: 1})


def poly_gcd(f: IntLaurent, g: IntLaurent) -> IntLaurent:
    """Primitive gcd of two Laurent polynomials, as an honest polynomial.

    Monomial units A^k and integer contents are stripped, so the result has
    lowest exponent 0, coprime coefficients, and positive leading sign.
    Computed by a primitive pseudo-remainder sequence; all intermediate
    arithmetic stays in Z.
    """

    def shift0(c: dict[int, int]) -> dict[int, int]:
        m = min(c)
        return {e - m: v for e, v in c.items()}

    def primitive(c: dict[int, int]) -> dict[int, int]:
        g0 = 0
        for v in c.values():
            g0 = _igcd(g0, v)
        if c[max(c)] < 0:
            g0 = -g0
        return {e: v // g0 for e, v in c.items()}

    def prem(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
        db, lb = max(b), b[max(b)]
        a = dict(a)
        while a and max(a) >= db:
            da, ca = max(a), a[max(a)]
            nxt = {e: v * lb for e, v in a.items()}
            for e, v in b.items():
                t = e + da - db
                w = nxt.get(t, 0) - ca * v
                if w:
                    nxt[t] = w
                else:
                    nxt.pop(t, None)
            a = nxt
        return a

    a = primitive(shift0(f.c)) if f.c else {}
    b = primitive(shift0(g.c)) if g.c else {}
    if not a:
        a, b = b, a
    if not a:
        return IntLaurent()
    while b:
        r = prem(a, b)
        a, b = b, primitive(shift0(r)) if r else {}
    return IntLaurent(a)


class LocLaurent:
    """Element num * (1 + A)^-k of Z[A, A^-1] localized at (1 + A).

    Kept canonical: k >= 0, and (1 + A) does not divide num while k > 0, so
    equality is structural.
    """

    __slots__ = ("num", "k")

    def __init__(self, num: IntLaurent | int, k: int = 0):
        if isinstance(num, int):
            num = IntLaurent(num)
        if k < 0:
            num = num * ONE_PLUS_A ** (-k)
            k = 0
        while k > 0 and not num.is_zero():
            nxt = num.try_div_one_plus_var()
            if nxt is None:
                break
            num, k = nxt, k - 1
        if num.is_zero():
            k = 0
        self.num = num
        self.k = k

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_integral(self) -> bool:
        return self.k == 0

    def as_int_laurent(self) -> IntLaurent:
        if self.k:
            raise ValueError("denominator (1 + A)^k remains")
        return self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, IntLaurent)):
            other = LocLaurent(other)
        if not isinstance(other, LocLaurent):
            return NotImplemented
        return self.k == other.k and self.num == other.num

    def __hash__(self) -> int:
        return hash((self.k, self.num))

    def __add__(self, other: "LocLaurent | IntLaurent | int") -> "LocLaurent":
        if isinstance(other, (int, IntLaurent)):
            other = LocLaurent(other)
        if not isinstance(other, LocLaurent):
            return NotImplemented
        k = max(self.k, other.k)
        num = self.num * ONE_PLUS_A ** (k - self.k) + other.num * ONE_PLUS_A ** (k - other.k)
        return LocLaurent(num, k)

    __radd__ = __add__

    def __neg__(self) -> "LocLaurent":
        return LocLaurent(-self.num, self.k)

    def __sub__(self, other: "LocLaurent | IntLaurent | int") -> "LocLaurent":
        if isinstance(other, (int, IntLaurent)):
            other = LocLaurent(other)
        return self + (-other)

    def __rsub__(self, other: "IntLaurent | int") -> "LocLaurent":
        return LocLaurent(other) + (-self)

    def __mul__(self, other: "LocLaurent | IntLaurent | int") -> "LocLaurent":
        if isinstance(other, (int, IntLaurent)):
            other = LocLaurent(other)
        if not isinstance(other, LocLaurent):
            return NotImplemented
        # (1 + A) is prime in Z[A, A^-1]; two reduced numerators stay reduced,
        # the constructor only has to catch the zero product
        return LocLaurent(self.num * other.num, self.k + other.k)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.k == 0:
            return repr(self.num)
        return f"({self.num!r}) / (1+A)^{self.k}"
