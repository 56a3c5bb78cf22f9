"""Recoupling coefficients for the Temperley-Lieb category, exactly.

Theta and tetrahedron coefficients are assembled from quantum factorials as
Laurent fractions in q and fully reduced to honest Laurent polynomials
before any root-of-unity specialization; closed diagrams always reduce, so
no evaluation ever divides by a cyclotomic zero.  Ratios that are genuinely
fractional (bubble collapse, fusion) are only formed at the root, where the
relevant thetas are nonzero for admissible colors.

Also here: admissibility tests, rank counts for handlebody spines (a
caterpillar graph family), and the trigonometric dimension formula used as
a floating-point cross-check.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .cyclotomic import CycContext, CycNum
from .laurent import IntLaurent, poly_gcd


@lru_cache(maxsize=None)
def qint(m: int) -> IntLaurent:
    """[m] = q^(m-1) + q^(m-3) + .. + q^(1-m)."""
    if m < 0:
        raise ValueError("quantum integer of negative argument")
    return IntLaurent({m - 1 - 2 * s: 1 for s in range(m)})


@lru_cache(maxsize=None)
def qfact(m: int) -> IntLaurent:
    if m < 0:
        raise ValueError("quantum factorial of negative argument")
    if m == 0:
        return IntLaurent(1)
    return qfact(m - 1) * qint(m)


def quantum_dim(i: int) -> IntLaurent:
    """<e_i> = (-1)^i [i+1], the loop value of the i-colored core."""
    f = qint(i + 1)
    return f if i % 2 == 0 else -f


def delta_loop() -> IntLaurent:
    """Value of a 1-colored unknot, -q - q^-1 (equals -A^2 - A^-2)."""
    return quantum_dim(1)


class QFrac:
    """Fraction of Laurent polynomials in q; reduced only on demand.

    Theta and tetrahedron values are rational (projector coefficients bring
    in quantum-integer denominators), so fractions are the honest type here.
    Root specialization divides numerator by denominator in the cyclotomic
    field and insists the denominator does not vanish there; for admissible
    colorings below the level it never does.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntLaurent | int, den: IntLaurent | int = 1):
        if isinstance(num, int):
            num = IntLaurent(num)
        if isinstance(den, int):
            den = IntLaurent(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def _lift(cls, x: "QFrac | IntLaurent | int") -> "QFrac":
        return x if isinstance(x, QFrac) else cls(x)

    def __add__(self, other: "QFrac | IntLaurent | int") -> "QFrac":
        other = self._lift(other)
        return QFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __mul__(self, other: "QFrac | IntLaurent | int") -> "QFrac":
        other = self._lift(other)
        return QFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __sub__(self, other: "QFrac | IntLaurent | int") -> "QFrac":
        return self + (-self._lift(other))

    def __truediv__(self, other: "QFrac | IntLaurent | int") -> "QFrac":
        other = self._lift(other)
        if other.num.is_zero():
            raise ZeroDivisionError
        return QFrac(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "QFrac":
        return QFrac(-self.num, self.den)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, IntLaurent)):
            other = QFrac(other)
        if not isinstance(other, QFrac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash(self.num) ^ hash(self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "QFrac":
        """Cancel common factors; denominator gets lowest exponent 0, lead > 0."""
        if self.num.is_zero():
            return QFrac(IntLaurent(), IntLaurent(1))
        num, den = self.num, self.den
        g = poly_gcd(num, den)
        if g != IntLaurent(1):
            num, den = num.exact_div(g), den.exact_div(g)
        c = math.gcd(num.content(), den.content())
        if c > 1:
            cc = IntLaurent(c)
            num, den = num.exact_div(cc), den.exact_div(cc)
        k = den.min_exp()
        if k:
            num, den = num.shift(-k), den.shift(-k)
        if den.coeff(den.max_exp()) < 0:
            num, den = -num, -den
        return QFrac(num, den)

    def as_laurent(self) -> IntLaurent:
        return self.num.exact_div(self.den)

    def at_root(self, ctx: CycContext) -> CycNum:
        den = ctx.from_q_laurent(self.den)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at the root")
        return ctx.from_q_laurent(self.num) / den


def admissible(a: int, b: int, c: int) -> bool:
    """Generic admissibility: parity and triangle inequality."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b


def p_admissible(p: int, a: int, b: int, c: int) -> bool:
    """Root-of-unity admissibility for colors in [0, p-2]."""
    if not all(0 <= x <= p - 2 for x in (a, b, c)):
        return False
    return admissible(a, b, c) and a + b + c <= 2 * (p - 2)


@lru_cache(maxsize=None)
def theta(a: int, b: int, c: int) -> QFrac:
    """Theta-graph value with edge colors a, b, c."""
    if not admissible(a, b, c):
        raise ValueError(f"inadmissible triple {(a, b, c)}")
    m = (a + b - c) // 2
    n = (b + c - a) // 2
    r = (c + a - b) // 2
    num = qfact(m + n + r + 1) * qfact(m) * qfact(n) * qfact(r)
    den = qfact(m + n) * qfact(n + r) * qfact(r + m)
    return QFrac(num if (m + n + r) % 2 == 0 else -num, den)


def _tet_key(a: int, b: int, e: int, c: int, d: int, f: int) -> tuple:
    """Canonical representative under the S4 of vertex relabelings.

    Edges are keyed by the pair of vertices they join: e_{12}=E, e_{13}=A,
    e_{14}=B, e_{23}=D, e_{24}=C, e_{34}=F; a vertex permutation acts by
    relabeling the pairs.
    """
    from itertools import permutations

    edge = {
        frozenset((1, 2)): e,
        frozenset((1, 3)): a,
        frozenset((1, 4)): b,
        frozenset((2, 3)): d,
        frozenset((2, 4)): c,
        frozenset((3, 4)): f,
    }
    best = None
    for sig in permutations((1, 2, 3, 4)):
        s = dict(zip((1, 2, 3, 4), sig))
        img = tuple(
            edge[frozenset((s[i], s[j]))]
            for i, j in ((1, 3), (1, 4), (1, 2), (2, 4), (2, 3), (3, 4))
        )
        if best is None or img < best:
            best = img
    return best


@lru_cache(maxsize=None)
def _tet_canonical(key: tuple) -> QFrac:
    a, b, e, c, d, f = key
    verts = [(a + b + e) // 2, (c + d + e) // 2, (a + d + f) // 2, (b + c + f) // 2]
    squares = [(a + c + e + f) // 2, (b + d + e + f) // 2, (a + b + c + d) // 2]
    zlo, zhi = max(verts), min(squares)
    if zhi < zlo:
        return QFrac(0)
    # single sum over one shared denominator: each term's factorial ratios
    # become rising products relative to the range endpoints
    num = IntLaurent()
    for z in range(zlo, zhi + 1):
        term = qfact(z + 1)
        for av in verts:
            for t in range(z + 1, zhi + 1):
                term = term * qint(t - av)
        for bs in squares:
            for t in range(zlo, z):
                term = term * qint(bs - t)
        num = num + (term if z % 2 == 0 else -term)
    den = IntLaurent(1)
    for av in verts:
        den = den * qfact(zhi - av)
    for bs in squares:
        den = den * qfact(bs - zlo)
    pre_num = IntLaurent(1)
    for av in verts:
        for bs in squares:
            pre_num = pre_num * qfact(bs - av)
    pre_den = IntLaurent(1)
    for x in (a, b, c, d, e, f):
        pre_den = pre_den * qfact(x)
    return QFrac(num * pre_num, den * pre_den)


def tet(a: int, b: int, e: int, c: int, d: int, f: int) -> QFrac:
    """Tetrahedron coefficient with vertex triples (a,b,e), (c,d,e),
    (a,d,f), (b,c,f)."""
    for tri in ((a, b, e), (c, d, e), (a, d, f), (b, c, f)):
        if not admissible(*tri):
            raise ValueError(f"inadmissible vertex {tri}")
    return _tet_canonical(_tet_key(a, b, e, c, d, f))


def theta_at(ctx: CycContext, a: int, b: int, c: int) -> CycNum:
    return theta(a, b, c).at_root(ctx)


def tet_at(ctx: CycContext, a: int, b: int, e: int, c: int, d: int, f: int) -> CycNum:
    return tet(a, b, e, c, d, f).at_root(ctx)


def quantum_dim_at(ctx: CycContext, i: int) -> CycNum:
    return ctx.from_q_laurent(quantum_dim(i))


# ---------------------------------------------------------------------------
# rank counting on handlebody spines


def arm_weight(p: int, k: int) -> int:
    """Number of even loop colors i with (i, i, k) admissible at level p."""
    if k % 2:
        return 0
    return sum(1 for i in range(0, p - 1, 2) if p_admissible(p, i, i, k))


def arm_weight_mixed(p: int, k: int) -> int:
    if k % 2:
        return 0
    return sum(1 for i in range(p - 1) if p_admissible(p, i, i, k))


def count_spine_colorings(genus: int, p: int, mixed: bool = False) -> int:
    """Admissible colorings of a genus-g caterpillar spine.

    Loops may take any admissible color when mixed=True, else only even
    colors; all other edges are forced even by parity either way.
    """
    if genus < 1:
        raise ValueError("genus must be positive")
    evens = range(0, p - 1, 2)
    w = {k: (arm_weight_mixed(p, k) if mixed else arm_weight(p, k)) for k in evens}
    if genus == 1:
        return (p - 1) if mixed else (p - 1) // 2
    if genus == 2:
        return sum(w[k] ** 2 for k in evens)
    if genus == 3:
        return sum(
            w[a] * w[b] * w[c]
            for a in evens
            for b in evens
            for c in evens
            if p_admissible(p, a, b, c)
        )
    f = {
        m: sum(
            w[s1] * w[s2]
            for s1 in evens
            for s2 in evens
            if p_admissible(p, s1, s2, m)
        )
        for m in evens
    }
    for _ in range(genus - 4):
        f = {
            m2: sum(
                f[m1] * w[s]
                for m1 in evens
                for s in evens
                if p_admissible(p, s, m1, m2)
            )
            for m2 in evens
        }
    return sum(
        f[m1] * w[s1] * w[s2]
        for m1 in evens
        for s1 in evens
        for s2 in evens
        if p_admissible(p, s1, s2, m1)
    )


def verlinde_float(genus: int, p: int) -> float:
    """Trigonometric dimension formula, used as an independent float check."""
    total = 0.0
    for j in range(1, (p + 1) // 2):
        total += math.sin(2 * math.pi * j / p) ** (2 - 2 * genus)
    return (p / 4.0) ** (genus - 1) * total


_RANK_NUM_G3 = (0, 3, 32, 120, 200, 192, 128)
_RANK_NUM_G5 = (
    0, 45, 864, 6892, 30184, 83760, 172512,
    304896, 458112, 542720, 487424, 294912, 98304,
)


def rank_polynomial_genus3(k: int) -> int:
    """Spine-coloring count at p = 4k+1 in genus 3, in closed form.

    The numerator polynomial is divisible by 45 at every integer; the
    division below is checked exact.  Odd for k congruent to 1 mod 2."""
    return _rank_polynomial(_RANK_NUM_G3, 45, k)


def rank_polynomial_genus5(k: int) -> int:
    """Spine-coloring count at p = 4k+1 in genus 5, in closed form."""
    return _rank_polynomial(_RANK_NUM_G5, 14175, k)


def _rank_polynomial(coeffs: tuple[int, ...], den: int, k: int) -> int:
    if k < 1:
        raise ValueError("the closed forms need k >= 1")
    num = sum(c * k ** e for e, c in enumerate(coeffs))
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"rank numerator {num} not divisible by {den}")
    return q
