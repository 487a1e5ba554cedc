"""Exact arithmetic in the Laurent ring Z[q, 1/q] and the field Q(q).

Two value types:

* ``QLaurent`` -- a Laurent polynomial in q with arbitrary-precision integer
  coefficients, stored sparsely as {exponent: coefficient}.  Every constant
  term this library computes lives here.
* ``QRat`` -- a quotient of two QLaurent values kept in a canonical reduced
  form, so that equality of field elements is plain structural comparison.
  Closed forms involving q-shifted factorials of either sign live here.

On top of these the module provides the q-shifted factorial (q^a; q)_k for
integer k of either sign, the q-binomial coefficient with an arbitrary
integer upper index, and exact Lagrange interpolation with QRat nodes and
values.

All values are immutable after construction and all operations are pure,
so everything here is safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence


class PoleError(ArithmeticError):
    """A q-shifted factorial hit an identically-zero factor in a
    denominator position (e.g. (q^a; q)_k with k < 0 and a+i = 0)."""


class QLaurent:
    """Sparse Laurent polynomial in q over the integers.

    Zero coefficients are never stored and the zero polynomial is the
    empty map, so two equal polynomials always have identical term maps.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        t: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._t = t

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> QLaurent:
        # Takes ownership of a dict already free of zero coefficients.
        self = object.__new__(cls)
        self._t = terms
        return self

    @classmethod
    def zero(cls) -> QLaurent:
        return cls._raw({})

    @classmethod
    def one(cls) -> QLaurent:
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c: int) -> QLaurent:
        return cls._raw({0: int(c)} if c else {})

    @classmethod
    def q_power(cls, e: int, coeff: int = 1) -> QLaurent:
        """The monomial coeff * q^e."""
        return cls._raw({int(e): int(coeff)} if coeff else {})

    # -- queries ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def coeff(self, e: int) -> int:
        return self._t.get(e, 0)

    def items(self) -> list[tuple[int, int]]:
        """Terms in canonical (ascending exponent) order."""
        return sorted(self._t.items())

    def min_exp(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no minimum exponent")
        return min(self._t)

    def max_exp(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no maximum exponent")
        return max(self._t)

    def content(self) -> int:
        """gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
            if g == 1:
                break
        return g

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        a, b = self._t, other._t
        if not a:
            return other
        if not b:
            return self
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return QLaurent._raw(out)

    def __sub__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> QLaurent:
        return QLaurent._raw({e: -c for e, c in self._t.items()})

    def __mul__(self, other: QLaurent) -> QLaurent:
        if not isinstance(other, QLaurent):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return QLaurent._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                k = e1 + e2
                s = get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return QLaurent._raw(out)

    def scale(self, c: int) -> QLaurent:
        """Multiply by the integer scalar c."""
        if c == 0:
            return QLaurent._raw({})
        if c == 1:
            return self
        return QLaurent._raw({e: c * v for e, v in self._t.items()})

    def shift(self, k: int) -> QLaurent:
        """Multiply by q^k."""
        if k == 0 or not self._t:
            return self
        return QLaurent._raw({e + k: v for e, v in self._t.items()})

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __reduce__(self):
        return (QLaurent, (self._t,))

    def __repr__(self) -> str:
        return f"QLaurent({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts: list[str] = []
        for e, c in self.items():
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        """{"terms": [{"q": exponent, "c": "<decimal string>"}]}, ascending."""
        return {"terms": [{"q": e, "c": str(c)} for e, c in self.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> QLaurent:
        return cls({int(t["q"]): int(t["c"]) for t in obj["terms"]})


# ---------------------------------------------------------------------------
# Polynomial helpers used by QRat normalization.  These work on dense
# coefficient lists (index = exponent) of the polynomial parts, i.e. after
# the q-power unit has been stripped off.
# ---------------------------------------------------------------------------


def _dense_poly(p: QLaurent) -> list[int]:
    # p must have min exponent 0
    hi = p.max_exp()
    out = [0] * (hi + 1)
    for e, c in p._t.items():
        out[e] = c
    return out


def _from_dense(coeffs: Sequence[int]) -> QLaurent:
    return QLaurent._raw({e: int(c) for e, c in enumerate(coeffs) if c})


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _frac_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # remainder of a by b over the rationals; b nonzero
    r = a[:]
    db = len(b) - 1
    lead = b[-1]
    while len(r) - 1 >= db and r:
        t = r[-1] / lead
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] -= t * b[j]
        _trim(r)
    return r


def _poly_gcd(p: QLaurent, r: QLaurent) -> QLaurent:
    """Primitive integer gcd of the polynomial parts of p and r.

    q-power units are ignored: inputs are shifted so their minimum
    exponent is 0 before the Euclidean algorithm runs.  The result is a
    primitive integer polynomial with positive leading coefficient and
    nonzero constant term.
    """
    a = [Fraction(c) for c in _dense_poly(p.shift(-p.min_exp()))]
    b = [Fraction(c) for c in _dense_poly(r.shift(-r.min_exp()))]
    while b:
        a, b = b, _frac_mod(a, b)
    den_lcm = 1
    for c in a:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return _from_dense(ints)


def _divexact(num: QLaurent, div: QLaurent) -> QLaurent:
    """Exact division of Laurent polynomials; raises if not exact."""
    if not div:
        raise ZeroDivisionError("division of QLaurent by zero")
    if not num:
        return num
    shift = num.min_exp() - div.min_exp()
    n = _dense_poly(num.shift(-num.min_exp()))
    d = _dense_poly(div.shift(-div.min_exp()))
    dn = len(d) - 1
    lead = d[-1]
    qdeg = len(n) - 1 - dn
    if qdeg < 0:
        raise ValueError("inexact polynomial division")
    quot = [0] * (qdeg + 1)
    for i in range(qdeg, -1, -1):
        c = n[i + dn]
        if c % lead:
            raise ValueError("inexact polynomial division")
        t = c // lead
        quot[i] = t
        if t:
            for j, dc in enumerate(d):
                n[i + j] -= t * dc
    if any(n):
        raise ValueError("inexact polynomial division")
    return _from_dense(quot).shift(shift)


class QRat:
    """Element of the rational-function field Q(q), as a reduced fraction
    of two QLaurent values.

    Canonical form (unique per field element, so == is structural):

    * ``den`` is nonzero, has minimum q-exponent 0 and a positive lowest
      coefficient;
    * the polynomial gcd of ``num`` and ``den`` over the rationals is
      trivial, and the integer contents of ``num`` and ``den`` are coprime;
    * zero is 0/1.

    Every value built from q-shifted factorials and q-binomials has a
    primitive denominator (integer content 1); only purely scalar
    fractions such as 2/3 carry a scalar in the denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent | int, den: QLaurent | int = 1):
        if isinstance(num, int):
            num = QLaurent.const(num)
        if isinstance(den, int):
            den = QLaurent.const(den)
        n, d = self._normalize(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("QRat is immutable")

    @staticmethod
    def _normalize(num: QLaurent, den: QLaurent) -> tuple[QLaurent, QLaurent]:
        if not den:
            raise ZeroDivisionError("QRat with zero denominator")
        if not num:
            return QLaurent.zero(), QLaurent.one()
        s = num.min_exp() - den.min_exp()
        n = num.shift(-num.min_exp())
        d = den.shift(-den.min_exp())
        if len(d) == 1 and d.coeff(0) in (1, -1):
            g = None  # unit denominator, nothing to cancel
        else:
            g = _poly_gcd(n, d)
        if g is not None and (len(g) > 1 or g.coeff(0) != 1):
            n = _divexact(n, g)
            d = _divexact(d, g)
        c = gcd(n.content(), d.content())
        if c > 1:
            n = QLaurent._raw({e: v // c for e, v in n._t.items()})
            d = QLaurent._raw({e: v // c for e, v in d._t.items()})
        if d.coeff(0) < 0:
            n = -n
            d = -d
        return n.shift(s), d

    @classmethod
    def zero(cls) -> QRat:
        return cls(0)

    @classmethod
    def one(cls) -> QRat:
        return cls(1)

    @classmethod
    def q_power(cls, e: int) -> QRat:
        return cls(QLaurent.q_power(e))

    # -- queries ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        """True when the reduced denominator is the constant 1."""
        return self.den == QLaurent.one()

    def as_qlaurent(self) -> QLaurent:
        """The numerator, when the denominator is 1; error otherwise."""
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a Laurent polynomial in q")
        return self.num

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: QRat) -> QRat:
        if not isinstance(other, QRat):
            return NotImplemented
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: QRat) -> QRat:
        if not isinstance(other, QRat):
            return NotImplemented
        return QRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> QRat:
        return QRat(-self.num, self.den)

    def __mul__(self, other: QRat) -> QRat:
        if not isinstance(other, QRat):
            return NotImplemented
        return QRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: QRat) -> QRat:
        if not isinstance(other, QRat):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division of QRat by zero")
        return QRat(self.num * other.den, self.den * other.num)

    def inverse(self) -> QRat:
        if not self.num:
            raise ZeroDivisionError("inverse of zero QRat")
        return QRat(self.den, self.num)

    def __pow__(self, k: int) -> QRat:
        if k < 0:
            return self.inverse() ** (-k)
        out = QRat.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __reduce__(self):
        return (QRat, (self.num, self.den))

    def __repr__(self) -> str:
        return f"QRat({self})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> QRat:
        return cls(QLaurent.from_json(obj["num"]), QLaurent.from_json(obj["den"]))


# ---------------------------------------------------------------------------
# q-shifted factorials, q-binomials, interpolation
# ---------------------------------------------------------------------------


def poch(a: int, k: int) -> QRat:
    """The q-shifted factorial (q^a; q)_k for arbitrary integers a, k.

    For k >= 0 this is the product of (1 - q^(a+i)) over 0 <= i < k (a
    Laurent polynomial).  For k < 0 it is the reciprocal product over
    k <= i < 0; a factor that is identically zero there (a + i = 0)
    raises PoleError.
    """
    if k >= 0:
        prod = QLaurent.one()
        for i in range(k):
            prod = prod * (QLaurent.one() - QLaurent.q_power(a + i))
        return QRat(prod)
    prod = QLaurent.one()
    for i in range(k, 0):
        if a + i == 0:
            raise PoleError(f"(q^{a}; q)_{k} has a vanishing factor at i={i}")
        prod = prod * (QLaurent.one() - QLaurent.q_power(a + i))
    return QRat(QLaurent.one(), prod)


def qbinom(n: int, k: int) -> QRat:
    """Gaussian binomial coefficient with integer n and k >= 0.

    Defined as (q^(n-k+1); q)_k / (q; q)_k; for 0 <= k <= n this reduces
    to a polynomial in q.
    """
    if k < 0:
        raise ValueError(f"q-binomial lower index must be non-negative, got {k}")
    return poch(n - k + 1, k) / poch(1, k)


def eval_poly(coeffs: Sequence[QRat], t: QRat) -> QRat:
    """Evaluate sum(coeffs[i] * t^i) by Horner's rule."""
    acc = QRat.zero()
    for c in reversed(list(coeffs)):
        acc = acc * t + c
    return acc


def interpolate(points: Sequence[tuple[QRat, QRat]]) -> list[QRat]:
    """Exact Lagrange interpolation over Q(q).

    Given points (t_j, y_j) with pairwise distinct t_j, returns the
    coefficients c_0..c_d (d = len(points) - 1) of the unique polynomial
    P of degree <= d with P(t_j) = y_j for every j.  Trailing zero
    coefficients are kept so the result always has d + 1 entries.
    """
    pts = list(points)
    if not pts:
        raise ValueError("interpolation needs at least one point")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i][0] == pts[j][0]:
                raise ValueError(f"duplicate interpolation node {pts[i][0]}")
    npts = len(pts)
    # master polynomial prod_j (t - t_j), coefficients low -> high
    master: list[QRat] = [QRat.one()]
    for t_j, _ in pts:
        nxt = [QRat.zero()] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * t_j
        master = nxt
    result = [QRat.zero()] * npts
    for t_j, y_j in pts:
        # synthetic division of master by (t - t_j)
        basis = [QRat.zero()] * npts
        carry = master[npts]
        for i in range(npts - 1, -1, -1):
            basis[i] = carry
            carry = master[i] + carry * t_j
        denom = eval_poly(basis, t_j)
        scale = y_j / denom
        for i in range(npts):
            result[i] = result[i] + basis[i] * scale
    return result
