"""Sparse multivariate Laurent polynomials in x_0..x_n over QLaurent.

A monomial is keyed by its exponent vector, a tuple of ``nvars`` integers
(negative exponents allowed).  Coefficients are QLaurent values and zero
coefficients are never stored, so equal polynomials have equal term maps.

This module also builds the q-Dyson kernel

    prod_{0 <= i < j <= n} (x_i/x_j; q)_{a_i} (q x_j/x_i; q)_{a_j}

as an explicit polynomial, supports windowed multiplication for
single-coefficient extraction, and implements the constant-term-preserving
cyclic substitution x_0 -> x_1, ..., x_{n-1} -> x_n, x_n -> x_0/q.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .qseries import QLaurent

ExpVec = tuple[int, ...]


class MultiPoly:
    """Sparse Laurent polynomial in x_0..x_{nvars-1} with QLaurent coefficients."""

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: Mapping[ExpVec, QLaurent] | None = None):
        if nvars < 1:
            raise ValueError(f"nvars must be positive, got {nvars}")
        t: dict[ExpVec, QLaurent] = {}
        if terms:
            for ev, c in terms.items():
                ev = tuple(int(e) for e in ev)
                if len(ev) != nvars:
                    raise ValueError(f"exponent vector {ev} has length != {nvars}")
                if c:
                    t[ev] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_t", t)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, nvars: int, terms: dict[ExpVec, QLaurent]) -> MultiPoly:
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_t", terms)
        return self

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> MultiPoly:
        return cls._raw(nvars, {(0,) * nvars: QLaurent.one()})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff: QLaurent | None = None) -> MultiPoly:
        ev = tuple(int(e) for e in exps)
        if len(ev) != nvars:
            raise ValueError(f"exponent vector {ev} has length != {nvars}")
        c = QLaurent.one() if coeff is None else coeff
        return cls._raw(nvars, {ev: c} if c else {})

    # -- queries ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def coeff(self, exps: Sequence[int]) -> QLaurent:
        """Coefficient of x^exps (the zero QLaurent when absent)."""
        ev = tuple(int(e) for e in exps)
        if len(ev) != self.nvars:
            raise ValueError(f"exponent vector {ev} has length != {self.nvars}")
        return self._t.get(ev, QLaurent.zero())

    def constant_term(self) -> QLaurent:
        """Coefficient of the all-zero exponent vector."""
        return self._t.get((0,) * self.nvars, QLaurent.zero())

    def terms(self) -> list[tuple[ExpVec, QLaurent]]:
        """Terms in canonical (lexicographic on exponent vectors) order."""
        return sorted(self._t.items())

    def exponent_bounds(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per-variable (min, max) exponents over the support; zero for empty."""
        if not self._t:
            z = (0,) * self.nvars
            return z, z
        lo = [min(ev[i] for ev in self._t) for i in range(self.nvars)]
        hi = [max(ev[i] for ev in self._t) for i in range(self.nvars)]
        return tuple(lo), tuple(hi)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"mismatched variable counts {self.nvars} != {other.nvars}")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._t)
        for ev, c in other._t.items():
            s = out.get(ev)
            s = c if s is None else s + c
            if s:
                out[ev] = s
            elif ev in out:
                del out[ev]
        return MultiPoly._raw(self.nvars, out)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.nvars, {ev: -c for ev, c in self._t.items()})

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly._raw(self.nvars, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict[ExpVec, QLaurent] = {}
        for ev1, c1 in a.items():
            for ev2, c2 in b.items():
                ev = tuple(map(sum, zip(ev1, ev2)))
                c = c1 * c2
                s = out.get(ev)
                s = c if s is None else s + c
                if s:
                    out[ev] = s
                elif ev in out:
                    del out[ev]
        return MultiPoly._raw(self.nvars, out)

    def scale(self, c: QLaurent) -> MultiPoly:
        """Multiply every coefficient by the QLaurent scalar c."""
        if not c:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {ev: v * c for ev, v in self._t.items()})

    def mul_monomial(self, exps: Sequence[int], c: QLaurent) -> MultiPoly:
        """Multiply by the single monomial c * x^exps."""
        if not c:
            return MultiPoly._raw(self.nvars, {})
        ev0 = tuple(exps)
        return MultiPoly._raw(
            self.nvars,
            {tuple(map(sum, zip(ev, ev0))): v * c for ev, v in self._t.items()},
        )

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._t.items())))

    def __reduce__(self):
        return (MultiPoly, (self.nvars, self._t))

    def __repr__(self) -> str:
        if not self._t:
            return f"MultiPoly({self.nvars}, 0)"
        monos = " + ".join(f"({c})*x^{list(ev)}" for ev, c in self.terms())
        return f"MultiPoly({self.nvars}, {monos})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"x": list(ev), "coeff": c.to_json()} for ev, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> MultiPoly:
        return cls(
            obj["nvars"],
            {tuple(t["x"]): QLaurent.from_json(t["coeff"]) for t in obj["terms"]},
        )


# ---------------------------------------------------------------------------
# The q-Dyson kernel and windowed products
# ---------------------------------------------------------------------------


def shifted_factorial_factor(nvars: int, num_var: int, den_var: int, qshift: int, count: int) -> MultiPoly:
    """Expansion of prod_{t=0}^{count-1} (1 - q^(qshift+t) * x_num/x_den)."""
    if count < 0:
        raise ValueError(f"factor length must be non-negative, got {count}")
    out = MultiPoly.one(nvars)
    ratio = [0] * nvars
    ratio[num_var] += 1
    ratio[den_var] -= 1
    for t in range(count):
        factor = MultiPoly.one(nvars) + MultiPoly.monomial(
            nvars, ratio, QLaurent.q_power(qshift + t, -1)
        )
        out = out * factor
    return out


def dyson_factors(a: Sequence[int]) -> list[MultiPoly]:
    """The factors of the q-Dyson kernel for weights a, in lexicographic
    (i, j) pair order with the (x_i/x_j; q)_{a_i} factor first.

    Factors that are identically 1 (zero weight) are omitted.
    """
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError(f"weights must be non-negative, got {a}")
    nvars = len(a)
    factors: list[MultiPoly] = []
    for i in range(nvars):
        for j in range(i + 1, nvars):
            if a[i]:
                factors.append(shifted_factorial_factor(nvars, i, j, 0, a[i]))
            if a[j]:
                factors.append(shifted_factorial_factor(nvars, j, i, 1, a[j]))
    return factors


def dyson_product(a: Sequence[int]) -> MultiPoly:
    """Fully expanded q-Dyson kernel; the constant 1 when all weights vanish."""
    a = tuple(int(x) for x in a)
    nvars = max(len(a), 1)
    out = MultiPoly.one(nvars)
    for f in dyson_factors(a):
        out = out * f
    return out


def windowed_product(
    factors: Iterable[MultiPoly],
    nvars: int,
    lo: Sequence[int],
    hi: Sequence[int],
) -> MultiPoly:
    """Product of the factors restricted exactly to the exponent window.

    Returns the terms of prod(factors) whose exponent vector e satisfies
    lo[i] <= e[i] <= hi[i] for every variable, bit-identical to computing
    the full product and filtering.  Partial products drop monomials whose
    exponent in some variable cannot re-enter the window given the
    remaining factors' per-variable exponent bounds, which keeps
    intermediate supports small when only a few coefficients are needed.
    """
    factors = list(factors)
    lo = tuple(int(x) for x in lo)
    hi = tuple(int(x) for x in hi)
    if len(lo) != nvars or len(hi) != nvars:
        raise ValueError("window bounds must have one entry per variable")
    for f in factors:
        if f.nvars != nvars:
            raise ValueError(f"mismatched variable counts {f.nvars} != {nvars}")
        if not f:
            return MultiPoly.zero(nvars)
    # suffix_lo[s][i] = least possible x_i exponent of factors[s:], similarly hi
    suffix_lo = [(0,) * nvars]
    suffix_hi = [(0,) * nvars]
    for f in reversed(factors):
        flo, fhi = f.exponent_bounds()
        suffix_lo.append(tuple(x + y for x, y in zip(suffix_lo[-1], flo)))
        suffix_hi.append(tuple(x + y for x, y in zip(suffix_hi[-1], fhi)))
    suffix_lo.reverse()
    suffix_hi.reverse()

    current = {(0,) * nvars: QLaurent.one()}
    for s, f in enumerate(factors):
        rem_lo = suffix_lo[s + 1]
        rem_hi = suffix_hi[s + 1]
        out: dict[ExpVec, QLaurent] = {}
        fitems = list(f._t.items())
        for ev1, c1 in current.items():
            for ev2, c2 in fitems:
                ev = tuple(map(sum, zip(ev1, ev2)))
                if ev in out:
                    s2 = out[ev] + c1 * c2
                    if s2:
                        out[ev] = s2
                    else:
                        del out[ev]
                    continue
                keep = True
                for i in range(nvars):
                    e = ev[i]
                    if e + rem_hi[i] < lo[i] or e + rem_lo[i] > hi[i]:
                        keep = False
                        break
                if keep:
                    c = c1 * c2
                    if c:
                        out[ev] = c
        current = out
    final = {
        ev: c
        for ev, c in current.items()
        if all(lo[i] <= ev[i] <= hi[i] for i in range(nvars))
    }
    return MultiPoly._raw(nvars, final)


def cyclic_shift(f: MultiPoly) -> MultiPoly:
    """Substitute x_0 -> x_1, ..., x_{n-1} -> x_n, x_n -> x_0/q.

    A monomial q^e x_0^{e_0}...x_n^{e_n} maps to
    q^{e-e_n} x_0^{e_n} x_1^{e_0} ... x_n^{e_{n-1}}; constant terms are
    preserved.
    """
    out: dict[ExpVec, QLaurent] = {}
    for ev, c in f._t.items():
        last = ev[-1]
        out[(last,) + ev[:-1]] = c.shift(-last)
    return MultiPoly._raw(f.nvars, out)
