"""Signed alphabets of q-monomial letters and symmetric functions on them.

A letter is a monomial q^j or q^j * x_i; an alphabet is a signed multiset
of letters (a plus part and a minus part with no letter in common).  The
complete homogeneous functions h_r and elementary functions e_r are
evaluated on alphabets by the usual plethystic rules:

    h_r[P]      coefficient of z^r in prod_{letters l in P} 1/(1 - z*l)
    e_r[P]      sum over r-subsets of P of the product of letters
    h_r[P - M]  sum_i (-1)^(r-i) * h_i[P] * e_{r-i}[M]

Results are MultiPoly values in the ambient x variables, with pure-q
letters multiplying straight into the QLaurent coefficients.

The alphabet attached to a weight vector a = (a_0..a_n) and a shift cutoff
m consists of the letters x_i * q^(j - [i < m]) for 0 <= j < a_i: block i
contributes a_i consecutive q-powers of x_i, starting one step lower for
the first m blocks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .laurentx import MultiPoly
from .qseries import QLaurent


class Letter(NamedTuple):
    """One alphabet letter q^qexp * x_var (pure q^qexp when var is None)."""

    qexp: int
    var: int | None


def _letter_sort_key(letter: Letter) -> tuple[int, int]:
    # canonical order: pure-q letters first, then by variable, then by q-power
    return (-1 if letter.var is None else letter.var, letter.qexp)


@dataclass(frozen=True)
class Alphabet:
    """Signed multiset of letters in an ambient set of nvars x variables.

    ``plus`` and ``minus`` are canonically sorted letter tuples with no
    letter common to both (common letters cancel on construction).
    """

    nvars: int
    plus: tuple[Letter, ...] = ()
    minus: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError(f"nvars must be positive, got {self.nvars}")
        plus = Counter(Letter(int(l[0]), None if l[1] is None else int(l[1])) for l in self.plus)
        minus = Counter(Letter(int(l[0]), None if l[1] is None else int(l[1])) for l in self.minus)
        for letter in list(plus) + list(minus):
            if letter.var is not None and not 0 <= letter.var < self.nvars:
                raise ValueError(f"letter variable {letter.var} outside 0..{self.nvars - 1}")
        common = plus & minus
        plus -= common
        minus -= common
        object.__setattr__(self, "plus", tuple(sorted(plus.elements(), key=_letter_sort_key)))
        object.__setattr__(self, "minus", tuple(sorted(minus.elements(), key=_letter_sort_key)))

    def cardinality(self) -> int:
        """Number of letters in the positive part."""
        return len(self.plus)

    def is_positive(self) -> bool:
        return not self.minus

    def negate(self) -> Alphabet:
        return Alphabet(self.nvars, self.minus, self.plus)

    def union(self, other: Alphabet) -> Alphabet:
        if self.nvars != other.nvars:
            raise ValueError("alphabets live in different variable sets")
        return Alphabet(self.nvars, self.plus + other.plus, self.minus + other.minus)

    def to_json(self) -> dict:
        def enc(letters: tuple[Letter, ...]) -> list[dict]:
            return [{"q": l.qexp, "x": l.var} for l in letters]

        return {"nvars": self.nvars, "plus": enc(self.plus), "minus": enc(self.minus)}

    @classmethod
    def from_json(cls, obj: dict) -> Alphabet:
        def dec(rows: list[dict]) -> tuple[Letter, ...]:
            return tuple(Letter(int(r["q"]), None if r["x"] is None else int(r["x"])) for r in rows)

        return cls(obj["nvars"], dec(obj["plus"]), dec(obj["minus"]))


def build_alphabet(a: Sequence[int], m: int) -> Alphabet:
    """Alphabet of the letters x_i * q^(j - [i < m]) for 0 <= j < a_i.

    m ranges over 0..len(a); m = 0 gives the plain blocks x_i, x_i q, ...,
    x_i q^(a_i - 1), while 0 < m shifts the first m blocks down by one
    q-power each.
    """
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError(f"weights must be non-negative, got {a}")
    if not 0 <= m <= len(a):
        raise ValueError(f"shift cutoff m={m} outside 0..{len(a)}")
    letters = []
    for i, count in enumerate(a):
        shift = -1 if i < m else 0
        for j in range(count):
            letters.append(Letter(j + shift, i))
    return Alphabet(len(a), tuple(letters))


def _letter_monomial(letter: Letter, nvars: int) -> tuple[tuple[int, ...], QLaurent]:
    exps = [0] * nvars
    if letter.var is not None:
        exps[letter.var] = 1
    return tuple(exps), QLaurent.q_power(letter.qexp)


def _h_series(letters: Sequence[Letter], r: int, nvars: int) -> list[MultiPoly]:
    """h_0..h_r of a positive letter multiset, by one-letter convolution.

    Adjoining a letter l multiplies the generating function by
    1/(1 - z*l), i.e. h_new[k] = h_old[k] + l * h_new[k-1].
    """
    series = [MultiPoly.one(nvars)] + [MultiPoly.zero(nvars)] * r
    for letter in letters:
        ev, c = _letter_monomial(letter, nvars)
        for k in range(1, r + 1):
            series[k] = series[k] + series[k - 1].mul_monomial(ev, c)
    return series


def _e_series(letters: Sequence[Letter], r: int, nvars: int) -> list[MultiPoly]:
    """e_0..e_r of a positive letter multiset (binomial-style convolution)."""
    series = [MultiPoly.one(nvars)] + [MultiPoly.zero(nvars)] * r
    for letter in letters:
        ev, c = _letter_monomial(letter, nvars)
        for k in range(min(r, len(letters)), 0, -1):
            series[k] = series[k] + series[k - 1].mul_monomial(ev, c)
    return series


def h_r(alphabet: Alphabet, r: int) -> MultiPoly:
    """Complete homogeneous function h_r evaluated on a signed alphabet.

    h_0 is always 1.  For a purely positive alphabet this is the degree-r
    part of the product generating function; the signed case expands as
    sum_i (-1)^(r-i) h_i[plus] e_{r-i}[minus].
    """
    if r < 0:
        raise ValueError(f"degree must be non-negative, got {r}")
    nvars = alphabet.nvars
    if not alphabet.minus:
        return _h_series(alphabet.plus, r, nvars)[r]
    hs = _h_series(alphabet.plus, r, nvars)
    es = _e_series(alphabet.minus, r, nvars)
    out = MultiPoly.zero(nvars)
    for i in range(r + 1):
        term = hs[i] * es[r - i]
        if (r - i) % 2:
            term = -term
        out = out + term
    return out


def e_r(alphabet: Alphabet, r: int) -> MultiPoly:
    """Elementary function e_r on a purely positive alphabet.

    Vanishes as soon as r exceeds the alphabet's cardinality.
    """
    if r < 0:
        raise ValueError(f"degree must be non-negative, got {r}")
    if not alphabet.is_positive():
        raise ValueError("e_r is only defined here for purely positive alphabets")
    if r > len(alphabet.plus):
        return MultiPoly.zero(alphabet.nvars)
    return _e_series(alphabet.plus, r, alphabet.nvars)[r]


def h_lambda(alphabet: Alphabet, lam: Sequence[int]) -> MultiPoly:
    """Product of h_{lam_i} over the parts of a partition (1 when empty)."""
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"partition parts must be non-negative, got {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition must be weakly decreasing, got {lam}")
    if not lam:
        return MultiPoly.one(alphabet.nvars)
    # one shared h-series up to the largest part
    top = lam[0]
    hs = (
        _h_series(alphabet.plus, top, alphabet.nvars)
        if alphabet.is_positive()
        else None
    )
    out = MultiPoly.one(alphabet.nvars)
    for part in lam:
        factor = hs[part] if hs is not None else h_r(alphabet, part)
        out = out * factor
    return out
