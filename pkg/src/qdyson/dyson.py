"""Generalized q-Dyson constant terms and their verification suites.

The central object is the constant term attached to a query
(n, v, lambda, a, m): the coefficient of x^v in

    h_lambda(alphabet(a, m)) * prod_{0 <= i < j <= n} (x_i/x_j; q)_{a_i} (q x_j/x_i; q)_{a_j}

computed by exact Laurent-polynomial expansion.  Around that brute-force
evaluator this module provides the known closed forms (the q-Dyson product
formula, Kadell's single-row formula, the closed form for compositions with
distinct positive parts), the recursion that peels off a unique largest
part, the cyclic-rotation relations, dominance-order scans, and
interpolation-based polynomiality/root checks.  Every suite returns a
Report whose violations list is empty exactly when the identities hold.

All checks are exact: values are compared in canonical QLaurent/QRat form
with zero tolerance.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .laurentx import MultiPoly, dyson_factors, dyson_product, windowed_product
from .qseries import PoleError, QLaurent, QRat, eval_poly, interpolate, poch, qbinom
from .symfunc import build_alphabet, h_lambda

# ---------------------------------------------------------------------------
# Small combinatorial helpers
# ---------------------------------------------------------------------------


def sort_desc(seq: Sequence[int]) -> tuple[int, ...]:
    """The entries of seq in weakly decreasing order."""
    return tuple(sorted(seq, reverse=True))


def trim_zeros(lam: Sequence[int]) -> tuple[int, ...]:
    """Drop the zero tail of a weakly decreasing sequence."""
    out = list(lam)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def dominates(u: Sequence[int], w: Sequence[int]) -> bool:
    """Dominance order on integer sequences: every prefix sum of u is at
    least the matching prefix sum of w, after zero-padding to a common
    length.  Equal totals are not required."""
    su = sw = 0
    for i in range(max(len(u), len(w))):
        su += u[i] if i < len(u) else 0
        sw += w[i] if i < len(w) else 0
        if su < sw:
            return False
    return True


def partitions_of(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of total (largest part first, lexicographically
    decreasing), as tuples of positive parts; () for total = 0."""
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(total - first, first):
            yield (first,) + rest


def compositions_of(total: int, length: int) -> Iterator[tuple[int, ...]]:
    """All weak compositions of total into length parts, lexicographically."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions_of(total - first, length - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Queries, recursion steps, reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CTQuery:
    """Names one generalized constant term: the coefficient of x^v in
    h_lam on the (a, m)-alphabet times the q-Dyson kernel for a.

    v may contain negative entries; lam is a partition stored without its
    zero tail and must satisfy |lam| = |v| for a nonzero value; a is a
    weak composition of length n+1; 0 <= m <= n+1.
    """

    n: int
    v: tuple[int, ...]
    lam: tuple[int, ...]
    a: tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        lam = tuple(int(x) for x in self.lam)
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if len(self.v) != self.n + 1:
            raise ValueError(f"v must have length {self.n + 1}, got {self.v}")
        if len(self.a) != self.n + 1:
            raise ValueError(f"a must have length {self.n + 1}, got {self.a}")
        if any(x < 0 for x in self.a):
            raise ValueError(f"a must be a weak composition, got {self.a}")
        if any(x < 0 for x in lam):
            raise ValueError(f"partition parts must be non-negative, got {lam}")
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise ValueError(f"partition must be weakly decreasing, got {lam}")
        if not 0 <= self.m <= self.n + 1:
            raise ValueError(f"m={self.m} outside 0..{self.n + 1}")
        object.__setattr__(self, "lam", trim_zeros(lam))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "v": list(self.v),
            "lambda": list(self.lam),
            "a": list(self.a),
            "m": self.m,
        }

    @classmethod
    def from_json(cls, obj: dict) -> CTQuery:
        return cls(obj["n"], tuple(obj["v"]), tuple(obj["lambda"]), tuple(obj["a"]), obj["m"])


@dataclass(frozen=True)
class RecursionStep:
    """One application of a peeling recursion: an explicit QRat prefactor
    and the smaller constant-term query it multiplies."""

    factor: QRat
    reduced: CTQuery


@dataclass(frozen=True)
class DistinctPartsPlan:
    """Bookkeeping for the distinct-positive-parts closed form: the number
    of positive parts l, the sorting permutation sigma (v after sigma is
    weakly decreasing), and the q-power exponent c."""

    l: int
    sigma: tuple[int, ...]
    c: int


@dataclass
class Violation:
    """A single failed check.  ``expected`` is the claimed closed-form or
    relation value (None encodes "any nonzero value"); ``got`` is the
    computed value (QLaurent from brute force, QRat for interpolated
    quantities)."""

    query: CTQuery
    expected: QRat | None
    got: QLaurent | QRat

    def to_json(self) -> dict:
        return {
            "query": self.query.to_json(),
            "expected": None if self.expected is None else self.expected.to_json(),
            "got": self.got.to_json(),
        }


@dataclass
class Report:
    """Outcome of a verification suite: how many checks ran, the failures
    in deterministic (enumeration) order, and the wall-clock time."""

    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def absorb(self, other: Report) -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.elapsed += other.elapsed

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "checked": self.checked,
            "violations": [viol.to_json() for viol in self.violations],
        }
        if include_elapsed:
            out["elapsed_s"] = self.elapsed
        return out


# ---------------------------------------------------------------------------
# Brute-force evaluation
# ---------------------------------------------------------------------------

_KERNEL_CACHE: dict[tuple[int, ...], MultiPoly] = {}
_HLAM_CACHE: dict[tuple, MultiPoly] = {}


def clear_caches() -> None:
    _KERNEL_CACHE.clear()
    _HLAM_CACHE.clear()


def _kernel(a: tuple[int, ...]) -> MultiPoly:
    poly = _KERNEL_CACHE.get(a)
    if poly is None:
        poly = dyson_product(a)
        _KERNEL_CACHE[a] = poly
    return poly


def _h_poly(lam: tuple[int, ...], a: tuple[int, ...], m: int) -> MultiPoly:
    key = (lam, a, m)
    poly = _HLAM_CACHE.get(key)
    if poly is None:
        poly = h_lambda(build_alphabet(a, m), lam)
        _HLAM_CACHE[key] = poly
    return poly


def constant_term(query: CTQuery, window: bool | None = None) -> QLaurent:
    """Evaluate the constant term named by the query, exactly.

    Returns the zero QLaurent immediately when |v| != |lambda| (every
    monomial of h_lambda on these alphabets has total x-degree |lambda|
    while the kernel is degree-homogeneous of degree 0).  Otherwise the
    value is the convolution of h_lambda with the kernel at exponent v.

    ``window`` selects between expanding the full kernel (cached per a)
    and a windowed expansion that keeps only monomials able to reach the
    coefficients actually needed; both paths give bit-identical results.
    The default picks the windowed path for four or more variables unless
    the full kernel is already cached.
    """
    if sum(query.v) != sum(query.lam):
        return QLaurent.zero()
    nvars = query.n + 1
    hpoly = _h_poly(query.lam, query.a, query.m)
    if not hpoly:
        return QLaurent.zero()
    if window is None:
        window = nvars >= 4 and query.a not in _KERNEL_CACHE
    if window:
        hlo, hhi = hpoly.exponent_bounds()
        lo = tuple(query.v[i] - hhi[i] for i in range(nvars))
        hi = tuple(query.v[i] - hlo[i] for i in range(nvars))
        kernel = windowed_product(dyson_factors(query.a), nvars, lo, hi)
    else:
        kernel = _kernel(query.a)
    acc = QLaurent.zero()
    kterms = kernel._t
    v = query.v
    for ev, c in hpoly._t.items():
        target = tuple(v[i] - ev[i] for i in range(nvars))
        kc = kterms.get(target)
        if kc is not None:
            acc = acc + c * kc
    return acc


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def _check_composition(name: str, seq: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(x) for x in seq)
    if any(x < 0 for x in out):
        raise ValueError(f"{name} must be a weak composition, got {out}")
    return out


def qdyson_closed_form(a: Sequence[int]) -> QRat:
    """The q-Dyson constant-term value (q; q)_|a| / prod_i (q; q)_{a_i},
    always a polynomial in q."""
    a = _check_composition("a", a)
    out = poch(1, sum(a))
    for ai in a:
        out = out / poch(1, ai)
    return out


def kadell_closed_form(v: Sequence[int], a: Sequence[int]) -> QRat:
    """Closed form for a single-row partition: with r = |v| >= 1 and
    lambda = (r), the constant term is nonzero only when v has exactly one
    nonzero entry r (at position k), and then equals

        q^(a_{k+1}+...+a_n) (1-q^{a_k}) (q^|a|; q)_r
        / ((1-q^|a|) (q^{|a|-a_k+1}; q)_r) * prod_i qbinom(a_i+...+a_n, a_i).

    |a| = 0 on the nonzero branch divides by 1 - q^0 and raises PoleError.
    """
    v = _check_composition("v", v)
    a = _check_composition("a", a)
    if len(v) != len(a):
        raise ValueError(f"v and a must have equal length, got {v} and {a}")
    r = sum(v)
    if r < 1:
        raise ValueError(f"|v| must be positive, got {v}")
    hot = [i for i, x in enumerate(v) if x]
    if len(hot) != 1:
        return QRat.zero()
    k = hot[0]
    total = sum(a)
    if total == 0:
        raise PoleError("single-row closed form undefined for |a| = 0")
    out = (
        QRat.q_power(sum(a[k + 1 :]))
        * QRat(QLaurent.one() - QLaurent.q_power(a[k]))
        * poch(total, r)
        / (QRat(QLaurent.one() - QLaurent.q_power(total)) * poch(total - a[k] + 1, r))
    )
    run = total
    for ai in a:
        out = out * qbinom(run, ai)
        run -= ai
    return out


def reduce_largest_part(v: Sequence[int], a: Sequence[int]) -> RecursionStep:
    """Peel the unique largest part of v out of the m = 0 constant term.

    For v a composition whose maximum v_k occurs exactly once and a_k >= 1,
    the constant term at (v, v+) factors as

        q^(a_{k+1}+...+a_n) * qbinom(v_k + |a| - 1, a_k - 1)

    times the constant term of the reduced query with index k dropped from
    both v and a (and m still 0).
    """
    v = _check_composition("v", v)
    a = _check_composition("a", a)
    n = len(v) - 1
    if len(a) != len(v):
        raise ValueError(f"v and a must have equal length, got {v} and {a}")
    if n < 1:
        raise ValueError("reduction needs at least two variables")
    mx = max(v)
    if v.count(mx) != 1:
        raise ValueError(f"largest part of {v} must have multiplicity one")
    k = v.index(mx)
    if a[k] < 1:
        raise ValueError(f"weight a[{k}] must be positive at the largest part")
    factor = QRat.q_power(sum(a[k + 1 :])) * qbinom(mx + sum(a) - 1, a[k] - 1)
    rv = v[:k] + v[k + 1 :]
    ra = a[:k] + a[k + 1 :]
    return RecursionStep(factor, CTQuery(n - 1, rv, sort_desc(rv), ra, 0))


def reduce_first_part(v: Sequence[int], a: Sequence[int], m: int) -> RecursionStep:
    """Peel v_0 out of the shifted constant term, lowering m by one.

    Requires v_0 = max(v) with multiplicity one, 1 <= m <= n+1, and
    a_0 >= 1; the prefactor is

        q^(a_1+...+a_{m-1} - v_0) * qbinom(v_0 + |a| - 1, a_0 - 1).
    """
    v = _check_composition("v", v)
    a = _check_composition("a", a)
    n = len(v) - 1
    if len(a) != len(v):
        raise ValueError(f"v and a must have equal length, got {v} and {a}")
    if n < 1:
        raise ValueError("reduction needs at least two variables")
    if v[0] != max(v) or v.count(v[0]) != 1:
        raise ValueError(f"v_0 must be the unique largest part, got {v}")
    if not 1 <= m <= n + 1:
        raise ValueError(f"m={m} outside 1..{n + 1}")
    if a[0] < 1:
        raise ValueError("weight a[0] must be positive")
    factor = QRat.q_power(sum(a[1:m]) - v[0]) * qbinom(v[0] + sum(a) - 1, a[0] - 1)
    return RecursionStep(factor, CTQuery(n - 1, v[1:], sort_desc(v[1:]), a[1:], m - 1))


def admissible_sigmas(v: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All permutations sorting v into weakly decreasing order, for v with
    distinct positive parts: the positive positions are forced, the zero
    positions may come in any order."""
    v = tuple(v)
    pos = sorted((i for i, x in enumerate(v) if x > 0), key=lambda i: -v[i])
    zeros = [i for i, x in enumerate(v) if x == 0]
    for perm in itertools.permutations(zeros):
        yield tuple(pos) + perm


def distinct_parts_plan(
    v: Sequence[int], a: Sequence[int], sigma: Sequence[int] | None = None
) -> DistinctPartsPlan:
    """Sorting permutation and q-power exponent for the distinct-parts
    closed form.  The default sigma sorts descending by part, breaking
    ties among zero parts by ascending index."""
    v = _check_composition("v", v)
    a = _check_composition("a", a)
    if len(v) != len(a):
        raise ValueError(f"v and a must have equal length, got {v} and {a}")
    pos = [x for x in v if x > 0]
    if len(set(pos)) != len(pos):
        raise ValueError(f"positive parts of {v} must be distinct")
    if sigma is None:
        sigma = tuple(sorted(range(len(v)), key=lambda i: (-v[i], i)))
    else:
        sigma = tuple(int(x) for x in sigma)
        if sorted(sigma) != list(range(len(v))):
            raise ValueError(f"{sigma} is not a permutation of 0..{len(v) - 1}")
        if tuple(v[i] for i in sigma) != sort_desc(v):
            raise ValueError(f"{sigma} does not sort {v} into decreasing order")
    l = len(pos)
    used: set[int] = set()
    c = 0
    for i in range(l):
        k = sigma[i]
        c += sum(a[j] for j in range(k + 1, len(v)) if j not in used)
        used.add(k)
    return DistinctPartsPlan(l, sigma, c)


def distinct_parts_closed_form(
    v: Sequence[int], a: Sequence[int], sigma: Sequence[int] | None = None
) -> QRat:
    """Closed form for compositions all of whose positive parts are
    distinct: iterating the largest-part reduction down to the plain
    q-Dyson value gives

        q^c * prod_{i<l} qbinom(v_{s(i)} + |a| - a_{s(0)} - ... - a_{s(i-1)} - 1, a_{s(i)} - 1)
            * prod_{i>=l} qbinom(a_{s(i)} + ... + a_{s(n)}, a_{s(i)})

    for any admissible sorting permutation s; all of them give the same
    value.  A zero weight at one of the l leading positions makes the
    whole constant term vanish (the q-binomial there has lower index -1),
    so the function returns zero in that case.
    """
    plan = distinct_parts_plan(v, a, sigma)
    v = tuple(v)
    a = tuple(a)
    total = sum(a)
    out = QRat.q_power(plan.c)
    prefix = 0
    for i in range(plan.l):
        ai = a[plan.sigma[i]]
        if ai == 0:
            return QRat.zero()
        out = out * qbinom(v[plan.sigma[i]] + total - prefix - 1, ai - 1)
        prefix += ai
    suffix = sum(a[plan.sigma[i]] for i in range(plan.l, len(v)))
    for i in range(plan.l, len(v)):
        out = out * qbinom(suffix, a[plan.sigma[i]])
        suffix -= a[plan.sigma[i]]
    return out


# ---------------------------------------------------------------------------
# Optional worker-pool evaluation of independent queries
# ---------------------------------------------------------------------------


def _eval_queries(queries: list[CTQuery]) -> list[QLaurent]:
    return [constant_term(qy) for qy in queries]


def _parallel_values(queries: list[CTQuery], workers: int) -> list[QLaurent]:
    """Values of the queries in order, optionally fanned out over a
    process pool.  Queries are pure, so chunks are independent; results
    are reassembled in submission order regardless of completion order."""
    if workers <= 1 or len(queries) < 64:
        return _eval_queries(queries)
    import concurrent.futures

    nchunks = min(len(queries), workers * 4)
    size = (len(queries) + nchunks - 1) // nchunks
    chunks = [queries[i : i + size] for i in range(0, len(queries), size)]
    try:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_eval_queries, chunks))
    except (OSError, PermissionError):  # no subprocess support: fall back
        return _eval_queries(queries)
    return [value for part in parts for value in part]


def _as_qrat(value: QLaurent) -> QRat:
    return QRat(value)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def qdyson_suite(n: int, a_max: int, workers: int = 1) -> Report:
    """Brute force against the q-Dyson closed form for every weight vector
    with 0 <= a_i <= a_max at the given n."""
    start = time.perf_counter()
    report = Report()
    boxes = list(itertools.product(range(a_max + 1), repeat=n + 1))
    queries = [CTQuery(n, (0,) * (n + 1), (), a, 0) for a in boxes]
    values = _parallel_values(queries, workers)
    for query, got in zip(queries, values):
        expected = qdyson_closed_form(query.a)
        report.checked += 1
        if _as_qrat(got) != expected:
            report.violations.append(Violation(query, expected, got))
    report.elapsed = time.perf_counter() - start
    return report


def kadell_suite(n_max: int, r_max: int, a_max: int) -> Report:
    """Both branches of the single-row closed form against brute force:
    every single-nonzero v (all positions, 1 <= r <= r_max) and every
    multi-nonzero v of the same weights, over 0 <= a_i <= a_max."""
    start = time.perf_counter()
    report = Report()
    for n in range(n_max + 1):
        for r in range(1, r_max + 1):
            for v in compositions_of(r, n + 1):
                for a in itertools.product(range(a_max + 1), repeat=n + 1):
                    got = constant_term(CTQuery(n, v, (r,), a, 0))
                    if sum(a) == 0:
                        expected = QRat.zero()  # no letters: h_r vanishes
                    else:
                        expected = kadell_closed_form(v, a)
                    report.checked += 1
                    if _as_qrat(got) != expected:
                        report.violations.append(
                            Violation(CTQuery(n, v, (r,), a, 0), expected, got)
                        )
    report.elapsed = time.perf_counter() - start
    return report


def largest_part_suite(n_max: int, weight_max: int, a_max: int) -> Report:
    """The largest-part peeling recursion at m = 0 against brute force,
    over all unique-maximum compositions with |v| <= weight_max and
    1 <= a_i <= a_max."""
    start = time.perf_counter()
    report = Report()
    for n in range(1, n_max + 1):
        for w in range(1, weight_max + 1):
            for v in compositions_of(w, n + 1):
                if v.count(max(v)) != 1:
                    continue
                for a in itertools.product(range(1, a_max + 1), repeat=n + 1):
                    step = reduce_largest_part(v, a)
                    query = CTQuery(n, v, sort_desc(v), a, 0)
                    lhs = constant_term(query)
                    rhs = constant_term(step.reduced)
                    report.checked += 1
                    expected = step.factor * _as_qrat(rhs)
                    if _as_qrat(lhs) != expected:
                        report.violations.append(Violation(query, expected, lhs))
    report.elapsed = time.perf_counter() - start
    return report


def shifted_reduction_suite(n_max: int, weight_max: int, a_max: int) -> Report:
    """The m-shifted first-part recursion and its a_0 = 1 specialization
    against brute force: v_0 the unique maximum, |v| <= weight_max,
    m in 1..n+1, a_0 in 1..a_max and the remaining a_i in 0..a_max."""
    start = time.perf_counter()
    report = Report()
    for n in range(1, n_max + 1):
        for w in range(1, weight_max + 1):
            for v in compositions_of(w, n + 1):
                if v[0] != max(v) or v.count(v[0]) != 1:
                    continue
                for m in range(1, n + 2):
                    for a0 in range(1, a_max + 1):
                        for rest in itertools.product(range(a_max + 1), repeat=n):
                            a = (a0,) + rest
                            step = reduce_first_part(v, a, m)
                            query = CTQuery(n, v, sort_desc(v), a, m)
                            lhs = constant_term(query)
                            rhs = constant_term(step.reduced)
                            report.checked += 1
                            expected = step.factor * _as_qrat(rhs)
                            if _as_qrat(lhs) != expected:
                                report.violations.append(Violation(query, expected, lhs))
                            if a0 == 1:
                                # value at a_0 = 1: prefactor degenerates to a q-power
                                report.checked += 1
                                special = QRat.q_power(sum(rest[: m - 1]) - v[0]) * _as_qrat(rhs)
                                if _as_qrat(lhs) != special:
                                    report.violations.append(Violation(query, special, lhs))
    report.elapsed = time.perf_counter() - start
    return report


def distinct_parts_suite(n_max: int, weight_max: int, a_max: int) -> Report:
    """The distinct-parts closed form against brute force, its invariance
    under every admissible sorting permutation, and its degeneration to
    the single-row formula (one positive part) and the plain q-Dyson value
    (no positive part)."""
    start = time.perf_counter()
    report = Report()
    for n in range(n_max + 1):
        for w in range(weight_max + 1):
            for v in compositions_of(w, n + 1):
                pos = [x for x in v if x > 0]
                if len(set(pos)) != len(pos):
                    continue
                for a in itertools.product(range(a_max + 1), repeat=n + 1):
                    closed = distinct_parts_closed_form(v, a)
                    query = CTQuery(n, v, sort_desc(v), a, 0)
                    got = constant_term(query)
                    report.checked += 1
                    if _as_qrat(got) != closed:
                        report.violations.append(Violation(query, closed, got))
                    for sigma in admissible_sigmas(v):
                        report.checked += 1
                        other = distinct_parts_closed_form(v, a, sigma)
                        if other != closed:
                            report.violations.append(Violation(query, closed, other))
                    if not pos:
                        report.checked += 1
                        if closed != qdyson_closed_form(a):
                            report.violations.append(
                                Violation(query, qdyson_closed_form(a), got)
                            )
                    elif len(pos) == 1 and sum(a) > 0:
                        report.checked += 1
                        if closed != kadell_closed_form(v, a):
                            report.violations.append(
                                Violation(query, kadell_closed_form(v, a), got)
                            )
    report.elapsed = time.perf_counter() - start
    return report


def orthogonality_scan(n: int, weight_max: int, a_max: int, workers: int = 1) -> Report:
    """Contrapositive orthogonality scan.

    Phase one enumerates integer vectors v with |v_i| <= weight_max and
    0 <= sum(v) <= weight_max, all partitions lam of sum(v), and all
    weights 0 <= a_i <= a_max, skipping pairs where v sorted decreasingly
    dominates lam; every surviving constant term must vanish (at m = 0).

    Phase two covers the strict side: for compositions v and partitions
    lam that dominate v sorted decreasingly with lam_0 > max(v), the
    constant term must vanish for every m in 0..n+1.
    """
    start = time.perf_counter()
    queries: list[CTQuery] = []
    for v in itertools.product(range(-weight_max, weight_max + 1), repeat=n + 1):
        s = sum(v)
        if not 0 <= s <= weight_max:
            continue
        vplus = sort_desc(v)
        for lam in partitions_of(s):
            if dominates(vplus, lam):
                continue
            for a in itertools.product(range(a_max + 1), repeat=n + 1):
                queries.append(CTQuery(n, v, lam, a, 0))
    for v in itertools.product(range(weight_max + 1), repeat=n + 1):
        s = sum(v)
        if s > weight_max:
            continue
        vplus = sort_desc(v)
        mx = max(v)
        for lam in partitions_of(s):
            if not lam or lam[0] <= mx or not dominates(lam, vplus):
                continue
            for a in itertools.product(range(a_max + 1), repeat=n + 1):
                for m in range(n + 2):
                    queries.append(CTQuery(n, v, lam, a, m))
    values = _parallel_values(queries, workers)
    report = Report(checked=len(queries))
    for query, got in zip(queries, values):
        if got:
            report.violations.append(Violation(query, QRat.zero(), got))
    report.elapsed = time.perf_counter() - start
    return report


def nonvanishing_queries(n: int, weight_max: int, a_max: int) -> list[CTQuery]:
    """The evidence box for the converse of the orthogonality theorem:
    compositions v with |v| <= weight_max, partitions lam dominated by v
    sorted decreasingly, and strictly positive weights a_i <= a_max, in
    lexicographic (v, lam, a) order."""
    if a_max < 1:
        return []
    out: list[CTQuery] = []
    for v in itertools.product(range(weight_max + 1), repeat=n + 1):
        s = sum(v)
        if s > weight_max:
            continue
        vplus = sort_desc(v)
        for lam in partitions_of(s):
            if not dominates(vplus, lam):
                continue
            for a in itertools.product(range(1, a_max + 1), repeat=n + 1):
                out.append(CTQuery(n, v, lam, a, 0))
    return out


def nonvanishing_scan(n: int, weight_max: int, a_max: int, workers: int = 1) -> Report:
    """Every constant term in the evidence box is expected to be nonzero;
    a vanishing value is recorded as a violation."""
    start = time.perf_counter()
    queries = nonvanishing_queries(n, weight_max, a_max)
    values = _parallel_values(queries, workers)
    report = Report(checked=len(queries))
    for query, got in zip(queries, values):
        if not got:
            report.violations.append(Violation(query, None, got))
    report.elapsed = time.perf_counter() - start
    return report


def roots_check(v: Sequence[int], a_rest: Sequence[int], m: int) -> Report:
    """Polynomiality and root structure in q^{a_0}.

    With v_0 the unique largest part of v and d = a_1+...+a_n+v_0, the
    constant term as a function of a_0 is a polynomial P of degree at most
    d in t = q^{a_0}.  This check brute-forces a_0 = 0..d+1, interpolates
    P through the first d+1 points, and asserts

      (i)   P(q^(d+1)) equals the extra brute-force value (degree bound),
      (ii)  P(q^(-j)) = 0 for j = 0..d-1 (the full root set),
      (iii) for m >= 1, P(q) matches the peeled constant term at a_0 = 1.
    """
    v = _check_composition("v", v)
    a_rest = _check_composition("a_rest", a_rest)
    n = len(v) - 1
    if len(a_rest) != n:
        raise ValueError(f"a_rest must have length {n}, got {a_rest}")
    if v[0] != max(v) or v.count(v[0]) != 1:
        raise ValueError(f"v_0 must be the unique largest part, got {v}")
    if not 0 <= m <= n + 1:
        raise ValueError(f"m={m} outside 0..{n + 1}")
    start = time.perf_counter()
    d = sum(a_rest) + v[0]
    lam = sort_desc(v)
    queries = [CTQuery(n, v, lam, (j,) + a_rest, m) for j in range(d + 2)]
    values = [constant_term(qy) for qy in queries]
    points = [(QRat.q_power(j), _as_qrat(values[j])) for j in range(d + 1)]
    coeffs = interpolate(points)
    report = Report()
    # (i) degree bound: the interpolant already predicts the next value
    report.checked += 1
    predicted = eval_poly(coeffs, QRat.q_power(d + 1))
    if predicted != _as_qrat(values[d + 1]):
        report.violations.append(Violation(queries[d + 1], predicted, values[d + 1]))
    # (ii) roots at a_0 = 0, -1, ..., -(d-1)
    for j in range(d):
        report.checked += 1
        at_root = eval_poly(coeffs, QRat.q_power(-j))
        if at_root:
            report.violations.append(Violation(queries[0], QRat.zero(), at_root))
    # (iii) value at a_0 = 1 via the peeled constant term
    if m >= 1 and n >= 1:
        report.checked += 1
        reduced = CTQuery(n - 1, v[1:], sort_desc(v[1:]), a_rest, m - 1)
        expected = QRat.q_power(sum(a_rest[: m - 1]) - v[0]) * _as_qrat(constant_term(reduced))
        at_one = eval_poly(coeffs, QRat.q_power(1))
        if at_one != expected:
            report.violations.append(Violation(queries[1], expected, at_one))
    report.elapsed = time.perf_counter() - start
    return report


def roots_suite(
    n_max: int = 2, weight_max: int = 3, a_max: int = 2, degree_cap: int = 5
) -> Report:
    """roots_check over every unique-first-maximum composition with
    |v| <= weight_max, strictly positive a_rest entries <= a_max, and all
    m, skipping combinations whose interpolation degree exceeds the cap."""
    report = Report()
    for n in range(1, n_max + 1):
        for w in range(1, weight_max + 1):
            for v in compositions_of(w, n + 1):
                if v[0] != max(v) or v.count(v[0]) != 1:
                    continue
                for a_rest in itertools.product(range(1, a_max + 1), repeat=n):
                    if sum(a_rest) + v[0] > degree_cap:
                        continue
                    for m in range(n + 2):
                        report.absorb(roots_check(v, a_rest, m))
    return report


def cyclic_check(query: CTQuery) -> Report:
    """Rotation relations for one query (requires m <= n):

      (a) the value equals q^{v_n} times the value of the right-rotated
          query with m+1;
      (b) m = n+1 equals q^{-|lambda|} times m = 0;
      (c) one full rotation instance: rotating v and a so the (first)
          maximum of v leads, with m' = ((m - k - 1) mod (n+1)) + 1 and
          the branch-dependent q-power prefactor.
    """
    if query.m > query.n:
        raise ValueError(f"cyclic check needs m <= n, got m={query.m}, n={query.n}")
    start = time.perf_counter()
    n, v, lam, a, m = query.n, query.v, query.lam, query.a, query.m
    report = Report()
    lhs = constant_term(query)

    rot_v = (v[-1],) + v[:-1]
    rot_a = (a[-1],) + a[:-1]
    rhs = constant_term(CTQuery(n, rot_v, lam, rot_a, m + 1))
    report.checked += 1
    if lhs != rhs.shift(v[-1]):
        report.violations.append(Violation(query, _as_qrat(rhs.shift(v[-1])), lhs))

    top = constant_term(CTQuery(n, v, lam, a, n + 1))
    base = constant_term(CTQuery(n, v, lam, a, 0))
    report.checked += 1
    if top != base.shift(-sum(lam)):
        report.violations.append(
            Violation(CTQuery(n, v, lam, a, n + 1), _as_qrat(base.shift(-sum(lam))), top)
        )

    k = v.index(max(v))
    m_prime = ((m - k - 1) % (n + 1)) + 1
    cyc_v = v[k:] + v[:k]
    cyc_a = a[k:] + a[:k]
    exponent = sum(v[k:]) if m <= k else -sum(v[:k])
    cycled = constant_term(CTQuery(n, cyc_v, lam, cyc_a, m_prime))
    report.checked += 1
    if lhs != cycled.shift(exponent):
        report.violations.append(Violation(query, _as_qrat(cycled.shift(exponent)), lhs))

    report.elapsed = time.perf_counter() - start
    return report


# fixed list of small queries exercising both rotation branches, negative
# entries, an empty partition, and a partition different from sorted v
_CYCLIC_QUERIES: tuple[CTQuery, ...] = (
    CTQuery(1, (0, 0), (), (1, 1), 0),
    CTQuery(1, (1, 0), (1,), (1, 1), 0),
    CTQuery(1, (1, 0), (1,), (1, 1), 1),
    CTQuery(1, (0, 1), (1,), (2, 1), 0),
    CTQuery(1, (1, 1), (2,), (1, 1), 0),
    CTQuery(1, (1, 1), (1, 1), (2, 1), 1),
    CTQuery(1, (2, 0), (2,), (1, 2), 0),
    CTQuery(1, (2, 0), (1, 1), (2, 2), 1),
    CTQuery(1, (-1, 1), (), (1, 1), 0),
    CTQuery(1, (-1, 2), (1,), (2, 1), 1),
    CTQuery(1, (2, 1), (2, 1), (2, 1), 0),
    CTQuery(1, (3, 0), (2, 1), (1, 1), 1),
    CTQuery(2, (0, 0, 0), (), (1, 1, 1), 0),
    CTQuery(2, (1, 0, 0), (1,), (1, 1, 1), 0),
    CTQuery(2, (0, 1, 0), (1,), (1, 1, 1), 1),
    CTQuery(2, (0, 0, 1), (1,), (2, 1, 1), 2),
    CTQuery(2, (2, 1, 0), (2, 1), (1, 1, 1), 0),
    CTQuery(2, (1, 0, 1), (1, 1), (1, 2, 1), 1),
    CTQuery(2, (0, 2, 1), (2, 1), (1, 1, 2), 2),
    CTQuery(2, (-1, 1, 1), (1,), (1, 1, 1), 0),
)


def cyclic_suite(count: int = 20) -> Report:
    """cyclic_check over the first ``count`` queries of the fixed list."""
    report = Report()
    for query in _CYCLIC_QUERIES[:count]:
        report.absorb(cyclic_check(query))
    return report
