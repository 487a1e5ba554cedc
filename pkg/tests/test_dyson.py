import pickle
import random

import pytest

from qdyson.dyson import (
    CTQuery,
    Report,
    Violation,
    _parallel_values,
    admissible_sigmas,
    compositions_of,
    constant_term,
    cyclic_check,
    cyclic_suite,
    distinct_parts_closed_form,
    distinct_parts_plan,
    dominates,
    kadell_closed_form,
    nonvanishing_queries,
    nonvanishing_scan,
    orthogonality_scan,
    partitions_of,
    qdyson_closed_form,
    reduce_first_part,
    reduce_largest_part,
    roots_check,
    sort_desc,
    trim_zeros,
)
from qdyson.laurentx import dyson_product
from qdyson.qseries import PoleError, QLaurent, QRat, qbinom
from qdyson.symfunc import build_alphabet, h_lambda


def brute_force(query):
    """Independent oracle: full expansion with no short-circuit, no window,
    no caches."""
    hpoly = h_lambda(build_alphabet(query.a, query.m), query.lam)
    return (hpoly * dyson_product(query.a)).coeff(query.v)


# -- helpers -------------------------------------------------------------------


def test_sort_desc_and_trim():
    assert sort_desc((0, 2, 3, 2, 1)) == (3, 2, 2, 1, 0)
    assert trim_zeros((3, 2, 0, 0)) == (3, 2)
    assert trim_zeros((0, 0)) == ()


def test_dominates():
    assert dominates((3, 2, 2, 1, 0), (3, 2, 2, 1, 0))
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    # different lengths are zero-padded; equal totals are not required
    assert dominates((2,), (1, 1))
    assert dominates((2, 1), (2,))
    assert not dominates((2,), (2, 1))


def test_partitions_and_compositions():
    assert list(partitions_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions_of(0)) == [()]
    assert list(compositions_of(2, 2)) == [(0, 2), (1, 1), (2, 0)]


# -- CTQuery -------------------------------------------------------------------


def test_ctquery_validation():
    q = CTQuery(1, (1, 0), (1, 0), (1, 1), 0)
    assert q.lam == (1,)  # zero tail trimmed
    with pytest.raises(ValueError):
        CTQuery(1, (1,), (1,), (1, 1), 0)
    with pytest.raises(ValueError):
        CTQuery(1, (1, 0), (1,), (1, -1), 0)
    with pytest.raises(ValueError):
        CTQuery(1, (1, 0), (0, 1), (1, 1), 0)
    with pytest.raises(ValueError):
        CTQuery(1, (1, 0), (1,), (1, 1), 3)


def test_ctquery_json_and_pickle():
    q = CTQuery(2, (2, -1, 1), (2,), (1, 0, 2), 1)
    obj = q.to_json()
    assert obj == {"n": 2, "v": [2, -1, 1], "lambda": [2], "a": [1, 0, 2], "m": 1}
    assert CTQuery.from_json(obj) == q
    assert pickle.loads(pickle.dumps(q)) == q


# -- constant_term --------------------------------------------------------------


def test_constant_term_principal_case():
    # one variable: h_1 of {x_0, x_0 q} has x_0-coefficient 1 + q
    got = constant_term(CTQuery(0, (1,), (1,), (2,), 0))
    assert got == QLaurent({0: 1, 1: 1})
    assert QRat(got) == qbinom(2, 1)


def test_constant_term_qdyson_case():
    got = constant_term(CTQuery(1, (0, 0), (), (1, 1), 0))
    assert got == QLaurent({0: 1, 1: 1})


def test_constant_term_weight_mismatch_is_zero():
    assert not constant_term(CTQuery(1, (1, 0), (2,), (1, 1), 0))


def test_weight_mismatch_matches_expanded_computation():
    rng = random.Random(314)
    found = 0
    while found < 10:
        n = rng.randint(0, 2)
        v = tuple(rng.randint(-2, 2) for _ in range(n + 1))
        lam_weight = rng.randint(0, 3)
        if sum(v) == lam_weight:
            continue
        lam = rng.choice(list(partitions_of(lam_weight)))
        a = tuple(rng.randint(0, 2) for _ in range(n + 1))
        m = rng.randint(0, n + 1)
        query = CTQuery(n, v, lam, a, m)
        assert constant_term(query) == QLaurent.zero() == brute_force(query)
        found += 1


def test_windowed_and_full_paths_agree():
    queries = [
        CTQuery(1, (1, 0), (1,), (2, 1), 0),
        CTQuery(1, (2, 1), (2, 1), (2, 2), 1),
        CTQuery(2, (2, 0, 1), (2, 1), (1, 2, 1), 2),
        CTQuery(2, (0, 0, 0), (), (2, 1, 2), 0),
        CTQuery(3, (1, 0, 0, 0), (1,), (1, 1, 1, 1), 0),
    ]
    for query in queries:
        full = constant_term(query, window=False)
        windowed = constant_term(query, window=True)
        assert full == windowed == brute_force(query)


def test_constant_term_negative_entries():
    query = CTQuery(1, (-1, 1), (), (2, 1), 0)
    assert constant_term(query) == brute_force(query)


# -- closed forms ----------------------------------------------------------------


def test_qdyson_closed_form_values():
    assert qdyson_closed_form((0, 0, 0)) == QRat.one()
    assert qdyson_closed_form((1, 1)) == QRat(QLaurent({0: 1, 1: 1}))
    for a in [(1, 1, 1), (2, 1), (2, 2, 1)]:
        closed = qdyson_closed_form(a)
        assert closed.is_polynomial()
        n = len(a) - 1
        assert QRat(constant_term(CTQuery(n, (0,) * (n + 1), (), a, 0))) == closed


def test_kadell_closed_form_hot_branch():
    assert kadell_closed_form((1, 0), (1, 1)) == QRat(QLaurent.q_power(1))
    got = constant_term(CTQuery(1, (1, 0), (1,), (1, 1), 0))
    assert QRat(got) == kadell_closed_form((1, 0), (1, 1))


def test_kadell_closed_form_otherwise_branch():
    assert kadell_closed_form((1, 1, 0), (1, 1, 1)) == QRat.zero()
    assert not constant_term(CTQuery(2, (1, 1, 0), (2,), (1, 1, 1), 0))


def test_kadell_single_variable_reduces_to_qbinom():
    for r in range(1, 4):
        for a0 in range(1, 4):
            assert kadell_closed_form((r,), (a0,)) == qbinom(a0 + r - 1, r)
            got = constant_term(CTQuery(0, (r,), (r,), (a0,), 0))
            assert QRat(got) == qbinom(a0 + r - 1, r)


def test_kadell_pole_and_usage_errors():
    with pytest.raises(PoleError):
        kadell_closed_form((2, 0), (0, 0))
    with pytest.raises(ValueError):
        kadell_closed_form((0, 0), (1, 1))
    with pytest.raises(ValueError):
        kadell_closed_form((1, -1), (1, 1))


def test_kadell_hot_index_structure():
    # relative to the q-Dyson value, the nonzero branch depends only on
    # (r, |a|, a_k, sum of a past k)
    def ratio(v, a):
        return kadell_closed_form(v, a) / qdyson_closed_form(a)

    # same (r=2, |a|=5, a_k=2, tail=3), different arrangements
    assert ratio((2, 0, 0), (2, 3, 0)) == ratio((2, 0, 0), (2, 1, 2))
    assert ratio((2, 0, 0), (2, 0, 3)) == ratio((0, 2, 0), (0, 2, 3))


# -- recursions -------------------------------------------------------------------


def test_reduce_largest_part_shape():
    step = reduce_largest_part((0, 2, 3, 2, 1), (1, 1, 1, 1, 1))
    assert step.reduced.v == (0, 2, 2, 1)
    assert step.reduced.lam == (2, 2, 1)
    assert step.reduced.a == (1, 1, 1, 1)
    assert step.reduced.m == 0


def test_reduce_largest_part_identity_small():
    v, a = (1, 0), (1, 1)
    step = reduce_largest_part(v, a)
    assert step.factor == QRat(QLaurent.q_power(1)) * qbinom(1 + 2 - 1, 0)
    lhs = constant_term(CTQuery(1, v, (1,), a, 0))
    rhs = constant_term(step.reduced)
    assert QRat(lhs) == step.factor * QRat(rhs)


def test_reduce_largest_part_guards():
    with pytest.raises(ValueError):
        reduce_largest_part((2, 2, 0), (1, 1, 1))  # tied maximum
    with pytest.raises(ValueError):
        reduce_largest_part((2, 1), (0, 1))  # zero weight at the maximum
    with pytest.raises(ValueError):
        reduce_largest_part((2,), (1,))  # nothing left to reduce to


def test_reduce_first_part_identity():
    for a in [(1, 1), (2, 1), (3, 2)]:
        step = reduce_first_part((1, 0), a, 1)
        assert step.factor == QRat(QLaurent.q_power(-1)) * qbinom(sum(a), a[0] - 1)
        assert step.reduced == CTQuery(0, (0,), (), (a[1],), 0)
        assert constant_term(step.reduced) == QLaurent.one()
        lhs = constant_term(CTQuery(1, (1, 0), (1,), a, 1))
        assert QRat(lhs) == step.factor


def test_reduce_first_part_guards():
    with pytest.raises(ValueError):
        reduce_first_part((0, 1), (1, 1), 1)  # v_0 not the maximum
    with pytest.raises(ValueError):
        reduce_first_part((1, 0), (1, 1), 3)  # m out of range
    with pytest.raises(ValueError):
        reduce_first_part((1, 0), (0, 1), 1)  # zero leading weight


# -- distinct parts ---------------------------------------------------------------


def test_distinct_parts_plan():
    plan = distinct_parts_plan((2, 1, 0), (1, 1, 1))
    assert plan.l == 2
    assert plan.sigma == (0, 1, 2)
    assert plan.c == 3
    # zero parts tie-break by ascending index
    plan = distinct_parts_plan((0, 2, 0), (1, 1, 1))
    assert plan.sigma == (1, 0, 2)


def test_distinct_parts_plan_rejects_repeats():
    with pytest.raises(ValueError):
        distinct_parts_plan((2, 2, 0), (1, 1, 1))


def test_distinct_parts_closed_form_matches_brute_force():
    for v, a in [
        ((2, 1, 0), (1, 1, 1)),
        ((0, 2, 1), (2, 1, 1)),
        ((3, 0, 1), (1, 2, 1)),
        ((0, 0), (2, 2)),
    ]:
        n = len(v) - 1
        closed = distinct_parts_closed_form(v, a)
        got = constant_term(CTQuery(n, v, sort_desc(v), a, 0))
        assert QRat(got) == closed


def test_distinct_parts_sigma_independence():
    v, a = (0, 2, 0), (2, 1, 1)
    sigmas = list(admissible_sigmas(v))
    assert len(sigmas) == 2
    values = {distinct_parts_closed_form(v, a, sigma) for sigma in sigmas}
    assert len(values) == 1


def test_distinct_parts_degenerations():
    # no positive part: the plain q-Dyson value
    assert distinct_parts_closed_form((0, 0, 0), (2, 1, 1)) == qdyson_closed_form((2, 1, 1))
    # one positive part: the single-row closed form
    assert distinct_parts_closed_form((0, 3, 0), (1, 2, 1)) == kadell_closed_form(
        (0, 3, 0), (1, 2, 1)
    )


def test_distinct_parts_zero_weight_at_positive_part():
    v, a = (2, 1), (1, 0)
    assert distinct_parts_closed_form(v, a) == QRat.zero()
    assert not constant_term(CTQuery(1, v, (2, 1), a, 0))


# -- scans -------------------------------------------------------------------------


def test_orthogonality_scan_small():
    report = orthogonality_scan(1, 3, 1)
    assert report.checked > 0
    assert report.passed


def test_nonvanishing_scan_small():
    report = nonvanishing_scan(1, 4, 2)
    assert report.checked == len(nonvanishing_queries(1, 4, 2))
    assert report.passed


def test_nonvanishing_empty_box():
    assert nonvanishing_queries(1, 3, 0) == []
    report = nonvanishing_scan(1, 3, 0)
    assert report.checked == 0 and report.passed


def test_nonvanishing_single_row_for_weight_zero():
    queries = nonvanishing_queries(1, 0, 1)
    assert queries == [CTQuery(1, (0, 0), (), (1, 1), 0)]


def test_report_json():
    report = Report(checked=3, elapsed=0.5)
    report.violations.append(
        Violation(CTQuery(0, (0,), (), (1,), 0), QRat.zero(), QLaurent.one())
    )
    obj = report.to_json()
    assert obj["checked"] == 3
    assert obj["elapsed_s"] == 0.5
    assert obj["violations"][0]["expected"] == {"num": {"terms": []}, "den": {"terms": [{"q": 0, "c": "1"}]}}
    assert "elapsed_s" not in report.to_json(include_elapsed=False)


# -- roots and cyclic relations -------------------------------------------------------


def test_roots_check_basic():
    report = roots_check((1, 0), (1,), 0)
    assert report.passed
    # d = 2: the a_0 = 0 evaluation itself vanishes
    assert not constant_term(CTQuery(1, (1, 0), (1,), (0, 1), 0))


def test_roots_check_all_m():
    for m in range(3):
        assert roots_check((1, 0), (2,), m).passed


def test_roots_check_guards():
    with pytest.raises(ValueError):
        roots_check((0, 1), (1,), 0)  # v_0 not the maximum
    with pytest.raises(ValueError):
        roots_check((1, 0), (1, 1), 0)  # wrong a_rest length
    with pytest.raises(ValueError):
        roots_check((1, 0), (1,), 5)  # m out of range


def test_cyclic_check_examples():
    assert cyclic_check(CTQuery(1, (0, 0), (), (1, 1), 0)).passed
    assert cyclic_check(CTQuery(1, (1, 0), (1,), (1, 1), 0)).passed
    with pytest.raises(ValueError):
        cyclic_check(CTQuery(1, (1, 0), (1,), (1, 1), 2))  # needs m <= n


def test_cyclic_suite_runs_twenty_queries():
    report = cyclic_suite()
    assert report.checked == 60  # three relations per query
    assert report.passed


# -- parallel evaluation ---------------------------------------------------------------


def test_parallel_values_match_serial():
    queries = nonvanishing_queries(1, 5, 2)
    assert len(queries) >= 64
    serial = _parallel_values(queries, 1)
    parallel = _parallel_values(queries, 2)
    assert serial == parallel


def test_scan_reports_deterministic_across_workers():
    one = orthogonality_scan(1, 3, 1, workers=1)
    two = orthogonality_scan(1, 3, 1, workers=2)
    assert one.checked == two.checked
    assert one.violations == two.violations
