from fractions import Fraction

import pytest

from dyckbaker.enumeration import PeriodicSetQuery, enumerate_periodic
from dyckbaker.errors import EmptyEnsembleError, WordFormatError
from dyckbaker.measures import (
    CSV_HEADER,
    MeasureTarget,
    admissible_words,
    build_empirical,
    compare_to_target,
    decimal_str,
    report_csv_rows,
    report_json_dict,
    union_empirical,
)
from dyckbaker.words import PeriodClass, parse_word, reduce_word, rotate

W = parse_word
A, B, Z = PeriodClass.ALPHA, PeriodClass.BETA, PeriodClass.ZERO
F = Fraction


def test_admissible_words_are_exactly_the_nonzero_ones():
    ws = list(admissible_words(2, 2))
    assert ws == sorted(ws)
    # 16 words minus the two adjacent mismatches a1b2 and a2b1
    assert len(ws) == 14
    assert W("b1,a2") in ws  # legal window even though not a legal period
    assert all(not reduce_word(v).is_zero for v in ws)


def test_alpha_n2_m1_table():
    e = build_empirical(2, 2, A, 1)
    assert e.word_count == 4
    assert e.table == {
        W("a1"): F(1, 2),
        W("a2"): F(1, 2),
        W("b1"): F(0),
        W("b2"): F(0),
    }


def test_zero_n2_m1_table_is_uniform():
    e = build_empirical(2, 2, Z, 1)
    assert set(e.table.values()) == {F(1, 4)}


def test_alpha_n2_m2_table():
    e = build_empirical(2, 2, A, 2)
    quarters = {W("a1,a1"), W("a1,a2"), W("a2,a1"), W("a2,a2")}
    for v, freq in e.table.items():
        assert freq == (F(1, 4) if v in quarters else F(0))


def test_frequencies_sum_to_one():
    for cls, n in ((A, 5), (B, 5), (Z, 6)):
        for m in (1, 2, 3):
            e = build_empirical(2, n, cls, m)
            assert sum(e.table.values()) == 1


def test_cyclic_tally_equals_start_count():
    # independent realization: count words starting with each window
    for cls, n, m in ((A, 6, 2), (B, 5, 1), (Z, 6, 3)):
        e = build_empirical(2, n, cls, m)
        ensemble = list(enumerate_periodic(PeriodicSetQuery(2, n, cls)))
        for v, freq in e.table.items():
            starts = sum(1 for w in ensemble if w[: m] == v)
            assert freq == F(starts, len(ensemble)), (cls, n, m, v)


def test_rotation_invariance_of_the_table():
    # replacing every word by a fixed rotation leaves frequencies unchanged
    n, m = 6, 2
    e = build_empirical(2, n, A, m)
    ensemble = [rotate(w, 2) for w in enumerate_periodic(PeriodicSetQuery(2, n, A))]
    for v, freq in e.table.items():
        starts = sum(1 for w in ensemble if w[: m] == v)
        assert freq == F(starts, len(ensemble))


def test_union_is_exact_average_of_classes():
    for n, m in ((2, 1), (5, 2), (6, 1)):
        u = union_empirical(2, n, m)
        ea = build_empirical(2, n, A, m)
        eb = build_empirical(2, n, B, m)
        for v in u.table:
            assert u.table[v] == (ea.table[v] + eb.table[v]) / 2
    assert union_empirical(2, 2, 1).frequency(W("a1")) == F(1, 4)


def test_empty_ensemble_raises():
    with pytest.raises(EmptyEnsembleError):
        build_empirical(2, 3, Z, 1)


def test_window_length_validated():
    with pytest.raises(WordFormatError):
        build_empirical(2, 3, A, 0)
    with pytest.raises(WordFormatError):
        build_empirical(2, 3, A, 4)


def test_self_comparison_has_zero_distance():
    e = build_empirical(2, 4, A, 1)
    fake = e.table.copy()
    from dyckbaker.measures import EmpiricalDistribution, target_cylinder

    exact = EmpiricalDistribution(
        2, 4, A, 1,
        {v: target_cylinder(MeasureTarget.ALPHA, v, 2) for v in fake},
        e.word_count,
    )
    rep = compare_to_target(exact, MeasureTarget.ALPHA)
    assert rep.sup_distance == 0


def test_alpha_n2_m1_residual_against_target():
    rep = compare_to_target(build_empirical(2, 2, A, 1), MeasureTarget.ALPHA)
    assert rep.residuals[W("a1")] == (F(1, 2), F(1, 3), F(1, 6))
    assert rep.residuals[W("b1")] == (F(0), F(1, 6), F(1, 6))
    assert rep.sup_distance == F(1, 6)


def test_distance_shrinks_with_period():
    d6 = compare_to_target(build_empirical(2, 6, A, 1), MeasureTarget.ALPHA)
    d10 = compare_to_target(build_empirical(2, 10, A, 1), MeasureTarget.ALPHA)
    assert d10.sup_distance < d6.sup_distance


def test_union_against_mixture_is_exact_at_m1():
    rep = compare_to_target(union_empirical(2, 6, 1), MeasureTarget.MIXTURE)
    assert rep.sup_distance == 0


def test_threads_do_not_change_the_table():
    assert build_empirical(2, 6, A, 2) == build_empirical(2, 6, A, 2, threads=3)


def test_decimal_rendering():
    assert decimal_str(F(1, 3), 12) == "0.333333333333"
    assert decimal_str(F(1, 2), 5) == "0.5"
    assert decimal_str(F(0), 5) == "0"


def test_report_emitters():
    rep = compare_to_target(build_empirical(2, 2, A, 1), MeasureTarget.ALPHA)
    rows = list(report_csv_rows(rep))
    assert len(rows) == 4 and rows[0][0] == "2"
    assert len(CSV_HEADER) == 5
    d = report_json_dict(rep)
    assert d["class"] == "alpha" and d["sup_distance"] == decimal_str(F(1, 6))
    assert len(d["residuals"]) == 4
