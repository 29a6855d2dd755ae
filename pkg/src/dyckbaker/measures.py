"""Empirical distributions of periodic ensembles and residuals vs the MMEs.

Frequencies are exact rationals built from integer window tallies: the
ensembles are closed under rotation, so the frequency of starting with a
word v equals the average frequency of v across all cyclic windows, and
the latter is what gets accumulated (one pass over each word, no restart
per rotation). Floating point appears only in rendering.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Iterator

from . import _kernels
from .enumeration import _CLS_CODE, PeriodicSetQuery, _check_budget, DEFAULT_NODE_BUDGET
from .errors import EmptyEnsembleError, WordFormatError
from .krieger import Side, mixture_cylinder, mme_cylinder
from .words import PeriodClass, Word, format_word, reduce_word, word_from_codes


class MeasureTarget(Enum):
    ALPHA = "alpha"
    BETA = "beta"
    MIXTURE = "mixture"


def target_cylinder(target: MeasureTarget, v: Word, M: int) -> Fraction:
    if target is MeasureTarget.ALPHA:
        return mme_cylinder(Side.ALPHA, v, M)
    if target is MeasureTarget.BETA:
        return mme_cylinder(Side.BETA, v, M)
    return mixture_cylinder(v, M)


def admissible_words(M: int, m: int) -> Iterator[Word]:
    """Length-m words with nonzero reduction, in canonical order."""

    def rec(codes: tuple[int, ...]) -> Iterator[Word]:
        if len(codes) == m:
            yield word_from_codes(codes, M)
            return
        for c in range(2 * M):
            nxt = codes + (c,)
            if not reduce_word(word_from_codes(nxt, M)).is_zero:
                yield from rec(nxt)

    yield from rec(())


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Window frequencies of one periodic ensemble, exact rationals.

    ``table`` has every nonzero-reduction word of length m as a key; the
    values sum to exactly 1. ``word_count`` is the ensemble size.
    """

    M: int
    n: int
    cls: PeriodClass | None  # None marks the alpha+beta union ensemble
    m: int
    table: dict[Word, Fraction]
    word_count: int

    def frequency(self, v: Word) -> Fraction:
        return self.table.get(v, Fraction(0))


def _tally_to_table(M: int, m: int, tally, denom: int) -> dict[Word, Fraction]:
    width = 2 * M
    table: dict[Word, Fraction] = {}
    for v in admissible_words(M, m):
        code = 0
        for s in v:
            code = code * width + s.code(M)
        table[v] = Fraction(int(tally[code]), denom)
    return table


def _tally(M: int, n: int, cls_code: int, m: int, threads: int):
    if threads > 1:
        from .parallel import sharded_cylinder_counts

        return sharded_cylinder_counts(M, n, cls_code, m, threads)
    return _kernels.cylinder_counts(M, n, cls_code, m)


def build_empirical(
    M: int,
    n: int,
    cls: PeriodClass,
    m: int,
    budget: int = DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> EmpiricalDistribution:
    """Frequency of each length-m window over the class ensemble.

    frequency(v) = (# words starting with v) / (# words); computed as the
    cyclic-window average, which is equal by rotation closure.
    """
    if not 1 <= m <= n:
        raise WordFormatError(f"window length must be in 1..{n}, got {m}")
    q = PeriodicSetQuery(M, n, cls)
    _check_budget(q, budget)
    tally, words = _tally(M, n, _CLS_CODE[cls], m, threads)
    if words == 0:
        raise EmptyEnsembleError(f"no periodic words for M={M}, n={n}, {cls.value}")
    return EmpiricalDistribution(M, n, cls, m, _tally_to_table(M, m, tally, n * words), words)


def union_empirical(
    M: int, n: int, m: int, budget: int = DEFAULT_NODE_BUDGET, threads: int = 1
) -> EmpiricalDistribution:
    """Empirical distribution of the alpha and beta classes pooled.

    The two class counts are equal, so this is exactly the 50/50 average
    of the class distributions; the equality is asserted here.
    """
    if not 1 <= m <= n:
        raise WordFormatError(f"window length must be in 1..{n}, got {m}")
    _check_budget(PeriodicSetQuery(M, n), budget)
    tally_a, words_a = _tally(M, n, _kernels.CLASS_ALPHA, m, threads)
    tally_b, words_b = _tally(M, n, _kernels.CLASS_BETA, m, threads)
    if words_a == 0 and words_b == 0:
        raise EmptyEnsembleError(f"no one-sided periodic words for M={M}, n={n}")
    if words_a != words_b:
        raise AssertionError(
            f"class counts differ ({words_a} vs {words_b}); symmetry is broken"
        )
    words = words_a + words_b
    return EmpiricalDistribution(
        M, n, None, m, _tally_to_table(M, m, tally_a + tally_b, n * words), words
    )


@dataclass(frozen=True)
class ConvergenceReport:
    """Residuals of one empirical distribution against one target measure."""

    M: int
    n: int
    m: int
    cls: PeriodClass | None
    target: MeasureTarget
    sup_distance: Fraction
    residuals: dict[Word, tuple[Fraction, Fraction, Fraction]]  # emp, exact, |diff|

    def rows(self) -> Iterator[tuple[str, Fraction, Fraction, Fraction]]:
        for v, (emp, exact, err) in self.residuals.items():
            yield format_word(v), emp, exact, err


def compare_to_target(
    e: EmpiricalDistribution, target: MeasureTarget
) -> ConvergenceReport:
    """Sup distance over length-m cylinders plus the full residual table."""
    residuals: dict[Word, tuple[Fraction, Fraction, Fraction]] = {}
    sup = Fraction(0)
    for v, emp in e.table.items():
        exact = target_cylinder(target, v, e.M)
        err = abs(emp - exact)
        residuals[v] = (emp, exact, err)
        if err > sup:
            sup = err
    return ConvergenceReport(e.M, e.n, e.m, e.cls, target, sup, residuals)


def decimal_str(x: Fraction, digits: int = 12) -> str:
    """Render an exact rational to the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


CSV_HEADER = ("n", "cylinder", "empirical", "exact", "abs_error")


def report_csv_rows(
    report: ConvergenceReport, digits: int = 12
) -> Iterator[tuple[str, ...]]:
    """Data rows for the residual CSV (header is CSV_HEADER)."""
    for name, emp, exact, err in report.rows():
        yield (
            str(report.n),
            name,
            decimal_str(emp, digits),
            decimal_str(exact, digits),
            decimal_str(err, digits),
        )


def report_json_dict(report: ConvergenceReport, digits: int = 12) -> dict:
    return {
        "M": report.M,
        "n": report.n,
        "cylinder_length": report.m,
        "class": report.cls.value if report.cls else "union",
        "target": report.target.value,
        "sup_distance": decimal_str(report.sup_distance, digits),
        "residuals": [
            {
                "cylinder": name,
                "empirical": decimal_str(emp, digits),
                "exact": decimal_str(exact, digits),
                "abs_error": decimal_str(err, digits),
            }
            for name, emp, exact, err in report.rows()
        ],
    }
