"""Enumeration and exact counting of periodic-point classes.

Period-n sets here contain every word whose repetition has period dividing
n (no deduplication to least periods); the closed-form counts and all
measures downstream are defined over exactly these sets. Enumeration order
is canonical lexicographic (a1 < ... < aM < b1 < ... < bM), identical
across lanes and shardings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from . import _kernels
from ._kernels import pure
from .errors import ResourceLimitError, WordFormatError
from .words import PeriodClass, Word, word_from_codes

DEFAULT_NODE_BUDGET = 10**9

_CLS_CODE = {
    None: _kernels.CLASS_ALL,
    PeriodClass.ALPHA: _kernels.CLASS_ALPHA,
    PeriodClass.BETA: _kernels.CLASS_BETA,
    PeriodClass.ZERO: _kernels.CLASS_ZERO,
}

# materialize enumerations up to this leaf count, stream beyond
_MATERIALIZE_LIMIT = 1 << 22


@dataclass(frozen=True)
class PeriodicSetQuery:
    """Which periodic words: alphabet size, period, class (None = all)."""

    M: int
    n: int
    cls: PeriodClass | None = None

    def __post_init__(self) -> None:
        if self.M < 1:
            raise WordFormatError(f"M must be >= 1, got {self.M}")
        if self.n < 1:
            raise WordFormatError(f"period must be >= 1, got {self.n}")


@dataclass(frozen=True)
class CountReport:
    M: int
    n: int
    cls: PeriodClass | None
    closed_form: int
    enumerated: int | None = None

    @property
    def consistent(self) -> bool:
        return self.enumerated is None or self.enumerated == self.closed_form

    def to_json_dict(self) -> dict:
        d = {
            "M": self.M,
            "n": self.n,
            "class": self.cls.value if self.cls else "all",
            "closed_form": str(self.closed_form),
        }
        if self.enumerated is not None:
            d["enumerated"] = str(self.enumerated)
        return d


def projected_nodes(M: int, n: int) -> int:
    """Upper-order estimate of DFS nodes one enumeration will visit."""
    return 2 * sum((M + 1) ** d for d in range(n + 1))


def _check_budget(q: PeriodicSetQuery, budget: int) -> None:
    est = projected_nodes(q.M, q.n)
    if est > budget:
        raise ResourceLimitError(
            f"enumeration at M={q.M}, n={q.n} projects about {est} nodes, "
            f"budget is {budget}"
        )


def count_closed_form(q: PeriodicSetQuery) -> int:
    """Exact class size by the closed formulas (big integers throughout).

    Each of the alpha and beta classes has (M+1)^n minus the partial
    binomial sum of C(n,i) M^i over i <= n/2; the zero class is
    C(n, n/2) M^(n/2) for even n and empty for odd n.
    """
    M, n = q.M, q.n
    if q.cls is PeriodClass.ZERO:
        return _count_zero(M, n)
    if q.cls is not None:
        return _count_one_sided(M, n)
    return 2 * _count_one_sided(M, n) + _count_zero(M, n)


def _count_one_sided(M: int, n: int) -> int:
    return (M + 1) ** n - sum(math.comb(n, i) * M**i for i in range(n // 2 + 1))


def _count_zero(M: int, n: int) -> int:
    return math.comb(n, n // 2) * M ** (n // 2) if n % 2 == 0 else 0


def count_enumerated(q: PeriodicSetQuery, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Class size found by actually walking the pruned search tree."""
    _check_budget(q, budget)
    return _kernels.count_class(q.M, q.n, _CLS_CODE[q.cls])


def count_report(
    q: PeriodicSetQuery, enumerate_: bool = False, budget: int = DEFAULT_NODE_BUDGET
) -> CountReport:
    return CountReport(
        q.M,
        q.n,
        q.cls,
        count_closed_form(q),
        count_enumerated(q, budget) if enumerate_ else None,
    )


def enumerate_periodic(
    q: PeriodicSetQuery, budget: int = DEFAULT_NODE_BUDGET
) -> Iterator[Word]:
    """Stream the class in canonical lexicographic order, each word once."""
    _check_budget(q, budget)
    code = _CLS_CODE[q.cls]
    if (q.M + 1) ** q.n <= _MATERIALIZE_LIMIT:
        for row in _kernels.word_array(q.M, q.n, code):
            yield word_from_codes(row, q.M)
    else:
        for codes in pure.iter_codes(q.M, q.n, code):
            yield word_from_codes(codes, q.M)


def verify_count_bounds(M: int, n: int) -> bool:
    """Whether (1/3)(M+1)^n <= #class <= (M+1)^n - 1 holds at this n."""
    cnt = _count_one_sided(M, n)
    full = (M + 1) ** n
    return 3 * cnt >= full and cnt < full


def count_bounds_report(M: int, n_max: int) -> dict:
    """Bound check over 1..n_max plus the first n from which it always holds."""
    rows = []
    for n in range(1, n_max + 1):
        cnt = _count_one_sided(M, n)
        rows.append({"n": n, "count": cnt, "holds": verify_count_bounds(M, n)})
    first = None
    for row in reversed(rows):
        if not row["holds"]:
            break
        first = row["n"]
    return {"M": M, "n_max": n_max, "rows": rows, "first_permanent_n": first}


def shard_prefixes(M: int, depth: int) -> list[tuple[int, ...]]:
    """Reduce-nonzero prefixes of the given depth, in lexicographic order.

    The DFS forest splits exactly along these: every admissible word of
    length >= depth extends exactly one of them.
    """
    if depth > 8:
        raise ResourceLimitError("shard depth capped at 8")
    return [
        p
        for p in itertools.product(range(2 * M), repeat=depth)
        if pure._scan_prefix(M, p) is not None
    ]


def pick_shard_depth(M: int, n: int, workers: int) -> int:
    """Smallest prefix depth giving a comfortable shard surplus."""
    depth = 1
    while depth < min(n - 1, 6) and (M + 1) ** depth < 8 * workers:
        depth += 1
    return max(1, min(depth, n - 1)) if n > 1 else 0
