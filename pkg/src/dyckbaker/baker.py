"""Exact-rational piecewise-affine baker maps on the cube and the square.

The unit cube splits into 2M tiles: M vertical slabs [(k-1)a, ka) x [0,1]^2
carrying the left-bracket branches (expand xu by 1/a, contract xc into the
k-th horizontal slab, contract xs by 1-Mb) and, over xu in [Ma, 1], M
center slabs carrying the right-bracket branches (expand xu by 1/(1-Ma),
expand xc by M, contract xs by b into the k-th top slab). All arithmetic is
over Fraction, so tile membership, periodicity and multipliers are decided
exactly. The square map is the projection that drops xs; b is then unused.

A periodic word w determines at most one orbit: composing the n affine
steps gives x -> Sx + C per coordinate with S != 1 whenever the word
height is nonzero, and the fixed point C/(1-S) is checked against every
tile along the orbit, in the closed tiles, recording per-step interiority.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import (
    ConstraintViolationError,
    NonHyperbolicError,
    NotPeriodicPointError,
    WordFormatError,
)
from .krieger import fraction_str
from .words import (
    LEFT,
    RIGHT,
    PeriodClass,
    Symbol,
    Word,
    format_word,
    height,
    is_periodic_point,
)

ZERO_F = Fraction(0)
ONE_F = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" exactly; float syntax is rejected on purpose."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise WordFormatError(f"rational parameters must be exact, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise WordFormatError(f"bad rational {text!r}") from exc


@dataclass(frozen=True)
class BakerParams:
    M: int
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if self.M < 2:
            raise WordFormatError(f"baker maps need M >= 2, got {self.M}")
        limit = Fraction(1, self.M)
        if not (0 < self.a < limit):
            raise WordFormatError(f"need 0 < a < 1/{self.M}, got {self.a}")
        if not (0 < self.b < limit):
            raise WordFormatError(f"need 0 < b < 1/{self.M}, got {self.b}")

    @classmethod
    def with_default_b(cls, M: int, a: Fraction) -> "BakerParams":
        """Square-map parameters; b is irrelevant there and defaulted."""
        return cls(M, a, Fraction(1, 2 * M))


@dataclass(frozen=True)
class Point3:
    xu: Fraction
    xc: Fraction
    xs: Fraction

    def __post_init__(self) -> None:
        for name in ("xu", "xc", "xs"):
            v = getattr(self, name)
            if not (0 <= v <= 1):
                raise WordFormatError(f"{name}={v} outside [0,1]")

    def as_strings(self) -> dict[str, str]:
        return {
            "xu": fraction_str(self.xu),
            "xc": fraction_str(self.xc),
            "xs": fraction_str(self.xs),
        }


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def contains(self, x: Fraction) -> bool:
        if not (self.lo < x < self.hi):
            return (self.lo_closed and x == self.lo) or (
                self.hi_closed and x == self.hi
            )
        return True

    def contains_closed(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_interior(self, x: Fraction) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class AffineStep:
    """One branch: per-coordinate slope/intercept and its tile."""

    symbol: Symbol
    slope_u: Fraction
    icept_u: Fraction
    slope_c: Fraction
    icept_c: Fraction
    slope_s: Fraction
    icept_s: Fraction
    dom_u: Interval
    dom_c: Interval
    dom_s: Interval


def affine_step(p: BakerParams, s: Symbol) -> AffineStep:
    M, a, b = p.M, p.a, p.b
    k = s.index
    if k > M:
        raise WordFormatError(f"symbol {s.token} outside alphabet M={M}")
    unit = Interval(ZERO_F, ONE_F, True, True)
    if s.kind == LEFT:
        return AffineStep(
            s,
            slope_u=1 / a,
            icept_u=Fraction(-(k - 1)),
            slope_c=Fraction(1, M),
            icept_c=Fraction(k - 1, M),
            slope_s=1 - M * b,
            icept_s=ZERO_F,
            dom_u=Interval((k - 1) * a, k * a, True, False),
            dom_c=unit,
            dom_s=unit,
        )
    return AffineStep(
        s,
        slope_u=1 / (1 - M * a),
        icept_u=-M * a / (1 - M * a),
        slope_c=Fraction(M),
        icept_c=Fraction(-(k - 1)),
        slope_s=b,
        icept_s=1 + b * (k - M - 1),
        dom_u=Interval(M * a, ONE_F, True, True),
        dom_c=Interval(Fraction(k - 1, M), Fraction(k, M), True, k == M),
        dom_s=unit,
    )


def symbol_at(p: BakerParams, x: Point3) -> Symbol:
    """Tile of ``x`` under the exact half-open conventions."""
    if x.xu < p.M * p.a:
        return Symbol(LEFT, int(x.xu / p.a) + 1)
    k = p.M if x.xc == 1 else int(x.xc * p.M) + 1
    return Symbol(RIGHT, k)


def apply(p: BakerParams, x: Point3) -> tuple[Point3, Symbol]:
    """One exact step of the cube map; returns the image and the tile."""
    s = symbol_at(p, x)
    st = affine_step(p, s)
    return (
        Point3(
            st.slope_u * x.xu + st.icept_u,
            st.slope_c * x.xc + st.icept_c,
            st.slope_s * x.xs + st.icept_s,
        ),
        s,
    )


def itinerary(p: BakerParams, x: Point3, length: int) -> Word:
    """Tiles visited by the first ``length`` iterates."""
    return itinerary_with_flags(p, x, length)[0]


def itinerary_with_flags(
    p: BakerParams, x: Point3, length: int
) -> tuple[Word, tuple[bool, ...]]:
    """Itinerary plus a per-step flag marking exact tile-boundary contact.

    Boundary contact never stalls the orbit (the half-open tiling decides
    the branch deterministically); the flags are diagnostics.
    """
    syms: list[Symbol] = []
    flags: list[bool] = []
    for _ in range(length):
        s = symbol_at(p, x)
        st = affine_step(p, s)
        interior = (
            st.dom_u.contains_interior(x.xu)
            and st.dom_c.contains_interior(x.xc)
            and st.dom_s.contains_interior(x.xs)
        )
        syms.append(s)
        flags.append(not interior)
        x = apply(p, x)[0]
    return tuple(syms), tuple(flags)


@dataclass(frozen=True)
class OrbitSolution:
    """Exact periodic orbit of one word, with multipliers and flags."""

    word: Word
    point: Point3
    multiplier_u: Fraction
    multiplier_c: Fraction
    multiplier_s: Fraction
    unstable_dim: int
    interior_flags: tuple[bool, ...]

    @property
    def in_lambda(self) -> bool:
        return all(self.interior_flags)

    def to_json_dict(self) -> dict:
        return {
            "word": format_word(self.word),
            "point": self.point.as_strings(),
            "multipliers": {
                "xu": fraction_str(self.multiplier_u),
                "xc": fraction_str(self.multiplier_c),
                "xs": fraction_str(self.multiplier_s),
            },
            "unstable_dim": self.unstable_dim,
            "interior_flags": list(self.interior_flags),
            "in_lambda": self.in_lambda,
        }


def solve_periodic_point(p: BakerParams, w: Sequence[Symbol]) -> OrbitSolution:
    """Exact orbit through the word: fixed point of the composed branches.

    Requires the word to be admissible with nonzero height (otherwise the
    center multiplier is 1 and the fixed-point set is a continuum). Every
    iterate is verified inside the closed tile of its symbol, and per-step
    interiority is recorded; a closed-tile miss raises, since admissible
    words always solve.
    """
    w = tuple(w)
    ok, _cls = is_periodic_point(w)
    if not ok:
        raise NotPeriodicPointError(f"{format_word(w)} is not admissible")
    h = height(w)
    if h == 0:
        raise NonHyperbolicError(
            f"{format_word(w)} has zero height; its center direction is neutral"
        )
    steps = [affine_step(p, s) for s in w]
    comp = {}
    for coord in ("u", "c", "s"):
        S, C = ONE_F, ZERO_F
        for st in steps:
            slope = getattr(st, f"slope_{coord}")
            icept = getattr(st, f"icept_{coord}")
            C = slope * C + icept
            S = slope * S
        comp[coord] = (S, C)
    point = Point3(
        *(comp[c][1] / (1 - comp[c][0]) for c in ("u", "c", "s"))
    )
    flags = []
    x = point
    for st in steps:
        closed = (
            st.dom_u.contains_closed(x.xu)
            and st.dom_c.contains_closed(x.xc)
            and st.dom_s.contains_closed(x.xs)
        )
        if not closed:
            raise ConstraintViolationError(
                f"iterate {x} misses the closed tile of {st.symbol.token}"
            )
        flags.append(
            st.dom_u.contains_interior(x.xu)
            and st.dom_c.contains_interior(x.xc)
            and st.dom_s.contains_interior(x.xs)
        )
        x = Point3(
            st.slope_u * x.xu + st.icept_u,
            st.slope_c * x.xc + st.icept_c,
            st.slope_s * x.xs + st.icept_s,
        )
    if x != point:
        raise ConstraintViolationError("orbit failed to close up exactly")
    return OrbitSolution(
        word=w,
        point=point,
        multiplier_u=comp["u"][0],
        multiplier_c=comp["c"][0],
        multiplier_s=comp["s"][0],
        unstable_dim=1 if h > 0 else 2,
        interior_flags=tuple(flags),
    )


_SCATTER_CLS = {
    PeriodClass.ALPHA: _kernels.CLASS_ALPHA,
    PeriodClass.BETA: _kernels.CLASS_BETA,
}


@dataclass(frozen=True)
class ScatterBatch:
    """Bulk-solved class ensemble at one period (float coordinates)."""

    M: int
    n: int
    cls: PeriodClass
    xu: np.ndarray
    xc: np.ndarray
    xs: np.ndarray | None
    interior: np.ndarray

    @property
    def boundary_count(self) -> int:
        return int((~self.interior).sum())

    def moments(self) -> dict[str, float]:
        """First and second moments of (xu, xc) over the whole closed
        ensemble, boundary points included."""
        return {
            "mean_xu": float(self.xu.mean()),
            "mean_xc": float(self.xc.mean()),
            "second_xu": float(np.mean(self.xu**2)),
            "second_xc": float(np.mean(self.xc**2)),
        }


def solve_class(
    M: int,
    n: int,
    cls: PeriodClass,
    a: Fraction,
    b: Fraction | None,
) -> ScatterBatch:
    """Solve the whole class at one period; 2D projection when b is None."""
    if cls not in _SCATTER_CLS:
        raise WordFormatError("scatter classes are alpha and beta only")
    arrays = _kernels.scatter_solve(
        M,
        n,
        _SCATTER_CLS[cls],
        (a.numerator, a.denominator),
        None if b is None else (b.numerator, b.denominator),
    )
    return ScatterBatch(
        M, n, cls, arrays["xu"], arrays["xc"], arrays["xs"], arrays["interior"]
    )


def scatter_rows(
    batch: ScatterBatch, digits: int = 12
) -> Iterator[tuple[str, ...]]:
    """CSV rows (period, class, xu, xc[, xs]) for the interior points."""
    fmt = f"{{:.{digits}g}}".format
    sel = np.nonzero(batch.interior)[0]
    for i in sel:
        row = (str(batch.n), batch.cls.value, fmt(batch.xu[i]), fmt(batch.xc[i]))
        if batch.xs is not None:
            row += (fmt(batch.xs[i]),)
        yield row
