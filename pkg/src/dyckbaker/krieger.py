"""Collapse/decorate embeddings and exact cylinder masses of the two MMEs.

Collapsing forgets the indices of one bracket orientation (all right
brackets become the wildcard on the alpha side, all left brackets on the
beta side), giving a word over M+1 symbols. Decoration inverts this on
periodic words whose height drifts the right way: each wildcard is matched
to its partner bracket by walking the height sequence, and the partner's
index is copied back. Pushing the uniform Bernoulli measure on the M+1
symbols through the decoration yields the two ergodic measures of maximal
entropy; their cylinder masses come out in closed form because a window of
length L pins L uniform symbols and each bracket matched outside the
window pins one more index out of M.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    MatchSearchExceededError,
    NoDriftError,
    WordFormatError,
)
from .words import LEFT, RIGHT, Symbol, Word, reduce_word


class Side(Enum):
    ALPHA = "alpha"
    BETA = "beta"


@dataclass(frozen=True)
class CollapsedSymbol:
    """A kept bracket index, or None for the collapsed wildcard."""

    index: int | None

    def __post_init__(self) -> None:
        if self.index is not None and self.index < 1:
            raise WordFormatError(f"bad collapsed index {self.index}")


WILDCARD = CollapsedSymbol(None)


@dataclass(frozen=True)
class CollapsedWord:
    """Word over the (M+1)-symbol alphabet of one side.

    On the alpha side the kept symbols are left brackets and the wildcard
    token is "B"; mirrored on the beta side with token "A".
    """

    side: Side
    symbols: tuple[CollapsedSymbol, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def tokens(self) -> str:
        kept = LEFT if self.side is Side.ALPHA else RIGHT
        wild = "B" if self.side is Side.ALPHA else "A"
        return ",".join(
            wild if s.index is None else f"{kept}{s.index}" for s in self.symbols
        )

    def drift(self) -> int:
        """Height change over one period: +1 per kept bracket, -1 per wildcard."""
        return sum(-1 if s.index is None else 1 for s in self.symbols)


def parse_collapsed(text: str, side: Side, M: int | None = None) -> CollapsedWord:
    text = text.strip()
    if not text:
        return CollapsedWord(side, ())
    kept = LEFT if side is Side.ALPHA else RIGHT
    wild = "B" if side is Side.ALPHA else "A"
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == wild:
            out.append(WILDCARD)
            continue
        if len(tok) < 2 or tok[0] != kept or not tok[1:].isdigit():
            raise WordFormatError(f"bad collapsed token {tok!r} for side {side.value}")
        idx = int(tok[1:])
        if M is not None and idx > M:
            raise WordFormatError(f"token {tok!r} has index outside 1..{M}")
        out.append(CollapsedSymbol(idx))
    return CollapsedWord(side, tuple(out))


def collapse(side: Side, w: Sequence[Symbol]) -> CollapsedWord:
    """Positionwise collapse of one bracket orientation to the wildcard."""
    kept = LEFT if side is Side.ALPHA else RIGHT
    return CollapsedWord(
        side,
        tuple(
            CollapsedSymbol(s.index) if s.kind == kept else WILDCARD for s in w
        ),
    )


def decorate_periodic(side: Side, z: CollapsedWord) -> Word:
    """Invert the collapse on the periodic extension of ``z``.

    Requires positive drift (every wildcard in the repetition then has a
    matching kept bracket). On the alpha side a wildcard at position i is
    matched by the last earlier position where the height sequence sat at
    the level reached just after i; on the beta side by the first later
    return to the level just before i. Search is bounded by
    (ceil(n/drift) + 2) * n positions, which the drift makes sufficient.
    """
    if z.side is not side:
        raise WordFormatError("collapsed word belongs to the other side")
    n = len(z)
    if n == 0:
        return ()
    drift = z.drift()
    if drift <= 0:
        raise NoDriftError(
            f"side {side.value} decoration needs positive drift, got {drift}"
        )
    # prefix heights of one period: +1 kept bracket, -1 wildcard
    pref = [0]
    for s in z.symbols:
        pref.append(pref[-1] + (-1 if s.index is None else 1))

    def h(j: int) -> int:
        quo, rem = divmod(j, n)
        return quo * drift + pref[rem]

    bound = (-(-n // drift) + 2) * n
    kept_kind = LEFT if side is Side.ALPHA else RIGHT
    wild_kind = RIGHT if side is Side.ALPHA else LEFT
    out: list[Symbol] = []
    for i, s in enumerate(z.symbols):
        if s.index is not None:
            out.append(Symbol(kept_kind, s.index))
            continue
        if side is Side.ALPHA:
            # partner raises the walk onto the level reached just after i,
            # so the height *before* the partner position is the target
            target = h(i + 1)
            j = i
            while j >= i - bound:
                if h(j) == target:
                    break
                j -= 1
            else:
                raise MatchSearchExceededError(
                    f"no partner for position {i} within {bound} steps"
                )
        else:
            # partner drops the walk back to the level before i, so the
            # first return of the height marks the position *after* it
            target = h(i)
            j = i + 1
            while j <= i + bound:
                if h(j) == target:
                    j -= 1
                    break
                j += 1
            else:
                raise MatchSearchExceededError(
                    f"no partner for position {i} within {bound} steps"
                )
        partner = z.symbols[j % n]
        assert partner.index is not None, "partner position holds a wildcard"
        out.append(Symbol(wild_kind, partner.index))
    return tuple(out)


def mme_cylinder(side: Side, v: Sequence[Symbol], M: int) -> Fraction:
    """Exact mass of the position-0 cylinder of ``v`` under one MME.

    Zero for words that reduce to zero. Otherwise each of the |v| symbols
    costs 1/(M+1) under the uniform source, and each bracket of the
    collapsed orientation left unmatched inside the window costs a further
    1/M for its partner's index outside the window; brackets matched
    within the window are already forced by v itself.
    """
    if M < 1:
        raise WordFormatError(f"M must be >= 1, got {M}")
    for s in v:
        if s.index > M:
            raise WordFormatError(f"symbol {s.token} outside alphabet M={M}")
    r = reduce_word(v)
    if r.is_zero:
        return Fraction(0)
    unmatched = len(r.rights) if side is Side.ALPHA else len(r.lefts)
    return Fraction(1, (M + 1) ** len(v) * M**unmatched)


def mixture_cylinder(v: Sequence[Symbol], M: int) -> Fraction:
    """Equal-weights average of the two MME cylinder masses."""
    return (mme_cylinder(Side.ALPHA, v, M) + mme_cylinder(Side.BETA, v, M)) / 2


def fraction_str(x: Fraction) -> str:
    """Serialize an exact rational as "p/q" (integers without "/1")."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
