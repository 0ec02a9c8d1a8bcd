"""Shared value types for size-based invariants and their table rendering.

Rank-style invariants are stored as exact integer orders and rendered as
log2 values with two decimals, round half up. Nilpotency class and derived
length use distinct sentinel markers when undefined; census tables render
the non-nilpotent marker as "0".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

_SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"


def subscript(n: int) -> str:
    """Render a nonnegative integer using unicode subscript digits."""
    return "".join(_SUBSCRIPTS[int(c)] for c in str(n))


def log2_text(order: int) -> str:
    """log2 of a positive integer, two decimals, round half up."""
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    exact = Decimal(str(math.log2(order)))
    return str(exact.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class LogValue:
    """An exact group-order value rendered as log2."""

    order: int

    @property
    def log2(self) -> float:
        return math.log2(self.order)

    def render(self) -> str:
        return log2_text(self.order)


@dataclass(frozen=True)
class PairValue:
    """Exact orders of a two-level invariant, rendered as [log2, log2].

    level1 is the source-level (degree 1) value, level0 the range-level
    (degree 0) value; rendering order matches the order pair convention.
    """

    level1_order: int
    level0_order: int

    @property
    def log2_pair(self) -> tuple[float, float]:
        return (math.log2(self.level1_order), math.log2(self.level0_order))

    def render(self) -> str:
        return f"[{log2_text(self.level1_order)},{log2_text(self.level0_order)}]"


class _Marker:
    """Singleton sentinel; falsy so `if cls:` treats it as undefined."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __bool__(self) -> bool:
        return False


NOT_NILPOTENT = _Marker("not-nilpotent")
NOT_SOLVABLE = _Marker("not-solvable")


def class_text(value) -> str:
    """Table rendering for a nilpotency class: the marker prints as 0."""
    return "0" if value is NOT_NILPOTENT else str(value)
