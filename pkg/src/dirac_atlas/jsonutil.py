"""Rational <-> "p/q" string helpers used by every JSON surface.

Classification outputs never pass through floats: rationals are
rendered as "p/q" (or "p" when integral) and parsed back exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ValidationError


def fr_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_fr(s: str) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational: {s!r}") from exc


def vec_str(v: Iterable[Fraction]) -> list[str]:
    return [fr_str(x) for x in v]


def parse_vec(items: Sequence[str]) -> tuple[Fraction, ...]:
    return tuple(parse_fr(s) for s in items)


def parse_coords(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated coordinate string like "1,-3/2"."""
    parts = [p for p in str(text).split(",") if p.strip() != ""]
    if not parts:
        raise ValidationError(f"empty coordinate string: {text!r}")
    return tuple(parse_fr(p) for p in parts)


def mat_str(m: Iterable[Iterable[Fraction]]) -> list[list[str]]:
    return [vec_str(row) for row in m]
