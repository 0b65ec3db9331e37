"""Textual export of formal sums for external tautological-ring software.

One term per line, pinned by ``docs/EXPORT.md``:

    <num>/<den> ; genera=[...] ; left=[...] ; right=[...] ; profile=<p> ; leg3=<i>:<p>|-

The parser is an exact inverse of the exporter on its own output, which the
test suite checks term for term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import (
    Bamboo,
    FormalSum,
    PROFILE_ONE,
    PROFILE_THREE,
    PROFILE_TWO,
    Term,
    Vertex,
    format_fraction,
)

HEADER = "# tautbamboo export v1"

_LINE = re.compile(
    r"^(?P<coeff>-?\d+/\d+) ; genera=\[(?P<genera>[0-9, ]*)\]"
    r" ; left=\[(?P<left>[0-9, ]*)\] ; right=\[(?P<right>[0-9, ]*)\]"
    r" ; profile=(?P<profile>one|two|three)"
    r" ; leg3=(?P<leg3>-|\d+:\d+)$"
)


class ExportError(ValueError):
    pass


def export_admcycles(s: FormalSum) -> str:
    """Serialize a plain (unmarked, two/three/one-pointed) sum, one stable
    graph with psi decorations per line, coefficients as exact fractions."""
    lines = [HEADER]
    for term, coeff in s.items():
        b = term.bamboo
        if term.omega is not None:
            raise ExportError("cannot export marked terms")
        if b.profile not in (PROFILE_ONE, PROFILE_TWO, PROFILE_THREE):
            raise ExportError(f"cannot export profile {b.profile}")
        if b.profile == PROFILE_TWO and b.is_detached_two():
            raise ExportError("cannot export detached-leg terms")
        genera = ",".join(str(v.genus) for v in b.vertices)
        left = ",".join(str(v.left) for v in b.vertices)
        right = ",".join(str(v.right) for v in b.vertices)
        if b.profile == PROFILE_THREE:
            i3 = b.extra_index()
            leg3 = f"{i3}:{b.vertices[i3].extra}"
        else:
            leg3 = "-"
        lines.append(
            f"{format_fraction(coeff)} ; genera=[{genera}] ; left=[{left}]"
            f" ; right=[{right}] ; profile={b.profile} ; leg3={leg3}"
        )
    return "\n".join(lines) + "\n"


def _ints(field: str) -> list[int]:
    field = field.strip()
    if not field:
        return []
    return [int(x) for x in field.split(",")]


def parse_admcycles(text: str) -> FormalSum:
    """Parse exported text back to the canonical formal sum.

    Raises ``ExportError`` with the offending line number on malformed input.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if m is None:
            raise ExportError(f"line {lineno}: cannot parse {line!r}")
        genera = _ints(m.group("genera"))
        left = _ints(m.group("left"))
        right = _ints(m.group("right"))
        if not (len(genera) == len(left) == len(right)) or not genera:
            raise ExportError(f"line {lineno}: mismatched vertex data")
        profile = m.group("profile")
        leg3 = m.group("leg3")
        extras: list = [None] * len(genera)
        if profile == PROFILE_THREE:
            if leg3 == "-":
                raise ExportError(f"line {lineno}: three-pointed term needs leg3")
            idx_s, pow_s = leg3.split(":")
            idx = int(idx_s)
            if not (0 <= idx < len(genera)):
                raise ExportError(f"line {lineno}: leg3 index out of range")
            extras[idx] = int(pow_s)
        elif leg3 != "-":
            raise ExportError(f"line {lineno}: unexpected leg3 on profile {profile}")
        num, den = m.group("coeff").split("/")
        coeff = Fraction(int(num), int(den))
        try:
            vs = tuple(
                Vertex(genera[i], left[i], right[i], extras[i]) for i in range(len(genera))
            )
            term = Term(Bamboo(vs, profile))
        except ValueError as exc:
            raise ExportError(f"line {lineno}: {exc}") from exc
        pairs.append((term, coeff))
    return FormalSum.from_terms(pairs)
