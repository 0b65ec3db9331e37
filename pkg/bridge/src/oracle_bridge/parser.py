"""Standalone parser for the chain-strata export format.

The format is pinned by the engine's ``docs/EXPORT.md``; this module reads it
into neutral records without importing the engine, so the bridge stays an
independent consumer of the published interface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_LINE = re.compile(
    r"^(?P<coeff>-?\d+/\d+) ; genera=\[(?P<genera>[0-9, ]*)\]"
    r" ; left=\[(?P<left>[0-9, ]*)\] ; right=\[(?P<right>[0-9, ]*)\]"
    r" ; profile=(?P<profile>one|two|three)"
    r" ; leg3=(?P<leg3>-|\d+:\d+)$"
)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ChainTerm:
    coeff: Fraction
    genera: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    profile: str
    leg3: tuple[int, int] | None  # (vertex index, psi power)

    def key(self) -> tuple:
        return (self.profile, self.genera, self.left, self.right, self.leg3)


def _ints(field: str) -> tuple[int, ...]:
    field = field.strip()
    if not field:
        return ()
    return tuple(int(x) for x in field.split(","))


def parse_export(text: str) -> list[ChainTerm]:
    terms: list[ChainTerm] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if m is None:
            raise ParseError(lineno, f"cannot parse {line!r}")
        genera = _ints(m.group("genera"))
        left = _ints(m.group("left"))
        right = _ints(m.group("right"))
        if not genera or not (len(genera) == len(left) == len(right)):
            raise ParseError(lineno, "mismatched vertex data")
        profile = m.group("profile")
        leg3_field = m.group("leg3")
        leg3 = None
        if profile == "three":
            if leg3_field == "-":
                raise ParseError(lineno, "three-pointed term needs a leg3 field")
            idx_s, pow_s = leg3_field.split(":")
            idx = int(idx_s)
            if not (0 <= idx < len(genera)):
                raise ParseError(lineno, "leg3 index out of range")
            leg3 = (idx, int(pow_s))
        elif leg3_field != "-":
            raise ParseError(lineno, f"unexpected leg3 on profile {profile}")
        num, den = m.group("coeff").split("/")
        if int(den) == 0:
            raise ParseError(lineno, "zero denominator")
        terms.append(
            ChainTerm(Fraction(int(num), int(den)), genera, left, right, profile, leg3)
        )
    return terms


def render_export(terms: list[ChainTerm]) -> str:
    """Inverse of ``parse_export``; used by the round-trip tests."""
    lines = ["# tautbamboo export v1"]
    for t in terms:
        leg3 = "-" if t.leg3 is None else f"{t.leg3[0]}:{t.leg3[1]}"
        lines.append(
            f"{t.coeff.numerator}/{t.coeff.denominator}"
            f" ; genera=[{','.join(map(str, t.genera))}]"
            f" ; left=[{','.join(map(str, t.left))}]"
            f" ; right=[{','.join(map(str, t.right))}]"
            f" ; profile={t.profile} ; leg3={leg3}"
        )
    return "\n".join(lines) + "\n"
