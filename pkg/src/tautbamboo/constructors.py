"""Constructors for the named class families.

Every family is a sum of decorated chains selected by prefix-bounded integer
compositions: genera ``g_1..g_k >= 1`` summing to ``g`` and psi powers
``d_1..d_k >= 0`` with inequalities of the shape

    d_1 + .. + d_l + l - 1  <=  2(g_1 + .. + g_l) - offset

for ``l`` in a family-specific range.  Enumeration is depth-first in
lexicographic order of ``(g_i, d_i)`` pairs, pruning on the prefix inequality
as soon as it applies, so constructor output order is deterministic.
"""

from __future__ import annotations

from typing import Iterator

from .calculus import diamond
from .core import (
    Bamboo,
    FormalSum,
    PROFILE_ONE,
    PROFILE_THREE,
    PROFILE_TWO,
    Term,
    Vertex,
    sentinel,
)


def _iter_chains(
    genus: int,
    psi_total: int,
    parts: int,
    constrained_prefixes: int,
    offset: int,
    base_degree: int = 0,
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (genera, psis) with the prefix rule applied for the first
    ``constrained_prefixes`` positions.

    ``base_degree`` shifts the left-hand side of every inequality (used by
    the two-sided families whose prefix totals start from an outer chain).
    """
    if parts == 0:
        if genus == 0 and psi_total == 0:
            yield ((), ())
        return

    def rec(pos: int, g_left: int, d_left: int, g_acc: int, d_acc: int, gs, ds):
        if pos == parts:
            if g_left == 0 and d_left == 0:
                yield (tuple(gs), tuple(ds))
            return
        remaining = parts - pos - 1
        for gi in range(1, g_left - remaining + 1):
            for di in range(0, d_left + 1):
                if pos + 1 <= constrained_prefixes:
                    lhs = base_degree + d_acc + di + (pos + 1) - 1
                    if lhs > 2 * (g_acc + gi) - offset:
                        continue
                yield from rec(
                    pos + 1, g_left - gi, d_left - di, g_acc + gi, d_acc + di, gs + [gi], ds + [di]
                )

    yield from rec(0, genus, psi_total, 0, 0, [], [])


def make_c(g_list: list[int], d_list: list[int]) -> FormalSum:
    """Single chain with the given genera and psi powers at the right
    attachments, coefficient 1."""
    if not g_list or len(g_list) != len(d_list):
        raise ValueError("need matching non-empty genus and psi lists")
    if any(g < 1 for g in g_list) or any(d < 0 for d in d_list):
        raise ValueError("genera must be >= 1 and psi powers >= 0")
    vs = tuple(Vertex(g, 0, d) for g, d in zip(g_list, d_list))
    return FormalSum.from_term(Term(Bamboo(vs, PROFILE_TWO)))


def make_c_arrow(g: int, d: int, k: int) -> FormalSum:
    """Sum of all k-part chains of total genus g and degree d with the prefix
    rule at every position; the empty sentinel for (0, -1, 0); the zero sum
    for out-of-range parameters."""
    if (g, d, k) == (0, -1, 0):
        return sentinel()
    if g < 1 or k < 1 or d < 0 or k > g or d >= 2 * g:
        return FormalSum.zero()
    psi_total = d - (k - 1)
    if psi_total < 0:
        return FormalSum.zero()
    pairs = []
    for gs, ds in _iter_chains(g, psi_total, k, constrained_prefixes=k, offset=1):
        vs = tuple(Vertex(gi, 0, di) for gi, di in zip(gs, ds))
        pairs.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
    return FormalSum.from_terms(pairs)


def make_c_arrow_left(g: int, d: int, k: int) -> FormalSum:
    """Mirror image of ``make_c_arrow``: reversed chains with the psi powers
    at the left attachments."""
    if (g, d, k) == (0, -1, 0):
        return sentinel()
    if g < 1 or k < 1 or d < 0 or k > g or d >= 2 * g:
        return FormalSum.zero()
    psi_total = d - (k - 1)
    if psi_total < 0:
        return FormalSum.zero()
    pairs = []
    for gs, ds in _iter_chains(g, psi_total, k, constrained_prefixes=k, offset=1):
        vs = tuple(
            Vertex(gs[i], ds[i], 0) for i in range(k - 1, -1, -1)
        )
        pairs.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
    return FormalSum.from_terms(pairs)


def make_B(g: int) -> FormalSum:
    """The degree-2g two-pointed class: alternating sum over chain counts of
    all constrained chains of degree 2g (prefix rule at all but the last
    position)."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    pairs = []
    for k in range(1, g + 1):
        sign = (-1) ** (k - 1)
        psi_total = 2 * g - (k - 1)
        for gs, ds in _iter_chains(g, psi_total, k, constrained_prefixes=k - 1, offset=1):
            vs = tuple(Vertex(gi, 0, di) for gi, di in zip(gs, ds))
            pairs.append((Term(Bamboo(vs, PROFILE_TWO)), sign))
    return FormalSum.from_terms(pairs)


def make_B_onepoint(g: int) -> FormalSum:
    """The degree-(2g-1) one-pointed class: as ``make_B`` but with the single
    leg on the right end and the prefix bound lowered by one."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    pairs = []
    for k in range(1, g + 1):
        sign = (-1) ** (k - 1)
        psi_total = 2 * g - 1 - (k - 1)
        for gs, ds in _iter_chains(g, psi_total, k, constrained_prefixes=k - 1, offset=2):
            vs = tuple(Vertex(gi, 0, di) for gi, di in zip(gs, ds))
            pairs.append((Term(Bamboo(vs, PROFILE_ONE)), sign))
    return FormalSum.from_terms(pairs)


def make_b_arrow(h: int, d: int, k: int, g1: int) -> FormalSum:
    """Two-sided correction family for the split-divisor product, relative to
    a fixed splitting genus ``g1``: alternating one-side prefixes glued to
    constrained chains of total genus ``h - g1``, plus the psi-shifted copy.

    Zero when ``k > h - g1``, ``d > 2h`` or ``h <= g1``.
    """
    if g1 < 1:
        raise ValueError("g1 must be >= 1")
    if h <= g1 or k < 1 or d < 0 or k > h - g1 or d > 2 * h:
        return FormalSum.zero()
    total = FormalSum.zero()
    for d1 in range(0, d + 1):
        d2 = d - d1
        prefix = FormalSum.zero()
        for m in range(1, g1 + 1):
            prefix = prefix + make_c_arrow(g1, d1, m).scale((-1) ** m)
        if prefix.is_zero():
            continue
        inner = FormalSum.zero()
        # plain chains: d1 + a_1+..+a_l + l <= 2(g1 + i_1+..+i_l)
        pairs = []
        for gs, ds in _iter_chains(
            h - g1, d2 - k, k, constrained_prefixes=k, offset=-2 * g1, base_degree=d1 + 1
        ):
            vs = tuple(Vertex(gi, 0, di) for gi, di in zip(gs, ds))
            pairs.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
        inner = inner + FormalSum.from_terms(pairs)
        # psi-shifted chains: one extra psi at the gluing point, bound lowered by one
        pairs = []
        for gs, ds in _iter_chains(
            h - g1, d2 - k - 1, k, constrained_prefixes=k, offset=1 - 2 * g1, base_degree=d1 + 1
        ):
            vs = tuple(
                Vertex(gi, 1 if i == 0 else 0, di)
                for i, (gi, di) in enumerate(zip(gs, ds))
            )
            pairs.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
        inner = inner + FormalSum.from_terms(pairs)
        if inner.is_zero():
            continue
        total = total + diamond(prefix, inner)
    return total


def make_d(g: int, d: int, k: int) -> FormalSum:
    """Three-pointed chains obtained from the mirror constrained family by
    placing leg 3 on each vertex in turn."""
    if k < 1:
        return FormalSum.zero()
    if g < 1 or d < 0 or k > g or d >= 2 * g:
        return FormalSum.zero()
    psi_total = d - (k - 1)
    if psi_total < 0:
        return FormalSum.zero()
    pairs = []
    for gs, ds in _iter_chains(g, psi_total, k, constrained_prefixes=k, offset=1):
        # stored orientation: reversed, psi at left attachments
        for leg3 in range(1, k + 1):
            vs = tuple(
                Vertex(gs[i], ds[i], 0, 0 if i + 1 == leg3 else None)
                for i in range(k - 1, -1, -1)
            )
            pairs.append((Term(Bamboo(vs, PROFILE_THREE)), 1))
    return FormalSum.from_terms(pairs)


def make_e(g: int, d: int, k: int) -> FormalSum:
    """As ``make_d`` but with leg 3 on an inserted rational bubble (one slot
    of the composition carries genus 0 and psi 0); zero for k <= 1."""
    if k <= 1:
        return FormalSum.zero()
    if g < 1 or d < 0:
        return FormalSum.zero()
    psi_total = d - (k - 1)
    if psi_total < 0:
        return FormalSum.zero()
    pairs = []

    def rec(pos, g_left, d_left, g_acc, d_acc, gs, ds, bubble_at):
        if pos == k:
            if g_left == 0 and d_left == 0 and bubble_at is not None:
                pairs.append((gs[:], ds[:], bubble_at))
            return
        remaining_slots = k - pos - 1
        choices = [(0, 0)] if bubble_at is None else []
        min_needed = remaining_slots if bubble_at is not None else remaining_slots - 1
        for gi in range(1, g_left - max(min_needed, 0) + 1):
            for di in range(0, d_left + 1):
                choices.append((gi, di))
        for gi, di in sorted(choices):
            is_bubble = gi == 0
            lhs = d_acc + di + (pos + 1) - 1
            if lhs > 2 * (g_acc + gi) - 1:
                continue
            rec(
                pos + 1,
                g_left - gi,
                d_left - di,
                g_acc + gi,
                d_acc + di,
                gs + [gi],
                ds + [di],
                pos + 1 if is_bubble else bubble_at,
            )

    rec(0, g, psi_total, 0, 0, [], [], None)
    out = []
    for gs, ds, bub in pairs:
        vs = tuple(
            Vertex(gs[i], ds[i], 0, 0 if i + 1 == bub else None)
            for i in range(k - 1, -1, -1)
        )
        out.append((Term(Bamboo(vs, PROFILE_THREE)), 1))
    return FormalSum.from_terms(out)
