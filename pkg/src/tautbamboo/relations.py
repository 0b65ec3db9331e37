"""Axiom families: boundary relation instances embedded in chain contexts.

Three families of node-psi boundary relations are taken as axioms, each
expanding to a formal sum that is zero in the tautological ring:

* ``cor2``  -- on a two-pointed space of genus g:
  ``-psi1^{2g+r} + (-1)^{2g+r} psi2^{2g+r} + sum over splits``.
* ``cor1a`` -- on a three-pointed space, leg 3 on the left factor of every
  split term; the pure-psi term is a psi2 power.
* ``cor1b`` -- mirror of ``cor1a``: leg 3 on the right factor, pure psi1 term.
* ``omega`` -- the marked-sector schema obtained from ``cor1a`` by gluing:
  ``w psi2^N + sum (-1)^{d1} w psi2^{d1} (x) psi1^{d2}`` with the marker
  carried along, never expanded.

An instance embeds one family at a fixed spot of a chain: a prefix chain is
glued on the left, a suffix chain on the right.  In the three-pointed sector
a context vertex (or an inserted rational bubble) may carry leg 3 instead of
the relation; in the marked sector a context vertex may carry the marker; in
the detached-leg sector a one-pointed tail is glued onto leg 3 of a ``cor1b``
instance, which is how relations reach chains with a bare end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .calculus import glue_tail, pushforward_relabel2
from .core import (
    KappaUnsupported,
    Bamboo,
    FormalSum,
    OmegaMarker,
    PROFILE_ONE,
    PROFILE_THREE,
    PROFILE_TWO,
    Term,
    Vertex,
    canonical_json,
    marker_is_zero,
)

FAMILY_COR2 = "cor2"
FAMILY_COR1A = "cor1a"
FAMILY_COR1B = "cor1b"
FAMILY_OMEGA_IRR = "omega_irr"
FAMILY_OMEGA_SEP = "omega_sep"
FAMILY_MDIM = "mdim"


def marked_psi_bound(kind: str, h: int, genus: int) -> int:
    """Largest psi-total a marked two-attachment vertex can carry before the
    divisor product is the zero class.

    The marker stands for an unexpanded divisor product on the vertex factor;
    normalizing that divisor turns the psi monomial into one on a smaller
    space (four-pointed of genus-1-less for the one-self-node divisor,
    three-pointed of genus-h-less for the split divisor), where it dies above
    the dimension.
    """
    if kind == "irr":
        return 3 * genus - 2
    return 3 * (genus - h)

# Context vertices are (genus, left, right, extra) with extra = -1 for "no
# detached leg" and >= 0 for a leg-3 decoration of that power.
CtxVertex = tuple[int, int, int, int]
CtxChain = tuple[CtxVertex, ...]
TailChain = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class EnumBudget:
    """Bounds for instance enumeration.  Enlarging any bound only adds
    instances, so a certificate found under one budget survives under any
    larger one."""

    max_context_len: int = 3
    max_r: int = 6
    max_deco: int = 1
    max_instances: int = 500000

    def to_obj(self) -> dict:
        return {
            "max_context_len": self.max_context_len,
            "max_r": self.max_r,
            "max_deco": self.max_deco,
            "max_instances": self.max_instances,
        }


def default_budget(genus: int) -> EnumBudget:
    return EnumBudget(max_context_len=max(2, genus), max_r=2 * genus + 2)


@dataclass(frozen=True)
class RelationInstance:
    family: str
    g: int
    r: int
    h: int = 0
    prefix: CtxChain = ()
    suffix: CtxChain = ()
    tail: TailChain = ()
    omega_ctx: Optional[tuple[str, int]] = None
    psis: tuple[int, int] = (0, 0)  # marked-vertex psi powers, mdim family only
    pushed: bool = False  # expansion pushed forward with the 3 -> 2 relabel
    deco: tuple[int, int] = (0, 0)  # extra psi powers at the block's outer legs

    def key(self) -> tuple:
        return (
            self.family,
            self.g,
            self.r,
            self.h,
            self.prefix,
            self.suffix,
            self.tail,
            self.omega_ctx if self.omega_ctx is not None else ("", -1),
            self.psis,
            self.pushed,
            self.deco,
        )

    def to_obj(self) -> dict:
        return {
            "family": self.family,
            "g": self.g,
            "r": self.r,
            "h": self.h,
            "prefix": [list(v) for v in self.prefix],
            "suffix": [list(v) for v in self.suffix],
            "tail": [list(v) for v in self.tail],
            "omega_ctx": list(self.omega_ctx) if self.omega_ctx is not None else None,
            "psis": list(self.psis),
            "pushed": self.pushed,
            "deco": list(self.deco),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "RelationInstance":
        return cls(
            family=obj["family"],
            g=obj["g"],
            r=obj["r"],
            h=obj["h"],
            prefix=tuple(tuple(v) for v in obj["prefix"]),
            suffix=tuple(tuple(v) for v in obj["suffix"]),
            tail=tuple(tuple(v) for v in obj["tail"]),
            omega_ctx=tuple(obj["omega_ctx"]) if obj.get("omega_ctx") else None,
            psis=tuple(obj.get("psis", (0, 0))),
            pushed=bool(obj.get("pushed", False)),
            deco=tuple(obj.get("deco", (0, 0))),
        )

    def ident(self) -> str:
        return canonical_json(self.to_obj())


# -- base expansions -----------------------------------------------------------


def _base_cor2(g: int, r: int) -> list[tuple[tuple[Vertex, ...], bool, int]]:
    """(vertices, has_leg3, coeff) triples for the bare two-pointed family."""
    if g < 1 or r < 0:
        raise ValueError("cor2 needs g >= 1, r >= 0")
    n = 2 * g + r
    rows: list[tuple[tuple[Vertex, ...], bool, int]] = [
        ((Vertex(g, n, 0),), False, -1),
        ((Vertex(g, 0, n),), False, 1 if n % 2 == 0 else -1),
    ]
    for g1 in range(1, g):
        g2 = g - g1
        for a1 in range(0, 2 * g - 1 + r + 1):
            a2 = 2 * g - 1 + r - a1
            rows.append(((Vertex(g1, 0, a1), Vertex(g2, a2, 0)), False, (-1) ** a1))
    return rows


def _base_cor1(g: int, r: int, leg3_left: bool) -> list[tuple[tuple[Vertex, ...], bool, int]]:
    """Bare three-pointed families; ``leg3_left`` picks the a-variant."""
    if g < 1 or r < 0:
        raise ValueError("cor1 needs g >= 1, r >= 0")
    n = 2 * g + 1 + r
    rows: list[tuple[tuple[Vertex, ...], bool, int]] = []
    if leg3_left:
        rows.append(((Vertex(g, 0, n, 0),), True, 1 if n % 2 == 0 else -1))
    else:
        rows.append(((Vertex(g, n, 0, 0),), True, -1))
    for g1 in range(0 if leg3_left else 1, g + (0 if leg3_left else 1)):
        g2 = g - g1
        if leg3_left and g2 < 1:
            continue
        if not leg3_left and g2 < 0:
            continue
        for a1 in range(0, 2 * g + r + 1):
            a2 = 2 * g + r - a1
            if leg3_left:
                if g1 == 0 and a1 > 0:
                    continue  # psi vanishes on the rational three-pointed vertex
                left = Vertex(g1, 0, a1, 0)
                right = Vertex(g2, a2, 0)
            else:
                if g2 == 0 and a2 > 0:
                    continue
                left = Vertex(g1, 0, a1)
                right = Vertex(g2, a2, 0, 0)
            rows.append(((left, right), True, (-1) ** a1))
    return rows


def omega_schema_valid(kind: str, g: int, n_psi: int, h: int) -> bool:
    if kind == "irr":
        return g >= 1 and n_psi >= 2 * g
    return 1 <= h <= g and n_psi >= 2 * (g - h) + 1


def _base_omega(kind: str, g: int, n_psi: int, h: int) -> list[tuple[tuple[Vertex, ...], Optional[int], int]]:
    """(vertices, marker_vertex, coeff) for the marked schema; the marker
    always sits on the leading (left) vertex of each row."""
    if not omega_schema_valid(kind, g, n_psi, h):
        raise ValueError(f"omega schema out of range: {kind} g={g} N={n_psi} h={h}")
    rows: list[tuple[tuple[Vertex, ...], Optional[int], int]] = [
        ((Vertex(g, 0, n_psi),), 0, 1)
    ]
    for g1 in range(1, g):
        g2 = g - g1
        if marker_is_zero("irr" if kind == "irr" else "sep", h, g1):
            continue
        for d1 in range(0, n_psi):
            d2 = n_psi - 1 - d1
            rows.append(((Vertex(g1, 0, d1), Vertex(g2, d2, 0)), 0, (-1) ** d1))
    return rows


# -- context machinery -----------------------------------------------------------


def _ctx_vertices(chain: CtxChain) -> tuple[Vertex, ...]:
    return tuple(
        Vertex(g, l, r, None if e < 0 else e) for g, l, r, e in chain
    )


def expand(inst: RelationInstance) -> FormalSum:
    """The instance as a formal sum (zero in the ring): base family rows glued
    into the context, with leg 3, marker or tail applied."""
    if inst.pushed:
        base = expand(
            RelationInstance(
                inst.family, inst.g, inst.r, inst.h, inst.prefix, inst.suffix, (), None
            )
        )
        return pushforward_relabel2(base)
    pre = _ctx_vertices(inst.prefix)
    suf = _ctx_vertices(inst.suffix)
    if inst.family == FAMILY_COR2:
        rows3 = _base_cor2(inst.g, inst.r)
    elif inst.family == FAMILY_COR1A:
        rows3 = _base_cor1(inst.g, inst.r, leg3_left=True)
    elif inst.family == FAMILY_COR1B:
        rows3 = _base_cor1(inst.g, inst.r, leg3_left=False)
    elif inst.family in (FAMILY_OMEGA_IRR, FAMILY_OMEGA_SEP):
        return _expand_omega(inst, pre, suf)
    elif inst.family == FAMILY_MDIM:
        return _expand_mdim(inst, pre, suf)
    else:
        raise ValueError(f"unknown family {inst.family!r}")

    ctx_has_leg3 = any(v.extra is not None for v in pre + suf)
    rel_has_leg3 = inst.family in (FAMILY_COR1A, FAMILY_COR1B)
    if ctx_has_leg3 and rel_has_leg3:
        raise ValueError("leg 3 may appear only once per instance")
    if inst.tail:
        if inst.family != FAMILY_COR1B or inst.suffix:
            raise ValueError("tails glue onto bare cor1b instances only")
    if inst.omega_ctx is not None and inst.family != FAMILY_COR2:
        raise ValueError("context markers are only supported around cor2")

    pairs: list[tuple[Term, int]] = []
    three = ctx_has_leg3 or rel_has_leg3
    lp, rp = inst.deco
    for rel_vs, _, coeff in rows3:
        if lp or rp:
            # multiply the relation by psi powers at its outer legs before
            # gluing; rows whose decorated vertex is rational drop out
            if (lp and rel_vs[0].genus == 0) or (rp and rel_vs[-1].genus == 0):
                continue
            vs_list = list(rel_vs)
            v0 = vs_list[0]
            vs_list[0] = Vertex(v0.genus, v0.left + lp, v0.right, v0.extra)
            vn = vs_list[-1]
            vs_list[-1] = Vertex(vn.genus, vn.left, vn.right + rp, vn.extra)
            rel_vs = tuple(vs_list)
        vs = pre + rel_vs + suf
        profile = PROFILE_THREE if three else PROFILE_TWO
        omega = None
        if inst.omega_ctx is not None:
            side, idx = inst.omega_ctx
            pos = idx if side == "prefix" else len(pre) + len(rel_vs) + idx
            kind = "irr" if inst.h == 0 else "sep"
            omega = OmegaMarker(kind, inst.h, pos)
        pairs.append((Term(Bamboo(vs, profile), omega), coeff))
    out = FormalSum.from_terms(pairs)
    if inst.tail:
        tail = Bamboo(tuple(Vertex(g, l, r) for g, l, r in inst.tail), PROFILE_ONE)
        out = glue_tail(out, tail)
    return out


def _expand_omega(inst: RelationInstance, pre: tuple[Vertex, ...], suf: tuple[Vertex, ...]) -> FormalSum:
    kind = "irr" if inst.family == FAMILY_OMEGA_IRR else "sep"
    rows = _base_omega(kind, inst.g, inst.r, inst.h)
    pairs: list[tuple[Term, int]] = []
    for rel_vs, mark_at, coeff in rows:
        vs = pre + rel_vs + suf
        omega = OmegaMarker(kind, inst.h, len(pre) + (mark_at or 0))
        pairs.append((Term(Bamboo(vs, PROFILE_TWO), omega), coeff))
    return FormalSum.from_terms(pairs)


def _expand_mdim(inst: RelationInstance, pre: tuple[Vertex, ...], suf: tuple[Vertex, ...]) -> FormalSum:
    """A single marked term that is the zero class by dimension count."""
    kind = "irr" if inst.h == 0 else "sep"
    a, b = inst.psis
    if a + b <= marked_psi_bound(kind, inst.h, inst.g):
        raise ValueError("psi total within the dimension bound: not a vanishing term")
    if marker_is_zero(kind, inst.h, inst.g):
        raise ValueError("marker already zero by genus; no instance needed")
    vs = pre + (Vertex(inst.g, a, b),) + suf
    omega = OmegaMarker(kind, inst.h, len(pre))
    return FormalSum.from_term(Term(Bamboo(vs, PROFILE_TWO), omega))


# -- deterministic enumeration ------------------------------------------------------


def _iter_psi_splits(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _iter_psi_splits(total - first, slots - 1):
            yield (first,) + rest


def _iter_genus_comps(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` parts, each >= 1, lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _iter_genus_comps(total - first, parts - 1):
            yield (first,) + rest


def enumerate_instances(
    genus: int,
    degree: int,
    sector: tuple,
    budget: EnumBudget,
) -> list[RelationInstance]:
    """Deterministic, duplicate-free list of instances whose expansions are
    homogeneous of the given degree with the given total genus, in the given
    sector.

    Sectors: ``("two",)``, ``("three",)``, ``("marked", kind, h)``,
    ``("detached",)``.
    """
    out: list[RelationInstance] = []
    if sector == ("two",):
        out.extend(_enum_cor2(genus, degree, budget, marked=None))
    elif sector == ("three",):
        out.extend(_enum_cor1(genus, degree, budget))
        out.extend(_enum_cor2_three(genus, degree, budget))
    elif sector[0] == "marked":
        _, kind, h = sector
        out.extend(_enum_omega(genus, degree, budget, kind, h))
        out.extend(_enum_cor2(genus, degree, budget, marked=(kind, h)))
        out.extend(_enum_mdim(genus, degree, budget, kind, h))
    elif sector == ("detached",):
        out.extend(_enum_tail_glued(genus, degree, budget))
        out.extend(_enum_pushed(genus, degree, budget))
    else:
        raise ValueError(f"unknown sector {sector!r}")
    if len(out) > budget.max_instances:
        raise RuntimeError(
            f"instance enumeration exceeded budget cap ({len(out)} > {budget.max_instances})"
        )
    return out


def _chains_with_context_degree(genus: int, ctx_degree: int, budget: EnumBudget) -> list[CtxChain]:
    """Chains whose context degree (psi + internal edges + joining edge)
    equals ``ctx_degree``; empty chain only for degree 0."""
    if genus == 0:
        return [()] if ctx_degree == 0 else []
    if ctx_degree < 1:
        return []
    out = []
    for m in range(1, min(genus, budget.max_context_len) + 1):
        psi = ctx_degree - m  # (m - 1) internal edges + 1 joining edge
        if psi < 0:
            continue
        for comp in _iter_genus_comps(genus, m):
            for split in _iter_psi_splits(psi, 2 * m):
                out.append(
                    tuple((comp[i], split[2 * i], split[2 * i + 1], -1) for i in range(m))
                )
    return out


def _enum_cor2(
    genus: int, degree: int, budget: EnumBudget, marked: Optional[tuple]
) -> list[RelationInstance]:
    out: list[RelationInstance] = []
    for h in range(1, genus + 1):
        for r in range(0, budget.max_r + 1):
            for lp in range(0, budget.max_deco + 1):
                for rp in range(0, budget.max_deco + 1 - lp):
                    if marked is not None and (lp or rp):
                        continue
                    rel_deg = 2 * h + r + lp + rp
                    rest = degree - rel_deg - (1 if marked else 0)
                    if rest < 0:
                        continue
                    for gp in range(0, genus - h + 1):
                        gs = genus - h - gp
                        for dp in range(0, rest + 1):
                            ds = rest - dp
                            for pre in _chains_with_context_degree(gp, dp, budget):
                                for suf in _chains_with_context_degree(gs, ds, budget):
                                    if marked is None:
                                        out.append(
                                            RelationInstance(
                                                FAMILY_COR2, h, r, 0, pre, suf,
                                                (), None, (0, 0), False, (lp, rp),
                                            )
                                        )
                                        continue
                                    kind, hh = marked
                                    for side, chain in (("prefix", pre), ("suffix", suf)):
                                        for i, (g_v, _, _, _) in enumerate(chain):
                                            if marker_is_zero(kind, hh, g_v):
                                                continue
                                            out.append(
                                                RelationInstance(
                                                    FAMILY_COR2, h, r, hh,
                                                    pre, suf, (), (side, i),
                                                )
                                            )
    return out


def _leg3_on_vertex(chain: CtxChain) -> Iterator[CtxChain]:
    for i, (g, l, r, _) in enumerate(chain):
        if g >= 1:
            yield chain[:i] + ((g, l, r, 0),) + chain[i + 1 :]


def _leg3_bubble(chain: CtxChain, end_left: bool, end_right: bool) -> Iterator[CtxChain]:
    bub = (0, 0, 0, 0)
    lo = 0 if end_left else 1
    hi = len(chain) + (1 if end_right else 0)
    for gap in range(lo, hi):
        yield chain[:gap] + (bub,) + chain[gap:]


def _enum_cor2_three(genus: int, degree: int, budget: EnumBudget) -> list[RelationInstance]:
    """cor2 with leg 3 carried by the context: either a decoration on a
    context vertex (same degree) or an inserted rational bubble (one more
    edge, so one less unit available elsewhere)."""
    out: list[RelationInstance] = []
    for h in range(1, genus + 1):
        for r in range(0, budget.max_r + 1):
            rel_deg = 2 * h + r
            for bubble in (False, True):
                rest = degree - rel_deg - (1 if bubble else 0)
                if rest < 0:
                    continue
                for gp in range(0, genus - h + 1):
                    gs = genus - h - gp
                    for dp in range(0, rest + 1):
                        ds = rest - dp
                        for pre_plain in _chains_with_context_degree(gp, dp, budget):
                            for suf_plain in _chains_with_context_degree(gs, ds, budget):
                                if bubble:
                                    for pre in _leg3_bubble(pre_plain, True, True):
                                        out.append(
                                            RelationInstance(FAMILY_COR2, h, r, 0, pre, suf_plain)
                                        )
                                    for suf in _leg3_bubble(suf_plain, True, True):
                                        out.append(
                                            RelationInstance(FAMILY_COR2, h, r, 0, pre_plain, suf)
                                        )
                                else:
                                    for pre in _leg3_on_vertex(pre_plain):
                                        out.append(
                                            RelationInstance(FAMILY_COR2, h, r, 0, pre, suf_plain)
                                        )
                                    for suf in _leg3_on_vertex(suf_plain):
                                        out.append(
                                            RelationInstance(FAMILY_COR2, h, r, 0, pre_plain, suf)
                                        )
    return out


def _enum_cor1(genus: int, degree: int, budget: EnumBudget) -> list[RelationInstance]:
    out: list[RelationInstance] = []
    for fam in (FAMILY_COR1A, FAMILY_COR1B):
        for h in range(1, genus + 1):
            for r in range(0, budget.max_r + 1):
                rel_deg = 2 * h + 1 + r
                rest = degree - rel_deg
                if rest < 0:
                    continue
                for gp in range(0, genus - h + 1):
                    gs = genus - h - gp
                    for dp in range(0, rest + 1):
                        ds = rest - dp
                        for pre in _chains_with_context_degree(gp, dp, budget):
                            for suf in _chains_with_context_degree(gs, ds, budget):
                                out.append(RelationInstance(fam, h, r, 0, pre, suf))
    return out


def _enum_omega(
    genus: int, degree: int, budget: EnumBudget, kind: str, h: int
) -> list[RelationInstance]:
    fam = FAMILY_OMEGA_IRR if kind == "irr" else FAMILY_OMEGA_SEP
    out: list[RelationInstance] = []
    for hg in range(1, genus + 1):
        n_min = 2 * hg if kind == "irr" else 2 * (hg - h) + 1
        if kind == "sep" and hg < h:
            continue
        for n_psi in range(max(n_min, 0), degree + 1):
            rel_deg = n_psi + 1  # the unexpanded divisor adds one
            rest = degree - rel_deg
            if rest < 0:
                continue
            for gp in range(0, genus - hg + 1):
                gs = genus - hg - gp
                for dp in range(0, rest + 1):
                    ds = rest - dp
                    for pre in _chains_with_context_degree(gp, dp, budget):
                        for suf in _chains_with_context_degree(gs, ds, budget):
                            out.append(
                                RelationInstance(fam, hg, n_psi, h, pre, suf)
                            )
    return out


def _enum_mdim(
    genus: int, degree: int, budget: EnumBudget, kind: str, h: int
) -> list[RelationInstance]:
    fam_h = 0 if kind == "irr" else h
    out: list[RelationInstance] = []
    g_lo = 1 if kind == "irr" else h
    for hg in range(g_lo, genus + 1):
        bound = marked_psi_bound(kind, h, hg)
        for p in range(bound + 1, degree + 1):
            rel_deg = p + 1
            rest = degree - rel_deg
            if rest < 0:
                continue
            for a in range(0, p + 1):
                b = p - a
                for gp in range(0, genus - hg + 1):
                    gs = genus - hg - gp
                    for dp in range(0, rest + 1):
                        ds = rest - dp
                        for pre in _chains_with_context_degree(gp, dp, budget):
                            for suf in _chains_with_context_degree(gs, ds, budget):
                                out.append(
                                    RelationInstance(
                                        FAMILY_MDIM, hg, 0, fam_h, pre, suf, (), None, (a, b)
                                    )
                                )
    return out


def _iter_tails(genus: int, ctx_degree: int, budget: EnumBudget) -> list[TailChain]:
    # The first vertex is the bare end of the one-pointed tail: no attachment
    # there, so no psi power either.
    return [
        tuple((g, l, r) for g, l, r, _ in chain)
        for chain in _chains_with_context_degree(genus, ctx_degree, budget)
        if chain and chain[0][1] == 0
    ]


def _enum_pushed(genus: int, degree: int, budget: EnumBudget) -> list[RelationInstance]:
    """Three-pointed instances pushed forward with the 3 -> 2 relabel.

    The push drops the degree by one and can leave the proper two-pointed
    sector or the detached-leg one; instances whose push would need a kappa
    class (psi power >= 2 at the forgotten leg) are skipped, as are those
    whose push collapses to the zero sum.
    """
    out: list[RelationInstance] = []
    candidates: list[RelationInstance] = []
    candidates.extend(_enum_cor1(genus, degree + 1, budget))
    candidates.extend(_enum_cor2_three(genus, degree + 1, budget))
    for inst in candidates:
        pushed = RelationInstance(
            inst.family, inst.g, inst.r, inst.h, inst.prefix, inst.suffix, (), None,
            (0, 0), True,
        )
        try:
            if expand(pushed).is_zero():
                continue
        except KappaUnsupported:
            continue
        out.append(pushed)
    return out


def _enum_tail_glued(genus: int, degree: int, budget: EnumBudget) -> list[RelationInstance]:
    out: list[RelationInstance] = []
    for h in range(1, genus + 1):
        for r in range(0, budget.max_r + 1):
            rel_deg = 2 * h + 1 + r
            rest = degree - rel_deg
            if rest < 0:
                continue
            for gp in range(0, genus - h + 1):
                gt = genus - h - gp
                if gt < 1:
                    continue  # the tail must carry genus
                for dp in range(0, rest + 1):
                    dt = rest - dp
                    for pre in _chains_with_context_degree(gp, dp, budget):
                        for tail in _iter_tails(gt, dt, budget):
                            out.append(
                                RelationInstance(FAMILY_COR1B, h, r, 0, pre, (), tail)
                            )
    return out
