"""Ideal-membership-within-budget: express a target sum as an exact rational
combination of relation-instance expansions.

The solve is a two-phase sparse elimination over ``fractions.Fraction``:

1. an incremental reduction (no coefficient tracking) finds whether the
   target lies in the span and which pivot columns its reduction touches;
2. the solve is repeated over that (transitively closed) column subset with
   full coefficient tracking, which yields the certificate.

Everything is deterministic: instances are enumerated in a fixed order,
columns are processed in that order, and the pivot of a reduced column is its
minimal term under the canonical key.  Soundness never rests on the solver:
every certificate re-verifies by pure re-expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    FormalSum,
    PROFILE_THREE,
    PROFILE_TWO,
    Term,
    canonical_json,
    digest,
    format_fraction,
    parse_fraction,
)
from .relations import EnumBudget, RelationInstance, default_budget, enumerate_instances, expand

STATUS_ZERO = "zero_exactly"
STATUS_CERTIFIED = "certified"
STATUS_UNRESOLVED = "unresolved_within_budget"


@dataclass
class Certificate:
    target_hash: str
    entries: list[tuple[RelationInstance, Fraction]]

    def to_obj(self) -> dict:
        return {
            "target_hash": self.target_hash,
            "entries": [
                {"coeff": format_fraction(c), "instance": inst.to_obj()}
                for inst, c in self.entries
            ],
        }

    def to_canonical_json(self) -> str:
        return canonical_json(self.to_obj())

    @classmethod
    def from_obj(cls, obj: dict) -> "Certificate":
        entries = [
            (RelationInstance.from_obj(e["instance"]), parse_fraction(e["coeff"]))
            for e in obj["entries"]
        ]
        return cls(obj["target_hash"], entries)


@dataclass
class CertifyOutcome:
    status: str
    certificate: Optional[Certificate] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (STATUS_ZERO, STATUS_CERTIFIED)


def sectors_of(target: FormalSum) -> list[tuple]:
    found = set()
    for term, _ in target.items():
        b = term.bamboo
        if term.omega is not None:
            found.add(("marked", term.omega.kind, term.omega.h))
        elif b.profile == PROFILE_THREE:
            found.add(("three",))
        elif b.profile == PROFILE_TWO and b.is_detached_two():
            found.add(("detached",))
        elif b.profile == PROFILE_TWO:
            found.add(("two",))
        else:
            raise ValueError(f"no relations available for profile {b.profile}")
    return sorted(found)


def _min_term(col: dict[Term, Fraction]) -> Term:
    return min(col, key=lambda t: t.key())


def _reduce(
    col: dict[Term, Fraction],
    pivots: dict[Term, dict[Term, Fraction]],
    touched: Optional[list[Term]] = None,
) -> dict[Term, Fraction]:
    """Eliminate pivot rows from ``col`` smallest-first; optionally record the
    pivot rows used."""
    col = dict(col)
    while col:
        t = _min_term(col)
        piv = pivots.get(t)
        if piv is None:
            return col
        factor = col[t] / piv[t]
        for row, val in piv.items():
            nv = col.get(row, Fraction(0)) - factor * val
            if nv == 0:
                col.pop(row, None)
            else:
                col[row] = nv
        if touched is not None:
            touched.append(t)
    return col


def _as_dict(s: FormalSum) -> dict[Term, Fraction]:
    return {t: c for t, c in s.items()}


def certify_zero(
    target: FormalSum,
    budget: Optional[EnumBudget] = None,
    genus: Optional[int] = None,
) -> CertifyOutcome:
    """Express ``target`` as an exact combination of relation instances.

    Returns ``zero_exactly`` for the empty sum, ``certified`` with a
    certificate when the solve succeeds, and ``unresolved_within_budget``
    otherwise (never a refutation).
    """
    if target.is_zero():
        return CertifyOutcome(STATUS_ZERO)
    degree = target.homogeneous_degree()
    genera = {t.genus() for t, _ in target.items()}
    if len(genera) != 1:
        raise ValueError(f"target mixes total genera {sorted(genera)}")
    g = genus if genus is not None else next(iter(genera))
    budget = budget or default_budget(g)

    instances: list[RelationInstance] = []
    for sector in sectors_of(target):
        instances.extend(enumerate_instances(g, degree, sector, budget))

    expansions = [_as_dict(expand(inst)) for inst in instances]

    # Phase 1: span test, tracking which pivot rows each reduction touches.
    pivots: dict[Term, dict[Term, Fraction]] = {}
    pivot_col_index: dict[Term, int] = {}
    col_deps: dict[int, list[Term]] = {}
    for idx, col in enumerate(expansions):
        if not col:
            continue
        touched: list[Term] = []
        red = _reduce(col, pivots, touched)
        col_deps[idx] = touched
        if red:
            lead = _min_term(red)
            pivots[lead] = red
            pivot_col_index[lead] = idx

    t_touched: list[Term] = []
    residual = _reduce(_as_dict(target), pivots, t_touched)
    if residual:
        return CertifyOutcome(
            STATUS_UNRESOLVED,
            diagnostics={
                "residual_support": len(residual),
                "target_support": len(target),
                "instances": len(instances),
                "budget": budget.to_obj(),
            },
        )

    # Transitive closure of the columns the reduction rests on.
    needed: set[int] = set()
    stack = [pivot_col_index[t] for t in t_touched]
    while stack:
        idx = stack.pop()
        if idx in needed:
            continue
        needed.add(idx)
        for t in col_deps.get(idx, []):
            stack.append(pivot_col_index[t])
    subset = sorted(needed)

    # Phase 2: same elimination over the subset, with coefficient tracking.
    combos: dict[Term, dict[int, Fraction]] = {}
    sub_pivots: dict[Term, dict[Term, Fraction]] = {}
    for idx in subset:
        col = dict(expansions[idx])
        combo: dict[int, Fraction] = {idx: Fraction(1)}
        col, combo = _reduce_tracked(col, combo, sub_pivots, combos)
        if col:
            lead = _min_term(col)
            sub_pivots[lead] = col
            combos[lead] = combo
    t_col, t_combo = _reduce_tracked(_as_dict(target), {}, sub_pivots, combos)
    if t_col:
        # The subset closure always suffices; reaching this line would be a bug.
        raise RuntimeError("internal solver inconsistency")
    entries = [
        (instances[idx], -coeff)
        for idx, coeff in sorted(t_combo.items())
        if coeff != 0
    ]
    cert = Certificate(digest(target), entries)
    if not verify_certificate(cert, target):
        raise RuntimeError("internal error: emitted certificate failed re-verification")
    return CertifyOutcome(
        STATUS_CERTIFIED,
        certificate=cert,
        diagnostics={
            "instances": len(instances),
            "entries": len(entries),
            "budget": budget.to_obj(),
        },
    )


def _reduce_tracked(
    col: dict[Term, Fraction],
    combo: dict[int, Fraction],
    pivots: dict[Term, dict[Term, Fraction]],
    combos: dict[Term, dict[int, Fraction]],
) -> tuple[dict[Term, Fraction], dict[int, Fraction]]:
    col = dict(col)
    combo = dict(combo)
    while col:
        t = _min_term(col)
        piv = pivots.get(t)
        if piv is None:
            break
        factor = col[t] / piv[t]
        for row, val in piv.items():
            nv = col.get(row, Fraction(0)) - factor * val
            if nv == 0:
                col.pop(row, None)
            else:
                col[row] = nv
        for idx, val in combos[t].items():
            nv = combo.get(idx, Fraction(0)) - factor * val
            if nv == 0:
                combo.pop(idx, None)
            else:
                combo[idx] = nv
    return col, combo


def verify_certificate(cert: Certificate, target: FormalSum) -> bool:
    """Re-expand every instance, form the exact combination, and compare with
    the target term by term; also check the target hash.  Pure expansion, no
    solver involved."""
    if cert.target_hash != digest(target):
        return False
    acc = FormalSum.zero()
    for inst, coeff in cert.entries:
        acc = acc + expand(inst).scale(coeff)
    return acc == target
