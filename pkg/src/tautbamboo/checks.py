"""The per-genus identity suite.

Each check builds its target from the constructors and the calculus, decides
it exactly where the identity is a definition unwinding, and otherwise hands
it to the certifier.  Checks return ``IdentityReport`` records; the suite
runner in :mod:`tautbamboo.cli` serializes them (without timings, so report
files are byte-stable) next to the certificate files.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .calculus import (
    delta012_kills,
    diamond,
    mul_psi,
    mul_sep_divisor,
    omega_apply,
    pullback_forget,
    pushforward_forget,
    unit_03,
)
from .certify import Certificate, STATUS_CERTIFIED, STATUS_ZERO, certify_zero
from .constructors import (
    make_B,
    make_B_onepoint,
    make_b_arrow,
    make_c_arrow,
)
from .core import FormalSum, reflect, single_vertex
from .relations import EnumBudget

OUTCOME_EXACT = "exact_zero"
OUTCOME_CERTIFIED = "certified"
OUTCOME_UNRESOLVED = "unresolved_within_budget"
OUTCOME_FAILED = "failed_exact_check"


@dataclass
class IdentityReport:
    identity: str
    genus: int
    params: dict
    outcome: str
    support: int
    details: dict = field(default_factory=dict)
    certificate: Optional[Certificate] = None
    certificate_path: Optional[str] = None
    target: Optional[FormalSum] = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.outcome in (OUTCOME_EXACT, OUTCOME_CERTIFIED)

    def to_obj(self) -> dict:
        # elapsed is intentionally omitted: report files must be byte-stable
        # across runs.
        return {
            "identity": self.identity,
            "genus": self.genus,
            "params": self.params,
            "outcome": self.outcome,
            "support": self.support,
            "details": self.details,
            "certificate_path": self.certificate_path,
        }


def _certified_report(
    identity: str,
    genus: int,
    params: dict,
    target: FormalSum,
    budget: Optional[EnumBudget],
    details: Optional[dict] = None,
) -> IdentityReport:
    t0 = time.monotonic()
    outcome = certify_zero(target, budget=budget, genus=genus)
    elapsed = time.monotonic() - t0
    status = {
        STATUS_ZERO: OUTCOME_EXACT,
        STATUS_CERTIFIED: OUTCOME_CERTIFIED,
    }.get(outcome.status, OUTCOME_UNRESOLVED)
    det = dict(details or {})
    det["certify"] = outcome.diagnostics
    return IdentityReport(
        identity,
        genus,
        params,
        status,
        len(target),
        det,
        outcome.certificate,
        target=target,
        elapsed=elapsed,
    )


# -- the identity suite ----------------------------------------------------------


def check_symmetry(g: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """The class equals its own point-relabelling, as a certified identity."""
    target = make_B(g) - reflect(make_B(g))
    return _certified_report("symmetry", g, {}, target, budget)


def check_irr(g: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """Vanishing against the one-self-node divisor, in the marked sector."""
    target = omega_apply(make_B(g), "irr")
    return _certified_report("irr", g, {}, target, budget)


def check_sep_off(g: int, h: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """Vanishing against the divisor splitting off an unmarked genus-h tail."""
    if not (1 <= h):
        raise ValueError("h must be >= 1")
    target = omega_apply(make_B(g), "sep", h)
    return _certified_report("sep_off", g, {"h": h}, target, budget)


def split_correction_lines(g: int, g1: int) -> FormalSum:
    """The correction terms of the split-divisor product formula: the
    alternating one-side families times (psi2^d + psi1 psi2^{d-1}) tails plus
    the two-sided families times psi2 tails."""
    g2 = g - g1
    total = FormalSum.zero()
    for d1 in range(0, 2 * g + 1):
        d2 = 2 * g - d1
        for m in range(1, g1 + 1):
            pref = make_c_arrow(g1, d1, m)
            if pref.is_zero():
                continue
            tail = single_vertex(g2, 0, d2)
            if d2 >= 1:
                tail = tail + single_vertex(g2, 1, d2 - 1)
            total = total + diamond(pref, tail).scale((-1) ** (m + 1))
    for h in range(g1 + 1, g):
        for d1 in range(0, 2 * g + 1):
            d2 = 2 * g - d1
            for k in range(1, g2):
                ba = make_b_arrow(h, d1, k, g1)
                if ba.is_zero():
                    continue
                total = total + diamond(ba, single_vertex(g - h, 0, d2)).scale((-1) ** (k + 1))
    return total


def check_split(g: int, g1: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """Two stages: the excess-intersection product must reproduce the glued
    product plus the correction lines term for term (exact), and the
    correction lines must certify to zero."""
    t0 = time.monotonic()
    g2 = g - g1
    product = mul_sep_divisor(make_B(g), g1)
    glued = diamond(make_B(g1), make_B(g2))
    lines = split_correction_lines(g, g1)
    if product - glued != lines:
        return IdentityReport(
            "split",
            g,
            {"g1": g1},
            OUTCOME_FAILED,
            len(product),
            {"stage": "exact", "mismatch_support": len(product - glued - lines)},
            elapsed=time.monotonic() - t0,
        )
    rpt = _certified_report(
        "split", g, {"g1": g1}, lines, budget, details={"exact_stage": "ok"}
    )
    rpt.elapsed += time.monotonic() - t0
    return rpt


def pullback_psi_target(g: int) -> FormalSum:
    """Pull back, multiply by the first psi class, and subtract the bubble
    term and the split pull-back terms.  The pulled-back classes enter in
    mirrored form so that every correction bubble carries the new leg at a
    left attachment, as in the identities this target certifies against."""
    target = mul_psi(pullback_forget(reflect(make_B(g))), 1, 1)
    target = target - diamond(make_B(g), unit_03())
    for g1 in range(1, g):
        g2 = g - g1
        target = target - diamond(make_B(g1), pullback_forget(reflect(make_B(g2))))
    return target


def check_pullback_psi(g: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    return _certified_report("pullback_psi", g, {}, pullback_psi_target(g), budget)


def check_psi_eval(g: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """The psi-evaluation identity, assembled exactly from three push-forward
    computations on the three-pointed space plus the certified pull-back
    identity; the direct certification attempt is recorded as well."""
    t0 = time.monotonic()
    B = make_B(g)
    rB = reflect(B)
    exact_failures = []

    lhs_a = pushforward_forget(mul_psi(mul_psi(pullback_forget(rB), 1, 1), 3, 1), 3)
    rhs_a = mul_psi(rB, 1, 1).scale(2 * g)
    if lhs_a != rhs_a:
        exact_failures.append("dilaton_main")

    assembled_rhs = FormalSum.zero()
    for g1 in range(1, g):
        g2 = g - g1
        piece = diamond(make_B(g1), pullback_forget(reflect(make_B(g2))))
        lhs_b = pushforward_forget(mul_psi(piece, 3, 1), 3)
        rhs_b = diamond(make_B(g1), reflect(make_B(g2))).scale(2 * g2)
        if lhs_b != rhs_b:
            exact_failures.append(f"dilaton_split_{g1}")
        assembled_rhs = assembled_rhs + rhs_b

    if not mul_psi(diamond(B, unit_03()), 3, 1).is_zero():
        exact_failures.append("bubble_psi3")

    # Pushing the whole pull-back target forward against psi3 must reproduce
    # the psi-evaluation residual scaled by 2g, with exact coefficients.
    T = pullback_psi_target(g)
    pushed = pushforward_forget(mul_psi(T, 3, 1), 3)
    residual = mul_psi(rB, 1, 1).scale(2 * g) - assembled_rhs
    if pushed != residual:
        exact_failures.append("assembly")

    eval_target = mul_psi(B, 1, 1)
    for g1 in range(1, g):
        g2 = g - g1
        eval_target = eval_target - diamond(make_B(g1), make_B(g2)).scale(Fraction(g2, g))
    direct = certify_zero(eval_target, budget=budget, genus=g)

    elapsed = time.monotonic() - t0
    if exact_failures:
        return IdentityReport(
            "psi_eval", g, {}, OUTCOME_FAILED, len(eval_target),
            {"exact_failures": exact_failures}, elapsed=elapsed,
        )
    return IdentityReport(
        "psi_eval",
        g,
        {},
        OUTCOME_EXACT,
        len(eval_target),
        {
            "push_identities": "ok",
            "coefficients": [f"{g2}/{g}" for g2 in range(g - 1, 0, -1)],
            "direct_certification": direct.status,
        },
        elapsed=elapsed,
    )


def check_pushforward(g: int) -> IdentityReport:
    """Forgetting the second point of the mirrored class gives the one-pointed
    family on the nose: an exact check, no relations involved."""
    t0 = time.monotonic()
    lhs = pushforward_forget(reflect(make_B(g)), 2)
    rhs = make_B_onepoint(g)
    ok = lhs == rhs
    return IdentityReport(
        "pushforward",
        g,
        {},
        OUTCOME_EXACT if ok else OUTCOME_FAILED,
        len(lhs),
        {} if ok else {"mismatch_support": len(lhs - rhs)},
        elapsed=time.monotonic() - t0,
    )


def recursion_target(g: int) -> FormalSum:
    target = make_B(g) - mul_psi(pullback_forget(make_B_onepoint(g)), 1, 1)
    for g1 in range(1, g):
        target = target + diamond(make_B(g1), pullback_forget(make_B_onepoint(g - g1)))
    return target


def check_recursion(g: int, budget: Optional[EnumBudget] = None) -> IdentityReport:
    """The class satisfies its reconstruction from one-pointed push-forwards.

    The one-pointed push-forward is taken in closed form (the certified
    symmetry plus the exact push-forward identity justify it) and pulled
    back; the leg-1,2 bubbling side condition is checked exactly.
    """
    t0 = time.monotonic()
    side = delta012_kills(pullback_forget(make_B(g))) and delta012_kills(
        pullback_forget(reflect(make_B(g)))
    )
    bubble = pushforward_forget(diamond(make_B(g), unit_03()), 3) == make_B(g)
    if not (side and bubble):
        return IdentityReport(
            "recursion", g, {}, OUTCOME_FAILED, 0,
            {"side_condition": side, "bubble_contraction": bubble},
            elapsed=time.monotonic() - t0,
        )
    rpt = _certified_report(
        "recursion",
        g,
        {},
        recursion_target(g),
        budget,
        details={"side_condition": "exact_zero", "bubble_contraction": "exact"},
    )
    rpt.elapsed += time.monotonic() - t0
    return rpt


# -- deep (lemma-level) checks -----------------------------------------------------


def _symmetry_partial(g: int, upto: int) -> FormalSum:
    """Partial sums of the chain-count decomposition of the symmetry
    difference."""
    out = FormalSum.zero()
    for k in range(1, upto + 1):
        for g2 in range(1, g + 1):
            g1 = g - g2
            for d2 in range(0, 2 * g + 1):
                d1 = 2 * g - 1 - d2
                for refl_side in (False, True):
                    if (g1, d1, k - 1) == (0, -1, 0):
                        pre = None  # sentinel
                    elif g1 >= 1 and d1 >= 0 and k - 1 >= 1:
                        pre = make_c_arrow(g1, d1, k - 1)
                        if pre.is_zero():
                            continue
                    else:
                        continue
                    sign = (-1) ** (k - 1)
                    if not refl_side:
                        piece = (
                            single_vertex(g2, 0, d2)
                            if pre is None
                            else diamond(pre, single_vertex(g2, 0, d2))
                        )
                        out = out + piece.scale(sign)
                    else:
                        piece = (
                            single_vertex(g2, d2, 0)
                            if pre is None
                            else diamond(single_vertex(g2, d2, 0), reflect(pre))
                        )
                        out = out - piece.scale(sign)
    return out


def _symmetry_closed_form(g: int, ell: int) -> FormalSum:
    """The lemma's closed form for the partial sums: four-block chains with
    the inner psi pair and mirrored one-side families outside."""
    out = FormalSum.zero()
    for r in range(0, ell):
        s = ell - 1 - r
        for g1 in range(0, g + 1):
            for g2 in range(1, g + 1):
                for g3 in range(1, g + 1):
                    g4 = g - g1 - g2 - g3
                    if g4 < 0:
                        continue
                    for d1 in range(-1, 2 * g + 1):
                        for d2 in range(0, 2 * g + 1):
                            for d3 in range(0, 2 * g + 1):
                                d4 = 2 * g - 3 - d1 - d2 - d3
                                if d4 < -1:
                                    continue
                                if (g1, d1, r) == (0, -1, 0):
                                    pre = None
                                elif g1 >= 1 and d1 >= 0 and r >= 1:
                                    pre = make_c_arrow(g1, d1, r)
                                    if pre.is_zero():
                                        continue
                                else:
                                    continue
                                if (g4, d4, s) == (0, -1, 0):
                                    suf = None
                                elif g4 >= 1 and d4 >= 0 and s >= 1:
                                    suf = reflect(make_c_arrow(g4, d4, s))
                                    if suf.is_zero():
                                        continue
                                else:
                                    continue
                                mid = diamond(single_vertex(g2, 0, d2), single_vertex(g3, d3, 0))
                                piece = mid if pre is None else diamond(pre, mid)
                                piece = piece if suf is None else diamond(piece, suf)
                                sign = Fraction((-1) ** (ell + 1) * (-1) ** (d1 + d2))
                                out = out + piece.scale(sign)
    return out


def deep_symmetry(g: int, budget: Optional[EnumBudget] = None) -> list[IdentityReport]:
    """Certify every partial sum of the symmetry telescope against its closed
    form; localizes a failure to one induction step."""
    reports = []
    for ell in range(1, g + 1):
        target = _symmetry_partial(g, ell) - _symmetry_closed_form(g, ell)
        reports.append(
            _certified_report("deep_symmetry", g, {"ell": ell}, target, budget)
        )
    return reports


def psi1psi2_identity_target(g2: int, d2: int) -> FormalSum:
    """The two-step psi identity on a single vertex: the psi pair minus its
    split form, valid for d2 >= 2 g2 + 1."""
    if d2 < 2 * g2 + 1:
        raise ValueError("identity needs d2 >= 2*g2 + 1")
    lhs = single_vertex(g2, 0, d2) + single_vertex(g2, 1, d2 - 1)
    rhs = FormalSum.zero()
    for f1 in range(1, g2):
        f2 = g2 - f1
        for a1 in range(0, d2):
            a2 = d2 - 1 - a1
            block = single_vertex(f1, 0, a1)
            if a1 >= 1:
                block = block + single_vertex(f1, 1, a1 - 1)
            rhs = rhs + diamond(block, single_vertex(f2, a2, 0)).scale((-1) ** a2)
    return lhs - rhs


def deep_split(g: int, g1: int, budget: Optional[EnumBudget] = None) -> list[IdentityReport]:
    """Certify the psi-pair split identity instances the split telescope
    rests on, for the parameters this genus actually uses."""
    reports = []
    for g2 in range(1, g - g1 + 1):
        for d2 in range(2 * g2 + 1, 2 * g + 1):
            target = psi1psi2_identity_target(g2, d2)
            reports.append(
                _certified_report(
                    "deep_split_psipair", g2, {"d2": d2, "ambient_g": g}, target, budget
                )
            )
    return reports
