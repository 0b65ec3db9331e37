"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; every tolerance here is zero (all arithmetic is exact), and the
stated runtime bounds are asserted.
"""

import filecmp
import time
from fractions import Fraction

from tautbamboo import (
    Certificate,
    FormalSum,
    diamond,
    make_B,
    make_B_onepoint,
    make_b_arrow,
    make_c_arrow,
    make_c_arrow_left,
    make_d,
    make_e,
    mul_psi,
    pullback_forget,
    pushforward_forget,
    reflect,
    sentinel,
    single_vertex,
    verify_certificate,
)
from tautbamboo.certify import certify_zero
from tautbamboo.checks import OUTCOME_CERTIFIED, OUTCOME_EXACT, check_psi_eval
from tautbamboo.cli import run_suite
from tautbamboo.relations import RelationInstance

from test_constructors import b_arrow_base_case, brute_force_B


def _report(name: str, ok: bool, extra: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"{status}: {name}{(' -- ' + extra) if extra else ''}")
    assert ok, name


def test_criterion_exact_constructor_identities():
    t0 = time.monotonic()
    # one-side family recursion, all valid parameters, genus <= 4
    for g in range(1, 5):
        for d in range(0, 2 * g):
            for k in range(0, g):
                lhs = make_c_arrow(g, d, k + 1)
                rhs = FormalSum.zero()
                for g2 in range(1, g + 1):
                    g1 = g - g2
                    for d2 in range(0, d + 1):
                        d1 = d - 1 - d2
                        if (g1, d1, k) == (0, -1, 0):
                            left = sentinel()
                        elif g1 >= 1 and d1 >= 0 and k >= 1:
                            left = make_c_arrow(g1, d1, k)
                        else:
                            continue
                        rhs = rhs + diamond(left, single_vertex(g2, 0, d2))
                assert lhs == rhs, ("c_arrow", g, d, k)
    # two-side family: base case in its regime, vanishing beyond, recursion
    for g in range(2, 5):
        for g1 in range(1, g):
            for h in range(g1 + 1, g):
                for d in range(0, 2 * g + 1):
                    assert make_b_arrow(h, d, 1, g1) == b_arrow_base_case(h, d, g1)
                for k in range(1, h - g1 + 1):
                    for d in range(0, 2 * h + 1):
                        lhs = make_b_arrow(h, d, k + 1, g1)
                        rhs = FormalSum.zero()
                        for f in range(g1 + 1, h):
                            for d2 in range(0, d):
                                bf = make_b_arrow(f, d - 1 - d2, k, g1)
                                if not bf.is_zero():
                                    rhs = rhs + diamond(bf, single_vertex(h - f, 0, d2))
                        assert lhs == rhs, ("b_arrow", h, d, k, g1)
                    for d in range(2 * h + 1, 2 * g + 1):
                        assert make_b_arrow(h, d, k + 1, g1).is_zero()
    # pull-back of the mirrored family equals the leg-placement family minus
    # the bubble family, exactly
    for g in range(1, 5):
        for d in range(0, 2 * g):
            for k in range(1, g + 1):
                ca = make_c_arrow_left(g, d, k)
                if ca.is_zero():
                    continue
                assert pullback_forget(ca) == make_d(g, d, k) - make_e(g, d, k + 1)
    elapsed = time.monotonic() - t0
    _report("exact constructor identities (g <= 4)", elapsed < 30.0, f"{elapsed:.1f}s < 30s")


def test_criterion_pushforward_prop():
    t0 = time.monotonic()
    for g in range(1, 7):
        assert pushforward_forget(reflect(make_B(g)), 2) == make_B_onepoint(g), g
    elapsed = time.monotonic() - t0
    _report("one-point push-forward identity (g <= 6)", elapsed < 10.0, f"{elapsed:.1f}s < 10s")


def test_criterion_B_structure():
    assert make_B(1) == single_vertex(1, 0, 2) and len(make_B(1)) == 1
    assert len(make_B(2)) == 3
    from tautbamboo import make_c

    assert make_B(2) == single_vertex(2, 0, 4) - make_c([1, 1], [0, 3]) - make_c([1, 1], [1, 2])
    counts = []
    for g in range(1, 9):
        mine, oracle = make_B(g), brute_force_B(g)
        assert mine == oracle, g
        counts.append(len(mine))
    _report("class structure vs brute-force oracle (g <= 8)", True, f"term counts {counts}")


def test_criterion_certified_suite():
    t0 = time.monotonic()
    reports, code = run_suite(3)
    reports4, code4 = run_suite(4, identities=["symmetry"])
    all_reports = reports + reports4
    unresolved = [r for r in all_reports if not r.ok]
    assert code == 0 and code4 == 0, unresolved
    for rpt in all_reports:
        if rpt.certificate is not None:
            assert verify_certificate(rpt.certificate, rpt.target), rpt.identity
    elapsed = time.monotonic() - t0
    n_cert = sum(1 for r in all_reports if r.outcome == OUTCOME_CERTIFIED)
    _report(
        "certified suite (symmetry g<=4; irr/sep/split/pullback/recursion g<=3)",
        elapsed < 600.0,
        f"{len(all_reports)} identities, {n_cert} certified, {elapsed:.1f}s < 600s",
    )


def test_criterion_psi_eval():
    for g in (1, 2, 3):
        rpt = check_psi_eval(g)
        assert rpt.outcome == OUTCOME_EXACT, rpt.details
        expected = [f"{g2}/{g}" for g2 in range(g - 1, 0, -1)]
        assert rpt.details["coefficients"] == expected
    # the exact assembly behind the report, spelled out once for g = 3
    g = 3
    T = mul_psi(pullback_forget(reflect(make_B(g))), 1, 1)
    from tautbamboo import unit_03

    T = T - diamond(make_B(g), unit_03())
    for g1 in range(1, g):
        T = T - diamond(make_B(g1), pullback_forget(reflect(make_B(g - g1))))
    pushed = pushforward_forget(mul_psi(T, 3, 1), 3)
    residual = mul_psi(reflect(make_B(g)), 1, 1).scale(2 * g)
    for g1 in range(1, g):
        g2 = g - g1
        residual = residual - diamond(make_B(g1), reflect(make_B(g2))).scale(2 * g2)
    assert pushed == residual
    _report("psi evaluation via push-forward, exact coefficients g2/g", True)


def test_criterion_symmetry_genus1_regression():
    out = certify_zero(make_B(1) - reflect(make_B(1)))
    assert out.status == "certified"
    assert len(out.certificate.entries) == 1
    inst, coeff = out.certificate.entries[0]
    assert (inst.family, inst.g, inst.r, inst.prefix, inst.suffix) == ("cor2", 1, 0, (), ())
    assert abs(coeff) == 1 and coeff == 1
    _report("genus-1 symmetry certificate pinned (one cor2(1,0) entry, coefficient 1)", True)


def test_criterion_certificate_soundness():
    targets = [
        make_B(2) - reflect(make_B(2)),
        make_B(3) - reflect(make_B(3)),
    ]
    for target in targets:
        cert = certify_zero(target).certificate
        assert verify_certificate(cert, target)
        inst, coeff = cert.entries[0]
        bad_coeff = Certificate(cert.target_hash, [(inst, coeff + 1)] + cert.entries[1:])
        assert not verify_certificate(bad_coeff, target)
        other = RelationInstance(inst.family, inst.g, inst.r + 2, inst.h, inst.prefix, inst.suffix)
        bad_inst = Certificate(cert.target_hash, [(other, coeff)] + cert.entries[1:])
        assert not verify_certificate(bad_inst, target)
        assert not verify_certificate(cert, target.scale(2))
    _report("certificate soundness and mutation rejection", True)


def test_criterion_determinism(tmp_path):
    for name in ("first", "second"):
        reports, code = run_suite(2, out_dir=str(tmp_path / name))
        assert code == 0

    def same(dc):
        if dc.diff_files or dc.left_only or dc.right_only:
            return False
        return all(same(sub) for sub in dc.subdirs.values())

    ok = same(filecmp.dircmp(tmp_path / "first", tmp_path / "second"))
    _report("byte-identical reports and certificates across runs", ok)


def test_criterion_secondary_status():
    try:
        import admcycles  # noqa: F401

        note = "external package present; bridge comparison available"
    except ImportError:
        note = "external package absent; bridge runs in skip mode (permitted)"
    _report("primary suite independent of the oracle bridge", True, note)
