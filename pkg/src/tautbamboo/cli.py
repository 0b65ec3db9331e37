"""Command-line entry point.

Subcommands:

* ``construct``   -- materialize a class family to canonical JSON or to the
  textual export format.
* ``verify``      -- run the identity suite per genus, writing a byte-stable
  report and self-contained certificate files.
* ``certificate`` -- re-verify a certificate file standalone.

Exit codes from ``verify``: 0 when every identity is exact or certified, 2
when some identity is unresolved within the budget, 1 on an exact-check
failure or an internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import checks
from .certify import Certificate, verify_certificate
from .constructors import (
    make_B,
    make_B_onepoint,
    make_b_arrow,
    make_c,
    make_c_arrow,
    make_c_arrow_left,
    make_d,
    make_e,
)
from .calculus import unit_03
from .core import FormalSum, canonical_json
from .export import export_admcycles
from .relations import EnumBudget, default_budget

ALL_IDENTITIES = (
    "symmetry",
    "pushforward",
    "irr",
    "sep_off",
    "split",
    "pullback_psi",
    "psi_eval",
    "recursion",
)


def _budget_from_args(args, genus: int) -> EnumBudget:
    base = default_budget(genus)
    return EnumBudget(
        max_context_len=(
            args.budget_context_len if args.budget_context_len is not None else base.max_context_len
        ),
        max_r=args.budget_r if args.budget_r is not None else base.max_r,
        max_deco=args.budget_deco if args.budget_deco is not None else base.max_deco,
    )


def _construct(args) -> int:
    fam = args.family
    if fam == "B":
        s = make_B(args.genus)
    elif fam == "B1pt":
        s = make_B_onepoint(args.genus)
    elif fam == "c":
        s = make_c(_int_list(args.genera), _int_list(args.psis))
    elif fam == "c_arrow":
        s = make_c_arrow(args.genus, args.degree, args.parts)
    elif fam == "c_arrow_left":
        s = make_c_arrow_left(args.genus, args.degree, args.parts)
    elif fam == "b_arrow":
        s = make_b_arrow(args.genus, args.degree, args.parts, args.g1)
    elif fam == "d":
        s = make_d(args.genus, args.degree, args.parts)
    elif fam == "e":
        s = make_e(args.genus, args.degree, args.parts)
    elif fam == "unit03":
        s = unit_03()
    else:
        print(f"unknown family {fam!r}", file=sys.stderr)
        return 1
    if args.export_format == "admcycles":
        payload = export_admcycles(s)
    else:
        payload = s.to_canonical_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _int_list(text: Optional[str]) -> list[int]:
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _suite_tasks(genus: int, identities: list[str], deep: bool):
    """The deterministic task list: (name, callable) pairs."""
    tasks = []
    for g in range(1, genus + 1):
        if "symmetry" in identities:
            tasks.append((f"symmetry_g{g}", lambda g=g, b=None: checks.check_symmetry(g, b)))
        if "pushforward" in identities:
            tasks.append((f"pushforward_g{g}", lambda g=g, b=None: checks.check_pushforward(g)))
        if "irr" in identities:
            tasks.append((f"irr_g{g}", lambda g=g, b=None: checks.check_irr(g, b)))
        if "sep_off" in identities:
            for h in range(1, g):
                tasks.append(
                    (f"sep_off_g{g}_h{h}", lambda g=g, h=h, b=None: checks.check_sep_off(g, h, b))
                )
        if "split" in identities:
            for g1 in range(1, g):
                tasks.append(
                    (f"split_g{g}_g1{g1}", lambda g=g, g1=g1, b=None: checks.check_split(g, g1, b))
                )
        if "pullback_psi" in identities:
            tasks.append((f"pullback_psi_g{g}", lambda g=g, b=None: checks.check_pullback_psi(g, b)))
        if "psi_eval" in identities:
            tasks.append((f"psi_eval_g{g}", lambda g=g, b=None: checks.check_psi_eval(g, b)))
        if "recursion" in identities:
            tasks.append((f"recursion_g{g}", lambda g=g, b=None: checks.check_recursion(g, b)))
    return tasks


def run_suite(
    genus: int,
    identities: Optional[list[str]] = None,
    budget: Optional[EnumBudget] = None,
    out_dir: Optional[str] = None,
    deep: bool = False,
) -> tuple[list[checks.IdentityReport], int]:
    """Run the identity suite up to the given genus; returns the reports and
    the process exit code.  Reports and certificates are written when an
    output directory is given, deterministically."""
    identities = identities or list(ALL_IDENTITIES)
    reports: list[checks.IdentityReport] = []
    for name, task in _suite_tasks(genus, identities, deep):
        rpt = task(b=budget)
        rpt.params["task"] = name
        reports.append(rpt)
    if deep:
        for g in range(1, genus + 1):
            reports.extend(checks.deep_symmetry(g, budget))
            for g1 in range(1, g):
                reports.extend(checks.deep_split(g, g1, budget))
    exit_code = 0
    if any(r.outcome == checks.OUTCOME_UNRESOLVED for r in reports):
        exit_code = 2
    if any(r.outcome == checks.OUTCOME_FAILED for r in reports):
        exit_code = 1
    if out_dir:
        _write_outputs(reports, genus, budget, out_dir)
    return reports, exit_code


def _task_filename(rpt: checks.IdentityReport) -> str:
    bits = [rpt.identity, f"g{rpt.genus}"]
    for key in sorted(rpt.params):
        if key == "task":
            continue
        bits.append(f"{key}{rpt.params[key]}")
    return "_".join(bits)


def _write_outputs(reports, genus, budget, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)
    cert_dir = os.path.join(out_dir, "certificates")
    os.makedirs(cert_dir, exist_ok=True)
    for rpt in reports:
        if rpt.certificate is None or rpt.target is None:
            continue
        name = _task_filename(rpt) + ".json"
        path = os.path.join(cert_dir, name)
        payload = {
            "certificate": rpt.certificate.to_obj(),
            "target": rpt.target.to_obj(),
        }
        with open(path, "w") as fh:
            fh.write(canonical_json(payload) + "\n")
        rpt.certificate_path = os.path.join("certificates", name)
    report_obj = {
        "genus_max": genus,
        "budget": (budget.to_obj() if budget is not None else None),
        "reports": [r.to_obj() for r in reports],
    }
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        fh.write(canonical_json(report_obj) + "\n")


def _verify(args) -> int:
    identities = args.identity.split(",") if args.identity else list(ALL_IDENTITIES)
    for ident in identities:
        if ident not in ALL_IDENTITIES:
            print(f"unknown identity {ident!r}", file=sys.stderr)
            return 1
    budget = _budget_from_args(args, args.genus)
    reports, code = run_suite(
        args.genus,
        identities,
        budget=budget,
        out_dir=args.out_dir,
        deep=args.deep,
    )
    for rpt in reports:
        line = f"{rpt.params.get('task', rpt.identity)}: {rpt.outcome}"
        if rpt.elapsed:
            line += f"  ({rpt.elapsed:.2f}s)"
        print(line)
    print(f"exit code {code}")
    return code


def _certificate_verify(args) -> int:
    with open(args.file) as fh:
        payload = json.load(fh)
    cert = Certificate.from_obj(payload["certificate"])
    target = FormalSum.from_obj(payload["target"])
    ok = verify_certificate(cert, target)
    print("certificate ok" if ok else "certificate INVALID")
    return 0 if ok else 1


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="tautbamboo")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="materialize a class family")
    c.add_argument("--family", required=True,
                   choices=["B", "B1pt", "c", "c_arrow", "c_arrow_left", "b_arrow", "d", "e", "unit03"])
    c.add_argument("--genus", type=int, default=1)
    c.add_argument("--degree", type=int, default=0)
    c.add_argument("--parts", type=int, default=1)
    c.add_argument("--g1", type=int, default=1)
    c.add_argument("--genera", type=str, default="")
    c.add_argument("--psis", type=str, default="")
    c.add_argument("--export-format", choices=["json", "admcycles"], default="json")
    c.add_argument("--out", type=str, default="")
    c.set_defaults(func=_construct)

    v = sub.add_parser("verify", help="run the identity suite")
    v.add_argument("--genus", type=int, required=True)
    v.add_argument("--identity", type=str, default="")
    v.add_argument("--budget-context-len", type=int, default=None)
    v.add_argument("--budget-r", type=int, default=None)
    v.add_argument("--budget-deco", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; tasks run serially")
    v.add_argument("--out-dir", type=str, default="")
    v.add_argument("--deep", action="store_true")
    v.set_defaults(func=_verify)

    cert = sub.add_parser("certificate", help="certificate operations")
    cert_sub = cert.add_subparsers(dest="cert_command", required=True)
    cv = cert_sub.add_parser("verify", help="re-verify a certificate file")
    cv.add_argument("--file", required=True)
    cv.set_defaults(func=_certificate_verify)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
