"""Evaluate exported chain classes inside the external tautological-ring
package and compare them with the product of the double ramification cycle
and the top Hodge class.

The external package (admcycles, running under SageMath) is optional: when
it cannot be imported, jobs report a ``skipped`` status instead of failing,
and nothing here feeds back into the engine that produced the export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .parser import ChainTerm, parse_export

MODES = ("compare-dr-lambda", "compare-class")


@dataclass
class BridgeJob:
    genus: int
    input_path: str
    mode: str = "compare-dr-lambda"
    against_path: Optional[str] = None  # second export, compare-class mode

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "compare-dr-lambda" and self.genus not in (1, 2):
            raise ValueError("the reference comparison is pinned to genera 1 and 2")
        if self.mode == "compare-class" and not self.against_path:
            raise ValueError("compare-class needs a second export file")


def _load_admcycles():
    try:
        import admcycles  # type: ignore

        return admcycles
    except Exception:
        return None


def _term_markings(term: ChainTerm) -> tuple[list[list[int]], list[tuple[int, int]], dict]:
    """Stable-graph data for one chain term.

    Vertices are numbered left to right.  Markings 1..3 follow the profile
    (1 left end or right end for one-pointed chains, 2 right end, 3 on its
    recorded vertex); half-edges are numbered from 4, a pair per chain edge,
    smaller number on the left vertex.  Psi powers are returned per leg or
    half-edge label.
    """
    n = len(term.genera)
    legs: list[list[int]] = [[] for _ in range(n)]
    psi: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for i in range(n - 1):
        a, b = 4 + 2 * i, 5 + 2 * i
        edges.append((a, b))
    # left attachments
    for i in range(n):
        if i == 0:
            if term.profile in ("two", "three"):
                legs[0].append(1)
                if term.left[0]:
                    psi[1] = term.left[0]
        else:
            label = 5 + 2 * (i - 1)
            legs[i].append(label)
            if term.left[i]:
                psi[label] = term.left[i]
    # right attachments
    for i in range(n):
        if i < n - 1:
            label = 4 + 2 * i
            legs[i].append(label)
            if term.right[i]:
                psi[label] = term.right[i]
        else:
            marking = 1 if term.profile == "one" else 2
            legs[i].append(marking)
            if term.right[i]:
                psi[marking] = term.right[i]
    if term.leg3 is not None:
        idx, power = term.leg3
        legs[idx].append(3)
        if power:
            psi[3] = power
    return legs, edges, psi


def class_from_terms(terms: list[ChainTerm], admcycles):
    """Sum of decorated boundary push-forwards, one stable graph per term."""
    total = None
    for term in terms:
        gamma = admcycles.StableGraph(
            list(term.genera), *_stable_graph_args(term)
        )
        legs, edges, psi = _term_markings(term)
        vertex_classes = []
        for v in range(len(term.genera)):
            nv = len(legs[v])
            cls = None
            for pos, label in enumerate(legs[v], start=1):
                power = psi.get(label, 0)
                if not power:
                    continue
                factor = admcycles.psiclass(pos, term.genera[v], nv) ** power
                cls = factor if cls is None else cls * factor
            if cls is None:
                cls = admcycles.fundclass(term.genera[v], nv)
            vertex_classes.append(cls)
        pushed = gamma.boundary_pushforward(vertex_classes)
        piece = pushed * term.coeff
        total = piece if total is None else total + piece
    return total


def _stable_graph_args(term: ChainTerm):
    legs, edges, _ = _term_markings(term)
    return [legs, [list(e) for e in edges]]


def reference_class(genus: int, admcycles):
    """The double ramification cycle at weights (1, -1) times the top Chern
    class of the Hodge bundle, on the two-pointed space."""
    dr = admcycles.DR_cycle(genus, [1, -1])
    lam = admcycles.lambdaclass(genus, genus, 2)
    return dr * lam


def evaluate_and_compare(job: BridgeJob) -> dict:
    """Run one job and return its one-line verdict record."""
    try:
        with open(job.input_path) as fh:
            terms = parse_export(fh.read())
    except (OSError, ValueError) as exc:
        return {
            "genus": job.genus,
            "mode": job.mode,
            "status": "error",
            "detail": str(exc),
        }
    admcycles = _load_admcycles()
    if admcycles is None:
        return {
            "genus": job.genus,
            "mode": job.mode,
            "status": "skipped",
            "detail": "admcycles unavailable",
        }
    try:
        built = class_from_terms(terms, admcycles)
        if job.mode == "compare-dr-lambda":
            other = reference_class(job.genus, admcycles)
        else:
            with open(job.against_path) as fh:  # type: ignore[arg-type]
                other = class_from_terms(parse_export(fh.read()), admcycles)
        equal = (built - other).is_zero()
        return {
            "genus": job.genus,
            "mode": job.mode,
            "status": "pass" if equal else "fail",
            "detail": f"{len(terms)} terms compared",
        }
    except Exception as exc:  # pragma: no cover - backend-specific failures
        return {
            "genus": job.genus,
            "mode": job.mode,
            "status": "error",
            "detail": f"{type(exc).__name__}: {exc}",
        }


def verdict_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))
