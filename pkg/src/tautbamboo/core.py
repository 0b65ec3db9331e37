"""Exact term algebra for decorated chain strata ("bamboos").

A bamboo is a chain of vertices, each carrying a genus and psi powers at its
attachments (legs at the chain ends, node branches in the middle).  Formal
rational combinations of such chains are the ring elements everything else in
this package manipulates.  All arithmetic is exact: coefficients are
`fractions.Fraction`, psi powers are ints, and no floating point appears
anywhere.

Marking profiles:

* ``two``    -- leg 1 on the left end, leg 2 on the right end.  A vertex may
  instead carry leg 2 as a detached attachment (``extra``), in which case the
  right end of the chain is bare; this generalized shape only arises from
  pull-backs of one-pointed classes.
* ``three``  -- as ``two`` plus leg 3 on exactly one vertex (``extra``).
* ``one``    -- a single leg (leg 1) on the right end.
* ``unit``   -- the empty chain, the identity element for gluing.

Vertices of genus 0 are admitted only with exactly three attachments and zero
psi powers everywhere (psi classes vanish on the three-pointed rational
moduli).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

Coeff = Union[int, Fraction]

PROFILE_UNIT = "unit"
PROFILE_ONE = "one"
PROFILE_TWO = "two"
PROFILE_THREE = "three"

_PROFILE_CODE = {PROFILE_UNIT: 0, PROFILE_ONE: 1, PROFILE_TWO: 2, PROFILE_THREE: 3}

OMEGA_IRR = "irr"
OMEGA_SEP = "sep"


class KappaUnsupported(Exception):
    """A push-forward would require a kappa decoration (psi power >= 2 at the
    forgotten leg), which this term algebra does not represent."""


@dataclass(frozen=True)
class Vertex:
    """One chain vertex: genus plus psi powers at its attachments.

    ``left``/``right`` are the psi powers at the left/right attachment (a leg
    or a node branch depending on position and profile).  ``extra`` is the psi
    power at a detached leg carried by this vertex (leg 3 on a ``three``
    bamboo, the detached leg 2 on a generalized ``two`` bamboo); ``None``
    means this vertex carries no detached leg.
    """

    genus: int
    left: int = 0
    right: int = 0
    extra: Optional[int] = None

    def __post_init__(self) -> None:
        if self.genus < 0 or self.left < 0 or self.right < 0:
            raise ValueError(f"negative decoration in vertex {self!r}")
        if self.extra is not None and self.extra < 0:
            raise ValueError(f"negative extra-leg psi power in vertex {self!r}")

    def psi_total(self) -> int:
        return self.left + self.right + (self.extra or 0)

    def key(self) -> tuple:
        return (self.genus, self.left, self.right, -1 if self.extra is None else self.extra)


@dataclass(frozen=True)
class Bamboo:
    """A decorated chain with a marking profile.  Immutable and validated."""

    vertices: tuple[Vertex, ...]
    profile: str

    def __post_init__(self) -> None:
        if self.profile not in _PROFILE_CODE:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.profile == PROFILE_UNIT:
            if self.vertices:
                raise ValueError("unit bamboo must be empty")
            return
        if not self.vertices:
            raise ValueError("non-unit bamboo must have at least one vertex")
        extras = [i for i, v in enumerate(self.vertices) if v.extra is not None]
        n = len(self.vertices)
        if self.profile == PROFILE_ONE:
            if extras:
                raise ValueError("one-pointed bamboo cannot carry a detached leg")
            if self.vertices[0].left != 0:
                raise ValueError("bare left end of a one-pointed bamboo must have psi 0")
        elif self.profile == PROFILE_TWO:
            if len(extras) > 1:
                raise ValueError("at most one vertex may carry the detached leg 2")
            if extras:
                j = extras[0]
                if j == n - 1:
                    raise ValueError(
                        "detached leg 2 on the last vertex must be stored as the right end"
                    )
                if self.vertices[-1].right != 0:
                    raise ValueError("bare right end must have psi 0")
        elif self.profile == PROFILE_THREE:
            if len(extras) != 1:
                raise ValueError("three-pointed bamboo needs leg 3 on exactly one vertex")
        for i, v in enumerate(self.vertices):
            att = self.attachment_count(i)
            if 2 * v.genus - 2 + att <= 0:
                raise ValueError(f"unstable vertex {i} in {self!r}")
            if v.genus == 0:
                if att != 3:
                    raise ValueError(f"genus-0 vertex {i} must have exactly 3 attachments")
                if v.psi_total() != 0:
                    raise ValueError(f"genus-0 vertex {i} must carry zero psi powers")
            if not self.has_left_attachment(i) and v.left != 0:
                raise ValueError(f"vertex {i} has no left attachment but left psi > 0")
            if not self.has_right_attachment(i) and v.right != 0:
                raise ValueError(f"vertex {i} has no right attachment but right psi > 0")

    # -- attachment bookkeeping -------------------------------------------

    def has_left_attachment(self, i: int) -> bool:
        if i > 0:
            return True
        return self.profile in (PROFILE_TWO, PROFILE_THREE)

    def has_right_attachment(self, i: int) -> bool:
        if i < len(self.vertices) - 1:
            return True
        if self.profile in (PROFILE_ONE, PROFILE_THREE):
            return True
        if self.profile == PROFILE_TWO:
            return not self.is_detached_two()
        return False

    def attachment_count(self, i: int) -> int:
        n = int(self.has_left_attachment(i)) + int(self.has_right_attachment(i))
        if self.vertices[i].extra is not None:
            n += 1
        return n

    # -- structure queries -------------------------------------------------

    def is_unit(self) -> bool:
        return self.profile == PROFILE_UNIT

    def is_detached_two(self) -> bool:
        """True when this is a ``two`` bamboo whose leg 2 sits detached on an
        interior/left vertex (bare right end)."""
        return self.profile == PROFILE_TWO and any(
            v.extra is not None for v in self.vertices
        )

    def extra_index(self) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if v.extra is not None:
                return i
        return None

    def genus(self) -> int:
        return sum(v.genus for v in self.vertices)

    def degree(self) -> int:
        if self.is_unit():
            return -1
        return sum(v.psi_total() for v in self.vertices) + len(self.vertices) - 1

    def leg_vertex(self, leg: int) -> int:
        """Index of the vertex carrying the given leg (1, 2 or 3)."""
        if self.is_unit():
            raise ValueError("unit bamboo carries no legs")
        if leg == 1:
            if self.profile == PROFILE_ONE:
                return len(self.vertices) - 1
            return 0
        if leg == 2:
            if self.profile == PROFILE_THREE or (
                self.profile == PROFILE_TWO and not self.is_detached_two()
            ):
                return len(self.vertices) - 1
            if self.is_detached_two():
                return self.extra_index()  # type: ignore[return-value]
            raise ValueError(f"no leg 2 in profile {self.profile}")
        if leg == 3:
            if self.profile != PROFILE_THREE:
                raise ValueError(f"no leg 3 in profile {self.profile}")
            return self.extra_index()  # type: ignore[return-value]
        raise ValueError(f"bad leg {leg}")

    def leg_psi(self, leg: int) -> int:
        i = self.leg_vertex(leg)
        v = self.vertices[i]
        if leg == 1:
            return v.right if self.profile == PROFILE_ONE else v.left
        if leg == 2:
            if self.is_detached_two():
                return v.extra or 0
            return v.right
        return v.extra or 0

    def replace_vertex(self, i: int, v: Vertex) -> "Bamboo":
        vs = list(self.vertices)
        vs[i] = v
        return Bamboo(tuple(vs), self.profile)

    def key(self) -> tuple:
        return (
            _PROFILE_CODE[self.profile],
            len(self.vertices),
            tuple(v.key() for v in self.vertices),
        )


UNIT_BAMBOO = Bamboo((), PROFILE_UNIT)


@dataclass(frozen=True)
class OmegaMarker:
    """Symbolic divisor multiplier attached to one vertex.

    ``kind`` is ``"irr"`` (one-self-node divisor) or ``"sep"`` (split off an
    unmarked genus-``h`` component).  The marker is never expanded into
    strata; identities involving it are settled in the marked sector only.
    """

    kind: str
    h: int
    vertex: int

    def __post_init__(self) -> None:
        if self.kind not in (OMEGA_IRR, OMEGA_SEP):
            raise ValueError(f"bad omega marker kind {self.kind!r}")
        if self.kind == OMEGA_IRR and self.h != 0:
            raise ValueError("irr marker carries no genus parameter")
        if self.kind == OMEGA_SEP and self.h < 1:
            raise ValueError("sep marker needs h >= 1")
        if self.vertex < 0:
            raise ValueError("marker vertex index must be >= 0")

    def key(self) -> tuple:
        return (1 if self.kind == OMEGA_IRR else 2, self.h, self.vertex)


def marker_is_zero(kind: str, h: int, genus: int) -> bool:
    """True when the symbolic divisor multiplication is the zero class on a
    vertex of the given genus (irr on genus 0; sep(h) on genus < h)."""
    if kind == OMEGA_IRR:
        return genus < 1
    return genus < h


@dataclass(frozen=True)
class Term:
    """A bamboo with an optional omega marker: the basis element of formal sums."""

    bamboo: Bamboo
    omega: Optional[OmegaMarker] = None

    def __post_init__(self) -> None:
        if self.omega is not None:
            b = self.bamboo
            if b.profile != PROFILE_TWO or b.is_detached_two():
                raise ValueError("omega markers live on plain two-pointed bamboos")
            if self.omega.vertex >= len(b.vertices):
                raise ValueError("marker vertex index out of range")
            g_v = b.vertices[self.omega.vertex].genus
            if marker_is_zero(self.omega.kind, self.omega.h, g_v):
                raise ValueError("marker is the zero class on this vertex")

    def degree(self) -> int:
        d = self.bamboo.degree()
        if self.omega is not None:
            d += 1
        return d

    def genus(self) -> int:
        return self.bamboo.genus()

    def key(self) -> tuple:
        om = (0, 0, -1) if self.omega is None else self.omega.key()
        return self.bamboo.key() + (om,)


def canonical_key(term: Term) -> bytes:
    """Injective, total-ordered byte encoding of a term.

    Profile, vertex count, per-vertex data, then marker data, serialized in a
    fixed ascii format so that byte order equals tuple order.
    """
    return repr(term.key()).encode("ascii")


def _as_fraction(c: Coeff) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact, got {type(c).__name__}")


class FormalSum:
    """Finite map from terms to nonzero exact rationals.

    Zero coefficients are never stored, so equality of sums is equality of
    the underlying maps.  All operations return new sums; instances are
    treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict[Term, Fraction]] = None):
        self._terms = terms or {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls({})

    @classmethod
    def from_term(cls, term: Term, coeff: Coeff = 1) -> "FormalSum":
        c = _as_fraction(coeff)
        if c == 0:
            return cls.zero()
        return cls({term: c})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Term, Coeff]]) -> "FormalSum":
        acc: dict[Term, Fraction] = {}
        for term, coeff in pairs:
            c = acc.get(term, Fraction(0)) + _as_fraction(coeff)
            if c == 0:
                acc.pop(term, None)
            else:
                acc[term] = c
        return cls(acc)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "FormalSum") -> "FormalSum":
        acc = dict(self._terms)
        for term, coeff in other._terms.items():
            c = acc.get(term, Fraction(0)) + coeff
            if c == 0:
                acc.pop(term, None)
            else:
                acc[term] = c
        return FormalSum(acc)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scale(-1)

    def __neg__(self) -> "FormalSum":
        return self.scale(-1)

    def scale(self, c: Coeff) -> "FormalSum":
        f = _as_fraction(c)
        if f == 0:
            return FormalSum.zero()
        return FormalSum({t: coeff * f for t, coeff in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):  # pragma: no cover - sums are not meant to be dict keys
        raise TypeError("FormalSum is unhashable")

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, term: Term) -> Fraction:
        return self._terms.get(term, Fraction(0))

    def items(self) -> Iterator[tuple[Term, Fraction]]:
        """Iterate (term, coeff) sorted by canonical key: the only iteration
        order used anywhere, so downstream output is deterministic."""
        return iter(sorted(self._terms.items(), key=lambda kv: kv[0].key()))

    def terms(self) -> list[Term]:
        return [t for t, _ in self.items()]

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of the terms, None for the zero sum.

        Raises ValueError if the sum is not homogeneous.
        """
        deg: Optional[int] = None
        for term, _ in self._terms.items():
            d = term.degree()
            if deg is None:
                deg = d
            elif deg != d:
                raise ValueError(f"inhomogeneous sum: degrees {deg} and {d}")
        return deg

    def map_terms(self, fn: Callable[[Term], "FormalSum"]) -> "FormalSum":
        """Linear extension of a map on terms."""
        out = FormalSum.zero()
        for term, coeff in self.items():
            out = out + fn(term).scale(coeff)
        return out

    def __repr__(self) -> str:
        if self.is_zero():
            return "FormalSum(0)"
        bits = [f"{coeff}*{term.key()}" for term, coeff in self.items()]
        return "FormalSum(" + " + ".join(bits) + ")"

    # -- serialization ---------------------------------------------------------

    def to_obj(self) -> dict:
        entries = []
        for term, coeff in self.items():
            entries.append({"coeff": format_fraction(coeff), "term": term_to_obj(term)})
        obj: dict = {"terms": entries}
        deg = self.homogeneous_degree()
        if deg is not None:
            obj["degree"] = deg
        return obj

    def to_canonical_json(self) -> str:
        return canonical_json(self.to_obj())

    @classmethod
    def from_obj(cls, obj: dict) -> "FormalSum":
        pairs = []
        for entry in obj["terms"]:
            pairs.append((term_from_obj(entry["term"]), parse_fraction(entry["coeff"])))
        return cls.from_terms(pairs)


# -- reflection ---------------------------------------------------------------


def reflect_bamboo(b: Bamboo) -> Bamboo:
    if b.profile == PROFILE_TWO and b.is_detached_two():
        raise ValueError("cannot reflect a bamboo with a detached leg 2")
    if b.profile not in (PROFILE_TWO, PROFILE_THREE):
        raise ValueError(f"reflection is only defined on two/three-pointed bamboos, got {b.profile}")
    vs = tuple(
        Vertex(v.genus, v.right, v.left, v.extra) for v in reversed(b.vertices)
    )
    return Bamboo(vs, b.profile)


def reflect(s: FormalSum) -> FormalSum:
    """Relabel the first and second marked points: reverse each chain and swap
    the left/right psi powers vertex-wise.  Leg 3, when present, stays on its
    vertex.  Linear, degree-preserving, an involution."""

    def one(t: Term) -> FormalSum:
        if t.omega is not None:
            n = len(t.bamboo.vertices)
            marker = OmegaMarker(t.omega.kind, t.omega.h, n - 1 - t.omega.vertex)
            return FormalSum.from_term(Term(reflect_bamboo(t.bamboo), marker))
        return FormalSum.from_term(Term(reflect_bamboo(t.bamboo)))

    return s.map_terms(one)


# -- serialization helpers ------------------------------------------------------


def format_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def term_to_obj(term: Term) -> dict:
    b = term.bamboo
    obj: dict = {
        "profile": b.profile,
        "vertices": [
            [v.genus, v.left, v.right, v.extra if v.extra is not None else None]
            for v in b.vertices
        ],
    }
    if term.omega is not None:
        obj["omega"] = {
            "kind": term.omega.kind,
            "h": term.omega.h,
            "vertex": term.omega.vertex,
        }
    return obj


def term_from_obj(obj: dict) -> Term:
    vs = tuple(
        Vertex(g, l, r, e if e is not None else None) for g, l, r, e in obj["vertices"]
    )
    bamboo = Bamboo(vs, obj["profile"])
    omega = None
    if obj.get("omega") is not None:
        om = obj["omega"]
        omega = OmegaMarker(om["kind"], om["h"], om["vertex"])
    return Term(bamboo, omega)


def canonical_json(obj) -> str:
    """Key-sorted, whitespace-free JSON; bit-exact across platforms."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(sum_or_json) -> str:
    """SHA-256 of the canonical serialization (hex)."""
    if isinstance(sum_or_json, FormalSum):
        payload = sum_or_json.to_canonical_json()
    else:
        payload = sum_or_json
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


# -- convenience constructors ----------------------------------------------------


def single_vertex(
    genus: int,
    left: int = 0,
    right: int = 0,
    extra: Optional[int] = None,
    profile: str = PROFILE_TWO,
) -> FormalSum:
    """One-vertex class with the given psi powers, coefficient 1."""
    return FormalSum.from_term(Term(Bamboo((Vertex(genus, left, right, extra),), profile)))


def chain(vertex_data: Sequence[tuple], profile: str = PROFILE_TWO) -> FormalSum:
    """Chain class from (genus, left, right[, extra]) tuples, coefficient 1."""
    vs = []
    for item in vertex_data:
        if len(item) == 3:
            g, l, r = item
            vs.append(Vertex(g, l, r))
        else:
            g, l, r, e = item
            vs.append(Vertex(g, l, r, e))
    return FormalSum.from_term(Term(Bamboo(tuple(vs), profile)))


SENTINEL_TERM = Term(UNIT_BAMBOO)


def sentinel() -> FormalSum:
    """The identity element for gluing (the empty chain), of formal degree -1."""
    return FormalSum.from_term(SENTINEL_TERM)
