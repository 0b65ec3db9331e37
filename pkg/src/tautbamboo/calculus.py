"""Geometric operations on formal sums of decorated chains.

Everything here is linear over exact rationals and vertex-local:

* ``diamond``            -- glue two chains at a new node (associative).
* ``mul_psi``            -- multiply by a psi class at a leg.
* ``pushforward_forget`` -- forget a leg; string rule at psi power 0,
  dilaton rule at psi power 1, error (kappa) beyond.
* ``pullback_forget``    -- pull back along a forgetful map; the new leg is
  distributed over the vertices, with bubble corrections at every
  psi-positive attachment.
* ``mul_sep_divisor``    -- multiply by the two-sided boundary divisor with
  the legs on different components (excess intersection).
* ``mul_delta013``       -- multiply a three-pointed class by the divisor
  bubbling legs 1 and 3 off together.
* ``omega_apply``        -- distribute a symbolic divisor marker over the
  vertices (Leibniz rule); markers are never expanded.
"""

from __future__ import annotations

from .core import (
    Bamboo,
    FormalSum,
    KappaUnsupported,
    OmegaMarker,
    PROFILE_ONE,
    PROFILE_THREE,
    PROFILE_TWO,
    Term,
    Vertex,
    marker_is_zero,
    single_vertex,
)

LEG1 = 1
LEG2 = 2
LEG3 = 3


def unit_03() -> FormalSum:
    """The fundamental class of the three-pointed rational vertex, used as a
    right gluing factor to append a bubble carrying legs 2 and 3."""
    return single_vertex(0, 0, 0, extra=0, profile=PROFILE_THREE)


# -- gluing ---------------------------------------------------------------------


def _diamond_terms(a: Term, b: Term) -> Term:
    ba, bb = a.bamboo, b.bamboo
    if ba.is_unit():
        return b
    if bb.is_unit():
        return a
    if ba.profile not in (PROFILE_TWO, PROFILE_THREE) or (
        ba.profile == PROFILE_TWO and ba.is_detached_two()
    ):
        raise ValueError(f"left gluing factor must end in leg 2, got {ba.profile}")
    if bb.profile == PROFILE_ONE:
        raise ValueError("right gluing factor must start with leg 1")
    if ba.profile == PROFILE_THREE and bb.profile != PROFILE_TWO:
        raise ValueError("at most one gluing factor may carry leg 3")
    if ba.profile == PROFILE_THREE and bb.is_detached_two():
        raise ValueError("cannot glue a leg-3 factor onto a detached-leg chain")
    profile = PROFILE_THREE if PROFILE_THREE in (ba.profile, bb.profile) else PROFILE_TWO
    glued = Bamboo(ba.vertices + bb.vertices, profile)
    if a.omega is not None and b.omega is not None:
        raise ValueError("cannot glue two marked factors")
    omega = a.omega
    if b.omega is not None:
        omega = OmegaMarker(b.omega.kind, b.omega.h, b.omega.vertex + len(ba.vertices))
    return Term(glued, omega)


def diamond(a: FormalSum, b: FormalSum) -> FormalSum:
    """Glue the second leg of each term of ``a`` to the first leg of each term
    of ``b``; the psi powers at those legs become the node-branch powers at
    the new edge.  Bilinear; degree adds plus one."""
    out = []
    for ta, ca in a.items():
        for tb, cb in b.items():
            out.append((_diamond_terms(ta, tb), ca * cb))
    return FormalSum.from_terms(out)


# -- psi multiplication -----------------------------------------------------------


def mul_psi(s: FormalSum, leg: int, power: int = 1) -> FormalSum:
    """Multiply by the psi class at the given leg, raised to ``power``.

    Terms whose carrying vertex has genus 0 are dropped (psi vanishes on the
    three-pointed rational vertex)."""
    if power < 1:
        raise ValueError("psi power must be positive")

    def one(t: Term) -> FormalSum:
        b = t.bamboo
        i = b.leg_vertex(leg)
        v = b.vertices[i]
        if v.genus == 0:
            return FormalSum.zero()
        if leg == LEG1:
            nv = (
                Vertex(v.genus, v.left, v.right + power, v.extra)
                if b.profile == PROFILE_ONE
                else Vertex(v.genus, v.left + power, v.right, v.extra)
            )
        elif leg == LEG2:
            if b.is_detached_two():
                nv = Vertex(v.genus, v.left, v.right, (v.extra or 0) + power)
            else:
                nv = Vertex(v.genus, v.left, v.right + power, v.extra)
        else:
            nv = Vertex(v.genus, v.left, v.right, (v.extra or 0) + power)
        return FormalSum.from_term(Term(b.replace_vertex(i, nv), t.omega))

    return s.map_terms(one)


# -- forgetful push-forward ---------------------------------------------------------


def _reorient_one(vertices: tuple[Vertex, ...]) -> Bamboo:
    """Store a one-pointed chain with its leg at the right end."""
    vs = tuple(Vertex(v.genus, v.right, v.left) for v in reversed(vertices))
    return Bamboo(vs, PROFILE_ONE)


def _forget_leg2(t: Term) -> FormalSum:
    b = t.bamboo
    if b.profile != PROFILE_TWO or b.is_detached_two():
        raise ValueError("leg-2 push-forward needs a plain two-pointed chain")
    last = len(b.vertices) - 1
    v = b.vertices[last]
    e = v.right
    if e >= 2:
        raise KappaUnsupported(f"psi power {e} at the forgotten leg")
    if e == 1:
        factor = 2 * v.genus - 2 + (b.attachment_count(last) - 1)
        vs = b.vertices[:last] + (Vertex(v.genus, v.left, 0),)
        return FormalSum.from_term(Term(_reorient_one(vs)), factor)
    out = []
    if v.left >= 1:
        vs = b.vertices[:last] + (Vertex(v.genus, v.left - 1, 0),)
        out.append((Term(_reorient_one(vs)), 1))
    return FormalSum.from_terms(out)


def _forget_leg3(t: Term) -> FormalSum:
    b = t.bamboo
    if b.profile != PROFILE_THREE:
        raise ValueError("leg-3 push-forward needs a three-pointed chain")
    i = b.extra_index()
    assert i is not None
    v = b.vertices[i]
    e = v.extra or 0
    if e >= 2:
        raise KappaUnsupported(f"psi power {e} at the forgotten leg")
    if e == 1:
        factor = 2 * v.genus - 2 + (b.attachment_count(i) - 1)
        vs = b.vertices[:i] + (Vertex(v.genus, v.left, v.right),) + b.vertices[i + 1 :]
        return FormalSum.from_term(Term(Bamboo(vs, PROFILE_TWO)), factor)
    if v.genus == 0:
        # Unstable after forgetting: contract the bubble.  Dropping the vertex
        # reconnects the chain; the neighbours keep their own psi powers, and
        # an end bubble hands its remaining leg to the neighbour.
        if len(b.vertices) == 1:
            raise ValueError("cannot contract the only vertex")
        vs = b.vertices[:i] + b.vertices[i + 1 :]
        return FormalSum.from_term(Term(Bamboo(vs, PROFILE_TWO)))
    out = []
    if v.left >= 1:
        vs = b.vertices[:i] + (Vertex(v.genus, v.left - 1, v.right),) + b.vertices[i + 1 :]
        out.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
    if v.right >= 1:
        vs = b.vertices[:i] + (Vertex(v.genus, v.left, v.right - 1),) + b.vertices[i + 1 :]
        out.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
    return FormalSum.from_terms(out)


def pushforward_forget(s: FormalSum, leg: int) -> FormalSum:
    """Push forward along the map forgetting the given leg.

    Vertex-local rules at the carrying vertex, by the psi power there:
    0 with the vertex staying stable -> string rule (decrement each other
    attachment); 0 with a genus-0 vertex going unstable -> contraction;
    1 -> dilaton rule (factor 2g - 2 + remaining attachments); >= 2 raises
    ``KappaUnsupported``.
    """
    if leg == LEG2:
        return s.map_terms(_forget_leg2)
    if leg == LEG3:
        return s.map_terms(_forget_leg3)
    raise ValueError("only legs 2 and 3 can be forgotten")


def _relabel3_to_2(vertices: tuple[Vertex, ...]) -> Term:
    """After leg 2 is gone, turn the remaining detached leg into leg 2."""
    last = len(vertices) - 1
    extras = [i for i, v in enumerate(vertices) if v.extra is not None]
    assert len(extras) == 1
    i = extras[0]
    if i == last:
        v = vertices[last]
        vs = vertices[:last] + (Vertex(v.genus, v.left, v.extra or 0),)
        return Term(Bamboo(vs, PROFILE_TWO))
    return Term(Bamboo(vertices, PROFILE_TWO))


def _forget2_relabel(t: Term) -> FormalSum:
    b = t.bamboo
    if b.profile != PROFILE_THREE:
        raise ValueError("the relabelled push-forward needs three-pointed terms")
    last = len(b.vertices) - 1
    v = b.vertices[last]
    e = v.right
    i3 = b.extra_index()
    if e >= 2:
        raise KappaUnsupported(f"psi power {e} at the forgotten leg")
    if e == 1:
        factor = 2 * v.genus - 2 + (b.attachment_count(last) - 1)
        vs = b.vertices[:last] + (Vertex(v.genus, v.left, 0, v.extra),)
        return FormalSum.from_term(_relabel3_to_2(vs), factor)
    if v.genus == 0:
        # The end bubble carried legs 2 and 3; contracting it hands leg 3 to
        # the neighbour at the old node, keeping the node's psi power.
        assert i3 == last and len(b.vertices) >= 2
        w = b.vertices[last - 1]
        vs = b.vertices[: last - 1] + (Vertex(w.genus, w.left, 0, w.right),)
        return FormalSum.from_term(_relabel3_to_2(vs))
    out = []
    if v.left >= 1:
        vs = b.vertices[:last] + (Vertex(v.genus, v.left - 1, 0, v.extra),)
        out.append((_relabel3_to_2(vs), 1))
    if i3 == last and (v.extra or 0) >= 1:
        vs = b.vertices[:last] + (Vertex(v.genus, v.left, 0, (v.extra or 0) - 1),)
        out.append((_relabel3_to_2(vs), 1))
    return FormalSum.from_terms(out)


def pushforward_relabel2(s: FormalSum) -> FormalSum:
    """Forget leg 2 of a three-pointed sum and rename leg 3 to leg 2.

    This is the push-forward along the forgetful map whose surviving point
    inherits the second slot; applied to relation expansions it transports
    three-pointed relations to (possibly detached-leg) two-pointed ones.
    """
    return s.map_terms(_forget2_relabel)


# -- forgetful pull-back -------------------------------------------------------------


def _splice(vertices: tuple[Vertex, ...], at: int, bubble: Vertex) -> tuple[Vertex, ...]:
    return vertices[:at] + (bubble,) + vertices[at:]


def _pullback_two(t: Term) -> FormalSum:
    """M(g,2) -> M(g,3): distribute leg 3, minus a bubble correction at every
    psi-positive attachment (the power drops by one on the old vertex)."""
    b = t.bamboo
    if b.profile != PROFILE_TWO or b.is_detached_two():
        raise ValueError("two-pointed pull-back needs plain two-pointed terms")
    if any(v.genus == 0 for v in b.vertices):
        raise ValueError("pull-back of chains with rational vertices is not supported")
    out: list[tuple[Term, int]] = []
    bub = Vertex(0, 0, 0, 0)
    for i, v in enumerate(b.vertices):
        placed = b.vertices[:i] + (Vertex(v.genus, v.left, v.right, 0),) + b.vertices[i + 1 :]
        out.append((Term(Bamboo(placed, PROFILE_THREE)), 1))
        if v.left >= 1:
            vs = _splice(b.replace_vertex(i, Vertex(v.genus, v.left - 1, v.right)).vertices, i, bub)
            out.append((Term(Bamboo(vs, PROFILE_THREE)), -1))
        if v.right >= 1:
            vs = _splice(b.replace_vertex(i, Vertex(v.genus, v.left, v.right - 1)).vertices, i + 1, bub)
            out.append((Term(Bamboo(vs, PROFILE_THREE)), -1))
    return FormalSum.from_terms(out)


def _pullback_one(t: Term) -> FormalSum:
    """M(g,1) -> M(g,2): distribute leg 2, minus bubble corrections.  The
    result is stored with leg 1 at the left end; leg 2 may come out detached."""
    b = t.bamboo
    if b.profile != PROFILE_ONE:
        raise ValueError("one-pointed pull-back needs one-pointed terms")
    if any(v.genus == 0 for v in b.vertices):
        raise ValueError("pull-back of chains with rational vertices is not supported")
    # Working orientation: leg 1 at the left end.
    w = tuple(Vertex(v.genus, v.right, v.left) for v in reversed(b.vertices))
    n = len(w)
    out: list[tuple[Term, int]] = []
    bub = Vertex(0, 0, 0, 0)
    for j, v in enumerate(w):
        if j == n - 1:
            placed = w[: n - 1] + (Vertex(v.genus, v.left, 0),)
        else:
            placed = w[:j] + (Vertex(v.genus, v.left, v.right, 0),) + w[j + 1 :]
        out.append((Term(Bamboo(placed, PROFILE_TWO)), 1))
        if v.left >= 1:
            vs = _splice(w[:j] + (Vertex(v.genus, v.left - 1, v.right),) + w[j + 1 :], j, bub)
            out.append((Term(Bamboo(vs, PROFILE_TWO)), -1))
        if v.right >= 1:
            vs = _splice(w[:j] + (Vertex(v.genus, v.left, v.right - 1),) + w[j + 1 :], j + 1, bub)
            out.append((Term(Bamboo(vs, PROFILE_TWO)), -1))
    return FormalSum.from_terms(out)


def pullback_forget(s: FormalSum) -> FormalSum:
    """Pull back along the forgetful map, adding leg 3 to two-pointed terms or
    leg 2 to one-pointed terms (decided per term by the profile)."""

    def one(t: Term) -> FormalSum:
        if t.bamboo.profile == PROFILE_ONE:
            return _pullback_one(t)
        return _pullback_two(t)

    return s.map_terms(one)


# -- boundary divisor products ----------------------------------------------------------


def mul_sep_divisor(s: FormalSum, g1: int) -> FormalSum:
    """Multiply by the boundary divisor whose generic curve has two components
    with the legs on different sides and genus ``g1`` on the leg-1 side.

    Per chain with genera (f_1, .., f_m): a vertex containing the splitting
    point splits in two (transverse case); a node sitting exactly at the
    splitting point contributes the two excess terms with a psi power raised
    on either branch, with a minus sign.
    """
    if g1 < 1:
        raise ValueError("g1 must be >= 1")

    def one(t: Term) -> FormalSum:
        b = t.bamboo
        if b.profile != PROFILE_TWO or b.is_detached_two() or t.omega is not None:
            raise ValueError("divisor product needs plain two-pointed terms")
        if any(v.genus == 0 for v in b.vertices):
            raise ValueError("divisor product of chains with rational vertices is not supported")
        total = b.genus()
        if not (1 <= g1 < total):
            raise ValueError(f"g1={g1} out of range for total genus {total}")
        out: list[tuple[Term, int]] = []
        prefix = 0
        for i, v in enumerate(b.vertices):
            fp = g1 - prefix
            if 1 <= fp <= v.genus - 1:
                vs = (
                    b.vertices[:i]
                    + (Vertex(fp, v.left, 0), Vertex(v.genus - fp, 0, v.right))
                    + b.vertices[i + 1 :]
                )
                out.append((Term(Bamboo(vs, PROFILE_TWO)), 1))
            prefix += v.genus
            if prefix == g1 and i < len(b.vertices) - 1:
                out.append((Term(b.replace_vertex(i, Vertex(v.genus, v.left, v.right + 1))), -1))
                w = b.vertices[i + 1]
                out.append(
                    (Term(b.replace_vertex(i + 1, Vertex(w.genus, w.left + 1, w.right))), -1)
                )
        assert prefix > g1, "splitting genus must be smaller than the total"
        return FormalSum.from_terms(out)

    return s.map_terms(one)


def mul_delta013(s: FormalSum) -> FormalSum:
    """Multiply a three-pointed class by the divisor with legs 1 and 3 alone
    on a rational bubble.

    Zero unless legs 1 and 3 sit on the same vertex; zero as well when either
    leg carries a positive psi power there.  If the vertex is already that
    bubble, the excess term is minus a psi power on the neighbouring node
    branch.
    """

    def one(t: Term) -> FormalSum:
        b = t.bamboo
        if b.profile != PROFILE_THREE:
            raise ValueError("delta_{0,{1,3}} product needs three-pointed terms")
        i3 = b.extra_index()
        if i3 != b.leg_vertex(LEG1):
            return FormalSum.zero()
        v = b.vertices[0]
        if v.genus == 0:
            w = b.vertices[1]
            nb = b.replace_vertex(1, Vertex(w.genus, w.left + 1, w.right, w.extra))
            return FormalSum.from_term(Term(nb), -1)
        if v.left > 0 or (v.extra or 0) > 0:
            return FormalSum.zero()
        vs = (Vertex(0, 0, 0, 0), Vertex(v.genus, 0, v.right)) + b.vertices[1:]
        return FormalSum.from_term(Term(Bamboo(vs, PROFILE_THREE)))

    return s.map_terms(one)


def delta012_kills(s: FormalSum) -> bool:
    """True when the product with the divisor bubbling legs 1 and 2 off
    together vanishes term by term.

    This is the relabelled (legs 2 and 3 swapped) form of the leg-1,3 bubbling
    product against a pull-back whose new point sits in the second slot.  The
    product vanishes when the legs sit on different vertices or either leg
    carries a positive psi power; the shapes with a nonzero product are not
    representable in this term algebra, so this is a predicate, not a product.
    """
    for term, _ in s.items():
        b = term.bamboo
        if b.profile != PROFILE_THREE:
            raise ValueError("the leg-1,2 bubbling check needs three-pointed terms")
        if len(b.vertices) == 1:
            v = b.vertices[0]
            if v.genus == 0:
                continue  # rational three-pointed vertex: degree-1 part is trivial
            if v.left > 0 or v.right > 0:
                continue
            return False
        if b.leg_vertex(LEG1) != b.leg_vertex(LEG2):
            continue
        return False
    return True


# -- symbolic omega calculus ---------------------------------------------------------


def omega_apply(s: FormalSum, kind: str, h: int = 0) -> FormalSum:
    """Distribute a symbolic divisor marker over the vertices of each chain
    (Leibniz rule).  Placements where the marker is the zero class are
    dropped."""

    def one(t: Term) -> FormalSum:
        if t.omega is not None:
            raise ValueError("term is already marked")
        b = t.bamboo
        out = []
        for i, v in enumerate(b.vertices):
            if marker_is_zero(kind, h, v.genus):
                continue
            out.append((Term(b, OmegaMarker(kind, h, i)), 1))
        return FormalSum.from_terms(out)

    return s.map_terms(one)


# -- tail gluing (for relation instances over detached-leg chains) -------------------


def glue_tail(s: FormalSum, tail: Bamboo) -> FormalSum:
    """Glue a one-pointed tail onto leg 3 of each term.

    Leg 3 must sit on the last vertex, whose leg 2 then comes out detached;
    the result is a generalized two-pointed sum with a bare right end."""
    if tail.profile != PROFILE_ONE:
        raise ValueError("tail must be one-pointed")
    rev_tail = tuple(Vertex(v.genus, v.right, v.left) for v in reversed(tail.vertices))

    def one(t: Term) -> FormalSum:
        b = t.bamboo
        if b.profile != PROFILE_THREE:
            raise ValueError("tail gluing needs three-pointed terms")
        i = b.extra_index()
        if i != len(b.vertices) - 1:
            raise ValueError("tail gluing needs leg 3 on the last vertex")
        v = b.vertices[i]
        head = Vertex(v.genus, v.left, v.extra or 0, v.right)
        vs = b.vertices[:i] + (head,) + rev_tail
        return FormalSum.from_term(Term(Bamboo(vs, PROFILE_TWO)))

    return s.map_terms(one)
