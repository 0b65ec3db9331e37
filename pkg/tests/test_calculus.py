import random

import pytest

from tautbamboo import (
    FormalSum,
    KappaUnsupported,
    diamond,
    glue_tail,
    make_B,
    make_B_onepoint,
    make_c,
    mul_delta013,
    mul_psi,
    mul_sep_divisor,
    omega_apply,
    pullback_forget,
    pushforward_forget,
    reflect,
    sentinel,
    single_vertex,
    unit_03,
)
from tautbamboo.calculus import delta012_kills, pushforward_relabel2
from tautbamboo.core import Bamboo, Term, Vertex, chain


def test_diamond_definition():
    got = diamond(single_vertex(1, 0, 1), single_vertex(1, 0, 2))
    assert got == make_c([1, 1], [1, 2])
    assert got.homogeneous_degree() == 4


def test_diamond_sentinel():
    x = make_c([1, 1], [0, 3])
    assert diamond(sentinel(), x) == x
    assert diamond(x, sentinel()) == x


def test_diamond_associative_random():
    rng = random.Random(5)
    for _ in range(60):
        parts = [
            single_vertex(rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 2))
            for _ in range(3)
        ]
        a, b, c = parts
        assert diamond(diamond(a, b), c) == diamond(a, diamond(b, c))


def test_diamond_rejects_two_leg3():
    a = chain([(1, 0, 0, 0)], "three")
    with pytest.raises(ValueError):
        diamond(a, a)


def test_mul_psi():
    assert mul_psi(single_vertex(1, 0, 2), 1, 1) == single_vertex(1, 1, 2)
    assert mul_psi(single_vertex(1, 0, 2), 2, 3) == single_vertex(1, 0, 5)
    s = chain([(1, 0, 1), (2, 0, 0)])
    assert mul_psi(s, 2, 1) == chain([(1, 0, 1), (2, 0, 1)])
    assert mul_psi(s, 2, 1).homogeneous_degree() == s.homogeneous_degree() + 1


def test_mul_psi_kills_rational_carrier():
    # leg 3 on an interior bubble
    e_like = chain([(1, 0, 0), (0, 0, 0, 0), (1, 0, 2)], "three")
    assert mul_psi(e_like, 3, 1).is_zero()


def test_mul_psi_commutes_with_diamond_away_from_node():
    a = single_vertex(1, 1, 0)
    b = single_vertex(2, 0, 2)
    assert mul_psi(diamond(a, b), 1, 1) == diamond(mul_psi(a, 1, 1), b)
    assert mul_psi(diamond(a, b), 2, 1) == diamond(a, mul_psi(b, 2, 1))


def test_pushforward_string_rule():
    assert pushforward_forget(single_vertex(1, 2, 0), 2) == FormalSum.from_term(
        Term(Bamboo((Vertex(1, 0, 1),), "one"))
    )
    assert pushforward_forget(single_vertex(2, 0, 0), 2).is_zero()


def test_pushforward_dilaton_rule():
    # psi power one at the forgotten leg: multiply by 2g - 2 + 1
    got = pushforward_forget(single_vertex(2, 3, 1), 2)
    assert got == FormalSum.from_term(Term(Bamboo((Vertex(2, 0, 3),), "one")), 3)


def test_pushforward_kappa_unsupported():
    with pytest.raises(KappaUnsupported):
        pushforward_forget(single_vertex(1, 0, 2), 2)


def test_pushforward_reflected_B_is_one_point():
    for g in range(1, 7):
        assert pushforward_forget(reflect(make_B(g)), 2) == make_B_onepoint(g)


def test_pullback_single_vertex_formula():
    got = pullback_forget(single_vertex(1, 2, 0))
    expected = chain([(1, 2, 0, 0)], "three") - chain([(0, 0, 0, 0), (1, 1, 0)], "three")
    assert got == expected


def test_pullback_both_sides_corrected():
    got = pullback_forget(single_vertex(1, 1, 1))
    expected = (
        chain([(1, 1, 1, 0)], "three")
        - chain([(0, 0, 0, 0), (1, 0, 1)], "three")
        - chain([(1, 1, 0), (0, 0, 0, 0)], "three")
    )
    assert got == expected


def test_push_pull_is_zero():
    for g in (1, 2, 3):
        assert pushforward_forget(pullback_forget(reflect(make_B(g))), 3).is_zero()


def test_dilaton_anchor():
    # forgetting a psi-one extra leg scales by twice the genus, vertex by vertex
    for g in (1, 2, 3):
        for x in (make_B(g), reflect(make_B(g))):
            got = pushforward_forget(mul_psi(pullback_forget(x), 3, 1), 3)
            assert got == x.scale(2 * g)


def test_mul_sep_divisor_examples():
    assert mul_sep_divisor(single_vertex(2, 0, 4), 1) == make_c([1, 1], [0, 4])
    got = mul_sep_divisor(make_c([1, 1], [0, 3]), 1)
    expected = make_c([1, 1], [1, 3]).scale(-1) + chain([(1, 0, 0), (1, 1, 3)]).scale(-1)
    assert got == expected
    for term, _ in mul_sep_divisor(make_B(3), 1).items():
        assert term.degree() == 7


def test_mul_sep_divisor_range_errors():
    with pytest.raises(ValueError):
        mul_sep_divisor(single_vertex(2, 0, 4), 2)
    with pytest.raises(ValueError):
        mul_sep_divisor(single_vertex(2, 0, 4), 0)


def test_delta013_vanishing_cases():
    # positive psi at leg 1 on the joint carrier
    assert mul_delta013(chain([(1, 2, 0, 0)], "three")).is_zero()
    # leg 3 away from leg 1
    assert mul_delta013(chain([(1, 0, 0), (1, 0, 2, 0)], "three")).is_zero()


def test_delta013_bubbles_off():
    got = mul_delta013(chain([(1, 0, 2, 0)], "three"))
    assert got == chain([(0, 0, 0, 0), (1, 0, 2)], "three")


def test_delta013_excess():
    s = chain([(0, 0, 0, 0), (1, 0, 2)], "three")
    assert mul_delta013(s) == chain([(0, 0, 0, 0), (1, 1, 2)], "three").scale(-1)


def test_delta012_kills_pullbacks():
    for g in (1, 2, 3, 4):
        assert delta012_kills(pullback_forget(make_B(g)))
        assert delta012_kills(pullback_forget(reflect(make_B(g))))
    assert not delta012_kills(chain([(1, 0, 0, 0)], "three"))


def test_omega_leibniz():
    a = single_vertex(1, 0, 1)
    b = single_vertex(2, 0, 3)
    lhs = omega_apply(diamond(a, b), "irr")
    rhs = diamond(omega_apply(a, "irr"), b) + diamond(a, omega_apply(b, "irr"))
    assert lhs == rhs


def test_omega_single_vertex():
    got = omega_apply(single_vertex(2, 0, 4), "irr")
    assert len(got) == 1
    ((term, coeff),) = list(got.items())
    assert coeff == 1 and term.omega is not None and term.omega.kind == "irr"


def test_omega_sep_drops_low_genus():
    assert omega_apply(make_c([1, 1], [0, 3]), "sep", 2).is_zero()
    assert len(omega_apply(make_c([1, 2], [0, 3]), "sep", 2)) == 1


def test_glue_tail():
    three = chain([(1, 3, 0, 0)], "three")
    tail = Bamboo((Vertex(1, 0, 0),), "one")
    got = glue_tail(three, tail)
    assert got == chain([(1, 3, 0, 0), (1, 0, 0)], "two")
    (tm, _), = list(got.items())
    assert tm.bamboo.is_detached_two()


def test_pushforward_relabel_bubble_contraction():
    for g in (1, 2, 3):
        assert pushforward_relabel2(diamond(make_B(g), unit_03())) == make_B(g)


def test_pushforward_relabel_kappa():
    with pytest.raises(KappaUnsupported):
        pushforward_relabel2(chain([(1, 0, 2, 0)], "three"))
