import pytest

from tautbamboo import (
    EnumBudget,
    RelationInstance,
    default_budget,
    enumerate_instances,
    expand,
    make_c,
    single_vertex,
)
from tautbamboo.core import chain
from tautbamboo.relations import (
    FAMILY_COR1A,
    FAMILY_COR1B,
    FAMILY_COR2,
    FAMILY_MDIM,
    FAMILY_OMEGA_IRR,
    marked_psi_bound,
    omega_schema_valid,
)


def test_cor2_bare_genus1():
    inst = RelationInstance(FAMILY_COR2, 1, 0)
    got = expand(inst)
    assert got == single_vertex(1, 0, 2) - single_vertex(1, 2, 0)


def test_cor2_bare_genus2_term_count():
    got = expand(RelationInstance(FAMILY_COR2, 2, 0))
    # two pure-psi terms plus the four node-psi splits
    assert len(got) == 6
    assert got.coeff(next(iter(single_vertex(2, 0, 4).terms()))) == 1
    assert got.homogeneous_degree() == 4


def test_cor1_bare_genus1():
    a = expand(RelationInstance(FAMILY_COR1A, 1, 0))
    assert a == chain([(1, 0, 3, 0)], "three").scale(-1) + chain(
        [(0, 0, 0, 0), (1, 2, 0)], "three"
    )
    b = expand(RelationInstance(FAMILY_COR1B, 1, 0))
    assert b == chain([(1, 3, 0, 0)], "three").scale(-1) + chain(
        [(1, 0, 2), (0, 0, 0, 0)], "three"
    )


def test_expansions_homogeneous():
    budget = default_budget(2)
    for sector in [("two",), ("three",), ("marked", "irr", 0)]:
        for deg in (4, 5):
            for inst in enumerate_instances(2, deg, sector, budget):
                s = expand(inst)
                if not s.is_zero():
                    assert s.homogeneous_degree() == deg, inst


def test_context_linearity():
    pre = ((1, 0, 1, -1),)
    bare = expand(RelationInstance(FAMILY_COR2, 1, 0))
    inst = expand(RelationInstance(FAMILY_COR2, 1, 0, 0, pre, ()))
    from tautbamboo import diamond

    assert inst == diamond(make_c([1], [1]), bare)


def test_enumerate_genus1_degree2():
    got = enumerate_instances(1, 2, ("two",), default_budget(1))
    assert len(got) == 1
    assert got[0].family == FAMILY_COR2 and got[0].g == 1 and got[0].r == 0
    assert got[0].prefix == () and got[0].suffix == ()


def test_enumeration_count_regression_g2():
    # pinned once from a reference enumeration run
    got = enumerate_instances(2, 4, ("two",), default_budget(2))
    assert len(got) == 11


def test_enumeration_deterministic_and_restartable():
    a = enumerate_instances(2, 5, ("three",), default_budget(2))
    b = enumerate_instances(2, 5, ("three",), default_budget(2))
    assert [i.ident() for i in a] == [i.ident() for i in b]
    assert len({i.ident() for i in a}) == len(a)  # duplicate-free


def test_omega_schema_ranges():
    assert omega_schema_valid("irr", 1, 2, 0)
    assert not omega_schema_valid("irr", 1, 1, 0)
    assert omega_schema_valid("sep", 2, 3, 1)
    assert not omega_schema_valid("sep", 2, 2, 1)
    with pytest.raises(ValueError):
        expand(RelationInstance(FAMILY_OMEGA_IRR, 1, 1))  # N below range


def test_omega_schema_genus1():
    got = expand(RelationInstance(FAMILY_OMEGA_IRR, 1, 2))
    assert len(got) == 1  # single marked term, no splits at genus one


def test_mdim_bounds():
    assert marked_psi_bound("irr", 0, 1) == 1
    assert marked_psi_bound("irr", 0, 2) == 4
    assert marked_psi_bound("sep", 1, 1) == 0
    with pytest.raises(ValueError):
        expand(RelationInstance(FAMILY_MDIM, 1, 0, 0, (), (), (), None, (0, 1)))
    got = expand(RelationInstance(FAMILY_MDIM, 1, 0, 0, (), (), (), None, (0, 2)))
    assert len(got) == 1


def test_tail_glued_expansion_is_detached():
    inst = RelationInstance(FAMILY_COR1B, 1, 0, 0, (), (), ((1, 0, 0),))
    got = expand(inst)
    assert not got.is_zero()
    for term, _ in got.items():
        assert term.bamboo.is_detached_two()


def test_instance_serialization_roundtrip():
    inst = RelationInstance(
        FAMILY_COR2, 2, 1, 0, ((1, 0, 1, -1),), ((1, 2, 0, -1),), (), None, (0, 0), False, (1, 0)
    )
    assert RelationInstance.from_obj(inst.to_obj()) == inst
