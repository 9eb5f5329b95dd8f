"""Grading groups: canonical forms, Smith normal form, epimorphism checks."""

import pytest

from gradedmod.abelian import (GroupEpi, GroupError, NotSurjective,
                               NotWellDefined, kernel_elements,
                               kernel_is_finite, make_epi, make_group,
                               smith_normal_form)


def test_group_canonical_arithmetic():
    g = make_group([4, 0])
    assert g.canon((5, -3)) == (1, -3)
    assert g.add((3, 2), (2, -2)) == (1, 0)
    assert g.neg((1, 5)) == (3, -5)
    assert g.sub((0, 0), (1, 1)) == (3, -1)
    assert g.zero() == (0, 0)
    assert not g.is_finite and g.rank == 1


def test_group_enumeration_and_cardinality():
    g = make_group([2, 3])
    elems = sorted(g.elements())
    assert len(elems) == 6 == g.cardinality()
    assert elems[0] == (0, 0) and elems[-1] == (1, 2)
    with pytest.raises(GroupError):
        list(make_group([0]).elements())


def test_invalid_moduli():
    with pytest.raises(GroupError):
        make_group([1])
    with pytest.raises(GroupError):
        make_group([-2])


def test_smith_normal_form_known_values():
    # diag(2,6) with a unit row mixed in
    assert smith_normal_form([[2, 0], [0, 6]]) == [2, 6]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[2, 4], [4, 8]]) == [2, 0]
    # [[4, 6], [6, 4]]: det = -20, gcd of entries 2 -> divisors 2, 10
    assert smith_normal_form([[4, 6], [6, 4]]) == [2, 10]


def test_epi_construction_and_apply():
    g = make_group([4])
    h = make_group([2])
    psi = make_epi(g, h, [[1]])
    assert psi.apply((3,)) == (1,)
    assert kernel_is_finite(psi)
    assert sorted(kernel_elements(psi)) == [(0,), (2,)]


def test_epi_not_well_defined():
    # a generator of order 2 cannot map to a generator of Z/4
    with pytest.raises(NotWellDefined):
        make_epi(make_group([2]), make_group([4]), [[1]])


def test_epi_not_surjective():
    with pytest.raises(NotSurjective):
        make_epi(make_group([4]), make_group([4]), [[2]])
    with pytest.raises(NotSurjective):
        make_epi(make_group([0]), make_group([0]), [[2]])


def test_epi_to_trivial_group():
    psi = make_epi(make_group([0]), make_group([]), [[]])
    assert psi.apply((7,)) == ()
    assert not kernel_is_finite(psi)


def test_identity_epi():
    g = make_group([2, 0])
    psi = GroupEpi.identity(g)
    assert psi.is_identity
    assert psi.apply((1, -4)) == (1, -4)
