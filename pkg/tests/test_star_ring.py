import itertools
from fractions import Fraction

import pytest

from app.models import (
    EnumerationCapExceeded,
    IncompatibleSubsets,
    InvalidRingSpec,
    SubsetKind,
    UnsupportedPath,
)
from app.services.star_ring import (
    classify,
    commutator,
    ring_make,
    ring_summary,
    star,
    subset_equal,
    subset_handle,
    subset_included,
)
from app.utils.formatting import parse_element, parse_ring_spec
from tests.conftest import make_ring


def test_sizes_and_enumeration_order(gf2, z6):
    assert gf2.size == 16
    elements = gf2.elements()
    assert len(elements) == 16 == len(set(elements))
    assert elements[0] == gf2.zero
    assert str(elements[1]) == '[[0, 0], [0, 1]]'
    assert [e.payload for e in z6.elements()] == list(range(6))


def test_infinite_ring_refuses_enumeration(q2):
    assert q2.size is None and not q2.is_finite
    with pytest.raises(UnsupportedPath):
        q2.elements()


def test_enumeration_cap():
    ring = make_ring('Mat:3:Zmod4', cap=1000)
    assert ring.size == 4 ** 9
    with pytest.raises(EnumerationCapExceeded) as excinfo:
        ring.elements()
    assert excinfo.value.size == 4 ** 9
    assert excinfo.value.cap == 1000
    with pytest.raises(EnumerationCapExceeded):
        make_ring('Mat:3:Zmod5').elements()


def test_non_prime_field_rejected():
    with pytest.raises(InvalidRingSpec, match='not prime'):
        ring_make(parse_ring_spec('Mat:2:GF4'))


def test_involution_laws_exhaustive(gf2):
    for a, b in itertools.product(gf2.elements(), repeat=2):
        assert a.star.star == a
        assert (a * b).star == b.star * a.star
        assert (a + b).star == a.star + b.star


def test_star_on_transpose_ring(q2, z6):
    a = parse_element(q2, '[[1,2],[3,4]]')
    assert star(a) == parse_element(q2, '[[1,3],[2,4]]')
    assert star(z6.element(5)) == z6.element(5)


def test_conjugate_transpose_over_gaussian_rationals():
    ring = make_ring('Mat:2:Qi')
    a = parse_element(ring, '[[1+i, 2], [0, 3*i]]')
    assert str(a.star) == '[[1-1*i, 0], [2, -3*i]]'
    assert a.star.star == a


def test_ring_flags():
    assert make_ring('Zmod:7').is_prime
    assert make_ring('Zmod:6').is_semiprime and not make_ring('Zmod:6').is_prime
    assert not make_ring('Zmod:12').is_semiprime
    assert make_ring('Mat:2:GF3').is_prime
    assert not make_ring('Mat:2:Zmod4').is_semiprime
    assert make_ring('Zmod:6').is_commutative
    assert not make_ring('Mat:2:Q').is_commutative


def test_ring_summary(gf3):
    assert ring_summary(gf3) == {
        'ring': 'Mat:2:GF3', 'size': 81, 'commutative': False, 'prime': True,
        'semiprime': True,
    }


def test_power_and_commutator(q2):
    n = parse_element(q2, '[[0,1],[0,0]]')
    assert (n ** 2).is_zero
    assert n ** 0 == q2.one
    with pytest.raises(ValueError):
        n ** -1
    assert commutator(n, q2.one).is_zero
    assert not commutator(n, n.star).is_zero


def test_classify(q2, z6):
    p = parse_element(q2, '[[1,0],[0,0]]')
    info = classify(p)
    assert info.projection and info.hermitian and info.idempotent
    assert not info.unit

    unit = classify(z6.element(5))
    assert unit.unit and unit.inverse == z6.element(5)
    assert unit.left_inverse == unit.right_inverse == z6.element(5)

    idem = classify(z6.element(3))
    assert idem.projection and not idem.left_invertible


def test_zmod_units(z6):
    assert [u.payload for u in z6.units] == [1, 5]
    assert [p.payload for p in z6.projections] == [0, 1, 3, 4]


def test_subset_inclusion_enumerated(z6):
    two, four, three = z6.element(2), z6.element(4), z6.element(3)
    assert subset_equal(subset_handle(SubsetKind.RIGHT_IDEAL, two),
                        subset_handle(SubsetKind.RIGHT_IDEAL, four))
    assert not subset_included(subset_handle(SubsetKind.RIGHT_IDEAL, two),
                               subset_handle(SubsetKind.RIGHT_IDEAL, three))
    assert subset_handle(SubsetKind.RIGHT_ANNIHILATOR, two).members == frozenset(
        {z6.element(0), z6.element(3)}
    )


def test_subset_inclusion_linear(q2):
    a = parse_element(q2, '[[0,1],[0,1]]')
    assert subset_handle(SubsetKind.RIGHT_IDEAL, a).basis is not None
    # columns of a span (1,1); columns of a* = [[0,0],[1,1]] span (0,1)
    assert not subset_included(subset_handle(SubsetKind.RIGHT_IDEAL, a),
                               subset_handle(SubsetKind.RIGHT_IDEAL, a.star))
    assert subset_equal(subset_handle(SubsetKind.LEFT_IDEAL, a),
                        subset_handle(SubsetKind.LEFT_IDEAL, parse_element(q2, '[[0,2],[0,0]]')))
    assert subset_included(subset_handle(SubsetKind.RIGHT_IDEAL, q2.zero),
                           subset_handle(SubsetKind.RIGHT_IDEAL, a))


def test_linear_and_enumerated_realizations_agree(gf2):
    for a, b in itertools.product(gf2.elements(), repeat=2):
        for kind in SubsetKind:
            linear = subset_included(subset_handle(kind, a, 'linear'),
                                     subset_handle(kind, b, 'linear'))
            enumerated = subset_included(subset_handle(kind, a, 'enumerate'),
                                         subset_handle(kind, b, 'enumerate'))
            assert linear == enumerated, (kind, a, b)


def test_mixed_sides_rejected(z6):
    with pytest.raises(IncompatibleSubsets):
        subset_included(subset_handle(SubsetKind.RIGHT_IDEAL, z6.one),
                        subset_handle(SubsetKind.LEFT_IDEAL, z6.one))


def test_linear_subsets_need_a_field(z6):
    with pytest.raises(UnsupportedPath):
        subset_handle(SubsetKind.RIGHT_IDEAL, z6.one, 'linear')


def test_adjoint_of_a_rectangular_factor(q2):
    column = ((Fraction(1),), (Fraction(2),))
    assert q2.adjoint(column) == ((Fraction(1), Fraction(2)),)
