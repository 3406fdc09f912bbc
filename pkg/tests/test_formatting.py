import json

import pytest

from app.models import (
    ElementParseError,
    InvalidRingSpec,
    Involution,
    RingKind,
    ScalarKind,
    Verdict,
)
from app.utils.formatting import (
    element_to_json,
    format_element,
    format_optional,
    format_verdict,
    parse_element,
    parse_element_json,
    parse_ring_spec,
)
from tests.conftest import make_ring


@pytest.mark.parametrize('text, scalar, involution', [
    ('Mat:2:Q', ScalarKind.RATIONALS, Involution.TRANSPOSE),
    ('Mat:3:Qi', ScalarKind.GAUSSIAN, Involution.CONJUGATE_TRANSPOSE),
    ('Mat:2:GF3', ScalarKind.PRIME_FIELD, Involution.TRANSPOSE),
    ('Mat:2:Zmod4', ScalarKind.MODULAR, Involution.TRANSPOSE),
    ('Mat:1:Q/identity', ScalarKind.RATIONALS, Involution.IDENTITY),
])
def test_matrix_ring_specs(text, scalar, involution):
    spec = parse_ring_spec(text)
    assert spec.kind is RingKind.MATRIX
    assert spec.scalar is scalar
    assert spec.involution is involution
    assert spec.label == text


def test_modular_ring_spec():
    spec = parse_ring_spec(' Zmod:12 ')
    assert spec.kind is RingKind.MODULAR and spec.modulus == 12
    assert str(spec) == 'Zmod:12'


@pytest.mark.parametrize('text', [
    'Zmod:1',
    'Mat:0:Q',
    'Mat:2:R',
    'Mat:2:Q/identity',
    'Mat:2:Q/conjugate-transpose',
    'Mat:2:Q/sideways',
    'Zmod6',
    '',
])
def test_invalid_ring_specs(text):
    with pytest.raises(InvalidRingSpec):
        parse_ring_spec(text)


def test_parse_and_format_matrix(q2):
    a = parse_element(q2, '[[1/2, -3], [0, 4/8]]')
    assert format_element(a) == '[[1/2, -3], [0, 1/2]]'
    assert parse_element(q2, format_element(a)) == a


def test_parse_residue(z6):
    assert parse_element(z6, '8') == z6.element(2)
    assert format_element(z6.element(5)) == '5'


def test_dimension_mismatch(q2):
    with pytest.raises(ElementParseError, match='dimension mismatch'):
        parse_element(q2, '[[1,2,3],[4,5,6]]')
    with pytest.raises(ElementParseError):
        parse_element(q2, '1,2;3,4')


def test_json_element_roundtrip():
    ring = make_ring('Mat:2:Qi')
    document = {'rows': 2, 'cols': 2, 'entries': [['1+2*i', '0'], ['1/3', '-i']]}
    a = parse_element_json(ring, json.dumps(document))
    assert element_to_json(a) == {
        'rows': 2, 'cols': 2, 'entries': [['1+2*i', '0'], ['1/3', '-1*i']],
    }
    assert parse_element_json(ring, element_to_json(a)) == a


def test_json_modular_entries_reduce():
    ring = make_ring('Mat:2:Zmod4')
    a = parse_element_json(ring, {'rows': 2, 'cols': 2, 'entries': [['5', '-1'], ['2', '0']]})
    assert format_element(a) == '[[1, 3], [2, 0]]'


def test_json_errors(q2, z6):
    with pytest.raises(ElementParseError, match='missing'):
        parse_element_json(q2, {'rows': 2, 'entries': [['1', '0'], ['0', '1']]})
    with pytest.raises(ElementParseError):
        parse_element_json(q2, {'rows': 3, 'cols': 2, 'entries': [['1', '0'], ['0', '1']]})
    with pytest.raises(ElementParseError):
        parse_element_json(q2, '{not json')
    with pytest.raises(ElementParseError):
        parse_element_json(z6, {'entries': [['1']]})
    assert parse_element_json(z6, {'value': '7'}) == z6.element(1)


def test_optional_and_verdict_formatting(q2):
    assert format_optional(None) == 'does not exist'
    assert format_optional(q2.one) == '[[1, 0], [0, 1]]'
    assert format_verdict(Verdict(True)) == 'true'
    assert format_verdict(Verdict(False)) == 'false'
    assert format_verdict(Verdict(None)) == 'n/a'
