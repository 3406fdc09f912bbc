import pytest

from app.models import CharacterizationId, PreconditionError, Provenance
from app.services.ep_oracle import (
    FAMILIES,
    characterization_groups,
    characterizations,
    ep_baseline,
    ep_core_conditions,
    ep_power_range,
    ep_range_conditions,
    ep_three_equations,
    ep_two_condition,
    evaluate,
    n_ep,
    select,
    singleton_claims,
    solution_set,
    standalone_commutator,
    unit_construction,
)
from app.services.gen_inverse import core_inverse, moore_penrose
from app.utils.formatting import format_element, parse_element
from tests.conftest import make_ring


def test_golden_example(golden):
    verdict = evaluate(golden)
    assert verdict.baseline is False
    assert verdict.disagreements() == []
    v8 = verdict.verdicts[CharacterizationId('core-conditions', 8)]
    assert v8.value is False
    assert format_element(v8.witness) == '[[1/2, -1/2], [-1/2, 1/2]]'


def test_identity_is_ep_everywhere(q2):
    verdict = evaluate(q2.one)
    assert verdict.baseline
    applicable = [v for v in verdict.verdicts.values() if v.applicable]
    assert applicable and all(v.value for v in applicable)


def test_zmod_two_is_ep(z6):
    verdict = evaluate(z6.element(2))
    assert verdict.baseline
    assert all(v.value for v in verdict.verdicts.values() if v.applicable)


def test_constructive_witness_over_rationals(q2):
    a = parse_element(q2, '[[1,2],[2,4]]')
    assert ep_baseline(a)
    v = ep_three_equations(a, 'left')
    assert v.value and v.provenance is Provenance.CONSTRUCTIVE
    assert v.witness == moore_penrose(a)


def test_non_ep_over_rationals_is_derived(golden):
    v = ep_range_conditions(golden, 4, 'right')
    assert v.value is False
    assert v.provenance is Provenance.DERIVED


def test_exhaustive_search_provenance(gf2):
    a = parse_element(gf2, '[[1,0],[0,0]]')
    v = ep_three_equations(a, 'commuting')
    assert v.value and v.provenance is Provenance.EXHAUSTIVE


@pytest.mark.parametrize('ring_text', ['Mat:2:GF2', 'Mat:2:GF3', 'Zmod:6', 'Zmod:12'])
def test_biconditionals_hold_exhaustively(ring_text):
    ring = make_ring(ring_text)
    for a in ring.elements():
        verdict = evaluate(a)
        assert verdict.disagreements() == [], format_element(a)


def test_solution_sets_on_gf2(gf2):
    for a in gf2.elements():
        if not ep_baseline(a):
            continue
        for family in FAMILIES:
            spec = solution_set(a, family)
            assert spec.defining_set() == spec.parameterized_set(), (family, format_element(a))
            assert spec.contains(spec.anchor)


def test_core_factor_parameterization_needs_ep(gf3):
    a = parse_element(gf3, '[[0,1],[0,1]]')
    assert not ep_baseline(a)
    spec = solution_set(a, 'core-factor')
    # every xa has a zero first column, core a does not
    assert spec.defining_set() == frozenset()
    assert spec.parameterized_set()
    with pytest.raises(PreconditionError):
        solution_set(a, 'commuting')


def test_unknown_family(gf2):
    with pytest.raises(PreconditionError):
        solution_set(gf2.one, 'range-right-9')


@pytest.mark.parametrize('ring_text', ['Mat:2:GF2', 'Mat:2:GF3'])
def test_singleton_claims_in_prime_rings(ring_text):
    claims = singleton_claims(make_ring(ring_text))
    assert claims
    assert all(claim.holds for claim in claims)


def test_singleton_claims_semiprime_only_commuting(z6):
    claims = singleton_claims(z6)
    assert {claim.family for claim in claims} == {'commuting'}
    assert all(claim.holds for claim in claims)


def test_singleton_claims_preconditions(q2):
    with pytest.raises(PreconditionError):
        singleton_claims(make_ring('Zmod:12'))
    with pytest.raises(PreconditionError):
        singleton_claims(q2)


@pytest.mark.parametrize('ring_text', ['Mat:2:GF2', 'Mat:2:GF3', 'Zmod:6'])
def test_unit_construction(ring_text):
    ring = make_ring(ring_text)
    for a in ring.elements():
        if not ep_baseline(a):
            continue
        for target in ('core', 'mp'):
            construction = unit_construction(a, target)
            assert construction.check
            assert construction.u * a == core_inverse(a)


def test_unit_construction_needs_ep(golden):
    with pytest.raises(PreconditionError):
        unit_construction(golden, 'core')
    with pytest.raises(PreconditionError):
        unit_construction(golden.ring.one, 'drazin')


def test_n_ep(golden, q2):
    assert n_ep(q2.one, 3).value
    assert n_ep(golden, 1).applicable
    with pytest.raises(PreconditionError):
        n_ep(golden, 0)


def test_standalone_commutator(z6):
    assert standalone_commutator(z6.element(2)).value
    ring = make_ring('Zmod:4')
    assert not standalone_commutator(ring.element(2)).applicable


def test_bad_variants(golden):
    with pytest.raises(PreconditionError):
        ep_core_conditions(golden, 9)
    with pytest.raises(PreconditionError):
        ep_range_conditions(golden, 10, 'right')
    with pytest.raises(PreconditionError):
        ep_range_conditions(golden, 2, 'up')
    with pytest.raises(PreconditionError):
        ep_three_equations(golden, 'up')


def test_registry_and_selection():
    registry = characterizations(3)
    ids = [str(entry.cid) for entry in registry]
    assert len(ids) == len(set(ids))
    assert 'core-conditions:8' in ids and 'n-ep:3' in ids and 'n-ep:4' not in ids
    assert len(characterizations(5)) == len(registry) + 2
    assert 'power-range' in characterization_groups()
    assert [str(e.cid) for e in select('core-conditions:8')] == ['core-conditions:8']
    assert len(select('three-equations')) == 3
    assert len(select('two-condition, core-commutator')) == 3
    with pytest.raises(PreconditionError, match='nope'):
        select('nope')


def test_unit_construction_on_rational_diagonal(q2):
    a = parse_element(q2, '[[2,0],[0,0]]')
    for target in ('core', 'mp'):
        construction = unit_construction(a, target)
        assert construction.check
        assert format_element(construction.u) == '[[1/4, 0], [0, 1]]'
        assert format_element(construction.u * a) == '[[1/2, 0], [0, 0]]'
    assert construction.u * a == moore_penrose(a)


def test_nilpotent_fails_two_condition_and_power_ranges(q2):
    n = parse_element(q2, '[[0,1],[0,0]]')
    assert not ep_baseline(n)
    assert format_element(moore_penrose(n)) == '[[0, 0], [1, 0]]'
    for side in ('left', 'right'):
        assert ep_two_condition(n, side).value is False
        for variant in range(2, 6):
            verdict = ep_power_range(n, side, variant)
            assert verdict.applicable and verdict.value is False, (side, variant)
