"""EP characterizations as independently evaluable predicates.

Each characterization returns a tri-state ``Verdict``: ``None`` when its
hypothesis (a† exists, core a exists, ...) is absent, otherwise the truth
of its condition. Existence conditions are decided by exhaustive search on
finite rings; on infinite rings a closed-form witness is tried and, failing
that, the value is marked as derived rather than independently decided.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

from app.models import (
    INAPPLICABLE,
    Certificate,
    CharacterizationId,
    Element,
    EpVerdict,
    IntegrityFault,
    PreconditionError,
    Provenance,
    SingletonClaim,
    SolutionSetSpec,
    SubsetKind,
    UnitConstruction,
    Verdict,
)
from app.services.gen_inverse import core_inverse, group_inverse, moore_penrose
from app.services.star_ring import commutator, subset_equal, subset_handle, subset_included

logger = logging.getLogger(__name__)

R_IDEAL = SubsetKind.RIGHT_IDEAL
L_IDEAL = SubsetKind.LEFT_IDEAL
L_ANN = SubsetKind.LEFT_ANNIHILATOR
R_ANN = SubsetKind.RIGHT_ANNIHILATOR

SIDES = ('left', 'right')


def _h(kind: SubsetKind, a: Element):
    return subset_handle(kind, a)


# ========================================
# Baseline
# ========================================

def ep_baseline(a: Element, method: str = 'auto') -> bool:
    """a† and a^# both exist and coincide."""
    return a.ring.remember(('ep', method, a), lambda: _baseline(a, method))


def _baseline(a: Element, method: str) -> bool:
    mp = moore_penrose(a, method)
    group = group_inverse(a, method)
    ep = mp is not None and group is not None and mp == group
    if mp is not None and commutator(a, mp).is_zero != ep:
        logger.error('[a, a†] = 0 disagrees with a† = a^# for %s', a)
        raise IntegrityFault(f'[a, a†] = 0 and a† = a^# disagree for {a}')
    return ep


def _exists(a: Element, holds: Callable[[Element], bool], candidate: Optional[Element] = None,
            pool: Optional[Iterable[Element]] = None, method: str = 'auto') -> Verdict:
    ring = a.ring
    if ring.is_finite:
        for x in (ring.elements() if pool is None else pool):
            if holds(x):
                return Verdict(True, x, Provenance.EXHAUSTIVE)
        return Verdict(False, None, Provenance.EXHAUSTIVE)
    if candidate is not None and holds(candidate):
        return Verdict(True, candidate, Provenance.CONSTRUCTIVE)
    if ep_baseline(a, method):
        return Verdict(False, candidate, Provenance.CONSTRUCTIVE,
                       note='the closed-form witness fails its conditions')
    return Verdict(False, None, Provenance.DERIVED,
                   note='no witness search over an infinite ring')


def _ep_candidate(a: Element, method: str) -> Optional[Element]:
    return moore_penrose(a, method) if ep_baseline(a, method) else None


# ========================================
# Three-equation systems
# ========================================

THREE_EQUATION_SYSTEMS = {
    'left': lambda a, x: (x * a).star == x * a and x * a * a == a and a * x * x == x,
    'right': lambda a, y: (a * y).star == a * y and a * a * y == a and y * y * a == y,
    'commuting': lambda a, x: a * a * x == a and a * x == x * a and (a * x).star == a * x,
}


def ep_three_equations(a: Element, side: str, method: str = 'auto') -> Verdict:
    if side not in THREE_EQUATION_SYSTEMS:
        raise PreconditionError(f'unknown side {side!r}; expected left, right or commuting')
    system = THREE_EQUATION_SYSTEMS[side]
    return _exists(a, partial(system, a), _ep_candidate(a, method), method=method)


# ========================================
# Range and annihilator conditions
# ========================================

def _range_right(a: Element, variant: int, x: Element) -> bool:
    if variant in (2, 3, 6, 7):
        if a * x * a != a:
            return False
    elif x * a * x != x:
        return False
    xs = x.star
    if variant <= 5:
        if not subset_equal(_h(R_IDEAL, x), _h(R_IDEAL, a)):
            return False
        rxs, ra = _h(L_IDEAL, xs), _h(L_IDEAL, a)
        if variant in (2, 4):
            return subset_equal(rxs, ra)
        if variant == 3:
            return subset_included(rxs, ra)
        return subset_included(ra, rxs)
    if not subset_equal(_h(L_ANN, x), _h(L_ANN, a)):
        return False
    xs_ann, a_ann = _h(R_ANN, xs), _h(R_ANN, a)
    if variant in (6, 8):
        return subset_equal(xs_ann, a_ann)
    if variant == 7:
        return subset_included(a_ann, xs_ann)
    return subset_included(xs_ann, a_ann)


def _range_left(a: Element, variant: int, y: Element) -> bool:
    if variant in (2, 3, 6, 7):
        if a * y * a != a:
            return False
    elif y * a * y != y:
        return False
    ys = y.star
    if variant <= 5:
        if not subset_equal(_h(L_IDEAL, y), _h(L_IDEAL, a)):
            return False
        ysr, ar = _h(R_IDEAL, ys), _h(R_IDEAL, a)
        if variant in (2, 4):
            return subset_equal(ysr, ar)
        if variant == 3:
            return subset_included(ysr, ar)
        return subset_included(ar, ysr)
    if not subset_equal(_h(R_ANN, y), _h(R_ANN, a)):
        return False
    ann_ys, ann_a = _h(L_ANN, ys), _h(L_ANN, a)
    if variant in (6, 8):
        return subset_equal(ann_ys, ann_a)
    if variant == 7:
        return subset_included(ann_a, ann_ys)
    return subset_included(ann_ys, ann_a)


def ep_range_conditions(a: Element, variant: int, side: str, method: str = 'auto') -> Verdict:
    """Variant 1 is the definition itself; variants 2..9 are witness conditions on x (or y)."""
    if variant not in range(1, 10):
        raise PreconditionError(f'range condition variant must be 1..9, got {variant}')
    if side not in SIDES:
        raise PreconditionError(f'unknown side {side!r}')
    if variant == 1:
        return Verdict(ep_baseline(a, method))
    check = _range_right if side == 'right' else _range_left
    return _exists(a, partial(check, a, variant), _ep_candidate(a, method), method=method)


def ep_two_condition(a: Element, side: str, method: str = 'auto') -> Verdict:
    a2 = a * a
    if side == 'left':
        if not subset_included(_h(L_ANN, a2), _h(L_ANN, a)):
            return Verdict(False, note='°(a²) is not contained in °a')
        holds = lambda x: x * a2 == a and (x * a).star == x * a  # noqa: E731
    elif side == 'right':
        if not subset_included(_h(R_ANN, a2), _h(R_ANN, a)):
            return Verdict(False, note='(a²)° is not contained in a°')
        holds = lambda x: a2 * x == a and (a * x).star == a * x  # noqa: E731
    else:
        raise PreconditionError(f'unknown side {side!r}')
    return _exists(a, holds, _ep_candidate(a, method), method=method)


# ========================================
# Solution sets
# ========================================

FAMILIES = (
    'three-equations-left', 'three-equations-right',
    'range-right-1', 'range-right-2', 'range-right-3', 'range-right-4',
    'range-left-1', 'range-left-2', 'range-left-3', 'range-left-4',
    'commuting', 'two-condition-left', 'two-condition-right', 'core-factor',
)


def _range_family_member(a: Element, side: str, item: int, x: Element) -> bool:
    if item in (1, 3):
        if a * x * a != a:
            return False
    elif x * a * x != x:
        return False
    if side == 'right':
        if item == 1:
            return subset_included(_h(R_IDEAL, x), _h(R_IDEAL, a))
        if item == 2:
            return subset_equal(_h(R_IDEAL, x), _h(R_IDEAL, a))
        if item == 3:
            return subset_included(_h(L_ANN, a), _h(L_ANN, x))
        return subset_equal(_h(L_ANN, a), _h(L_ANN, x))
    if item == 1:
        return subset_included(_h(L_IDEAL, x), _h(L_IDEAL, a))
    if item == 2:
        return subset_equal(_h(L_IDEAL, x), _h(L_IDEAL, a))
    if item == 3:
        return subset_included(_h(R_ANN, a), _h(R_ANN, x))
    return subset_equal(_h(R_ANN, a), _h(R_ANN, x))


def solution_set(a: Element, family: str, method: str = 'auto') -> SolutionSetSpec:
    """Membership test and parameterization of a characterization's witness set."""
    if family not in FAMILIES:
        raise PreconditionError(f'unknown solution-set family {family!r}')
    one = a.ring.one

    if family == 'core-factor':
        core = core_inverse(a, method)
        if core is None:
            raise PreconditionError(f'{a} is not core invertible')
        projector = a * core
        anchor = core * core
        return SolutionSetSpec(
            family, a, anchor, projector, 'left',
            generator=lambda w: anchor + w * (one - projector),
            membership=lambda x: x * a == core,
        )

    if not ep_baseline(a, method):
        raise PreconditionError(f'{a} is not EP')
    mp = moore_penrose(a, method)
    p = a * mp
    q = one - p

    if family == 'three-equations-left':
        return SolutionSetSpec(family, a, mp, p, 'two-sided',
                               generator=lambda y: mp + p * y * q,
                               membership=partial(THREE_EQUATION_SYSTEMS['left'], a))
    if family == 'three-equations-right':
        return SolutionSetSpec(family, a, mp, p, 'two-sided',
                               generator=lambda x: mp + q * x * p,
                               membership=partial(THREE_EQUATION_SYSTEMS['right'], a))
    if family == 'commuting':
        return SolutionSetSpec(family, a, mp, p, 'two-sided',
                               generator=lambda y: mp + q * y * q,
                               membership=partial(THREE_EQUATION_SYSTEMS['commuting'], a))
    if family == 'two-condition-left':
        return SolutionSetSpec(family, a, mp, p, 'left',
                               generator=lambda y: mp + y * q,
                               membership=lambda x: x * a * a == a and (x * a).star == x * a)
    if family == 'two-condition-right':
        return SolutionSetSpec(family, a, mp, p, 'right',
                               generator=lambda z: mp + q * z,
                               membership=lambda x: a * a * x == a and (a * x).star == a * x)

    _, side, item = family.split('-')
    item = int(item)
    if side == 'right':
        generator = lambda y: mp + p * y * q  # noqa: E731
    else:
        generator = lambda x: mp + q * x * p  # noqa: E731
    return SolutionSetSpec(family, a, mp, p, 'two-sided', generator=generator,
                           membership=partial(_range_family_member, a, side, item))


PRIME_SINGLETON_FAMILIES = (
    'three-equations-left', 'three-equations-right',
    'range-right-1', 'range-right-2', 'range-right-3', 'range-right-4',
    'range-left-1', 'range-left-2', 'range-left-3', 'range-left-4',
)


def singleton_claims(ring, method: str = 'auto') -> List[SingletonClaim]:
    """For every EP element: in a prime ring the witness sets above are singletons
    exactly when a = 0 or a is a unit; in a semiprime ring the commuting set is a
    singleton exactly when a is a unit."""
    if not ring.is_finite:
        raise PreconditionError(f'{ring.spec} is infinite; singleton claims need enumeration')
    if not ring.is_semiprime:
        raise PreconditionError(f'{ring.spec} is neither prime nor semiprime')
    claims = []
    for a in ring.elements():
        if not ep_baseline(a, method):
            continue
        unit = ring.inverse(a) is not None
        if ring.is_prime:
            for family in PRIME_SINGLETON_FAMILIES:
                size = len(solution_set(a, family, method).defining_set())
                claims.append(SingletonClaim(a, family, size, a.is_zero or unit))
        size = len(solution_set(a, 'commuting', method).defining_set())
        claims.append(SingletonClaim(a, 'commuting', size, unit))
    return claims


# ========================================
# Core-inverse conditions
# ========================================

def ep_core_conditions(a: Element, variant: int, method: str = 'auto') -> Verdict:
    if variant not in range(1, 9):
        raise PreconditionError(f'core condition variant must be 1..8, got {variant}')
    if variant == 1:
        return Verdict(ep_baseline(a, method))
    core = core_inverse(a, method)
    if variant in (6, 7):
        mp, group = moore_penrose(a, method), group_inverse(a, method)
        if mp is None or group is None:
            return INAPPLICABLE
        core_of_mp = core_inverse(mp, method)
        if variant == 6:
            return Verdict(core_of_mp is not None and core_of_mp == a)
        target = None if core is None else moore_penrose(core, method)
        return Verdict(core_of_mp is not None and core_of_mp == target)
    if core is None:
        return INAPPLICABLE
    if variant == 2:
        return Verdict((core * a).star == core * a)
    if variant == 3:
        return Verdict(core_inverse(core, method) == a)
    if variant == 4:
        return Verdict(moore_penrose(core, method) == a)
    if variant == 5:
        return Verdict(group_inverse(core, method) == a)
    p = a.ring.one - a * core
    return Verdict((a * p).is_zero, witness=p, note='p = 1 - a·core a')


INCLUSION_VARIANTS = {
    1: ('aR', 'a*R'),
    2: ('Ra', 'Ra*'),
    3: ('a*R', 'aR'),
    4: ('Ra*', 'Ra'),
}


def _named_subset(a: Element, name: str):
    base = a.star if '*' in name else a
    return _h(R_IDEAL if name.endswith('R') else L_IDEAL, base)


def ep_inclusions(a: Element, variant: int, mode: str, method: str = 'auto') -> Verdict:
    if variant not in INCLUSION_VARIANTS:
        raise PreconditionError(f'inclusion variant must be 1..4, got {variant}')
    if mode == 'group':
        hypothesis = group_inverse(a, method)
    elif mode == 'core':
        hypothesis = core_inverse(a, method)
    else:
        raise PreconditionError(f'unknown mode {mode!r}; expected group or core')
    if hypothesis is None:
        return INAPPLICABLE
    lhs, rhs = INCLUSION_VARIANTS[variant]
    return Verdict(subset_included(_named_subset(a, lhs), _named_subset(a, rhs)))


def ep_range_equality(a: Element, mode: str, side: str, method: str = 'auto') -> Verdict:
    hypothesis = group_inverse(a, method) if mode == 'group' else moore_penrose(a, method)
    if hypothesis is None:
        return INAPPLICABLE
    kind = R_IDEAL if side == 'right' else L_IDEAL
    return Verdict(subset_equal(_h(kind, a), _h(kind, a.star)))


def ep_core_commutator(a: Element, method: str = 'auto') -> Verdict:
    core = core_inverse(a, method)
    if core is None:
        return INAPPLICABLE
    return Verdict(commutator(core, (core * a).star * a).is_zero)


# ========================================
# Unit and factor constructions
# ========================================

def unit_construction(a: Element, target: str, method: str = 'auto') -> UnitConstruction:
    """u = (a^#)² + 1 - aa^#, a unit with inverse a² + 1 - aa^# and ua = a^#."""
    if target not in ('core', 'mp'):
        raise PreconditionError(f'unknown target {target!r}; expected core or mp')
    if not ep_baseline(a, method):
        raise PreconditionError(f'{a} is not EP')
    one = a.ring.one
    group = group_inverse(a, method)
    u = group * group + one - a * group
    u_inverse = a * a + one - a * group
    expected = core_inverse(a, method) if target == 'core' else moore_penrose(a, method)
    certificates = (
        Certificate('u(a²+1-aa^#)=1', u * u_inverse == one),
        Certificate('(a²+1-aa^#)u=1', u_inverse * u == one),
        Certificate(f'ua={"core a" if target == "core" else "a†"}', u * a == expected),
    )
    return UnitConstruction(u, u_inverse, target, certificates)


def _factor_target(a: Element, target: str, method: str) -> Optional[Element]:
    if target == 'core':
        return core_inverse(a, method)
    if target == 'mp':
        return moore_penrose(a, method)
    raise PreconditionError(f'unknown target {target!r}; expected core or mp')


def ep_unit_factor(a: Element, target: str, method: str = 'auto') -> Verdict:
    expected = _factor_target(a, target, method)
    if expected is None:
        return INAPPLICABLE
    pool = a.ring.units if a.ring.is_finite else None
    candidate = unit_construction(a, target, method).u if ep_baseline(a, method) else None
    return _exists(a, lambda u: u * a == expected, candidate, pool, method)


def ep_left_invertible_factor(a: Element, target: str, method: str = 'auto') -> Verdict:
    """core: some b with core a = ba; mp: some left invertible v with a† = va."""
    expected = _factor_target(a, target, method)
    if expected is None:
        return INAPPLICABLE
    candidate = None
    if ep_baseline(a, method):
        core = core_inverse(a, method)
        candidate = core * core + a.ring.one - a * core
    pool = None
    if target == 'mp' and a.ring.is_finite:
        pool = a.ring.left_invertibles
    return _exists(a, lambda b: b * a == expected, candidate, pool, method)


def ep_mp_group_factor(a: Element, method: str = 'auto') -> Verdict:
    mp, group = moore_penrose(a, method), group_inverse(a, method)
    if mp is None or group is None:
        return INAPPLICABLE
    candidate = mp * group if ep_baseline(a, method) else None
    return _exists(a, lambda b: b * a == mp, candidate, method=method)


def ep_group_projector(a: Element, method: str = 'auto') -> Verdict:
    group = group_inverse(a, method)
    if group is None:
        return INAPPLICABLE
    return Verdict((a * group).star == a * group)


def ep_projection_decomposition(a: Element, method: str = 'auto') -> Verdict:
    """Some projection p with ap = pa = 0 and a + p a unit."""
    ring = a.ring

    def holds(p: Element) -> bool:
        return ((a * p).is_zero and (p * a).is_zero
                and ring.inverse(a + p) is not None)

    pool = ring.projections if ring.is_finite else None
    mp = moore_penrose(a, method)
    candidate = None if mp is None else ring.one - a * mp
    return _exists(a, holds, candidate, pool, method)


def ep_inverse_commuting(a: Element, variant: int, method: str = 'auto') -> Verdict:
    if variant == 2:
        mp = moore_penrose(a, method)
        return INAPPLICABLE if mp is None else Verdict(commutator(a, mp).is_zero)
    if variant in (3, 4):
        core = core_inverse(a, method)
        if core is None:
            return INAPPLICABLE
        if variant == 3:
            return Verdict(commutator(a, core).is_zero)
        return Verdict(group_inverse(a, method) == core)
    if variant == 5:
        mp, group = moore_penrose(a, method), group_inverse(a, method)
        if mp is None or group is None:
            return INAPPLICABLE
        return Verdict(mp == core_inverse(a, method))
    raise PreconditionError(f'inverse-commuting variant must be 2..5, got {variant}')


# ========================================
# Moore-Penrose commutator conditions
# ========================================

def n_ep(a: Element, n: int, method: str = 'auto') -> Verdict:
    """[aⁿa†, a†aⁿ] = 0; n = 1 is bi-EP."""
    if n < 1:
        raise PreconditionError(f'n must be a positive integer, got {n}')
    mp = moore_penrose(a, method)
    if mp is None:
        return INAPPLICABLE
    an = a ** n
    return Verdict(commutator(an * mp, mp * an).is_zero)


def ep_n_ep_group(a: Element, n: int, method: str = 'auto') -> Verdict:
    """a ∈ R† ∩ R^# and a is n-EP."""
    verdict = n_ep(a, n, method)
    if not verdict.applicable:
        return verdict
    return Verdict(verdict.value and group_inverse(a, method) is not None)


def commutator_conditions(a: Element, variant: int, method: str = 'auto') -> Verdict:
    if variant not in range(2, 6):
        raise PreconditionError(f'commutator condition variant must be 2..5, got {variant}')
    mp = moore_penrose(a, method)
    if mp is None:
        return INAPPLICABLE
    left_projector, right_projector = mp * a, a * mp
    first = (commutator(left_projector, a) if variant in (2, 3)
             else commutator(left_projector, mp))
    second = (commutator(mp, right_projector) if variant in (2, 4)
              else commutator(a, right_projector))
    return Verdict(first.is_zero and second.is_zero)


def standalone_commutator(a: Element, method: str = 'auto') -> Verdict:
    """[a†a, a†] = 0 on its own; not a characterization of EP."""
    mp = moore_penrose(a, method)
    if mp is None:
        return INAPPLICABLE
    return Verdict(commutator(mp * a, mp).is_zero)


def ep_power_range(a: Element, side: str, variant: int, method: str = 'auto') -> Verdict:
    if variant not in range(2, 6):
        raise PreconditionError(f'power range variant must be 2..5, got {variant}')
    if side not in SIDES:
        raise PreconditionError(f'unknown side {side!r}')
    mp = moore_penrose(a, method)
    if mp is None:
        return INAPPLICABLE
    kind = R_IDEAL if side == 'right' else L_IDEAL
    a2 = a * a
    if not subset_equal(_h(kind, a), _h(kind, a2)):
        return Verdict(False, note=f'{kind.value} differs from the ideal generated by a²')
    projector = mp * a if side == 'right' else a * mp
    if variant == 2:
        return Verdict(commutator(projector, mp).is_zero)
    if variant == 3:
        return Verdict(commutator(projector, a).is_zero)
    other = mp if variant == 4 else a.star
    return Verdict(subset_included(_h(kind, a), _h(kind, other)))


# ========================================
# Registry
# ========================================

@dataclass(frozen=True)
class Characterization:
    cid: CharacterizationId
    group: str
    check: Callable[[Element, str], Verdict]


def _entry(name: str, group: str, fn: Callable, tag: Optional[int] = None,
           **kwargs) -> Characterization:
    def check(a: Element, method: str) -> Verdict:
        return fn(a, method=method, **kwargs)
    return Characterization(CharacterizationId(name, tag), group, check)


@lru_cache(maxsize=16)
def characterizations(n_max: int = 3) -> Tuple[Characterization, ...]:
    entries: List[Characterization] = []
    for side in ('left', 'right', 'commuting'):
        entries.append(_entry(f'three-equations-{side}', 'three-equations',
                              ep_three_equations, side=side))
    for side in SIDES:
        for v in range(2, 10):
            entries.append(_entry(f'range-{side}', 'range-conditions', ep_range_conditions,
                                  v, variant=v, side=side))
    for side in SIDES:
        entries.append(_entry(f'two-condition-{side}', 'two-condition', ep_two_condition,
                              side=side))
    for v in range(2, 9):
        entries.append(_entry('core-conditions', 'core-conditions', ep_core_conditions,
                              v, variant=v))
    for mode in ('group', 'core'):
        for v in INCLUSION_VARIANTS:
            entries.append(_entry(f'inclusions-{mode}', 'inclusions', ep_inclusions,
                                  v, variant=v, mode=mode))
    for mode in ('group', 'mp'):
        for side in ('right', 'left'):
            entries.append(_entry(f'range-equality-{mode}-{side}', 'range-equality',
                                  ep_range_equality, mode=mode, side=side))
    entries.append(_entry('core-commutator', 'core-commutator', ep_core_commutator))
    for target in ('core', 'mp'):
        entries.append(_entry(f'unit-factor-{target}', 'unit-factor', ep_unit_factor,
                              target=target))
        entries.append(_entry(f'left-invertible-factor-{target}', 'left-invertible-factor',
                              ep_left_invertible_factor, target=target))
    entries.append(_entry('mp-group-factor', 'mp-group-factor', ep_mp_group_factor))
    entries.append(_entry('group-projector', 'group-projector', ep_group_projector))
    entries.append(_entry('projection-decomposition', 'projection-decomposition',
                          ep_projection_decomposition))
    for v in range(2, 6):
        entries.append(_entry('inverse-commuting', 'inverse-commuting', ep_inverse_commuting,
                              v, variant=v))
    for n in range(1, n_max + 1):
        entries.append(_entry('n-ep', 'n-ep', ep_n_ep_group, n, n=n))
    for v in range(2, 6):
        entries.append(_entry('commutator-conditions', 'commutator-conditions',
                              commutator_conditions, v, variant=v))
    for side in SIDES:
        for v in range(2, 6):
            entries.append(_entry(f'power-range-{side}', 'power-range', ep_power_range,
                                  v, side=side, variant=v))
    return tuple(entries)


def characterization_groups() -> Tuple[str, ...]:
    return tuple(sorted({entry.group for entry in characterizations()}))


def select(suite: str, n_max: int = 3) -> Tuple[Characterization, ...]:
    """Entries named by a suite string: 'all' or a comma list of groups and ids."""
    registry = characterizations(n_max)
    if suite.strip() == 'all':
        return registry
    wanted: Set[str] = {token.strip() for token in suite.split(',') if token.strip()}
    known = {entry.group for entry in registry} | {str(entry.cid) for entry in registry}
    unknown = sorted(wanted - known)
    if unknown:
        raise PreconditionError(f'unknown characterization(s): {", ".join(unknown)}')
    return tuple(entry for entry in registry
                 if entry.group in wanted or str(entry.cid) in wanted)


def evaluate(a: Element, entries: Optional[Sequence[Characterization]] = None,
             n_max: int = 3, method: str = 'auto') -> EpVerdict:
    if entries is None:
        entries = characterizations(n_max)
    verdicts = {entry.cid: entry.check(a, method) for entry in entries}
    return EpVerdict(a, ep_baseline(a, method), verdicts)
