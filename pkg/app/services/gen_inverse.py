"""{1}-, Moore-Penrose, group, core and dual core inverses.

Matrix rings over a field use closed forms built on a rank factorization
``a = F G``; finite rings can always fall back to exhaustive search. Every
value handed out has passed the full defining equation set of its kind.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from app.models import (
    Certificate,
    Decomposition,
    DecompositionKind,
    Element,
    IntegrityFault,
    InverseBundle,
    InverseKind,
    PreconditionError,
    UnsupportedPath,
)
from app.services import linalg

logger = logging.getLogger(__name__)

METHODS = ('auto', 'closed-form', 'search')

Equation = Tuple[str, Callable[[Element, Element], bool]]

EQUATIONS: Dict[InverseKind, Tuple[Equation, ...]] = {
    InverseKind.ONE: (
        ('axa=a', lambda a, x: a * x * a == a),
    ),
    InverseKind.MP: (
        ('axa=a', lambda a, x: a * x * a == a),
        ('xax=x', lambda a, x: x * a * x == x),
        ('(ax)*=ax', lambda a, x: (a * x).star == a * x),
        ('(xa)*=xa', lambda a, x: (x * a).star == x * a),
    ),
    InverseKind.GROUP: (
        ('axa=a', lambda a, x: a * x * a == a),
        ('xax=x', lambda a, x: x * a * x == x),
        ('ax=xa', lambda a, x: a * x == x * a),
    ),
    InverseKind.CORE: (
        ('axa=a', lambda a, x: a * x * a == a),
        ('xax=x', lambda a, x: x * a * x == x),
        ('(ax)*=ax', lambda a, x: (a * x).star == a * x),
        ('xa²=a', lambda a, x: x * a * a == a),
        ('ax²=x', lambda a, x: a * x * x == x),
    ),
    InverseKind.DUAL_CORE: (
        ('axa=a', lambda a, x: a * x * a == a),
        ('xax=x', lambda a, x: x * a * x == x),
        ('(xa)*=xa', lambda a, x: (x * a).star == x * a),
        ('a²x=a', lambda a, x: a * a * x == a),
        ('x²a=x', lambda a, x: x * x * a == x),
    ),
}

UNIQUE_KINDS = frozenset({InverseKind.MP, InverseKind.GROUP, InverseKind.CORE,
                          InverseKind.DUAL_CORE})


def verify_inverse(a: Element, x: Element, kind) -> Tuple[Certificate, ...]:
    kind = InverseKind(kind)
    if a.ring != x.ring:
        raise ValueError('a and x live in different rings')
    return tuple(Certificate(name, check(a, x)) for name, check in EQUATIONS[kind])


def _passes(a: Element, x: Element, kind: InverseKind) -> bool:
    return all(check(a, x) for _, check in EQUATIONS[kind])


# ========================================
# Exhaustive search
# ========================================

def search_solutions(a: Element, kind: InverseKind) -> Tuple[Element, ...]:
    """Every x of the ring satisfying the equation set of ``kind``, in canonical order."""
    ring = a.ring
    if not ring.is_finite:
        raise UnsupportedPath(f'{ring.spec} is infinite; exhaustive search is unavailable')
    kind = InverseKind(kind)
    return ring.remember(
        ('solutions', kind, a),
        lambda: tuple(x for x in ring.elements() if _passes(a, x, kind)),
    )


def _search(a: Element, kind: InverseKind) -> Optional[Element]:
    found = search_solutions(a, kind)
    if not found:
        return None
    if kind in UNIQUE_KINDS and len(found) > 1:
        logger.error('%s inverse of %s is not unique: %d solutions', kind.value, a, len(found))
        raise IntegrityFault(
            f'{len(found)} distinct {kind.value} inverses of {a} in {a.ring.spec}'
        )
    return found[0]


# ========================================
# Closed forms over a field
# ========================================

def _require_linear(a: Element) -> None:
    if not a.ring.has_linear_algebra:
        raise UnsupportedPath(
            f'no closed form on {a.ring.spec}: it is not a matrix ring over a field'
        )


def _linear_one_inverse(m: linalg.Matrix, dom) -> linalg.Matrix:
    n = len(m)
    F, G, pivots = linalg.rank_factorization(m, dom)
    if not pivots:
        return linalg.zeros(n, n, dom)
    R = linalg.right_inverse_echelon(G, pivots, dom)
    L = linalg.left_inverse_full_column(F, dom)
    return linalg.mat_mul(R, L, dom)


def _closed_one(a: Element) -> Element:
    return a.ring.element(_linear_one_inverse(a.payload, a.ring.domain))


def _closed_mp(a: Element) -> Optional[Element]:
    ring, dom = a.ring, a.ring.domain
    F, G, pivots = linalg.rank_factorization(a.payload, dom)
    if not pivots:
        return ring.zero
    F_adj, G_adj = ring.adjoint(F), ring.adjoint(G)
    left = linalg.inverse(linalg.mat_mul(G, G_adj, dom), dom)
    right = linalg.inverse(linalg.mat_mul(F_adj, F, dom), dom)
    if left is None or right is None:
        return None
    x = ring.element(linalg.chain(dom, G_adj, left, right, F_adj))
    return x if _passes(a, x, InverseKind.MP) else None


def _closed_group(a: Element) -> Optional[Element]:
    ring, dom = a.ring, a.ring.domain
    F, G, pivots = linalg.rank_factorization(a.payload, dom)
    if not pivots:
        return ring.zero
    core_block = linalg.inverse(linalg.mat_mul(G, F, dom), dom)
    if core_block is None:
        return None
    x = ring.element(linalg.chain(dom, F, core_block, core_block, G))
    return x if _passes(a, x, InverseKind.GROUP) else None


def _closed_one_three(a: Element) -> Optional[Element]:
    """x with axa=a and (ax)*=ax, as (a*a)^(1) a*, when rank(a*a) = rank(a)."""
    ring, dom = a.ring, a.ring.domain
    a_adj = a.star.payload
    gram = linalg.mat_mul(a_adj, a.payload, dom)
    x = ring.element(linalg.mat_mul(_linear_one_inverse(gram, dom), a_adj, dom))
    if a * x * a != a or (a * x).star != a * x:
        return None
    return x


def _closed_core(a: Element) -> Optional[Element]:
    group = _closed_group(a)
    if group is None:
        return None
    one_three = _closed_one_three(a)
    if one_three is None:
        return None
    # a·a^(1,3) is the projection onto aR, so this is a^# a a† whenever a† exists
    x = group * a * one_three
    return x if _passes(a, x, InverseKind.CORE) else None


_CLOSED_FORMS = {
    InverseKind.ONE: _closed_one,
    InverseKind.MP: _closed_mp,
    InverseKind.GROUP: _closed_group,
    InverseKind.CORE: _closed_core,
}


def compute_inverse(a: Element, kind: InverseKind, method: str = 'auto') -> Optional[Element]:
    kind = InverseKind(kind)
    if method not in METHODS:
        raise ValueError(f'unknown method {method!r}; expected one of {", ".join(METHODS)}')
    return a.ring.remember((kind, method, a), lambda: _compute(a, kind, method))


def _compute(a: Element, kind: InverseKind, method: str) -> Optional[Element]:
    if kind is InverseKind.DUAL_CORE:
        core_of_star = compute_inverse(a.star, InverseKind.CORE, method)
        return None if core_of_star is None else core_of_star.star

    ring = a.ring
    if method == 'search':
        return _search(a, kind)
    if method == 'closed-form':
        _require_linear(a)
        return _CLOSED_FORMS[kind](a)

    if not ring.has_linear_algebra:
        return _search(a, kind)
    found = _CLOSED_FORMS[kind](a)
    if found is None and ring.is_finite and ring.size <= ring.cap:
        found = _search(a, kind)
        if found is not None:
            logger.warning('closed form missed the %s inverse of %s', kind.value, a)
    return found


def one_inverse(a: Element, method: str = 'auto') -> Optional[Element]:
    return compute_inverse(a, InverseKind.ONE, method)


def moore_penrose(a: Element, method: str = 'auto') -> Optional[Element]:
    return compute_inverse(a, InverseKind.MP, method)


def group_inverse(a: Element, method: str = 'auto') -> Optional[Element]:
    return compute_inverse(a, InverseKind.GROUP, method)


def core_inverse(a: Element, method: str = 'auto') -> Optional[Element]:
    return compute_inverse(a, InverseKind.CORE, method)


def dual_core_inverse(a: Element, method: str = 'auto') -> Optional[Element]:
    """(core a*)*, the dual core inverse of a."""
    return compute_inverse(a, InverseKind.DUAL_CORE, method)


# ========================================
# Bundles and reasons
# ========================================

def _rank_reason(a: Element, kind: InverseKind) -> str:
    dom = a.ring.domain
    r = linalg.rank(a.payload, dom)
    if kind is InverseKind.GROUP:
        r2 = linalg.rank((a * a).payload, dom)
        return f'rank(a²) = {r2} differs from rank(a) = {r}'
    gram_right = linalg.rank((a.star * a).payload, dom)
    gram_left = linalg.rank((a * a.star).payload, dom)
    if kind is InverseKind.MP:
        return f'rank(a*a) = {gram_right}, rank(aa*) = {gram_left}, rank(a) = {r}'
    if kind is InverseKind.CORE:
        if _closed_group(a) is None:
            return _rank_reason(a, InverseKind.GROUP)
        return f'rank(a*a) = {gram_right} differs from rank(a) = {r}'
    if kind is InverseKind.DUAL_CORE:
        if _closed_group(a) is None:
            return _rank_reason(a, InverseKind.GROUP)
        return f'rank(aa*) = {gram_left} differs from rank(a) = {r}'
    return 'no {1}-inverse'


def absence_reason(a: Element, kind: InverseKind) -> str:
    kind = InverseKind(kind)
    if a.ring.has_linear_algebra:
        return _rank_reason(a, kind)
    names = ', '.join(name for name, _ in EQUATIONS[kind])
    return f'no element satisfies {names}'


def inverse_bundle(a: Element, method: str = 'auto') -> InverseBundle:
    bundle = InverseBundle(element=a)
    for kind in InverseKind:
        x = compute_inverse(a, kind, method)
        setattr(bundle, _BUNDLE_FIELDS[kind], x)
        if x is None:
            bundle.reasons[kind] = absence_reason(a, kind)
        else:
            bundle.certificates[kind] = verify_inverse(a, x, kind)
    if not bundle.certified:
        raise IntegrityFault(f'an accepted inverse of {a} fails its own equations')
    return bundle


_BUNDLE_FIELDS = {
    InverseKind.ONE: 'one_inverse',
    InverseKind.MP: 'mp',
    InverseKind.GROUP: 'group',
    InverseKind.CORE: 'core',
    InverseKind.DUAL_CORE: 'dual_core',
}


# ========================================
# Idempotent and projection decompositions
# ========================================

def decomposition(a: Element, kind, method: str = 'auto') -> Decomposition:
    kind = DecompositionKind(kind)
    ring = a.ring
    one = ring.one

    if kind is DecompositionKind.GROUP:
        group = group_inverse(a, method)
        if group is None:
            raise PreconditionError(f'{a} has no group inverse')
        p = one - a * group
        witness = ring.inverse(a + p)
        if witness is None:
            raise IntegrityFault(f'a + p is not a unit for group invertible {a}')
        certificates = (
            Certificate('p²=p', p * p == p),
            Certificate('ap=0', (a * p).is_zero),
            Certificate('pa=0', (p * a).is_zero),
            Certificate('(a+p)w=1', (a + p) * witness == one),
            Certificate('w(a+p)=1', witness * (a + p) == one),
            Certificate('a^#=w-p', group == witness - p),
        )
    elif kind is DecompositionKind.EP:
        mp, group = moore_penrose(a, method), group_inverse(a, method)
        if mp is None or group is None or mp != group:
            raise PreconditionError(f'{a} is not EP')
        p = one - a * mp
        witness = ring.inverse(a + p)
        if witness is None:
            raise IntegrityFault(f'a + p is not a unit for EP element {a}')
        certificates = (
            Certificate('p*=p', p.star == p),
            Certificate('p²=p', p * p == p),
            Certificate('ap=0', (a * p).is_zero),
            Certificate('pa=0', (p * a).is_zero),
            Certificate('(a+p)w=1', (a + p) * witness == one),
            Certificate('a†=w-p', mp == witness - p),
        )
    else:
        core = core_inverse(a, method)
        if core is None:
            raise PreconditionError(f'{a} has no core inverse')
        p = one - a * core
        witness = p + core
        target = a * (one - p) + p
        certificates = (
            Certificate('p*=p', p.star == p),
            Certificate('p²=p', p * p == p),
            Certificate('pa=0', (p * a).is_zero),
            Certificate('(a(1-p)+p)w=1', target * witness == one),
            Certificate('w(a(1-p)+p)=1', witness * target == one),
        )
    return Decomposition(kind, p, witness, certificates)


def core_identities(a: Element, method: str = 'auto') -> List[Certificate]:
    """Identities every core invertible element satisfies; empty when core a is absent."""
    core = core_inverse(a, method)
    if core is None:
        return []
    group = group_inverse(a, method)
    a2c = a * a * core
    checks = [
        Certificate('a^#=(core a)²a', group is not None and group == core * core * a),
        Certificate('core(core a)=a²·core a', core_inverse(core, method) == a2c),
        Certificate('(core a)†=a²·core a', moore_penrose(core, method) == a2c),
        Certificate('(core a)^#=a²·core a', group_inverse(core, method) == a2c),
        Certificate('core a is EP', _is_ep(core, method)),
    ]
    mp = moore_penrose(a, method)
    if mp is not None:
        checks.append(Certificate(
            'core(a†)=(core a·a)*a', core_inverse(mp, method) == (core * a).star * a,
        ))
    return checks


def star_duality(a: Element, method: str = 'auto') -> Certificate:
    """a core invertible iff a* dual core invertible, with (core a)* = dual core of a*.

    The dual core side is solved on its own: by search on finite rings, and
    by its rank criterion and defining equations otherwise.
    """
    name = '(core a)*=dual core(a*)'
    core = core_inverse(a, method)
    b = a.star
    ring = b.ring
    if ring.is_finite and (ring.size <= ring.cap or not ring.has_linear_algebra):
        found = search_solutions(b, InverseKind.DUAL_CORE)
        if core is None:
            return Certificate(name, not found)
        return Certificate(name, found == (core.star,))
    if core is None:
        return Certificate(name, not _dual_core_exists(b))
    return Certificate(name, all(c.holds for c in verify_inverse(b, core.star,
                                                                  InverseKind.DUAL_CORE)))


def _dual_core_exists(b: Element) -> bool:
    dom = b.ring.domain
    r = linalg.rank(b.payload, dom)
    return (_closed_group(b) is not None
            and linalg.rank((b * b.star).payload, dom) == r)


def _is_ep(a: Element, method: str) -> bool:
    mp = moore_penrose(a, method)
    return mp is not None and mp == group_inverse(a, method)
