"""Unital rings with involution and their exact realizations.

Two realizations exist: the commutative ring of integers modulo n with the
identity involution, and the ring of k x k matrices over an exact scalar
domain with (conjugate) transpose. Finite realizations enumerate their
elements in lexicographic order of the canonical payload.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Optional, Tuple

from werkzeug.utils import cached_property

from app.models import (
    Element,
    ElementClass,
    EnumerationCapExceeded,
    IncompatibleSubsets,
    InvalidRingSpec,
    Involution,
    RingKind,
    RingSpec,
    ScalarKind,
    SubsetHandle,
    SubsetKind,
    UnsupportedPath,
)
from app.services import linalg
from app.services.scalars import (
    GaussianRationals,
    ModularIntegers,
    PrimeField,
    Rationals,
    ScalarDomain,
    is_prime,
    is_squarefree,
)

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10 ** 6


class StarRing(ABC):
    """A unital ring with involution over canonical payloads."""

    def __init__(self, spec: RingSpec, domain: ScalarDomain, cap: int = DEFAULT_ENUM_CAP):
        self.spec = spec
        self.domain = domain
        self.cap = cap

    def __eq__(self, other) -> bool:
        return isinstance(other, StarRing) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f'<StarRing {self.spec}>'

    @cached_property
    def memo(self) -> Dict[Tuple, Any]:
        """Results of pure computations on elements of this ring."""
        return {}

    def remember(self, key: Tuple, compute: Callable[[], Any]) -> Any:
        try:
            return self.memo[key]
        except KeyError:
            value = self.memo[key] = compute()
            return value

    # --- payload arithmetic -------------------------------------------------

    @abstractmethod
    def canonical(self, payload: Any) -> Any:
        pass

    @abstractmethod
    def _add(self, p: Any, q: Any) -> Any:
        pass

    @abstractmethod
    def _sub(self, p: Any, q: Any) -> Any:
        pass

    @abstractmethod
    def _mul(self, p: Any, q: Any) -> Any:
        pass

    @abstractmethod
    def _neg(self, p: Any) -> Any:
        pass

    @abstractmethod
    def _star(self, p: Any) -> Any:
        pass

    @abstractmethod
    def _scalar(self, value: int) -> Any:
        pass

    @abstractmethod
    def _inverse(self, p: Any) -> Optional[Any]:
        pass

    @abstractmethod
    def _enumerate_payloads(self):
        pass

    # --- element level -------------------------------------------------------

    def element(self, payload: Any) -> Element:
        return Element(self, self.canonical(payload))

    def from_int(self, value: int) -> Element:
        return Element(self, self._scalar(value))

    @cached_property
    def zero(self) -> Element:
        return self.from_int(0)

    @cached_property
    def one(self) -> Element:
        return self.from_int(1)

    def add(self, a: Element, b: Element) -> Element:
        return Element(self, self._add(a.payload, b.payload))

    def sub(self, a: Element, b: Element) -> Element:
        return Element(self, self._sub(a.payload, b.payload))

    def mul(self, a: Element, b: Element) -> Element:
        return Element(self, self._mul(a.payload, b.payload))

    def neg(self, a: Element) -> Element:
        return Element(self, self._neg(a.payload))

    def star(self, a: Element) -> Element:
        return Element(self, self._star(a.payload))

    def power(self, a: Element, exponent: int) -> Element:
        if exponent < 0:
            raise ValueError('negative powers need an inverse; use inverse()')
        result = self.one
        for _ in range(exponent):
            result = self.mul(result, a)
        return result

    def inverse(self, a: Element) -> Optional[Element]:
        """Two-sided inverse when a is a unit, else None."""
        payload = self._inverse(a.payload)
        return None if payload is None else Element(self, payload)

    # --- structure -----------------------------------------------------------

    @property
    @abstractmethod
    def size(self) -> Optional[int]:
        """Number of elements, or None for infinite rings."""

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    @property
    def is_commutative(self) -> bool:
        return False

    @property
    def has_linear_algebra(self) -> bool:
        """True for matrix rings over a field (elimination applies)."""
        return False

    @property
    @abstractmethod
    def is_prime(self) -> bool:
        pass

    @property
    @abstractmethod
    def is_semiprime(self) -> bool:
        pass

    def elements(self) -> Tuple[Element, ...]:
        """All elements in canonical order; refuses rings above the cap."""
        return self._elements

    @cached_property
    def _elements(self) -> Tuple[Element, ...]:
        if self.size is None:
            raise UnsupportedPath(f'{self.spec} is infinite and cannot be enumerated')
        if self.size > self.cap:
            raise EnumerationCapExceeded(self.size, self.cap)
        logger.debug('enumerating %d elements of %s', self.size, self.spec)
        return tuple(Element(self, payload) for payload in self._enumerate_payloads())

    @cached_property
    def units(self) -> Tuple[Element, ...]:
        return tuple(a for a in self.elements() if self.inverse(a) is not None)

    @cached_property
    def projections(self) -> Tuple[Element, ...]:
        return tuple(p for p in self.elements() if p * p == p and p.star == p)

    @cached_property
    def left_invertibles(self) -> Tuple[Element, ...]:
        one = self.one
        return tuple(
            x for x in self.elements() if any(t * x == one for t in self.elements())
        )

    @cached_property
    def idempotents(self) -> Tuple[Element, ...]:
        return tuple(p for p in self.elements() if p * p == p)


class ModularRing(StarRing):
    """Integers modulo n with the identity involution."""

    @property
    def modulus(self) -> int:
        return self.spec.modulus

    def canonical(self, payload):
        return self.domain.canonical(payload)

    def _add(self, p, q):
        return (p + q) % self.modulus

    def _sub(self, p, q):
        return (p - q) % self.modulus

    def _mul(self, p, q):
        return (p * q) % self.modulus

    def _neg(self, p):
        return (-p) % self.modulus

    def _star(self, p):
        return p

    def _scalar(self, value):
        return value % self.modulus

    def _inverse(self, p):
        return self.domain.inv(p) if self.domain.is_unit(p) else None

    def _enumerate_payloads(self):
        return range(self.modulus)

    @property
    def size(self):
        return self.modulus

    @property
    def is_commutative(self):
        return True

    @property
    def is_prime(self):
        return is_prime(self.modulus)

    @property
    def is_semiprime(self):
        return is_squarefree(self.modulus)


class MatrixRing(StarRing):
    """k x k matrices over an exact scalar domain."""

    @property
    def dim(self) -> int:
        return self.spec.dim

    def canonical(self, payload):
        rows = tuple(tuple(self.domain.canonical(x) for x in row) for row in payload)
        if len(rows) != self.dim or any(len(row) != self.dim for row in rows):
            raise ValueError(f'expected a {self.dim}x{self.dim} matrix for {self.spec}')
        return rows

    def _add(self, p, q):
        return linalg.mat_add(p, q, self.domain)

    def _sub(self, p, q):
        return linalg.mat_sub(p, q, self.domain)

    def _mul(self, p, q):
        return linalg.mat_mul(p, q, self.domain)

    def _neg(self, p):
        return linalg.mat_neg(p, self.domain)

    def _star(self, p):
        if self.spec.involution is Involution.IDENTITY:
            return p
        if self.spec.involution is Involution.CONJUGATE_TRANSPOSE:
            return linalg.conj_transpose(p, self.domain)
        return linalg.transpose(p)

    def adjoint(self, m: linalg.Matrix) -> linalg.Matrix:
        """The involution on a matrix of any shape, such as a rank factor."""
        return self._star(m)

    def _scalar(self, value):
        dom = self.domain
        scalar = dom.from_int(value)
        return tuple(
            tuple(scalar if i == j else dom.zero for j in range(self.dim))
            for i in range(self.dim)
        )

    def _inverse(self, p):
        if self.domain.is_field:
            return linalg.inverse(p, self.domain)
        return linalg.adjugate_inverse(p, self.domain)

    def _enumerate_payloads(self):
        k = self.dim
        for flat in itertools.product(range(self.domain.size()), repeat=k * k):
            yield tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))

    @property
    def size(self):
        scalars = self.domain.size()
        return None if scalars is None else scalars ** (self.dim * self.dim)

    @property
    def is_commutative(self):
        return self.dim == 1

    @property
    def has_linear_algebra(self):
        return self.domain.is_field

    @property
    def is_prime(self):
        if self.domain.is_field:
            return True
        return is_prime(self.domain.modulus)

    @property
    def is_semiprime(self):
        if self.domain.is_field:
            return True
        return is_squarefree(self.domain.modulus)


# ========================================
# Operations
# ========================================

def _domain_for(spec: RingSpec) -> ScalarDomain:
    if spec.scalar is ScalarKind.RATIONALS:
        return Rationals()
    if spec.scalar is ScalarKind.GAUSSIAN:
        return GaussianRationals()
    if spec.scalar is ScalarKind.PRIME_FIELD:
        return PrimeField(spec.modulus)
    return ModularIntegers(spec.modulus)


def ring_make(spec: RingSpec, cap: int = DEFAULT_ENUM_CAP) -> StarRing:
    """Realize a ring spec; raises InvalidRingSpec with the reason on bad combinations."""
    spec.validate()
    if spec.scalar is ScalarKind.PRIME_FIELD and not is_prime(spec.modulus):
        raise InvalidRingSpec(f'GF{spec.modulus}: {spec.modulus} is not prime')
    domain = _domain_for(spec)
    if spec.kind is RingKind.MODULAR:
        return ModularRing(spec, domain, cap)
    return MatrixRing(spec, domain, cap)


def star(a: Element) -> Element:
    return a.ring.star(a)


def commutator(a: Element, b: Element) -> Element:
    return a * b - b * a


def _search_one_sided(a: Element, left: bool) -> Optional[Element]:
    one = a.ring.one
    for x in a.ring.elements():
        if (x * a if left else a * x) == one:
            return x
    return None


def classify(a: Element) -> ElementClass:
    ring = a.ring
    hermitian = a.star == a
    idempotent = a * a == a
    inverse = ring.inverse(a)
    if ring.is_finite:
        left = _search_one_sided(a, left=True)
        right = _search_one_sided(a, left=False)
    else:
        # square matrices over a field: one-sided inverses are two-sided
        left = right = inverse
    return ElementClass(
        hermitian=hermitian,
        idempotent=idempotent,
        projection=hermitian and idempotent,
        unit=inverse is not None,
        left_invertible=left is not None,
        right_invertible=right is not None,
        inverse=inverse,
        left_inverse=left,
        right_inverse=right,
    )


# ========================================
# Principal ideals and annihilators
# ========================================

def _resolve_method(ring: StarRing, method: str) -> str:
    if method == 'auto':
        return 'linear' if ring.has_linear_algebra else 'enumerate'
    if method == 'linear' and not ring.has_linear_algebra:
        raise UnsupportedPath(f'{ring.spec} has no field structure for linear subsets')
    return method


def _enumerated(kind: SubsetKind, a: Element) -> frozenset:
    return a.ring.remember(('enumerated', kind, a), lambda: _enumerate_subset(kind, a))


def _enumerate_subset(kind: SubsetKind, a: Element) -> frozenset:
    ring = a.ring
    if kind is SubsetKind.RIGHT_IDEAL:
        return frozenset(a * x for x in ring.elements())
    if kind is SubsetKind.LEFT_IDEAL:
        return frozenset(x * a for x in ring.elements())
    if kind is SubsetKind.LEFT_ANNIHILATOR:
        return frozenset(x for x in ring.elements() if (x * a).is_zero)
    return frozenset(x for x in ring.elements() if (a * x).is_zero)


def _linear_basis(kind: SubsetKind, a: Element) -> Tuple[Tuple[Any, ...], ...]:
    return a.ring.remember(('basis', kind, a), lambda: _reduced_basis(kind, a))


def _reduced_basis(kind: SubsetKind, a: Element) -> Tuple[Tuple[Any, ...], ...]:
    dom = a.ring.domain
    m = a.payload
    if kind is SubsetKind.RIGHT_IDEAL:
        spanning = linalg.transpose(m)          # columns of a
    elif kind is SubsetKind.LEFT_IDEAL:
        spanning = m                            # rows of a
    elif kind is SubsetKind.RIGHT_ANNIHILATOR:
        spanning = linalg.nullspace(m, dom)     # columns v with a v = 0
    else:
        spanning = linalg.nullspace(linalg.transpose(m), dom)  # rows y with y a = 0
    return linalg.row_basis(spanning, dom)


def subset_handle(kind: SubsetKind, a: Element, method: str = 'auto') -> SubsetHandle:
    """aR, Ra, °a or a° realized by enumeration or by a reduced basis.

    A right-type subset of a matrix ring is the set of matrices whose columns
    lie in a fixed subspace; a left-type subset constrains the rows instead.
    """
    kind = SubsetKind(kind)
    method = _resolve_method(a.ring, method)
    if method == 'linear':
        return SubsetHandle(kind, a, basis=_linear_basis(kind, a))
    return SubsetHandle(kind, a, members=_enumerated(kind, a))


def subset_included(s: SubsetHandle, t: SubsetHandle) -> bool:
    if s.kind.side != t.kind.side:
        raise IncompatibleSubsets(
            f'{s.kind.value} is a {s.kind.side} ideal and {t.kind.value} '
            f'is a {t.kind.side} ideal'
        )
    if s.generator.ring != t.generator.ring:
        raise IncompatibleSubsets('subsets of different rings')
    if s.basis is not None and t.basis is not None:
        return linalg.span_contains(t.basis, s.basis, s.generator.ring.domain)
    s_members = s.members if s.members is not None else _enumerated(s.kind, s.generator)
    t_members = t.members if t.members is not None else _enumerated(t.kind, t.generator)
    return s_members <= t_members


def subset_equal(s: SubsetHandle, t: SubsetHandle) -> bool:
    return subset_included(s, t) and subset_included(t, s)


def ring_summary(ring: StarRing) -> Dict[str, Any]:
    return {
        'ring': ring.spec.label,
        'size': ring.size,
        'commutative': ring.is_commutative,
        'prime': ring.is_prime,
        'semiprime': ring.is_semiprime,
    }
