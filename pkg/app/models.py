"""Domain value types shared by the services, the CLI and the reports."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple


# ========================================
# Exceptions
# ========================================

class EpkitError(Exception):
    """Base class for every error raised by the package."""


class InvalidRingSpec(EpkitError):
    pass


class EnumerationCapExceeded(EpkitError):
    def __init__(self, size: int, cap: int):
        super().__init__(
            f'refusing to enumerate {size} elements (cap is {cap}; '
            'raise it with EPKIT_ENUM_CAP)'
        )
        self.size = size
        self.cap = cap


class ElementParseError(EpkitError):
    pass


class IncompatibleSubsets(EpkitError):
    pass


class PreconditionError(EpkitError):
    pass


class UnsupportedPath(EpkitError):
    pass


class IntegrityFault(EpkitError):
    """Raised when a computation contradicts a uniqueness or consistency fact."""


# ========================================
# Rings and elements
# ========================================

class RingKind(str, Enum):
    MODULAR = 'modular-integers'
    MATRIX = 'matrix-ring'


class ScalarKind(str, Enum):
    RATIONALS = 'rationals'
    GAUSSIAN = 'gaussian-rationals'
    PRIME_FIELD = 'prime-field'
    MODULAR = 'modular-integers'


class Involution(str, Enum):
    IDENTITY = 'identity'
    TRANSPOSE = 'transpose'
    CONJUGATE_TRANSPOSE = 'conjugate-transpose'


@dataclass(frozen=True)
class RingSpec:
    kind: RingKind
    scalar: ScalarKind
    involution: Involution
    modulus: Optional[int] = None  # Zmod:n and the scalar modulus of GF<p>/Zmod<n>
    dim: int = 1

    def validate(self) -> None:
        """Raise InvalidRingSpec when the combination is not a *-ring we realize."""
        if self.dim < 1:
            raise InvalidRingSpec(f'dimension must be >= 1, got {self.dim}')
        if self.scalar in (ScalarKind.PRIME_FIELD, ScalarKind.MODULAR):
            if self.modulus is None or self.modulus < 2:
                raise InvalidRingSpec(f'modulus must be >= 2, got {self.modulus}')
        if self.kind is RingKind.MODULAR:
            if self.scalar is not ScalarKind.MODULAR:
                raise InvalidRingSpec('modular rings use modular-integer scalars')
            if self.involution is not Involution.IDENTITY:
                raise InvalidRingSpec('modular integers only carry the identity involution')
            return
        commutative = self.dim == 1
        if self.involution is Involution.IDENTITY and not commutative:
            raise InvalidRingSpec(
                f'identity involution is not an anti-automorphism of the '
                f'noncommutative ring of {self.dim}x{self.dim} matrices'
            )
        if (self.involution is Involution.CONJUGATE_TRANSPOSE
                and self.scalar is not ScalarKind.GAUSSIAN):
            raise InvalidRingSpec('conjugate-transpose needs gaussian-rational scalars')

    @property
    def label(self) -> str:
        if self.kind is RingKind.MODULAR:
            return f'Zmod:{self.modulus}'
        scalar = {
            ScalarKind.RATIONALS: 'Q',
            ScalarKind.GAUSSIAN: 'Qi',
            ScalarKind.PRIME_FIELD: f'GF{self.modulus}',
            ScalarKind.MODULAR: f'Zmod{self.modulus}',
        }[self.scalar]
        label = f'Mat:{self.dim}:{scalar}'
        default = (Involution.CONJUGATE_TRANSPOSE if self.scalar is ScalarKind.GAUSSIAN
                   else Involution.TRANSPOSE)
        if self.involution is not default:
            label += f'/{self.involution.value}'
        return label

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Element:
    """A ring value. Payload is an int residue or a tuple of row tuples."""

    ring: Any  # app.services.star_ring.StarRing
    payload: Any

    def _coerce(self, other) -> 'Element':
        if isinstance(other, Element):
            if other.ring != self.ring:
                raise ValueError(f'elements of {self.ring.spec} and {other.ring.spec} do not mix')
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return self.ring.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self.ring.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return self.ring.sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        return self.ring.mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        return self.ring.mul(other, self)

    def __neg__(self):
        return self.ring.neg(self)

    def __pow__(self, exponent: int):
        return self.ring.power(self, exponent)

    @property
    def star(self) -> 'Element':
        return self.ring.star(self)

    @property
    def is_zero(self) -> bool:
        return self == self.ring.zero

    def __str__(self) -> str:
        from app.utils.formatting import format_element
        return format_element(self)

    def __repr__(self) -> str:
        return f'<Element {self.ring.spec} {self}>'


@dataclass(frozen=True)
class ElementClass:
    hermitian: bool
    idempotent: bool
    projection: bool
    unit: bool
    left_invertible: bool
    right_invertible: bool
    inverse: Optional[Element] = None
    left_inverse: Optional[Element] = None
    right_inverse: Optional[Element] = None


class SubsetKind(str, Enum):
    RIGHT_IDEAL = 'aR'
    LEFT_IDEAL = 'Ra'
    LEFT_ANNIHILATOR = '°a'
    RIGHT_ANNIHILATOR = 'a°'

    @property
    def side(self) -> str:
        # aR and a° are right ideals, Ra and °a are left ideals
        if self in (SubsetKind.RIGHT_IDEAL, SubsetKind.RIGHT_ANNIHILATOR):
            return 'right'
        return 'left'


@dataclass(frozen=True)
class SubsetHandle:
    kind: SubsetKind
    generator: Element
    members: Optional[frozenset] = None
    # Reduced echelon rows spanning the column (right-type) or row (left-type)
    # space every matrix of the subset draws from.
    basis: Optional[Tuple[Tuple[Any, ...], ...]] = None

    @property
    def size(self) -> Optional[int]:
        return len(self.members) if self.members is not None else None


# ========================================
# Generalized inverses
# ========================================

class InverseKind(str, Enum):
    ONE = 'one'
    MP = 'mp'
    GROUP = 'group'
    CORE = 'core'
    DUAL_CORE = 'dual-core'


@dataclass(frozen=True)
class Certificate:
    equation: str
    holds: bool


@dataclass
class InverseBundle:
    element: Element
    one_inverse: Optional[Element] = None
    mp: Optional[Element] = None
    group: Optional[Element] = None
    core: Optional[Element] = None
    dual_core: Optional[Element] = None
    certificates: Dict[InverseKind, Tuple[Certificate, ...]] = field(default_factory=dict)
    reasons: Dict[InverseKind, str] = field(default_factory=dict)

    def get(self, kind: InverseKind) -> Optional[Element]:
        return {
            InverseKind.ONE: self.one_inverse,
            InverseKind.MP: self.mp,
            InverseKind.GROUP: self.group,
            InverseKind.CORE: self.core,
            InverseKind.DUAL_CORE: self.dual_core,
        }[kind]

    @property
    def certified(self) -> bool:
        return all(cert.holds for certs in self.certificates.values() for cert in certs)


class DecompositionKind(str, Enum):
    GROUP = 'group'
    EP = 'ep'
    CORE = 'core'


@dataclass(frozen=True)
class Decomposition:
    kind: DecompositionKind
    p: Element
    inverse_witness: Element
    certificates: Tuple[Certificate, ...] = ()

    @property
    def holds(self) -> bool:
        return all(cert.holds for cert in self.certificates)


# ========================================
# EP characterizations
# ========================================

class Provenance(str, Enum):
    DIRECT = 'direct'            # evaluated identity or inclusion
    EXHAUSTIVE = 'exhaustive'    # witness search over the whole ring
    CONSTRUCTIVE = 'constructive'  # closed-form witness certified
    DERIVED = 'derived'          # no independent decision; value follows the theorem


@dataclass(frozen=True)
class Verdict:
    value: Optional[bool]
    witness: Optional[Element] = None
    provenance: Provenance = Provenance.DIRECT
    note: str = ''

    @property
    def applicable(self) -> bool:
        return self.value is not None


INAPPLICABLE = Verdict(None)


@dataclass(frozen=True, order=True)
class CharacterizationId:
    name: str
    variant: Optional[int] = None

    def __str__(self) -> str:
        if self.variant is None:
            return self.name
        return f'{self.name}:{self.variant}'

    @classmethod
    def parse(cls, text: str) -> 'CharacterizationId':
        name, _, variant = text.strip().partition(':')
        return cls(name, int(variant) if variant else None)


@dataclass
class EpVerdict:
    element: Element
    baseline: bool
    verdicts: Dict[CharacterizationId, Verdict] = field(default_factory=dict)

    @property
    def consensus(self) -> bool:
        return self.baseline

    def disagreements(self) -> List[CharacterizationId]:
        return [
            cid for cid, verdict in sorted(self.verdicts.items())
            if verdict.applicable and verdict.value != self.baseline
        ]


@dataclass(frozen=True)
class SolutionSetSpec:
    family: str
    element: Element
    anchor: Element
    projector: Element
    free_side: str
    generator: Callable[[Element], Element] = field(compare=False, repr=False)
    membership: Callable[[Element], bool] = field(compare=False, repr=False)

    def generate(self) -> Iterator[Element]:
        """Yield the parameterized set, one member per ring element used as parameter."""
        for parameter in self.element.ring.elements():
            yield self.generator(parameter)

    def contains(self, x: Element) -> bool:
        return self.membership(x)

    def defining_set(self) -> frozenset:
        return frozenset(x for x in self.element.ring.elements() if self.membership(x))

    def parameterized_set(self) -> frozenset:
        return frozenset(self.generate())


# ========================================
# Verification reports
# ========================================

@dataclass(frozen=True)
class Corpus:
    source: str  # exhaustive | random | explicit
    ring_spec: RingSpec
    elements: Tuple[Element, ...]
    seed: Optional[int] = None
    count: int = 0
    constructions: Tuple[str, ...] = ()

    @property
    def descriptor(self) -> Dict[str, Any]:
        mix: Dict[str, int] = {}
        for label in self.constructions:
            mix[label] = mix.get(label, 0) + 1
        return {
            'source': self.source,
            'ring': self.ring_spec.label,
            'seed': self.seed,
            'count': len(self.elements),
            'constructions': dict(sorted(mix.items())),
        }


@dataclass
class Tally:
    agree: int = 0
    disagree: int = 0
    inapplicable: int = 0
    derived: int = 0

    def merge(self, other: 'Tally') -> 'Tally':
        return Tally(
            self.agree + other.agree,
            self.disagree + other.disagree,
            self.inapplicable + other.inapplicable,
            self.derived + other.derived,
        )


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def merge(self, other: 'CheckTally') -> 'CheckTally':
        return CheckTally(
            self.passed + other.passed,
            self.failed + other.failed,
            self.skipped + other.skipped,
        )


@dataclass(frozen=True, order=True)
class Counterexample:
    index: int
    characterization: str
    element: str
    expected: str
    got: str


@dataclass
class TheoremReport:
    suite: str
    corpus: Dict[str, Any]
    tallies: Dict[str, Tally] = field(default_factory=dict)
    checks: Dict[str, CheckTally] = field(default_factory=dict)
    counterexamples: List[Counterexample] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def disagreements(self) -> int:
        return (sum(t.disagree for t in self.tallies.values())
                + sum(c.failed for c in self.checks.values()))

    @property
    def ok(self) -> bool:
        return self.disagreements == 0


@dataclass(frozen=True)
class UnitConstruction:
    u: Element
    u_inverse: Element
    target: str
    certificates: Tuple[Certificate, ...] = ()

    @property
    def check(self) -> bool:
        return all(cert.holds for cert in self.certificates)


@dataclass(frozen=True)
class SingletonClaim:
    element: Element
    family: str
    size: int
    expected_singleton: bool

    @property
    def holds(self) -> bool:
        return (self.size == 1) == self.expected_singleton
