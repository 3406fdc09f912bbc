"""Exact scalar domains used as matrix entries.

Every domain works on canonical raw values (``Fraction``, ``GaussianRational``
or residues in ``[0, n)``) so that equality of canonical forms is equality of
ring elements.
"""

import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Optional

from app.models import ElementParseError


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, other: 'GaussianRational') -> 'GaussianRational':
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: 'GaussianRational') -> 'GaussianRational':
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: 'GaussianRational') -> 'GaussianRational':
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> 'GaussianRational':
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError('gaussian rational zero has no inverse')
        return GaussianRational(self.re / norm, -self.im / norm)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)


class ScalarDomain(ABC):
    """Arithmetic on canonical raw scalars."""

    name: str = ''
    is_field: bool = False
    is_finite: bool = False

    @abstractmethod
    def canonical(self, value: Any) -> Any:
        pass

    def from_int(self, value: int) -> Any:
        return self.canonical(value)

    @property
    def zero(self) -> Any:
        return self.from_int(0)

    @property
    def one(self) -> Any:
        return self.from_int(1)

    @abstractmethod
    def add(self, x: Any, y: Any) -> Any:
        pass

    @abstractmethod
    def sub(self, x: Any, y: Any) -> Any:
        pass

    @abstractmethod
    def mul(self, x: Any, y: Any) -> Any:
        pass

    def neg(self, x: Any) -> Any:
        return self.sub(self.zero, x)

    def conj(self, x: Any) -> Any:
        return x

    @abstractmethod
    def is_unit(self, x: Any) -> bool:
        pass

    @abstractmethod
    def inv(self, x: Any) -> Any:
        """Multiplicative inverse; raises ZeroDivisionError for non-units."""

    def is_zero(self, x: Any) -> bool:
        return x == self.zero

    def size(self) -> Optional[int]:
        return None

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError(f'{self.name} is infinite')

    @abstractmethod
    def parse(self, text: str) -> Any:
        pass

    @abstractmethod
    def format(self, x: Any) -> str:
        pass

    @abstractmethod
    def random(self, rng: random.Random, spread: int = 3) -> Any:
        pass


class Rationals(ScalarDomain):
    name = 'Q'
    is_field = True

    def canonical(self, value):
        return Fraction(value)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError('zero has no inverse')
        return 1 / x

    def parse(self, text):
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ElementParseError(f'not a rational number: {text!r}') from exc

    def format(self, x):
        return str(x)

    def random(self, rng, spread=3):
        return Fraction(rng.randint(-spread, spread))


class GaussianRationals(ScalarDomain):
    name = 'Qi'
    is_field = True

    def canonical(self, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError('floating point complex numbers are not exact')
        return GaussianRational(Fraction(value))

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def conj(self, x):
        return x.conjugate()

    def is_unit(self, x):
        return bool(x)

    def inv(self, x):
        return x.inverse()

    def parse(self, text):
        compact = str(text).replace(' ', '')
        try:
            if not compact.endswith('i'):
                return GaussianRational(Fraction(compact))
            body = compact[:-1].rstrip('*')
            split = max(body.rfind('+'), body.rfind('-'))
            if split <= 0:
                real, imag = '0', body
            else:
                real, imag = body[:split], body[split:]
            if imag in ('', '+', '-'):
                imag += '1'
            return GaussianRational(Fraction(real), Fraction(imag))
        except (ValueError, ZeroDivisionError) as exc:
            raise ElementParseError(
                f'not a gaussian rational (expected a+b*i): {text!r}'
            ) from exc

    def format(self, x):
        if x.im == 0:
            return str(x.re)
        if x.re == 0:
            return f'{x.im}*i'
        sign = '+' if x.im > 0 else '-'
        return f'{x.re}{sign}{abs(x.im)}*i'

    def random(self, rng, spread=3):
        return GaussianRational(
            Fraction(rng.randint(-spread, spread)),
            Fraction(rng.randint(-1, 1)),
        )


class ModularIntegers(ScalarDomain):
    """Residues modulo n in ``[0, n)``; a field only through PrimeField."""

    is_finite = True

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.name = f'Zmod{modulus}'

    def canonical(self, value):
        return int(value) % self.modulus

    def add(self, x, y):
        return (x + y) % self.modulus

    def sub(self, x, y):
        return (x - y) % self.modulus

    def mul(self, x, y):
        return (x * y) % self.modulus

    def neg(self, x):
        return (-x) % self.modulus

    def is_unit(self, x):
        return math.gcd(x, self.modulus) == 1

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f'{x} is not a unit modulo {self.modulus}')
        return pow(x, -1, self.modulus)

    def size(self):
        return self.modulus

    def elements(self):
        return iter(range(self.modulus))

    def parse(self, text):
        try:
            return int(str(text).strip()) % self.modulus
        except ValueError as exc:
            raise ElementParseError(f'not an integer residue: {text!r}') from exc

    def format(self, x):
        return str(x)

    def random(self, rng, spread=3):
        return rng.randrange(self.modulus)


class PrimeField(ModularIntegers):
    is_field = True

    def __init__(self, p: int):
        super().__init__(p)
        self.name = f'GF{p}'


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def is_squarefree(n: int) -> bool:
    return all(n % (d * d) for d in range(2, math.isqrt(n) + 1))


