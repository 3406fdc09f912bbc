from fractions import Fraction

import pytest

from app.models import ElementParseError
from app.services import linalg
from app.services.scalars import (
    GaussianRational,
    GaussianRationals,
    ModularIntegers,
    PrimeField,
    Rationals,
    is_prime,
    is_squarefree,
)

Q = Rationals()


def test_rationals_parse_and_format():
    assert Q.parse('3/6') == Fraction(1, 2)
    assert Q.format(Fraction(-1, 2)) == '-1/2'
    with pytest.raises(ElementParseError):
        Q.parse('1/0')
    with pytest.raises(ElementParseError):
        Q.parse('x')


@pytest.mark.parametrize('text, expected', [
    ('1+2*i', GaussianRational(Fraction(1), Fraction(2))),
    ('1/2-3/4*i', GaussianRational(Fraction(1, 2), Fraction(-3, 4))),
    ('i', GaussianRational(Fraction(0), Fraction(1))),
    ('-i', GaussianRational(Fraction(0), Fraction(-1))),
    ('5', GaussianRational(Fraction(5))),
])
def test_gaussian_parse(text, expected):
    assert GaussianRationals().parse(text) == expected


def test_gaussian_format_reparses():
    dom = GaussianRationals()
    for value in (GaussianRational(Fraction(1, 2), Fraction(-3)),
                  GaussianRational(Fraction(0), Fraction(2)),
                  GaussianRational(Fraction(7))):
        assert dom.parse(dom.format(value)) == value


def test_gaussian_inverse_and_conjugate():
    z = GaussianRational(Fraction(1), Fraction(1))
    assert z * z.inverse() == GaussianRational(Fraction(1))
    assert z.conjugate() == GaussianRational(Fraction(1), Fraction(-1))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(Fraction(0)).inverse()


def test_modular_units():
    z12 = ModularIntegers(12)
    assert z12.parse('-1') == 11
    assert z12.is_unit(5) and not z12.is_unit(4)
    assert z12.inv(5) == 5
    with pytest.raises(ZeroDivisionError):
        z12.inv(6)
    assert z12.size() == 12


def test_prime_and_squarefree():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert is_squarefree(6) and is_squarefree(30)
    assert not is_squarefree(12) and not is_squarefree(4)


def _m(*rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def test_rank_and_rref():
    a = _m((1, 2, 3), (2, 4, 6), (1, 0, 1))
    assert linalg.rank(a, Q) == 2
    reduced, pivots = linalg.rref(a, Q)
    assert pivots == (0, 1)
    assert reduced[2] == (0, 0, 0)


def test_inverse_and_determinant():
    a = _m((2, 1), (1, 1))
    inv = linalg.inverse(a, Q)
    assert linalg.mat_mul(a, inv, Q) == linalg.identity(2, Q)
    assert linalg.determinant(a, Q) == 1
    assert linalg.inverse(_m((1, 2), (2, 4)), Q) is None


def test_adjugate_inverse_over_zmod():
    z6 = ModularIntegers(6)
    a = ((1, 1), (0, 1))
    inv = linalg.adjugate_inverse(a, z6)
    assert linalg.mat_mul(a, inv, z6) == linalg.identity(2, z6)
    # determinant 2 is not a unit mod 6
    assert linalg.adjugate_inverse(((2, 0), (0, 1)), z6) is None


def test_rank_factorization_reconstructs():
    a = _m((1, 2), (2, 4))
    f, g, _ = linalg.rank_factorization(a, Q)
    assert len(f[0]) == 1 and len(g) == 1
    assert linalg.mat_mul(f, g, Q) == a


def test_one_sided_inverses():
    a = _m((1, 2), (2, 4), (0, 1))
    f, g, pivots = linalg.rank_factorization(a, Q)
    left = linalg.left_inverse_full_column(f, Q)
    right = linalg.right_inverse_echelon(g, pivots, Q)
    r = len(g)
    assert linalg.mat_mul(left, f, Q) == linalg.identity(r, Q)
    assert linalg.mat_mul(g, right, Q) == linalg.identity(r, Q)


def test_nullspace_and_span():
    a = _m((1, 1), (1, 1))
    null = linalg.nullspace(a, Q)
    assert len(null) == 1
    assert linalg.is_zero(linalg.mat_mul(a, linalg.transpose(null), Q), Q)
    basis = linalg.row_basis([(Fraction(1), Fraction(1))], Q)
    assert linalg.span_contains(basis, [(Fraction(3), Fraction(3))], Q)
    assert not linalg.span_contains(basis, [(Fraction(1), Fraction(0))], Q)


def test_inverse_over_prime_field():
    gf5 = PrimeField(5)
    a = ((2, 0), (0, 3))
    assert linalg.inverse(a, gf5) == ((3, 0), (0, 2))
    assert linalg.inverse(((1, 2), (2, 4)), gf5) is None


def test_chain_multiplies_left_to_right():
    a = ((Fraction(1), Fraction(2)),)
    b = ((Fraction(3),), (Fraction(4),))
    assert linalg.chain(Q, a, b) == ((Fraction(11),),)
    assert linalg.chain(Q, b, a) == linalg.mat_mul(b, a, Q)
