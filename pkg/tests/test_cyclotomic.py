from fractions import Fraction

import pytest

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix, MonomialMatrix, euler_phi, power_table


def test_power_table_reduces_modulo_cyclotomic_polynomial():
    # zeta_3^2 = -1 - zeta_3
    assert power_table(3)[2] == (-1, -1)
    assert euler_phi(12) == 4


def test_sum_of_roots_of_unity_vanishes():
    total = Cyclotomic.zero(5)
    for e in range(5):
        total = total + Cyclotomic.root_of_unity(5, e)
    assert total.is_zero()


def test_mixed_levels_promote_to_lcm():
    i = Cyclotomic.root_of_unity(4)
    w = Cyclotomic.root_of_unity(3)
    product = i * w
    assert product.level == 12
    assert product == Cyclotomic.root_of_unity(12, 7)
    assert product.root_exponent(12) == 7


def test_inverse_and_division():
    x = Cyclotomic.root_of_unity(5) + 2
    assert x * x.inverse() == 1
    assert (x / x) == Cyclotomic.one()
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(7).inverse()


def test_gauss_sum_squares_to_minus_three():
    # g = zeta_3 - zeta_3^2 satisfies g^2 = -3
    g = Cyclotomic.root_of_unity(3) - Cyclotomic.root_of_unity(3, 2)
    assert g * g == -3
    assert (g * g).to_fraction() == Fraction(-3)


def test_conjugate_and_mean_trace():
    z = Cyclotomic.root_of_unity(8)
    assert z * z.conjugate() == 1
    assert Cyclotomic.rational(Fraction(3, 2), 8).mean_trace() == Fraction(3, 2)
    assert z.mean_trace() == 0


def test_rational_values_normalise_to_int():
    value = Cyclotomic.rational(Fraction(4, 2))
    assert value.is_integer()
    assert value.coeffs == (2,)


def test_matrix_determinant_and_inverse():
    z = Cyclotomic.root_of_unity(3)
    one, zero = Cyclotomic.one(3), Cyclotomic.zero(3)
    m = CyclotomicMatrix([[z, one], [zero, z]])
    assert m.det() == z * z
    assert m @ m.inverse() == CyclotomicMatrix.identity(2, 3)
    assert CyclotomicMatrix.scalar(2, z).scalar_value() == z
    assert m.scalar_value() is None


def test_monomial_product_matches_dense():
    a = MonomialMatrix(4, [1, 0, 2], [1, 0, 3])
    b = MonomialMatrix(4, [2, 0, 1], [2, 1, 0])
    assert (a @ b).to_dense() == a.to_dense() @ b.to_dense()
    assert (a @ a.inverse()) == MonomialMatrix.identity(3, 4)


def test_monomial_trace_counts_fixed_columns():
    m = MonomialMatrix(4, [0, 2, 1], [1, 0, 0])
    assert m.trace() == Cyclotomic.root_of_unity(4)


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        MonomialMatrix(2, [0, 0], [0, 0])
