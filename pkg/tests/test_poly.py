from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ktpersist.poly import (
    QQ,
    FieldSpec,
    Polynomial,
    SparsePolyMatrix,
    parse_poly,
    poly_gcd,
    poly_lcm,
)

F = parse_poly


def polys(field=QQ, max_deg=4):
    coeff = st.integers(-5, 5) if field.characteristic == 0 else st.integers(0, field.characteristic - 1)
    return st.dictionaries(st.integers(0, max_deg), coeff, max_size=max_deg + 1).map(
        lambda d: Polynomial(field, d)
    )


def test_gcd_of_monomials_takes_min_exponent():
    assert poly_gcd(F("t^2"), F("t^3")) == F("t^2")
    assert poly_gcd(F("3*t^5"), F("t^4")) == F("t^4")


def test_gcd_with_zero_is_monic():
    f = F("2*t^2 + 4")
    assert poly_gcd(Polynomial.zero(), f) == F("t^2 + 2")
    assert poly_gcd(Polynomial.zero(), Polynomial.zero()).is_zero()


def test_gcd_euclid_by_hand():
    # t^3 - 1 = t (t^2 - 1) + (t - 1); t^2 - 1 = (t + 1)(t - 1)
    assert poly_gcd(F("t^2 - 1"), F("t^3 - 1")) == F("t - 1")


def test_basic_arithmetic():
    assert F("t + 1") * F("t - 1") == F("t^2 - 1")
    assert divmod(F("t^3"), F("t^2")) == (F("t"), Polynomial.zero())
    assert divmod(F("t^3 + 1"), F("t + 1")) == (F("t^2 - t + 1"), Polynomial.zero())


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(F("t"), Polynomial.zero())


def test_zero_polynomial_has_no_coefficients():
    z = F("t - t")
    assert z.is_zero() and z.coeffs == {} and z.degree == float("-inf")


def test_parse_and_print_roundtrip():
    for s in ["t^3 - 2*t + 1/2", "t", "-t^2", "5", "3/4*t^7 + t"]:
        assert F(str(F(s))) == F(s)
    assert str(F("3t^2")) == "3*t^2"


@pytest.mark.parametrize("bad", ["", "t^", "t t", "x^2", "2 3"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        F(bad)


def test_field_spec_parse_and_validation():
    assert FieldSpec.parse("q") == QQ
    assert FieldSpec.parse("p:5").characteristic == 5
    with pytest.raises(ValueError):
        FieldSpec.parse("p:6")
    with pytest.raises(ValueError):
        FieldSpec.parse("r")


def test_prime_field_arithmetic():
    f5 = FieldSpec(5)
    a = Polynomial(f5, {1: 1, 0: 1})
    assert (a**5) == Polynomial(f5, {5: 1, 0: 1})  # frobenius
    assert f5(Fraction(1, 2)) == 3


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(polys(), polys())
def test_divmod_reconstructs(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(polys(max_deg=3), polys(max_deg=3), polys(max_deg=2))
def test_gcd_divides_and_is_greatest(a, b, c):
    # common factor c forced in
    a2, b2 = a * c, b * c
    g = poly_gcd(a2, b2)
    if g.is_zero():
        assert a2.is_zero() and b2.is_zero()
        return
    assert g.lead == 1
    assert g.divides(a2) and g.divides(b2)
    if not c.is_zero():
        assert c.divides(g)


@given(polys(max_deg=3), polys(max_deg=3))
def test_lcm_times_gcd(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert poly_gcd(a, b) * poly_lcm(a, b) == (a * b).monic()


@pytest.mark.parametrize("p", [2, 3, 5, 7, 1000003])
@settings(max_examples=25)
@given(data=st.data())
def test_fermat_in_prime_fields(p, data):
    field = FieldSpec(p)
    x = data.draw(st.integers(0, p - 1))
    assert Polynomial.constant(x, field) ** p == Polynomial.constant(x, field)
    assert pow(x, p, p) == field.reduce(x)


def test_sparse_matrix_product_and_transpose():
    a = SparsePolyMatrix(2, 2, {(0, 0): F("t"), (0, 1): 1, (1, 1): F("t^2")})
    b = SparsePolyMatrix(2, 1, {(0, 0): 1, (1, 0): F("-t")})
    assert (a @ b).entries == {(1, 0): F("-t^3")}
    assert (a @ b).shape == (2, 1)
    assert a.transpose()[1, 0] == Polynomial.one()
    with pytest.raises(IndexError):
        SparsePolyMatrix(1, 1, {(1, 0): 1})
