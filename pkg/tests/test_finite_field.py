import pytest
from hypothesis import given, settings, strategies as st

from conftest import field
from ffdist.finite_field import (FieldCtx, FieldError, _poly_mod, _poly_mul, find_modulus,
                                 is_irreducible, odd_prime_powers, prime_power)

SMALL_Q = [3, 5, 7, 9, 11, 13, 25, 27, 49]
ALL_Q = odd_prime_powers(121)


def test_prime_powers():
    assert ALL_Q[:8] == [3, 5, 7, 9, 11, 13, 17, 19]
    assert 27 in ALL_Q and 81 in ALL_Q and 121 in ALL_Q
    assert 15 not in ALL_Q and 45 not in ALL_Q
    assert prime_power(81) == (3, 4)
    assert prime_power(12) is None


@pytest.mark.parametrize("q", [1, 2, 4, 8, 15, 21, 100])
def test_rejects_non_odd_prime_powers(q):
    with pytest.raises(FieldError, match="odd prime power"):
        FieldCtx(q)


def test_cap(monkeypatch):
    with pytest.raises(FieldError, match="cap"):
        FieldCtx(125)
    monkeypatch.setenv("FFDIST_MAX_Q", "130")
    assert FieldCtx(125).q == 125
    with pytest.raises(FieldError, match="cap"):
        FieldCtx(11, cap=7)


def test_inverse_and_pow_f5():
    F = field(5)
    assert F.inv(2) == 3
    assert F.pow(2, 4) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_f9_modulus_reduction():
    F = field(9)
    assert F.modulus_poly == (1, 0, 1)     # t^2 + 1
    t = F.from_coeffs([0, 1])
    assert F.mul(t, t) == F.from_coeffs([2, 0]) == F.neg(1)
    assert F.coeffs(F.mul(t, t)) == (2, 0)


@pytest.mark.parametrize("p,k", [(3, 2), (3, 3), (3, 4), (5, 2), (7, 2), (11, 2)])
def test_modulus_irreducible_and_minimal(p, k):
    poly = find_modulus(p, k)
    assert len(poly) == k + 1 and poly[-1] == 1
    # no roots in F_p
    assert all(sum(c * x ** j for j, c in enumerate(poly)) % p for x in range(p))
    assert is_irreducible(list(poly), p)


def test_reducible_polynomials_detected():
    assert not is_irreducible([0, 0, 1], 3)          # t^2
    assert not is_irreducible([2, 0, 1], 3)          # t^2 - 1
    assert not is_irreducible([1, 0, 1], 5)          # t^2 + 1, -1 is a square mod 5
    # (t^2 + 1)^2 over F_3: no roots but a quadratic factor
    assert not is_irreducible(_poly_mul([1, 0, 1], [1, 0, 1], 3), 3)


@pytest.mark.parametrize("q", [9, 27, 25])
def test_mul_table_matches_polynomial_arithmetic(q):
    F = field(q)
    for a in range(q):
        for b in range(q):
            prod = _poly_mod(_poly_mul(list(F.coeffs(a)), list(F.coeffs(b)), F.p),
                             list(F.modulus_poly), F.p)
            prod = prod + [0] * (F.k - len(prod))
            assert F.coeffs(F.mul(a, b)) == tuple(prod)


@pytest.mark.parametrize("q", ALL_Q)
def test_fermat_and_square_count(q):
    F = field(q)
    assert all(F.pow(a, q - 1) == 1 for a in F.nonzero())
    assert all(F.mul(a, F.inv(a)) == 1 for a in F.nonzero())
    nonzero_squares = {F.square(a) for a in F.nonzero()}
    assert len(nonzero_squares) == (q - 1) // 2
    assert sum(F.quadratic_character(a) for a in F.nonzero()) == 0


@pytest.mark.parametrize("q", SMALL_Q)
def test_character_multiplicative(q):
    F = field(q)
    chi = F.quadratic_character
    for a in F.nonzero():
        for b in F.nonzero():
            assert chi(F.mul(a, b)) == chi(a) * chi(b)


def test_character_examples():
    assert field(3).quadratic_character(2) == -1
    assert field(5).quadratic_character(4) == 1
    for q in SMALL_Q:
        assert field(q).quadratic_character(0) == 0


@pytest.mark.parametrize("q", SMALL_Q + [81, 121])
def test_trace_linear_and_nontrivial(q):
    F = field(q)
    tr = F.trace
    assert tr(0) == 0
    assert any(tr(a) for a in F.enumerate())
    for a in range(0, q, max(1, q // 9)):
        for b in range(q):
            assert tr(F.add(a, b)) == (tr(a) + tr(b)) % F.p
        for c in range(F.p):
            assert tr(F.mul(c, a)) == (c * tr(a)) % F.p


def test_trace_examples():
    F = field(7)
    assert [F.trace(a) for a in range(7)] == list(range(7))
    F9 = field(9)
    assert F9.trace(F9.from_coeffs([0, 1])) == 0     # t + t^3 = t - t


def test_enumerate():
    assert field(3).enumerate() == [0, 1, 2]
    e9 = field(9).enumerate()
    assert len(e9) == len(set(e9)) == 9
    assert field(7).enumerate()[0] == 0
    assert [field(9).coeffs(a) for a in e9[:4]] == [(0, 0), (1, 0), (2, 0), (0, 1)]


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from(SMALL_Q), data=st.data())
def test_field_axioms(q, data):
    F = field(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if a:
        assert F.mul(F.mul(a, b), F.inv(a)) == b
        assert F.pow(a, -1) == F.inv(a)


def test_format():
    F = field(9)
    assert F.format(0) == "0"
    assert F.format(F.from_coeffs([2, 1])) == "2+t"
    with pytest.raises(FieldError):
        F.from_coeffs([3, 0])
