import pytest
from hypothesis import given, settings, strategies as st

from fqdyn.field import (
    FieldError,
    arith,
    build_field,
    chi_m,
    discrete_log,
    find_nonresidue,
    format_modulus,
    g_of,
    generators,
    is_irreducible,
    parse_modulus,
)

from conftest import field

FIELDS = [(3, 1), (5, 1), (7, 1), (13, 1), (3, 2), (5, 2), (3, 3), (7, 2)]


def test_f13_generator_is_two(f13):
    assert f13.generator == 2
    assert f13.modulus == (0, 1)


def test_f25_modulus():
    F = field(5, 2)
    assert F.q == 25
    assert format_modulus(F.modulus) == "2,0,1"


def test_bad_characteristic():
    with pytest.raises(FieldError):
        build_field(4, 1)
    with pytest.raises(FieldError):
        build_field(2, 3)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        build_field(5, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x - 2)(x + 2)


def test_non_generator_rejected():
    with pytest.raises(FieldError):
        build_field(13, 1, generator=3)  # 3 has order 3


def test_cap():
    with pytest.raises(FieldError):
        build_field(13, 2, cap=100)


def test_arith_examples(f13):
    assert arith(f13, "mul", 2, 2, 2, 2, 2, 2) == 12
    assert arith(f13, "add", 7, 0) == 7
    assert discrete_log(f13, 12) == 6
    assert discrete_log(f13, 1) == 0
    assert discrete_log(f13, 8) == 3


def test_g_and_chi(f13):
    assert g_of(f13, 2) == 2
    assert g_of(f13, 36) == 12
    assert g_of(f13, 1) == 1
    assert chi_m(f13, 2, 8) == -1
    assert chi_m(f13, 2, 4) == 1
    assert chi_m(f13, 5, 0) == 0


def test_nonresidue_choice():
    assert find_nonresidue(field(13)) == 2
    assert find_nonresidue(field(7)) == 3
    assert find_nonresidue(field(5)) == 2


def test_modulus_text_roundtrip():
    assert parse_modulus("2,0,1") == (2, 0, 1)
    assert format_modulus((2, 0, 1)) == "2,0,1"
    with pytest.raises(ValueError):
        parse_modulus("x^2+2")


@pytest.mark.parametrize("p,s", FIELDS)
def test_field_axioms_exhaustive(p, s):
    F = field(p, s)
    q = F.q
    for x in range(1, q):
        assert F.pow(x, q - 1) == 1
        assert F.mul(x, F.inv(x)) == 1
        assert F.add(x, F.neg(x)) == 0
    # the generator has full order and the log table inverts exp
    assert len(generators(F)) > 0
    assert sorted(F.exp.tolist()) == list(range(1, q))
    assert is_irreducible(F.modulus, p)


@settings(max_examples=300)
@given(st.sampled_from(FIELDS), st.data())
def test_ring_identities(ps, data):
    F = field(*ps)
    el = st.integers(0, F.q - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(x, y) == F.add(y, x)
    assert F.mul(x, y) == F.mul(y, x)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.sub(F.add(x, y), y) == x


@settings(max_examples=200)
@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_additive(ps, data):
    # x -> x^p is a field automorphism
    F = field(*ps)
    el = st.integers(0, F.q - 1)
    x, y = data.draw(el), data.draw(el)
    assert F.pow(F.add(x, y), F.p) == F.add(F.pow(x, F.p), F.pow(y, F.p))


@settings(max_examples=200)
@given(st.sampled_from(FIELDS), st.data())
def test_chi_counts(ps, data):
    F = field(*ps)
    m = data.draw(st.integers(1, 40))
    powers = sum(1 for a in range(1, F.q) if chi_m(F, m, a) == 1)
    assert powers == (F.q - 1) // g_of(F, m)
    a = data.draw(st.integers(1, F.q - 1))
    is_power = any(F.pow(x, m) == a for x in range(1, F.q))
    assert (chi_m(F, m, a) == 1) == is_power


def test_sqrt(f13):
    for a in range(1, 13):
        r = f13.sqrt(a)
        if chi_m(f13, 2, a) == 1:
            assert f13.mul(r, r) == a
        else:
            assert r is None
