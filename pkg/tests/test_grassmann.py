import itertools

import pytest
from hypothesis import given, strategies as st

from jordouble.field import GF, QQ
from jordouble.grassmann import Grassmann, SuperTensor, VarTable, bits, merge_sign, mono_mul, partial


def perm_sign(seq):
    """Oracle: sign of the sorting permutation by counting inversions."""
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


masks = st.integers(min_value=0, max_value=(1 << 10) - 1)


@given(masks, masks)
def test_mono_mul_matches_permutation_parity(a, b):
    r = mono_mul(a, b)
    if a & b:
        assert r is None
        return
    sign, prod = r
    assert prod == a | b
    assert sign == perm_sign(list(bits(a)) + list(bits(b)))


def test_merge_sign_small_cases():
    assert merge_sign(0b10, 0b01) == -1  # x1 x0 = -x0 x1
    assert merge_sign(0b01, 0b10) == 1


def elems(lam):
    coeff = st.integers(-3, 3)
    mono = st.integers(0, (1 << lam.N) - 1)
    return st.dictionaries(mono, coeff, max_size=4).map(lambda d: lam.element(d, clean=True))


LAM = Grassmann(5)


@given(elems(LAM), elems(LAM), elems(LAM))
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elems(LAM), elems(LAM))
def test_supercommutative(a, b):
    for x in a.homogeneous_parts():
        for y in b.homogeneous_parts():
            if x and y:
                s = -1 if x.parity and y.parity else 1
                assert x * y == (y * x).scale(s)


@given(st.integers(0, 4), elems(LAM), elems(LAM))
def test_partial_is_odd_superderivation(i, a, b):
    for x in a.homogeneous_parts():
        if not x:
            continue
        rhs = partial(i, x) * b + (x * partial(i, b)).scale(-1 if x.parity else 1)
        assert partial(i, x * b) == rhs


def test_generators_square_to_zero_and_anticommute():
    lam = Grassmann(3)
    x0, x1 = lam.gen(0), lam.gen(1)
    assert x0 * x0 == 0
    assert x0 * x1 == -(x1 * x0)


@given(elems(LAM))
def test_parse_roundtrip(a):
    assert LAM.parse(str(a)) == a


def test_parse_reorders_with_sign():
    assert LAM.parse("2 * x3^ x1^") == LAM.monomial([1, 3], -2)


def test_named_families_and_layout():
    vt = VarTable.triples(2)
    assert vt.names == ("x0", "y0", "z0", "x1", "y1", "z1")
    assert vt.at("z", 1) == 5
    h = VarTable.hamiltonian(2)
    assert h.index("y1") == 2


def test_prime_field_coefficients_reduce():
    lam = Grassmann(2, GF(5))
    x = lam.gen(0)
    assert x.scale(5) == 0


def test_restrict_drops_high_variables():
    lam = Grassmann(4)
    e = lam.gen(0) + lam.monomial([1, 3])
    assert lam.restrict(e, 3) == lam.gen(0)


def test_kaplansky_tensor_sign():
    A, B = Grassmann(1), Grassmann(1)
    T = SuperTensor(A, B)
    a, b = A.gen(0), B.gen(0)
    one_b, one_a = B.one(), A.one()
    # (1 (x) b)(a (x) 1) = (-1)^{|b||a|} a (x) b
    assert T.pure(one_a, b) * T.pure(a, one_b) == -T.pure(a, b)
