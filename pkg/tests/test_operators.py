import pytest
from hypothesis import given, strategies as st

from jordouble.catalog import pivot_v
from jordouble.generate import generate_lie
from jordouble.grassmann import Grassmann, bits, partial
from jordouble.operators import (Inconclusive, OperatorAlgebra, SuperDerivation, ad_nil_index, apply,
                                 compose, derivation_to_operator, operator_to_derivation,
                                 supercommutator_op)

N = 3
E = OperatorAlgebra(N)
LAM = E.grassmann


def act(op, f):
    """Oracle: act term by term with Grassmann partials and left multiplication only."""
    out = LAM.zero()
    for (S, T), c in op.terms.items():
        g = f
        for i in sorted(bits(T), reverse=True):
            g = partial(i, g)
        out = out + (LAM.element({S: 1}) * g).scale(c)
    return out


def matrix(op):
    return [[act(op, LAM.element({m: 1})).terms.get(r, 0) for m in range(1 << N)] for r in range(1 << N)]


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


keys = st.tuples(st.integers(0, (1 << N) - 1), st.integers(0, (1 << N) - 1))
ops = st.dictionaries(keys, st.integers(-2, 2), max_size=3).map(lambda d: E.element(d, clean=True))


@given(ops, ops)
def test_compose_matches_dense_matrix_product(a, b):
    assert matrix(compose(a, b)) == matmul(matrix(a), matrix(b))


@given(ops, st.dictionaries(st.integers(0, (1 << N) - 1), st.integers(-2, 2), max_size=3))
def test_apply_matches_oracle(a, f):
    g = LAM.element(f, clean=True)
    assert apply(a, g) == act(a, g)


def test_operator_algebra_is_faithful_dimension():
    # End(Lambda(N)) has dimension 4^N and x_S d_T span it
    mats = {tuple(map(tuple, matrix(E.element({(S, T): 1})))) for S in range(8) for T in range(8)}
    assert len(mats) == 64


def test_canonical_relations():
    x0, d0, d1 = E.x(0), E.d(0), E.d(1)
    assert d0 * x0 + x0 * d0 == E.identity()
    assert d0 * d1 == -(d1 * d0)
    assert d0 * d0 == 0


@given(ops, ops)
def test_fast_derivation_bracket_agrees_with_compose(a, b):
    # restrict to derivation form x_S d_i; the fast path must equal the generic supercommutator
    da = E.element({k: c for k, c in a.terms.items() if bin(k[1]).count("1") == 1})
    db = E.element({k: c for k, c in b.terms.items() if bin(k[1]).count("1") == 1})
    for x in da.homogeneous_parts():
        for y in db.homogeneous_parts():
            if x and y:
                s = -1 if x.parity and y.parity else 1
                assert supercommutator_op(x, y) == x * y - (y * x).scale(s)


def test_derivation_roundtrip():
    v = pivot_v(0, 6)
    d = operator_to_derivation(v)
    assert d.parity == 1
    assert derivation_to_operator(d, v.parent) == v
    with pytest.raises(ValueError):
        operator_to_derivation(E.d(0) * E.d(1))


def test_superderivation_values():
    lam = Grassmann(3)
    d = SuperDerivation.from_dict(lam, {0: lam.one(), 1: lam.monomial([0, 2])})
    op = derivation_to_operator(d)
    assert apply(op, lam.gen(1)) == lam.monomial([0, 2])


@given(ops)
def test_parse_roundtrip(a):
    assert E.parse(str(a)) == a


def test_ad_nil_index_window():
    N_ = 10
    Ebig = OperatorAlgebra(N_)
    b = generate_lie([pivot_v(0, N_, algebra=Ebig), pivot_v(1, N_, algebra=Ebig)], 6, N=N_)
    r = ad_nil_index(pivot_v(0, N_, algebra=Ebig), b, 3)
    # either an honest index reached inside the window or an inconclusive verdict, never a false claim
    assert isinstance(r, Inconclusive) or 1 <= r <= 3
    assert not Inconclusive("x")
