import pytest
from hypothesis import given, strategies as st

from jordouble.catalog import pivot_v
from jordouble.doubles import (JordanDouble, KantorDouble, PlusAlgebra, TrivialPoisson, WreathProduct,
                               d_map, hamiltonian, kantor_of_tensor_to_wreath, poisson_tensor)
from jordouble.generate import generate_lie
from jordouble.grassmann import Grassmann
from jordouble.identities import (Exhaustive, Sampled, check_jordan_super, check_leibniz, check_super_jacobi,
                                  check_supercommutative)
from jordouble.operators import OperatorAlgebra

H1, H2 = hamiltonian(1), hamiltonian(2)


def test_hamiltonian_pairing():
    lam = H1.carrier
    x, y = lam.gen("x1"), lam.gen("y1")
    assert H1.bracket(x, y) == lam.one()
    assert H1.bracket(x, x) == 0


@pytest.mark.parametrize("H", [H1, H2], ids=["H1", "H2"])
def test_hamiltonian_is_poisson(H):
    strat = Exhaustive() if H is H1 else Sampled(400, 3)
    assert check_leibniz(H, strategy=strat).holds
    assert check_super_jacobi(H.bracket, H.basis(), strat).holds


def test_kantor_case_table_h1():
    K = KantorDouble(H1)
    lam = H1.carrier
    x, y = lam.gen("x1"), lam.gen("y1")
    # abar . bbar = (-1)^{|b|} {a, b}
    assert K.mul(K.lift(x, 1), K.lift(y, 1)) == K.lift(-H1.bracket(x, y))
    # a . bbar = (ab)bar
    assert K.mul(K.lift(x), K.lift(y, 1)) == K.lift(x * y, 1)
    # abar . b = (-1)^{|b|} (ab)bar
    assert K.mul(K.lift(x, 1), K.lift(y)) == K.lift(-(x * y), 1)


def test_kantor_h2_is_jordan_super():
    K = KantorDouble(H2)
    assert check_supercommutative(K.mul, K.basis()).holds
    assert check_jordan_super(K.mul, K.basis(), Sampled(200, 11)).holds


def _jor_r(convention, N=10, D=6):
    E = OperatorAlgebra(N)
    b = generate_lie([pivot_v(0, N, algebra=E), pivot_v(1, N, algebra=E)], D, N=N)
    J = JordanDouble(E, convention=convention)
    pool = [J.one(), J.onebar()] + [f(e) for e in b.elements() for f in (J.embed, J.bar)]
    return J, pool


def test_jordan_double_kantor_signs_hold():
    J, pool = _jor_r("kantor")
    assert check_supercommutative(J.mul, pool).holds
    assert check_jordan_super(J.mul, pool, Sampled(150, 5)).holds


def test_literal_sign_table_breaks_supercommutativity():
    J, pool = _jor_r("literal")
    rep = check_supercommutative(J.mul, pool)
    assert not rep.holds and rep.violations


def test_jordan_double_matches_kantor_of_trivial_poisson():
    J, pool = _jor_r("kantor", N=8, D=4)
    K = KantorDouble(J.P)
    for u in pool:
        for v in pool:
            assert J.mul(u, v) == kantor_mul_via(K, u, v)


def kantor_mul_via(K, u, v):
    ku = K.lift(K.part(u, 0)) + K.lift(K.part(u, 1), 1)
    kv = K.lift(K.part(v, 0)) + K.lift(K.part(v, 1), 1)
    r = K.mul(ku, kv)
    return u.parent.element(r.terms)


def test_jordan_double_unit_and_case_table():
    J, pool = _jor_r("kantor", N=8, D=3)
    one, ob = J.one(), J.onebar()
    v0 = pool[2]
    assert J.mul(one, v0) == v0 == J.mul(v0, one)
    assert J.mul(v0, ob) == J.bar(J.part(v0, 0).parent.split(J.part(v0, 0))[1])
    assert J.mul(ob, ob) == 0


def test_d_map_is_odd_superderivation_with_square_zero():
    K = KantorDouble(H1)
    for u in K.basis():
        assert d_map(d_map(u)) == 0
        for v in K.basis():
            s = 1 if u.parity == 0 else -1
            assert d_map(K.mul(u, v)) == K.mul(d_map(u), v) + K.mul(u, d_map(v)).scale(s)


def test_wreath_agrees_with_kantor_of_tensor():
    P1 = hamiltonian(1)
    T = poisson_tensor(H1, P1)
    KT = KantorDouble(T)
    W = WreathProduct(H1, KantorDouble(P1))
    for u in KT.basis():
        for v in KT.basis():
            lhs = kantor_of_tensor_to_wreath(KT.mul(u, v), W)
            rhs = W.mul(kantor_of_tensor_to_wreath(u, W), kantor_of_tensor_to_wreath(v, W))
            assert lhs == rhs


def test_wreath_needs_d_map():
    with pytest.raises(TypeError):
        WreathProduct(H1, Grassmann(1))


def test_plus_algebra_is_jordan():
    lam = Grassmann(3)
    A = PlusAlgebra(lam)
    basis = [A.embed(b) for b in lam.basis()]
    assert check_jordan_super(A.mul, basis, Sampled(100, 2)).holds


def test_tables_materialize_small_poisson():
    dot, br = H1.tables()
    assert len(dot.basis()) == 4
    prods = {(p["left"], p["right"]): p["result"] for p in br.to_json()["products"]}
    assert prods[("x1^", "y1^")] == {"1": "1"}
    # table algebra reproduces the bracket it was built from
    x, y = br.gen("x1^"), br.gen("y1^")
    assert br.mul(x, y) == br.gen("1")


@given(st.lists(st.sampled_from(range(8)), min_size=2, max_size=2), st.integers(-3, 3))
def test_trivial_poisson_bracket_with_unit_vanishes(idx, c):
    E = OperatorAlgebra(4)
    P = TrivialPoisson(E)
    el = P.embed(E.element({(idx[0], 1 << (idx[1] % 4)): 1}).scale(c))
    assert P.bracket(P.one(), el) == 0


K2 = KantorDouble(H2)
_K2_BY_PARITY = {p: [b for b in K2.basis() if b.parity == p] for p in (0, 1)}


@st.composite
def homogeneous_k2(draw):
    p = draw(st.sampled_from((0, 1)))
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(_K2_BY_PARITY[p]), max_size=len(_K2_BY_PARITY[p])))
    out = K2.zero()
    for c, b in zip(coeffs, _K2_BY_PARITY[p]):
        out = out + b.scale(c)
    return out if out else _K2_BY_PARITY[p][0]


@given(homogeneous_k2(), homogeneous_k2(), homogeneous_k2(), homogeneous_k2())
def test_kan_h2_jordan_identity_property(a, b, c, d):
    from jordouble.identities import jordan_defect
    s = -1 if a.parity and b.parity else 1
    assert K2.mul(a, b) == K2.mul(b, a).scale(s)
    assert not jordan_defect(K2.mul, a, b, c, d)
