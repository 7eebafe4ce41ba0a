import pytest
from hypothesis import given, strategies as st

from jordouble.catalog import (REGISTRY, build, m11_check, membership, pivot_abc, pivot_square_check,
                               pivot_v, poisson_ABC, q_poisson, recursion_check, shift_tau)
from jordouble.grassmann import VarTable
from jordouble.operators import OperatorAlgebra, apply, operator_to_derivation


def test_pivot_short_truncations():
    E = OperatorAlgebra(2)
    assert pivot_v(0, 2) == E.d(0)
    E4 = OperatorAlgebra(4)
    assert pivot_v(0, 4) == E4.d(0) + E4.x(0) * E4.x(1) * E4.d(2)


def test_pivot_hand_expansion_n8():
    E = OperatorAlgebra(8)
    x, d = E.x, E.d
    want = d(1) + x(1) * x(2) * (d(3) + x(3) * x(4) * (d(5) + x(5) * x(6) * d(7)))
    assert pivot_v(1, 8) == want


def test_pivot_is_odd_derivation():
    v = pivot_v(0, 10, as_derivation=True)
    assert v.parity == 1
    lam = v.grassmann
    assert v.image(2) == lam.monomial([0, 1])


def test_pivot_abc_families():
    E = OperatorAlgebra(VarTable.triples(3))
    lam = E.grassmann
    assert pivot_abc("a", 0, 1) == OperatorAlgebra(VarTable.triples(1)).d(0)
    a0 = pivot_abc("a", 0, 3, algebra=E)
    assert apply(a0, lam.gen("x1")) == lam.monomial([lam.vars.index("y0"), lam.vars.index("x0")])
    b0 = pivot_abc("b", 0, 3, algebra=E)
    assert apply(b0, lam.gen("y1")) == lam.monomial([lam.vars.index("z0"), lam.vars.index("y0")])
    c0 = pivot_abc("c", 0, 3, algebra=E)
    assert apply(c0, lam.gen("z1")) == lam.monomial([lam.vars.index("x0"), lam.vars.index("z0")])
    with pytest.raises(ValueError):
        pivot_abc("d", 0, 3)


def test_poisson_ABC_leading_term_and_bracket():
    H = q_poisson(3)
    lam = H.carrier
    A0 = poisson_ABC("A", 0, 3, H=H)
    assert A0.terms[1 << lam.vars.index("X0")] == 1
    assert H.bracket(lam.gen("X0"), lam.gen("x0")) == lam.one()
    assert H.bracket(A0, lam.gen("x0")) == lam.one()


def test_shift_tau_basic_and_overflow():
    E = OperatorAlgebra(6)
    assert shift_tau(E.d(0)) == E.d(1)
    assert shift_tau(pivot_v(0, 6, algebra=E), target=OperatorAlgebra(7)) == pivot_v(1, 7)
    with pytest.raises(OverflowError):
        shift_tau(E.x(5))


@given(st.integers(0, 3), st.integers(0, 3))
def test_shift_commutes_with_bracket(i, j):
    E, E2 = OperatorAlgebra(8), OperatorAlgebra(10)
    u, v = pivot_v(i, 8, algebra=E), pivot_v(j, 8, algebra=E)
    assert shift_tau(E.bracket(u, v), 2, E2) == E2.bracket(shift_tau(u, 2, E2), shift_tau(v, 2, E2))


def test_shift_families_move_whole_levels():
    E = OperatorAlgebra(VarTable.triples(3))
    assert shift_tau(E.d(E.vars.index("y0"))) == E.d(E.vars.index("y1"))


@pytest.mark.parametrize("which", ["R", "Q", "P"])
def test_recursions(which):
    rep = recursion_check(which)
    assert rep.holds and len(rep.lines) >= 3


def test_pivot_squares():
    assert pivot_square_check(4, 14).holds


def test_m11():
    assert m11_check().holds


def test_x0v1_outside_r_window():
    E = OperatorAlgebra(12)
    b = build("R", 12, 10).basis
    assert not membership(E.x(0) * pivot_v(1, 12, algebra=E), b)
    assert membership(E.bracket(b.generators[0], b.generators[1]), b)


def test_registry_validation():
    assert set(REGISTRY) >= {"R", "AR", "Q", "AQ", "PQ", "H1", "KanH2", "JorR", "JorQ", "M11"}
    with pytest.raises(ValueError):
        build("R", 2, 5)
    with pytest.raises(ValueError):
        build("H1", 4, 2)
    with pytest.raises(KeyError):
        build("S")


def test_finite_builds():
    assert build("H2").basis.total_dims() == [1, 4, 6, 4, 1]
    assert build("KanH1").basis.total_dims() == [1, 3, 3, 1]
    assert build("M11").basis.total_dims() == [0, 2, 2, 0, 0]
