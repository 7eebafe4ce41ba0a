from jordouble.algebra import TableAlgebra
from jordouble.doubles import KantorDouble, hamiltonian
from jordouble.identities import (Exhaustive, Sampled, auto_strategy, check_jordan_super, check_super_anticomm,
                                  check_super_jacobi, check_supercommutative, jordan_defect, tuples)
from jordouble.suites import Corrupted


def broken_lie():
    # [a,b] = c, [b,c] = a, [c,a] = c: not a Lie algebra
    t = {("a", "b"): {"c": 1}, ("b", "a"): {"c": -1}, ("b", "c"): {"a": 1}, ("c", "b"): {"a": -1},
         ("c", "a"): {"c": 1}, ("a", "c"): {"c": -1}}
    return TableAlgebra("abc", [0, 0, 0], t, label="broken")


def so3():
    t = {("a", "b"): {"c": 1}, ("b", "a"): {"c": -1}, ("b", "c"): {"a": 1}, ("c", "b"): {"a": -1},
         ("c", "a"): {"b": 1}, ("a", "c"): {"b": -1}}
    return TableAlgebra("abc", [0, 0, 0], t, label="so3")


def test_jacobi_holds_on_so3():
    L = so3()
    rep = check_super_jacobi(L.mul, L.basis(), Exhaustive())
    assert rep.holds and rep.tested == 27 and rep.verdict == "holds"


def test_jacobi_detects_broken_table():
    L = broken_lie()
    rep = check_super_jacobi(L.mul, L.basis(), Exhaustive())
    assert not rep.holds and rep.verdict == "counterexample"
    assert rep.violations[0]["args"]


def test_anticomm_detects_symmetric_product():
    L = TableAlgebra("a", [0], {("a", "a"): {"a": 1}})
    assert not check_super_anticomm(L.mul, L.basis(), Exhaustive()).holds


def test_sampling_is_deterministic_and_homogeneous():
    K = KantorDouble(hamiltonian(2))
    s = Sampled(20, 4)
    a = [tuple(map(str, t)) for t in tuples(K.basis(), 3, s)]
    b = [tuple(map(str, t)) for t in tuples(K.basis(), 3, s)]
    assert a == b
    assert all(x.is_homogeneous() for t in tuples(K.basis(), 3, s) for x in t)


def test_non_homogeneous_pool_rejected():
    K = KantorDouble(hamiltonian(1))
    b = K.basis()
    mixed = b[0] + b[1]
    import pytest
    with pytest.raises(ValueError):
        list(tuples([mixed], 2, Exhaustive()))


def test_auto_strategy_switches():
    assert isinstance(auto_strategy(list(range(10)), 3), Exhaustive)
    assert isinstance(auto_strategy(list(range(30)), 3), Sampled)


def test_corrupted_kantor_double_is_caught():
    K = KantorDouble(hamiltonian(1))
    mul = Corrupted(K.mul, K.basis()[1])
    assert not check_supercommutative(mul, K.basis()).holds
    assert not check_jordan_super(mul, K.basis(), Sampled(200, 1)).holds


def test_jordan_defect_zero_for_commutative_associative():
    L = TableAlgebra(["e"], [0], {("e", "e"): {"e": 1}})
    e = L.gen("e")
    assert not jordan_defect(L.mul, e, e, e, e)
