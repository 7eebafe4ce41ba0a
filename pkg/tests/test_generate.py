import json

import pytest
from hypothesis import given, settings, strategies as st

from jordouble.catalog import pivot_v
from jordouble.field import GF
from jordouble.generate import (GradedBasis, dimension_table, generate_assoc, generate_lie, generate_poisson,
                                growth_function, periodicity_probe)
from jordouble.doubles import hamiltonian
from jordouble.linalg import rank
from jordouble.operators import OperatorAlgebra

R_DIMS_20 = [0, 2, 3, 2, 3, 4, 4, 3, 2, 3, 3, 2, 3, 3, 2, 3, 4, 4, 3, 2, 3]


def pivots(N, field=None):
    E = OperatorAlgebra(N) if field is None else OperatorAlgebra(N, field)
    return E, [pivot_v(0, N, algebra=E), pivot_v(1, N, algebra=E)]


def naive_lie_dims(gens, D, bracket):
    """Oracle: span all brackets of all pairs of words, level by level, rank by dense-free rank()."""
    levels = {1: list(gens)}
    for n in range(2, D + 1):
        levels[n] = [bracket(a, b) for i in range(1, n) for a in levels[i] for b in levels[n - i]]
        levels[n] = [e for e in levels[n] if e]
    field = gens[0].parent.field
    return [0] + [rank([e.terms for e in levels[n]], field) for n in range(1, D + 1)]


def test_r_dims_match_naive_closure():
    E, g = pivots(10)
    b = generate_lie(g, 6, N=10)
    assert b.total_dims() == naive_lie_dims(g, 6, E.bracket)


def test_r_dims_golden():
    _, g = pivots(24)
    assert generate_lie(g, 20, N=24).total_dims() == R_DIMS_20


def test_r_dims_same_over_f7():
    _, g = pivots(16, GF(7))
    assert generate_lie(g, 12, N=16).total_dims() == R_DIMS_20[:13]


def test_reliability_flags_are_honest():
    small = generate_lie(pivots(6)[1], 16, N=6)
    big = generate_lie(pivots(24)[1], 16, N=24)
    for m, ok in small.reliable.items():
        if ok:
            assert len(small.components[m]) == len(big.components.get(m, []))
    assert small.reliable_through() < 16 == big.reliable_through()


def test_workers_do_not_change_result():
    _, g = pivots(12)
    assert generate_lie(g, 10, N=12, workers=2).dumps() == generate_lie(g, 10, N=12).dumps()


def test_json_roundtrip():
    E, g = pivots(8)
    b = generate_lie(g, 6, N=8, label="R")
    b2 = GradedBasis.from_json(json.loads(b.dumps()), E)
    assert b2.dumps() == b.dumps()


def test_component_elements_are_multihomogeneous_echelon():
    E, g = pivots(12)
    b = generate_lie(g, 8, N=12)
    pivots_seen = set()
    for m, elems in b.components.items():
        for e in elems:
            lead = min(e.terms, key=E.sort_key)
            assert e.terms[lead] == 1
            assert lead not in pivots_seen
            pivots_seen.add(lead)


def test_bad_inputs():
    E, g = pivots(6)
    with pytest.raises(ValueError):
        generate_lie(g, 0)
    with pytest.raises(ValueError):
        generate_lie([g[0] + E.identity()], 3)
    with pytest.raises(ValueError):
        generate_lie(g, 3, multidegrees=[(1, 0)])


def test_assoc_hull_contains_lie():
    _, g = pivots(12)
    lie = generate_lie(g, 6, N=12).total_dims()
    assoc = generate_assoc(g, 6, N=12).total_dims()
    assert all(a >= l for a, l in zip(assoc, lie))


def test_poisson_closure_of_h1_generators():
    H = hamiltonian(1)
    lam = H.carrier
    b = generate_poisson([lam.gen(0), lam.gen(1)], 2, H.dot, H.bracket)
    # x1, y1 in degree 1; x1 y1 and {x1, y1} = 1 both in degree (1, 1)
    assert b.total_dims() == [0, 2, 2]


def test_dimension_table_formats():
    _, g = pivots(10)
    t = dimension_table(generate_lie(g, 8, N=10, label="R"))
    assert t.grading == "Z2" and t.width == 4
    js = json.loads(t.dumps())
    assert js["schema_version"] == 1 and js["totals"][2] == {"deg": 2, "dim": 3}
    assert t.to_csv().splitlines()[0] == "deg,total,dim,reliable"
    assert "width 4" in t.to_text()


def test_growth_function_is_cumulative():
    _, g = pivots(10)
    b = generate_lie(g, 8, N=10)
    gam = growth_function(b)
    assert gam[0] == 0 and gam[-1] == sum(b.total_dims())


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4), st.integers(9, 20))
def test_periodicity_probe_finds_period(block, L):
    seq = (block * L)[:max(L, 3 * len(block))]
    p = periodicity_probe(seq)
    assert p is not None and p <= len(block)
    assert all(seq[i] == seq[i + p] for i in range(len(seq) - p))


def test_periodicity_probe_r_window():
    assert periodicity_probe(R_DIMS_20[1:]) is None
    with pytest.raises(ValueError):
        periodicity_probe([1, 2, 3])
