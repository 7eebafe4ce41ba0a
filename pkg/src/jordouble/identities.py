"""Exact checks of graded identities on homogeneous samples.

Every check evaluates a defect element; "holds" means the defect is the zero
element, never a small norm.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .algebra import Element

EXHAUSTIVE_LIMIT = 10 ** 4


@dataclass(frozen=True)
class Exhaustive:
    def describe(self):
        return {"kind": "exhaustive"}


@dataclass(frozen=True)
class Sampled:
    count: int = 1000
    seed: int = 0
    mix: int = 2  # basis elements combined per random homogeneous element

    def describe(self):
        return {"kind": "random", "count": self.count, "seed": self.seed, "mix": self.mix}


def auto_strategy(pool: Sequence[Element], arity: int, seed: int = 0):
    return Exhaustive() if len(pool) ** arity <= EXHAUSTIVE_LIMIT else Sampled(1000, seed)


@dataclass
class IdentityReport:
    identity: str
    algebra: str
    strategy: dict
    tested: int = 0
    violations: list = dc_field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.violations:
            return "counterexample"
        return "holds" if str(self.strategy.get("kind", "")).startswith("exhaustive") else "holds-on-sample"

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"identity": self.identity, "algebra": self.algebra, "strategy": self.strategy,
                "tested": self.tested, "verdict": self.verdict, "violations": self.violations}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"


def _rand_homogeneous(rng: random.Random, by_parity: dict, mix: int) -> Element:
    parities = [p for p in (0, 1) if by_parity[p]]
    p = rng.choice(parities)
    pool = by_parity[p]
    k = min(mix, len(pool))
    out = None
    for e in rng.sample(pool, k):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out = e.scale(c) if out is None else out + e.scale(c)
    return out if out else pool[0]


def tuples(pool: Sequence[Element], arity: int, strategy):
    """Homogeneous tuples drawn from ``pool`` per the strategy (deterministic)."""
    for e in pool:
        if not e.is_homogeneous():
            raise ValueError(f"sample element {e} is not Z2-homogeneous")
    if isinstance(strategy, Exhaustive):
        yield from itertools.product(pool, repeat=arity)
        return
    rng = random.Random(strategy.seed)
    by_parity = {0: [e for e in pool if e and e.parity == 0], 1: [e for e in pool if e and e.parity == 1]}
    for _ in range(strategy.count):
        yield tuple(_rand_homogeneous(rng, by_parity, strategy.mix) for _ in range(arity))


def _run(name, algebra, pool, arity, strategy, defect, max_witnesses=5):
    strategy = strategy or auto_strategy(pool, arity)
    rep = IdentityReport(name, algebra, strategy.describe())
    for tup in tuples(pool, arity, strategy):
        rep.tested += 1
        d = defect(*tup)
        if d:
            if len(rep.violations) < max_witnesses:
                rep.violations.append({"args": [str(t) for t in tup], "defect": str(d)})
            else:
                rep.violations.append({"args": [], "defect": "(witness elided)"})
    return rep


def _sgn(e):
    return e.parity


def check_super_anticomm(bracket: Callable, pool, strategy=None, algebra: str = "lie") -> IdentityReport:
    def defect(x, y):
        yx = bracket(y, x)
        return bracket(x, y) + (yx if not (_sgn(x) & _sgn(y)) else -yx)
    return _run("super-anticommutativity", algebra, pool, 2, strategy, defect)


def check_super_jacobi(bracket: Callable, pool, strategy=None, algebra: str = "lie") -> IdentityReport:
    def defect(x, y, z):
        rhs2 = bracket(y, bracket(x, z))
        d = bracket(x, bracket(y, z)) - bracket(bracket(x, y), z)
        return d + rhs2 if _sgn(x) & _sgn(y) else d - rhs2
    return _run("super-jacobi", algebra, pool, 3, strategy, defect)


def jordan_defect(mul: Callable, a, b, c, d) -> Element:
    """LHS - RHS of the four-variable Jordan superidentity."""
    pa, pb, pc, pd = _sgn(a), _sgn(b), _sgn(c), _sgn(d)

    def s(e):
        return -1 if e & 1 else 1
    ab, ac, ad = mul(a, b), mul(a, c), mul(a, d)
    lhs = mul(ab, mul(c, d)) + mul(ac, mul(b, d)).scale(s(pb * pc)) + \
        mul(ad, mul(b, c)).scale(s((pb + pc) * pd))
    rhs = mul(mul(ab, c), d) + mul(mul(ad, c), b).scale(s(pb * (pc + pd) + pc * pd)) + \
        mul(mul(mul(b, d), c), a).scale(s(pa * (pb + pc + pd) + pc * pd))
    return lhs - rhs


def check_supercommutative(mul: Callable, pool, strategy=None, algebra: str = "jordan") -> IdentityReport:
    def defect(a, b):
        ba = mul(b, a)
        return mul(a, b) - (ba if not (_sgn(a) & _sgn(b)) else -ba)
    return _run("supercommutativity", algebra, pool, 2, strategy, defect)


def check_jordan_super(mul: Callable, pool, strategy=None, algebra: str = "jordan") -> IdentityReport:
    """Both graded Jordan identities: supercommutativity (on the first two
    arguments) and the four-variable identity."""
    def defect(a, b, c, d):
        ba = mul(b, a)
        comm = mul(a, b) - (ba if not (_sgn(a) & _sgn(b)) else -ba)
        return comm if comm else jordan_defect(mul, a, b, c, d)
    return _run("jordan-superidentity", algebra, pool, 4, strategy, defect)


def check_leibniz(handle, pool=None, strategy=None, algebra: str | None = None) -> IdentityReport:
    """{a.b, c} = a.{b,c} + (-1)^{|b||c|}{a,c}.b on a Poisson handle."""
    pool = pool if pool is not None else handle.basis()
    dot, br = handle.dot, handle.bracket

    def defect(a, b, c):
        t = dot(br(a, c), b)
        d = br(dot(a, b), c) - dot(a, br(b, c))
        return d + t if _sgn(b) & _sgn(c) else d - t
    return _run("super-leibniz", algebra or handle.label, pool, 3, strategy, defect)


def check_square_square(J, pool, strategy=None, algebra: str | None = None) -> IdentityReport:
    """(a^2)^2 = 0 for a in Jor°(L); ``pool`` elements may mix parities."""
    for a in pool:
        if a.c1:
            raise ValueError("elements of Jor° carry no unit component")
    rep = IdentityReport("square-square", algebra or J.label,
                         (strategy or Exhaustive()).describe())
    if isinstance(strategy, Sampled):
        rng = random.Random(strategy.seed)
        samples = []
        for _ in range(strategy.count):
            k = min(len(pool), rng.randint(1, max(1, strategy.mix)))
            a = J.zero()
            for e in rng.sample(pool, k):
                a = a + e.scale(rng.choice([-3, -2, -1, 1, 2, 3]))
            samples.append(a)
    else:
        samples = list(pool)
    for a in samples:
        rep.tested += 1
        a2 = J.mul(a, a)
        r = J.mul(a2, a2)
        if r and len(rep.violations) < 5:
            rep.violations.append({"args": [str(a)], "defect": str(r)})
    return rep


def check_homogeneous_nil_cube(J, basis, max_total: int | None = None,
                               algebra: str | None = None) -> IdentityReport:
    """a^2 a = a a^2 = 0 for every basis element of every nonzero multidegree."""
    rep = IdentityReport("homogeneous-nil-cube", algebra or J.label, {"kind": "exhaustive-components"})
    for m in basis.degrees():
        if sum(m) == 0 or (max_total is not None and sum(m) > max_total):
            continue
        for a in basis.components[m]:
            rep.tested += 1
            a2 = J.mul(a, a)
            for r in (J.mul(a2, a), J.mul(a, a2)):
                if r and len(rep.violations) < 5:
                    rep.violations.append({"args": [str(a)], "deg": list(m), "defect": str(r)})
    return rep


def solvability_chain(J, spanning: Sequence[Element]) -> dict:
    """Spans of S, S^2, (S^2)^2, ((S^2)^2)^2 for S spanning a piece of Jor°(L).

    Returns the dimensions and whether the containments S^2 in L+Lbar,
    (S^2)^2 in L and ((S^2)^2)^2 = 0 hold.
    """
    from .linalg import Echelon

    def span_products(vecs):
        ech = Echelon(J.field, J.sort_key)
        for i, u in enumerate(vecs):
            for v in vecs[i:]:
                ech.insert(J.mul(u, v).terms)
                ech.insert(J.mul(v, u).terms)
        return [J.element(r) for r in ech.rows.values()]

    s1 = span_products(list(spanning))
    s2 = span_products(s1)
    s3 = span_products(s2)
    no_units = all(not e.c1 and not e.c1bar for e in s1)
    return {
        "dims": [len(spanning), len(s1), len(s2), len(s3)],
        "square_in_L_plus_Lbar": no_units,
        "second_in_L": all(not e.c1 and not e.c1bar and not e.ellbar for e in s2),
        "third_zero": not s3,
    }
