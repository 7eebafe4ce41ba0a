"""Named examples: pivot derivations, their Poisson and Jordan relatives, and the shift map."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .algebra import Element
from .doubles import HamiltonianPoisson, JordanDouble, KantorDouble, hamiltonian
from .field import QQ, Field
from .generate import GradedBasis, generate_assoc, generate_jordan, generate_lie, generate_poisson
from .grassmann import Grassmann, VarTable, bits, popcount
from .linalg import Echelon
from .operators import Operator, OperatorAlgebra, SuperDerivation, operator_to_derivation

# derivative letter and partner letter: a_i = d_{x_i} + y_i x_i (...), and cyclically
ABC = {"a": ("x", "y"), "b": ("y", "z"), "c": ("z", "x")}
POISSON_LETTERS = "xyzXYZ"


# ---------------------------------------------------------------------------
# pivots
# ---------------------------------------------------------------------------

def pivot_v(i: int, N: int, field: Field = QQ, algebra: OperatorAlgebra | None = None,
            as_derivation: bool = False) -> Operator | SuperDerivation:
    """v_i = d_i + x_i x_{i+1}(d_{i+2} + x_{i+2} x_{i+3}(d_{i+4} + ...)) in End(Lambda(N)).

    The nesting stops before the first partial whose index would reach N.
    """
    E = algebra or OperatorAlgebra(N, field)
    if not 0 <= i < E.N:
        raise ValueError(f"pivot index {i} outside 0..{E.N - 1}")
    terms, S, k = {}, 0, i
    while k < E.N:
        terms[(S, 1 << k)] = 1
        S |= 0b11 << k  # x_k x_{k+1}: ascending, no sign
        k += 2
    op = E.element(terms, clean=True)
    return operator_to_derivation(op) if as_derivation else op


def _nested(lam: Grassmann, letter: str, i: int, levels: int, head: Callable[[int], object]) -> list:
    """(coefficient, head(k)) pairs of the nested sum shared by a/b/c and A/B/C."""
    f, p = ABC[letter]
    at = lam.vars.at
    coeff = lam.one()
    out = []
    for k in range(i, levels):
        out.append((coeff, head(k)))
        coeff = coeff * lam.monomial([at(p, k), at(f, k)])
    return out


def pivot_abc(letter: str, i: int, levels: int, field: Field = QQ,
              algebra: OperatorAlgebra | None = None) -> Operator:
    """a_i, b_i or c_i over interleaved letter-triples (x_k, y_k, z_k) at flat indices 3k, 3k+1, 3k+2."""
    if letter not in ABC:
        raise ValueError(f"letter must be one of a, b, c, not {letter!r}")
    E = algebra or OperatorAlgebra(VarTable.triples(levels), field)
    if not 0 <= i < levels:
        raise ValueError(f"level {i} outside 0..{levels - 1}")
    f, _ = ABC[letter]
    terms = {}
    for coeff, d in _nested(E.grassmann, letter, i, levels, lambda k: E.vars.at(f, k)):
        for S, c in coeff.terms.items():
            terms[(S, 1 << d)] = c
    return E.element(terms, clean=True)


def q_poisson(levels: int, field: Field = QQ) -> HamiltonianPoisson:
    """Grassmann algebra on x, y, z, X, Y, Z per level with {X_k, x_k} = {Y_k, y_k} = {Z_k, z_k} = 1."""
    lam = Grassmann(VarTable.families(levels, POISSON_LETTERS), field)
    at = lam.vars.at
    pairs = [(at(f.upper(), k), at(f, k)) for k in range(levels) for f in "xyz"]
    return HamiltonianPoisson(lam, pairs, label=f"H[xyzXYZ;{levels}]")


def poisson_ABC(letter: str, i: int, levels: int, field: Field = QQ,
                H: HamiltonianPoisson | None = None) -> Element:
    """A_i, B_i or C_i: the pivot with each partial replaced by its capital partner."""
    if letter.lower() not in ABC:
        raise ValueError(f"letter must be one of A, B, C, not {letter!r}")
    letter = letter.lower()
    H = H or q_poisson(levels, field)
    lam = H.carrier
    if not 0 <= i < levels:
        raise ValueError(f"level {i} outside 0..{levels - 1}")
    F = ABC[letter][0].upper()
    out = lam.zero()
    for coeff, cap in _nested(lam, letter, i, levels, lambda k: lam.gen(lam.vars.at(F, k))):
        out = out + coeff * cap
    return out


# ---------------------------------------------------------------------------
# shift
# ---------------------------------------------------------------------------

def shift_tau(e: Element, steps: int = 1, target=None) -> Element:
    """Shift every variable and partial up by ``steps`` levels.

    For interleaved families one level is ``letters`` flat indices, so families
    never mix.  ``target`` may be a larger model of the same layout; indices
    that would leave it raise ``OverflowError`` (never wrap around).
    """
    parent = e.parent
    target = target or parent
    if not isinstance(parent, (Grassmann, OperatorAlgebra)):
        raise TypeError(f"shift is defined on Lambda and End(Lambda), not {parent!r}")
    if type(target) is not type(parent) or target.vars.layout != parent.vars.layout:
        raise TypeError("target must have the same layout")
    s = steps * parent.vars.letters
    limit = target.N
    out = {}
    for key, c in e.terms.items():
        parts = key if isinstance(parent, OperatorAlgebra) else (key,)
        if any(m and (m.bit_length() - 1) + s >= limit for m in parts):
            raise OverflowError(f"shift by {steps} leaves the truncation N={limit}")
        new = tuple(m << s for m in parts)
        out[new if isinstance(parent, OperatorAlgebra) else new[0]] = c
    return target.element(out)


# ---------------------------------------------------------------------------
# recursion checks
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    lines: list = dc_field(default_factory=list)  # (label, ok)

    def add(self, label: str, ok: bool):
        self.lines.append((label, bool(ok)))

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.lines)

    def to_json(self):
        return {"check": self.name, "holds": self.holds,
                "lines": [{"identity": l, "holds": ok} for l, ok in self.lines]}


def recursion_check(which: str, N: int | None = None, field: Field = QQ) -> CheckReport:
    """Exact recursive presentations of the pivots.

    R: v_i = d_i + x_i x_{i+1} v_{i+2}, i = 0..3, with v_{i+2} expanded directly
    and again as tau^2 of v_i taken from the model two variables smaller.
    Q: a_0 = d_{x_0} + y_0 x_0 tau(a_0), and cyclically, tau(a_0) coming from one level fewer.
    P: A_0 = X_0 + y_0 x_0 tau(A_0), and cyclically.
    """
    which = which.upper()
    rep = CheckReport(f"recursion {which}")
    if which == "R":
        N = N or 16
        if N < 6:
            raise ValueError("need N >= 6")
        E, E2 = OperatorAlgebra(N, field), OperatorAlgebra(N - 2, field)
        for i in range(4):
            head = E.d(i) + E.x(i) * E.x(i + 1) * pivot_v(i + 2, N, algebra=E)
            rep.add(f"v{i} = d{i} + x{i} x{i + 1} v{i + 2} (N={N})", pivot_v(i, N, algebra=E) == head)
            tail = shift_tau(pivot_v(i, N - 2, algebra=E2), 2, target=E)
            rep.add(f"v{i + 2} = tau^2(v{i}) (N={N})", tail == pivot_v(i + 2, N, algebra=E))
        return rep
    if which == "Q":
        L = N or 5
        if L < 2:
            raise ValueError("need at least 2 letter-triples")
        E, E1 = OperatorAlgebra(VarTable.triples(L), field), OperatorAlgebra(VarTable.triples(L - 1), field)
        lam = E.grassmann
        for letter, (f, p) in ABC.items():
            lhs = pivot_abc(letter, 0, L, algebra=E)
            rest = shift_tau(pivot_abc(letter, 0, L - 1, algebra=E1), 1, target=E)
            pf = E.left_mul(lam.monomial([lam.vars.at(p, 0), lam.vars.at(f, 0)]))
            rhs = E.d(lam.vars.at(f, 0)) + pf * rest
            rep.add(f"{letter}0 = d_{f}0 + {p}0 {f}0 tau({letter}0) (levels={L})", lhs == rhs)
        return rep
    if which == "P":
        L = N or 5
        if L < 2:
            raise ValueError("need at least 2 letter-triples")
        H, H1 = q_poisson(L, field), q_poisson(L - 1, field)
        lam = H.carrier
        for letter, (f, p) in ABC.items():
            cap = letter.upper()
            lhs = poisson_ABC(cap, 0, L, H=H)
            rest = shift_tau(poisson_ABC(cap, 0, L - 1, H=H1), 1, target=lam)
            rhs = lam.gen(lam.vars.at(f.upper(), 0)) + lam.monomial([lam.vars.at(p, 0), lam.vars.at(f, 0)]) * rest
            rep.add(f"{cap}0 = {f.upper()}0 + {p}0 {f}0 tau({cap}0) (levels={L})", lhs == rhs)
        return rep
    raise ValueError(f"unknown recursion {which!r}; expected R, Q or P")


def pivot_square_check(n_max: int = 4, N: int | None = None, field: Field = QQ) -> CheckReport:
    """v_n o v_n = x_{n+1} v_{n+2}, equivalently [v_n, v_n] = 2 x_{n+1} v_{n+2}."""
    N = N or n_max + 10
    E = OperatorAlgebra(N, field)
    rep = CheckReport("pivot squares")
    for n in range(n_max + 1):
        v = pivot_v(n, N, algebra=E)
        rhs = E.x(n + 1) * pivot_v(n + 2, N, algebra=E)
        rep.add(f"v{n} o v{n} = x{n + 1} v{n + 2} (N={N})", v * v == rhs)
        rep.add(f"[v{n}, v{n}] = 2 x{n + 1} v{n + 2} (N={N})", E.bracket(v, v) == rhs.scale(2))
    return rep


# ---------------------------------------------------------------------------
# M(1|1)
# ---------------------------------------------------------------------------

M11_NAMES = {"E11": "d0 x0", "E12": "d0", "E21": "x0", "E22": "x0 d0"}


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _unit(i, j):
    return tuple(tuple(int((r, c) == (i, j)) for c in range(2)) for r in range(2))


def m11_check(field: Field = QQ) -> CheckReport:
    """Alg(d0, x0) inside End(Lambda(1)) against the 2x2 matrix units."""
    E = OperatorAlgebra(1, field)
    d, x = E.d(0), E.x(0)
    basis = generate_assoc([d, x], 4, label="Alg(d0,x0)")
    rep = CheckReport("M(1|1)")
    rep.add("dim Alg(d0, x0) = 4", sum(basis.total_dims()) == 4)
    ops = {"E11": d * x, "E12": d, "E21": x, "E22": x * d}
    mats = {"E11": _unit(0, 0), "E12": _unit(0, 1), "E21": _unit(1, 0), "E22": _unit(1, 1)}
    ech = Echelon(field, E.sort_key)
    for e in basis.elements():
        ech.insert(e.terms)
    rep.add("correspondence spans the generated algebra",
            all(ech.contains(o.terms) for o in ops.values()) and ech.rank_of([o.terms for o in ops.values()]) == 4)
    back = {m: k for k, m in mats.items()}
    table_ok = True
    for a in ops:
        for b in ops:
            m = _matmul(mats[a], mats[b])
            want = sum((ops[back[_unit(i, j)]].scale(m[i][j]) for i in range(2) for j in range(2)
                        if m[i][j]), E.zero())
            table_ok &= (ops[a] * ops[b] == want)
    rep.add("16-entry product table matches matrix units", table_ok)
    rep.add("even part is diagonal, odd part off-diagonal",
            ops["E11"].parity == ops["E22"].parity == 0 and ops["E12"].parity == ops["E21"].parity == 1)
    return rep


# ---------------------------------------------------------------------------
# membership probe
# ---------------------------------------------------------------------------

def membership(e: Element, basis: GradedBasis) -> bool:
    """Whether e lies in the span of every computed component (degree window only)."""
    parent = basis.generators[0].parent
    ech = Echelon(parent.field, parent.sort_key)
    for v in basis.elements():
        ech.insert(v.terms)
    return ech.contains(e.terms)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExampleSpec:
    """A named example with default truncation and degree window.

    ``N`` counts Grassmann variables for plain layouts and letter-triples for
    the x/y/z families; finite examples have ``N = None``.
    """

    name: str
    kind: str
    summary: str
    N: int | None
    D: int
    min_N: int | None = None
    N_unit: str = "variables"

    def validate(self, N: int | None, D: int) -> tuple:
        N = self.N if N is None else N
        if D < 1:
            raise ValueError("D must be >= 1")
        if self.N is None:
            if N is not None:
                raise ValueError(f"{self.name} is finite-dimensional and takes no N")
            return N, D
        if N < self.min_N:
            raise ValueError(f"{self.name} needs N >= {self.min_N} ({self.N_unit}), got {N}")
        return N, D


REGISTRY: dict[str, ExampleSpec] = {}


def _reg(spec: ExampleSpec):
    REGISTRY[spec.name] = spec


_reg(ExampleSpec("R", "lie", "Lie superalgebra generated by the pivots v0, v1 in Der Lambda", 24, 20, 4))
_reg(ExampleSpec("AR", "assoc", "associative hull Alg(v0, v1) in End Lambda", 16, 10, 4))
_reg(ExampleSpec("Q", "lie", "Lie superalgebra generated by the pivots a0, b0, c0 over x/y/z triples",
                 8, 8, 3, "triples"))
_reg(ExampleSpec("AQ", "assoc", "associative hull Alg(a0, b0, c0)", 6, 6, 3, "triples"))
_reg(ExampleSpec("PQ", "poisson", "Poisson superalgebra generated by A0, B0, C0 in the Hamiltonian x/y/z/X/Y/Z model",
                 6, 6, 3, "triples"))
for _n in (1, 2, 3):
    _reg(ExampleSpec(f"H{_n}", "finite", f"Hamiltonian Poisson superalgebra on {_n} pair(s) x_i, y_i with {{x_i, y_i}} = 1",
                     None, 2 * _n, None, "-"))
    _reg(ExampleSpec(f"KanH{_n}", "finite", f"Kantor double of H{_n}, a Jordan superalgebra",
                     None, 2 * _n + 1, None, "-"))
_reg(ExampleSpec("JorR", "jordan", "Jordan double <1> + R + <1bar> + Rbar, generated by v0, v1, 1bar",
                 24, 59, 4))
_reg(ExampleSpec("JorQ", "jordan", "Jordan double of Q, generated by a0, b0, c0, 1bar", 6, 17, 3, "triples"))
_reg(ExampleSpec("M11", "finite", "Alg(d0, x0) in End Lambda(1), the 2x2 matrix superalgebra", None, 4, None, "-"))


def lookup(name: str) -> ExampleSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(REGISTRY)}") from None


@dataclass
class Built:
    spec: ExampleSpec
    N: int | None
    D: int
    basis: GradedBasis
    algebra: object
    extra: dict = dc_field(default_factory=dict)


def _finite_basis(label, gens, multidegrees, elements, key_deg, D) -> GradedBasis:
    comps: dict = {}
    for e in elements:
        if sum(key_deg(e)) > D:
            continue
        comps.setdefault(key_deg(e), []).append(e)
    return GradedBasis("finite", tuple(gens), tuple(multidegrees), None, D, comps,
                       {m: True for m in comps}, label, gens[0].parent.field.name)


def _jor_L_degree(D: int) -> int:
    return (D + 2) // 3


def build(name: str, N: int | None = None, D: int | None = None, field: Field = QQ,
          workers: int = 1) -> Built:
    """Construct and generate a registered example at the requested window."""
    spec = lookup(name)
    D = spec.D if D is None else D
    N, D = spec.validate(N, D)
    label = name
    if name in ("R", "AR"):
        E = OperatorAlgebra(N, field)
        gens = [pivot_v(0, N, algebra=E), pivot_v(1, N, algebra=E)]
        gen = generate_lie if name == "R" else generate_assoc
        return Built(spec, N, D, gen(gens, D, N=N, workers=workers, label=label), E)
    if name in ("Q", "AQ"):
        E = OperatorAlgebra(VarTable.triples(N), field)
        gens = [pivot_abc(c, 0, N, algebra=E) for c in "abc"]
        gen = generate_lie if name == "Q" else generate_assoc
        return Built(spec, N, D, gen(gens, D, N=E.N, workers=workers, label=label, margin=6), E)
    if name == "PQ":
        H = q_poisson(N, field)
        gens = [poisson_ABC(c, 0, N, H=H) for c in "ABC"]
        b = generate_poisson(gens, D, H.dot, H.bracket, N=H.carrier.N, workers=workers, label=label, margin=12)
        return Built(spec, N, D, b, H)
    if name in ("JorR", "JorQ"):
        if name == "JorR":
            E = OperatorAlgebra(N, field)
            lgens = [pivot_v(0, N, algebra=E), pivot_v(1, N, algebra=E)]
            margin = 2
        else:
            E = OperatorAlgebra(VarTable.triples(N), field)
            lgens = [pivot_abc(c, 0, N, algebra=E) for c in "abc"]
            margin = 6
        J = JordanDouble(E)
        k = len(lgens)
        gens = [J.embed(g) for g in lgens] + [J.onebar()]
        md = [tuple(int(i == j) for j in range(k + 1)) for i in range(k + 1)]
        b = generate_jordan(gens, D, J.mul, multidegrees=md, unit=J.one(), N=E.N, workers=workers,
                            label=label, margin=margin)
        return Built(spec, N, D, b, J, {"lie_generators": lgens, "operators": E, "margin": margin})
    m = re.fullmatch(r"(Kan)?H(\d)", name)
    if m:
        n = int(m.group(2))
        H = hamiltonian(n, field)
        lam = H.carrier
        if not m.group(1):
            gens = [lam.gen(i) for i in range(lam.N)]
            b = _finite_basis(label, gens, [(1,)] * len(gens), H.basis(),
                              lambda e: (popcount(next(iter(e.terms))),), D)
            return Built(spec, N, D, b, H)
        K = KantorDouble(H)
        gens = [K.lift(lam.gen(i)) for i in range(lam.N)] + [K.lift(lam.one(), 1)]
        md = [(1, 0)] * lam.N + [(0, 1)]

        def kdeg(e):
            bar, key = next(iter(e.terms))
            return (popcount(key), bar)
        return Built(spec, N, D, _finite_basis(label, gens, md, K.basis(), kdeg, D), K, {"poisson": H})
    if name == "M11":
        E = OperatorAlgebra(1, field)
        return Built(spec, N, D, generate_assoc([E.d(0), E.x(0)], D, label=label), E)
    raise KeyError(name)  # pragma: no cover


def catalog_listing() -> list[dict]:
    return [{"name": s.name, "kind": s.kind, "summary": s.summary, "N": s.N, "N_unit": s.N_unit, "D": s.D}
            for s in REGISTRY.values()]
