"""Normal-ordered operators x_S d_T on Lambda(N); superderivations as the single-d case."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Element, StructureError, supercommutator
from .field import QQ, Field
from .grassmann import (Grassmann, GrassmannElement, VarTable, bits, merge_sign, partial_key, popcount,
                        split_terms)


@lru_cache(maxsize=1 << 20)
def _move_partials(T: int, U: int) -> tuple:
    """d_T x_U rewritten as a sum of x_{U'} d_{T'}: tuple of (sign, U', T')."""
    if not T:
        return ((1, U, 0),)
    top = 1 << (T.bit_length() - 1)
    rest = T ^ top
    out: dict = {}
    # d_top x_U = (d_top x_U) + (-1)^{|U|} x_U d_top
    if U & top:
        s0 = -1 if popcount(U & (top - 1)) & 1 else 1
        for s, U2, T2 in _move_partials(rest, U ^ top):
            out[(U2, T2)] = out.get((U2, T2), 0) + s0 * s
    s1 = -1 if popcount(U) & 1 else 1
    for s, U2, T2 in _move_partials(rest, U):
        # every index of T2 is below top, so appending d_top keeps ascending order
        key = (U2, T2 | top)
        out[key] = out.get(key, 0) + s1 * s
    return tuple((c, U2, T2) for (U2, T2), c in out.items() if c)


class Operator(Element):
    __slots__ = ()

    def __call__(self, f: GrassmannElement) -> GrassmannElement:
        return apply(self, f)

    def is_derivation_form(self) -> bool:
        return all(popcount(T) == 1 for _, T in self.terms)

    def max_index(self) -> int:
        m = 0
        for S, T in self.terms:
            m |= S | T
        return m.bit_length() - 1


class OperatorAlgebra(Algebra):
    """End(Lambda(N)) in the normal-ordered basis x_S d_T."""

    element_class = Operator

    def __init__(self, vars: VarTable | int, field: Field = QQ):
        self.vars = VarTable(vars) if isinstance(vars, int) else vars
        self.field = field
        self.N = self.vars.count
        self.grassmann = Grassmann(self.vars, field)

    def __eq__(self, other):
        return isinstance(other, OperatorAlgebra) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return hash(("End", self.vars, self.field))

    def __repr__(self):
        return f"End(Lambda({self.N}), {self.field.name})"

    def __reduce__(self):
        return (OperatorAlgebra, (self.vars, self.field))

    def key_parity(self, key):
        return (popcount(key[0]) + popcount(key[1])) & 1

    def sort_key(self, key):
        S, T = key
        return (popcount(T), T, popcount(S), S)

    # -- constructors --------------------------------------------------
    def identity(self) -> Operator:
        return self.element({(0, 0): 1})

    def x(self, i: int) -> Operator:
        """Left multiplication by x_i."""
        self._check_index(i)
        return self.element({(1 << i, 0): 1})

    def d(self, i: int) -> Operator:
        self._check_index(i)
        return self.element({(0, 1 << i): 1})

    def left_mul(self, f: GrassmannElement) -> Operator:
        return self.element({(S, 0): c for S, c in f.terms.items()})

    def _check_index(self, i):
        if not 0 <= i < self.N:
            raise IndexError(f"index {i} outside Lambda({self.N})")

    # -- products ----------------------------------------------------------
    def mul(self, u, v):
        return compose(u, v)

    def bracket(self, u, v):
        return supercommutator_op(u, v)

    def restrict(self, e, n):
        cut = (1 << n) - 1
        return self.element({k: c for k, c in e.terms.items() if not (k[0] | k[1]) & ~cut})

    # -- text format -------------------------------------------------------
    def format_key(self, key):
        S, T = key
        names = self.vars.names
        dname = (lambda i: f"d{i}") if self.vars.layout == "plain" else (lambda i: f"d_{names[i]}")
        toks = [names[i] + "^" for i in bits(S)] + [dname(i) for i in bits(T)]
        return " ".join(toks) if toks else "1"

    def parse(self, text: str) -> Operator:
        text = text.strip()
        if text == "0":
            return self.zero()
        out: dict = {}
        for chunk in split_terms(text):
            coeff, star, rest = chunk.partition("*")
            if not star:
                coeff, rest = chunk, "1"
            S = T = 0
            sign = 1
            seen_d = False
            for tok in rest.split():
                if tok == "1":
                    continue
                if tok.endswith("^"):
                    if seen_d:
                        raise ValueError("operator terms must list x's before d's")
                    i = self.vars.index(tok[:-1])
                    if S >> i & 1:
                        sign = 0
                        break
                    sign *= merge_sign(S, 1 << i)
                    S |= 1 << i
                elif tok.startswith("d"):
                    seen_d = True
                    i = self.vars.index(tok[2:]) if tok.startswith("d_") else int(tok[1:])
                    if T >> i & 1:
                        sign = 0
                        break
                    sign *= merge_sign(T, 1 << i)
                    T |= 1 << i
                else:
                    raise ValueError(f"bad operator token {tok!r}")
            if sign:
                out[(S, T)] = out.get((S, T), 0) + sign * self.field.parse(coeff)
        return self.element(self.field.clean(out))


def _same(E: Operator, F: Operator):
    if E.parent != F.parent:
        raise StructureError(f"mismatched operator algebras {E.parent!r} vs {F.parent!r}")


def compose(E: Operator, F: Operator) -> Operator:
    """Normal-ordered product E o F using d_i x_j + x_j d_i = delta_ij."""
    _same(E, F)
    out: dict = {}
    for (S, T), c1 in E.terms.items():
        for (U, W), c2 in F.terms.items():
            for s, U2, T2 in _move_partials(T, U):
                if S & U2 or T2 & W:
                    continue
                k = (S | U2, T2 | W)
                out[k] = out.get(k, 0) + s * merge_sign(S, U2) * merge_sign(T2, W) * c1 * c2
    return E.parent.element(E.parent.field.clean(out))


def _apply_derivation(byk: dict, g: dict) -> dict:
    """(sum_k f_k d_k)(g) on raw term maps; byk maps k -> [(S, c)]."""
    out: dict = {}
    for U, cu in g.items():
        uu = U
        while uu:
            low = uu & -uu
            uu ^= low
            fk = byk.get(low)
            if not fk:
                continue
            rest = U ^ low
            sg = -cu if popcount(U & (low - 1)) & 1 else cu
            for S, c in fk:
                if S & rest:
                    continue
                out[S | rest] = out.get(S | rest, 0) + sg * merge_sign(S, rest) * c
    return out


def _derivation_bracket(E: Operator, F: Operator) -> Operator:
    by_e, by_f = defaultdict(list), defaultdict(list)
    img_e, img_f = defaultdict(dict), defaultdict(dict)
    pe = pf = 0
    for (S, T), c in E.terms.items():
        by_e[T].append((S, c))
        img_e[T][S] = c
        pe = (popcount(S) + 1) & 1
    for (S, T), c in F.terms.items():
        by_f[T].append((S, c))
        img_f[T][S] = c
        pf = (popcount(S) + 1) & 1
    sgn = -1 if pe & pf else 1
    out: dict = {}
    for T, g in img_f.items():
        for M, c in _apply_derivation(by_e, g).items():
            out[(M, T)] = out.get((M, T), 0) + c
    for T, f in img_e.items():
        for M, c in _apply_derivation(by_f, f).items():
            out[(M, T)] = out.get((M, T), 0) - sgn * c
    return E.parent.element(E.parent.field.clean(out))


def supercommutator_op(E: Operator, F: Operator) -> Operator:
    """[E, F] = EF - (-1)^{|E||F|} FE."""
    _same(E, F)
    if E.terms and F.terms and E.is_homogeneous() and F.is_homogeneous() \
            and E.is_derivation_form() and F.is_derivation_form():
        return _derivation_bracket(E, F)
    return supercommutator(compose, E, F)


def apply(E: Operator, f: GrassmannElement) -> GrassmannElement:
    """Action on Lambda: x_S d_T acts by the partials (highest index first) then x_S."""
    if E.parent.N != f.parent.N or E.parent.field != f.parent.field:
        raise StructureError("operator and element over different Lambda")
    out: dict = {}
    for (S, T), c in E.terms.items():
        for m, cm in f.terms.items():
            sign = 1
            for i in sorted(bits(T), reverse=True):
                r = partial_key(i, m)
                if r is None:
                    break
                sign *= r[0]
                m = r[1]
            else:
                if S & m:
                    continue
                out[S | m] = out.get(S | m, 0) + sign * merge_sign(S, m) * c * cm
    return f.parent.element(f.parent.field.clean(out))


@dataclass(frozen=True)
class SuperDerivation:
    """A superderivation of Lambda given by its values on the generators."""

    grassmann: Grassmann
    values: tuple  # ((index, GrassmannElement), ...) sorted by index, nonzero images only

    @classmethod
    def from_dict(cls, grassmann: Grassmann, values: dict) -> "SuperDerivation":
        return cls(grassmann, tuple(sorted((i, v) for i, v in values.items() if v)))

    def image(self, i: int) -> GrassmannElement:
        return dict(self.values).get(i, self.grassmann.zero())

    @property
    def parity(self) -> int:
        par = {(v.parity + 1) & 1 for _, v in self.values}
        if len(par) > 1:
            raise ValueError("derivation is not Z2-homogeneous")
        return par.pop() if par else 0

    def __add__(self, other: "SuperDerivation") -> "SuperDerivation":
        vals = dict(self.values)
        for i, v in other.values:
            vals[i] = vals[i] + v if i in vals else v
        return SuperDerivation.from_dict(self.grassmann, vals)


def derivation_to_operator(d: SuperDerivation, algebra: OperatorAlgebra | None = None) -> Operator:
    """sum_i d(x_i) d_i."""
    algebra = algebra or OperatorAlgebra(d.grassmann.vars, d.grassmann.field)
    out = {}
    for i, v in d.values:
        for S, c in v.terms.items():
            out[(S, 1 << i)] = c
    return algebra.element(out, clean=True)


def operator_to_derivation(E: Operator) -> SuperDerivation:
    """Restriction to generators; ValueError if E is not the derivation it determines."""
    lam = E.parent.grassmann
    d = SuperDerivation.from_dict(lam, {i: apply(E, lam.gen(i)) for i in range(lam.N)})
    if derivation_to_operator(d, E.parent) != E:
        raise ValueError("operator is not a superderivation")
    return d


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def __bool__(self):
        return False


def ad_nil_index(a: Operator, basis, max_power: int, a_degree: int = 1):
    """Smallest k <= max_power with (ad a)^k killing every reliable basis element.

    Zeros reached beyond the basis' degree window prove nothing, so they yield
    ``Inconclusive`` instead of an index.
    """
    worst = 0
    for deg, elems in basis.components.items():
        if not basis.reliable.get(deg, False):
            continue
        for b in elems:
            c = b
            for k in range(1, max_power + 1):
                c = supercommutator_op(a, c)
                if not c:
                    if basis.N is not None and sum(deg) + k * a_degree > basis.D:
                        return Inconclusive(f"power {k} on degree {sum(deg)} leaves the window D={basis.D}")
                    worst = max(worst, k)
                    break
            else:
                return Inconclusive(f"(ad a)^{max_power} does not vanish on a degree-{sum(deg)} element")
    return worst
