"""Poisson superalgebras and the doubling constructions built on them."""
from __future__ import annotations

from .algebra import Algebra, Element, StructureError, TableAlgebra, materialize
from .field import QQ, Field
from .grassmann import Grassmann, GrassmannElement, SuperTensor, VarTable, partial


# ---------------------------------------------------------------------------
# Poisson superalgebras
# ---------------------------------------------------------------------------

class PoissonAlgebra:
    """Handle bundling a carrier algebra with its dot product and Poisson bracket."""

    carrier: Algebra
    label = "poisson"

    @property
    def field(self) -> Field:
        return self.carrier.field

    def dot(self, u: Element, v: Element) -> Element:
        return self.carrier.mul(u, v)

    def bracket(self, u: Element, v: Element) -> Element:
        raise NotImplementedError

    def one(self) -> Element:
        raise NotImplementedError

    def basis(self) -> list[Element]:
        return self.carrier.basis()

    def parity(self, u: Element) -> int:
        return u.parity

    def tables(self) -> tuple[TableAlgebra, TableAlgebra]:
        """Materialised (dot, bracket) structure constants; small algebras only."""
        basis = self.basis()
        names = [self.carrier.format_key(next(iter(b.terms))) for b in basis]
        return (materialize(self.dot, basis, names, self.field, f"{self.label}.dot"),
                materialize(self.bracket, basis, names, self.field, f"{self.label}.bracket"))

    def __repr__(self):
        return self.label


class HamiltonianPoisson(PoissonAlgebra):
    """Grassmann algebra with {p_i, q_i} = 1 on the given index pairs, all other
    brackets of generators zero."""

    def __init__(self, grassmann: Grassmann, pairs, label: str = "H"):
        self.carrier = grassmann
        self.pairs = tuple(pairs)
        self.label = label

    def one(self):
        return self.carrier.one()

    def bracket(self, f, g):
        out = self.carrier.zero()
        for fh in f.homogeneous_parts():
            if not fh:
                continue
            acc = self.carrier.zero()
            for p, q in self.pairs:
                acc = acc + partial(p, fh) * partial(q, g) + partial(q, fh) * partial(p, g)
            out = out + (acc if fh.parity else -acc)
        return out


def hamiltonian(n: int, field: Field = QQ) -> HamiltonianPoisson:
    """H_n = Lambda(x_1..x_n, y_1..y_n) with {x_i, y_j} = delta_ij."""
    if n < 1:
        raise ValueError("n >= 1")
    lam = Grassmann(VarTable.hamiltonian(n), field)
    return HamiltonianPoisson(lam, [(i, n + i) for i in range(n)], label=f"H{n}")


class UnitExtension(Algebra):
    """<1> (+) L as a vector space; keys ('1',) and ('l', key)."""

    UNIT = ("1",)

    def __init__(self, L: Algebra):
        self.L = L
        self.field = L.field

    def __eq__(self, other):
        return isinstance(other, UnitExtension) and self.L == other.L

    def __hash__(self):
        return hash(("P", self.L))

    def __repr__(self):
        return f"P({self.L!r})"

    def key_parity(self, key):
        return 0 if key == self.UNIT else self.L.key_parity(key[1])

    def sort_key(self, key):
        return (0,) if key == self.UNIT else (1, self.L.sort_key(key[1]))

    def format_key(self, key):
        return "1" if key == self.UNIT else self.L.format_key(key[1])

    def restrict(self, e, n):
        c, ell = self.split(e)
        return self.make(c, self.L.restrict(ell, n))

    def split(self, e) -> tuple:
        """(scalar at 1, L-element)."""
        return e.terms.get(self.UNIT, 0), self.L.element(
            {k[1]: c for k, c in e.terms.items() if k != self.UNIT})

    def make(self, c, ell: Element) -> Element:
        d = {("l", k): x for k, x in ell.terms.items()}
        if c:
            d[self.UNIT] = c
        return self.element(d, clean=True)

    def mul(self, u, v):
        cu, lu = self.split(u)
        cv, lv = self.split(v)
        return self.make(cu * cv, lv.scale(cu) + lu.scale(cv))


class TrivialPoisson(PoissonAlgebra):
    """P(L) = <1> (+) L: 1 is the unit, L.L = 0, {x, y} = [x, y], {1, .} = 0."""

    def __init__(self, L, bracket=None, label: str | None = None):
        # accept a GradedBasis (use its ambient algebra) or an algebra with a bracket
        ambient = L.generators[0].parent if hasattr(L, "generators") else L
        self.L = ambient
        self._bracket = bracket or ambient.bracket
        self.carrier = UnitExtension(ambient)
        self.label = label or f"P({ambient!r})"

    def one(self):
        return self.carrier.element({UnitExtension.UNIT: 1})

    def embed(self, ell: Element) -> Element:
        return self.carrier.make(0, ell)

    def bracket(self, u, v):
        _, lu = self.carrier.split(u)
        _, lv = self.carrier.split(v)
        if not lu or not lv:
            return self.carrier.zero()
        return self.carrier.make(0, self._bracket(lu, lv))


def trivial_poisson(L, bracket=None) -> TrivialPoisson:
    return TrivialPoisson(L, bracket)


class TensorPoisson(PoissonAlgebra):
    """A (x) P with Kaplansky dot and {a(x)v, b(x)w} = (-1)^{|v||b|}({a,b}(x)vw + ab(x){v,w})."""

    def __init__(self, A: PoissonAlgebra, P: PoissonAlgebra):
        self.A, self.P = A, P
        self.carrier = SuperTensor(A.carrier, P.carrier)
        self.label = f"{A.label}(x){P.label}"

    def one(self):
        return self.carrier.pure(self.A.one(), self.P.one())

    def _unit(self, alg, key):
        return alg.element({key: 1})

    def bracket(self, u, v):
        T = self.carrier
        out: dict = {}
        for (a, va), cu in u.terms.items():
            ea, ev = self._unit(T.A, a), self._unit(T.B, va)
            for (b, wb), cv in v.terms.items():
                eb, ew = self._unit(T.A, b), self._unit(T.B, wb)
                sign = -1 if T.B.key_parity(va) & T.A.key_parity(b) else 1
                r = T.pure(self.A.bracket(ea, eb), self.P.dot(ev, ew)) + \
                    T.pure(self.A.dot(ea, eb), self.P.bracket(ev, ew))
                for k, c in r.terms.items():
                    out[k] = out.get(k, 0) + sign * c * cu * cv
        return T.element(T.field.clean(out))


def poisson_tensor(A: PoissonAlgebra, P: PoissonAlgebra) -> TensorPoisson:
    return TensorPoisson(A, P)


# ---------------------------------------------------------------------------
# Doubles
# ---------------------------------------------------------------------------

class DoubleElement(Element):
    """Element of A (+) A-bar; keys are (bar, key of A)."""

    __slots__ = ()

    @property
    def a(self) -> Element:
        return self.parent.part(self, 0)

    @property
    def abar(self) -> Element:
        return self.parent.part(self, 1)

    # Jordan-double view: <1> (+) L (+) <1bar> (+) L-bar
    @property
    def c1(self):
        return self.terms.get((0, UnitExtension.UNIT), 0)

    @property
    def c1bar(self):
        return self.terms.get((1, UnitExtension.UNIT), 0)

    @property
    def ell(self) -> Element:
        return self.parent.P.carrier.split(self.a)[1]

    @property
    def ellbar(self) -> Element:
        return self.parent.P.carrier.split(self.abar)[1]


class KantorDouble(Algebra):
    """Kan(P) = P (+) P-bar with the opposite parity on P-bar and

        a.b = ab,  abar.b = (-1)^{|b|} (ab)bar,  a.bbar = (ab)bar,  abar.bbar = (-1)^{|b|} {a, b}.
    """

    element_class = DoubleElement

    def __init__(self, P: PoissonAlgebra):
        self.P = P
        self.field = P.field
        self.label = f"Kan({P.label})"

    def __eq__(self, other):
        return isinstance(other, KantorDouble) and self.P is other.P

    def __hash__(self):
        return id(self.P)

    def __repr__(self):
        return self.label

    def key_parity(self, key):
        return (self.P.carrier.key_parity(key[1]) + key[0]) & 1

    def sort_key(self, key):
        return (key[0], self.P.carrier.sort_key(key[1]))

    def format_key(self, key):
        s = self.P.carrier.format_key(key[1])
        return f"b({s})" if key[0] else s

    def format(self, e):
        parts = []
        for bar in (0, 1):
            p = self.part(e, bar)
            if p:
                parts.append(f"b({p})" if bar else f"({p})")
        return " + ".join(parts) if parts else "0"

    def parse(self, text: str) -> DoubleElement:
        from .grassmann import split_terms
        text = text.strip()
        if text == "0":
            return self.zero()
        out = self.zero()
        for chunk in split_terms(text):
            bar = chunk.startswith("b(")
            inner = chunk[2:-1] if bar else chunk.strip()[1:-1]
            out = out + self.lift(self.P.carrier.parse(inner), bar)
        return out

    def part(self, e, bar: int) -> Element:
        return self.P.carrier.element({k: c for (b, k), c in e.terms.items() if b == bar})

    def lift(self, a: Element, bar: int | bool = 0) -> DoubleElement:
        return self.element({(int(bar), k): c for k, c in a.terms.items()})

    def restrict(self, e, n):
        return self.lift(self.P.carrier.restrict(self.part(e, 0), n)) + \
            self.lift(self.P.carrier.restrict(self.part(e, 1), n), 1)

    def basis(self) -> list[DoubleElement]:
        return [self.lift(b, bar) for bar in (0, 1) for b in self.P.basis()]

    def mul(self, u, v):
        return kantor_mul(u, v)

    def one(self) -> DoubleElement:
        return self.lift(self.P.one())


def _signed_by_parity(x: Element) -> Element:
    """x_even - x_odd, i.e. (-1)^{|x|} x extended linearly."""
    ev, od = x.homogeneous_parts()
    return ev - od


def kantor_mul(u: DoubleElement, v: DoubleElement) -> DoubleElement:
    K = u.parent
    if v.parent != K:
        raise StructureError("Kantor product across different doubles")
    P = K.P
    a, abar = K.part(u, 0), K.part(u, 1)
    b, bbar = K.part(v, 0), K.part(v, 1)
    out = K.zero()
    if a and b:
        out = out + K.lift(P.dot(a, b))
    if abar and b:
        out = out + K.lift(P.dot(abar, _signed_by_parity(b)), 1)
    if a and bbar:
        out = out + K.lift(P.dot(a, bbar), 1)
    if abar and bbar:
        out = out + K.lift(P.bracket(abar, _signed_by_parity(bbar)))
    return out


class JordanDouble(KantorDouble):
    """Jor(L) = Kan(P(L)) = <1> (+) L (+) <1bar> (+) L-bar.

    ``convention="kantor"`` (default) uses the signs inherited from Kan(P(L)):
    xbar.ybar = (-1)^{|y|}[x, y].  ``convention="literal"`` drops that sign,
    which breaks supercommutativity as soon as exactly one of x, y is odd.
    """

    def __init__(self, L, bracket=None, convention: str = "kantor"):
        super().__init__(TrivialPoisson(L, bracket))
        if convention not in ("kantor", "literal"):
            raise ValueError(convention)
        self.convention = convention
        self.L = self.P.L
        self.label = f"Jor({self.L!r})" + ("" if convention == "kantor" else "[literal]")

    def onebar(self) -> DoubleElement:
        return self.lift(self.P.one(), 1)

    def embed(self, ell: Element) -> DoubleElement:
        return self.lift(self.P.embed(ell))

    def bar(self, ell: Element) -> DoubleElement:
        return self.lift(self.P.embed(ell), 1)

    def make(self, c1=0, ell=None, c1bar=0, ellbar=None) -> DoubleElement:
        P = self.P.carrier
        zero = self.L.zero()
        return self.lift(P.make(c1, ell or zero)) + self.lift(P.make(c1bar, ellbar or zero), 1)

    def mul(self, u, v):
        return jordan_double_mul(u, v)


def jordan_double_mul(u: DoubleElement, v: DoubleElement) -> DoubleElement:
    """Jor(L) product by its case table: 1 is the unit, x.1bar = xbar,
    1bar.x = (-1)^{|x|} xbar, xbar.ybar = (-1)^{|y|}[x, y]; all other cases vanish."""
    J = u.parent
    if v.parent != J:
        raise StructureError("Jordan-double product across different doubles")
    c1, x, d1, y = u.c1, u.ell, u.c1bar, u.ellbar
    c2, x2, d2, y2 = v.c1, v.ell, v.c1bar, v.ellbar
    zero = J.L.zero()
    ell = zero
    ellbar = zero
    if c1:
        ell, ellbar = ell + x2.scale(c1), ellbar + y2.scale(c1)
    if c2:
        ell, ellbar = ell + x.scale(c2), ellbar + y.scale(c2)
    if x and d2:
        ellbar = ellbar + x.scale(d2)
    if d1 and x2:
        ellbar = ellbar + _signed_by_parity(x2).scale(d1)
    if y and y2:
        ell = ell + J.P._bracket(y, y2 if J.convention == "literal" else _signed_by_parity(y2))
    return J.make(c1 * c2, ell, c1 * d2 + c2 * d1, ellbar)


def d_map(u: DoubleElement) -> DoubleElement:
    """Odd map D(a) = 0, D(abar) = (-1)^{|a|} a on a Kantor double."""
    K = u.parent
    return K.lift(_signed_by_parity(K.part(u, 1)))


class PlusAlgebra(Algebra):
    """A^(+): a o b = (ab + (-1)^{|a||b|} ba) / 2 on an associative superalgebra."""

    def __init__(self, A: Algebra):
        self.A = A
        self.field = A.field
        self.half = A.field.inv(A.field(2))
        self.label = f"{A!r}^+"

    def __repr__(self):
        return self.label

    def key_parity(self, key):
        return self.A.key_parity(key)

    def sort_key(self, key):
        return self.A.sort_key(key)

    def format_key(self, key):
        return self.A.format_key(key)

    def mul_keys(self, k1, k2):
        ab = self.A.mul_keys(k1, k2)
        ba = self.A.mul_keys(k2, k1)
        s = -1 if self.A.key_parity(k1) & self.A.key_parity(k2) else 1
        out = dict(ab)
        for k, c in ba.items():
            out[k] = out.get(k, 0) + s * c
        return {k: c * self.half for k, c in out.items()}

    def embed(self, a: Element) -> Element:
        return self.element(a.terms)


class WreathProduct(Algebra):
    """H (x) J1 with (x(x)f).(y(x)g) = (-1)^{|f||y|}(xy (x) f.g + (-1)^{|f|+1}{x,y} (x) D(f).D(g))."""

    def __init__(self, H: PoissonAlgebra, J1: Algebra, D=None):
        if D is None:
            if not isinstance(J1, KantorDouble):
                raise TypeError("J1 needs an odd D-map with D^2 = 0; pass D=")
            D = d_map
        self.H, self.J1, self.D = H, J1, D
        self.tensor = SuperTensor(H.carrier, J1)
        self.field = H.field
        self.label = f"{H.label} wr {J1!r}"

    def __repr__(self):
        return self.label

    def key_parity(self, key):
        return self.tensor.key_parity(key)

    def sort_key(self, key):
        return self.tensor.sort_key(key)

    def format_key(self, key):
        return self.tensor.format_key(key)

    def pure(self, x: Element, f: Element) -> Element:
        return self.element(self.tensor.pure(x, f).terms)

    def basis(self):
        return [self.pure(x, f) for x in self.H.basis() for f in self.J1.basis()]

    def mul_keys(self, k1, k2):
        H, J1 = self.H.carrier, self.J1
        (xk, fk), (yk, gk) = k1, k2
        x, y = H.element({xk: 1}), H.element({yk: 1})
        f, g = J1.element({fk: 1}), J1.element({gk: 1})
        pf, py = J1.key_parity(fk), H.key_parity(yk)
        first = self.tensor.pure(self.H.dot(x, y), J1.mul(f, g))
        second = self.tensor.pure(self.H.bracket(x, y), J1.mul(self.D(f), self.D(g)))
        r = first + second if pf else first - second
        sign = -1 if pf & py else 1
        return {k: sign * c for k, c in r.terms.items()}


def wreath_mul(u: Element, v: Element) -> Element:
    return u.parent.mul(u, v)


def kantor_of_tensor_to_wreath(e: DoubleElement, W: WreathProduct) -> Element:
    """Identify Kan(H (x) P1) with H (x) Kan(P1): bar(x (x) a) <-> x (x) abar."""
    return W.element({(kh, (bar, kp)): c for (bar, (kh, kp)), c in e.terms.items()})
