"""Sparse elements and the minimal parent-algebra protocol shared by every carrier.

An element is an immutable map ``key -> scalar`` over some basis of an ambient
superalgebra; the parent knows each key's parity, its canonical sort position,
and how to multiply two keys.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable

from .field import QQ, Field

SCALAR_TYPES = (int, Fraction)


class StructureError(ValueError):
    """Operands live in incompatible parents (different variable tables or fields)."""


class Element:
    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent: "Algebra", terms: dict):
        self.parent = parent
        self.terms = terms
        self._hash = None

    # -- linear structure ------------------------------------------------
    def _other(self, other) -> "Element":
        if not isinstance(other, Element):
            raise TypeError(f"expected an element, got {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise StructureError(f"mismatched parents: {self.parent!r} vs {other.parent!r}")
        return other

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES) and other == 0:
            return self
        other = self._other(other)
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        return self.parent.element(self.parent.field.clean(d))

    __radd__ = __add__

    def __neg__(self):
        return self.parent.element({k: -c for k, c in self.terms.items()}, clean=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def scale(self, c) -> "Element":
        c = self.parent.field(c)
        if not c:
            return self.parent.zero()
        return self.parent.element({k: c * x for k, x in self.terms.items()}, clean=True)

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self.scale(other)
        return self.parent.mul(self, self._other(other))

    def __rmul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self.scale(other)
        return NotImplemented

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent == other.parent and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- gradings ----------------------------------------------------------
    @property
    def parity(self) -> int:
        """Z2-degree; ValueError if the element mixes parities.  Zero is even."""
        par = {self.parent.key_parity(k) for k in self.terms}
        if len(par) > 1:
            raise ValueError("element is not Z2-homogeneous")
        return par.pop() if par else 0

    def is_homogeneous(self) -> bool:
        return len({self.parent.key_parity(k) for k in self.terms}) <= 1

    def homogeneous_parts(self) -> tuple["Element", "Element"]:
        even = {k: c for k, c in self.terms.items() if not self.parent.key_parity(k)}
        odd = {k: c for k, c in self.terms.items() if self.parent.key_parity(k)}
        return self.parent.element(even), self.parent.element(odd)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: self.parent.sort_key(kc[0]))

    def __str__(self):
        return self.parent.format(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.parent.format(self)!r})"

    def __reduce__(self):
        return (self.parent.element, (self.terms,))


class Algebra:
    """Parent protocol.  Subclasses implement ``key_parity``, ``sort_key``,
    ``mul_keys`` (or override ``mul``) and ``format_key``."""

    element_class = Element
    field: Field = QQ

    def element(self, terms: dict | None = None, clean: bool = False) -> Element:
        terms = dict(terms or {})
        if clean:
            terms = self.field.clean(terms)
        return self.element_class(self, terms)

    def zero(self) -> Element:
        return self.element_class(self, {})

    def key_parity(self, key) -> int:
        raise NotImplementedError

    def sort_key(self, key):
        return key

    def mul_keys(self, k1, k2) -> dict:
        raise NotImplementedError

    def mul(self, u: Element, v: Element) -> Element:
        out: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                for k, c in self.mul_keys(k1, k2).items():
                    out[k] = out.get(k, 0) + c * c1 * c2
        return self.element(self.field.clean(out))

    def format_key(self, key) -> str:
        return repr(key)

    def format(self, e: Element) -> str:
        if not e.terms:
            return "0"
        return " + ".join(f"{self.field.fmt(c)} * {self.format_key(k)}" for k, c in e.sorted_items())

    def restrict(self, e: Element, n: int) -> Element:
        """Image under truncation to the first ``n`` variables (identity by default)."""
        return e


def supercommutator(mul: Callable[[Element, Element], Element], u: Element, v: Element) -> Element:
    """[u, v] = uv - (-1)^{|u||v|} vu, extended bilinearly over homogeneous parts."""
    out = mul(u, v)
    for a in u.homogeneous_parts():
        if not a:
            continue
        for b in v.homogeneous_parts():
            if not b:
                continue
            ba = mul(b, a)
            out = out + ba if a.parity & b.parity else out - ba
    return out


class TableAlgebra(Algebra):
    """Finite-dimensional algebra given by structure constants on named basis keys.

    Used for small materialised algebras and for deliberately corrupted tables
    in negative controls.
    """

    def __init__(self, names: Iterable[str], parities: Iterable[int], table: dict, field: Field = QQ,
                 label: str = "table"):
        self.names = tuple(names)
        self.parities = dict(zip(self.names, parities))
        self.table = {k: field.clean(dict(v)) for k, v in table.items()}
        self.field = field
        self.label = label

    def key_parity(self, key):
        return self.parities[key]

    def sort_key(self, key):
        return self.names.index(key)

    def mul_keys(self, k1, k2):
        return self.table.get((k1, k2), {})

    def basis(self) -> list[Element]:
        return [self.element({n: 1}) for n in self.names]

    def gen(self, name) -> Element:
        return self.element({name: 1})

    def format_key(self, key):
        return str(key)

    def __repr__(self):
        return f"TableAlgebra({self.label})"

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "field": self.field.name,
            "basis": [{"name": n, "parity": self.parities[n]} for n in self.names],
            "products": [
                {"left": a, "right": b, "result": {k: self.field.fmt(c) for k, c in sorted(
                    r.items(), key=lambda kc: self.sort_key(kc[0]))}}
                for (a, b), r in sorted(self.table.items(),
                                        key=lambda kv: (self.sort_key(kv[0][0]), self.sort_key(kv[0][1])))
                if r
            ],
        }


def materialize(mul: Callable[[Element, Element], Element], basis: list[Element], names: list[str],
                field: Field, label: str) -> TableAlgebra:
    """Structure-constant table of ``mul`` on ``basis`` (each basis element a single key)."""
    keys = [next(iter(b.terms)) for b in basis]
    index = {k: n for k, n in zip(keys, names)}
    table = {}
    for a, na in zip(basis, names):
        for b, nb in zip(basis, names):
            r = mul(a, b)
            table[(na, nb)] = {index[k]: c for k, c in r.terms.items()}
    par = [b.parent.key_parity(k) for b, k in zip(basis, keys)]
    return TableAlgebra(names, par, table, field, label)
