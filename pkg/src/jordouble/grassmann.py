"""Truncated Grassmann superalgebra Lambda(N) with bitset monomials."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, Element, StructureError
from .field import QQ, Field


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(mask: int):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        if m >> i & 1:
            raise ValueError(f"repeated index {i}")
        m |= 1 << i
    return m


def merge_sign(a: int, b: int) -> int:
    """Parity of the shuffle putting the letters of a.b into ascending order (a, b disjoint)."""
    s = 0
    while b:
        low = b & -b
        s += popcount(a >> low.bit_length())
        b ^= low
    return -1 if s & 1 else 1


def mono_mul(a: int, b: int):
    """Product of two Grassmann monomials given as bitsets.

    Returns ``(sign, product)`` or ``None`` when the index sets meet.
    """
    if a & b:
        return None
    return merge_sign(a, b), a | b


@dataclass(frozen=True)
class VarTable:
    """Names and letter families of the N variables of a truncation."""

    count: int
    names: tuple = ()
    family: tuple = ()
    layout: str = "plain"
    letters: int = dc_field(default=1, compare=False)

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("need at least one variable")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.count)))
        if not self.family:
            object.__setattr__(self, "family", tuple("x" for _ in range(self.count)))
        if len(self.names) != self.count or len(set(self.names)) != self.count:
            raise ValueError("names must be unique and match the count")

    @classmethod
    def plain(cls, n: int) -> "VarTable":
        return cls(n)

    @classmethod
    def families(cls, levels: int, letters: str) -> "VarTable":
        """Interleaved families: letter ``letters[f]`` at level i sits at index ``len(letters)*i + f``."""
        names, fam = [], []
        for i in range(levels):
            for f in letters:
                names.append(f"{f}{i}")
                fam.append(f)
        return cls(len(names), tuple(names), tuple(fam), layout=letters, letters=len(letters))

    @classmethod
    def triples(cls, levels: int) -> "VarTable":
        return cls.families(levels, "xyz")

    @classmethod
    def hamiltonian(cls, n: int) -> "VarTable":
        names = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))
        return cls(2 * n, names, tuple("x" * n + "y" * n), layout="hamiltonian")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            m = re.fullmatch(r"x(\d+)", name)
            if m and self.layout == "plain":
                return int(m.group(1))
            raise KeyError(name) from None

    def at(self, letter: str, level: int) -> int:
        if self.layout in ("plain", "hamiltonian"):
            return self.index(f"{letter}{level}")
        return self.letters * level + self.layout.index(letter)


class GrassmannElement(Element):
    __slots__ = ()

    def partial(self, i: int) -> "GrassmannElement":
        return partial(i, self)

    def degree(self) -> int | None:
        degs = {popcount(k) for k in self.terms}
        return degs.pop() if len(degs) == 1 else None


class Grassmann(Algebra):
    """Lambda over a VarTable; keys are bitset monomials."""

    element_class = GrassmannElement

    def __init__(self, vars: VarTable | int, field: Field = QQ):
        self.vars = VarTable(vars) if isinstance(vars, int) else vars
        self.field = field
        self.N = self.vars.count

    def __eq__(self, other):
        return isinstance(other, Grassmann) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"Grassmann(N={self.N}, {self.field.name})"

    def __reduce__(self):
        return (Grassmann, (self.vars, self.field))

    def key_parity(self, key):
        return popcount(key) & 1

    def sort_key(self, key):
        return (popcount(key), tuple(bits(key)))

    def one(self) -> GrassmannElement:
        return self.element({0: 1})

    def gen(self, i) -> GrassmannElement:
        if isinstance(i, str):
            i = self.vars.index(i)
        if not 0 <= i < self.N:
            raise IndexError(f"variable {i} outside Lambda({self.N})")
        return self.element({1 << i: 1})

    def monomial(self, indices, coeff=1) -> GrassmannElement:
        """Ordered product of variables in the given (possibly unsorted) order."""
        m, sign = 0, 1
        for i in indices:
            r = mono_mul(m, 1 << i)
            if r is None:
                return self.zero()
            s, m = r
            sign *= s
        return self.element({m: self.field(coeff * sign)}, clean=True)

    def mul_keys(self, a, b):
        r = mono_mul(a, b)
        return {} if r is None else {r[1]: r[0]}

    def mul(self, u, v):
        out: dict = {}
        for a, ca in u.terms.items():
            for b, cb in v.terms.items():
                if a & b:
                    continue
                k = a | b
                out[k] = out.get(k, 0) + merge_sign(a, b) * ca * cb
        return self.element(self.field.clean(out))

    def basis(self, degree: int | None = None) -> list[GrassmannElement]:
        keys = [m for m in range(1 << self.N) if degree is None or popcount(m) == degree]
        return [self.element({m: 1}) for m in sorted(keys, key=self.sort_key)]

    def restrict(self, e, n):
        cut = (1 << n) - 1
        return self.element({k: c for k, c in e.terms.items() if not k & ~cut})

    def format_key(self, key):
        if not key:
            return "1"
        return " ".join(self.vars.names[i] + "^" for i in bits(key))

    def parse(self, text: str) -> GrassmannElement:
        """Inverse of ``format``: ``c * x3^ x5^ + ...``; ``c`` alone is a constant."""
        text = text.strip()
        if text == "0":
            return self.zero()
        out: dict = {}
        for chunk in split_terms(text):
            coeff, _, rest = chunk.partition("*")
            if not _:
                coeff, rest = chunk, "1"
            sign = 1
            m = 0
            for tok in rest.split():
                if tok == "1":
                    continue
                if not tok.endswith("^"):
                    raise ValueError(f"bad Grassmann token {tok!r}")
                r = mono_mul(m, 1 << self.vars.index(tok[:-1]))
                if r is None:
                    m = None
                    break
                sign *= r[0]
                m = r[1]
            if m is None:
                continue
            out[m] = out.get(m, 0) + sign * self.field.parse(coeff)
        return self.element(self.field.clean(out))


def split_terms(text: str) -> list[str]:
    """Split on top-level ``+`` separators (those outside parentheses)."""
    parts, depth, cur = [], 0, []
    tokens = re.split(r"(\(|\)|\s\+\s)", text)
    for tok in tokens:
        if tok == "(":
            depth += 1
        elif tok == ")":
            depth -= 1
        if depth == 0 and tok is not None and re.fullmatch(r"\s\+\s", tok):
            parts.append("".join(cur).strip())
            cur = []
        elif tok:
            cur.append(tok)
    if cur:
        parts.append("".join(cur).strip())
    return [p for p in parts if p]


def partial_key(i: int, m: int):
    """d_i applied to monomial m: ``(sign, m without i)`` or None."""
    bit = 1 << i
    if not m & bit:
        return None
    return (-1 if popcount(m & (bit - 1)) & 1 else 1), m ^ bit


def partial(i: int, f: GrassmannElement) -> GrassmannElement:
    """Odd left superderivative d/dx_i."""
    if not 0 <= i < f.parent.N:
        raise IndexError(f"variable {i} outside Lambda({f.parent.N})")
    out = {}
    for m, c in f.terms.items():
        r = partial_key(i, m)
        if r:
            out[r[1]] = r[0] * c
    return f.parent.element(out)


class TensorElement(Element):
    __slots__ = ()


class SuperTensor(Algebra):
    """A (x) B with Kaplansky's sign rule; keys are pairs of keys."""

    element_class = TensorElement

    def __init__(self, A: Algebra, B: Algebra):
        if A.field != B.field:
            raise StructureError("tensor factors over different fields")
        self.A, self.B, self.field = A, B, A.field

    def __eq__(self, other):
        return isinstance(other, SuperTensor) and self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"({self.A!r} (x) {self.B!r})"

    def key_parity(self, key):
        return (self.A.key_parity(key[0]) + self.B.key_parity(key[1])) & 1

    def sort_key(self, key):
        return (self.A.sort_key(key[0]), self.B.sort_key(key[1]))

    def pure(self, a: Element, b: Element) -> TensorElement:
        out: dict = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                out[(ka, kb)] = ca * cb
        return self.element(out, clean=True)

    def mul_keys(self, k1, k2):
        a1, b1 = k1
        a2, b2 = k2
        sign = -1 if self.B.key_parity(b1) & self.A.key_parity(a2) else 1
        out = {}
        for ka, ca in self.A.mul_keys(a1, a2).items():
            for kb, cb in self.B.mul_keys(b1, b2).items():
                out[(ka, kb)] = sign * ca * cb
        return out

    def basis(self) -> list[TensorElement]:
        return [self.pure(a, b) for a in self.A.basis() for b in self.B.basis()]

    def format_key(self, key):
        return f"({self.A.format_key(key[0])} (x) {self.B.format_key(key[1])})"


def kaplansky_mul(u: TensorElement, v: TensorElement) -> TensorElement:
    """(a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1a2 (x) b1b2, extended bilinearly."""
    return u.parent.mul(u, v)
