"""Exact coefficient fields: the rationals and prime fields F_p with p >= 5."""
from __future__ import annotations

from fractions import Fraction
import re


class Field:
    """Common interface for the coefficient fields.

    Scalars are plain Python numbers: ``int``/``Fraction`` over QQ and ``int``
    residues in ``[0, p)`` over F_p.  ``clean`` normalises a sparse coefficient
    map in place-free fashion and drops zeros.
    """

    p = 0
    name = "?"

    def __call__(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def clean(self, terms: dict) -> dict:
        raise NotImplementedError

    def fmt(self, c) -> str:
        raise NotImplementedError

    def parse(self, s: str):
        return self(Fraction(s.strip()))

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __reduce__(self):
        return (field_from_string, (self.name,))


class Rationals(Field):
    p = 0
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Fraction):
            return int(x) if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self(Fraction(1) / x)

    def clean(self, terms):
        out = {}
        for k, c in terms.items():
            if c:
                if type(c) is Fraction and c.denominator == 1:
                    c = c.numerator
                out[k] = c
        return out

    def fmt(self, c):
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class PrimeField(Field):
    def __init__(self, p: int):
        if p in (2, 3):
            raise ValueError("characteristics 2 and 3 are not supported")
        if p < 5 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime >= 5")
        self.p = p
        self.name = f"F{p}"

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def clean(self, terms):
        p = self.p
        out = {}
        for k, c in terms.items():
            c %= p
            if c:
                out[k] = c
        return out

    def fmt(self, c):
        return str(c % self.p)


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_string(s: str) -> Field:
    """Accept ``Q``, ``QQ``, ``F7``, ``GF(7)`` or ``Fp7``."""
    s = s.strip()
    if s.upper() in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF\(|F|Fp|GF)(\d+)\)?", s, flags=re.IGNORECASE)
    if not m:
        raise ValueError(f"unknown field {s!r}")
    return PrimeField(int(m.group(1)))
