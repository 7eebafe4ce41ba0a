"""Truncated generating functions, the Jordan-double transfer, and growth diagnostics."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer Laurent polynomial in one or two variables, known through total degree ``D``."""

    coeffs: tuple  # sorted ((exponent, coeff), ...), exponent an int or a pair
    D: int
    nvars: int = 1

    @classmethod
    def from_dict(cls, d: dict, D: int, nvars: int = 1) -> "TruncatedSeries":
        items = []
        for e, c in d.items():
            if not c:
                continue
            if cls._total(e) > D:
                continue
            items.append((e, int(c)))
        return cls(tuple(sorted(items)), D, nvars)

    @staticmethod
    def _total(e):
        return sum(e) if isinstance(e, tuple) else e

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, e):
        return self.as_dict().get(e, 0)

    def truncate(self, D: int) -> "TruncatedSeries":
        return TruncatedSeries.from_dict(self.as_dict(), min(D, self.D), self.nvars)

    def __add__(self, other):
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return TruncatedSeries.from_dict(d, min(self.D, other.D), self.nvars)

    def __sub__(self, other):
        return self + TruncatedSeries(tuple((e, -c) for e, c in other.coeffs), other.D, other.nvars)

    def is_zero(self):
        return not self.coeffs

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "D": self.D,
                "terms": [{"exp": list(e) if isinstance(e, tuple) else e, "coeff": c} for e, c in self.coeffs]}

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = ("t",) if self.nvars == 1 else ("t1", "t2")

        def mono(e):
            es = e if isinstance(e, tuple) else (e,)
            parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, es) if k]
            return "*".join(parts)
        out = []
        for e, c in self.coeffs:
            m = mono(e)
            out.append(str(c) if not m else (m if c == 1 else f"{c}*{m}"))
        return " + ".join(out).replace("+ -", "- ")


def hilbert(b, variables: int = 1) -> TruncatedSeries:
    """Hilbert series of a GradedBasis.

    Univariate: by total degree.  Bivariate: by the two coordinates of a
    2-generator multidegree, or (degree in the Lie generators, degree in 1bar)
    for a Jordan double whose last generator is 1bar.
    """
    d: dict = {}
    if variables == 1:
        for m, elems in b.components.items():
            d[sum(m)] = d.get(sum(m), 0) + len(elems)
        return TruncatedSeries.from_dict(d, b.D, 1)
    if variables != 2:
        raise ValueError("variables must be 1 or 2")
    k = len(b.multidegrees[0])
    for m, elems in b.components.items():
        e = (m[0], m[1]) if k == 2 else (sum(m[:-1]), m[-1])
        d[e] = d.get(e, 0) + len(elems)
    return TruncatedSeries.from_dict(d, b.D, 2)


def jordan_transfer(HL: TruncatedSeries, bivariate: bool = False) -> TruncatedSeries:
    """H(Jor(L)) from H(L): 1 + t + (1/t + 1/t^2) H(L, t^3), or bivariately
    1 + t2 + (1/t2 + 1/t2^2) H(L, t1 t2^2).  Declared reliable through 3 D_L - 1."""
    if HL.nvars != 1:
        raise ValueError("H(L,t) must be univariate")
    if HL[0]:
        raise ValueError("H(L,t) must have zero constant term")
    D = 3 * HL.D - 1
    d: dict = {}

    def add(e, c):
        d[e] = d.get(e, 0) + c
    if bivariate:
        add((0, 0), 1)
        add((0, 1), 1)
        for n, c in HL.coeffs:
            add((n, 2 * n - 1), c)
            add((n, 2 * n - 2), c)
        return TruncatedSeries.from_dict(d, D, 2)
    add(0, 1)
    add(1, 1)
    for n, c in HL.coeffs:
        add(3 * n - 1, c)
        add(3 * n - 2, c)
    return TruncatedSeries.from_dict(d, D, 1)


def cumulative(dims) -> list[int]:
    out, acc = [], 0
    for x in dims:
        acc += x
        out.append(acc)
    return out


@dataclass
class TransferReport:
    m_max: int
    series_diff: str
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.series_diff == "0" and not self.mismatches

    def to_json(self):
        return {"m_max": self.m_max, "series_diff": self.series_diff, "mismatches": self.mismatches,
                "ok": self.ok}


def transfer_consistency(L, J) -> TransferReport:
    """Compare the formula-side growth of Jor(L) against the directly generated J.

    Checks gamma_J(3m) = gamma_J(3m-1) = 2 + 2 gamma_L(m) and
    gamma_J(3m-2) = 2 + 2 gamma_L(m) - dim L_m on the common window.
    """
    dl = L.total_dims()
    dj = J.total_dims()
    gl, gj = cumulative(dl), cumulative(dj)
    m_max = min(L.D, (J.D + 1) // 3)
    bad = []
    for m in range(1, m_max + 1):
        want = 2 + 2 * gl[m]
        checks = [(3 * m - 1, want), (3 * m - 2, want - dl[m])]
        if 3 * m <= J.D:
            checks.append((3 * m, want))
        for n, w in checks:
            if gj[n] != w:
                bad.append({"n": n, "direct": gj[n], "formula": w})
    HL = hilbert(L).truncate(m_max)
    diff = jordan_transfer(HL) - hilbert(J).truncate(3 * m_max - 1)
    return TransferReport(m_max, str(diff), bad)


def gk_slope(gamma, window) -> float:
    """Least-squares slope of ln gamma(n) against ln n over [n0, n1] (diagnostic only)."""
    n0, n1 = window
    if n0 < 2 or n1 <= n0 or n1 >= len(gamma):
        raise ValueError(f"window {window} outside the computed range 2..{len(gamma) - 1}")
    xs = [math.log(n) for n in range(n0, n1 + 1)]
    ys = [math.log(gamma[n]) for n in range(n0, n1 + 1)]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den


def dumps(series: TruncatedSeries) -> str:
    return json.dumps(series.to_json(), sort_keys=True)
