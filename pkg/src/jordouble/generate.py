"""Closure of generators under a product, degree by degree, into canonical graded bases."""
from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .algebra import Element
from .linalg import Echelon

SCHEMA_VERSION = 1


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _deg_order(m):
    return (sum(m), m)


@dataclass
class GradedBasis:
    """Echelonised basis of a generated algebra, keyed by multidegree in the generators."""

    kind: str
    generators: tuple
    multidegrees: tuple
    N: int | None
    D: int
    components: dict
    reliable: dict
    label: str = ""
    field: str = "QQ"

    def degrees(self) -> list[tuple]:
        return sorted(self.components, key=_deg_order)

    def dims(self) -> dict:
        return {m: len(self.components[m]) for m in self.degrees()}

    def total_dims(self) -> list[int]:
        out = [0] * (self.D + 1)
        for m, elems in self.components.items():
            out[sum(m)] += len(elems)
        return out

    def elements(self, total: int | None = None) -> list[Element]:
        return [e for m in self.degrees() if total is None or sum(m) == total for e in self.components[m]]

    def degree_of(self, e: Element):
        for m, elems in self.components.items():
            if any(e == x for x in elems):
                return m
        return None

    def reliable_through(self) -> int:
        """Largest n such that every component of total degree <= n is reliable."""
        bad = [sum(m) for m, ok in self.reliable.items() if not ok]
        return min(bad) - 1 if bad else self.D

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "label": self.label,
            "field": self.field,
            "N": self.N,
            "D": self.D,
            "generators": [str(g) for g in self.generators],
            "multidegrees": [list(m) for m in self.multidegrees],
            "components": [
                {"deg": list(m), "reliable": self.reliable[m], "basis": [str(e) for e in self.components[m]]}
                for m in self.degrees()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict, parent) -> "GradedBasis":
        comps = {tuple(c["deg"]): [parent.parse(s) for s in c["basis"]] for c in data["components"]}
        rel = {tuple(c["deg"]): c["reliable"] for c in data["components"]}
        return cls(data["kind"], tuple(parent.parse(s) for s in data["generators"]),
                   tuple(tuple(m) for m in data["multidegrees"]), data["N"], data["D"], comps, rel,
                   data.get("label", ""), data.get("field", "QQ"))


def _run_tasks(fn, pairs, workers):
    if workers <= 1 or len(pairs) < 8:
        return [fn(u, v) for u, v in pairs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, [p[0] for p in pairs], [p[1] for p in pairs],
                           chunksize=max(1, len(pairs) // (4 * workers))))


def _check_gens(gens, multidegrees, D):
    if D < 1:
        raise ValueError("max degree D must be >= 1")
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not Z2-homogeneous")
    if multidegrees is None:
        k = len(gens)
        multidegrees = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    multidegrees = tuple(tuple(m) for m in multidegrees)
    if len(multidegrees) != len(gens) or len({len(m) for m in multidegrees}) != 1:
        raise ValueError("one multidegree of common length per generator")
    if any(sum(m) < 1 for m in multidegrees):
        raise ValueError("generators need positive total degree")
    return multidegrees


def _close(kind, gens, multidegrees, D, product, N, workers, label, unit=None, pairing="generator",
           margin=2) -> GradedBasis:
    parent = gens[0].parent
    ech = Echelon(parent.field, parent.sort_key)
    comp: dict = defaultdict(list)

    def add(vec, deg):
        p = ech.insert(vec.terms if isinstance(vec, Element) else vec)
        if p is not None:
            comp[deg].append(p)

    zero_deg = tuple(0 for _ in multidegrees[0])
    if unit is not None:
        add(unit, zero_deg)
    for g, m in sorted(zip(gens, multidegrees), key=lambda gm: _deg_order(gm[1])):
        if sum(m) <= D:
            add(g, m)
    for n in range(2, D + 1):
        pairs, targets = [], []
        current = {m: [parent.element(ech.rows[p]) for p in ps] for m, ps in comp.items() if sum(m) > 0}
        if pairing == "generator":
            for m in sorted(current, key=_deg_order):
                for g, gm in zip(gens, multidegrees):
                    if sum(m) + sum(gm) != n:
                        continue
                    for e in current[m]:
                        targets.append(_vadd(m, gm))
                        pairs.append((g, e))
        else:
            degs = sorted(current, key=_deg_order)
            for i, m1 in enumerate(degs):
                for m2 in degs[i:]:
                    if sum(m1) + sum(m2) != n:
                        continue
                    for a_i, a in enumerate(current[m1]):
                        for b in current[m2][a_i if m1 == m2 else 0:]:
                            targets.append(_vadd(m1, m2))
                            pairs.append((a, b))
        order = sorted(range(len(pairs)), key=lambda i: _deg_order(targets[i]))
        results = _run_tasks(product, [pairs[i] for i in order], workers)
        for i, r in zip(order, results):
            for x in (r if isinstance(r, tuple) else (r,)):
                if x:
                    add(x, targets[i])
    components = {}
    for m, ps in comp.items():
        components[m] = [parent.element(ech.rows[p]) for p in sorted(ps, key=parent.sort_key)]
    basis = GradedBasis(kind, tuple(gens), multidegrees, N, D, components, {}, label, parent.field.name)
    basis.reliable = reliability(basis, margin)
    return basis


def reliability(basis: GradedBasis, margin: int = 2) -> dict:
    """Flag a component reliable when its basis keeps full rank after truncating
    ``margin`` further variables (restriction is a homomorphism onto the smaller model)."""
    out = {}
    for m, elems in basis.components.items():
        if basis.N is None:
            out[m] = True
            continue
        parent = elems[0].parent
        n = basis.N - margin
        if n < 1:
            out[m] = False
            continue
        ech = Echelon(parent.field, parent.sort_key)
        out[m] = all(ech.insert(parent.restrict(e, n).terms) is not None for e in elems)
    return out


def _default_bracket(g):
    parent = g.parent
    if hasattr(parent, "bracket"):
        return parent.bracket
    raise TypeError(f"{parent!r} has no bracket; pass bracket=")


def generate_lie(gens: Sequence[Element], D: int, multidegrees=None, bracket: Callable | None = None,
                 N: int | None = None, workers: int = 1, label: str = "", margin: int = 2) -> GradedBasis:
    """Lie superalgebra generated by ``gens`` up to total degree D.

    Degree n is spanned by [g, e] with g a generator and e of degree n-1
    (left-normed commutators span a generated Lie algebra).
    """
    multidegrees = _check_gens(gens, multidegrees, D)
    field = gens[0].parent.field
    if field.p in (2, 3):
        raise ValueError("Lie generation needs characteristic != 2, 3")
    bracket = bracket or _default_bracket(gens[0])
    return _close("lie", list(gens), multidegrees, D, bracket, N, workers, label, margin=margin)


def generate_assoc(gens: Sequence[Element], D: int, multidegrees=None, product: Callable | None = None,
                   N: int | None = None, workers: int = 1, label: str = "", margin: int = 2) -> GradedBasis:
    """Associative (non-unital) algebra generated by ``gens``, filtered by word length."""
    multidegrees = _check_gens(gens, multidegrees, D)
    product = product or gens[0].parent.mul
    return _close("assoc", list(gens), multidegrees, D, product, N, workers, label, margin=margin)


def generate_jordan(gens: Sequence[Element], D: int, product: Callable, multidegrees=None, unit=None,
                    N: int | None = None, workers: int = 1, label: str = "", margin: int = 2) -> GradedBasis:
    """Nonassociative closure: degree n is spanned by all J_a . J_b with a + b = n."""
    multidegrees = _check_gens(gens, multidegrees, D)
    return _close("jordan", list(gens), multidegrees, D, product, N, workers, label, unit=unit,
                  pairing="all", margin=margin)


class _Both:
    """Picklable pair of products evaluated on the same arguments."""

    def __init__(self, first, second):
        self.first, self.second = first, second

    def __call__(self, u, v):
        return self.first(u, v), self.second(u, v)


def generate_poisson(gens: Sequence[Element], D: int, dot: Callable, bracket: Callable, multidegrees=None,
                     N: int | None = None, workers: int = 1, label: str = "", margin: int = 2) -> GradedBasis:
    """Non-unital Poisson subalgebra: closure under both the dot product and the bracket."""
    multidegrees = _check_gens(gens, multidegrees, D)
    return _close("poisson", list(gens), multidegrees, D, _Both(dot, bracket), N, workers, label,
                  pairing="all", margin=margin)


@dataclass
class DimensionTable:
    algebra: str
    field: str
    N: int | None
    D: int
    grading: str
    components: list  # (deg tuple, dim, reliable)
    totals: list = dc_field(default_factory=list)

    @property
    def width(self) -> int:
        return max(self.totals[1:], default=0)

    def value_set(self, lo: int = 1, hi: int | None = None) -> set:
        hi = self.D if hi is None else hi
        return set(self.totals[lo:hi + 1])

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": self.algebra,
            "field": self.field,
            "N": self.N,
            "D": self.D,
            "grading": self.grading,
            "components": [{"deg": list(m), "dim": d, "reliable": r} for m, d, r in self.components],
            "totals": [{"deg": n, "dim": d} for n, d in enumerate(self.totals)],
            "width": self.width,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["deg", "total", "dim", "reliable"])
        for m, d, r in self.components:
            w.writerow([" ".join(map(str, m)), sum(m), d, int(r)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.algebra} over {self.field}, N={self.N}, D={self.D}"]
        for n, d in enumerate(self.totals):
            lines.append(f"  deg {n:3d}: {d}")
        lines.append(f"  width {self.width}; values {sorted(self.value_set())}")
        return "\n".join(lines) + "\n"


def dimension_table(b: GradedBasis) -> DimensionTable:
    k = len(b.multidegrees[0])
    grading = {2: "Z2", 3: "Z3"}.get(k, f"Z{k}")
    comps = [(m, len(b.components[m]), b.reliable[m]) for m in b.degrees()]
    return DimensionTable(b.label or b.kind, b.field, b.N, b.D, grading, comps, b.total_dims())


def growth_function(b: GradedBasis) -> list[int]:
    """gamma(n) = dim of the span of generator words of length <= n, n = 0..D."""
    out, acc = [], 0
    for d in b.total_dims():
        acc += d
        out.append(acc)
    return out


def periodicity_probe(dims: Sequence[int]):
    """Smallest period p <= len/3 valid on the whole sequence, or None."""
    L = len(dims)
    if L < 9:
        raise ValueError("need at least 9 terms")
    for p in range(1, L // 3 + 1):
        if all(dims[i] == dims[i + p] for i in range(L - p)):
            return p
    return None
