"""Sparse reduced row echelon form over an exact field, keyed by hashable terms."""
from __future__ import annotations

from typing import Callable, Hashable

from .field import Field


class Echelon:
    """Incrementally maintained RREF.

    The pivot of a row is its least key under ``order``; pivots are normalised
    to 1 and every other row is zero in each pivot column, so the final rows
    depend only on the span, never on insertion order.
    """

    def __init__(self, field: Field, order: Callable[[Hashable], object]):
        self.field = field
        self.order = order
        self.rows: dict = {}
        self._cols: dict = {}  # key -> set of pivots whose row contains key

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        rows = self.rows
        for p in [k for k in v if k in rows]:
            c = v.get(p)
            if not c:
                continue
            for k, x in rows[p].items():
                v[k] = v.get(k, 0) - c * x
        return self.field.clean(v)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict):
        """Add ``vec`` to the span; returns the new pivot or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        f = self.field
        p = min(v, key=self.order)
        inv = f.inv(v[p])
        v = f.clean({k: x * inv for k, x in v.items()})
        for q in list(self._cols.get(p, ())):
            row = self.rows[q]
            c = row[p]
            new = dict(row)
            for k, x in v.items():
                new[k] = new.get(k, 0) - c * x
            new = f.clean(new)
            for k in row:
                if k not in new:
                    self._cols[k].discard(q)
            for k in new:
                self._cols.setdefault(k, set()).add(q)
            self.rows[q] = new
        self.rows[p] = v
        for k in v:
            self._cols.setdefault(k, set()).add(p)
        return p

    def rank_of(self, vectors) -> int:
        e = Echelon(self.field, self.order)
        return sum(e.insert(v) is not None for v in vectors)


def rank(vectors, field: Field, order=lambda k: k) -> int:
    return Echelon(field, order).rank_of(vectors)
