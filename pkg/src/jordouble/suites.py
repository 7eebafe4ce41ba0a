"""Named verification suites run against catalog examples."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from types import SimpleNamespace

from .algebra import Element
from .catalog import Built, CheckReport, m11_check, pivot_square_check, pivot_v, recursion_check
from .doubles import JordanDouble, KantorDouble, TrivialPoisson, d_map, hamiltonian
from .identities import (Exhaustive, IdentityReport, Sampled, check_homogeneous_nil_cube, check_jordan_super,
                         check_leibniz, check_square_square, check_super_anticomm, check_super_jacobi,
                         check_supercommutative, solvability_chain)
from .operators import Inconclusive, ad_nil_index

SUITES = ("lie", "jordan", "poisson", "nil", "recursion")


class NotApplicable(Exception):
    """The suite has nothing to check on this example."""


@dataclass
class InfoReport:
    """Evidence that is reported but never fails a run."""

    name: str
    data: dict = dc_field(default_factory=dict)
    holds: bool = True

    def to_json(self):
        return {"info": self.name, "data": self.data}


class Corrupted:
    """Product plus the symmetric bilinear term eps(u) eps(v) w, eps = sum of coefficients.

    Used as a negative control: any honest identity check should now fail.
    """

    def __init__(self, product, w: Element):
        self.product, self.w = product, w

    def __call__(self, u, v):
        eps = sum(u.terms.values()) * sum(v.terms.values())
        r = self.product(u, v)
        return r + self.w.scale(eps) if eps else r


@dataclass
class SuiteOptions:
    seed: int = 0
    samples: int = 1000
    max_degree: int = 8
    corrupt: bool = False


def _strategy(pool, arity, opts, limit=20000):
    return Exhaustive() if len(pool) ** arity <= limit else Sampled(opts.samples, opts.seed)


def _maybe_corrupt(product, pool, opts):
    return Corrupted(product, next(e for e in pool if e)) if opts.corrupt else product


def _window(built: Built, top: int):
    return [e for m in built.basis.degrees() if 0 < sum(m) <= top for e in built.basis.components[m]]


def _ell(J, e):
    """L-part of an element of Jor(L) lying in L itself, else None."""
    if J.part(e, 1) or e.c1:
        return None
    return J.P.carrier.split(J.part(e, 0))[1] or None


def _lie_target(built: Built, cap: int):
    """(bracket, pool, label) for the Lie-type structure carried by the example, degrees <= cap."""
    kind, name = built.spec.kind, built.spec.name
    if kind == "jordan":
        J = built.algebra
        pool = [_ell(J, e) for e in _window(built, 3 * cap)]
        return J.L.bracket, [e for e in pool if e is not None], f"L in {name}"
    if kind in ("lie", "assoc", "poisson") or name == "M11":
        suffix = {"assoc": " (supercommutator)", "poisson": " (bracket)"}.get(kind, "")
        return built.algebra.bracket, _window(built, cap), name + suffix
    if name.startswith("KanH"):
        H = built.extra["poisson"]
        return H.bracket, H.basis(), H.label
    if name.startswith("H"):
        return built.algebra.bracket, built.algebra.basis(), name
    raise NotApplicable(name)


def suite_lie(built: Built, opts: SuiteOptions) -> list:
    bracket, pool, label = _lie_target(built, opts.max_degree)
    pool = [e for e in pool if e]
    bracket = _maybe_corrupt(bracket, pool, opts)
    return [check_super_anticomm(bracket, pool, _strategy(pool, 2, opts), label),
            check_super_jacobi(bracket, pool, _strategy(pool, 3, opts), label)]


def _jordan_target(built: Built):
    kind, name = built.spec.kind, built.spec.name
    if kind == "jordan":
        return built.algebra, built.basis.elements(), name
    if name.startswith("KanH"):
        return built.algebra, built.algebra.basis(), name
    if name.startswith("H"):
        K = KantorDouble(built.algebra)
        return K, K.basis(), f"Kan({name})"
    if kind == "lie":
        J = JordanDouble(built.algebra)
        pool = [J.one(), J.onebar()] + [f(e) for e in built.basis.elements() for f in (J.embed, J.bar)]
        return J, pool, f"Jor({name})"
    raise NotApplicable(name)


def suite_jordan(built: Built, opts: SuiteOptions) -> list:
    J, pool, label = _jordan_target(built)
    pool = [e for e in pool if e]
    mul = _maybe_corrupt(J.mul, pool, opts)
    return [check_supercommutative(mul, pool, _strategy(pool, 2, opts), label),
            check_jordan_super(mul, pool, Sampled(opts.samples, opts.seed), label)]


def suite_poisson(built: Built, opts: SuiteOptions) -> list:
    kind, name = built.spec.kind, built.spec.name
    out = []
    if name.startswith("H") or name.startswith("KanH") or kind == "poisson":
        H = built.extra.get("poisson", built.algebra)
        pool = built.basis.elements() if kind == "poisson" else H.basis()
    elif kind in ("lie", "jordan"):
        L = built.algebra.L if kind == "jordan" else built.algebra
        H = TrivialPoisson(L)
        src = built.basis.elements() if kind == "lie" else \
            [_ell(built.algebra, e) for e in built.basis.elements()]
        pool = [H.one()] + [H.embed(e) for e in src if e is not None]
    else:
        raise NotApplicable(name)
    pool = [e for e in pool if e]
    handle = SimpleNamespace(label=H.label, dot=_maybe_corrupt(H.dot, pool, opts), bracket=H.bracket)
    out.append(check_leibniz(handle, pool, _strategy(pool, 3, opts, limit=10 ** 4), H.label))
    if name.startswith("KanH"):
        out.append(d_map_report(built.algebra))
    return out


def d_map_report(K: KantorDouble) -> IdentityReport:
    """D is an odd superderivation with D^2 = 0, on all basis pairs."""
    rep = IdentityReport("odd-superderivation D, D^2 = 0", K.label, Exhaustive().describe())
    basis = K.basis()
    for u in basis:
        rep.tested += 1
        if d_map(d_map(u)) and len(rep.violations) < 5:
            rep.violations.append({"args": [str(u)], "defect": "D^2 != 0"})
        for v in basis:
            rep.tested += 1
            lhs = d_map(K.mul(u, v))
            t = K.mul(u, d_map(v))
            rhs = K.mul(d_map(u), v) + (t if u.parity == 0 else -t)
            if lhs != rhs and len(rep.violations) < 5:
                rep.violations.append({"args": [str(u), str(v)], "defect": str(lhs - rhs)})
    return rep


def nil_reports(J: JordanDouble, basis, opts: SuiteOptions, label: str, cube_degree: int = 12,
                chain_degree: int = 8, squares: int = 500) -> list:
    """Jor° nil properties: (a^2)^2 = 0, a^2 a = a a^2 = 0 per component, and the solvability chain."""
    pool = [e for e in basis.elements() if e and not e.c1]
    mul = _maybe_corrupt(J.mul, pool, opts)
    view = SimpleNamespace(label=J.label, mul=mul, zero=J.zero, field=J.field, sort_key=J.sort_key,
                           element=J.element)
    out = [check_square_square(view, pool, Sampled(squares, opts.seed, mix=4), label),
           check_homogeneous_nil_cube(view, basis, cube_degree, label)]
    span = [e for m in basis.degrees() if 0 < sum(m) <= chain_degree for e in basis.components[m]]
    chain = solvability_chain(view, span)
    out.append(_ChainReport(label, chain_degree, chain))
    return out


@dataclass
class _ChainReport:
    algebra: str
    degree: int
    data: dict

    @property
    def holds(self):
        d = self.data
        return d["square_in_L_plus_Lbar"] and d["second_in_L"] and d["third_zero"]

    def to_json(self):
        return {"identity": "((S^2)^2)^2 = 0", "algebra": self.algebra, "spanning_degree": self.degree,
                **self.data, "verdict": "holds" if self.holds else "counterexample"}


def suite_nil(built: Built, opts: SuiteOptions) -> list:
    kind, name = built.spec.kind, built.spec.name
    if kind == "jordan":
        return nil_reports(built.algebra, built.basis, opts, name)
    if kind == "lie" and built.spec.name == "R":
        E = built.algebra
        info = {}
        for g in ("v0", "v1"):
            r = ad_nil_index(pivot_v(int(g[1]), E.N, algebra=E), built.basis, 12)
            info[g] = r.reason if isinstance(r, Inconclusive) else r
        return [InfoReport("ad-nil index of the generators on the reliable window", info)]
    raise NotApplicable(name)


def suite_recursion(built: Built | None, opts: SuiteOptions) -> list:
    if opts.corrupt:
        raise NotApplicable("recursion checks are fixed identities; no table to corrupt")
    return [recursion_check("R", 16), recursion_check("Q", 5), recursion_check("P", 5),
            pivot_square_check(4, 16), m11_check()]


RUNNERS = {"lie": suite_lie, "jordan": suite_jordan, "poisson": suite_poisson, "nil": suite_nil,
           "recursion": suite_recursion}


def run_suite(suite: str, built: Built | None, opts: SuiteOptions) -> list:
    """Reports for one suite, or for every applicable suite when ``suite == 'all'``."""
    if suite == "all":
        out = []
        for s in SUITES:
            try:
                out.extend(RUNNERS[s](built, opts))
            except NotApplicable:
                continue
        return out
    if suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    return RUNNERS[suite](built, opts)


__all__ = ["SUITES", "NotApplicable", "InfoReport", "Corrupted", "SuiteOptions", "run_suite", "nil_reports",
           "d_map_report", "CheckReport"]
