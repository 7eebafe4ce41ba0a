"""Command-line entry point: ``python -m jordouble <command> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import catalog
from .field import field_from_string
from .generate import SCHEMA_VERSION, dimension_table, growth_function, periodicity_probe
from .series import gk_slope, hilbert, jordan_transfer, transfer_consistency
from .suites import SUITES, NotApplicable, SuiteOptions, run_suite

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_RELIABILITY = 0, 2, 3, 4
OUT_ENV = "JORDOUBLE_OUT"
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    example: str = "R"
    field: str = "QQ"
    N: int | None = None
    D: int | None = None
    seed: int = 0
    format: str = "json"
    out: str | None = None
    workers: int = 1

    def validate(self) -> "RunConfig":
        """Check against the catalog before any computation; fills in defaults."""
        try:
            spec = catalog.lookup(self.example)
            field_from_string(self.field)
            N, D = spec.validate(self.N, spec.D if self.D is None else self.D)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc).strip("'\"")) from None
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        return RunConfig(self.example, self.field, N, D, self.seed, self.format, self.out, self.workers)

    def build(self):
        return catalog.build(self.example, self.N, self.D, field_from_string(self.field), self.workers)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, stem: str, text: str):
    ext = {"json": "json", "csv": "csv", "text": "txt"}[cfg.format]
    target = cfg.out
    if target is None and os.environ.get(OUT_ENV):
        target = str(Path(os.environ[OUT_ENV]) / f"{stem}.{ext}")
    if target is None or target == "-":
        sys.stdout.write(text)
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _unreliable(basis) -> list:
    return [list(m) for m, ok in sorted(basis.reliable.items()) if not ok]


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_dims(cfg: RunConfig) -> int:
    built = cfg.build()
    table = dimension_table(built.basis)
    text = {"json": table.dumps, "csv": table.to_csv, "text": table.to_text}[cfg.format]()
    _emit(cfg, f"dims-{cfg.example}", text)
    return EXIT_RELIABILITY if _unreliable(built.basis) else EXIT_OK


def _lie_pair(cfg: RunConfig):
    """(L basis, J basis) for the series transfer, or (basis, None) without a Jordan double."""
    spec = catalog.lookup(cfg.example)
    field = field_from_string(cfg.field)
    if spec.kind == "lie":
        L = cfg.build()
        J = catalog.build("Jor" + cfg.example, cfg.N, 3 * cfg.D - 1, field, cfg.workers)
        return L, J
    if spec.kind == "jordan":
        DL = (cfg.D + 1) // 3
        if DL < 1:
            raise UsageError("D too small for a Jordan-double transfer (need D >= 2)")
        L = catalog.build(cfg.example[3:], cfg.N, DL, field, cfg.workers)
        J = catalog.build(cfg.example, cfg.N, 3 * DL - 1, field, cfg.workers)
        return L, J
    return cfg.build(), None


def cmd_series(cfg: RunConfig, bivariate: bool = False) -> int:
    L, J = _lie_pair(cfg)
    doc = {"schema_version": SCHEMA_VERSION, "example": cfg.example, "field": cfg.field, "N": cfg.N}
    code = EXIT_OK
    if J is None:
        h = hilbert(L.basis)
        doc.update({"H": h.to_json(), "H_text": str(h)})
        rows = [[e, c] for e, c in h.coeffs]
        if _unreliable(L.basis):
            code = EXIT_RELIABILITY
    else:
        HL, HJ = hilbert(L.basis), hilbert(J.basis)
        formula = jordan_transfer(HL)
        rep = transfer_consistency(L.basis, J.basis)
        doc.update({"H_L": HL.to_json(), "H_J_direct": HJ.to_json(), "H_J_formula": formula.to_json(),
                    "H_L_text": str(HL), "H_J_text": str(HJ), "diff": rep.series_diff,
                    "transfer": rep.to_json()})
        if bivariate:
            if len(L.basis.multidegrees[0]) != 2:
                raise UsageError("bivariate series need a two-generator Lie algebra")
            bj = hilbert(J.basis, 2)
            # bivariate formula needs H(L) in the single variable t1 t2^2, i.e. by total degree
            bf = jordan_transfer(HL, bivariate=True)
            doc["bivariate"] = {"H_J_direct": bj.to_json(), "H_J_formula": bf.to_json(),
                                "diff": str(bf - bj), "H_J_text": str(bj)}
            if str(bf - bj) != "0":
                code = EXIT_INVARIANT
        rows = [[n, HL[n], HJ[n], formula[n]] for n in range(J.basis.D + 1)]
        if not rep.ok:
            code = EXIT_INVARIANT
        elif _unreliable(L.basis) or _unreliable(J.basis):
            code = EXIT_RELIABILITY
    if cfg.format == "json":
        text = _dump_json(doc)
    elif cfg.format == "csv":
        text = _rows_csv(["n", "H_L", "H_J_direct", "H_J_formula"] if J is not None else ["n", "H"], rows)
    else:
        keys = ["H_text"] if J is None else ["H_L_text", "H_J_text", "diff"]
        text = "".join(f"{k.replace('_text', '')}: {doc[k]}\n" for k in keys)
        if "bivariate" in doc:
            text += "".join(f"bivariate {k.replace('_text', '')}: {doc['bivariate'][k]}\n"
                            for k in ("H_J_text", "diff"))
    _emit(cfg, f"series-{cfg.example}", text)
    return code


def cmd_growth(cfg: RunConfig, window=None) -> int:
    built = cfg.build()
    gamma = growth_function(built.basis)
    D = built.basis.D
    window = tuple(window) if window else (max(2, D // 2), D)
    try:
        slope = gk_slope(gamma, window)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    totals = built.basis.total_dims()
    period = periodicity_probe(totals[1:]) if D >= 9 else None
    doc = {"schema_version": SCHEMA_VERSION, "example": cfg.example, "N": cfg.N, "D": D,
           "gamma": gamma, "ratio": [None] + [round(g / n, 6) for n, g in enumerate(gamma) if n],
           "gk_slope": round(slope, 6), "window": list(window), "period_probe": period}
    if cfg.format == "json":
        text = _dump_json(doc)
    elif cfg.format == "csv":
        text = _rows_csv(["n", "dim", "gamma"], [[n, totals[n], g] for n, g in enumerate(gamma)])
    else:
        text = "".join(f"n={n:3d} gamma={g}\n" for n, g in enumerate(gamma))
        text += f"gk slope over {list(window)}: {slope:.6f}\n"
    _emit(cfg, f"growth-{cfg.example}", text)
    return EXIT_RELIABILITY if _unreliable(built.basis) else EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str, samples: int, corrupt: bool) -> int:
    if suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {suite!r}")
    opts = SuiteOptions(seed=cfg.seed, samples=samples, corrupt=corrupt)
    built = None if suite == "recursion" else cfg.build()
    try:
        reports = run_suite(suite, built, opts)
    except NotApplicable as exc:
        raise UsageError(f"suite {suite!r} does not apply: {exc}") from None
    if not reports:
        raise UsageError(f"no suite applies to {cfg.example}")
    ok = all(r.holds for r in reports)
    doc = {"schema_version": SCHEMA_VERSION, "example": cfg.example, "suite": suite, "seed": cfg.seed,
           "corrupt": corrupt, "holds": ok, "reports": [r.to_json() for r in reports]}
    if cfg.format == "json":
        text = _dump_json(doc)
    else:
        rows = []
        for r in reports:
            j = r.to_json()
            name = j.get("identity") or j.get("check") or j.get("info")
            tested = j.get("tested", len(getattr(r, "lines", ())) or "")
            rows.append([name, j.get("algebra", "-"), tested, "holds" if r.holds else "FAILS"])
        text = _rows_csv(["identity", "algebra", "tested", "verdict"], rows) if cfg.format == "csv" else \
            "".join(f"{v:6s} {n} [{a}] tested={t}\n" for n, a, t, v in rows)
    _emit(cfg, f"verify-{cfg.example}-{suite}", text)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_catalog(cfg: RunConfig) -> int:
    rows = catalog.catalog_listing()
    if cfg.format == "json":
        text = _dump_json({"schema_version": SCHEMA_VERSION, "examples": rows})
    elif cfg.format == "csv":
        text = _rows_csv(["name", "kind", "N", "N_unit", "D", "summary"],
                         [[r["name"], r["kind"], r["N"], r["N_unit"], r["D"], r["summary"]] for r in rows])
    else:
        text = "".join(f"{r['name']:6s} {r['kind']:8s} N={r['N']} D={r['D']}  {r['summary']}\n" for r in rows)
    _emit(cfg, "catalog", text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, fmt: str = "json"):
    p.add_argument("--example", default="R", help="catalog name (see `catalog list`)")
    p.add_argument("--field", default="QQ", help="QQ or Fp, e.g. F7")
    p.add_argument("--N", type=int, default=None, help="truncation (variables, or letter-triples)")
    p.add_argument("--D", type=int, default=None, help="max degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default=fmt)
    p.add_argument("--out", default=None, help=f"output file ('-' for stdout; default ${OUT_ENV} or stdout)")
    p.add_argument("--workers", type=int, default=1)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jordouble", description="Graded superalgebras from pivot derivations.")
    sub = ap.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("dims", help="dimension table of a catalog algebra"))
    p = sub.add_parser("series", help="Hilbert series and the Jordan-double transfer check")
    _common(p)
    p.add_argument("--bivariate", action="store_true")
    p = sub.add_parser("growth", help="growth function and GK slope estimate")
    _common(p)
    p.add_argument("--window", type=int, nargs=2, default=None, metavar=("N0", "N1"))
    p = sub.add_parser("verify", help="run identity suites")
    _common(p)
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--corrupt", action="store_true", help="negative control: perturb the product")
    p = sub.add_parser("catalog", help="list named examples")
    p.add_argument("action", choices=["list"])
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", default=None)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(RunConfig(format=args.format, out=args.out))
        cfg = RunConfig(args.example, args.field, args.N, args.D, args.seed, args.format, args.out,
                        args.workers).validate()
        if args.command == "dims":
            return cmd_dims(cfg)
        if args.command == "series":
            return cmd_series(cfg, args.bivariate)
        if args.command == "growth":
            return cmd_growth(cfg, args.window)
        return cmd_verify(cfg, args.suite, args.samples, args.corrupt)
    except UsageError as exc:
        print(f"jordouble: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def config_dict(cfg: RunConfig) -> dict:
    return asdict(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
