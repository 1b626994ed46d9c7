"""Command-line entry point: ``sqfull <command> [options]``.

Settings come from three layers, later ones winning: built-in defaults,
a flat ``key = value`` config file (``--config``), then explicit flags.
The default thread count is read from ``SQFULL_THREADS``.  Reports are
CSV (tables) or JSON (structured output), each with a header block holding
the config and library versions, and never depend on timing or thread count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import platform
import sys
from collections import Counter
from dataclasses import asdict, dataclass, fields

import numpy as np
import scipy
import sympy

from . import __version__, checks
from .arith import DomainError
from .cover import CongruenceClass, check_awkward, extract_cover, kappa_of
from .cubic import jacobian_m, rank_upper_bound, rho_count
from .sieve import mu0_count, weil_report
from .squarefull import MAX_B, CoeffTriple, DyadicBox, box_of, count_normalized, count_solutions

COMMANDS = ("count", "normalized", "boxes", "cover", "sieve", "cubic", "verify")
TABLE_COMMANDS = {"count", "normalized", "boxes", "sieve"}


@dataclass
class ExperimentConfig:
    command: str = "verify"
    b: int = 10**4
    coeffs: tuple[int, ...] = (1, 1, -1)
    primitive: bool = False
    sweep: bool = False
    unordered: bool = False
    q: int | None = None
    kappa: int | None = None
    box: tuple[int, ...] | None = None
    form: tuple[int, ...] = (1, 0, 0, 0, 0, 1)
    p: int = 50
    u: int = 32
    r: float = 1.0
    seed: int = 42
    scale: str = "quick"
    threads: int = 1
    format: str | None = None
    out: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.b < 1:
            raise DomainError("--b must be positive")
        if self.b > MAX_B:
            raise DomainError(
                f"B = {self.b} exceeds 2^60; products of two square-full numbers near B "
                "would overflow the 64-bit membership arithmetic, so the run is refused"
            )
        if self.threads < 1:
            raise DomainError("--threads must be >= 1")
        if self.format not in (None, "csv", "json"):
            raise DomainError("--format must be csv or json")
        if self.scale not in ("quick", "full"):
            raise DomainError("--scale must be quick or full")

    @property
    def fmt(self) -> str:
        return self.format or ("csv" if self.command in TABLE_COMMANDS else "json")


def _int_list(s) -> tuple[int, ...]:
    if isinstance(s, (tuple, list)):
        return tuple(int(x) for x in s)
    return tuple(int(x) for x in str(s).replace(" ", "").split(",") if x)


def _bool(s) -> bool:
    if isinstance(s, bool):
        return s
    v = str(s).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise DomainError(f"not a boolean: {s!r}")


_CONVERT = {
    "b": lambda s: int(float(s)) if "e" in str(s).lower() else int(s),
    "coeffs": _int_list,
    "box": _int_list,
    "form": _int_list,
    "primitive": _bool,
    "sweep": _bool,
    "unordered": _bool,
    "q": int,
    "kappa": int,
    "p": int,
    "u": int,
    "r": float,
    "seed": int,
    "threads": int,
}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    names = {f.name for f in fields(ExperimentConfig)}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{n}: expected key = value")
            key, val = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in names or key == "command":
                raise DomainError(f"{path}:{n}: unknown key {key!r}")
            out[key] = _CONVERT.get(key, str)(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sqfull", description="Square-full solutions of u + v = w: experiments and checks.")
    ap.add_argument("--version", action="version", version=f"sqfull {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("--threads", type=int, help="worker threads (default: $SQFULL_THREADS or 1)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="n(B) or n_prim(B)")
    p.add_argument("--b", type=_CONVERT["b"])
    p.add_argument("--primitive", action="store_const", const=True)
    p.add_argument("--sweep", action="store_const", const=True, help="also every power of ten below B")
    p.add_argument("--unordered", action="store_const", const=True, help="add a column counting {u, v} once")

    p = sub.add_parser("normalized", parents=[common], help="solutions of a1 x1^2 y1^3 + a2 x2^2 y2^3 + a3 x3^2 y3^3 = 0")
    p.add_argument("--b", type=_CONVERT["b"])
    p.add_argument("--coeffs", type=_int_list)

    p = sub.add_parser("boxes", parents=[common], help="solution counts per dyadic box")
    p.add_argument("--b", type=_CONVERT["b"])
    p.add_argument("--coeffs", type=_int_list)

    p = sub.add_parser("cover", parents=[common], help="lattice covers and their coverage")
    p.add_argument("--b", type=_CONVERT["b"])
    p.add_argument("--coeffs", type=_int_list)
    p.add_argument("--q", type=int)
    p.add_argument("--kappa", type=int)
    p.add_argument("--box", type=_int_list, help="X1,X2,X3,Y1,Y2,Y3 (with --q and --kappa)")

    p = sub.add_parser("sieve", parents=[common], help="character sum maxima and square-value counts")
    p.add_argument("--form", type=_int_list, help="binary form coefficients, u^d first")
    p.add_argument("--p", type=int, help="prime bound")
    p.add_argument("--u", type=int, help="largest box half-width for square counts")

    p = sub.add_parser("cubic", parents=[common], help="coprime points on a x^3 + b y^3 + c z^3 = 0")
    p.add_argument("--b", type=_CONVERT["b"])
    p.add_argument("--coeffs", type=_int_list)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--scale", choices=("quick", "full"))
    return ap


def make_config(args: argparse.Namespace, environ=os.environ) -> ExperimentConfig:
    vals = {}
    env_threads = environ.get("SQFULL_THREADS")
    if env_threads:
        vals["threads"] = int(env_threads)
    if getattr(args, "config", None):
        vals.update(read_config_file(args.config))
    for f in fields(ExperimentConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            vals[f.name] = v
    cfg = ExperimentConfig(**vals)
    cfg.validate()
    return cfg


# report writers


def _header(cfg: ExperimentConfig) -> dict:
    # thread count is left out on purpose: it must not change the report
    d = {k: v for k, v in asdict(cfg).items() if k not in ("threads", "out", "format")}
    d = {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}
    return {
        "sqfull": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
        "config": d,
    }


def render(cfg: ExperimentConfig, result) -> str:
    """``result`` is (columns, rows) for tables, or any JSON-able object."""
    head = _header(cfg)
    if cfg.fmt == "json":
        if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], list):
            cols, rows = result
            result = [dict(zip(cols, r)) for r in rows]
        return json.dumps({"header": head, "result": result}, indent=2, default=_json_default) + "\n"
    if not (isinstance(result, tuple) and len(result) == 2):
        raise DomainError(f"{cfg.command} produces structured output; use --format json")
    cols, rows = result
    buf = io.StringIO()
    buf.write(f"# sqfull {head['sqfull']} python {head['python']} numpy {head['numpy']} "
              f"scipy {head['scipy']} sympy {head['sympy']}\n")
    for k, v in head["config"].items():
        buf.write(f"# {k} = {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    w.writerows(rows)
    return buf.getvalue()


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    from fractions import Fraction
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# commands


def cmd_count(cfg: ExperimentConfig):
    Bs = []
    if cfg.sweep:
        k = 2
        while 10**k < cfg.b:
            Bs.append(10**k)
            k += 1
    Bs.append(cfg.b)
    name = "n_prim" if cfg.primitive else "n"
    rows = []
    for B in Bs:
        res = count_solutions(B, cfg.primitive, threads=cfg.threads)
        row = [B, res.count, f"{res.count / math.sqrt(B):.6f}"]
        if cfg.unordered:
            row.append(res.unordered)
        rows.append(row)
    cols = ["B", name, f"{name}/sqrt(B)"] + (["unordered"] if cfg.unordered else [])
    return cols, rows


def _coeffs(cfg) -> CoeffTriple:
    if len(cfg.coeffs) != 3:
        raise DomainError("--coeffs needs three integers a1,a2,a3")
    return CoeffTriple(*cfg.coeffs)


def cmd_normalized(cfg: ExperimentConfig):
    a = _coeffs(cfg)
    n, sols = count_normalized(cfg.b, a)
    if cfg.fmt == "json":
        return {"B": cfg.b, "coeffs": list(a.as_tuple()), "count": n,
                "solutions": [{"x": list(s.x), "y": list(s.y)} for s in sols]}
    cols = ["x1", "x2", "x3", "y1", "y2", "y3"]
    return cols, [list(s.x) + list(s.y) for s in sols]


def critical(box: DyadicBox, B: int) -> bool:
    """All X_k in [B^(1/5-1/60), B^(1/5+1/60)] and Y_k in [B^(1/5-1/90), B^(1/5+1/90)]."""
    lb = math.log(B)
    xs = all(abs(math.log(X) / lb - 0.2) <= 1 / 60 for X in box.X)
    ys = all(abs(math.log(Y) / lb - 0.2) <= 1 / 90 for Y in box.Y)
    return xs and ys


def cmd_boxes(cfg: ExperimentConfig):
    a = _coeffs(cfg)
    _, sols = count_normalized(cfg.b, a)
    counts = Counter(box_of(s) for s in sols)
    rows = [list(bx.X) + list(bx.Y) + [n, int(critical(bx, cfg.b))]
            for bx, n in sorted(counts.items(), key=lambda kv: (kv[0].X, kv[0].Y))]
    return ["X1", "X2", "X3", "Y1", "Y2", "Y3", "N0", "critical"], rows


def _cover_row(c, a, box, points, R):
    cov = extract_cover(c, a, box)
    awk = check_awkward(c, a, box, R)
    return {
        "q": c.q,
        "kappa": c.kappa,
        "box": {"X": list(box.X), "Y": list(box.Y)},
        "slicing_vectors": cov.h_size,
        "hyperplanes": cov.t_kept,
        "s0_pieces": len(cov.s0),
        "lattices": len(cov.lattices),
        "points": len(points),
        "covered": sum(cov.contains(p) for p in points),
        "awkward_witness": list(awk) if awk else None,
    }


def cmd_cover(cfg: ExperimentConfig):
    a = _coeffs(cfg)
    if cfg.q is not None:
        if cfg.kappa is None or cfg.box is None or len(cfg.box) != 6:
            raise DomainError("--q needs --kappa and --box X1,X2,X3,Y1,Y2,Y3")
        box = DyadicBox(tuple(cfg.box[:3]), tuple(cfg.box[3:]))
        c = CongruenceClass(cfg.q, cfg.kappa)
        pts = [s.point for s in count_normalized(cfg.b, a)[1]
               if s.y[2] == cfg.q and box_of(s) == box and kappa_of(s) == c]
        rows = [_cover_row(c, a, box, pts, cfg.r)]
    else:
        groups: dict = {}
        for s in count_normalized(cfg.b, a)[1]:
            if s.y[2] > 1:
                groups.setdefault((kappa_of(s), box_of(s)), []).append(s.point)
        rows = [_cover_row(c, a, box, pts, cfg.r)
                for (c, box), pts in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1].X, kv[0][1].Y))]
    total = sum(r["points"] for r in rows)
    covered = sum(r["covered"] for r in rows)
    return {"B": cfg.b, "coeffs": list(a.as_tuple()), "classes": rows,
            "points": total, "covered": covered, "ok": covered == total}


def cmd_sieve(cfg: ExperimentConfig):
    F = cfg.form
    rep = weil_report(F, cfg.p)
    if cfg.fmt == "json":
        Us = []
        U = 4
        while U <= cfg.u:
            Us.append(U)
            U *= 2
        return {"form": list(F), "weil": rep,
                "mu0": [{"U": U, "count": mu0_count(F, U, U)} for U in Us]}
    return ["p", "max_ratio", "ok"], [[r["p"], f"{r['max_ratio']:.6f}", int(r["ok"])] for r in rep]


def cmd_cubic(cfg: ExperimentConfig):
    if len(cfg.coeffs) != 3:
        raise DomainError("--coeffs needs three integers a,b,c")
    a, b, c = cfg.coeffs
    res = rho_count(cfg.b, a, b, c)
    M = jacobian_m(a, b, c)
    rb = rank_upper_bound(abs(M))
    return {"B": cfg.b, "coeffs": [a, b, c], "count": res.count,
            "points": [list(p) for p in res.points], "M": M,
            "rank_bound": {"M": rb.M, "omega": rb.omega_M, "tau3_18M": rb.tau3_18M, "bound": rb.bound}}


def cmd_verify(cfg: ExperimentConfig):
    out = checks.run_suite(cfg.seed, threads=cfg.threads, scale=cfg.scale)
    return {"seed": cfg.seed, "scale": cfg.scale, "passed": all(v["passed"] for v in out.values()), "suites": out}


HANDLERS = {
    "count": cmd_count,
    "normalized": cmd_normalized,
    "boxes": cmd_boxes,
    "cover": cmd_cover,
    "sieve": cmd_sieve,
    "cubic": cmd_cubic,
    "verify": cmd_verify,
}


def run(cfg: ExperimentConfig) -> int:
    result = HANDLERS[cfg.command](cfg)
    text = render(cfg, result)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if isinstance(result, dict) and (result.get("passed") is False or result.get("ok") is False):
        return 1
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = make_config(args)
        return run(cfg)
    except (DomainError, OSError) as e:
        ap.print_usage(sys.stderr)
        print(f"sqfull: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
