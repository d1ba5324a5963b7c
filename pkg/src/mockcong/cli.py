"""Command-line front end.

Exit codes: 0 on success, 2 when inputs violate a routine's hypotheses
(including precision shortfalls), 1 on internal errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import __version__
from .admissibility import verdict_for, verdict_general
from .congruence import check_progression, good_f, good_omega, scan_range
from .dedekind import dedekind_sum
from .errors import (ConstructionError, HypothesisViolation, InvalidArgument, MockCongError,
                     PrecisionError)
from .multipliers import (Mat2, eta_residual, leading_constant_f, leading_constant_omega,
                          w1_of, w2_of, w_of, xi)
from .qseries import EXACT, Mod, load_series, save_series
from .sequences import resolve
from .witness import radu_witness, t_orbit

CACHE_ENV = "MOCKCONG_CACHE_DIR"
SCAN_COLUMNS = ["m", "t", "ell", "status", "first_fail_n", "verdict", "reason",
                "symbol_zero", "good_flag"]


@dataclass
class JobConfig:
    command: str
    selector: str | None = None
    N: int = 0
    ell: int | None = None
    modulus: int | None = None
    m_max: int = 0
    fmt: str = "text"
    cache_dir: Path | None = None
    threads: int = 1
    level: int | None = None

    @property
    def precision(self) -> int:
        """Coefficients needed for a scan of depth N over all m <= m_max."""
        return self.m_max * self.N + self.m_max


def _fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def _cache_path(cfg: JobConfig, ring, N: int) -> Path | None:
    if cfg.cache_dir is None:
        return None
    key = re.sub(r"[^A-Za-z0-9_.-]", "_", cfg.selector)
    lev = f"_L{cfg.level}" if cfg.level else ""
    tag = "exact" if ring.is_exact else f"mod{ring.modulus}"
    return cfg.cache_dir / f"{key}{lev}_{tag}_N{N}.mcqs"


def _series(cfg: JobConfig, handle, N: int, ring):
    path = _cache_path(cfg, ring, N)
    if path is not None and path.exists():
        return load_series(path)
    s = handle.generate(N, ring)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_series(path, s)
    return s


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def _emit(out, fmt: str, payload: dict, rows: list[dict] | None = None,
          columns: list[str] | None = None, text: str = ""):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(r.get(k)) for k in columns})
        out.write(buf.getvalue())
    elif fmt == "csv":
        buf = io.StringIO()
        flat = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
        w = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
        out.write(buf.getvalue())
    else:
        out.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# commands

def cmd_expand(cfg: JobConfig, out) -> int:
    handle = resolve(cfg.selector, cfg.level)
    ring = Mod(cfg.modulus) if cfg.modulus else EXACT
    s = _series(cfg, handle, cfg.N, ring)
    coeffs = s.coefficients(0, cfg.N)
    rows = [{"n": n, "value": v} for n, v in enumerate(coeffs)]
    payload = {"command": "expand", "sequence": cfg.selector, "ring": str(ring),
               "modulus": ring.modulus, "offset24": _fraction_str(s.offset24), "N": cfg.N,
               "coefficients": coeffs}
    text = "\n".join(f"{n} {v}" for n, v in enumerate(coeffs))
    _emit(out, cfg.fmt, payload, rows, ["n", "value"], text)
    return 0


def _good_flag(handle, m: int, t: int):
    if handle.kind == "f":
        return good_f(m, t)
    if handle.kind == "omega":
        return good_omega(m, t)
    return None


def cmd_scan(cfg: JobConfig, out, include_all: bool = False) -> int:
    handle = resolve(cfg.selector, cfg.level)
    if cfg.ell is None:
        raise InvalidArgument("scan needs --ell")
    s = _series(cfg, handle, cfg.precision, Mod(cfg.ell))
    if include_all:
        results = [check_progression(s, m, t, cfg.ell, cfg.N)
                   for m in range(1, cfg.m_max + 1) for t in range(m)]
    else:
        results = scan_range(s, cfg.ell, cfg.m_max, cfg.N, threads=cfg.threads)
    rows = []
    for r in results:
        v = verdict_for(handle, r.m, r.t, cfg.ell)
        rows.append({
            "m": r.m, "t": r.t, "ell": r.ell,
            "status": "holds" if r.holds else "fails",
            "first_fail_n": r.first_fail_n,
            "verdict": v.outcome, "reason": v.reason, "symbol_zero": v.symbol_zero,
            "good_flag": _good_flag(handle, r.m, r.t),
        })
    evidence = f"empirical (n <= {cfg.N})"
    payload = {"command": "scan", "sequence": cfg.selector, "ell": cfg.ell, "mmax": cfg.m_max,
               "N": cfg.N, "evidence": evidence, "rows": rows}
    lines = [f"# {cfg.selector} mod {cfg.ell}, m <= {cfg.m_max}: {evidence}",
             "# m t | empirical status | theorem verdict"]
    for row, r in zip(rows, results):
        why = f"({row['reason']})" if row["reason"] else ""
        flag = " symbol_zero" if row["symbol_zero"] else ""
        lines.append(f"{r.m} {r.t} | {r.status} | {row['verdict']}{why}{flag}")
    if not rows:
        lines.append("# no surviving progressions")
    _emit(out, cfg.fmt, payload, rows, SCAN_COLUMNS, "\n".join(lines))
    return 0


def cmd_verdict(cfg: JobConfig, out, m: int, t: int, ell: int) -> int:
    sel = cfg.selector
    if sel.startswith("general:"):
        try:
            B, N, n0 = (int(x) for x in sel[len("general:"):].split(","))
        except ValueError:
            raise InvalidArgument("general selector is general:B,N,n0") from None
        v = verdict_general(B, N, n0, m, t, ell)
    else:
        v = verdict_for(resolve(sel, cfg.level), m, t, ell)
    payload = {"command": "verdict", **v.as_dict()}
    _emit(out, cfg.fmt, payload, text=str(v))
    return 0


def cmd_witness(cfg: JobConfig, out, m, t, B, N, lam) -> int:
    w = radu_witness(m, t, B, N, lam)
    ok = w.verify()
    payload = {"command": "witness", "m": m, "t": t, "B": B, "N": N, "lambda": lam,
               "Q": w.Q, "a": w.a, "verified": ok}
    _emit(out, cfg.fmt, payload, text=f"a = {w.a} {'verified' if ok else 'FAILED'}")
    return 0 if ok else 1


def cmd_orbit(cfg: JobConfig, out, m, t, B, N) -> int:
    orbit = sorted(t_orbit(m, t, B, N))
    payload = {"command": "orbit", "m": m, "t": t, "B": B, "N": N, "residues": orbit}
    _emit(out, cfg.fmt, payload, text=" ".join(map(str, orbit)))
    return 0


def cmd_dedekind(cfg: JobConfig, out, d, c) -> int:
    v = dedekind_sum(d, c)
    payload = {"command": "dedekind", "d": d, "c": c, "value": _fraction_str(v)}
    _emit(out, cfg.fmt, payload, text=str(v))
    return 0


_MULTIPLIERS = {"xi": xi, "w": w_of, "w1": w1_of, "w2": w2_of}


def random_sl2(rng: random.Random, bound: int = 50) -> Mat2:
    """Random [[a,b],[c,d]] of determinant 1 with 0 < c and all |entries| <= bound."""
    while True:
        c = rng.randint(1, bound)
        d = rng.randint(-bound, bound)
        if gcd(c, d) != 1:
            continue
        a = pow(d, -1, c) if c > 1 else 0
        a -= c * rng.randint(0, bound // c + 1)
        if abs(a) > bound:
            continue
        b = (a * d - 1) // c
        if abs(b) <= bound:
            return Mat2(a, b, c, d)


def cmd_multiplier(cfg: JobConfig, out, args) -> int:
    kind = args.kind
    if kind in _MULTIPLIERS:
        if len(args.values) != 4:
            raise InvalidArgument(f"{kind} needs a b c d")
        A = Mat2(*args.values)
        u = _MULTIPLIERS[kind](A)
        payload = {"command": "multiplier", "kind": kind, "matrix": list(A),
                   "exponent": _fraction_str(u.exponent)}
        _emit(out, cfg.fmt, payload, text=str(u))
        return 0
    if kind == "check-eta":
        rng = random.Random(args.seed)
        z = complex(args.z)
        worst = 0.0
        for _ in range(args.samples):
            worst = max(worst, float(eta_residual(random_sl2(rng), z, tol=args.tol)))
        ok = worst < args.tol
        payload = {"command": "multiplier", "kind": kind, "samples": args.samples,
                   "tol": args.tol, "max_residual": worst, "passed": ok}
        _emit(out, cfg.fmt, payload,
              text=f"{args.samples} matrices, max residual {worst:.3e}: "
                   f"{'pass' if ok else 'FAIL'}")
        return 0 if ok else 1
    if kind in ("leading-f", "leading-omega"):
        if len(args.values) != 2:
            raise InvalidArgument(f"{kind} needs Q ell")
        Q, ell = args.values
        k = (leading_constant_f if kind == "leading-f" else leading_constant_omega)(Q, ell)
        ok = k.identity_holds()
        n = k.exponent_order
        payload = {"command": "multiplier", "kind": kind, "Q": Q, "ell": ell, "t": k.t,
                   "unit_exponent": _fraction_str(k.unit.exponent), "radicand": k.radicand,
                   "power": n, "identity_holds": ok, "trace_consistent": k.trace_consistent,
                   "lambdas": list(k.lambdas)}
        text = (f"t = {k.t}; K = exp(2*pi*i*{k.unit.exponent}) * {k.radicand}^(-1/2); "
                f"K^{n} = {k.radicand}^(-{n // 2}): {'verified' if ok else 'FAILED'}")
        _emit(out, cfg.fmt, payload, text=text)
        return 0 if ok else 1
    raise InvalidArgument(f"unknown multiplier command {kind!r}")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--level", type=int, default=None,
                        help="override the eta-quotient level N")

    p = argparse.ArgumentParser(prog="mockcong", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="list coefficients a(0..N)")
    e.add_argument("selector")
    e.add_argument("N", type=int)
    e.add_argument("--mod", type=int, default=None)

    s = sub.add_parser("scan", parents=[common], help="scan progressions a(mn+t) mod ell")
    s.add_argument("selector")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--mmax", type=int, required=True)
    s.add_argument("--N", type=int, required=True, dest="N", help="scan depth (n <= N)")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--all", action="store_true", help="also list failing progressions")

    v = sub.add_parser("verdict", parents=[common], help="theorem verdict for (m, t, ell)")
    v.add_argument("selector", help="sequence selector or general:B,N,n0")
    v.add_argument("m", type=int)
    v.add_argument("t", type=int)
    v.add_argument("ell", type=int)

    w = sub.add_parser("witness", parents=[common], help="square-class witness a")
    for name in ("m", "t", "B", "N"):
        w.add_argument(name, type=int)
    w.add_argument("--lambda", dest="lam", type=int, default=0)

    o = sub.add_parser("orbit", parents=[common], help="t_A orbit of t mod m")
    for name in ("m", "t", "B"):
        o.add_argument(name, type=int)
    o.add_argument("N", type=int, nargs="?", default=1)

    d = sub.add_parser("dedekind", parents=[common], help="exact Dedekind sum s(d, c)")
    d.add_argument("d", type=int)
    d.add_argument("c", type=int)

    mu = sub.add_parser("multiplier", parents=[common], help="multiplier systems")
    mu.add_argument("kind", choices=["xi", "w", "w1", "w2", "check-eta", "leading-f",
                                     "leading-omega"])
    mu.add_argument("values", type=int, nargs="*")
    mu.add_argument("--samples", type=int, default=50)
    mu.add_argument("--tol", type=float, default=1e-9)
    mu.add_argument("--seed", type=int, default=0)
    mu.add_argument("--z", default="0.25+0.75j")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cache = args.cache_dir or os.environ.get(CACHE_ENV)
    cfg = JobConfig(command=args.command, selector=getattr(args, "selector", None),
                    N=getattr(args, "N", 0) if args.command in ("expand", "scan") else 0,
                    ell=getattr(args, "ell", None) if args.command == "scan" else None,
                    modulus=getattr(args, "mod", None), m_max=getattr(args, "mmax", 0),
                    fmt=args.format, cache_dir=Path(cache) if cache else None,
                    threads=getattr(args, "threads", 1), level=args.level)
    try:
        if args.command == "expand":
            return cmd_expand(cfg, out)
        if args.command == "scan":
            return cmd_scan(cfg, out, args.all)
        if args.command == "verdict":
            return cmd_verdict(cfg, out, args.m, args.t, args.ell)
        if args.command == "witness":
            return cmd_witness(cfg, out, args.m, args.t, args.B, args.N, args.lam)
        if args.command == "orbit":
            return cmd_orbit(cfg, out, args.m, args.t, args.B, args.N)
        if args.command == "dedekind":
            return cmd_dedekind(cfg, out, args.d, args.c)
        return cmd_multiplier(cfg, out, args)
    except (HypothesisViolation, InvalidArgument, PrecisionError) as exc:
        print(f"mockcong: {exc}", file=sys.stderr)
        return 2
    except (ConstructionError, MockCongError) as exc:
        print(f"mockcong: internal error: {exc}", file=sys.stderr)
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
