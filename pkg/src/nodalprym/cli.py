"""Command-line front end: build, quotient, decompose, verify-paper, report.

Every flag can also be set through an environment variable NODALPRYM_<FLAG>,
e.g. NODALPRYM_RANGE=4..6 or NODALPRYM_JOBS=4; explicit flags win.
Exit codes: 0 all checks pass, 1 some check failed, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from gmpy2 import mpq

from . import __version__

DEFAULT_RANGE = (4, 8)
EXTENDED_MAX = 12
EXIT_FAIL, EXIT_CONFIG = 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    ns: tuple
    params: dict = field(default_factory=dict)
    level: int | None = None
    extended: bool = False
    json_path: str | None = None
    jobs: int = 1
    budget: int = 200
    which: str | None = None

    def echo(self) -> dict:
        out = asdict(self)
        out["ns"] = list(self.ns)
        out["params"] = {k: str(v) for k, v in sorted(self.params.items())}
        out.pop("json_path")
        out.pop("jobs")  # reports must not depend on the parallelism degree
        return out


# -- config parsing ----------------------------------------------------------------

def parse_range(text: str) -> tuple:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise ConfigError(f"bad range {text!r}, expected A..B") from None
    if lo > hi:
        raise ConfigError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


def parse_params(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"bad parameter {item!r}, expected name=rational")
        k, v = (s.strip() for s in item.split("=", 1))
        try:
            out[k] = mpq(v)
        except ValueError:
            raise ConfigError(f"{k}: {v!r} is not a rational number") from None
    return out


def _working_level(n: int) -> int:
    from math import lcm

    from .quotients.invariants import two_adic_split

    if n % 2:
        return n
    k, _ = two_adic_split(n)
    return lcm(n, 2 ** (k + 1))


def _env(name: str, default=None):
    return os.environ.get(f"NODALPRYM_{name.upper()}", default)


def build_config(args) -> RunConfig:
    n = args.n if args.n is not None else _env("n")
    rng = args.range if args.range is not None else _env("range")
    extended = args.extended or _env("extended", "").lower() in ("1", "true", "yes")
    if n is not None and rng is not None:
        raise ConfigError("give either --n or --range, not both")
    if n is not None:
        try:
            ns = (int(n),)
        except ValueError:
            raise ConfigError(f"bad n {n!r}") from None
    elif rng is not None:
        ns = parse_range(rng)
    elif args.command in ("verify-paper", "report"):
        ns = tuple(range(DEFAULT_RANGE[0], (EXTENDED_MAX if extended else DEFAULT_RANGE[1]) + 1))
    else:
        raise ConfigError(f"{args.command} needs --n")
    if min(ns) < 4:
        raise ConfigError("the family needs n >= 4")
    params = parse_params(args.params if args.params is not None else _env("params"))
    from .curves import param_names

    for k in params:
        bad = [m for m in ns if k not in param_names(m)]
        if bad:
            raise ConfigError(f"{k} is not a parameter for n = {bad[0]}")
    try:
        level = args.level if args.level is not None else (int(_env("level")) if _env("level") else None)
        jobs = args.jobs if args.jobs is not None else int(_env("jobs", "1"))
        budget = args.budget if args.budget is not None else int(_env("budget", "200"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if jobs < 1 or budget < 1:
        raise ConfigError("--jobs and --budget must be positive")
    if level is not None:
        for m in ns:
            if level % _working_level(m):
                raise ConfigError(f"level {level} does not contain the coefficients for n = {m} "
                                  f"(needs a multiple of {_working_level(m)})")
    return RunConfig(
        command=args.command,
        ns=ns,
        params=params,
        level=level,
        extended=extended,
        json_path=args.json if args.json is not None else _env("json"),
        jobs=jobs,
        budget=budget,
        which=getattr(args, "which", None),
    )


# -- check tasks --------------------------------------------------------------------
# Each task is a top-level function (picklable) returning a list of records.

def _rec(cid: str, anchor: str, status: str, witness: str = "", wall_time: float = 0.0) -> dict:
    return {"id": cid, "anchor": anchor, "status": status, "witness": witness, "wall_time": round(wall_time, 4)}


def _guard(cid: str, anchor: str, fn) -> dict:
    t0 = time.perf_counter()
    try:
        ok, wit = fn()
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    except Exception as exc:  # a failed certificate is a failed check, not a crash
        status, wit = "fail", f"{type(exc).__name__}: {exc}"
    return _rec(cid, anchor, status, wit, time.perf_counter() - t0)


def _task_curve(n: int, params: dict, budget: int) -> list[dict]:
    from .curves import blowup_node, certify_nodes, sample_params, smoothness_scan, verify_automorphisms

    full = dict(sample_params(n), **params)
    out = []

    def autos():
        rep = verify_automorphisms(n)
        return rep.ok, f"{len(rep.checks)} relations"

    def nodes():
        certs = certify_nodes(n, full)
        return len(certs) == n, f"{len(certs)} nodes; Hessian determinants nonzero at the witness parameters"

    def blowup():
        b = blowup_node(n)
        return b.chart_symmetric, f"p0 = {b.p0}, p1 = {b.p1}"

    def smooth():
        rep = smoothness_scan(n, full, budget)
        return rep.status, rep.detail or f"{rep.nodes_found} singular points, all nodes"

    out.append(_guard(f"n{n}.automorphisms", "alpha, beta, gamma preserve f and w^2 = y^2 - xz", autos))
    out.append(_guard(f"n{n}.nodes", "P_i = (zeta^i : 1 : zeta^-i) are ordinary double points", nodes))
    out.append(_guard(f"n{n}.blowup", "exceptional polynomial p0 + p1 s + p0 s^2", blowup))
    out.append(_guard(f"n{n}.smoothness", "no singular points besides the nodes", smooth))
    return out


def _task_genus(n: int) -> list[dict]:
    from .quotients.genus import closed_form_genera, genus_diagram
    from .quotients.golden import GOLDEN_NS, PRINTED_GENERA, hyperelliptic_checks

    out = []
    t0 = time.perf_counter()
    try:
        diagram = genus_diagram(n)
    except Exception as exc:
        return [_rec(f"n{n}.genus", "genera from fixed points and Hurwitz", "fail", f"{type(exc).__name__}: {exc}")]
    dt = time.perf_counter() - t0
    printed = PRINTED_GENERA.get(n, {})
    closed = closed_form_genera(n) if n >= 5 else {}
    for name, g in sorted(diagram.items()):
        refs = []
        if name in printed:
            refs.append(("diagram", printed[name]))
        if name in closed:
            refs.append(("closed form", closed[name]))
        bad = [f"{src} {v}" for src, v in refs if v != g]
        wit = f"g = {g}" + ("; " + ", ".join(f"{s} {v}" for s, v in refs) if refs else "")
        out.append(_rec(f"n{n}.genus.{name.replace('/', '_')}", f"genus of {name}",
                        "fail" if bad else "pass", wit, dt))
    if n in GOLDEN_NS:
        for chk in hyperelliptic_checks(n):
            out.append(_rec(f"n{n}.hyperelliptic.{chk['id'].split('.', 1)[1]}",
                            f"degree of {chk['id']} against g({chk['quotient']})",
                            "pass" if chk["ok"] else "fail",
                            f"model genus {chk['genus_model']}, Hurwitz genus {chk['genus_hurwitz']}"))
    return out


def _task_golden(n: int) -> list[dict]:
    from .quotients.golden import golden_models

    out = []
    for r in golden_models(n):
        if r.delta:
            wit = r.delta
        else:
            bad = [f"{c.name}: {c.residue}" for c in r.certificates if not c.ok]
            wit = "; ".join(bad) if bad else "zero residue"
        if r.note:
            wit = f"{wit} ({r.note})"
        out.append(_rec(r.id, r.anchor, r.status, wit, r.wall_time))
    return out


def _task_diffs(n: int) -> list[dict]:
    from .diffs import basis_counts, eigenspace_table

    out = [_guard(f"n{n}.diffs.basis_counts", "basis sizes (n^2-5n+2)/2 and n(n-3)/2",
                  lambda: (True, json.dumps(basis_counts(n), sort_keys=True)))]
    if n >= 5:
        t0 = time.perf_counter()
        try:
            rep = eigenspace_table(n, strict=False)
        except Exception as exc:
            return out + [_rec(f"n{n}.diffs.eigenspaces", "pullback actions", "fail", f"{type(exc).__name__}: {exc}")]
        dt = time.perf_counter() - t0
        for c in rep.checks:
            out.append(_rec(f"n{n}.diffs.{c['id']}", c["id"].replace("_", " "), "pass" if c["ok"] else "fail",
                            c["witness"], dt))
    return out


def _task_ledger(n: int) -> list[dict]:
    from .decomp import build_ledger

    try:
        led = build_ledger(n, strict=False)
    except Exception as exc:
        return [_rec(f"n{n}.ledger", "dimension ledger", "fail", f"{type(exc).__name__}: {exc}")]
    return [_rec(f"n{n}.ledger.{c['id']}", c.get("anchor", c["id"].replace("_", " ")), c["status"], c["witness"])
            for c in led.checks]


def _task_families(p_max: int, q_max: int) -> list[dict]:
    from .mpoly import MPoly
    from .quotients.invariants import newton_P, twisted_Q

    x, z = MPoly.var("x"), MPoly.var("z")
    out = []
    for k in range(1, p_max + 1):
        def p_check(k=k):
            lhs = newton_P(k).subs({"u": x + z, "v": x * z})
            return lhs == x ** k + z ** k, "P(x+z, xz) = x^n + z^n"
        out.append(_guard(f"family.P.{k:02d}", f"P_{k}(x+z, xz) = x^{k} + z^{k}", p_check))
    for k in range(2, q_max + 1, 2):
        out.append(_guard(f"family.Q.{k:02d}", f"Q_{k} solved and verified by substitution",
                          lambda k=k: (not twisted_Q(k).is_zero(), "identity verified at construction")))
    return out


def _run_task(spec):
    kind, args = spec
    return {"curve": _task_curve, "genus": _task_genus, "golden": _task_golden, "diffs": _task_diffs,
            "ledger": _task_ledger, "families": _task_families}[kind](*args)


def verification_tasks(cfg: RunConfig) -> list:
    from .quotients.golden import GOLDEN_NS

    tasks = []
    for n in cfg.ns:
        params = {k: v for k, v in cfg.params.items()}
        tasks += [("curve", (n, params, cfg.budget)), ("genus", (n,)), ("diffs", (n,)), ("ledger", (n,))]
        if n in GOLDEN_NS:
            tasks.append(("golden", (n,)))
    p_max, q_max = (32, 16) if cfg.extended else (16, 8)
    tasks.append(("families", (p_max, q_max)))
    return tasks


def run_checks(cfg: RunConfig) -> list[dict]:
    tasks = verification_tasks(cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunks = list(pool.map(_run_task, tasks))
    else:
        chunks = [_run_task(t) for t in tasks]
    return sorted((r for chunk in chunks for r in chunk), key=lambda r: r["id"])


def summarize(records: list[dict]) -> dict:
    out: dict = {}
    for r in records:
        out[r["status"]] = out.get(r["status"], 0) + 1
    return dict(sorted(out.items()))


def is_failure(records: list[dict]) -> bool:
    return any(r["status"] == "fail" for r in records)


def strip_timing(obj):
    """A copy of a report without wall_time fields, for determinism checks."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "wall_time"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


# -- commands -------------------------------------------------------------------------

def _emit(obj, cfg: RunConfig, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)


def cmd_build(cfg: RunConfig, out=None) -> int:
    from .curves import build_family

    families = []
    for n in cfg.ns:
        fam = build_family(n)
        families.append({
            "n": n,
            "f": str(fam.f),
            "f_hat": str(fam.f_hat),
            "params": fam.params,
            "nodes": [[str(c) for c in p] for p in fam.nodes],
            "checks": _task_curve(n, cfg.params, cfg.budget),
        })
    records = [r for f in families for r in f["checks"]]
    _emit({"tool": "nodalprym", "version": __version__, "config": cfg.echo(), "families": families,
           "summary": summarize(records)}, cfg, out)
    return EXIT_FAIL if is_failure(records) else 0


def cmd_quotient(cfg: RunConfig, out=None) -> int:
    from .mpoly import format_poly
    from .quotients import quotient_model

    out = out or sys.stdout
    models = []
    for n in cfg.ns:
        try:
            model = quotient_model(n, cfg.which)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        eq = model.equation.subs(cfg.params) if cfg.params else model.equation
        models.append((n, model, format_poly(eq)))
    if cfg.json_path:
        _emit({"tool": "nodalprym", "version": __version__, "config": cfg.echo(),
               "models": [dict(m.to_json(), n=n, equation=text) for n, m, text in models]}, cfg)
    else:
        for _, _, text in models:
            out.write(text + "\n")
    return 0


def cmd_decompose(cfg: RunConfig, out=None) -> int:
    from .decomp import build_ledger

    ledgers = [build_ledger(n, strict=False) for n in cfg.ns]
    body = ledgers[0].to_json() if len(ledgers) == 1 else {"ledgers": [led.to_json() for led in ledgers]}
    _emit(body, cfg, out)
    return 0 if all(led.ok for led in ledgers) else EXIT_FAIL


def cmd_verify_paper(cfg: RunConfig, out=None) -> int:
    records = run_checks(cfg)
    _emit({"tool": "nodalprym", "version": __version__, "config": cfg.echo(), "records": records,
           "summary": summarize(records)}, cfg, out)
    return EXIT_FAIL if is_failure(records) else 0


def cmd_report(cfg: RunConfig, out=None) -> int:
    from .decomp import build_ledger
    from .diffs import eigenspace_table
    from .quotients.genus import genus_diagram

    records = run_checks(cfg)
    per_n = []
    for n in cfg.ns:
        entry = {"n": n, "genera": genus_diagram(n), "ledger": build_ledger(n, strict=False).to_json()}
        if n >= 5:
            entry["eigenspaces"] = eigenspace_table(n, strict=False).to_json()
        per_n.append(entry)
    _emit({"tool": "nodalprym", "version": __version__, "config": cfg.echo(), "records": records,
           "per_n": per_n, "summary": summarize(records)}, cfg, out)
    return EXIT_FAIL if is_failure(records) else 0


COMMANDS = {
    "build": cmd_build,
    "quotient": cmd_quotient,
    "decompose": cmd_decompose,
    "verify-paper": cmd_verify_paper,
    "report": cmd_report,
}


def make_parser() -> argparse.ArgumentParser:
    from .quotients import QUOTIENT_CHOICES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="a single degree n >= 4")
    common.add_argument("--range", help="degrees A..B (inclusive)")
    common.add_argument("--params", help="parameter specialization, e.g. a2=1,a3=0")
    common.add_argument("--level", type=int, help="cyclotomic level all coefficients must live in")
    common.add_argument("--extended", action="store_true", help="run the generalizing identities further")
    common.add_argument("--json", help="write the JSON output to this path")
    common.add_argument("--jobs", type=int, help="parallel workers")
    common.add_argument("--budget", type=int, help="degree budget for the smoothness scan")
    p = argparse.ArgumentParser(prog="nodalprym", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nodalprym {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="family, nodes, automorphisms and smoothness")
    q = sub.add_parser("quotient", parents=[common], help="print a quotient model in canonical form")
    q.add_argument("--which", required=True, choices=QUOTIENT_CHOICES)
    sub.add_parser("decompose", parents=[common], help="print the decomposition ledger")
    sub.add_parser("verify-paper", parents=[common], help="run the certification suite")
    sub.add_parser("report", parents=[common], help="full JSON report")
    return p


def main(argv=None, out=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"nodalprym: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
