"""
Command-line front end: ``means {scalar,matrix,verify,search}``.

Exit codes: 0 success / everything holds, 1 a property or inequality is
violated, 2 usage or input error. With ``--json`` all output is JSON and
errors are written to stderr as ``{"error": ...}``.
"""
import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import scalar_means as sm
from .harness import SUITES, FuzzConfig, heronian_search, run_suite
from .matfun import matrix_from_json, matrix_to_json
from .operator_means import MeanKind, mean

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

SCALAR_KINDS = ("arith", "geo", "harm", "log", "identric", "heron", "stolarsky")
VERIFY_SUITES = SUITES + ("all",)


class UsageError(Exception):
    pass


def _dumps(obj, indent=2, _level=0):
    """JSON with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(_dumps(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_weight(text):
    """A weight in [0, 1] given as a decimal or an exact fraction such as ``1/3``."""
    try:
        value = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid weight {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"weight must lie in [0, 1], got {text!r}")
    return value


def _parse_real(text):
    try:
        value = float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid number {text!r}")
    return value


def _parse_positive(text):
    value = _parse_real(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _parse_int_list(text):
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_weight_list(text):
    return [parse_weight(x) for x in str(text).split(",") if x.strip()]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_globals(p, suppress):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="machine-readable JSON output")
    p.add_argument("--tol", type=_parse_positive, default=default, help="Loewner tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=default, help="master seed (default 42)")
    p.add_argument("--config", default=default, help="JSON file mirroring the flags; flags win")


def build_parser():
    parser = _Parser(prog="means", description="Weighted scalar and operator means with verification suites.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("scalar", help="evaluate a scalar mean")
    _add_globals(sp, suppress=True)
    sp.add_argument("--kind", choices=SCALAR_KINDS, default="log")
    sp.add_argument("--t", type=parse_weight, default=None, help="weight (decimal or fraction)")
    sp.add_argument("--r", type=_parse_real, default=None, help="Stolarsky parameter")
    sp.add_argument("a", type=_parse_positive)
    sp.add_argument("b", type=_parse_positive)

    mp = sub.add_parser("matrix", help="operator mean of two SPD matrices in JSON files")
    _add_globals(mp, suppress=True)
    mp.add_argument("kind", choices=[k.value for k in MeanKind])
    mp.add_argument("t", type=parse_weight)
    mp.add_argument("file_a")
    mp.add_argument("file_b")
    mp.add_argument("--out", default=None, help="write the result here instead of stdout")

    vp = sub.add_parser("verify", help="run property campaigns")
    _add_globals(vp, suppress=True)
    vp.add_argument("suite", choices=VERIFY_SUITES)
    vp.add_argument("--dims", "--dim", type=_parse_int_list, default=None, help="comma-separated dimensions")
    vp.add_argument("--trials", type=int, default=None, help="pairs per dimension")
    vp.add_argument("--t", type=_parse_weight_list, default=None, help="comma-separated weight grid")
    vp.add_argument("--fn", choices=("log", "affine", "power", "harmonic", "halfsum", "identric",
                                     "logidentric", "x2"), default=None, help="monotone suite function")
    vp.add_argument("--order", type=int, default=None, help="monotone suite Loewner order")
    vp.add_argument("--p", type=parse_weight, default=None)
    vp.add_argument("--q", type=parse_weight, default=None)
    vp.add_argument("--r", type=parse_weight, default=None)

    hp = sub.add_parser("search", help="counterexample search")
    _add_globals(hp, suppress=True)
    hp.add_argument("target", choices=("heronian",))
    hp.add_argument("--iters", type=int, default=None, help="random samples (default 10000)")
    hp.add_argument("--t", type=parse_weight, default=None, help="fix the weight instead of sampling it")
    return parser


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
    if not isinstance(data, dict):
        raise UsageError(f"{path}: config must be a JSON object")
    return data


def _setting(args, cfg, name, default=None, convert=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if name in cfg:
        raw = cfg[name]
        try:
            return convert(raw) if convert else raw
        except (argparse.ArgumentTypeError, TypeError, ValueError) as exc:
            raise UsageError(f"config entry {name!r}: {exc}")
    return default


def _as_list(conv):
    def inner(raw):
        items = raw if isinstance(raw, list) else str(raw).split(",")
        return [conv(x) for x in items]
    return inner


def _emit(args, payload, human):
    if args.json:
        print(_dumps(payload))
    else:
        print(human)


def cmd_scalar(args, cfg):
    kind = args.kind
    a, b = args.a, args.b
    if kind == "stolarsky":
        r = _setting(args, cfg, "r", convert=_parse_real)
        if r is None:
            raise UsageError("--r is required for --kind stolarsky")
        value = sm.stolarsky(a, b, r)
        payload = {"kind": kind, "a": a, "b": b, "r": r, "value": value}
    else:
        if args.r is not None:
            raise UsageError("--r only applies to --kind stolarsky")
        t = _setting(args, cfg, "t", 0.5, parse_weight)
        fn = {"log": sm.weighted_logarithmic, "identric": sm.weighted_identric, "heron": sm.heronian_weighted,
              "arith": sm.weighted_arithmetic, "geo": sm.weighted_geometric, "harm": sm.weighted_harmonic}[kind]
        value = fn(a, b, t)
        payload = {"kind": kind, "a": a, "b": b, "t": t, "value": value}
    _emit(args, payload, format(value, ".17g"))
    return EXIT_OK


def _read_matrix(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read: {exc.strerror}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}")
    try:
        return matrix_from_json(obj)
    except ValueError as exc:
        raise UsageError(f"{path}:1: {exc}")


def cmd_matrix(args, cfg):
    a, b = _read_matrix(args.file_a), _read_matrix(args.file_b)
    if a.shape != b.shape:
        raise UsageError(f"dimension mismatch: {args.file_a} is {a.shape[0]}x{a.shape[0]}, "
                         f"{args.file_b} is {b.shape[0]}x{b.shape[0]}")
    try:
        m = mean(a, b, args.kind, args.t)
    except ValueError as exc:
        raise UsageError(str(exc))
    text = _dumps(matrix_to_json(m))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        _emit(args, {"written": args.out, "dim": int(m.shape[0])}, f"wrote {args.out}")
    elif args.json:
        print(text)
    else:
        print("\n".join("  ".join(f"{v: .17g}" for v in row) for row in m))
    return EXIT_OK


def _fuzz_config(args, cfg):
    kw = {}
    seed = _setting(args, cfg, "seed", convert=int)
    if seed is not None:
        kw["seed"] = seed
    dims = _setting(args, cfg, "dims", convert=_as_list(int))
    if dims is not None:
        kw["dims"] = dims
    for name in ("trials", "tol"):
        v = _setting(args, cfg, name, convert=float if name == "tol" else int)
        if v is not None:
            kw[name] = v
    if "trials" in kw and args.suite == "monotone":
        kw["monotone_trials"] = kw["trials"]
    ts = _setting(args, cfg, "t", convert=_as_list(parse_weight))
    if ts is not None:
        kw["t_grid"] = ts
        kw["monotone_t"] = ts
    fn = _setting(args, cfg, "fn")
    if fn is not None:
        kw["monotone_fn"] = fn
    order = _setting(args, cfg, "order", convert=int)
    if order is not None:
        kw["monotone_orders"] = (order,)
    pqr = [_setting(args, cfg, k, convert=parse_weight) for k in ("p", "q", "r")]
    if any(v is not None for v in pqr):
        if any(v is None for v in pqr):
            raise UsageError("--p, --q and --r must be given together")
        kw["invariance_pqr"] = tuple(pqr)
    try:
        return FuzzConfig(**kw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid configuration: {exc}")


def _report_table(report):
    rows = [("property", "trials", "failures", "worst margin", "status")]
    for p in report.properties:
        status = "info" if p.informational else ("PASS" if p.passed else "FAIL")
        if p.expect_violation:
            status += " (control)"
        wm = "-" if p.worst_margin is None else f"{p.worst_margin:.3e}"
        rows.append((p.name, str(p.trials), str(p.failures + p.errors), wm, status))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for p in report.properties:
        if p.witness is not None and not p.passed:
            lines.append(f"witness for {p.name}: {json.dumps(p.witness)}")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'} ({report.elapsed_seconds:.1f} s)")
    return "\n".join(lines)


def cmd_verify(args, cfg):
    config = _fuzz_config(args, cfg)
    report = run_suite(config, [args.suite])
    _emit(args, report.to_dict(), _report_table(report))
    return EXIT_OK if report.passed else EXIT_VIOLATED


def cmd_search(args, cfg):
    seed = _setting(args, cfg, "seed", 42, int)
    iters = _setting(args, cfg, "iters", 10000, int)
    if iters < 1:
        raise UsageError("--iters must be at least 1")
    t = _setting(args, cfg, "t", convert=parse_weight)
    findings = heronian_search(seed, iters, t=t)
    payload = {"seed": seed, "iters": iters, "t": t, "count": len(findings) - 1, "findings": findings}
    probe = findings[0]
    lines = [f"probe a={probe['a']:g} b={probe['b']:g} t={probe['t']:g}: "
             f"L_t={probe['L_t']:.10g} heronian={probe['heronian']:.10g} gap={probe['gap']:.6g}",
             f"{len(findings) - 1} counterexamples in {iters} samples"]
    for e in sorted(findings[1:], key=lambda e: -e["gap"] / max(e["a"], e["b"]))[:10]:
        lines.append(f"  a={e['a']:.6g} b={e['b']:.6g} t={e['t']:.6g} gap={e['gap']:.6g}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


_COMMANDS = {"scalar": cmd_scalar, "matrix": cmd_matrix, "verify": cmd_verify, "search": cmd_search}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    json_mode = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: scalar, matrix, verify or search")
        cfg = _load_config(args.config)
        if not args.json and cfg.get("json"):
            args.json = True
        json_mode = args.json
        return _COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        msg = str(exc)
    except ValueError as exc:
        msg = str(exc)
    if json_mode:
        print(json.dumps({"error": msg}), file=sys.stderr)
    else:
        print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
