"""``scindex`` command line.

Exit status: 0 on success, 1 when a check finds a violation (the witness is
printed), 2 on bad input or usage.  Every file is written through a temporary
file and a rename, so a failed run never leaves partial output behind.

Any option can also come from ``--config FILE`` holding ``key = value`` lines
(``#`` comments allowed); options given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

from . import __version__, axioms, choice, growth, indices, montecarlo
from .io import RecordError, atomic_write, dump_json, read_records, records_jsonl
from .records import dual, scale
from .values import IndexValue

SCHEMA_VERSION = 1
DEFAULT_INDICES = "h,w,c,e,ebar,hprime,wprime,cprime,sum,count"
PLACES = 8


class UsageError(ValueError):
    pass


def _index_list(text: str, allowed=None) -> list[str]:
    names = [n.strip() for n in text.split(",") if n.strip()]
    if not names:
        raise UsageError("empty index list")
    valid = list(allowed) if allowed is not None else list(indices.INDICES)
    bad = [n for n in names if n not in valid]
    if bad:
        raise UsageError(f"unknown index {', '.join(bad)}; valid names: {', '.join(valid)}")
    return names


def _radicand(v: IndexValue) -> str:
    r = v.radicand
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _dec(v: IndexValue) -> str:
    return format(v.decimal(PLACES), "f")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise UsageError(f"expected positive integers, got {text!r}")
    return vals


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


# -- subcommands --------------------------------------------------------------

def cmd_index(args) -> int:
    names = _index_list(args.indices)
    rows = read_records(args.input, args.input_format)
    descs = [indices.get_index(n) for n in names]
    header = ["id"]
    for n in names:
        header += [n, f"{n}_radicand", f"{n}_degree"]
        if n == "hprime":
            header.append("hprime_sq")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for rid, x in rows:
        out = [rid]
        for n, d in zip(names, descs):
            v = d(x)
            out += [_dec(v), _radicand(v), v.degree]
            if n == "hprime":
                out.append(indices.hprime_sq(x))
        w.writerow(out)
    _write(args.out, buf.getvalue())
    return 0


def cmd_dual(args) -> int:
    rows = read_records(args.input, args.input_format)
    _write(args.out, records_jsonl((rid, dual(x)) for rid, x in rows))
    return 0


def cmd_scale(args) -> int:
    if args.k < 1 or args.m < 1:
        raise UsageError("--k and --m must be positive integers")
    rows = read_records(args.input, args.input_format)
    _write(args.out, records_jsonl((rid, scale(x, args.k, args.m)) for rid, x in rows))
    return 0


def cmd_trajectory(args) -> int:
    names = _index_list(args.indices)
    if (args.months is None) == (args.years is None):
        raise UsageError("give exactly one of --months or --years")
    period = "month" if args.months is not None else "year"
    horizon = args.months if args.months is not None else args.years
    if horizon < 1:
        raise UsageError("horizon must be at least 1")
    params = growth.DeterministicParams(args.p, args.c, period)
    traj = growth.trajectory(params, horizon, names)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "papers", "citations"] + [c for n in names for c in (n, f"{n}_radicand", f"{n}_degree")])
    for i, t in enumerate(traj.times):
        x = traj.snapshots[i]
        row = [t, len(x), x.total]
        for n in names:
            v = traj.values[n][i]
            row += [_dec(v), _radicand(v), v.degree]
        w.writerow(row)
    _write(args.out, buf.getvalue())
    return 0


def cmd_simulate(args) -> int:
    names = _index_list(args.indices, montecarlo.TRACKED)
    cfg = montecarlo.SimulationConfig(
        p=args.p, c=args.c, months=args.months, careers=args.careers, seed=args.seed,
        pair_uplift=args.uplift, indices=tuple(names), cite_same_month=args.cite_same_month,
        paired=args.paired, common_streams=args.common_streams,
        workers=args.workers or montecarlo.default_workers(),
    )
    out = {"schema_version": SCHEMA_VERSION}
    if args.no_noise:
        rows = montecarlo.no_noise(cfg)
        out["no_noise"] = [r.__dict__ for r in rows]
        status = 0 if all(r.b_higher for r in rows) else 1
        if status:
            for r in rows:
                if not r.b_higher:
                    print(f"B not above A for {r.index}: A={r.final_a} B={r.final_b}", file=sys.stderr)
    else:
        rep = montecarlo.run_campaign(cfg)
        out.update(rep.to_json())
        if args.table:
            atomic_write(args.table, montecarlo.table_csv([rep]))
        status = 0
    _write(args.out, dump_json(out))
    return status


def cmd_axioms(args) -> int:
    domain = axioms.Domain(args.L, args.M, _int_list(args.K), _int_list(args.Mx))
    valid = axioms.all_index_names()
    out = {"schema_version": SCHEMA_VERSION, "domain": domain.as_dict()}
    if args.matrix:
        rows = _index_list(args.index, valid) if args.index else list(axioms.MATRIX_ROWS)
        mat = axioms.independence_matrix(domain, rows)
        out["matrix"] = {r: {a: rep.to_json() for a, rep in cols.items()} for r, cols in mat.items()}
        for r, cols in mat.items():
            print(f"{r:14s} " + " ".join(f"{a}={'ok' if rep.holds else 'X'}" for a, rep in cols.items()))
        _write(args.out, dump_json(out))
        return 0
    if not args.index:
        raise UsageError("give --index NAME[,NAME...] or --matrix")
    names = _index_list(args.index, valid)
    which = [a.strip() for a in args.axioms.split(",") if a.strip()]
    bad = [a for a in which if a not in axioms.AXIOMS]
    if bad:
        raise UsageError(f"unknown axiom {', '.join(bad)}; valid: {', '.join(axioms.AXIOMS)}")
    reports = []
    violated = False
    for n in names:
        for a in which:
            rep = axioms.check(a, n, domain)
            reports.append(rep.to_json())
            if not rep.holds:
                violated = True
                print(f"{n}: {a} violated, witness {rep.to_json()['witness']}")
    if args.lgr:
        for n in names:
            rep = axioms.check_lgr(n, args.lgr_p, args.lgr_c, args.horizon)
            reports.append(rep.to_json())
            if not rep.holds:
                violated = True
                print(f"{n}: LGr violated ({rep.detail})")
    out["reports"] = reports
    _write(args.out, dump_json(out))
    return 1 if violated else 0


def cmd_choice(args) -> int:
    out = {"schema_version": SCHEMA_VERSION}
    status = 0
    if args.exhaustive:
        if args.exhaustive < 1:
            raise UsageError("--exhaustive needs a positive universe size")
        reports = []
        for n in range(1, args.exhaustive + 1):
            rep = choice.exhaustive_implication_check(n, budget=args.budget)
            reports.append(rep.to_json())
            if not rep.ok:
                status = 1
                print(f"|X|={n}: implication failures found")
        out["implications"] = reports
    if args.bargraph:
        br = choice.bargraph_mviia_check(args.bargraph, args.bargraph)
        out["bargraph"] = {
            "L": br.L, "M": br.M, "comparable_pairs": br.pairs,
            "mviia_failures": [[list(x.entries), list(y.entries)] for x, y in br.mviia_failures],
            "maxb_failures": [[list(x.entries), list(y.entries)] for x, y in br.maxb_failures],
        }
        if not br.ok:
            status = 1
            print("bar-graph selector failures found")
    _write(args.out, dump_json(out))
    return status


# -- parser -------------------------------------------------------------------

def _input_opts(p):
    p.add_argument("--in", dest="input", required=True, help="records (.jsonl or .csv)")
    p.add_argument("--input-format", choices=["jsonl", "csv"], default=None)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file supplying option defaults")
    common.add_argument("--out", default="-", help="output path ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="scindex", description="Citation indices, axiom checks and career simulations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[common], help="evaluate indices over a corpus")
    _input_opts(p)
    p.add_argument("--indices", default=DEFAULT_INDICES)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("dual", parents=[common], help="dual (conjugate) records")
    _input_opts(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("scale", parents=[common], help="multiply counts by k and repeat papers m times")
    _input_opts(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("trajectory", parents=[common], help="deterministic career")
    p.add_argument("--p", type=Fraction, required=True)
    p.add_argument("--c", type=Fraction, required=True)
    p.add_argument("--months", type=int)
    p.add_argument("--years", type=int)
    p.add_argument("--indices", default="h,hprime,w,wprime")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("simulate", parents=[common], help="Poisson-noise career campaign")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--careers", type=int, default=500)
    p.add_argument("--months", type=int, default=360)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--paired", action="store_true")
    p.add_argument("--uplift", type=float, default=0.10)
    p.add_argument("--common-streams", action="store_true")
    p.add_argument("--cite-same-month", action="store_true")
    p.add_argument("--no-noise", action="store_true", help="deterministic monthly model instead")
    p.add_argument("--indices", default=",".join(montecarlo.TRACKED))
    p.add_argument("--table", help="also write the table layout as CSV")
    p.add_argument("--workers", type=int, default=0, help="processes (default: SCINDEX_THREADS or 1)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("axioms", parents=[common], help="axiom checks on bounded domains")
    p.add_argument("--index", default=None, help="index name(s), comma separated")
    p.add_argument("--matrix", action="store_true", help="full independence matrix")
    p.add_argument("--axioms", default="Mon,Sym,SSInv,MaxB,WResp,SqrtResp")
    p.add_argument("--L", type=int, default=6)
    p.add_argument("--M", type=int, default=6)
    p.add_argument("--K", default="1,2,3", help="vertical scale factors")
    p.add_argument("--Mx", default="1,2,3", help="horizontal stretch factors")
    p.add_argument("--lgr", action="store_true", help="also check linear growth")
    p.add_argument("--lgr-p", type=int, default=1)
    p.add_argument("--lgr-c", type=int, default=1)
    p.add_argument("--horizon", type=int, default=40)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("choice", parents=[common], help="choice-function checks")
    p.add_argument("--exhaustive", type=int, default=3, help="largest universe size (0 to skip)")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--bargraph", type=int, default=5, help="box size for the selector check (0 to skip)")
    p.set_defaults(func=cmd_choice)

    parser._subs = sub.choices  # used by the config loader
    return parser


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def load_config(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line or line.startswith("["):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v.strip('"').strip("'")
    return out


def _apply_config(sub: argparse.ArgumentParser, cfg: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, val in cfg.items():
        act = actions.get(key)
        if act is None or key in ("config", "help"):
            raise UsageError(f"unknown config key {key!r}")
        if isinstance(act, argparse._StoreTrueAction):
            low = val.lower()
            if low not in _TRUE | _FALSE:
                raise UsageError(f"config key {key!r} needs a boolean, got {val!r}")
            defaults[key] = low in _TRUE
        else:
            defaults[key] = act.type(val) if act.type else val
            act.required = False
    sub.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    command = next((a for a in argv if a in parser._subs), None)
    try:
        if known.config and command:
            _apply_config(parser._subs[command], load_config(known.config))
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        return args.func(args)
    except (RecordError, UsageError, FileNotFoundError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"scindex: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
