"""Command-line front end.

Verdicts go to stdout, diagnostics to stderr.  Exit codes: 0 the sentence
holds, 1 it does not, 2 any error, 3 the selected engines disagree.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import checker as C
from . import formula as F
from . import interval as I
from . import poset as P
from . import typegraph as T


class RunConfig:
    """Knobs shared by the checking commands."""

    def __init__(self, engine="local", first_move_opt=True, size_cap=None,
                 seed=0, oracle_limit=14):
        self.engine = engine
        self.first_move_opt = first_move_opt
        self.size_cap = size_cap
        self.seed = seed
        self.oracle_limit = oracle_limit


def _config(args):
    return RunConfig(
        engine=getattr(args, "engine", "local"),
        first_move_opt=not getattr(args, "no_first_move_opt", False),
        size_cap=getattr(args, "size_cap", None),
        seed=getattr(args, "seed", 0),
        oracle_limit=getattr(args, "oracle_limit", 14),
    )


def _read_json(path):
    with open(path) as fh:
        return json.load(fh, parse_float=str)


def _read_formula(path):
    with open(path) as fh:
        return F.parse(fh.read())


def _emit(args, payload, plain):
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        print(plain)


# ---------------------------------------------------------------------------
# commands

def cmd_check(args):
    cfg = _config(args)
    p = P.from_dict(_read_json(args.poset))
    f = _read_formula(args.formula)
    F.ensure_sentence(f)
    naive_verdict = None
    naive_stats = {}
    result = None
    if cfg.engine in ("naive", "both"):
        if p.n > cfg.oracle_limit:
            raise P.PosetError(
                "naive engine is limited to %d elements (raise --oracle-limit)"
                % cfg.oracle_limit)
        started = time.perf_counter()
        naive_verdict = C.eval_naive(p, f, stats=naive_stats)
        naive_stats["millis"] = int(round((time.perf_counter() - started) * 1000))
    if cfg.engine in ("local", "both"):
        result = C.check_local(p, f, first_move_opt=cfg.first_move_opt,
                               size_cap=cfg.size_cap)
    if cfg.engine == "both" and result.verdict != naive_verdict:
        print("engine divergence: naive=%s local=%s" % (naive_verdict, result.verdict),
              file=sys.stderr)
        return 3
    verdict = result.verdict if result is not None else naive_verdict
    if result is not None:
        payload = result.to_json()
        print("n=%d width=%d positions=%d maxBall=%d types=%s millis=%d"
              % (p.n, p.width, result.positions, result.max_ball,
                 result.type_counts, result.millis), file=sys.stderr)
    else:
        payload = {"verdict": verdict, "positions": naive_stats.get("nodes", 0),
                   "typeCountsPerRank": [], "millis": naive_stats.get("millis", 0)}
        print("n=%d width=%d nodes=%d" % (p.n, p.width, naive_stats.get("nodes", 0)),
              file=sys.stderr)
    _emit(args, payload, "true" if verdict else "false")
    return 0 if verdict else 1


def cmd_width(args):
    p = P.from_dict(_read_json(args.poset))
    w, chains = P.width_and_chain_partition(p)
    plain = ["width %d" % w]
    for j, chain in enumerate(chains):
        plain.append("chain %d: %s" % (j, " ".join(str(e) for e in chain)))
    _emit(args, {"width": w, "chains": chains}, "\n".join(plain))
    return 0


def cmd_types(args):
    p = P.from_dict(_read_json(args.poset))
    digs = T.build_up_to(p, args.rank, args.size_cap)
    if args.dump:
        print(T.debug_dump(digs))
        return 0
    counts = [len(set(d.tau)) for d in digs]
    plain = "\n".join("rank %d: %d types" % (s, c) for s, c in enumerate(counts))
    _emit(args, {"typeCountsPerRank": counts}, plain)
    return 0


def cmd_interval_check(args):
    cfg = _config(args)
    inst = I.from_dict(_read_json(args.instance))
    f = _read_formula(args.formula)
    F.ensure_sentence(f)
    result = I.check_interval_result(inst, f, first_move_opt=cfg.first_move_opt,
                                     size_cap=cfg.size_cap)
    _, p, _ = inst.reduction()
    print("intervals=%d encodedN=%d width=%d positions=%d millis=%d"
          % (len(inst), p.n, p.width, result.positions, result.millis),
          file=sys.stderr)
    if args.oracle:
        if len(inst) > cfg.oracle_limit:
            raise I.IntervalError(
                "graph oracle is limited to %d intervals (raise --oracle-limit)"
                % cfg.oracle_limit)
        oracle = I.eval_graph_fo(len(inst), inst.edges(), f)
        if oracle != result.verdict:
            print("engine divergence: oracle=%s local=%s" % (oracle, result.verdict),
                  file=sys.stderr)
            return 3
    _emit(args, result.to_json(), "true" if result.verdict else "false")
    return 0 if result.verdict else 1


def cmd_gen(args):
    if args.kind == "poset":
        data = P.random_poset_dict(args.n, args.width, args.colors, args.seed)
    else:
        data = I.random_instance_dict(args.n, args.k, args.seed)
    text = json.dumps(data, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _family_poset(family, size, seed):
    if family == "chain":
        return P.from_relation(size, [(i, i + 1) for i in range(size - 1)])
    if family == "random":
        return P.random_poset(size, 3, 2, seed + size)
    raise P.PosetError("unknown benchmark family %r" % family)


def cmd_bench(args):
    cfg = _config(args)
    f = _read_formula(args.formula)
    F.ensure_sentence(f)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if len(sizes) < 2:
        raise P.PosetError("need at least two sizes to fit an exponent")
    seconds = []
    for size in sizes:
        started = time.perf_counter()
        p = _family_poset(args.family, size, cfg.seed)
        if args.engine == "naive":
            verdict = C.eval_naive(p, f)
        else:
            verdict = C.check_local(p, f, first_move_opt=cfg.first_move_opt,
                                    size_cap=cfg.size_cap).verdict
        elapsed = time.perf_counter() - started
        seconds.append(elapsed)
        print("n=%d millis=%d verdict=%s" % (size, int(elapsed * 1000), verdict),
              file=sys.stderr)
    xs = np.log(np.array(sizes, dtype=float))
    ys = np.log(np.array([max(t, 1e-4) for t in seconds]))
    exponent = float(np.polyfit(xs, ys, 1)[0])
    payload = {
        "family": args.family,
        "engine": args.engine,
        "sizes": sizes,
        "millis": [int(t * 1000) for t in seconds],
        "exponent": round(exponent, 3),
    }
    _emit(args, payload, "exponent %.3f" % exponent)
    return 0


# ---------------------------------------------------------------------------
# argument plumbing

def build_parser():
    ap = argparse.ArgumentParser(
        prog="posetmc",
        description="First-order model checking on colored posets of bounded width.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_json(sp):
        sp.add_argument("--json", action="store_true",
                        help="machine-readable result on stdout")

    def add_cap(sp):
        sp.add_argument("--size-cap", type=int, default=None,
                        help="neighborhood size safety cap (default %d)"
                             % T.DEFAULT_SIZE_CAP)

    def add_engine_opts(sp):
        sp.add_argument("--no-first-move-opt", action="store_true",
                        help="range over all elements instead of one per type")
        sp.add_argument("--oracle-limit", type=int, default=14,
                        help="largest instance the naive oracle will accept")
        add_cap(sp)
        add_json(sp)

    sp = sub.add_parser("check", help="decide a sentence over a poset file")
    sp.add_argument("poset")
    sp.add_argument("formula")
    sp.add_argument("--engine", choices=("local", "naive", "both"), default="local")
    add_engine_opts(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("width", help="width and a minimum chain partition")
    sp.add_argument("poset")
    add_json(sp)
    sp.set_defaults(func=cmd_width)

    sp = sub.add_parser("types", help="type counts per rank, optionally a full dump")
    sp.add_argument("poset")
    sp.add_argument("--rank", type=int, default=1)
    sp.add_argument("--dump", action="store_true",
                    help="print every arc and type instead of the counts")
    add_cap(sp)
    add_json(sp)
    sp.set_defaults(func=cmd_types)

    sp = sub.add_parser("interval-check",
                        help="decide a graph sentence over an interval file")
    sp.add_argument("instance")
    sp.add_argument("formula")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check against direct graph evaluation")
    add_engine_opts(sp)
    sp.set_defaults(func=cmd_interval_check)

    sp = sub.add_parser("gen", help="emit a reproducible random instance file")
    sp.add_argument("kind", choices=("poset", "interval"))
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--width", type=int, default=3, help="poset: target width")
    sp.add_argument("--colors", type=int, default=2, help="poset: color count")
    sp.add_argument("--k", type=int, default=2, help="interval: group count")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time a sentence over a growing family")
    sp.add_argument("formula")
    sp.add_argument("--family", choices=("chain", "random"), default="chain")
    sp.add_argument("--sizes", default="100,200,400,800")
    sp.add_argument("--engine", choices=("local", "naive"), default="local")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-first-move-opt", action="store_true")
    add_cap(sp)
    add_json(sp)
    sp.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (F.FormulaError, P.PosetError, I.IntervalError, T.SizeCapError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
