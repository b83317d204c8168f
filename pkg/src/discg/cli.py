"""Command-line entry point: ``discg {verify,scaling,losses,solve}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments as ex
from .instances import load_instance
from .netsim import LossModel, NonConvergence, RunConfig, make_cycle, make_empty, make_fixed_er, run
from .oracles import brute_force_min


def _ints(text):
    return tuple(int(v) for v in text.split(",") if v)


def _floats(text):
    return tuple(float(v) for v in text.split(",") if v)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="discg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instances):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--instances", type=int, default=instances)
        sp.add_argument("--max-rounds", type=int, default=None)
        sp.add_argument("--out", default=None, help="CSV output path")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("verify", help="oracle triangle over random instances")
    common(sp, 40)
    sp.add_argument("--sizes", type=_ints, default=(2, 3, 4, 5, 6, 7, 8))

    sp = sub.add_parser("scaling", help="convergence rounds on cycle graphs of growing size")
    common(sp, 30)
    sp.add_argument("--sizes", type=_ints, default=(4, 6, 8, 10, 12))
    sp.add_argument("--full-scale", action="store_true", help="sizes 8..48")

    sp = sub.add_parser("losses", help="convergence rounds under packet losses")
    common(sp, 30)
    sp.add_argument("--loss-probs", type=_floats, default=(0.1, 0.3, 0.5, 0.9))
    sp.add_argument("--n", type=int, default=12)
    sp.add_argument("--p-edge", type=float, default=0.25)
    sp.add_argument("--graph-seed", type=int, default=1)
    sp.add_argument("--diameter", type=int, default=None, help="search graph seeds for this diameter")
    sp.add_argument("--full-scale", action="store_true", help="48 nodes, nominal graph of diameter 9")

    sp = sub.add_parser("solve", help="run the distributed algorithm on an instance file")
    sp.add_argument("instance")
    sp.add_argument("--graph", choices=("cycle", "er"), default="cycle")
    sp.add_argument("--p-edge", type=float, default=0.25)
    sp.add_argument("--loss-probs", type=_floats, default=(0.0,))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-rounds", type=int, default=None)
    sp.add_argument("--out", default=None, help="trace CSV path")
    return p


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    spec = ex.ExperimentSpec("verify", sizes=args.sizes, instances=args.instances, seed=args.seed,
                             max_rounds=args.max_rounds)
    results = ex.experiment_verify(spec)
    _emit(ex.verify_csv(results), args.out)
    bad = [r for r in results if not r.ok]
    print(f"verify: {len(results) - len(bad)}/{len(results)} instances agree", file=sys.stderr)
    return 1 if bad else 0


def cmd_scaling(args) -> int:
    sizes = ex.FULL_SIZES if args.full_scale else args.sizes
    spec = ex.ExperimentSpec("scaling", sizes=sizes, instances=args.instances, seed=args.seed,
                             max_rounds=args.max_rounds, jobs=args.jobs)
    report = ex.experiment_scaling(spec)
    _report(report, args.out)
    if "slope" in report.notes:
        print(f"least-squares median rounds ~ {report.notes['slope']:.3f} * n + "
              f"{report.notes['intercept']:.3f}", file=sys.stderr)
    return 1 if report.mismatches else 0


def cmd_losses(args) -> int:
    n, diam = args.n, args.diameter
    p_edge = args.p_edge
    if args.full_scale:
        n, diam, p_edge = 48, 9, 0.05
    spec = ex.ExperimentSpec("losses", loss_probs=args.loss_probs, instances=args.instances, seed=args.seed,
                             max_rounds=args.max_rounds, loss_n=n, p_edge=p_edge,
                             graph_seed=args.graph_seed, target_diameter=diam, jobs=args.jobs)
    report = ex.experiment_losses(spec)
    _report(report, args.out)
    return 1 if report.mismatches else 0


def _report(report, out) -> None:
    if out:
        report.write(out)
    else:
        sys.stdout.write(report.summary_csv())
    for s in report.summaries:
        print(f"cell {s.cell}: median {s.median} rounds, {s.converged}/{s.runs} converged, "
              f"{s.mismatches} oracle mismatches", file=sys.stderr)


def cmd_solve(args) -> int:
    f = load_instance(args.instance)
    n = f.n
    if n == 1:
        g = make_empty(1)
    elif args.graph == "cycle":
        g = make_cycle(n)
    else:
        g = make_fixed_er(n, args.p_edge, args.seed)
    p_loss = args.loss_probs[0] if args.loss_probs else 0.0
    cfg = RunConfig(f, g, LossModel(p_loss, args.seed), max_rounds=args.max_rounds, seed=args.seed,
                    label=Path(args.instance).name)
    try:
        tr = run(cfg)
    except NonConvergence as e:
        if args.out and e.trace is not None:
            Path(args.out).write_text(e.trace.to_csv())
        print(str(e), file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(tr.to_csv())
    summary = tr.summary()
    status = 0
    if n <= 20:
        _, best = brute_force_min(f)
        summary["brute_force"] = str(best)
        status = 0 if best == tr.f_star else 1
    print(json.dumps(summary, sort_keys=True))
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return {"verify": cmd_verify, "scaling": cmd_scaling, "losses": cmd_losses, "solve": cmd_solve}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
