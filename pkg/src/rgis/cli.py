"""Command line entry point: ``rgis <command> [options]``.

Exit status is 0 on success, 1 on usage or input errors, 2 when a search
exceeds its size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import harness
from .approx import approx_mis
from .common import DEFAULT_LCS_CAP, lcs_main
from .decide import decide_k_independent
from .exact import (
    DEFAULT_BRUTE_FORCE_CAP,
    BudgetError,
    EpsilonConfig,
    brute_force_mis,
    max_independent_set,
    mis_recursive_oracle,
)
from .graph import Graph, generate_with_state, read_edge_list, write_edge_list

EXIT_USAGE = 1
EXIT_BUDGET = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_graph_args(sp: argparse.ArgumentParser, need_p: bool = True) -> None:
    sp.add_argument("--input", type=Path, help="edge-list file (instead of generating)")
    sp.add_argument("--n", type=int, help="vertex count of the generated graph")
    sp.add_argument("--p", type=float, required=need_p, help="edge probability")
    sp.add_argument("--seed", type=int, default=0)


def _add_eps_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--epsilon", type=float, help="default: min(p, 1-p)/2")
    sp.add_argument("--cap", type=int, default=DEFAULT_BRUTE_FORCE_CAP, help="brute-force vertex cap")


def _load_graph(args, input_attr: str = "input", n_attr: str = "n", p_attr: str = "p") -> tuple[Graph, int]:
    path = getattr(args, input_attr)
    if path is not None:
        return read_edge_list(path.read_text()), 0
    n = getattr(args, n_attr)
    if n is None:
        raise UsageError(f"give either --{input_attr} or --{n_attr}")
    if getattr(args, p_attr) is None:
        raise UsageError(f"generating a graph needs --{p_attr}")
    return generate_with_state(n, getattr(args, p_attr), args.seed)


def _epsilon(args, p: float) -> EpsilonConfig:
    if args.epsilon is None:
        return EpsilonConfig.for_p(p, args.cap)
    return EpsilonConfig(args.epsilon, args.cap)


def _emit(obj, out: Path | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_gen(args) -> None:
    if args.n is None:
        raise UsageError("gen needs --n")
    text = write_edge_list(generate_with_state(args.n, args.p, args.seed)[0])
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def cmd_mis(args) -> None:
    g, _ = _load_graph(args)
    out = {"n": g.n, "algo": args.algo}
    if args.algo == "branch":
        if args.p is None:
            raise UsageError("--algo branch needs --p for the degree threshold")
        chosen, stats = max_independent_set(g, args.p, _epsilon(args, args.p))
        out["stats"] = asdict(stats)
    elif args.algo == "brute":
        chosen = brute_force_mis(g, args.cap)
    else:
        out["size"] = mis_recursive_oracle(g, args.cap)
        chosen = None
    if chosen is not None:
        out["size"] = len(chosen)
        out["set"] = sorted(chosen)
    _emit(out, args.out)


def cmd_decide(args) -> None:
    g, _ = _load_graph(args)
    eps = args.epsilon if args.epsilon is not None else EpsilonConfig.for_p(args.p).epsilon
    res = decide_k_independent(g, args.k, args.p, eps)
    _emit(
        {
            "n": g.n,
            "k": args.k,
            "answer": "yes" if res.answer else "no",
            "witness": None if res.witness is None else sorted(res.witness),
            "path_taken": res.path_taken,
        },
        args.out,
    )


def cmd_lcs(args) -> None:
    g, state = _load_graph(args)
    if args.input2 is not None:
        h = read_edge_list(args.input2.read_text())
    else:
        if args.m is None:
            raise UsageError("give either --input2 or --m")
        q = args.q if args.q is not None else args.p
        h, _ = generate_with_state(args.m, q, state)
    res = lcs_main(g, h, args.p, args.q, cap=args.cap)
    _emit(
        {
            "size": res.size,
            "s1": sorted(res.s1),
            "s2": sorted(res.s2),
            "mapping": [list(pair) for pair in res.mapping.pairs],
            "path_taken": res.path_taken,
        },
        args.out,
    )


def cmd_approx(args) -> None:
    g, _ = _load_graph(args)
    res = approx_mis(g, args.p, _epsilon(args, args.p))
    _emit(
        {
            "size": len(res.chosen),
            "set": sorted(res.chosen),
            "block_count": res.block_count,
            "block_size": res.block_size,
            "ratio_bound": res.ratio_bound,
        },
        args.out,
    )


def cmd_mc(args) -> None:
    if args.quantity == "iso":
        q = args.q if args.q is not None else args.p
        rep = harness.mc_mapping_iso_rate(args.k, args.p, q, args.trials, args.seed)
    else:
        if args.n is None:
            raise UsageError(f"mc {args.quantity} needs --n")
        eps = args.epsilon if args.epsilon is not None else EpsilonConfig.for_p(args.p).epsilon
        fn = harness.mc_good_fraction if args.quantity == "good" else harness.mc_min_degree_fraction
        rep = fn(args.n, args.p, eps, args.trials, args.seed)
    _emit(asdict(rep), args.out)


def cmd_sweep(args) -> None:
    if args.config is not None:
        cfg = harness.SweepConfig.from_dict(json.loads(args.config.read_text()))
        if args.threads is not None:
            cfg.threads = args.threads
    else:
        if not args.n or not args.p:
            raise UsageError("sweep needs --config or both --n and --p")
        seeds = args.seeds or [harness.trial_seed(args.seed, t) for t in range(args.trials)]
        cfg = harness.SweepConfig(
            n=args.n,
            p=args.p,
            seeds=seeds,
            algos=args.algos,
            epsilon=args.epsilon,
            cap=args.cap,
            lcs_cap=args.lcs_cap,
            m=args.m,
            q=args.q,
            threads=args.threads or 1,
        )
    records = harness.run_experiment(cfg)
    if args.out is None:
        harness.write_records(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            harness.write_records(records, fh)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rgis", description="Independent set and common subgraph algorithms for G(n, p).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("gen", help="write a G(n, p) sample as an edge list")
    _add_graph_args(sp)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("mis", help="maximum independent set")
    _add_graph_args(sp, need_p=False)
    _add_eps_args(sp)
    sp.add_argument("--algo", choices=["branch", "brute", "oracle"], default="branch")
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_mis)

    sp = sub.add_parser("decide", help="is there an independent set of size k?")
    _add_graph_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("lcs", help="largest common induced subgraph")
    _add_graph_args(sp)
    sp.add_argument("--input2", type=Path, help="edge-list file for the second graph")
    sp.add_argument("--m", type=int, help="vertex count of the second generated graph")
    sp.add_argument("--q", type=float, help="edge probability of the second graph (default: --p)")
    sp.add_argument("--cap", type=int, default=DEFAULT_LCS_CAP)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_lcs)

    sp = sub.add_parser("approx", help="block-partition approximate independent set")
    _add_graph_args(sp)
    _add_eps_args(sp)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("mc", help="Monte Carlo check of a degree or mapping probability")
    sp.add_argument("--quantity", choices=["good", "mindeg", "iso"], required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float)
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_mc)

    sp = sub.add_parser("sweep", help="run an experiment grid and write CSV")
    sp.add_argument("--config", type=Path, help="JSON sweep config")
    sp.add_argument("--n", type=int, nargs="+")
    sp.add_argument("--p", type=float, nargs="+")
    sp.add_argument("--m", type=int, nargs="+")
    sp.add_argument("--q", type=float, nargs="+")
    sp.add_argument("--seeds", type=int, nargs="+")
    sp.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed + t")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--algos", nargs="+", choices=harness.ALGOS, default=["exact"])
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--cap", type=int, default=DEFAULT_BRUTE_FORCE_CAP)
    sp.add_argument("--lcs-cap", type=int, default=DEFAULT_LCS_CAP)
    sp.add_argument("--threads", type=int)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
