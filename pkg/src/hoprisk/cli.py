"""Command-line frontend: reproducible pipelines over network files.

Every command is a pure function of its inputs, flags, and seed; a JSON
manifest recording the command, parameters, seed, and output digests is
written next to each output file.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import sys
from typing import Sequence

from . import __version__
from .exact import ExactEngineCapError, DEFAULT_NODE_CAP, joint_pmf
from .network import (
    assign_types_by_degree,
    generate_ba,
    load_json,
    save_json,
    with_type_probabilities,
)
from .pmf import JointPmf
from .scoring import parse_rules, score_distribution
from .simulate import SampleMatrix, simulate_runs
from .stats import check_orthant_monotone, marginal_moments, pairwise_correlations

PROG = "hoprisk"


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return "sha256:" + h.hexdigest()


def _write_manifest(
    anchor: str,
    command: str,
    inputs: dict[str, str],
    parameters: dict,
    outputs: Sequence[str],
) -> None:
    doc = {
        "command": command,
        "inputs": inputs,
        "parameters": parameters,
        "outputs": {path: _sha256(path) for path in outputs},
        "tool_version": __version__,
    }
    with open(anchor + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    drawn = secrets.randbits(63)
    print(f"seed: {drawn}", file=sys.stderr)
    return drawn


def _parse_prob_list(raw: str, label: str) -> list[float]:
    try:
        vals = [float(v) for v in raw.split(",")]
    except ValueError:
        raise ValueError(f"{label} must be a comma-separated list of probabilities")
    return vals


def cmd_exact(args: argparse.Namespace) -> int:
    net = load_json(args.network)
    cap = args.cap_override if args.cap_override is not None else DEFAULT_NODE_CAP
    pmf = joint_pmf(net, args.depth, max_nodes=cap)
    pmf.to_csv(args.out)
    _write_manifest(
        args.out,
        "exact",
        {"network": args.network},
        {"depth": args.depth, "node_cap": cap, "seed": None},
        [args.out],
    )
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    net = load_json(args.network)
    seed = _resolve_seed(args.seed)
    samples = simulate_runs(net, args.depth, args.runs, seed)
    samples.to_csv(args.out)
    _write_manifest(
        args.out,
        "simulate",
        {"network": args.network},
        {"depth": args.depth, "runs": args.runs, "seed": seed},
        [args.out],
    )
    return 0


def _fmt(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.17g}"


def cmd_stats(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
    outputs: list[str] = []
    if header.startswith("run,depth,"):
        samples = SampleMatrix.from_csv(args.input)
        moments_path = args.out + ".moments.csv"
        with open(moments_path, "w", encoding="utf-8") as fh:
            fh.write("depth,type,mean,sd\n")
            for l in range(1, samples.depth + 1):
                summary = marginal_moments(samples, l)
                for t, tm in enumerate(summary.per_type):
                    fh.write(f"{l},{t + 1},{tm.mean:.17g},{tm.sd:.17g}\n")
        outputs.append(moments_path)
        corr_path = args.out + ".correlations.csv"
        with open(corr_path, "w", encoding="utf-8") as fh:
            fh.write("depth,pair,pearson,kendall,spearman\n")
            for l in range(1, samples.depth + 1):
                if samples.runs < 2:
                    for i in range(samples.num_types):
                        for j in range(i + 1, samples.num_types):
                            fh.write(f"{l},{i + 1}-{j + 1},undefined,undefined,undefined\n")
                    continue
                for (i, j), dep in pairwise_correlations(samples, l).items():
                    fh.write(
                        f"{l},{i + 1}-{j + 1},{_fmt(dep.pearson)},"
                        f"{_fmt(dep.kendall)},{_fmt(dep.spearman)}\n"
                    )
        outputs.append(corr_path)
    elif header.startswith("x_1,"):
        pmf = JointPmf.from_csv(args.input)
        moments_path = args.out + ".moments.csv"
        with open(moments_path, "w", encoding="utf-8") as fh:
            fh.write("depth,type,mean,sd\n")
            summary = marginal_moments(pmf)
            for t, tm in enumerate(summary.per_type):
                fh.write(f",{t + 1},{tm.mean:.17g},{tm.sd:.17g}\n")
        outputs.append(moments_path)
        if pmf.num_types == 2:
            contour_path = args.out + ".contour.csv"
            with open(contour_path, "w", encoding="utf-8") as fh:
                fh.write("x1,x2,prob\n")
                for idx, prob in pmf.cells():
                    fh.write(f"{idx[0]},{idx[1]},{prob:.17g}\n")
            outputs.append(contour_path)
    else:
        raise ValueError(f"{args.input}: neither a sample CSV nor a PMF CSV")
    _write_manifest(
        args.out,
        "stats",
        {"input": args.input},
        {"seed": None},
        outputs,
    )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    pmf = JointPmf.from_csv(args.pmf)
    with open(args.rules, "r", encoding="utf-8") as fh:
        rules = parse_rules(fh.read())
    dist = score_distribution(rules, pmf)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("score,prob\n")
        for score, prob in dist.items():
            fh.write(f"{score},{prob:.17g}\n")
    _write_manifest(
        args.out,
        "score",
        {"pmf": args.pmf, "rules": args.rules},
        {"seed": None},
        [args.out],
    )
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    net = generate_ba(args.nodes, args.attach, args.init, seed, args.seed_topology)
    if args.top_k is not None:
        net = assign_types_by_degree(net, args.top_k)
    if args.p is not None or args.q is not None:
        p_by_type = _parse_prob_list(args.p, "--p") if args.p else [0.0] * net.num_types
        q_by_type = _parse_prob_list(args.q, "--q") if args.q else [0.0] * net.num_types
        net = with_type_probabilities(net, p_by_type, q_by_type)
    save_json(net, args.out)
    _write_manifest(
        args.out,
        "generate",
        {},
        {
            "model": "ba",
            "nodes": args.nodes,
            "attach": args.attach,
            "init": args.init,
            "seed_topology": args.seed_topology,
            "top_k": args.top_k,
            "p": args.p,
            "q": args.q,
            "seed": seed,
        },
        [args.out],
    )
    return 0


def cmd_order_check(args: argparse.Namespace) -> int:
    net = load_json(args.network)
    cap = args.cap_override if args.cap_override is not None else DEFAULT_NODE_CAP
    if args.depths and (args.p_scale or args.q_scale):
        raise ValueError("use either --depths or --p-scale/--q-scale, not both")
    reports = []
    if args.depths:
        if len(args.depths) < 2:
            raise ValueError("--depths needs at least two values")
        pmfs = {d: joint_pmf(net, d, max_nodes=cap) for d in sorted(set(args.depths))}
        for lo, hi in zip(args.depths, args.depths[1:]):
            claim = f"depth {lo} <= depth {hi}"
            reports.append(check_orthant_monotone(pmfs[lo], pmfs[hi], args.tol, claim))
    elif args.p_scale is not None or args.q_scale is not None:
        if args.depth is None:
            raise ValueError("--p-scale/--q-scale require --depth")
        lo = joint_pmf(net, args.depth, max_nodes=cap)
        scaled = net
        claims = []
        if args.p_scale is not None:
            from dataclasses import replace

            scaled = replace(
                scaled, p=tuple(min(1.0, pi * args.p_scale) for pi in scaled.p)
            )
            claims.append(f"p scaled by {args.p_scale}")
        if args.q_scale is not None:
            from dataclasses import replace

            scaled = replace(
                scaled,
                q={k: min(1.0, v * args.q_scale) for k, v in scaled.q.items()},
            )
            claims.append(f"q scaled by {args.q_scale}")
        hi = joint_pmf(scaled, args.depth, max_nodes=cap)
        claim = f"base <= {', '.join(claims)} at depth {args.depth}"
        reports.append(check_orthant_monotone(lo, hi, args.tol, claim))
    else:
        raise ValueError("provide --depths or --p-scale/--q-scale")
    text = "\n".join(report.summary() for report in reports) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _write_manifest(
            args.out,
            "order-check",
            {"network": args.network},
            {
                "depths": args.depths,
                "depth": args.depth,
                "p_scale": args.p_scale,
                "q_scale": args.q_scale,
                "tol": args.tol,
                "seed": None,
            },
            [args.out],
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Joint compromise-count distributions under L-hop propagation",
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", help="exact joint PMF of a network file")
    p_exact.add_argument("--network", required=True)
    p_exact.add_argument("-L", "--depth", type=int, required=True)
    p_exact.add_argument("--out", required=True)
    p_exact.add_argument("--cap-override", type=int, default=None,
                         help=f"raise the {DEFAULT_NODE_CAP}-node exact-engine cap")
    p_exact.set_defaults(func=cmd_exact)

    p_sim = sub.add_parser("simulate", help="Monte Carlo runs of the propagation")
    p_sim.add_argument("--network", required=True)
    p_sim.add_argument("-L", "--depth", type=int, required=True)
    p_sim.add_argument("-K", "--runs", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=None,
                       help="master seed; drawn from entropy (and echoed) if omitted")
    p_sim.add_argument("--out", required=True)
    p_sim.set_defaults(func=cmd_simulate)

    p_stats = sub.add_parser("stats", help="moments/correlations of samples or a PMF")
    p_stats.add_argument("--in", dest="input", required=True,
                         help="sample CSV (run,depth,...) or PMF CSV (x_1,...)")
    p_stats.add_argument("--out", required=True, help="output path prefix")
    p_stats.set_defaults(func=cmd_stats)

    p_score = sub.add_parser("score", help="push a PMF through scoring rules")
    p_score.add_argument("--pmf", required=True)
    p_score.add_argument("--rules", required=True)
    p_score.add_argument("--out", required=True)
    p_score.set_defaults(func=cmd_score)

    p_gen = sub.add_parser("generate", help="generate a network file")
    gen_sub = p_gen.add_subparsers(dest="model", required=True)
    p_ba = gen_sub.add_parser("ba", help="preferential-attachment graph")
    p_ba.add_argument("--nodes", type=int, required=True)
    p_ba.add_argument("--attach", type=int, required=True)
    p_ba.add_argument("--init", type=int, required=True)
    p_ba.add_argument("--seed-topology", default="complete",
                      choices=["complete", "star", "path"])
    p_ba.add_argument("--top-k", type=int, default=None,
                      help="mark the top-k degree nodes as type I")
    p_ba.add_argument("--p", default=None,
                      help="comma-separated direct probabilities, one per type")
    p_ba.add_argument("--q", default=None,
                      help="comma-separated propagation probabilities, one per type")
    p_ba.add_argument("--seed", type=int, default=None)
    p_ba.add_argument("--out", required=True)
    p_ba.set_defaults(func=cmd_generate)

    p_order = sub.add_parser("order-check", help="orthant-dominance checks on exact PMFs")
    p_order.add_argument("--network", required=True)
    p_order.add_argument("--depths", type=int, nargs="+", default=None,
                         help="compare consecutive depths in the given order")
    p_order.add_argument("-L", "--depth", type=int, default=None,
                         help="depth for --p-scale/--q-scale comparisons")
    p_order.add_argument("--p-scale", type=float, default=None)
    p_order.add_argument("--q-scale", type=float, default=None)
    p_order.add_argument("--tol", type=float, default=1e-12)
    p_order.add_argument("--out", default=None)
    p_order.add_argument("--cap-override", type=int, default=None)
    p_order.set_defaults(func=cmd_order_check)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExactEngineCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
