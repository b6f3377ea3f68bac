"""Command-line front door.

Exit codes: 0 success (for `dsep`: disconnected), 1 domain errors (for
`dsep`: connected), 2 usage errors.  All numbers print with 9 significant
digits.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bn import BayesianNetwork, BNError, bn_joint, bn_to_bpn
from .cutnet import sequentialize as seq_cutnet
from .cutnet import type_cuts, ve_factorize, width
from .dsep import CiQuery, disconnected, ci_oracle
from .factors import Assignment, CostCounters, Factor, FactorError
from .formulas import format_formula
from .net import NetError, ProofNet, check_correctness, check_typed_graph
from .rewrite import normalize
from .semantics import forward_sample, interpret_naive, interpret_rooted, query


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_bn(path: str) -> BayesianNetwork:
    return BayesianNetwork.from_json(_load_json(path))


def _load_net(path: str) -> ProofNet:
    return ProofNet.from_json(_load_json(path))


def _print_factor(f: Factor, fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"vars": [{"name": v.name, "values": list(v.values)} for v in f.vars],
                   "table": [float(_fmt(x)) for x in f.table]}, out, indent=2)
        out.write("\n")
    else:
        for a in f.assignments():
            key = " ".join(f"{v.name}={a[v.name]}" for v in f.vars)
            out.write(f"{key}  {_fmt(f.value(a))}\n".lstrip())


def _parse_evidence(items: list[str]) -> Assignment:
    b = {}
    for item in items:
        for part in item.split(","):
            if not part:
                continue
            if "=" not in part:
                raise FactorError(f"evidence {part!r} is not name=value")
            k, v = part.split("=", 1)
            b[k] = v
    return Assignment(b)


def _names(arg: str) -> list[str]:
    return [x for x in arg.split(",") if x]


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bpn", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("convert", help="translate a BN to a proof-net")
    c.add_argument("--bn", required=True)
    c.add_argument("--query", required=True, help="comma-separated names")
    c.add_argument("--out")

    c = sub.add_parser("query", help="posterior over targets given evidence")
    c.add_argument("--bn", required=True)
    c.add_argument("--target", required=True)
    c.add_argument("--evidence", action="append", default=[])
    c.add_argument("--format", choices=["text", "json"], default="text")

    for name in ("ve", "cost-report", "type-cuts", "sequentialize"):
        c = sub.add_parser(name)
        c.add_argument("--bn", required=True)
        c.add_argument("--target", required=True)
        c.add_argument("--order", required=True, help="elimination order, comma-separated")
        if name == "sequentialize":
            c.add_argument("--format", choices=["text", "json"], default="text")
        if name in ("ve", "type-cuts"):
            c.add_argument("--out")

    c = sub.add_parser("dsep", help="graphical conditional independence")
    c.add_argument("--bn", required=True)
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--z", default="")
    c.add_argument("--verify", action="store_true")

    c = sub.add_parser("check", help="typing and correctness report")
    c.add_argument("--net", required=True)

    c = sub.add_parser("normalize")
    c.add_argument("--net", required=True)
    c.add_argument("--prune", action="store_true")
    c.add_argument("--trace", action="store_true")
    c.add_argument("--out")

    c = sub.add_parser("export-dot")
    c.add_argument("--net")
    c.add_argument("--bn")
    c.add_argument("--query", default="")
    c.add_argument("--out")

    c = sub.add_parser("sample")
    c.add_argument("--bn", required=True)
    c.add_argument("--seed", required=True, type=int)
    c.add_argument("--count", type=int, default=1)
    return p


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rooted_from_args(args):
    b = _load_bn(args.bn)
    targets = _names(args.target)
    net = bn_to_bpn(b, set(targets))
    return ve_factorize(net, _names(args.order))


def _run(args) -> int:
    if args.cmd == "convert":
        net = bn_to_bpn(_load_bn(args.bn), set(_names(args.query)))
        _emit(net.to_json_str() + "\n", args.out)
    elif args.cmd == "query":
        b = _load_bn(args.bn)
        targets = _names(args.target)
        evidence = _parse_evidence(args.evidence)
        net = bn_to_bpn(b, set(targets) | set(evidence))
        _print_factor(query(net, targets, evidence), args.format, sys.stdout)
    elif args.cmd == "ve":
        rcn = _rooted_from_args(args)
        interp = interpret_rooted(rcn)
        _print_factor(interp.factor, "text", sys.stdout)
        sys.stdout.write(f"width {width(rcn.to_cutnet())} "
                         f"max_intermediate {interp.max_intermediate}\n")
    elif args.cmd == "cost-report":
        rcn = _rooted_from_args(args)
        interp = interpret_rooted(rcn)
        ct = interp.counters
        json.dump({"width": width(rcn.to_cutnet()),
                   "max_intermediate": interp.max_intermediate,
                   "counters": {"entries_written": ct.entries_written,
                                "multiplications": ct.multiplications,
                                "additions": ct.additions,
                                "max_live_table": ct.max_live_table}},
                  sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.cmd == "type-cuts":
        rcn = _rooted_from_args(args)
        typed = type_cuts(rcn.to_cutnet())
        for cid in typed.separating_cuts:
            cut = typed.net.nodes[cid]
            labs = [format_formula(typed.net.edges[e].label) for e in cut.premises]
            sys.stderr.write(f"cut {cid}: {labs[0]} vs {labs[1]}\n")
        _emit(typed.net.to_json_str() + "\n", args.out)
    elif args.cmd == "sequentialize":
        rcn = _rooted_from_args(args)
        typed = type_cuts(rcn.to_cutnet())
        pt = seq_cutnet(typed)
        if args.format == "json":
            sys.stdout.write(json.dumps(pt.to_json(), indent=2) + "\n")
        else:
            sys.stdout.write(pt.render() + "\n")
    elif args.cmd == "dsep":
        b = _load_bn(args.bn)
        x, y, z = set(_names(args.x)), set(_names(args.y)), set(_names(args.z))
        rest = set(b.names) - x - y - z
        if rest:
            sys.stderr.write(f"warning: adding {sorted(rest)} to z\n")
            z |= rest
        q = CiQuery(frozenset(x), frozenset(y), frozenset(z))
        net = bn_to_bpn(b, x | y | z)
        m = normalize(net, include_pruning=True)
        g = disconnected(m, q)
        sys.stdout.write(f"disconnected: {g}\n")
        if args.verify:
            sys.stdout.write(f"oracle: {ci_oracle(bn_joint(b), q)}\n")
        return 0 if g else 1
    elif args.cmd == "check":
        net = _load_net(args.net)
        report = check_typed_graph(net)
        for line in report:
            sys.stdout.write(line + "\n")
        if report:
            return 1
        ok = check_correctness(net)
        sys.stdout.write(f"typed: ok\ncorrect: {ok}\n")
        return 0 if ok else 1
    elif args.cmd == "normalize":
        net = _load_net(args.net)
        trace = []
        out = normalize(net, include_pruning=args.prune, trace=trace)
        if args.trace:
            for r in trace:
                sys.stderr.write(f"{r.kind} {' '.join(map(str, r.nodes))}\n")
        _emit(out.to_json_str() + "\n", args.out)
    elif args.cmd == "export-dot":
        if args.net:
            net = _load_net(args.net)
        elif args.bn:
            net = bn_to_bpn(_load_bn(args.bn), set(_names(args.query)))
        else:
            raise FactorError("export-dot needs --net or --bn")
        _emit(net.to_dot() + "\n", args.out)
    elif args.cmd == "sample":
        import numpy as np
        b = _load_bn(args.bn)
        net = bn_to_bpn(b, set(b.names))
        rng = np.random.default_rng(args.seed)
        for _ in range(args.count):
            a = forward_sample(net, rng)
            sys.stdout.write(" ".join(f"{k}={a[k]}" for k in sorted(a)) + "\n")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (NetError, BNError, FactorError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
