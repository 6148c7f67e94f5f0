"""Command-line front end.

Exit codes: 0 success, 1 a verification found a failure, 2 bad input,
3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .catalog import (
    enumerate_candidates,
    get_entry,
    load_catalog,
    reports_to_json,
    reports_to_table,
    verify_entry,
)
from .core import analyze, parse_spec, render_spec
from .errors import (
    InconsistentResult,
    LemmaViolation,
    NefWCIError,
    ParseError,
    PreconditionError,
    ResourceError,
)
from .graph import (
    build_wp_graph,
    contains_delta,
    is_wci_graph,
    lcm,
    lcm_sigma_sweep,
    sigma,
    split_bidegree,
    to_dot,
    weak_vertices,
    WPGraph,
)
from .laurent import canonical_text, parse_laurent
from .lg import (
    DEFAULT_MAX_TERMS,
    factored_text,
    givental_model,
    iseries_oracle,
    lg_variables,
    period_sequence,
    weak_lg,
)
from .nef import (
    DEFAULT_NODE_BUDGET,
    construct_nice,
    enumerate_all,
    is_nice,
    parse_partition,
    render_partition,
    render_signature,
    signature,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Out:
    def __init__(self, fmt, stream):
        self.machine = fmt == "machine"
        self.stream = stream

    def emit(self, payload, human):
        if self.machine:
            json.dump(payload, self.stream, indent=2)
            self.stream.write("\n")
        else:
            self.stream.write(human.rstrip("\n") + "\n")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _partition_payload(p, spec):
    return {
        "partition": render_partition(p),
        "indices": [list(part) for part in p.parts],
        "signature": render_signature(signature(p, spec)),
        "nice": is_nice(p, spec),
    }


def _default_partition(spec):
    if spec.codimension <= 2:
        return construct_nice(spec)
    for p in enumerate_all(spec):
        if is_nice(p, spec):
            return p
    raise PreconditionError(f"{spec} has no nice nef partition")


def cmd_analyze(args, out):
    spec = parse_spec(args.spec)
    report = analyze(spec)
    payload = {"spec": render_spec(spec), **report.as_dict()}
    human = "\n".join(
        [f"spec: {render_spec(spec)}"]
        + [f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in report.as_dict().items()]
    )
    out.emit(payload, human)
    return EXIT_OK


def cmd_nef(args, out):
    spec = parse_spec(args.spec)
    if args.construct:
        parts = [construct_nice(spec)]
    else:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            parts = enumerate_all(spec, allow_empty_s0=args.allow_empty_s0, node_budget=args.node_budget)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    payload = {"spec": render_spec(spec), "partitions": [_partition_payload(p, spec) for p in parts]}
    if parts:
        human = "\n".join(
            f"{render_partition(p)}    weights {render_signature(signature(p, spec))}"
            + ("" if is_nice(p, spec) else "    (not nice)")
            for p in parts
        )
    else:
        human = "no nef partitions"
    out.emit(payload, human)
    return EXIT_OK


def _spec_partition(args):
    spec = parse_spec(args.spec)
    p = parse_partition(args.partition, spec) if args.partition else _default_partition(spec)
    return spec, p


def cmd_lg(args, out):
    spec, p = _spec_partition(args)
    excl = args.exclude
    f = weak_lg(spec, p, excl)
    payload = {
        "spec": render_spec(spec),
        "partition": render_partition(p),
        "variables": list(f.variables),
        "sources": {name: idx for name, idx, _ in lg_variables(spec, p, excl)},
        "polynomial": canonical_text(f),
        "factored": factored_text(spec, p, excl),
        "givental": givental_model(spec, p).render().splitlines(),
    }
    human = factored_text(spec, p, excl)
    if args.givental:
        human = givental_model(spec, p).render() + "\n" + human
    if args.expanded:
        human = canonical_text(f)
    out.emit(payload, human)
    return EXIT_OK


def cmd_period(args, out):
    if args.poly is not None:
        f = parse_laurent(args.poly)
        spec = None
        label = canonical_text(f)
    else:
        if args.spec is None:
            raise PreconditionError("give a spec or --poly")
        spec, p = _spec_partition(args)
        f = weak_lg(spec, p, args.exclude)
        label = f"{render_spec(spec)} {render_partition(p)}"
    seq = period_sequence(f, args.k, max_terms=args.max_terms).values
    payload = {"input": label, "periods": list(seq)}
    human = ", ".join(map(str, seq))
    if args.oracle and spec is not None:
        oracle = iseries_oracle(spec, args.k).values
        payload["oracle"] = list(oracle)
        payload["oracle_agrees"] = oracle == seq
        human += f"\noracle: {', '.join(map(str, oracle))} ({'agrees' if oracle == seq else 'DIFFERS'})"
    out.emit(payload, human)
    return EXIT_OK if not args.oracle or spec is None or payload["oracle_agrees"] else EXIT_FAILED


def cmd_graph(args, out):
    if args.spec.lstrip().startswith("P"):
        spec = parse_spec(args.spec)
        g = build_wp_graph(spec.weights)
        degrees = spec.degrees
    else:
        g = WPGraph.from_weights(_int_list(args.spec))
        degrees = tuple(args.degrees or ())
    if args.dot:
        out.stream.write(to_dot(g) + "\n")
        return EXIT_OK
    weak = sorted(weak_vertices(g))
    payload = {
        "vertices": [[v, w] for v, w in g.vertices],
        "edges": sorted([list(e) for e in g.edges]),
        "sigma": sigma(g) if len(g) else None,
        "lcm": lcm(g) if len(g) else None,
        "weak": weak,
        "delta": list(contains_delta(g) or []),
    }
    lines = [
        "vertices: " + ", ".join(f"{v}:{w}" for v, w in g.vertices),
        "edges: " + ", ".join(f"{i}-{j}" for i, j in sorted(g.edges)),
        f"sigma: {payload['sigma']}  lcm: {payload['lcm']}",
        "weak: " + (", ".join(f"{v}:{g.weight(v)}" for v in weak) or "none"),
        "delta component: " + ("yes" if payload["delta"] else "no"),
    ]
    if degrees:
        payload["wci_graph"] = is_wci_graph(g, degrees)
        lines.append(f"WCI-graph for degrees {','.join(map(str, degrees))}: {payload['wci_graph']}")
        if len(degrees) == 2 and payload["wci_graph"] and len(g):
            split = split_bidegree(g, *degrees)
            payload["split"] = {"V1": sorted(split.V1), "V2": sorted(split.V2),
                                "V1_weights": split.weights(g, 1), "V2_weights": split.weights(g, 2)}
            lines.append(f"split V1 weights {split.weights(g, 1)}  V2 weights {split.weights(g, 2)}")
    out.emit(payload, "\n".join(lines))
    return EXIT_OK


def cmd_catalog(args, out):
    entries = load_catalog()
    if args.entry:
        entries = [get_entry(*args.entry, entries)]
    if not args.verify:
        payload = [
            {"table": e.table, "row": e.row, "spec": render_spec(e.spec),
             "partitions": [render_partition(p) for p in e.partitions],
             "lg": list(e.lg_strings), "errata": len(e.errata)}
            for e in entries
        ]
        human = "\n".join(
            f"{e.table}.{e.row:<3} {render_spec(e.spec):<28} "
            + "  ".join(render_partition(p) for p in e.partitions)
            for e in entries
        )
        out.emit(payload, human)
        return EXIT_OK
    k = None if args.no_periods else args.k
    reports = [verify_entry(e, k, args.max_terms) for e in entries]
    text = reports_to_json(reports) if out.machine else reports_to_table(reports)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"report written to {args.output}", file=sys.stderr)
    else:
        out.stream.write(text + "\n")
    if not out.machine:
        for r in reports:
            for er in r.errata:
                print(f"erratum {r.table}.{r.row} partition {er['partition']}: {er['justification']}",
                      file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_sweep(args, out):
    res = lcm_sigma_sweep(args.max_weight, args.max_vertices,
                          connected_only=not args.disconnected, skip_delta=args.skip_delta)
    graphs = ["{" + ",".join(map(str, g.weights)) + "}" for g in res.violations]
    payload = {"examined": res.examined, "exceptional": [list(g.weights) for g in res.violations]}
    noun = "exceptional graph" if len(graphs) == 1 else "exceptional graphs"
    human = f"{len(graphs)} {noun}" + (": " + ", ".join(graphs) if graphs else "")
    human += f"\n({res.examined} no-weak-vertex graphs examined)"
    out.emit(payload, human)
    return EXIT_OK


def cmd_candidates(args, out):
    wb, db = args.bounds
    specs = enumerate_candidates(args.dim, args.codim, wb, db, budget=args.budget)
    payload = [render_spec(s) for s in specs]
    human = "\n".join(payload) + f"\n{len(payload)} candidates"
    out.emit(payload, human)
    return EXIT_OK


def _entry(text):
    try:
        t, r = (int(x) for x in text.split("."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected TABLE.ROW, got {text!r}") from None
    return t, r


def _bounds(text):
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("bounds are WEIGHT_BOUND,DEGREE_BOUND")
    return vals


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="human-readable text or JSON")

    parser = argparse.ArgumentParser(prog="nefwci", description="Fano weighted complete intersections: "
                                     "nef partitions, WP-graphs and weak Landau-Ginzburg models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="well-formedness and other flags")
    p.add_argument("spec")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("nef", parents=[common], help="nef partitions")
    p.add_argument("spec")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--construct", action="store_true", help="build one nice partition (codim <= 2)")
    mode.add_argument("--all", action="store_true", help="enumerate all partitions (default)")
    p.add_argument("--allow-empty-s0", action="store_true")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_nef)

    for name, func, hlp in (("lg", cmd_lg, "weak Landau-Ginzburg polynomial"),
                            ("period", cmd_period, "period sequence")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("spec", nargs="?" if name == "period" else None)
        p.add_argument("partition", nargs="?", help="e.g. {0}|{1,2,3}|{4,5,6}; default: a nice one")
        p.add_argument("--exclude", type=_int_list, help="excluded index per part, S_0 first")
        p.set_defaults(func=func)
    sub.choices["lg"].add_argument("--givental", action="store_true", help="also print the Givental model")
    sub.choices["lg"].add_argument("--expanded", action="store_true", help="print the expanded polynomial")
    per = sub.choices["period"]
    per.add_argument("--k", type=int, default=6)
    per.add_argument("--poly", help="a Laurent polynomial instead of a spec")
    per.add_argument("--oracle", action="store_true", help="compare with the closed form")
    per.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)

    p = sub.add_parser("graph", parents=[common], help="WP-graph of the non-unit weights")
    p.add_argument("spec", help="a spec, or comma-separated weights")
    p.add_argument("--degrees", type=_int_list, help="degrees when weights are given directly")
    p.add_argument("--dot", action="store_true", help="Graphviz output")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("catalog", parents=[common], help="list or verify the embedded catalog")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--no-periods", action="store_true")
    p.add_argument("--entry", type=_entry, help="TABLE.ROW, e.g. 1.11")
    p.add_argument("--output", help="write the report to a file")
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("sweep", parents=[common], help="search no-weak-vertex graphs for lcm < sigma")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--disconnected", action="store_true", help="include disconnected graphs")
    p.add_argument("--skip-delta", action="store_true", help="ignore graphs with a {6,10,15} component")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("candidates", parents=[common], help="bounded search for candidate specs")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--codim", type=int, required=True, help="maximal codimension")
    p.add_argument("--bounds", type=_bounds, required=True, help="WEIGHT_BOUND,DEGREE_BOUND")
    p.add_argument("--budget", type=int, default=5 * 10**6)
    p.set_defaults(func=cmd_candidates)
    return parser


def main(argv=None, stdout=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.format, stdout or sys.stdout)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(exc.pointer(), file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (LemmaViolation, InconsistentResult) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except NefWCIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
