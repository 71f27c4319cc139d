"""Command-line front end: info, bi, spin, numerics.

Human-readable tables by default; ``--json`` switches to a single JSON object
on stdout with sorted keys, so identical invocations are byte-identical.
Rationals are printed as exact fractions ("19", "39/2"), never as decimals.
Diagnostics go to stderr and the exit code is 0 exactly when no error occurred.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import numerics
from .errors import SpinPicardError
from .graphs import (
    DualGraph,
    Multidegree,
    arithmetic_genus,
    basic_inequality,
    enumerate_multidegrees,
    is_stable,
    validate_graph,
)
from .quasistable import (
    BlowupConfig,
    expand,
    git_stable,
    orbit_closed_check,
    spin_multidegree,
    spin_parity,
)
from .spin_locus import (
    decide_spin_component,
    enumerate_spin_multidegrees,
    split_curve_graph,
    split_curve_table,
)

PROG = "spinpicard"


@dataclass
class Envelope:
    """What a subcommand produced: the JSON payload plus its human rendering."""

    command: str
    inputs: dict
    result: dict
    lines: list = field(default_factory=list)

    def payload(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "result": self.result}


def _q(x) -> str:
    """Exact rendering of a rational (Fraction or int) as a string."""
    return str(Fraction(x))


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpinPicardError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpinPicardError(
            f"{path} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc


def _load_graph(path: str) -> DualGraph:
    return validate_graph(_load_json(path))


def _parse_degree_list(text: str, graph: DualGraph) -> Multidegree:
    try:
        values = [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise SpinPicardError(
            f"expected a comma-separated list of integers, got {text!r}"
        ) from None
    return Multidegree.from_values(graph, values)


def _md_json(md: Multidegree) -> dict:
    return {vid: deg for vid, deg in md.items}


# -- subcommands -----------------------------------------------------------


def cmd_info(args) -> Envelope:
    graph = _load_graph(args.graph)
    genus = arithmetic_genus(graph)
    stable = is_stable(graph)
    pair_nodes = sum(m for _, _, m in graph.pairs())
    self_nodes = sum(v.self_nodes for v in graph.vertices)
    env = Envelope(
        command="info",
        inputs={"graph": args.graph},
        result={
            "genus": genus,
            "stable": stable,
            "vertex_count": graph.n,
            "pair_node_count": pair_nodes,
            "self_node_count": self_nodes,
            "vertices": [
                {"id": v.id, "pa": v.pa, "self_nodes": v.self_nodes}
                for v in graph.vertices
            ],
            "edges": [
                {"u": u, "v": v, "multiplicity": m} for u, v, m in graph.pairs()
            ],
        },
    )
    env.lines.append(f"genus {genus}, {'stable' if stable else 'NOT stable'}")
    env.lines.append(
        f"{graph.n} vertices, {pair_nodes} nodes between distinct components, "
        f"{self_nodes} self-nodes"
    )
    for v in graph.vertices:
        env.lines.append(f"  {v.id}: pa={v.pa}, self_nodes={v.self_nodes}")
    for u, v, m in graph.pairs():
        env.lines.append(f"  {u} -- {v}: {m}")
    return env


def cmd_bi(args) -> Envelope:
    graph = _load_graph(args.graph)
    inputs = {"graph": args.graph, "total": args.total}
    if args.multidegree is not None:
        md = _parse_degree_list(args.multidegree, graph)
        if md.total != args.total:
            raise SpinPicardError(
                f"multidegree totals {md.total}, but --total is {args.total}"
            )
        report = basic_inequality(graph, md, max_vertices=args.max_vertices)
        inputs["multidegree"] = _md_json(md)
        env = Envelope(
            command="bi",
            inputs=inputs,
            result={
                "mode": "check",
                "satisfied": report.satisfied,
                "violations": [
                    {
                        "subcurve": sorted(v.subcurve),
                        "degree": v.degree,
                        "lower": _q(v.lower),
                        "upper": _q(v.upper),
                    }
                    for v in report.violations
                ],
            },
        )
        if report.satisfied:
            env.lines.append("basic inequality: satisfied on every subcurve")
        else:
            env.lines.append(
                f"basic inequality: VIOLATED on {len(report.violations)} subcurve(s)"
            )
            for v in report.violations:
                names = ", ".join(sorted(v.subcurve))
                env.lines.append(
                    f"  Y={{{names}}}: degree {v.degree} outside [{_q(v.lower)}, {_q(v.upper)}]"
                )
        return env

    found = enumerate_multidegrees(graph, args.total, max_vertices=args.max_vertices)
    env = Envelope(
        command="bi",
        inputs=inputs,
        result={
            "mode": "enumerate",
            "vertex_order": list(graph.ids),
            "count": len(found),
            "multidegrees": [list(md.values(graph.ids)) for md in found],
        },
    )
    env.lines.append(
        f"{len(found)} multidegree(s) of total {args.total} satisfy the basic inequality"
    )
    env.lines.append(f"vertex order: {', '.join(graph.ids)}")
    for md in found:
        env.lines.append("  (" + ", ".join(str(d) for d in md.values(graph.ids)) + ")")
    return env


def cmd_spin(args) -> Envelope:
    t = args.t
    unsafe = args.unsafe_t

    if args.split_curve:
        if args.genus is None:
            raise SpinPicardError("--split-curve needs -g/--genus")
        rows = split_curve_table(args.genus, t, unsafe_t=unsafe)
        bidegrees = sorted({(r.d1, r.d2) for r in rows})
        env = Envelope(
            command="spin",
            inputs={"mode": "split-curve", "genus": args.genus, "t": t},
            result={
                "rows": [
                    {"s": r.s, "sigma": r.sigma, "d1": r.d1, "d2": r.d2} for r in rows
                ],
                "bidegrees": [list(b) for b in bidegrees],
                "count": len(bidegrees),
            },
        )
        env.lines.append(
            f"split curve of genus {args.genus} at t={t}: "
            f"{len(rows)} (s, sigma) rows, {len(bidegrees)} distinct bidegrees"
        )
        env.lines.append("  s  sigma    d1    d2")
        for r in rows:
            env.lines.append(f"  {r.s:<2} {r.sigma:<5} {r.d1:>5} {r.d2:>5}")
        return env

    if args.graph is None:
        raise SpinPicardError("a graph file is required unless --split-curve is used")
    graph = _load_graph(args.graph)
    inputs = {"graph": args.graph, "t": t}

    if args.blowups is not None:
        config = BlowupConfig.from_dict(_load_json(args.blowups))
        parity = spin_parity(graph, config)
        inputs["blowups"] = args.blowups
        result = {"mode": "blowups", "spin_parity": parity}
        env = Envelope(command="spin", inputs=inputs, result=result)
        if not parity:
            env.lines.append("spin parity: FAILS (no spin structure on this model)")
            return env
        q = expand(graph, config)
        md = spin_multidegree(q, t, unsafe_t=unsafe)
        stable = git_stable(q, t, unsafe_t=unsafe)
        closed = orbit_closed_check(
            q, t, unsafe_t=unsafe, max_vertices=args.max_vertices
        )
        result.update(
            {
                "exceptional_count": len(q.exceptional),
                "vertex_count": q.n,
                "multidegree": _md_json(md),
                "total": md.total,
                "git_stable": stable,
                "orbit_closed": closed,
            }
        )
        env.lines.append("spin parity: holds")
        env.lines.append(
            f"expanded model: {q.n} vertices, {len(q.exceptional)} exceptional"
        )
        env.lines.append(f"spin multidegree (total {md.total}):")
        for vid, deg in md.items:
            env.lines.append(f"  {vid}: {deg}")
        env.lines.append(f"GIT stable: {'yes' if stable else 'no'}")
        env.lines.append(f"orbit closed: {'yes' if closed else 'no'}")
        return env

    if args.decide is not None:
        md = _parse_degree_list(args.decide, graph)
        witness = decide_spin_component(
            graph, t, md, unsafe_t=unsafe, max_vertices=args.max_vertices
        )
        inputs["multidegree"] = _md_json(md)
        result = {"mode": "decide", "met": witness is not None}
        result["witness"] = witness.to_dict() if witness is not None else None
        env = Envelope(command="spin", inputs=inputs, result=result)
        if witness is None:
            env.lines.append("no witness: the spin locus misses this fiber component")
        else:
            env.lines.append("witness found:")
            for u, v, c in witness.s_items():
                env.lines.append(f"  s[{u}, {v}] = {c}")
            for u, v, c in witness.sigma_items():
                env.lines.append(f"  sigma[{u}, {v}] = {c}")
            if not witness.s_items():
                env.lines.append("  (no blow-ups needed)")
        return env

    if args.locus:
        found = enumerate_spin_multidegrees(
            graph, t, unsafe_t=unsafe, max_vertices=args.max_vertices
        )
        env = Envelope(
            command="spin",
            inputs=inputs,
            result={
                "mode": "locus",
                "vertex_order": list(graph.ids),
                "count": len(found),
                "multidegrees": [list(md.values(graph.ids)) for md in found],
            },
        )
        env.lines.append(
            f"the spin locus meets {len(found)} fiber component(s) at t={t}"
        )
        env.lines.append(f"vertex order: {', '.join(graph.ids)}")
        for md in found:
            env.lines.append("  (" + ", ".join(str(d) for d in md.values(graph.ids)) + ")")
        return env

    raise SpinPicardError("pick one of --blowups, --locus, --decide, --split-curve")


def cmd_numerics(args) -> Envelope:
    g = args.genus
    if g is None:
        raise SpinPicardError("-g/--genus is required")
    verb = args.verb
    needs_d = verb in {"kdg", "coarse", "normalize"}
    if needs_d and args.degree is None:
        raise SpinPicardError(f"'{verb}' needs -d/--degree")
    inputs = {"verb": verb, "g": g}
    if needs_d:
        inputs["d"] = args.degree
    env = Envelope(command="numerics", inputs=inputs, result={})

    if verb == "kdg":
        import math

        value = numerics.kouvidakis_class(g, args.degree)
        divisor = math.gcd(2 * g - 2, g + args.degree - 1)
        env.result = {"value": value}
        env.lines.append(
            f"kouvidakis class = (2g-2)/gcd(2g-2, g+d-1) "
            f"= {2 * g - 2}/{divisor} = {value}"
        )
    elif verb == "coarse":
        value = numerics.coarse_moduli_predicate(g, args.degree)
        env.result = {"value": value}
        env.lines.append(
            f"gcd(d-g+1, 2g-2) = gcd({args.degree - g + 1}, {2 * g - 2}) "
            f"{'= 1: coarse moduli space exists' if value else '> 1: no coarse moduli space'}"
        )
    elif verb == "rank":
        value = numerics.class_group_rank(g)
        env.result = {"value": value}
        env.lines.append(f"class group rank = floor(g/2) + 3 = {g // 2} + 3 = {value}")
    else:  # normalize
        value = numerics.normalize_degree(g, args.degree)
        env.result = {"value": value}
        env.lines.append(
            f"smallest degree >= 20(g-1) = {20 * (g - 1)} congruent to "
            f"{args.degree} mod {2 * g - 2}: {value}"
        )
    return env


# -- wiring ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description=(
            "Degree combinatorics on nodal curves: basic-inequality checks, "
            "blow-up models, spin loci, and Picard-variety numerics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, max_vertices=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if max_vertices:
            p.add_argument(
                "--max-vertices",
                type=int,
                default=None,
                metavar="N",
                help="cap for exhaustive subcurve scans (default 12)",
            )

    p_info = sub.add_parser("info", help="genus, stability, and a vertex/edge summary")
    p_info.add_argument("graph", help="graph JSON file")
    add_common(p_info, max_vertices=False)
    p_info.set_defaults(handler=cmd_info)

    p_bi = sub.add_parser("bi", help="check or enumerate multidegrees under the basic inequality")
    p_bi.add_argument("graph", help="graph JSON file")
    p_bi.add_argument("--total", type=int, required=True, help="total degree d")
    group = p_bi.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--multidegree",
        metavar="LIST",
        help="comma-separated degrees in sorted vertex-id order",
    )
    group.add_argument("--enumerate", action="store_true", help="list all admissible multidegrees")
    add_common(p_bi)
    p_bi.set_defaults(handler=cmd_bi)

    p_spin = sub.add_parser("spin", help="spin parity, multidegrees, witnesses, split curves")
    p_spin.add_argument("graph", nargs="?", help="graph JSON file (not needed with --split-curve)")
    p_spin.add_argument("-t", dest="t", type=int, required=True, help="twist parameter (>= 10)")
    p_spin.add_argument("--unsafe-t", action="store_true", help="allow 0 <= t < 10 (unsupported regime)")
    mode = p_spin.add_mutually_exclusive_group(required=True)
    mode.add_argument("--blowups", metavar="FILE", help="blow-up JSON file; report parity, degrees, stability")
    mode.add_argument("--locus", action="store_true", help="enumerate multidegrees met by the spin locus")
    mode.add_argument("--decide", metavar="LIST", help="find a witness for this multidegree")
    mode.add_argument("--split-curve", action="store_true", help="closed-form table for the split curve")
    p_spin.add_argument("-g", "--genus", type=int, help="genus for --split-curve")
    add_common(p_spin)
    p_spin.set_defaults(handler=cmd_spin)

    p_num = sub.add_parser("numerics", help="scalar invariants of the Picard variety")
    p_num.add_argument("verb", choices=["kdg", "coarse", "rank", "normalize"])
    p_num.add_argument("-g", "--genus", type=int, required=True)
    p_num.add_argument("-d", "--degree", type=int)
    add_common(p_num, max_vertices=False)
    p_num.set_defaults(handler=cmd_numerics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        envelope = args.handler(args)
    except SpinPicardError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(envelope.payload(), sort_keys=True, indent=2))
    else:
        for line in envelope.lines:
            print(line)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
