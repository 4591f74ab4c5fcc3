"""Command line front end.

Every command reads a graph from --input (JSON: {"vertices": [...],
"edges": [{"id", "src", "dst"}, ...]}) and writes a report to stdout,
JSON by default, aligned text with --format text.

Exit codes: 0 success; 1 malformed input (nothing on stdout); 2 the
graph has a cycle with an exit where the command needs the no-exit
condition; 3 an internal verification replay failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .graph import Graph, GraphError, InfiniteEnumerationError
from .lpa import LeavittAlgebra
from .regularity import (
    NotRegularError,
    idempotent_report,
    regularity_witness_report,
    sample_homogeneous,
    type_I_witness,
)
from .scalar import PrimeField, Rationals
from .structure import (
    ExitConditionError,
    VerificationError,
    classify,
    decompose,
    dim_series_check,
    phi,
    verify_phi,
)


def _field_arg(text: str):
    if text == "q":
        return Rationals()
    if text.startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError("field must be 'q' or 'fp:P' for a prime P")


def _load_graph(args) -> Graph:
    with open(args.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return Graph.from_json_dict(data)


def _load_element(algebra: LeavittAlgebra, path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return algebra.element_from_json(data)


def _emit(args, obj, text_lines):
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- commands ----------------------------------------------------------------


def cmd_classify(args) -> int:
    g = _load_graph(args)
    report = classify(g)
    data = report.to_json()
    lines = [f"{k}: {data[k]}" for k in (
        "no_exit",
        "graded_self_injective",
        "graded_regular",
        "graded_sigma_v",
        "graded_type_one",
        "block_count",
        "graded_prime",
    )]
    lines.append(f"central_triple: {data['central_triple']}")
    lines.append(data["note"])
    _emit(args, data, lines)
    return 0


def _block_lines(report):
    lines = []
    for k, b in enumerate(report.blocks):
        if b.kind == "sink":
            head = f"block {k}: sink {b.anchor}"
        else:
            head = f"block {k}: cycle at {b.anchor} (length {b.cycle.length})"
        lines.append(f"{head}, size {b.n}, shifts {list(b.shifts)}")
    return lines


def cmd_decompose(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    _emit(args, report.to_json(), _block_lines(report))
    return 0


def cmd_dims(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    series = dim_series_check(report, args.bound)
    lines = [
        f"n={n:+d}  algebra={a}  blocks={b}  {'ok' if a == b else 'MISMATCH'}"
        for n, a, b in series.rows
    ]
    lines.append("all equal" if series.all_equal else "MISMATCH FOUND")
    _emit(args, series.to_json(), lines)
    return 0 if series.all_equal else 3


def _corrupt(images):
    """Break one generator image deliberately, for exercising the failure
    path: add a degree-0 vertex image to the first edge image (always
    detectable: the edge image stops being homogeneous of degree 1), or
    zero out the first vertex image on an edgeless graph."""
    g = images.report.graph
    if g.edges:
        eid = g.edges[0].id
        src = g.edges[0].src
        images.edges[eid] = tuple(
            m + vm for m, vm in zip(images.edges[eid], images.vertices[src])
        )
    else:
        v = g.vertices[0]
        images.vertices[v] = images.zero()


def cmd_verify_iso(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    images = phi(report)
    if args.corrupt:
        _corrupt(images)
    result = verify_phi(images)
    data = result.to_json()
    lines = [f"checks: {data['total']}, failed: {data['failed']}"]
    for c in result.failures():
        lines.append(f"FAIL {c.relation} at {c.instance}")
    _emit(args, data, lines)
    return 0 if result.all_passed else 3


def cmd_regular_witness(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    images = phi(report)
    rng = random.Random(args.seed)
    witnesses = []
    if args.element:
        elements = [_load_element(report.algebra, args.element)]
    else:
        elements = [sample_homogeneous(report.algebra, rng) for _ in range(args.samples)]
    for a in elements:
        witnesses.append(regularity_witness_report(images, a))
    data = {"seed": args.seed, "witnesses": witnesses}
    lines = []
    for w in witnesses:
        lines.append(
            f"degree {w['degree']} element, {len(w['element'])} term(s); "
            f"inverse degree {w['inverse_degree']}; a b a = a: {w['aba_equals_a']}"
        )
    _emit(args, data, lines)
    return 0


def cmd_idempotent_report(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    images = phi(report)
    e = _load_element(report.algebra, args.element)
    rep = idempotent_report(images, e)
    data = rep.to_json()
    lines = [f"{k}: {v}" for k, v in data.items()]
    _emit(args, data, lines)
    return 0


def cmd_type_witness(args) -> int:
    g = _load_graph(args)
    report = decompose(LeavittAlgebra(g, args.field))
    images = phi(report)
    e = type_I_witness(report)
    rep = idempotent_report(images, e)
    if not (rep.is_idempotent and rep.abelian and rep.faithful):
        raise VerificationError("the canonical witness failed its own classification")
    data = {"witness": e.to_json(), "report": rep.to_json()}
    lines = [f"witness has {len(e.terms)} vertex term(s)"]
    lines.extend(f"{k}: {v}" for k, v in rep.to_json().items())
    _emit(args, data, lines)
    return 0


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Leavitt path algebras of finite graphs: graded structure, "
        "matrix block decompositions, regularity witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, element=False, element_required=False):
        p.add_argument("--input", required=True, help="graph JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument(
            "--field",
            type=_field_arg,
            default=Rationals(),
            help="coefficients: q (exact rationals, default) or fp:P",
        )
        if element:
            p.add_argument(
                "--element",
                required=element_required,
                help="element JSON file (array of {p, p_base, q, q_base, coeff})",
            )

    p = sub.add_parser("classify", help="graded structure flags of the algebra")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="the graded matrix block decomposition")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dims", help="graded dimension series, algebra vs blocks")
    common(p)
    p.add_argument("--bound", type=int, default=10, help="degree bound (default 10)")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("verify-iso", help="replay every relation on the block images")
    common(p)
    p.add_argument(
        "--corrupt",
        action="store_true",
        help="deliberately break one image first (self-test of the failure path)",
    )
    p.set_defaults(func=cmd_verify_iso)

    p = sub.add_parser("regular-witness", help="inner inverse transcripts a b a = a")
    common(p, element=True)
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    p.add_argument("--samples", type=int, default=1, help="sample count (default 1)")
    p.set_defaults(func=cmd_regular_witness)

    p = sub.add_parser("idempotent-report", help="classify an idempotent element")
    common(p, element=True, element_required=True)
    p.set_defaults(func=cmd_idempotent_report)

    p = sub.add_parser("type-witness", help="the canonical faithful abelian idempotent")
    common(p)
    p.set_defaults(func=cmd_type_witness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, json.JSONDecodeError, OSError) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 1
    except (ExitConditionError, InfiniteEnumerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, NotRegularError) as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
