"""Command-line front end.

Subcommands: check-order, amplitudes, graph, selftest, bench.  Input is a
JSON Hamiltonian spec (see :mod:`twistamp.hamspec`); output is JSON or CSV
on stdout or --out.  Exit codes: 0 success, 1 parse/usage error, 2 no
predecessor-uniform ordering, 3 size limit exceeded, 4 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict

from . import selftest as selftest_mod
from .errors import SizeLimitError
from .hamspec import HamiltonianSpec, SpecFormatError
from .mps import AMPLITUDE_CAP, all_amplitudes, build_model, contract
from .oracle import WORD_CAP, expand_wordwise
from .pauli import anticommutation_graph, anticommutation_graph_from_weights
from .twisting import find_pu_ordering, reorder_phase

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NO_ORDERING = 2
EXIT_SIZE = 3
EXIT_SELFTEST = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); keep 2 for no-ordering
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="twistamp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_required=True):
        if spec_required:
            p.add_argument("--spec", required=True, help="path to a JSON Hamiltonian spec")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized work")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="output format (default json; bench defaults to csv)")

    p = sub.add_parser("check-order", help="search for a predecessor-uniform ordering")
    common(p)

    p = sub.add_parser("amplitudes", help="expansion amplitudes of h^k or P(h)")
    common(p)
    p.add_argument("--k", type=int, default=None, help="power of the Hamiltonian")
    p.add_argument("--poly", default=None,
                   help="comma list of polynomial coefficients, constant term first")
    p.add_argument("--query", action="append", default=None, metavar="DIGITS",
                   help="residue tuple as a digit string; repeatable")
    p.add_argument("--all", action="store_true", help="emit every amplitude")
    p.add_argument("--oracle", action="store_true",
                   help="fall back to the exponential word-wise expansion when "
                        "no predecessor-uniform ordering exists")

    p = sub.add_parser("graph", help="anticommutation graph report")
    common(p)

    p = sub.add_parser("selftest", help="run the cross-validation suites")
    common(p, spec_required=False)
    p.add_argument("--scale", choices=("small", "full"), default="small")

    p = sub.add_parser("bench", help="time amplitude sweeps")
    common(p, spec_required=False)
    p.add_argument("--m-list", default="101,202", help="comma list of generator counts")
    p.add_argument("--k-list", default="20", help="comma list of powers")
    p.add_argument("--repeats", type=int, default=20, help="timing repetitions")
    return parser


def _write(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out_path) -> None:
    _write(json.dumps(payload, indent=2) + "\n", out_path)


def _emit_csv(rows, header, out_path) -> None:
    lines = [",".join(header)]
    lines += [",".join(str(x) for x in row) for row in rows]
    _write("\n".join(lines) + "\n", out_path)


def _render_key(r, a: int) -> str:
    if a <= 10:
        return "".join(str(x) for x in r)
    return ",".join(str(x) for x in r)


def _float17(x: float) -> float:
    # round-trip decimal form at up to 17 significant digits
    return float(f"{x:.17g}")


def _cmd_check_order(args) -> int:
    spec = HamiltonianSpec.load(args.spec)
    W = spec.weight_matrix()
    pu = find_pu_ordering(W)
    payload = {"m": W.m, "a": spec.a, "found": pu is not None}
    if pu is not None:
        payload["order"] = [g + 1 for g in pu.perm]
        payload["qs"] = [[_float17(q.real), _float17(q.imag)] for q in pu.qs[1:]]
    if args.format == "csv":
        rows = [["found", str(pu is not None).lower()]]
        if pu is not None:
            rows.append(["order", " ".join(str(g + 1) for g in pu.perm)])
        _emit_csv(rows, ["key", "value"], args.out)
    else:
        _emit_json(payload, args.out)
    return EXIT_OK if pu is not None else EXIT_NO_ORDERING


def _parse_poly(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(tok) for tok in text.split(","))
    except ValueError as exc:
        raise SpecFormatError(f"bad --poly value {text!r}: {exc}") from exc


def _oracle_table(spec, W, k, poly):
    if poly is None:
        return dict(expand_wordwise(W, spec.coeffs, spec.a, k, cap=WORD_CAP).amplitudes)
    table: dict = defaultdict(complex)
    for j, aj in enumerate(poly):
        if aj == 0:
            continue
        for r, v in expand_wordwise(W, spec.coeffs, spec.a, j, cap=WORD_CAP).amplitudes.items():
            table[r] += aj * v
    return dict(table)


def _cmd_amplitudes(args) -> int:
    spec = HamiltonianSpec.load(args.spec)
    k = args.k if args.k is not None else spec.k
    poly = _parse_poly(args.poly) if args.poly is not None else spec.poly
    if (k is None) == (poly is None):
        raise SpecFormatError("give exactly one of --k or --poly (or spec k/poly)")
    if k is not None and k < 0:
        raise SpecFormatError(f"k must be >= 0, got {k}")

    if args.all:
        queries = "all"
    elif args.query:
        queries = tuple(spec.parse_query(s) for s in args.query)
    elif spec.queries is not None:
        queries = spec.queries
    else:
        queries = "all"

    W = spec.weight_matrix()
    a, m, c = spec.a, spec.m, spec.coeffs
    deg = k if poly is None else len(poly) - 1
    pu = find_pu_ordering(W)

    meta: dict = {"m": m, "a": a}
    if poly is None:
        meta["k"] = k
    else:
        meta["poly"] = [[_float17(z.real), _float17(z.imag)] for z in poly]

    if pu is None and not args.oracle:
        sys.stderr.write(
            "no predecessor-uniform ordering exists for this twisting; "
            "amplitudes have no known polynomial-cost route (re-run with "
            "--oracle for the exponential word-wise expansion)\n"
        )
        return EXIT_NO_ORDERING

    if pu is not None:
        meta["method"] = "mps"
        meta["order"] = [g + 1 for g in pu.perm]
        c_perm = tuple(c[g] for g in pu.perm)
        model = build_model(c_perm, pu.qs, a, d=deg,
                            vR=poly if poly is not None else None)
        if queries == "all":
            table = {}
            for s, val in all_amplitudes(model, cap=AMPLITUDE_CAP).items():
                r = [0] * m
                for p, g in enumerate(pu.perm):
                    r[g] = s[p]
                table[tuple(r)] = val * reorder_phase(W, pu.perm, s)
        else:
            table = {}
            for r in queries:
                s = tuple(r[g] for g in pu.perm)
                table[r] = contract(model, s) * reorder_phase(W, pu.perm, s)
    else:
        meta["method"] = "oracle"
        full = _oracle_table(spec, W, k, poly)
        if queries == "all":
            table = full
        else:
            table = {r: full.get(r, 0j) for r in queries}

    records = [
        {"r": _render_key(r, a), "re": _float17(v.real), "im": _float17(v.imag)}
        for r, v in sorted(table.items())
    ]
    if args.format == "csv":
        _emit_csv([(rec["r"], repr(rec["re"]), repr(rec["im"])) for rec in records],
                  ["r", "re", "im"], args.out)
    else:
        _emit_json({**meta, "amplitudes": records}, args.out)
    return EXIT_OK


def _cmd_graph(args) -> int:
    spec = HamiltonianSpec.load(args.spec)
    if spec.form == "pauli":
        graph = anticommutation_graph(spec.gens)
    else:
        graph = anticommutation_graph_from_weights(spec.weight_matrix())
    components = sorted(graph.components)
    payload = {
        "m": graph.m,
        "edges": [[i + 1, j + 1] for i, j in graph.edges],
        "components": [[v + 1 for v in comp] for comp in components],
        "component_sizes": sorted((len(comp) for comp in components), reverse=True),
        "c_max": graph.c_max,
    }
    if args.format == "csv":
        _emit_csv(payload["edges"], ["i", "j"], args.out)
    else:
        _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    results = selftest_mod.run(scale=args.scale, seed=args.seed)
    for res in results:
        print(res.line())
    failures = [res for res in results if not res.passed]
    print(f"{len(results) - len(failures)}/{len(results)} suites passed")
    if args.out or args.format == "json":
        payload = [
            {"suite": res.name, "passed": res.passed,
             "max_err": res.max_err, "tol": res.tol, "detail": res.detail}
            for res in results
        ]
        _emit_json(payload, args.out)
    return EXIT_OK if not failures else EXIT_SELFTEST


def _cmd_bench(args) -> int:
    try:
        m_list = [int(x) for x in args.m_list.split(",")]
        k_list = [int(x) for x in args.k_list.split(",")]
    except ValueError as exc:
        raise SpecFormatError(f"bad --m-list/--k-list: {exc}") from exc
    rows = []
    for m in m_list:
        for k in k_list:
            seconds = selftest_mod.sweep_time(m, k, repeats=args.repeats)
            rows.append((m, k, int(seconds * 1e9)))
    if args.format == "json":
        _emit_json([{"m": m, "k": k, "nanos": ns} for m, k, ns in rows], args.out)
    else:
        _emit_csv(rows, ["m", "k", "nanos"], args.out)
    return EXIT_OK


_HANDLERS = {
    "check-order": _cmd_check_order,
    "amplitudes": _cmd_amplitudes,
    "graph": _cmd_graph,
    "selftest": _cmd_selftest,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_PARSE
    try:
        return _HANDLERS[args.command](args)
    except SpecFormatError as exc:
        sys.stderr.write(f"spec error: {exc}\n")
        return EXIT_PARSE
    except SizeLimitError as exc:
        sys.stderr.write(f"size limit: {exc}\n")
        return EXIT_SIZE


if __name__ == "__main__":
    sys.exit(main())
