"""``netid`` command line.

Exit status: 0 on success (and, for ``check``, when every identity holds),
1 when some identity fails, 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import foster
from .errors import NetidError
from .generate import generate_random_graph
from .graph import perturb_edge, read_edge_list, serialize
from .markov import simulate_kstep_frequencies
from .network import equilibrium_measure, equilibrium_table, voltage, voltage_table
from .spectral import format_tsv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_tol():
    raw = os.environ.get("NETID_TOL")
    if raw is None:
        return foster.DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"NETID_TOL is not a number: {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netid", description="Resistive-network quantities and Foster-type identity checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name, help, needs_input=True, fmt="tsv"):
        p = sub.add_parser(name, help=help)
        if needs_input:
            p.add_argument("--input", "-i", required=True, help="edge-list file ('-' for stdin)")
        p.add_argument("--output", "-o", default="-", help="output path (default stdout)")
        p.add_argument("--format", choices=("tsv", "json"), default=fmt)
        return p

    p = command("check", "certify every identity", fmt="json")
    p.add_argument("--max-k", type=int, default=10, dest="kmax")
    p.add_argument("--source", default="all", help="current source vertex, or 'all'")
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-8 or $NETID_TOL)")
    p.add_argument("--inject-fault", type=int, default=None, metavar="EDGE",
                   help="scale the length of input edge EDGE in left-hand sides only")
    p.add_argument("--fault-scale", type=float, default=1.01)

    p = command("resistance", "resistance matrix, or one pair")
    p.add_argument("--pair", nargs=2, metavar=("P", "Q"))

    p = command("voltage", "voltage j_P(Q,S), or the table j_i(S,t) for a source S")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--triple", nargs=3, metavar=("P", "Q", "S"))
    group.add_argument("--source", metavar="S")

    command("laplacian", "discrete Laplacian")
    command("pinv", "Moore-Penrose pseudoinverse of the Laplacian")

    p = command("equilibrium", "equilibrium measures (rows), or one of them")
    p.add_argument("--vertex")

    p = command("kernel", "k-step transition matrix")
    p.add_argument("--k", type=int, default=1)

    p = command("walk", "Monte-Carlo k-step frequencies")
    p.add_argument("--start", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--walks", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = command("gen", "random connected simple graph as an edge list", needs_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prob", type=float, default=0.1)
    p.add_argument("--min-length", type=float, default=0.1)
    p.add_argument("--max-length", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(path):
    if path == "-":
        from .graph import parse_edge_list

        return parse_edge_list(sys.stdin.read())
    return read_edge_list(path)


def _matrix_out(args, vertices, matrix):
    if args.format == "json":
        return json.dumps({"vertices": list(vertices), "matrix": np.atleast_2d(matrix).tolist()}) + "\n"
    return format_tsv(matrix)


def _scalar_out(args, value):
    if args.format == "json":
        return json.dumps({"value": value}) + "\n"
    return f"{value:.17g}\n"


def _check(args):
    tol = args.tol if args.tol is not None else _default_tol()
    if not tol > 0:
        raise UsageError("tolerance must be positive")
    if args.kmax < 1:
        raise UsageError("--max-k must be at least 1")
    g = _load(args.input)
    lhs_graph = None
    if args.inject_fault is not None:
        lhs_graph = foster.ElectricalNetwork(perturb_edge(g, args.inject_fault, args.fault_scale))
    report = foster.full_report(g, args.source, args.kmax, tol, lhs_graph)
    if args.format == "json":
        text = report.to_json() + "\n"
    else:
        text = "".join(
            f"{c.name}\t{c.k}\t{c.s or '-'}\t{c.lhs:.17g}\t{c.rhs:.17g}\t{c.residual:.17g}\t{'pass' if c.passed else 'FAIL'}\n"
            for c in report.checks
        )
    return text, EXIT_OK if report.passed else EXIT_FAIL


def _compute(args):
    if args.command == "gen":
        g = generate_random_graph(args.n, args.prob, (args.min_length, args.max_length), args.seed)
        return serialize(g)
    net = foster.ElectricalNetwork(_load(args.input))
    if args.command == "resistance":
        if args.pair:
            return _scalar_out(args, net.resistance(*args.pair))
        return _matrix_out(args, net.vertices, net.resistance.matrix)
    if args.command == "voltage":
        if args.triple:
            return _scalar_out(args, voltage(net.pinv, *args.triple))
        return _matrix_out(args, net.vertices, voltage_table(net.pinv, args.source))
    if args.command == "laplacian":
        return _matrix_out(args, net.vertices, net.laplacian.matrix)
    if args.command == "pinv":
        return _matrix_out(args, net.vertices, net.pinv.matrix)
    if args.command == "equilibrium":
        if args.vertex is not None:
            return _matrix_out(args, net.vertices, equilibrium_measure(net.laplacian, args.vertex).values)
        return _matrix_out(args, net.vertices, equilibrium_table(net.laplacian).matrix)
    if args.command == "kernel":
        return _matrix_out(args, net.vertices, net.kernel.power(args.k))
    if args.command == "walk":
        freq = simulate_kstep_frequencies(net.kernel, args.start, args.k, args.walks, args.seed)
        if args.format == "json":
            return json.dumps(dict(zip(net.vertices, freq.tolist()))) + "\n"
        return "".join(f"{v}\t{x:.17g}\n" for v, x in zip(net.vertices, freq))
    raise UsageError(f"unknown command {args.command!r}")


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".netid-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "check":
            text, status = _check(args)
        else:
            text, status = _compute(args), EXIT_OK
        _write(args.output, text)
    except (NetidError, UsageError, OSError) as exc:
        print(f"netid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
