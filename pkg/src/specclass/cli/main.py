"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys
import time

from ..errors import ParseError, SpecclassError
from .commands import (
    COMMANDS,
    EXIT_ERROR,
    render_json,
    render_text,
    run_command,
)
from .dsl import Workspace, parse_workspace


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; exit code 2 is reserved for counterexamples."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-w", "--workspace", help="workspace file, or '-' for stdin")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--figure", metavar="PATH", help="also render a figure to PATH (bass, injres, verify)")

    parser = _Parser(prog="specclass", description="Spectrum-based subcategory classification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        return p

    for name, help_ in (("ass", "associated primes"), ("supp", "support as a closed set"),
                        ("filtration", "prime filtration"), ("spectral", "spectral test")):
        add(name, help_).add_argument("--module", required=True)
    p = add("torsion", "torsion decomposition for a specialization-closed set")
    p.add_argument("--module", required=True)
    p.add_argument("--set", required=True)
    p = add("bass", "Bass vanishing flags and numbers")
    p.add_argument("--module", required=True)
    p.add_argument("--prime", required=True)
    p.add_argument("--range", default="0..2", help="degrees k0..k1 (default 0..2)")
    p = add("injres", "symbolic minimal injective resolution")
    p.add_argument("--module", required=True)
    p.add_argument("--upto", type=int, default=2)
    p = add("member", "membership in a classified class")
    p.add_argument("--module", required=True)
    p.add_argument("--class", dest="class", required=True,
                   choices=("serre", "torsion", "torsionfree", "oneres", "ctilde", "psi"))
    p.add_argument("--set")
    p.add_argument("--points")
    p.add_argument("--gseq")
    p = add("verify", "run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--ring")
    p.add_argument("--bound", type=int)
    p.add_argument("--double-bound", action="store_true",
                   help="re-run a finite-universe suite at twice the bound and report whether counts change")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites (default 0)")
    assert set(sub.choices) == set(COMMANDS)
    return parser


def load_workspace(path: str | None) -> Workspace:
    if path is None:
        return Workspace()
    if path == "-":
        return parse_workspace(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read(), path)


def _figure(fig: dict, path: str) -> str:
    from .. import plotting

    if fig["kind"] == "bass":
        return plotting.bass_heatmap(fig["primes"], fig["degrees"], fig["values"], path, fig["title"])
    return plotting.family_lattice(fig["report"], path)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage error or --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "workspace", "format", "figure")}
    start = time.perf_counter()
    try:
        ws = load_workspace(args.workspace)
        report, code, fig = run_command(ws, args.command, flags)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (SpecclassError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if "seed" in flags and args.command == "verify":
        print(f"seed: {flags['seed']}", file=sys.stderr)
    print(render_json(report) if args.format == "json" else render_text(report))
    if args.figure:
        if fig is None:
            print(f"note: '{args.command}' has no figure", file=sys.stderr)
        else:
            print(f"figure: {_figure(fig, args.figure)}", file=sys.stderr)
    print(f"elapsed: {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
