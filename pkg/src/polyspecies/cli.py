"""Command-line front end: ``polyspecies <command> [options]``.

Commands::

    ptrees      polygonal 2-trees by number of vertices
    kgonal      k-gonal 2-trees (--k)
    succulents  connected graphs whose blocks are polygonal 2-trees
    solve       solve a species-equation file (or a shipped system by name)
    oracle      brute-force counts from explicit graph generation
    verify      golden tables, oracle agreement, built-ins and identities

Exit status: 0 success, 1 usage error, 2 mismatch or integrity failure.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import oracle, ptrees, specdsl, succulents
from .cis import DivergenceError, IntegrityError
from .gamma2 import S2Series, quotient_s2
from .tables import CountsTable

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

SMALL_N_NOTE = ("note: rows n <= 2 are 0 by construction (every polygon has at least 3 vertices); "
                "reference tables that list labeled 1 at n = 2 count the single edge as well.")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a command needs; built from flags by :func:`main` or directly."""

    command: str
    max_n: int = 10
    k: int | None = None
    format: str = "table"
    which: str = "both"
    oracle_compare: bool = False
    input_path: str | None = None
    polygon_action: str = "geometric"
    params: list = field(default_factory=list)
    binding: str | None = None
    equivariant: bool = False
    family: str | None = None
    quick: bool = False
    output: str | None = None
    verbose: bool = False

    def validate(self) -> None:
        if self.max_n < 0:
            raise UsageError("--max-n must be nonnegative")
        if self.command == "kgonal" and self.k is None:
            raise UsageError("kgonal needs --k")
        if self.k is not None and self.command not in ("kgonal", "oracle"):
            raise UsageError(f"--k does not apply to {self.command}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _columns(which: str) -> list[str]:
    return {"both": ["labeled", "unlabeled"], "labeled": ["labeled"], "unlabeled": ["unlabeled"]}[which]


def render(table: CountsTable, fmt: str, which: str = "both", extra: dict | None = None) -> str:
    """Render a counts table; ``extra`` maps column name -> per-row strings."""
    cols = _columns(which)
    extra = extra or {}
    rows = []
    for n, (lab, unl) in enumerate(table.rows):
        vals = {"labeled": str(lab), "unlabeled": str(unl)}
        rows.append([str(n)] + [vals[c] for c in cols] + [extra[k][n] for k in extra])
    header = ["n"] + cols + list(extra)
    if fmt == "csv":
        return "\n".join(",".join(r) for r in [header] + rows) + "\n"
    if fmt == "json":
        records = []
        for r in rows:
            rec = dict(zip(header, r))
            rec["n"] = int(rec["n"])
            records.append(rec)
        out = {"family": table.family, "rows": records}
        return json.dumps(out, indent=2) + "\n"
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in rows]
    return f"{table.family}\n" + "\n".join(lines) + "\n"


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _note(text: str, args) -> None:
    if args.format == "table" and not getattr(args, "output", None):
        sys.stdout.write(text + "\n")
    else:
        sys.stderr.write(text + "\n")


def _oracle_verdicts(table: CountsTable, family: str, k: int | None, lo: int) -> tuple[dict, bool]:
    cap = oracle.FAMILY_LIMITS[family]
    top = min(cap, table.max_n)
    rows = oracle.oracle_counts(family, top, k)
    verdict = []
    ok = True
    for n in range(table.max_n + 1):
        if n < lo or n > top:
            verdict.append("")
            continue
        match = tuple(rows[n]) == tuple(table[n])
        ok &= match
        verdict.append("ok" if match else f"MISMATCH oracle={rows[n][0]},{rows[n][1]}")
    return {"oracle": verdict}, ok


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_family(args: RunConfig) -> int:
    t0 = time.perf_counter()
    if args.command == "ptrees":
        table, family, k, lo = ptrees.polygonal_counts(args.max_n, args.polygon_action), "polygonal", None, 3
    elif args.command == "kgonal":
        if args.k < 3:
            raise UsageError("--k must be at least 3")
        table, family, k, lo = ptrees.kgonal_counts(args.k, args.max_n, args.polygon_action), "kgonal", args.k, 3
    else:
        table, family, k, lo = succulents.succulent_counts(args.max_n, args.polygon_action), "succulent", None, 1
    elapsed = time.perf_counter() - t0
    extra, ok = ({}, True)
    if args.oracle_compare:
        extra, ok = _oracle_verdicts(table, family, k, lo)
    _emit(render(table, args.format, args.which, extra), args)
    if family != "succulent" and args.max_n >= 2:
        _note(SMALL_N_NOTE, args)
    if args.verbose:
        sys.stderr.write(f"computed in {elapsed:.2f}s\n")
    if not ok:
        sys.stderr.write("oracle comparison: MISMATCH\n")
        return EXIT_MISMATCH
    if args.oracle_compare:
        sys.stderr.write("oracle comparison: all rows agree\n")
    return EXIT_OK


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--param expects NAME=INT, got {item!r}")
        try:
            params[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--param {name}: {value!r} is not an integer") from None
    return params


def cmd_solve(args: RunConfig) -> int:
    path = Path(args.input_path)
    if path.exists():
        text = path.read_text()
    elif args.input_path in specdsl.shipped_systems():
        text = specdsl.system_text(args.input_path)
    else:
        raise UsageError(f"{args.input_path!r} is neither a file nor a shipped system "
                         f"({', '.join(specdsl.shipped_systems())})")
    system = specdsl.parse(text)
    params = _parse_params(args.params)
    names = [args.binding] if args.binding else system.outputs
    result = specdsl.solve_system(system, args.max_n, equivariant=args.equivariant,
                                  params=params, outputs=names)
    chunks = []
    for name in names:
        value = result[name]
        if isinstance(value, S2Series):
            value = quotient_s2(value)
        table = CountsTable.from_series(name, value)
        chunks.append(render(table, args.format, args.which))
    _emit("".join(chunks), args)
    return EXIT_OK


def cmd_oracle(args: RunConfig) -> int:
    family = args.family
    if family == "kgonal" and args.k is None:
        raise UsageError("oracle kgonal needs --k")
    rows = oracle.oracle_counts(family, args.max_n, args.k)
    name = family if family != "kgonal" else f"{args.k}-gonal"
    table = CountsTable.from_columns(f"{name} (oracle)", [r[0] for r in rows], [r[1] for r in rows])
    _emit(render(table, args.format, args.which), args)
    return EXIT_OK


def cmd_verify(args: RunConfig) -> int:
    from . import checks

    out = io.StringIO()
    ok = True
    for result in checks.run_all(quick=args.quick):
        ok &= result.ok
        out.write(str(result) + "\n")
        if not args.output:
            sys.stdout.write(str(result) + "\n")
            sys.stdout.flush()
    if args.output:
        Path(args.output).write_text(out.getvalue())
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polyspecies",
        description="Exact enumeration of polygonal 2-trees, k-gonal 2-trees and succulents.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n\n", 1)[1],
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def output_opts(p, default_n: int):
        p.add_argument("--max-n", type=int, default=default_n, help=f"largest vertex count (default: {default_n})")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--which", choices=["both", "labeled", "unlabeled"], default="both",
                       help="count columns to print (default: both)")
        p.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")

    for name, default_n, help_text in (("ptrees", 26, "polygonal 2-trees"),
                                       ("kgonal", 20, "k-gonal 2-trees"),
                                       ("succulents", 19, "succulents")):
        p = sub.add_parser(name, help=help_text)
        output_opts(p, default_n)
        if name == "kgonal":
            p.add_argument("--k", type=int, help="polygon size (>= 3)")
        p.add_argument("--oracle-compare", action="store_true",
                       help="check small rows against brute-force generation")
        p.add_argument("--polygon-action", choices=list(ptrees.POLYGON_ACTIONS), default="geometric",
                       help="how reversal acts on the root polygon (default: geometric; "
                            "'cyclic' reflects (vertex, edge) pairs as units)")
        p.add_argument("-v", "--verbose", action="store_true", help="report timing on stderr")

    p = sub.add_parser("solve", help="solve a species-equation system")
    p.add_argument("input_path", metavar="SYSTEM", help="a .species file or the name of a shipped system")
    output_opts(p, 15)
    p.add_argument("--param", dest="params", action="append", default=[], metavar="NAME=INT", help="integer parameter, e.g. k=4")
    p.add_argument("--binding", help="binding to report (default: the system's outputs)")
    p.add_argument("--equivariant", action="store_true",
                   help="solve the top level with the orientation action (reports quotients)")

    p = sub.add_parser("oracle", help="brute-force counts")
    p.add_argument("family", choices=sorted(oracle.FAMILY_LIMITS))
    p.add_argument("--k", type=int, help="polygon size for kgonal")
    output_opts(p, 7)

    p = sub.add_parser("verify", help="run the built-in verification suite")
    p.add_argument("--quick", action="store_true", help="smaller ranges (seconds instead of minutes)")
    p.add_argument("--output", metavar="FILE", help="write the report to FILE")
    return parser


COMMANDS = {"ptrees": cmd_family, "kgonal": cmd_family, "succulents": cmd_family,
            "solve": cmd_solve, "oracle": cmd_oracle, "verify": cmd_verify}


def run(config: RunConfig) -> int:
    """Run one command and return its exit status; errors are reported on stderr."""
    try:
        config.validate()
        return COMMANDS[config.command](config)
    except UsageError as exc:
        sys.stderr.write(f"polyspecies {config.command}: error: {exc}\n")
        return EXIT_USAGE
    except (specdsl.SpecSyntaxError, specdsl.SpecError, FileNotFoundError) as exc:
        sys.stderr.write(f"polyspecies {config.command}: {exc}\n")
        return EXIT_USAGE
    except (IntegrityError, DivergenceError, AssertionError) as exc:
        sys.stderr.write(f"polyspecies {config.command}: integrity failure: {exc}\n")
        return EXIT_MISMATCH
    except ValueError as exc:
        sys.stderr.write(f"polyspecies {config.command}: error: {exc}\n")
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    known = RunConfig.__dataclass_fields__
    config = RunConfig(**{k: v for k, v in vars(args).items() if k in known})
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
