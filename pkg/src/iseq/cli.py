"""Command-line front end.

Verdict subcommands (equiv, computes) exit 0 for true and 1 for false;
search exits 1 when nothing is found within the budget; errors exit 2.
All output is a pure function of the inputs.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import canonical, compute, extraction, interaction, registers, syntax, threads


class _CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror}") from exc


def _term_argument(args) -> syntax.InstructionSequenceTerm:
    texts = _expr_texts(args)
    if len(texts) != 1:
        raise _CliError("expected exactly one term (-e/--file)")
    return syntax.parse_instruction_sequence(texts[0])


def _expr_texts(args) -> list[str]:
    texts = list(args.expr or [])
    for path in args.file or []:
        texts.append(_read_text(path).strip())
    return texts


def _family_argument(args) -> registers.RegisterFamily:
    text = args.family
    if args.family_file:
        text = _read_text(args.family_file).strip()
    if text is None:
        text = "{}"
    return registers.evaluate_family(syntax.parse_register_family(text))


def _table_argument(args) -> syntax.FunctionTable:
    return syntax.parse_function_table(_read_text(args.table))


def _convention(args, table: Optional[syntax.FunctionTable] = None) -> compute.IoConvention:
    if table is not None:
        return compute.IoConvention(table.n, table.m, args.aux)
    return compute.IoConvention(args.inputs, args.outputs, args.aux)


def _add_term_options(parser, count_hint="a term"):
    parser.add_argument("-e", "--expr", action="append", metavar="TERM", help=f"{count_hint} in source syntax")
    parser.add_argument("--file", action="append", metavar="PATH", help="file containing a term")


def _add_family_options(parser):
    parser.add_argument("-f", "--family", metavar="FAMILY", help="register family, e.g. '{aux:1=0}'")
    parser.add_argument("--family-file", metavar="PATH", help="file containing a register family")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iseq",
        description="Workbench for single-pass instruction sequences over Boolean registers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a term and print its canonical rendering")
    _add_term_options(p)

    p = sub.add_parser("normalize", help="print a canonical form of a term")
    _add_term_options(p)
    p.add_argument("--form", choices=("isc", "first", "second"), default="second")

    p = sub.add_parser("extract", help="print the behaviour of a term as recursion equations")
    _add_term_options(p)

    p = sub.add_parser("equiv", help="decide an equivalence between two terms")
    _add_term_options(p, "each of the two terms")
    p.add_argument(
        "--relation",
        choices=("isc", "structural", "behavioural", "congruence", "functional"),
        required=True,
    )
    p.add_argument("--inputs", type=int, default=0, help="input registers (functional relation)")
    p.add_argument("--outputs", type=int, default=0, help="output registers (functional relation)")
    p.add_argument("--aux", type=int, default=0, help="auxiliary registers (functional relation)")

    p = sub.add_parser("family-eval", help="evaluate a register family term")
    p.add_argument("-e", "--expr", action="append", metavar="FAMILY")
    p.add_argument("--file", action="append", metavar="PATH")

    p = sub.add_parser("use", help="run a term's behaviour against a register family")
    _add_term_options(p)
    _add_family_options(p)

    p = sub.add_parser("apply", help="final register family after running a term")
    _add_term_options(p)
    _add_family_options(p)

    p = sub.add_parser("abstract", help="behaviour with internal steps concealed")
    _add_term_options(p)
    _add_family_options(p)

    p = sub.add_parser("simulate", help="step a term directly on a register family")
    _add_term_options(p)
    _add_family_options(p)
    p.add_argument("--fuel", type=int, default=1000)

    p = sub.add_parser("computes", help="check that a program computes a function table")
    _add_term_options(p)
    p.add_argument("--table", required=True, metavar="PATH")
    p.add_argument("--aux", type=int, default=0)

    p = sub.add_parser("compile-table", help="compile a function table to a core-only program")
    p.add_argument("--table", required=True, metavar="PATH")

    p = sub.add_parser("restrict-core", help="translate a program to core instructions only")
    _add_term_options(p)
    p.add_argument("--inputs", type=int, default=0)
    p.add_argument("--outputs", type=int, default=0)
    p.add_argument("--aux", type=int, default=0)

    p = sub.add_parser("search", help="shortest program computing a function table")
    p.add_argument("--table", required=True, metavar="PATH")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--aux", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="accepted for interface stability; the result never depends on it")

    return parser


def _dispatch(args, out, err) -> int:
    if args.command == "parse":
        print(syntax.render_term(_term_argument(args)), file=out)
        return 0
    if args.command == "normalize":
        canon = (
            canonical.to_second_canonical(_term_argument(args))
            if args.form == "second"
            else canonical.to_first_canonical(_term_argument(args))
        )
        print(syntax.render_term(canonical.term_of_canonical(canon)), file=out)
        return 0
    if args.command == "extract":
        print(threads.render_thread(extraction.extract(_term_argument(args))), file=out)
        return 0
    if args.command == "equiv":
        texts = _expr_texts(args)
        if len(texts) != 2:
            raise _CliError("equiv needs exactly two terms")
        t1 = syntax.parse_instruction_sequence(texts[0])
        t2 = syntax.parse_instruction_sequence(texts[1])
        if args.relation == "isc":
            verdict = canonical.instruction_sequence_congruent(t1, t2)
        elif args.relation == "structural":
            verdict = canonical.structurally_congruent(t1, t2)
        elif args.relation == "behavioural":
            verdict = extraction.behaviourally_equivalent(t1, t2)
        elif args.relation == "congruence":
            verdict = extraction.behaviourally_congruent(t1, t2)
        else:
            verdict = compute.functionally_equivalent(t1, t2, _convention(args))
        print("true" if verdict else "false", file=out)
        return 0 if verdict else 1
    if args.command == "family-eval":
        texts = _expr_texts(args)
        if len(texts) != 1:
            raise _CliError("expected exactly one family (-e/--file)")
        family = registers.evaluate_family(syntax.parse_register_family(texts[0]))
        print(registers.render_family(family), file=out)
        return 0
    if args.command == "use":
        thread = interaction.use(extraction.extract(_term_argument(args)), _family_argument(args))
        print(threads.render_thread(thread), file=out)
        return 0
    if args.command == "apply":
        family = interaction.apply(extraction.extract(_term_argument(args)), _family_argument(args))
        print(registers.render_family(family), file=out)
        return 0
    if args.command == "abstract":
        thread = extraction.extract(_term_argument(args))
        if args.family or args.family_file:
            thread = interaction.use(thread, _family_argument(args))
        print(threads.render_thread(interaction.abstract_tau(thread)), file=out)
        return 0
    if args.command == "simulate":
        outcome, family = interaction.simulate(_term_argument(args), _family_argument(args), args.fuel)
        print(f"{outcome.value} {registers.render_family(family)}", file=out)
        return 0
    if args.command == "computes":
        verdict = compute.computes_check(_term_argument(args), _table_argument(args), args.aux)
        print("true" if verdict else "false", file=out)
        return 0 if verdict else 1
    if args.command == "compile-table":
        print(syntax.render_term(compute.compile_table(_table_argument(args))), file=out)
        return 0
    if args.command == "restrict-core":
        term = compute.restrict_to_core(_term_argument(args), _convention(args))
        print(syntax.render_term(term), file=out)
        return 0
    if args.command == "search":
        table = _table_argument(args)
        result = compute.search_shortest(table, args.aux, args.max_len)
        if result is None:
            print("none", file=out)
            return 1
        print(syntax.render_term(result), file=out)
        return 0
    raise _CliError(f"unknown subcommand {args.command!r}")


_VALUE_OPTIONS = {
    "-e", "--expr", "--file", "-f", "--family", "--family-file", "--table",
    "--form", "--relation", "--fuel", "--aux", "--inputs", "--outputs",
    "--max-len", "--seed",
}


def _join_option_values(argv: Sequence[str]) -> list[str]:
    """Turn ``-e -a;!`` into ``-e=-a;!`` so terms may start with a dash."""
    joined = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv):
            joined.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            joined.append(tok)
            i += 1
    return joined


def run_command(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one invocation; returns (exit code, stdout text, stderr text)."""
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(_join_option_values(argv))
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), out.getvalue(), err.getvalue()
    try:
        code = _dispatch(args, out, err)
    except (_CliError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2, out.getvalue(), err.getvalue()
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    code, out, err = run_command(sys.argv[1:])
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    sys.exit(code)
