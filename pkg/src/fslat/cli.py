"""Command-line front end.

    fslat <command> --lexicon PATH --map PATH --grammar PATH
          [--limit N] [--format table|records] [--order as-written|selective]
          [--unknown open|closed] [--jobs N] [INPUT...]

Commands: parse, count, trace, check-grammar.  Input files (or stdin) are
tokenized, split into sentences at . ? ! and processed one sentence at a
time.  Exit codes: 0 success, 1 usage or resource error, 2 grammar error,
3 at least one sentence lost all readings.

Table output prints one row per token (surface, morphology, function tag,
clause-function tag, following boundary) separated by single TABs, with a
leading and trailing sentence-boundary row; readings that survive
under-determined are collapsed per column as `[a --or-- b]` over the first
`--limit` readings.  Records output prints one tab-separated line per
(sentence, reading, token):

    sentence reading token surface morphology ftag ctag boundary

Trace output is one `rule TAB before TAB after TAB micros` line per rule
under a `# rule...` header; timings appear only in this mode, all other
output is byte-stable across runs.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .automata import complement, is_empty
from .engine import Pipeline, apply_grammar, reading_count
from .grammar import GrammarError, parse_grammar
from .lattice import PUNCT_TAG, default_registry, parse_syntactic_map, MapError
from .lexicon import (
    LexiconError,
    SENTENCE_END,
    UnknownWordError,
    parse_lexicon,
    tokenize,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GRAMMAR = 2
EXIT_EMPTY = 3


@dataclass
class RunConfig:
    command: str
    lexicon: str = None
    map: str = None
    grammar: str = None
    inputs: tuple = ()
    limit: int = 16
    format: str = "table"
    order: str = "as-written"
    unknown: str = "open"
    jobs: int = 1


def _build_argparser():
    parser = argparse.ArgumentParser(
        prog="fslat",
        description="Reductionistic finite-state parsing over ambiguity lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("parse", "count", "trace", "check-grammar"):
        p = sub.add_parser(name)
        p.add_argument("--lexicon")
        p.add_argument("--map")
        p.add_argument("--grammar")
        p.add_argument("--limit", type=int, default=16)
        p.add_argument("--format", choices=("table", "records"), default="table")
        p.add_argument(
            "--order", choices=("as-written", "selective"), default="as-written"
        )
        p.add_argument("--unknown", choices=("open", "closed"), default="open")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("inputs", nargs="*", metavar="INPUT")
    return parser


def parse_args(argv):
    parser = _build_argparser()
    ns = parser.parse_args(argv)
    return RunConfig(
        command=ns.command,
        lexicon=ns.lexicon,
        map=ns.map,
        grammar=ns.grammar,
        inputs=tuple(ns.inputs),
        limit=ns.limit,
        format=ns.format,
        order="selective-first" if ns.order == "selective" else ns.order,
        unknown=ns.unknown,
        jobs=max(1, ns.jobs),
    )


def _read(path, err):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"fslat: cannot read {path}: {exc}", file=err)
        return None


def _load_pipeline(config, err):
    missing = [
        flag
        for flag, value in (
            ("--lexicon", config.lexicon),
            ("--map", config.map),
            ("--grammar", config.grammar),
        )
        if value is None
    ]
    if missing:
        print(
            f"fslat {config.command}: missing required {', '.join(missing)}", file=err
        )
        return None, EXIT_USAGE
    lex_text = _read(config.lexicon, err)
    map_text = _read(config.map, err)
    grammar_text = _read(config.grammar, err)
    if None in (lex_text, map_text, grammar_text):
        return None, EXIT_USAGE
    registry = default_registry()
    try:
        lexicon = parse_lexicon(lex_text, policy=config.unknown)
    except LexiconError as exc:
        print(f"fslat: lexicon error: {exc}", file=err)
        return None, EXIT_USAGE
    try:
        smap = parse_syntactic_map(map_text, registry)
    except MapError as exc:
        print(f"fslat: map error: {exc}", file=err)
        return None, EXIT_USAGE
    try:
        grammar = parse_grammar(grammar_text)
        pipeline = Pipeline.build(lexicon, smap, grammar, registry)
    except GrammarError as exc:
        print(f"fslat: grammar error: {exc}", file=err)
        return None, EXIT_GRAMMAR
    return pipeline, EXIT_OK


def iter_sentences(lines):
    """Incremental tokenization: yields one token list per sentence."""
    current = []
    for line in lines:
        for token in tokenize(line):
            current.append(token)
            if token in SENTENCE_END:
                yield current
                current = []
    if current:
        yield current


def _input_lines(config, err):
    if not config.inputs:
        yield from sys.stdin
        return
    for path in config.inputs:
        text = _read(path, err)
        if text is None:
            raise FileNotFoundError(path)
        yield from text.splitlines()


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _column_values(readings, index, field):
    values = []
    for analysis in readings:
        token = analysis.tokens[index]
        value = field(token)
        if value not in values:
            values.append(value)
    return values


def _collapse(values):
    if len(values) == 1:
        return values[0]
    return "[" + " --or-- ".join(values) + "]"


def render_table(result):
    """Collapsed per-token table for one sentence; @PUNCT prints blank."""
    lines = ["\t\t\t\t@@"]
    readings = result.readings
    n_tokens = len(readings[0].tokens)
    for index in range(n_tokens):
        surface = readings[0].tokens[index].surface
        morph = _collapse(_column_values(readings, index, lambda t: " ".join(t.morph)))
        ftag = _collapse(
            _column_values(
                readings, index, lambda t: "" if t.function_tag == PUNCT_TAG else t.function_tag
            )
        )
        ctag = _collapse(_column_values(readings, index, lambda t: t.clause_tag or ""))
        boundary = _collapse(_column_values(readings, index, lambda t: t.boundary))
        lines.append(f"{surface}\t{morph}\t{ftag}\t{ctag}\t{boundary}")
    return "\n".join(lines) + "\n"


def render_records(result, sentence_index):
    """One line per (sentence, reading, token), tab separated."""
    lines = []
    for r, analysis in enumerate(result.readings, start=1):
        for t, token in enumerate(analysis.tokens, start=1):
            lines.append(
                "\t".join(
                    (
                        str(sentence_index),
                        str(r),
                        str(t),
                        token.surface,
                        " ".join(token.morph),
                        token.function_tag,
                        token.clause_tag or "",
                        token.boundary,
                    )
                )
            )
    return "\n".join(lines) + "\n" if lines else ""


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _map_sentences(pipeline, config, sentences, worker):
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            yield from pool.map(worker, sentences)
    else:
        for sentence in sentences:
            yield worker(sentence)


def run_parse(config, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    pipeline, status = _load_pipeline(config, err)
    if pipeline is None:
        return status
    exit_code = EXIT_OK
    index = 0
    first = True

    def worker(tokens):
        return tokens, pipeline.parse_sentence(
            tokens, order=config.order, limit=config.limit
        )

    try:
        sentences = iter_sentences(_input_lines(config, err))
        for tokens, result in _map_sentences(pipeline, config, sentences, worker):
            index += 1
            if result.status == "empty":
                exit_code = EXIT_EMPTY
                names = ", ".join(result.diagnosis) or "(no single rule responsible)"
                print(
                    f"fslat: sentence {index} rejected every reading;"
                    f" implicated rules: {names}",
                    file=err,
                )
                continue
            if config.format == "table":
                if not first:
                    print(file=out)
                out.write(render_table(result))
            else:
                out.write(render_records(result, index))
            first = False
    except FileNotFoundError:
        return EXIT_USAGE
    except UnknownWordError as exc:
        print(f"fslat: {exc}", file=err)
        return EXIT_USAGE
    return exit_code


def run_count(config, out=None, err=None):
    """Per sentence: readings with morphology only, with four-way
    boundaries, with candidate tags, and after the grammar; full decimal."""
    out = out or sys.stdout
    err = err or sys.stderr
    pipeline, status = _load_pipeline(config, err)
    if pipeline is None:
        return status
    exit_code = EXIT_OK
    print("# sentence\tmorph\t+boundaries\t+syntax\tafter-grammar", file=out)

    def worker(tokens):
        lattice = pipeline.lattice_for(tokens)
        morph = 1
        for readings, _ in lattice.per_token_ambiguity:
            morph *= readings
        with_boundaries = morph * 4 ** lattice.boundary_slots
        with_syntax = reading_count(lattice)
        survived, _ = apply_grammar(lattice, pipeline.rules, order=config.order)
        return morph, with_boundaries, with_syntax, reading_count(survived)

    index = 0
    try:
        sentences = iter_sentences(_input_lines(config, err))
        for morph, with_b, with_s, after in _map_sentences(
            pipeline, config, sentences, worker
        ):
            index += 1
            print(f"{index}\t{morph}\t{with_b}\t{with_s}\t{after}", file=out)
            if after == 0:
                exit_code = EXIT_EMPTY
    except FileNotFoundError:
        return EXIT_USAGE
    except UnknownWordError as exc:
        print(f"fslat: {exc}", file=err)
        return EXIT_USAGE
    return exit_code


def run_trace(config, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    pipeline, status = _load_pipeline(config, err)
    if pipeline is None:
        return status
    exit_code = EXIT_OK

    def worker(tokens):
        lattice = pipeline.lattice_for(tokens)
        _, trace = apply_grammar(lattice, pipeline.rules, order=config.order)
        return tokens, trace

    index = 0
    try:
        sentences = iter_sentences(_input_lines(config, err))
        for tokens, trace in _map_sentences(pipeline, config, sentences, worker):
            index += 1
            print(f"# sentence {index}: {' '.join(tokens)}", file=out)
            for line in trace.lines(header=True):
                print(line, file=out)
            print(f"# final\t{trace.final}", file=out)
            if trace.final == 0:
                exit_code = EXIT_EMPTY
    except FileNotFoundError:
        return EXIT_USAGE
    except UnknownWordError as exc:
        print(f"fslat: {exc}", file=err)
        return EXIT_USAGE
    return exit_code


def run_check_grammar(config, out=None, err=None):
    """Parse, expand and compile every rule; report sizes, vacuous rules
    (language = sigma*) and unsatisfiable rules (language = empty)."""
    out = out or sys.stdout
    err = err or sys.stderr
    if config.grammar is None:
        print("fslat check-grammar: missing required --grammar", file=err)
        return EXIT_USAGE
    text = _read(config.grammar, err)
    if text is None:
        return EXIT_USAGE
    registry = default_registry()
    lexicon = None
    if config.lexicon:
        lex_text = _read(config.lexicon, err)
        if lex_text is None:
            return EXIT_USAGE
        try:
            lexicon = parse_lexicon(lex_text)
        except LexiconError as exc:
            print(f"fslat: lexicon error: {exc}", file=err)
            return EXIT_USAGE
    try:
        grammar = parse_grammar(text)
        pipeline = Pipeline.build(
            lexicon or _EMPTY_LEXICON, None, grammar, registry
        )
    except GrammarError as exc:
        print(f"fslat: grammar error: {exc}", file=err)
        return EXIT_GRAMMAR
    alphabet = pipeline.alphabet
    print(f"rules: {len(pipeline.rules)}", file=out)
    flagged = 0
    for rule in pipeline.rules:
        dfa = rule.automaton
        notes = []
        if is_empty(dfa):
            notes.append("UNSATISFIABLE")
        elif is_empty(complement(dfa, alphabet)):
            notes.append("VACUOUS")
        flagged += bool(notes)
        suffix = "\t" + ",".join(notes) if notes else ""
        print(f"{rule.name}\t{dfa.n_states} states\t{dfa.n_edges} edges{suffix}", file=out)
    print(f"flagged: {flagged}", file=out)
    return EXIT_OK


class _EmptyLexicon:
    entries = {}
    policy = "open"


_EMPTY_LEXICON = _EmptyLexicon()


def main(argv=None):
    try:
        config = parse_args(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handler = {
        "parse": run_parse,
        "count": run_count,
        "trace": run_trace,
        "check-grammar": run_check_grammar,
    }[config.command]
    return handler(config)


if __name__ == "__main__":
    sys.exit(main())
