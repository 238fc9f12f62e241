#!/usr/bin/env python3
"""Measure how parse time scales against reading count.

Builds lattices for growing prefixes of the bundled 39-word sentence,
counts their readings exactly, applies the demo grammar and reports the
wall time per step.  The reading count grows by tens of orders of
magnitude while the time grows roughly with sentence length.
"""

import time

from fslat import data
from fslat.engine import Pipeline, apply_grammar
from fslat.grammar import parse_grammar
from fslat.lattice import default_registry, parse_syntactic_map, reading_count
from fslat.lexicon import parse_lexicon, tokenize


def main():
    registry = default_registry()
    lexicon = parse_lexicon(data.read("demo.lex"))
    smap = parse_syntactic_map(data.read("demo.map"), registry)
    grammar = parse_grammar(data.read("demo.fsg"))
    pipeline = Pipeline.build(lexicon, smap, grammar, registry)

    tokens = tokenize(data.read("stress39.txt").strip())
    print(f"{'tokens':>7}  {'readings':>55}  {'digits':>6}  {'apply ms':>9}")
    for n in range(3, len(tokens) + 1, 4):
        prefix = tokens[:n]
        lattice = pipeline.lattice_for(prefix)
        count = reading_count(lattice)
        t0 = time.perf_counter()
        survived, trace = apply_grammar(lattice, pipeline.rules)
        elapsed = (time.perf_counter() - t0) * 1000
        print(f"{n:>7}  {count:>55}  {len(str(count)):>6}  {elapsed:>9.1f}")


if __name__ == "__main__":
    main()
