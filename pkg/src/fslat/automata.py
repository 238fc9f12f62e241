"""Finite-automata kernel over an interned symbol alphabet.

Transitions carry symbol *sets*, not single symbols, so that transitions
labelled with a large symbol class stay compact even when the alphabet has
hundreds of symbols.  All automata are immutable once built and safe to
share between threads; every constructor function returns a fresh object.

A DFA's start state is always state 0 and its states are numbered in
breadth-first discovery order with per-state edges sorted by smallest
symbol id, so structurally identical inputs produce identical automata.
"""

from __future__ import annotations

from dataclasses import dataclass


class AutomataError(Exception):
    pass


class PatternError(AutomataError):
    """A pattern references a symbol or class the alphabet does not know."""

    def __init__(self, message, line=None, col=None):
        where = ""
        if line is not None:
            where = f" (line {line})" if col is None else f" (line {line}, column {col})"
        super().__init__(message + where)
        self.line = line
        self.col = col


class InfiniteLanguageError(AutomataError):
    """Path counting was asked for an automaton with a useful cycle."""


class AlphabetMismatchError(AutomataError):
    """Two automata built over different alphabets were combined."""


#: Reserved boundary symbols, always interned first (ids 0..4).
BOUNDARY_TEXTS = ("@@", "@", "@/", "@<", "@>")


@dataclass(frozen=True)
class Symbol:
    id: int
    text: str


class Alphabet:
    """Bijective interning of non-empty symbol texts to dense integer ids.

    Also holds named symbol classes (subsets of the alphabet) that patterns
    may reference by name.
    """

    def __init__(self, texts=()):
        self._ids = {}
        self._texts = []
        self.classes = {}
        for text in BOUNDARY_TEXTS:
            self.intern(text)
        for text in texts:
            self.intern(text)

    def intern(self, text):
        if not text:
            raise ValueError("symbol text must be non-empty")
        sym = self._ids.get(text)
        if sym is None:
            sym = len(self._texts)
            self._ids[text] = sym
            self._texts.append(text)
        return sym

    def id_of(self, text):
        try:
            return self._ids[text]
        except KeyError:
            raise PatternError(f"unknown symbol {text!r}") from None

    def text_of(self, sym):
        return self._texts[sym]

    def __contains__(self, text):
        return text in self._ids

    def __len__(self):
        return len(self._texts)

    def symbols(self):
        return [Symbol(i, t) for i, t in enumerate(self._texts)]

    def id_set(self):
        return frozenset(range(len(self._texts)))

    def define_class(self, name, texts):
        """Register (or redefine) a named class; members are interned."""
        members = frozenset(self.intern(t) for t in texts)
        self.classes[name] = members
        return members

    def class_of(self, name):
        try:
            return self.classes[name]
        except KeyError:
            raise PatternError(f"unknown symbol class {name!r}") from None

    def texts_of(self, ids):
        return tuple(self._texts[i] for i in ids)


# ---------------------------------------------------------------------------
# Pattern trees
#
# These are the kernel-level nodes; higher layers may define richer syntax
# and lower it onto these before construction.  Atoms either name things
# (resolved against the alphabet here, so unknown names fail with a source
# location) or carry pre-resolved symbol-id sets.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pat:
    pass


@dataclass(frozen=True)
class Lit(Pat):
    text: str
    line: int = None
    col: int = None


@dataclass(frozen=True)
class ClassRef(Pat):
    name: str
    line: int = None
    col: int = None


@dataclass(frozen=True)
class OneOf(Pat):
    """One symbol drawn from `texts`, or from its complement if negated."""

    texts: frozenset
    negated: bool = False


@dataclass(frozen=True)
class Syms(Pat):
    """One symbol drawn from an already-resolved id set."""

    ids: frozenset


@dataclass(frozen=True)
class Seq(Pat):
    parts: tuple


@dataclass(frozen=True)
class Alt(Pat):
    parts: tuple


@dataclass(frozen=True)
class Star(Pat):
    inner: Pat


@dataclass(frozen=True)
class Opt(Pat):
    inner: Pat


EPSILON = Seq(())


def nullable(pat):
    """True if the pattern's language contains the empty string."""
    if isinstance(pat, (Lit, ClassRef, OneOf, Syms)):
        return False
    if isinstance(pat, Seq):
        return all(nullable(p) for p in pat.parts)
    if isinstance(pat, Alt):
        return any(nullable(p) for p in pat.parts)
    if isinstance(pat, (Star, Opt)):
        return True
    raise TypeError(f"not a pattern: {pat!r}")


def resolve_label(pat, alphabet):
    """Resolve an atomic pattern node to a symbol-id set."""
    if isinstance(pat, Syms):
        return pat.ids
    if isinstance(pat, Lit):
        try:
            return frozenset((alphabet.id_of(pat.text),))
        except PatternError:
            raise PatternError(f"unknown symbol {pat.text!r}", pat.line, pat.col) from None
    if isinstance(pat, ClassRef):
        try:
            return alphabet.class_of(pat.name)
        except PatternError:
            raise PatternError(f"unknown symbol class {pat.name!r}", pat.line, pat.col) from None
    if isinstance(pat, OneOf):
        ids = set()
        for text in pat.texts:
            ids.add(alphabet.id_of(text))
        if pat.negated:
            return alphabet.id_set() - ids
        return frozenset(ids)
    raise TypeError(f"not an atomic pattern: {pat!r}")


def resolve_pattern(pat, alphabet):
    """Rewrite a pattern so every atom is a resolved `Syms` node."""
    if isinstance(pat, (Lit, ClassRef, OneOf, Syms)):
        return Syms(resolve_label(pat, alphabet))
    if isinstance(pat, Seq):
        return Seq(tuple(resolve_pattern(p, alphabet) for p in pat.parts))
    if isinstance(pat, Alt):
        return Alt(tuple(resolve_pattern(p, alphabet) for p in pat.parts))
    if isinstance(pat, Star):
        return Star(resolve_pattern(pat.inner, alphabet))
    if isinstance(pat, Opt):
        return Opt(resolve_pattern(pat.inner, alphabet))
    raise TypeError(f"not a pattern: {pat!r}")


# ---------------------------------------------------------------------------
# NFA
# ---------------------------------------------------------------------------


class Nfa:
    """Nondeterministic automaton; edge labels are symbol-id frozensets,
    or None for an epsilon edge."""

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.transitions = []
        self.start = 0
        self.finals = set()

    def add_state(self):
        self.transitions.append([])
        return len(self.transitions) - 1

    def add_edge(self, src, label, dst):
        self.transitions[src].append((label, dst))

    @property
    def n_states(self):
        return len(self.transitions)

    def accepts(self, syms):
        """Simulate the NFA; used by tests."""
        current = _eps_closure(self.transitions, {self.start})
        for sym in syms:
            nxt = set()
            for state in current:
                for label, dst in self.transitions[state]:
                    if label is not None and sym in label:
                        nxt.add(dst)
            current = _eps_closure(self.transitions, nxt)
            if not current:
                return False
        return bool(current & self.finals)


def _eps_closure(transitions, states):
    seen = set(states)
    stack = list(states)
    while stack:
        state = stack.pop()
        for label, dst in transitions[state]:
            if label is None and dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return frozenset(seen)


def from_pattern(pat, alphabet):
    """Thompson construction: an NFA accepting exactly the pattern's language.

    Handles symbols, named classes, explicit and negated symbol sets, plus
    concatenation, union, star and option.
    """
    nfa = Nfa(alphabet)

    def build(node):
        if isinstance(node, (Lit, ClassRef, OneOf, Syms)):
            label = resolve_label(node, alphabet)
            i, o = nfa.add_state(), nfa.add_state()
            nfa.add_edge(i, label, o)
            return i, o
        if isinstance(node, Seq):
            if not node.parts:
                i = nfa.add_state()
                return i, i
            first_in, prev_out = build(node.parts[0])
            for part in node.parts[1:]:
                i, o = build(part)
                nfa.add_edge(prev_out, None, i)
                prev_out = o
            return first_in, prev_out
        if isinstance(node, Alt):
            i, o = nfa.add_state(), nfa.add_state()
            if not node.parts:
                return i, o  # empty union: empty language
            for part in node.parts:
                pi, po = build(part)
                nfa.add_edge(i, None, pi)
                nfa.add_edge(po, None, o)
            return i, o
        if isinstance(node, Star):
            pi, po = build(node.inner)
            i = nfa.add_state()
            nfa.add_edge(i, None, pi)
            nfa.add_edge(po, None, i)
            return i, i
        if isinstance(node, Opt):
            pi, po = build(node.inner)
            i, o = nfa.add_state(), nfa.add_state()
            nfa.add_edge(i, None, pi)
            nfa.add_edge(i, None, o)
            nfa.add_edge(po, None, o)
            return i, o
        raise TypeError(f"not a pattern: {node!r}")

    start, out = build(pat)
    nfa.start = start
    nfa.finals = {out}
    return nfa


# ---------------------------------------------------------------------------
# DFA
# ---------------------------------------------------------------------------


class Dfa:
    """Deterministic automaton.  State 0 is the start state; per-state edge
    labels are pairwise disjoint symbol-id sets sorted by smallest id."""

    __slots__ = ("alphabet", "transitions", "finals", "_index")

    def __init__(self, alphabet, transitions, finals):
        self.alphabet = alphabet
        self.transitions = tuple(tuple(edges) for edges in transitions)
        self.finals = frozenset(finals)
        index = []
        for edges in self.transitions:
            table = {}
            for label, dst in edges:
                for sym in label:
                    table[sym] = dst
            index.append(table)
        self._index = tuple(index)

    @property
    def n_states(self):
        return len(self.transitions)

    @property
    def n_edges(self):
        return sum(len(edges) for edges in self.transitions)

    def step(self, state, sym):
        return self._index[state].get(sym)

    def accepts(self, syms):
        state = 0
        for sym in syms:
            state = self._index[state].get(sym)
            if state is None:
                return False
        return state in self.finals


def empty_dfa(alphabet):
    return Dfa(alphabet, ((),), frozenset())


def _partition(labels):
    """Partition the symbols occurring in `labels` into blocks such that
    every label is a disjoint union of blocks.  Returns (blocks,
    label_to_block_ids)."""
    membership = {}
    for i, label in enumerate(labels):
        for sym in label:
            membership.setdefault(sym, []).append(i)
    groups = {}
    for sym in sorted(membership):
        groups.setdefault(tuple(membership[sym]), []).append(sym)
    blocks = [frozenset(g) for g in groups.values()]
    blocks.sort(key=min)
    label_blocks = {}
    for label in labels:
        label_blocks[label] = tuple(
            bi for bi, block in enumerate(blocks) if next(iter(block)) in label
        )
    return blocks, label_blocks


def determinize(nfa):
    """Subset construction; the result is deterministic, epsilon-free and
    trimmed to states reachable from the start."""
    n = nfa.n_states
    eps = [[] for _ in range(n)]
    sym_edges = [[] for _ in range(n)]
    seen_labels = {}
    for src in range(n):
        for label, dst in nfa.transitions[src]:
            if label is None:
                eps[src].append(dst)
            elif label:
                sym_edges[src].append((label, dst))
                seen_labels[label] = None
    blocks, label_blocks = _partition(list(seen_labels))

    def closure(states):
        seen = set(states)
        stack = list(states)
        while stack:
            state = stack.pop()
            for dst in eps[state]:
                if dst not in seen:
                    seen.add(dst)
                    stack.append(dst)
        return frozenset(seen)

    start = closure((nfa.start,))
    index = {start: 0}
    order = [start]
    out = []
    finals = set()
    i = 0
    while i < len(order):
        subset = order[i]
        if subset & nfa.finals:
            finals.add(i)
        moves = {}
        for state in subset:
            for label, dst in sym_edges[state]:
                for b in label_blocks[label]:
                    moves.setdefault(b, set()).add(dst)
        grouped = {}
        for b in sorted(moves):
            grouped.setdefault(closure(moves[b]), []).append(b)
        edges = []
        for target, bs in grouped.items():
            label = frozenset().union(*(blocks[b] for b in bs))
            edges.append((label, target))
        edges.sort(key=lambda e: min(e[0]))
        resolved = []
        for label, target in edges:
            j = index.get(target)
            if j is None:
                j = len(order)
                index[target] = j
                order.append(target)
            resolved.append((label, j))
        out.append(tuple(resolved))
        i += 1
    return Dfa(nfa.alphabet, out, finals)


def _reachable(dfa):
    seen = {0}
    stack = [0]
    while stack:
        state = stack.pop()
        for _, dst in dfa.transitions[state]:
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return seen


def _coreachable(dfa):
    rev = [[] for _ in range(dfa.n_states)]
    for src in range(dfa.n_states):
        for _, dst in dfa.transitions[src]:
            rev[dst].append(src)
    seen = set(dfa.finals)
    stack = list(dfa.finals)
    while stack:
        state = stack.pop()
        for src in rev[state]:
            if src not in seen:
                seen.add(src)
                stack.append(src)
    return seen


def trim(dfa):
    """Drop states that are unreachable or cannot reach a final state, and
    renumber the rest in BFS order.  The empty language canonicalizes to a
    single non-accepting start state."""
    useful = _reachable(dfa) & _coreachable(dfa)
    if 0 not in useful:
        return empty_dfa(dfa.alphabet)
    renum = {0: 0}
    order = [0]
    out = []
    i = 0
    while i < len(order):
        state = order[i]
        edges = []
        for label, dst in dfa.transitions[state]:
            if dst in useful:
                edges.append((label, dst))
        edges.sort(key=lambda e: min(e[0]))
        resolved = []
        for label, dst in edges:
            j = renum.get(dst)
            if j is None:
                j = len(order)
                renum[dst] = j
                order.append(dst)
            resolved.append((label, j))
        out.append(tuple(resolved))
        i += 1
    finals = frozenset(renum[s] for s in dfa.finals if s in useful)
    return Dfa(dfa.alphabet, out, finals)


def minimize(dfa):
    """Partition refinement (Moore) over compressed alphabet blocks; the
    result is the canonical minimal partial DFA for the language."""
    d = trim(dfa)
    if not d.finals:
        return d
    labels = {}
    for edges in d.transitions:
        for label, _ in edges:
            labels[label] = None
    blocks, label_blocks = _partition(list(labels))
    nblocks = len(blocks)
    # per-state transition over blocks; -1 encodes the implicit dead state
    table = []
    for edges in d.transitions:
        row = [-1] * nblocks
        for label, dst in edges:
            for b in label_blocks[label]:
                row[b] = dst
        table.append(row)

    cls = [1 if s in d.finals else 0 for s in range(d.n_states)]
    ncls = len(set(cls))
    while True:
        sigs = {}
        new_cls = [0] * d.n_states
        for s in range(d.n_states):
            sig = (cls[s], tuple(cls[t] if t >= 0 else -1 for t in table[s]))
            idx = sigs.get(sig)
            if idx is None:
                idx = len(sigs)
                sigs[sig] = idx
            new_cls[s] = idx
        cls = new_cls
        if len(sigs) == ncls:
            break
        ncls = len(sigs)
    ncls = len(set(cls))

    reps = {}
    for s in range(d.n_states):
        reps.setdefault(cls[s], s)
    merged = []
    for c in range(ncls):
        rep = reps[c]
        by_target = {}
        for label, dst in d.transitions[rep]:
            key = cls[dst]
            by_target[key] = by_target.get(key, frozenset()) | label
        edges = [(label, t) for t, label in by_target.items()]
        edges.sort(key=lambda e: min(e[0]))
        merged.append(tuple(edges))
    finals = frozenset(cls[s] for s in d.finals)
    out = Dfa(d.alphabet, merged, finals)
    # renumber from the merged start class
    start_cls = cls[0]
    if start_cls != 0:
        perm = list(range(len(merged)))
        perm[0], perm[start_cls] = perm[start_cls], perm[0]
        remap = {old: new for new, old in enumerate(perm)}
        re_edges = [None] * len(merged)
        for old, edges in enumerate(merged):
            re_edges[remap[old]] = tuple((label, remap[dst]) for label, dst in edges)
        out = Dfa(d.alphabet, re_edges, frozenset(remap[s] for s in finals))
    return trim(out)


def reduce_acyclic(dfa):
    """Merge suffix-equivalent states of an acyclic DFA in one reverse
    topological pass (linear in states and edges); the result is the
    minimal DFA.  Falls back to `minimize` when a useful cycle exists."""
    d = trim(dfa)
    if not d.finals:
        return d
    n = d.n_states
    indeg = [0] * n
    for edges in d.transitions:
        for _, dst in edges:
            indeg[dst] += 1
    stack = [s for s in range(n) if indeg[s] == 0]
    order = []
    while stack:
        state = stack.pop()
        order.append(state)
        for _, dst in d.transitions[state]:
            indeg[dst] -= 1
            if indeg[dst] == 0:
                stack.append(dst)
    if len(order) != n:
        return minimize(dfa)
    cls = [0] * n
    signatures = {}
    for state in reversed(order):
        by_target = {}
        for label, dst in d.transitions[state]:
            key = cls[dst]
            got = by_target.get(key)
            by_target[key] = label if got is None else got | label
        sig = (state in d.finals, frozenset(by_target.items()))
        idx = signatures.get(sig)
        if idx is None:
            idx = len(signatures)
            signatures[sig] = idx
        cls[state] = idx
    # rebuild one state per class, renumbered in BFS order from the start
    rep_edges = {}
    for state in range(n):
        c = cls[state]
        if c not in rep_edges:
            by_target = {}
            for label, dst in d.transitions[state]:
                key = cls[dst]
                got = by_target.get(key)
                by_target[key] = label if got is None else got | label
            edges = [(label, t) for t, label in by_target.items()]
            edges.sort(key=lambda e: min(e[0]))
            rep_edges[c] = edges
    final_classes = frozenset(cls[s] for s in d.finals)
    renum = {cls[0]: 0}
    order2 = [cls[0]]
    out = []
    i = 0
    while i < len(order2):
        c = order2[i]
        resolved = []
        for label, t in rep_edges[c]:
            j = renum.get(t)
            if j is None:
                j = len(order2)
                renum[t] = j
                order2.append(t)
            resolved.append((label, j))
        out.append(tuple(resolved))
        i += 1
    finals = frozenset(renum[c] for c in final_classes)
    return Dfa(d.alphabet, out, finals)


def complement(dfa, alphabet):
    """Accepts exactly alphabet* minus the input's language."""
    if alphabet is not dfa.alphabet:
        raise AlphabetMismatchError("complement must use the automaton's own alphabet")
    sigma = alphabet.id_set()
    n = dfa.n_states
    sink = n
    out = []
    need_sink = False
    for edges in dfa.transitions:
        covered = frozenset().union(*(label for label, _ in edges)) if edges else frozenset()
        rest = sigma - covered
        new_edges = list(edges)
        if rest:
            new_edges.append((rest, sink))
            need_sink = True
        new_edges.sort(key=lambda e: min(e[0]))
        out.append(tuple(new_edges))
    states = n
    if need_sink:
        out.append(((sigma, sink),))
        states += 1
    finals = frozenset(s for s in range(states) if s not in dfa.finals)
    return trim(Dfa(alphabet, out, finals))


def intersect(a, b):
    """Product construction; accepts L(a) & L(b), trimmed to useful states."""
    if a.alphabet is not b.alphabet:
        raise AlphabetMismatchError("intersect requires a shared alphabet")
    index = {(0, 0): 0}
    order = [(0, 0)]
    out = []
    finals = set()
    i = 0
    while i < len(order):
        sa, sb = order[i]
        if sa in a.finals and sb in b.finals:
            finals.add(i)
        by_target = {}
        b_edges = b.transitions[sb]
        b_index = b._index[sb]
        for label, da in a.transitions[sa]:
            if len(label) <= 8:
                buckets = {}
                for sym in label:
                    db = b_index.get(sym)
                    if db is not None:
                        buckets.setdefault(db, []).append(sym)
                for db, syms in buckets.items():
                    key = (da, db)
                    got = by_target.get(key)
                    by_target[key] = frozenset(syms) if got is None else got | frozenset(syms)
            else:
                for blabel, db in b_edges:
                    inter = label & blabel
                    if inter:
                        key = (da, db)
                        got = by_target.get(key)
                        by_target[key] = inter if got is None else got | inter
        edges = [(label, t) for t, label in by_target.items()]
        edges.sort(key=lambda e: min(e[0]))
        resolved = []
        for label, target in edges:
            j = index.get(target)
            if j is None:
                j = len(order)
                index[target] = j
                order.append(target)
            resolved.append((label, j))
        out.append(tuple(resolved))
        i += 1
    return trim(Dfa(a.alphabet, out, finals))


def is_empty(dfa):
    """True iff no accepting path exists."""
    if not dfa.finals:
        return True
    seen = {0}
    stack = [0]
    while stack:
        state = stack.pop()
        if state in dfa.finals:
            return False
        for _, dst in dfa.transitions[state]:
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return True


def count_paths(dfa):
    """Exact number of accepted strings, via one pass over a topological
    order of the useful subgraph.  Arbitrary precision; never enumerates.

    Raises InfiniteLanguageError if a cycle survives among useful states.
    """
    useful = _reachable(dfa) & _coreachable(dfa)
    if 0 not in useful:
        return 0
    indeg = {s: 0 for s in useful}
    for src in useful:
        for _, dst in dfa.transitions[src]:
            if dst in useful:
                indeg[dst] += 1
    stack = [s for s in useful if indeg[s] == 0]
    order = []
    while stack:
        state = stack.pop()
        order.append(state)
        for _, dst in dfa.transitions[state]:
            if dst in useful:
                indeg[dst] -= 1
                if indeg[dst] == 0:
                    stack.append(dst)
    if len(order) != len(useful):
        raise InfiniteLanguageError("automaton accepts an infinite language")
    ways = {}
    for state in reversed(order):
        total = 1 if state in dfa.finals else 0
        for label, dst in dfa.transitions[state]:
            if dst in useful:
                total += len(label) * ways[dst]
        ways[state] = total
    return ways[0]


def enumerate_strings(dfa, limit):
    """Up to `limit` accepted strings (tuples of symbol ids) in shortlex
    order over symbol ids.  Works for finite and infinite languages; only
    productive prefixes are visited."""
    if limit <= 0:
        return []
    d = trim(dfa)
    if not d.finals:
        return []
    expanded = []
    for edges in d.transitions:
        pairs = []
        for label, dst in edges:
            pairs.extend((sym, dst) for sym in label)
        pairs.sort()
        expanded.append(tuple(pairs))

    finals = d.finals
    counts = [[1 if s in finals else 0 for s in range(d.n_states)]]
    out = []

    def emit(state, length, prefix):
        if len(out) >= limit:
            return
        if length == 0:
            out.append(tuple(prefix))
            return
        row = counts[length - 1]
        for sym, dst in expanded[state]:
            if row[dst]:
                prefix.append(sym)
                emit(dst, length - 1, prefix)
                prefix.pop()
                if len(out) >= limit:
                    return

    length = 0
    while len(out) < limit:
        if counts[length][0]:
            emit(0, length, [])
        nxt = [0] * d.n_states
        row = counts[length]
        for s in range(d.n_states):
            total = 0
            for label, dst in d.transitions[s]:
                total += len(label) * row[dst]
            nxt[s] = total
        if not any(nxt):
            break
        counts.append(nxt)
        length += 1
    return out[:limit]


def language_equal(a, b):
    """Language equivalence via emptiness of the symmetric difference."""
    if a.alphabet is not b.alphabet:
        raise AlphabetMismatchError("language_equal requires a shared alphabet")
    alphabet = a.alphabet
    return is_empty(intersect(a, complement(b, alphabet))) and is_empty(
        intersect(b, complement(a, alphabet))
    )


def erase_symbol(dfa, sym):
    """NFA over the same alphabet accepting the input's language with every
    occurrence of `sym` deleted (the edge becomes an epsilon edge)."""
    nfa = Nfa(dfa.alphabet)
    for _ in range(dfa.n_states):
        nfa.add_state()
    for src, edges in enumerate(dfa.transitions):
        for label, dst in edges:
            if sym in label:
                nfa.add_edge(src, None, dst)
                rest = label - {sym}
                if rest:
                    nfa.add_edge(src, rest, dst)
            else:
                nfa.add_edge(src, label, dst)
    nfa.start = 0
    nfa.finals = set(dfa.finals)
    return nfa


def dump(fa):
    """Plain-text graph dump: one `src TAB symbol TAB dst` line per symbol
    transition ordered by (state id, symbol id, dst), then the final states
    under a `final:` header.  The start state is always 0.  NFA epsilon
    edges print `-` in the symbol column and sort before symbols."""
    alphabet = fa.alphabet
    rows = []
    for src, edges in enumerate(fa.transitions):
        for label, dst in edges:
            if label is None:
                rows.append((src, -1, dst, "-"))
            else:
                for sym in label:
                    rows.append((src, sym, dst, alphabet.text_of(sym)))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    lines = [f"{src}\t{text}\t{dst}" for src, _, dst, text in rows]
    lines.append("final:")
    lines.extend(str(s) for s in sorted(fa.finals))
    return "\n".join(lines) + "\n"
