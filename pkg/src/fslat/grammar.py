"""Rule language: constants, classes, implication rules and reject rules.

Concrete syntax (one statement per `;`, `#` starts a comment):

    Name = pattern ;              constant definition
    Name := sym sym ... ;         class definition (a set of symbols)
    Target => L _ R , L _ R ;     implication rule
    ! pattern ;                   reject rule

Pattern operators: juxtaposition concatenates, `|` is union, postfix `*`
is Kleene star, `(...)` groups, `[...]` is option, `..` is the
within-clause gap, `...` the anywhere gap, and `_` marks the target
position inside a rule context.

An implication rule accepts a string w iff for every factorization
w = u x v with x in the target's language there is some context i with
u in S*.L(left_i) and v in L(right_i).S*.  A reject rule accepts w iff
it contains no occurrence of its pattern at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .automata import (
    Alt,
    ClassRef,
    Dfa,
    EPSILON,
    Lit,
    OneOf,
    Opt,
    Pat,
    PatternError,
    Seq,
    Star,
    Syms,
    complement,
    determinize,
    erase_symbol,
    from_pattern,
    intersect,
    is_empty,
    minimize,
    nullable,
    resolve_pattern,
)
from . import automata


class GrammarError(Exception):
    def __init__(self, message, line=None, col=None):
        where = ""
        if line is not None:
            where = f" (line {line})" if col is None else f" (line {line}, column {col})"
        super().__init__(message + where)
        self.line = line
        self.col = col


class GrammarParseError(GrammarError):
    pass


class GrammarCompileError(GrammarError):
    pass


#: Default clause-breaking symbols excluded by the within-clause gap `..`.
#: A grammar can override this set by defining a class named CLB.
DEFAULT_CLB = ("@/", "@<", "@>", "@@")


@dataclass(frozen=True)
class ConstRef(Pat):
    name: str
    line: int = None
    col: int = None


@dataclass(frozen=True)
class Gap(Pat):
    """`..` (within_clause=True) or `...` (within_clause=False)."""

    within_clause: bool


@dataclass(frozen=True)
class ImplicationRule:
    name: str
    target: Pat
    contexts: tuple  # of (left, right) pattern pairs
    line: int = None


@dataclass(frozen=True)
class RejectRule:
    name: str
    pattern: Pat
    line: int = None


@dataclass(frozen=True)
class Grammar:
    constants: dict
    classes: dict  # name -> tuple of symbol texts
    rules: tuple

    @property
    def clb_texts(self):
        return tuple(self.classes.get("CLB", DEFAULT_CLB))


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_PUNCT = {
    "(": "LPAR",
    ")": "RPAR",
    "[": "LBRK",
    "]": "RBRK",
    "|": "PIPE",
    "*": "STAR",
    ",": "COMMA",
    ";": "SEMI",
    "_": "HOLE",
    "!": "BANG",
}

_IDENT_STOP = set(" \t\r\n#()[];,|*_.=:")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(text):
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)

    def advance(k):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("...", i):
            tokens.append(Token("ANYGAP", "...", line, col))
            advance(3)
            continue
        if text.startswith("..", i):
            tokens.append(Token("GAP", "..", line, col))
            advance(2)
            continue
        if text.startswith(":=", i):
            tokens.append(Token("CLASSDEF", ":=", line, col))
            advance(2)
            continue
        if text.startswith("=>", i):
            tokens.append(Token("ARROW", "=>", line, col))
            advance(2)
            continue
        if ch == "=":
            tokens.append(Token("EQUALS", "=", line, col))
            advance(1)
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            advance(1)
            continue
        if ch == "<":
            j = i + 1
            while j < n and text[j] not in "<>\n":
                j += 1
            if j >= n or text[j] != ">":
                raise GrammarParseError("unterminated angle-bracket symbol", line, col)
            word = text[i : j + 1]
            tokens.append(Token("NAME", word, line, col))
            advance(j + 1 - i)
            continue
        # identifiers may contain '<' and '>' as long as they do not start
        # with '<' (that form is reserved for word symbols and markers)
        j = i
        while j < n and text[j] not in _IDENT_STOP:
            j += 1
        if j == i:
            raise GrammarParseError(f"unexpected character {ch!r}", line, col)
        tokens.append(Token("NAME", text[i:j], line, col))
        advance(j - i)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok.kind != kind:
            raise GrammarParseError(
                f"expected {kind}, found {tok.text!r}", tok.line, tok.col
            )
        return tok

    def at(self, kind):
        return self.peek().kind == kind

    # pattern := alt ; alt := seq { '|' seq } ; seq := { postfix } ;
    # postfix := atom { '*' } ; atom := NAME | '(' alt ')' | '[' alt ']' | gap
    _ATOM_STARTS = ("NAME", "LPAR", "LBRK", "GAP", "ANYGAP")

    def parse_alt(self, allow_hole=False):
        parts = [self.parse_seq(allow_hole)]
        while self.at("PIPE"):
            self.next()
            parts.append(self.parse_seq(allow_hole))
        if len(parts) == 1:
            return parts[0]
        return Alt(tuple(parts))

    def parse_seq(self, allow_hole=False):
        parts = []
        while True:
            kind = self.peek().kind
            if kind in self._ATOM_STARTS or (allow_hole and kind == "HOLE"):
                parts.append(self.parse_postfix(allow_hole))
            else:
                break
        if len(parts) == 1:
            return parts[0]
        return Seq(tuple(parts))

    def parse_postfix(self, allow_hole=False):
        atom = self.parse_atom(allow_hole)
        while self.at("STAR"):
            tok = self.next()
            if isinstance(atom, _HoleMark):
                raise GrammarParseError("'_' cannot be starred", tok.line, tok.col)
            atom = Star(atom)
        return atom

    def parse_atom(self, allow_hole=False):
        tok = self.next()
        if tok.kind == "NAME":
            return _NameRef(tok.text, tok.line, tok.col)
        if tok.kind == "GAP":
            return Gap(within_clause=True)
        if tok.kind == "ANYGAP":
            return Gap(within_clause=False)
        if tok.kind == "LPAR":
            inner = self.parse_alt(allow_hole=False)
            self.expect("RPAR")
            return inner
        if tok.kind == "LBRK":
            inner = self.parse_alt(allow_hole=False)
            self.expect("RBRK")
            return Opt(inner)
        if tok.kind == "HOLE":
            if not allow_hole:
                raise GrammarParseError(
                    "'_' is only legal at the top level of a rule context",
                    tok.line,
                    tok.col,
                )
            return _HoleMark(tok.line, tok.col)
        raise GrammarParseError(f"unexpected {tok.text!r} in pattern", tok.line, tok.col)

    def parse_context(self):
        """A context is a top-level sequence with exactly one `_`."""
        first = self.peek()
        items = []
        while True:
            kind = self.peek().kind
            if kind in self._ATOM_STARTS or kind == "HOLE":
                items.append(self.parse_postfix(allow_hole=True))
            else:
                break
        holes = [i for i, item in enumerate(items) if isinstance(item, _HoleMark)]
        if len(holes) != 1:
            raise GrammarParseError(
                "each rule context needs exactly one '_'", first.line, first.col
            )
        k = holes[0]
        left = _as_seq(items[:k])
        right = _as_seq(items[k + 1 :])
        return left, right


@dataclass(frozen=True)
class _NameRef(Pat):
    """A bare name: constant, class, or symbol; decided during expansion
    and final resolution against the alphabet."""

    name: str
    line: int = None
    col: int = None


@dataclass(frozen=True)
class _HoleMark:
    line: int
    col: int


def _as_seq(items):
    if not items:
        return EPSILON
    if len(items) == 1:
        return items[0]
    return Seq(tuple(items))


def _source_slice(text, start_tok, end_tok):
    lines = text.split("\n")

    def offset(tok):
        return sum(len(l) + 1 for l in lines[: tok.line - 1]) + tok.col - 1

    return " ".join(text[offset(start_tok) : offset(end_tok)].split())


def parse_grammar(text):
    """Parse grammar source into constants, classes and rules."""
    tokens = _lex(text)
    parser = _Parser(tokens)
    constants = {}
    classes = {}
    rules = []
    names_seen = {}

    def unique(name):
        count = names_seen.get(name, 0)
        names_seen[name] = count + 1
        return name if count == 0 else f"{name}#{count + 1}"

    while not parser.at("EOF"):
        tok = parser.peek()
        if tok.kind == "BANG":
            parser.next()
            start = parser.peek()
            pattern = parser.parse_alt()
            end = parser.peek()
            parser.expect("SEMI")
            name = unique("! " + _source_slice(text, start, end))
            rules.append(RejectRule(name, pattern, line=tok.line))
            continue
        if tok.kind == "NAME" and parser.peek(1).kind == "EQUALS":
            name_tok = parser.next()
            parser.next()
            pattern = parser.parse_alt()
            parser.expect("SEMI")
            if name_tok.text in constants or name_tok.text in classes:
                raise GrammarParseError(
                    f"duplicate definition of {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            constants[name_tok.text] = pattern
            continue
        if tok.kind == "NAME" and parser.peek(1).kind == "CLASSDEF":
            name_tok = parser.next()
            parser.next()
            members = []
            while parser.at("NAME"):
                members.append(parser.next().text)
            parser.expect("SEMI")
            if not members:
                raise GrammarParseError(
                    "a class needs at least one member symbol",
                    name_tok.line,
                    name_tok.col,
                )
            if name_tok.text in constants or name_tok.text in classes:
                raise GrammarParseError(
                    f"duplicate definition of {name_tok.text!r}",
                    name_tok.line,
                    name_tok.col,
                )
            classes[name_tok.text] = tuple(members)
            continue
        # implication rule: pattern '=>' contexts ';'
        start = parser.peek()
        target = parser.parse_alt()
        end = parser.peek()
        if not parser.at("ARROW"):
            raise GrammarParseError(
                f"expected '=>', found {parser.peek().text!r}",
                parser.peek().line,
                parser.peek().col,
            )
        parser.next()
        contexts = [parser.parse_context()]
        while parser.at("COMMA"):
            parser.next()
            contexts.append(parser.parse_context())
        parser.expect("SEMI")
        name = unique(_source_slice(text, start, end))
        rules.append(
            ImplicationRule(name, target, tuple(contexts), line=start.line)
        )

    if not rules and not constants and not classes:
        raise GrammarParseError("empty grammar", 1, 1)
    return Grammar(constants, classes, tuple(rules))


# ---------------------------------------------------------------------------
# Constant and class expansion
# ---------------------------------------------------------------------------


def expand_constants(grammar):
    """Inline every constant and grammar-level class reference in every
    rule.  The result's rules contain only literal names, resolved symbol
    sets and gaps.  Cyclic constants are an error."""

    cache = {}

    def expand(pat, stack):
        if isinstance(pat, _NameRef):
            name = pat.name
            if name in grammar.constants:
                if name in stack:
                    cycle = " -> ".join(list(stack) + [name])
                    raise GrammarCompileError(
                        f"cyclic constant definition: {cycle}", pat.line, pat.col
                    )
                if name not in cache:
                    cache[name] = expand(grammar.constants[name], stack + (name,))
                return cache[name]
            if name in grammar.classes:
                return OneOf(frozenset(grammar.classes[name]))
            return pat
        if isinstance(pat, Seq):
            return Seq(tuple(expand(p, stack) for p in pat.parts))
        if isinstance(pat, Alt):
            return Alt(tuple(expand(p, stack) for p in pat.parts))
        if isinstance(pat, Star):
            return Star(expand(pat.inner, stack))
        if isinstance(pat, Opt):
            return Opt(expand(pat.inner, stack))
        return pat

    rules = []
    for rule in grammar.rules:
        if isinstance(rule, RejectRule):
            rules.append(replace(rule, pattern=expand(rule.pattern, ())))
        else:
            rules.append(
                replace(
                    rule,
                    target=expand(rule.target, ()),
                    contexts=tuple(
                        (expand(l, ()), expand(r, ())) for l, r in rule.contexts
                    ),
                )
            )
    return Grammar(dict(grammar.constants), dict(grammar.classes), tuple(rules))


def lower_pattern(pat, clb_texts):
    """Desugar gaps and leftover names onto kernel pattern nodes.

    `..` becomes (any symbol outside the clause-breaking set)* and `...`
    becomes (any symbol)*.  Leftover `_NameRef`s become class references
    when the alphabet defines a class of that name, else symbol literals;
    that decision is made at resolution time by trying the class first.
    """
    if isinstance(pat, Gap):
        if pat.within_clause:
            return Star(OneOf(frozenset(clb_texts), negated=True))
        return Star(OneOf(frozenset(), negated=True))
    if isinstance(pat, _NameRef):
        return _LateName(pat.name, pat.line, pat.col)
    if isinstance(pat, Seq):
        return Seq(tuple(lower_pattern(p, clb_texts) for p in pat.parts))
    if isinstance(pat, Alt):
        return Alt(tuple(lower_pattern(p, clb_texts) for p in pat.parts))
    if isinstance(pat, Star):
        return Star(lower_pattern(pat.inner, clb_texts))
    if isinstance(pat, Opt):
        return Opt(lower_pattern(pat.inner, clb_texts))
    return pat


@dataclass(frozen=True)
class _LateName(Pat):
    """Resolved against the alphabet: a class if one is defined under this
    name, otherwise a plain symbol."""

    name: str
    line: int = None
    col: int = None


def _resolve(pat, alphabet):
    if isinstance(pat, _LateName):
        if pat.name in alphabet.classes:
            return Syms(alphabet.class_of(pat.name))
        if pat.name in alphabet:
            return Syms(frozenset((alphabet.id_of(pat.name),)))
        raise PatternError(f"unknown symbol or class {pat.name!r}", pat.line, pat.col)
    if isinstance(pat, (Lit, ClassRef, OneOf, Syms)):
        return resolve_pattern(pat, alphabet)
    if isinstance(pat, Seq):
        return Seq(tuple(_resolve(p, alphabet) for p in pat.parts))
    if isinstance(pat, Alt):
        return Alt(tuple(_resolve(p, alphabet) for p in pat.parts))
    if isinstance(pat, Star):
        return Star(_resolve(pat.inner, alphabet))
    if isinstance(pat, Opt):
        return Opt(_resolve(pat.inner, alphabet))
    raise TypeError(f"not a lowered pattern: {pat!r}")


def resolve_rule(rule, alphabet, clb_texts=DEFAULT_CLB):
    """Lower gaps and resolve every atom of a constant-free rule to symbol
    id sets over `alphabet`."""
    if isinstance(rule, RejectRule):
        return replace(rule, pattern=_resolve(lower_pattern(rule.pattern, clb_texts), alphabet))
    return replace(
        rule,
        target=_resolve(lower_pattern(rule.target, clb_texts), alphabet),
        contexts=tuple(
            (
                _resolve(lower_pattern(l, clb_texts), alphabet),
                _resolve(lower_pattern(r, clb_texts), alphabet),
            )
            for l, r in rule.contexts
        ),
    )


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompiledRule:
    name: str
    automaton: Dfa


_MARK = "\x00mark"


def compile_rule(rule, alphabet, clb_texts=DEFAULT_CLB):
    """Compile one constant-free rule to a DFA accepting exactly the
    non-violating strings over `alphabet`.

    Implication rules use a marker construction: violating strings are
    those factorizable as u x v with x in the target and no context
    licensing (u, v); both occurrence ends are marked with a scratch
    symbol, the licensed markings are subtracted, and the markers are
    erased again.  Reject rules compile directly to the complement of
    sigma* pattern sigma*.
    """
    resolved = resolve_rule(rule, alphabet, clb_texts)

    if isinstance(resolved, RejectRule):
        occurs = Seq((_any_star(alphabet), resolved.pattern, _any_star(alphabet)))
        dfa = complement(determinize(from_pattern(occurs, alphabet)), alphabet)
        return CompiledRule(rule.name, minimize(dfa))

    target = resolved.target
    if nullable(target):
        raise GrammarCompileError(
            f"rule {rule.name!r}: target accepts the empty string, "
            "occurrence positions would be ill-defined",
            rule.line,
        )
    target_dfa = determinize(from_pattern(target, alphabet))
    if is_empty(target_dfa):
        raise GrammarCompileError(
            f"rule {rule.name!r}: target denotes the empty language", rule.line
        )

    scratch = Alphabet_copy_with(alphabet, _MARK)
    mark = scratch.id_of(_MARK)
    base_star = Star(OneOf(frozenset((_MARK,)), negated=True))  # marker-free sigma*
    mark_lit = Syms(frozenset((mark,)))

    marked_occurrence = Seq((base_star, mark_lit, target, mark_lit, base_star))
    bad = determinize(from_pattern(marked_occurrence, scratch))
    for left, right in resolved.contexts:
        licensed = Seq((base_star, left, mark_lit, base_star, mark_lit, right, base_star))
        licensed_dfa = determinize(from_pattern(licensed, scratch))
        bad = intersect(bad, complement(licensed_dfa, scratch))
        if is_empty(bad):
            break
    violating = determinize(erase_symbol(bad, mark))
    violating = Dfa(alphabet, violating.transitions, violating.finals)
    dfa = complement(violating, alphabet)
    return CompiledRule(rule.name, minimize(dfa))


def Alphabet_copy_with(alphabet, extra_text):
    """A scratch alphabet sharing the original's id assignment plus one
    reserved symbol; labels carry over unchanged."""
    scratch = automata.Alphabet.__new__(automata.Alphabet)
    scratch._ids = dict(alphabet._ids)
    scratch._texts = list(alphabet._texts)
    scratch.classes = dict(alphabet.classes)
    scratch.intern(extra_text)
    return scratch


def _any_star(alphabet):
    return Star(Syms(alphabet.id_set()))


def compile_grammar(grammar, alphabet):
    """Expand constants and compile every rule over `alphabet`."""
    expanded = expand_constants(grammar)
    clb = expanded.clb_texts
    return tuple(compile_rule(rule, alphabet, clb) for rule in expanded.rules)


def grammar_symbol_texts(grammar):
    """Every symbol text mentioned by a grammar's rules, classes and
    constants; used to seed the pipeline alphabet."""
    texts = set()

    def walk(pat):
        if isinstance(pat, _NameRef):
            if pat.name not in grammar.constants and pat.name not in grammar.classes:
                texts.add(pat.name)
        elif isinstance(pat, Lit):
            texts.add(pat.text)
        elif isinstance(pat, OneOf):
            texts.update(pat.texts)
        elif isinstance(pat, Seq) or isinstance(pat, Alt):
            for p in pat.parts:
                walk(p)
        elif isinstance(pat, (Star, Opt)):
            walk(pat.inner)

    for pattern in grammar.constants.values():
        walk(pattern)
    for members in grammar.classes.values():
        texts.update(members)
    for rule in grammar.rules:
        if isinstance(rule, RejectRule):
            walk(rule.pattern)
        else:
            walk(rule.target)
            for left, right in rule.contexts:
                walk(left)
                walk(right)
    texts.update(grammar.clb_texts)
    return sorted(texts)


# ---------------------------------------------------------------------------
# Brute-force oracle
#
# Evaluates the declarative rule semantics directly on a symbol string by
# scanning every factorization.  Matching is a memoized position-set walk
# over the pattern tree; no automata are involved, so this is an
# independent reference for compile_rule.
# ---------------------------------------------------------------------------


class _Matcher:
    def __init__(self, seq):
        self.seq = seq
        self.memo = {}

    def ends(self, pat, start):
        """All positions j such that seq[start:j] matches pat."""
        key = (id(pat), start)
        got = self.memo.get(key)
        if got is not None:
            return got
        self.memo[key] = frozenset()  # guards star recursion
        seq = self.seq
        if isinstance(pat, Syms):
            if start < len(seq) and seq[start] in pat.ids:
                result = frozenset((start + 1,))
            else:
                result = frozenset()
        elif isinstance(pat, Seq):
            positions = {start}
            for part in pat.parts:
                nxt = set()
                for p in positions:
                    nxt |= self.ends(part, p)
                positions = nxt
                if not positions:
                    break
            result = frozenset(positions)
        elif isinstance(pat, Alt):
            result = frozenset().union(*(self.ends(p, start) for p in pat.parts)) if pat.parts else frozenset()
        elif isinstance(pat, Star):
            positions = {start}
            frontier = {start}
            while frontier:
                nxt = set()
                for p in frontier:
                    nxt |= self.ends(pat.inner, p)
                frontier = nxt - positions
                positions |= nxt
            result = frozenset(positions)
        elif isinstance(pat, Opt):
            result = self.ends(pat.inner, start) | {start}
        else:
            raise TypeError(f"oracle needs a resolved pattern, got {pat!r}")
        self.memo[key] = result
        return result


def brute_force_accepts(rule, symbols, alphabet, clb_texts=DEFAULT_CLB):
    """Reference decision: does `symbols` survive `rule`?

    Direct evaluation of the factorization semantics; quadratic per string
    and intended for strings up to a few hundred symbols.
    """
    symbols = tuple(symbols)
    if len(symbols) > 200:
        raise ValueError("oracle bound exceeded (200 symbols)")
    resolved = resolve_rule(rule, alphabet, clb_texts)
    matcher = _Matcher(symbols)

    if isinstance(resolved, RejectRule):
        for i in range(len(symbols) + 1):
            if matcher.ends(resolved.pattern, i):
                return False
        return True

    n = len(symbols)
    for i in range(n + 1):
        for j in matcher.ends(resolved.target, i):
            licensed = False
            for left, right in resolved.contexts:
                # u = symbols[:i] must end with a match of `left`
                left_ok = any(i in matcher.ends(left, k) for k in range(i + 1))
                if not left_ok:
                    continue
                # v = symbols[j:] must start with a match of `right`
                if matcher.ends(right, j):
                    licensed = True
                    break
            if not licensed:
                return False
    return True


# ---------------------------------------------------------------------------
# Canonical form and pretty printing
# ---------------------------------------------------------------------------


def normalize_pattern(pat):
    """Canonical pattern form: source locations dropped, nested sequences
    and unions flattened, singleton wrappers removed.  Two patterns are
    structurally identical iff their normal forms are equal."""
    if isinstance(pat, _NameRef):
        return _NameRef(pat.name)
    if isinstance(pat, _LateName):
        return _LateName(pat.name)
    if isinstance(pat, Lit):
        return Lit(pat.text)
    if isinstance(pat, ClassRef):
        return ClassRef(pat.name)
    if isinstance(pat, (OneOf, Syms, Gap)):
        return pat
    if isinstance(pat, Seq):
        parts = []
        for part in map(normalize_pattern, pat.parts):
            if isinstance(part, Seq):
                parts.extend(part.parts)
            else:
                parts.append(part)
        if len(parts) == 1:
            return parts[0]
        return Seq(tuple(parts))
    if isinstance(pat, Alt):
        parts = []
        for part in map(normalize_pattern, pat.parts):
            if isinstance(part, Alt):
                parts.extend(part.parts)
            else:
                parts.append(part)
        if len(parts) == 1:
            return parts[0]
        return Alt(tuple(parts))
    if isinstance(pat, Star):
        return Star(normalize_pattern(pat.inner))
    if isinstance(pat, Opt):
        return Opt(normalize_pattern(pat.inner))
    raise TypeError(f"not a pattern: {pat!r}")


def normalize_grammar(grammar):
    """Canonical grammar form; rule names are derived from source slices
    and are replaced by positions here."""
    rules = []
    for index, rule in enumerate(grammar.rules):
        if isinstance(rule, RejectRule):
            rules.append(RejectRule(f"r{index}", normalize_pattern(rule.pattern)))
        else:
            rules.append(
                ImplicationRule(
                    f"r{index}",
                    normalize_pattern(rule.target),
                    tuple(
                        (normalize_pattern(l), normalize_pattern(r))
                        for l, r in rule.contexts
                    ),
                )
            )
    constants = {k: normalize_pattern(v) for k, v in grammar.constants.items()}
    return Grammar(constants, dict(grammar.classes), tuple(rules))


def pattern_text(pat):
    return _fmt(pat, 0)


def _fmt(pat, prec):
    # prec levels: 0 union, 1 sequence, 2 postfix/atom
    if isinstance(pat, _NameRef) or isinstance(pat, _LateName):
        return pat.name
    if isinstance(pat, Lit):
        return pat.text
    if isinstance(pat, ClassRef):
        return pat.name
    if isinstance(pat, Gap):
        return ".." if pat.within_clause else "..."
    if isinstance(pat, OneOf):
        inner = " | ".join(sorted(pat.texts))
        return f"(^ {inner})" if pat.negated else f"( {inner} )"
    if isinstance(pat, Syms):
        return f"<syms {sorted(pat.ids)}>"
    if isinstance(pat, Seq):
        if not pat.parts:
            return "()" if prec >= 2 else ""
        body = " ".join(_fmt(p, 1) for p in pat.parts)
        return f"( {body} )" if prec >= 2 and len(pat.parts) > 1 else body
    if isinstance(pat, Alt):
        body = " | ".join(_fmt(p, 1) for p in pat.parts)
        return f"( {body} )" if prec >= 1 else body
    if isinstance(pat, Star):
        return f"{_fmt(pat.inner, 2)}*"
    if isinstance(pat, Opt):
        return f"[ {_fmt(pat.inner, 0)} ]"
    raise TypeError(f"not a pattern: {pat!r}")


def grammar_text(grammar):
    """Render a grammar back to concrete syntax; reparsing the output gives
    a structurally identical grammar."""
    lines = []
    for name, members in grammar.classes.items():
        lines.append(f"{name} := {' '.join(members)} ;")
    for name, pattern in grammar.constants.items():
        lines.append(f"{name} = {pattern_text(pattern)} ;")
    for rule in grammar.rules:
        if isinstance(rule, RejectRule):
            lines.append(f"! {pattern_text(rule.pattern)} ;")
        else:
            chunks = []
            for left, right in rule.contexts:
                lt = pattern_text(left)
                rt = pattern_text(right)
                chunks.append(f"{lt} _ {rt}".strip())
            lines.append(f"{pattern_text(rule.target)} => {' , '.join(chunks)} ;")
    return "\n".join(lines) + "\n"
