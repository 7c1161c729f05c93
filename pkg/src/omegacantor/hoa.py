"""HOA v1 interchange, restricted to what the package produces and consumes:
state-based acceptance, explicit transition labels, Büchi for nondeterministic
automata and min-even parity for deterministic ones.

Emission is canonical: fixed header order, sorted transitions, labels in
disjunctive normal form over ascending atomic propositions.  Emitting, parsing
and emitting again yields identical bytes, which downstream tooling relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import LetterPred, TrackAlphabet
from .dpa import DPA
from .errors import ParseError, PreconditionError, UnsupportedAcceptance
from .nba import NBA

_IGNORED_HEADERS = {"name", "tool", "properties"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "header", "ident", "int", "string", "punct", "marker"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--BODY--", i) or text.startswith("--END--", i):
            word = "--BODY--" if text.startswith("--BODY--", i) else "--END--"
            toks.append(_Tok("marker", word, line, col))
            i += len(word)
            col += len(word)
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise ParseError("unterminated string", line=line, col=col)
            toks.append(_Tok("string", "".join(buf), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            word = text[i:j]
            if j < n and text[j] == ":":
                toks.append(_Tok("header", word, line, col))
                j += 1
            else:
                toks.append(_Tok("ident", word, line, col))
            col += j - i
            i = j
            continue
        if c in "!&|(){}[]":
            toks.append(_Tok("punct", c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line=line, col=col)
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            raise ParseError(
                "unexpected end of input",
                line=last.line if last else 1,
                col=last.col if last else 1,
            )
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(
                f"expected {want}, found {tok.text!r}", line=tok.line, col=tok.col
            )
        return tok


# acceptance formulas as nested tuples: ("inf", i), ("fin", i),
# ("or", (...,)), ("and", (...,)), ("true",)


def _parse_acc_formula(cur: _Cursor):
    def atom():
        tok = cur.next()
        if tok.kind == "punct" and tok.text == "(":
            inner = disj()
            cur.expect("punct", ")")
            return inner
        if tok.kind == "ident" and tok.text in ("Inf", "Fin"):
            cur.expect("punct", "(")
            arg = cur.next()
            if arg.kind == "punct" and arg.text == "!":
                raise UnsupportedAcceptance("negated acceptance sets")
            if arg.kind != "int":
                raise ParseError("expected set index", line=arg.line, col=arg.col)
            cur.expect("punct", ")")
            return ("inf" if tok.text == "Inf" else "fin", int(arg.text))
        if tok.kind == "ident" and tok.text == "t":
            return ("true",)
        raise UnsupportedAcceptance(f"acceptance construct {tok.text!r}")

    def conj():
        items = [atom()]
        while True:
            tok = cur.peek()
            if tok is not None and tok.kind == "punct" and tok.text == "&":
                cur.next()
                items.append(atom())
            else:
                break
        return items[0] if len(items) == 1 else ("and", tuple(items))

    def disj():
        items = [conj()]
        while True:
            tok = cur.peek()
            if tok is not None and tok.kind == "punct" and tok.text == "|":
                cur.next()
                items.append(conj())
            else:
                break
        return items[0] if len(items) == 1 else ("or", tuple(items))

    return disj()


def parity_acceptance_text(k: int) -> str:
    """Canonical min-even parity acceptance formula over k priority sets."""
    if k < 1:
        raise PreconditionError("parity needs at least one priority set")

    def piece(i: int) -> str:
        if i == k - 1:
            return f"Inf({i})"
        if i + 1 == k - 1:
            return f"Inf({i}) | Fin({i+1})"
        inner = piece(i + 2)
        if "|" in inner:
            inner = f"({inner})"
        return f"Inf({i}) | (Fin({i+1}) & {inner})"

    return piece(0)


def _acc_ast(text: str):
    return _parse_acc_formula(_Cursor(_tokenize(text)))


def _parse_label(cur: _Cursor, width: int) -> LetterPred:
    """Parse a [..] label expression into a predicate."""
    open_tok = cur.expect("punct", "[")

    def value(tok: _Tok):
        if tok.kind == "int":
            ap = int(tok.text)
            if ap >= width:
                raise ParseError(
                    f"atomic proposition {ap} out of range", line=tok.line, col=tok.col
                )
            return ("ap", ap)
        if tok.kind == "ident" and tok.text == "t":
            return ("true",)
        if tok.kind == "ident" and tok.text == "f":
            return ("false",)
        raise ParseError(f"bad label atom {tok.text!r}", line=tok.line, col=tok.col)

    def unary():
        tok = cur.next()
        if tok.kind == "punct" and tok.text == "!":
            return ("not", unary())
        if tok.kind == "punct" and tok.text == "(":
            inner = orx()
            cur.expect("punct", ")")
            return inner
        return value(tok)

    def andx():
        items = [unary()]
        while True:
            tok = cur.peek()
            if tok is not None and tok.kind == "punct" and tok.text == "&":
                cur.next()
                items.append(unary())
            else:
                break
        return ("and", tuple(items)) if len(items) > 1 else items[0]

    def orx():
        items = [andx()]
        while True:
            tok = cur.peek()
            if tok is not None and tok.kind == "punct" and tok.text == "|":
                cur.next()
                items.append(andx())
            else:
                break
        return ("or", tuple(items)) if len(items) > 1 else items[0]

    expr = orx()
    cur.expect("punct", "]")

    def holds(node, letter: int) -> bool:
        tag = node[0]
        if tag == "ap":
            return (letter >> (width - 1 - node[1])) & 1 == 1
        if tag == "true":
            return True
        if tag == "false":
            return False
        if tag == "not":
            return not holds(node[1], letter)
        if tag == "and":
            return all(holds(c, letter) for c in node[1])
        if tag == "or":
            return any(holds(c, letter) for c in node[1])
        raise AssertionError(tag)

    sats = [letter for letter in range(1 << width) if holds(expr, letter)]
    del open_tok
    return LetterPred.of_letters(width, sats)


def _render_label(pred: LetterPred) -> str:
    if pred.is_false:
        return "f"
    if pred.mask == 0:
        return "t"
    width = pred.width
    ap_bits = [b for b in range(width - 1, -1, -1) if pred.mask >> b & 1]
    terms = []
    for pattern in sorted(pred.patterns):
        lits = []
        for b in ap_bits:
            ap = width - 1 - b
            lits.append(str(ap) if pattern >> b & 1 else f"!{ap}")
        terms.append(" & ".join(lits))
    return " | ".join(terms)


def emit_hoa(aut: NBA | DPA) -> str:
    """Canonical HOA text for a Büchi or parity automaton."""
    lines = ["HOA: v1"]
    alphabet = aut.alphabet
    names = " ".join('"%s"' % t.replace("\\", "\\\\").replace('"', '\\"') for t in alphabet.tracks)
    if isinstance(aut, NBA):
        lines.append(f"States: {aut.n_states}")
        for q in sorted(aut.initial):
            lines.append(f"Start: {q}")
        lines.append(f"AP: {alphabet.width}" + (f" {names}" if names else ""))
        lines.append("acc-name: Buchi")
        lines.append("Acceptance: 1 Inf(0)")
        lines.append("properties: trans-labels explicit-labels state-acc")
        lines.append("--BODY--")
        by_src: dict[int, list[tuple[tuple[int, ...], int]]] = {}
        for src, pred, dst in aut.transitions:
            if pred.is_false:
                continue
            letters = tuple(
                letter for letter in alphabet.letters() if pred.satisfies(letter)
            )
            by_src.setdefault(src, []).append((letters, dst))
        for q in range(aut.n_states):
            acc = " {0}" if q in aut.accepting else ""
            lines.append(f"State: {q}{acc}")
            merged: dict[int, set[int]] = {}
            for letters, dst in by_src.get(q, []):
                merged.setdefault(dst, set()).update(letters)
            rows = sorted(
                (tuple(sorted(ls)), dst) for dst, ls in merged.items() if ls
            )
            for letters, dst in rows:
                pred = LetterPred.of_letters(alphabet.width, letters)
                lines.append(f"[{_render_label(pred)}] {dst}")
    else:
        k = max(aut.priority) + 1
        lines.append(f"States: {aut.n_states}")
        lines.append(f"Start: {aut.initial}")
        lines.append(f"AP: {alphabet.width}" + (f" {names}" if names else ""))
        lines.append(f"acc-name: parity min even {k}")
        lines.append(f"Acceptance: {k} {parity_acceptance_text(k)}")
        lines.append(
            "properties: trans-labels explicit-labels state-acc deterministic"
        )
        lines.append("--BODY--")
        for q in range(aut.n_states):
            lines.append(f"State: {q} {{{aut.priority[q]}}}")
            merged: dict[int, set[int]] = {}
            for letter in range(alphabet.n_letters):
                merged.setdefault(aut.delta[q][letter], set()).add(letter)
            rows = sorted(
                (tuple(sorted(ls)), dst) for dst, ls in merged.items()
            )
            for letters, dst in rows:
                pred = LetterPred.of_letters(alphabet.width, letters)
                lines.append(f"[{_render_label(pred)}] {dst}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


def parse_hoa(text: str) -> NBA | DPA:
    """Parse the supported HOA subset.

    Büchi acceptance yields an NBA; min-even parity yields a DPA and requires
    the body to be deterministic and total.  Anything else raises
    UnsupportedAcceptance, and malformed input raises ParseError with the
    offending position.
    """
    cur = _Cursor(_tokenize(text))
    tok = cur.expect("header", "HOA")
    version = cur.next()
    if version.kind != "ident" or version.text != "v1":
        raise ParseError("unsupported HOA version", line=version.line, col=version.col)

    n_states: int | None = None
    starts: list[int] = []
    ap_names: list[str] | None = None
    acc_count: int | None = None
    acc_formula = None
    acc_name: str | None = None

    while True:
        tok = cur.peek()
        if tok is None:
            raise ParseError("missing --BODY--", line=1, col=1)
        if tok.kind == "marker":
            break
        if tok.kind != "header":
            raise ParseError(
                f"expected header, found {tok.text!r}", line=tok.line, col=tok.col
            )
        cur.next()
        name = tok.text
        if name == "States":
            n_states = int(cur.expect("int").text)
        elif name == "Start":
            starts.append(int(cur.expect("int").text))
        elif name == "AP":
            count = int(cur.expect("int").text)
            ap_names = [cur.expect("string").text for _ in range(count)]
        elif name == "Acceptance":
            acc_count = int(cur.expect("int").text)
            if acc_count == 0:
                raise UnsupportedAcceptance("acceptance with no sets")
            acc_formula = _parse_acc_formula(cur)
        elif name == "acc-name":
            parts = [cur.next().text]
            while True:
                nxt = cur.peek()
                if nxt is not None and nxt.kind in ("ident", "int"):
                    parts.append(cur.next().text)
                else:
                    break
            acc_name = " ".join(parts)
        elif name in _IGNORED_HEADERS:
            while True:
                nxt = cur.peek()
                if nxt is None or nxt.kind in ("header", "marker"):
                    break
                cur.next()
        else:
            raise ParseError(f"unsupported header {name}:", line=tok.line, col=tok.col)

    if n_states is None:
        raise ParseError("missing States header", line=tok.line, col=tok.col)
    if ap_names is None:
        raise ParseError("missing AP header", line=tok.line, col=tok.col)
    if acc_formula is None or acc_count is None:
        raise ParseError("missing Acceptance header", line=tok.line, col=tok.col)

    try:
        alphabet = TrackAlphabet(tuple(ap_names))
    except PreconditionError as exc:
        raise ParseError(str(exc), line=tok.line, col=tok.col) from exc
    width = alphabet.width

    is_buchi = acc_count == 1 and acc_formula == ("inf", 0) and acc_name in (None, "Buchi")
    is_parity = (
        acc_formula == _acc_ast(parity_acceptance_text(acc_count))
        and (acc_name is None or acc_name == f"parity min even {acc_count}")
    )
    if acc_name == f"parity min even {acc_count}":
        is_buchi = False
    if not is_buchi and not is_parity:
        raise UnsupportedAcceptance("only Buchi and min-even parity are supported")

    body = cur.expect("marker", "--BODY--")
    del body
    states_seen: set[int] = set()
    transitions: list[tuple[int, LetterPred, int]] = []
    state_sets: dict[int, list[int]] = {}
    current: int | None = None
    while True:
        tok = cur.peek()
        if tok is None:
            raise ParseError("missing --END--", line=1, col=1)
        if tok.kind == "marker":
            if tok.text != "--END--":
                raise ParseError("unexpected marker", line=tok.line, col=tok.col)
            cur.next()
            break
        if tok.kind == "header" and tok.text == "State":
            cur.next()
            idt = cur.expect("int")
            sid = int(idt.text)
            if sid in states_seen:
                raise ParseError(f"duplicate state {sid}", line=idt.line, col=idt.col)
            if not (0 <= sid < n_states):
                raise ParseError(f"state {sid} out of range", line=idt.line, col=idt.col)
            states_seen.add(sid)
            current = sid
            nxt = cur.peek()
            if nxt is not None and nxt.kind == "string":
                cur.next()
            nxt = cur.peek()
            sets: list[int] = []
            if nxt is not None and nxt.kind == "punct" and nxt.text == "{":
                cur.next()
                while True:
                    t2 = cur.next()
                    if t2.kind == "punct" and t2.text == "}":
                        break
                    if t2.kind != "int":
                        raise ParseError("expected set index", line=t2.line, col=t2.col)
                    sets.append(int(t2.text))
            state_sets[sid] = sets
            continue
        if tok.kind == "punct" and tok.text == "[":
            if current is None:
                raise ParseError("transition before any State:", line=tok.line, col=tok.col)
            pred = _parse_label(cur, width)
            dt = cur.expect("int")
            dst = int(dt.text)
            if not (0 <= dst < n_states):
                raise ParseError(f"state {dst} out of range", line=dt.line, col=dt.col)
            nxt = cur.peek()
            if nxt is not None and nxt.kind == "punct" and nxt.text == "{":
                raise ParseError(
                    "transition acceptance marks are not supported",
                    line=nxt.line,
                    col=nxt.col,
                )
            if not pred.is_false:
                transitions.append((current, pred, dst))
            continue
        raise ParseError(f"unexpected token {tok.text!r}", line=tok.line, col=tok.col)

    for q in starts:
        if not (0 <= q < n_states):
            raise ParseError(f"start state {q} out of range", line=1, col=1)

    if is_buchi:
        accepting = frozenset(q for q, sets in state_sets.items() if 0 in sets)
        for q, sets in state_sets.items():
            if any(s != 0 for s in sets):
                raise ParseError(f"state {q} uses an undeclared acceptance set")
        return NBA(alphabet, n_states, tuple(transitions), frozenset(starts), accepting)

    # parity: deterministic, total, exactly one priority per state
    if len(starts) != 1:
        raise ParseError("parity automata need exactly one Start:")
    priority = []
    for q in range(n_states):
        sets = state_sets.get(q)
        if sets is None or len(sets) != 1:
            raise ParseError(f"state {q} needs exactly one priority set")
        if not (0 <= sets[0] < acc_count):
            raise ParseError(f"state {q} uses an undeclared acceptance set")
        priority.append(sets[0])
    n_letters = alphabet.n_letters
    delta = [[-1] * n_letters for _ in range(n_states)]
    for src, pred, dst in transitions:
        for letter in range(n_letters):
            if pred.satisfies(letter):
                if delta[src][letter] != -1 and delta[src][letter] != dst:
                    raise ParseError(
                        f"state {src} is nondeterministic on letter {letter}"
                    )
                delta[src][letter] = dst
    for q in range(n_states):
        for letter in range(n_letters):
            if delta[q][letter] == -1:
                raise ParseError(f"state {q} has no transition on letter {letter}")
    return DPA(
        alphabet,
        n_states,
        tuple(tuple(row) for row in delta),
        tuple(priority),
        starts[0],
    )
