"""Formulas of monadic second-order logic over (positions, successor, sets).

Surface syntax, ASCII:

    formula := "ex1"|"all1" ident "." formula
             | "ex2"|"all2" IDENT "." formula
             | formula ("and"|"or"|"->"|"<->") formula
             | "not" formula | "(" formula ")" | atom
    atom    := ident "=" ident | ident "<" ident | "s(" ident ")" "=" ident
             | ident "in" setterm | setterm "sub" setterm | setterm "=" setterm
             | "first(" ident ")"
             | "dsum(" rationals ";" setterms ")" ("="|"<"|">") rational
               ["at" ident]
    setterm := IDENT | "up(" bits ";" bits ")"

Lowercase identifiers are first-order (positions), uppercase are second-order
(sets).  Precedence: not, and, or, ->, <-> from tightest to loosest; the
arrows associate to the right, and/or to the left; a quantifier's body
extends as far right as possible.  first_in(T) and s_in(T at s(x)) are sugar
and desugar during parsing.  Positions are 0-based.  A dsum atom without an
"at" clause asserts its relation at every position.

Pretty-printing inverts parsing exactly on ASTs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError, SortError
from .upset import canonical_up

_RESERVED = {
    "ex1", "all1", "ex2", "all2", "not", "and", "or", "in", "sub", "at",
    "first", "first_in", "s_in", "dsum", "up", "s",
}


@dataclass(frozen=True)
class LogicSet:
    """Ultimately periodic subset of positions, 0-based."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        pre, per = canonical_up(self.prefix, self.period)
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    @staticmethod
    def of(prefix: tuple[int, ...], period: tuple[int, ...]) -> "LogicSet":
        return LogicSet(tuple(prefix), tuple(period))

    @staticmethod
    def empty() -> "LogicSet":
        return LogicSet((), (0,))

    @staticmethod
    def singleton(n: int) -> "LogicSet":
        return LogicSet((0,) * n + (1,), (0,))

    def bit(self, n: int) -> int:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.period[(n - len(self.prefix)) % len(self.period)]

    def members_upto(self, n: int) -> list[int]:
        return [i for i in range(n) if self.bit(i)]

    def is_finite(self) -> bool:
        return all(b == 0 for b in self.period)

    def __str__(self) -> str:
        return "up(%s;%s)" % (
            "".join(str(b) for b in self.prefix),
            "".join(str(b) for b in self.period),
        )


@dataclass(frozen=True)
class SetVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SetConst:
    value: LogicSet

    def __str__(self) -> str:
        return str(self.value)


SetTerm = Union[SetVar, SetConst]


@dataclass(frozen=True)
class EqPos:
    x: str
    y: str


@dataclass(frozen=True)
class Lt:
    x: str
    y: str


@dataclass(frozen=True)
class Succ:
    """s(x) = y"""

    x: str
    y: str


@dataclass(frozen=True)
class First:
    x: str


@dataclass(frozen=True)
class InSet:
    x: str
    arg: SetTerm


@dataclass(frozen=True)
class Subset:
    left: SetTerm
    right: SetTerm


@dataclass(frozen=True)
class EqSet:
    left: SetTerm
    right: SetTerm


@dataclass(frozen=True)
class DigitSum:
    coeffs: tuple[Fraction, ...]
    args: tuple[SetTerm, ...]
    rel: str  # "=", "<", ">"
    rhs: Fraction
    at: str | None = None


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists1:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall1:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists2:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall2:
    var: str
    body: "Formula"


Formula = Union[
    EqPos, Lt, Succ, First, InSet, Subset, EqSet, DigitSum,
    Not, And, Or, Implies, Iff, Exists1, Forall1, Exists2, Forall2,
]

_ATOMS = (EqPos, Lt, Succ, First, InSet, Subset, EqSet, DigitSum)
_QUANTIFIERS = (Exists1, Forall1, Exists2, Forall2)


def is_first_order_name(name: str) -> bool:
    return name[:1].islower()


def free_vars(f: Formula) -> list[tuple[str, int]]:
    """Free variables with sorts (1 or 2), in first-occurrence order."""
    out: list[tuple[str, int]] = []
    seen: set[str] = set()

    def note(name: str, order: int) -> None:
        if name not in seen:
            seen.add(name)
            out.append((name, order))

    def note_set(t: SetTerm, bound: frozenset[str]) -> None:
        if isinstance(t, SetVar) and t.name not in bound:
            note(t.name, 2)

    def walk(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, (EqPos, Lt, Succ)):
            for v in (g.x, g.y):
                if v not in bound:
                    note(v, 1)
        elif isinstance(g, First):
            if g.x not in bound:
                note(g.x, 1)
        elif isinstance(g, InSet):
            if g.x not in bound:
                note(g.x, 1)
            note_set(g.arg, bound)
        elif isinstance(g, (Subset, EqSet)):
            note_set(g.left, bound)
            note_set(g.right, bound)
        elif isinstance(g, DigitSum):
            for t in g.args:
                note_set(t, bound)
            if g.at is not None and g.at not in bound:
                note(g.at, 1)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, _QUANTIFIERS):
            walk(g.body, bound | {g.var})
        else:
            raise AssertionError(type(g))

    walk(f, frozenset())
    return out


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, _ATOMS):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return False


def subst_sets(f: Formula, env: dict[str, LogicSet]) -> Formula:
    """Replace free set variables by constants, respecting shadowing."""

    def term(t: SetTerm, bound: frozenset[str]) -> SetTerm:
        if isinstance(t, SetVar) and t.name in env and t.name not in bound:
            return SetConst(env[t.name])
        return t

    def walk(g: Formula, bound: frozenset[str]) -> Formula:
        if isinstance(g, InSet):
            return InSet(g.x, term(g.arg, bound))
        if isinstance(g, Subset):
            return Subset(term(g.left, bound), term(g.right, bound))
        if isinstance(g, EqSet):
            return EqSet(term(g.left, bound), term(g.right, bound))
        if isinstance(g, DigitSum):
            return DigitSum(
                g.coeffs, tuple(term(t, bound) for t in g.args), g.rel, g.rhs, g.at
            )
        if isinstance(g, (EqPos, Lt, Succ, First)):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body, bound))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(walk(g.left, bound), walk(g.right, bound))
        if isinstance(g, _QUANTIFIERS):
            return type(g)(g.var, walk(g.body, bound | {g.var}))
        raise AssertionError(type(g))

    return walk(f, frozenset())


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class _Tok:
    kind: str  # "ident", "int", "sym"
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
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
        if text.startswith("<->", i):
            toks.append(_Tok("sym", "<->", line, col))
            i += 3
            col += 3
            continue
        if text.startswith("->", i):
            toks.append(_Tok("sym", "->", line, col))
            i += 2
            col += 2
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
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in "().;,=<>/-":
            toks.append(_Tok("sym", c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line=line, col=col)
    return toks


class _P:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0
        self.fresh = 0

    def peek(self, ahead: int = 0) -> _Tok | None:
        k = self.pos + ahead
        return self.toks[k] if k < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else None
            raise ParseError(
                "unexpected end of formula",
                line=last.line if last else 1,
                col=last.col if last else 1,
            )
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise ParseError(
                f"expected {text!r}, found {tok.text!r}", line=tok.line, col=tok.col
            )
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def fresh_var(self, avoid: set[str]) -> str:
        while True:
            name = f"w{self.fresh}" if self.fresh else "w"
            self.fresh += 1
            if name not in avoid and name not in _RESERVED:
                return name


def _ident(p: _P, *, order: int | None = None) -> str:
    tok = p.next()
    if tok.kind != "ident":
        raise ParseError(f"expected a variable, found {tok.text!r}", line=tok.line, col=tok.col)
    if tok.text in _RESERVED:
        raise ParseError(f"{tok.text!r} is reserved", line=tok.line, col=tok.col)
    if order == 1 and not is_first_order_name(tok.text):
        raise SortError(f"{tok.text!r} is second-order where a position is needed")
    if order == 2 and is_first_order_name(tok.text):
        raise SortError(f"{tok.text!r} is first-order where a set is needed")
    return tok.text


def _bits(p: _P) -> tuple[int, ...]:
    out: list[int] = []
    while True:
        tok = p.peek()
        if tok is not None and tok.kind == "int":
            p.next()
            for ch in tok.text:
                if ch not in "01":
                    raise ParseError("bits must be 0 or 1", line=tok.line, col=tok.col)
                out.append(int(ch))
        else:
            return tuple(out)


def _setterm(p: _P) -> SetTerm:
    tok = p.peek()
    if tok is None:
        raise ParseError("expected a set term", line=1, col=1)
    if tok.text == "up":
        p.next()
        p.expect("(")
        prefix = _bits(p)
        p.expect(";")
        period = _bits(p)
        p.expect(")")
        if not period:
            raise ParseError("empty period in set constant", line=tok.line, col=tok.col)
        return SetConst(LogicSet(prefix, period))
    if tok.kind == "ident" and tok.text not in _RESERVED:
        if is_first_order_name(tok.text):
            raise SortError(f"{tok.text!r} is first-order where a set is needed")
        p.next()
        return SetVar(tok.text)
    raise ParseError(f"expected a set term, found {tok.text!r}", line=tok.line, col=tok.col)


def _rational(p: _P) -> Fraction:
    neg = False
    if p.at("-"):
        p.next()
        neg = True
    tok = p.next()
    if tok.kind != "int":
        raise ParseError(f"expected a rational, found {tok.text!r}", line=tok.line, col=tok.col)
    num = int(tok.text)
    den = 1
    if p.at("/"):
        p.next()
        dtok = p.next()
        if dtok.kind != "int":
            raise ParseError("expected a denominator", line=dtok.line, col=dtok.col)
        den = int(dtok.text)
        if den == 0:
            raise ParseError("zero denominator", line=dtok.line, col=dtok.col)
    return Fraction(-num if neg else num, den)


def _atom(p: _P) -> Formula:
    tok = p.peek()
    assert tok is not None
    if tok.text == "s" and p.peek(1) is not None and p.peek(1).text == "(":
        p.next()
        p.expect("(")
        x = _ident(p, order=1)
        p.expect(")")
        op = p.next()
        if op.text == "=":
            y = _ident(p, order=1)
            return Succ(x, y)
        if op.text == "in":
            # s(x) in T  ==>  ex1 w. (s(x) = w and w in T)
            t = _setterm(p)
            avoid = {x} | ({t.name} if isinstance(t, SetVar) else set())
            w = p.fresh_var(avoid)
            return Exists1(w, And(Succ(x, w), InSet(w, t)))
        raise ParseError(
            f"expected = or in after s(..), found {op.text!r}",
            line=op.line,
            col=op.col,
        )
    if tok.text == "first":
        p.next()
        p.expect("(")
        x = _ident(p, order=1)
        p.expect(")")
        return First(x)
    if tok.text == "first_in":
        # first_in(T)  ==>  ex1 w. (first(w) and w in T)
        p.next()
        p.expect("(")
        t = _setterm(p)
        p.expect(")")
        avoid = {t.name} if isinstance(t, SetVar) else set()
        w = p.fresh_var(avoid)
        return Exists1(w, And(First(w), InSet(w, t)))
    if tok.text == "s_in":
        # s_in(T at s(x))  ==>  ex1 w. (s(x) = w and w in T)
        p.next()
        p.expect("(")
        t = _setterm(p)
        p.expect("at")
        p.expect("s")
        p.expect("(")
        x = _ident(p, order=1)
        p.expect(")")
        p.expect(")")
        avoid = {x} | ({t.name} if isinstance(t, SetVar) else set())
        w = p.fresh_var(avoid)
        return Exists1(w, And(Succ(x, w), InSet(w, t)))
    if tok.text == "dsum":
        p.next()
        p.expect("(")
        coeffs = [_rational(p)]
        while p.at(","):
            p.next()
            coeffs.append(_rational(p))
        p.expect(";")
        args = [_setterm(p)]
        while p.at(","):
            p.next()
            args.append(_setterm(p))
        p.expect(")")
        if len(coeffs) != len(args):
            raise SortError(
                f"dsum got {len(coeffs)} coefficients but {len(args)} sets"
            )
        rel_tok = p.next()
        if rel_tok.text not in ("=", "<", ">"):
            raise ParseError(
                f"expected =, < or > after dsum, found {rel_tok.text!r}",
                line=rel_tok.line,
                col=rel_tok.col,
            )
        rhs = _rational(p)
        at: str | None = None
        if p.at("at"):
            p.next()
            at = _ident(p, order=1)
        return DigitSum(tuple(coeffs), tuple(args), rel_tok.text, rhs, at)
    if tok.text == "up" or (tok.kind == "ident" and not is_first_order_name(tok.text)):
        left = _setterm(p)
        op = p.next()
        if op.text == "sub":
            return Subset(left, _setterm(p))
        if op.text == "=":
            nxt = p.peek()
            if nxt is not None and nxt.kind == "ident" and is_first_order_name(nxt.text) and nxt.text not in _RESERVED:
                raise SortError(f"{nxt.text!r} is first-order where a set is needed")
            return EqSet(left, _setterm(p))
        if op.text == "<":
            raise SortError("< needs first-order operands")
        raise ParseError(f"expected sub or =, found {op.text!r}", line=op.line, col=op.col)
    if tok.kind == "ident" and tok.text not in _RESERVED:
        x = _ident(p, order=1)
        op = p.next()
        if op.text == "=":
            nxt = p.peek()
            if nxt is not None and (nxt.text == "up" or (nxt.kind == "ident" and not is_first_order_name(nxt.text))):
                raise SortError(f"{x!r} is first-order where a set is needed")
            return EqPos(x, _ident(p, order=1))
        if op.text == "<":
            return Lt(x, _ident(p, order=1))
        if op.text == "in":
            return InSet(x, _setterm(p))
        raise ParseError(
            f"expected =, < or in, found {op.text!r}", line=op.line, col=op.col
        )
    raise ParseError(f"unexpected token {tok.text!r}", line=tok.line, col=tok.col)


def _primary(p: _P) -> Formula:
    tok = p.peek()
    if tok is None:
        raise ParseError("unexpected end of formula", line=1, col=1)
    if tok.text in ("ex1", "all1", "ex2", "all2"):
        p.next()
        order = 1 if tok.text in ("ex1", "all1") else 2
        var = _ident(p, order=order)
        p.expect(".")
        body = _formula(p)
        cls = {"ex1": Exists1, "all1": Forall1, "ex2": Exists2, "all2": Forall2}[tok.text]
        return cls(var, body)
    if tok.text == "not":
        p.next()
        return Not(_primary(p))
    if tok.text == "(":
        p.next()
        inner = _formula(p)
        p.expect(")")
        return inner
    return _atom(p)


def _conj(p: _P) -> Formula:
    left = _primary(p)
    while p.at("and"):
        p.next()
        left = And(left, _primary(p))
    return left


def _disj(p: _P) -> Formula:
    left = _conj(p)
    while p.at("or"):
        p.next()
        left = Or(left, _conj(p))
    return left


def _implies(p: _P) -> Formula:
    left = _disj(p)
    if p.at("->"):
        p.next()
        return Implies(left, _implies(p))
    return left


def _formula(p: _P) -> Formula:
    left = _implies(p)
    if p.at("<->"):
        p.next()
        return Iff(left, _formula(p))
    return left


def parse_formula(text: str) -> Formula:
    p = _P(_lex(text))
    f = _formula(p)
    tok = p.peek()
    if tok is not None:
        raise ParseError(
            f"trailing input {tok.text!r}", line=tok.line, col=tok.col
        )
    return f


# ---------------------------------------------------------------------------
# printer; levels: iff 1, implies 2, or 3, and 4, not/quantifier 5, atom 6


def _print(f: Formula, level: int) -> str:
    if isinstance(f, EqPos):
        return f"{f.x} = {f.y}"
    if isinstance(f, Lt):
        return f"{f.x} < {f.y}"
    if isinstance(f, Succ):
        return f"s({f.x}) = {f.y}"
    if isinstance(f, First):
        return f"first({f.x})"
    if isinstance(f, InSet):
        return f"{f.x} in {f.arg}"
    if isinstance(f, Subset):
        return f"{f.left} sub {f.right}"
    if isinstance(f, EqSet):
        return f"{f.left} = {f.right}"
    if isinstance(f, DigitSum):
        coeffs = ",".join(str(c) for c in f.coeffs)
        args = ",".join(str(t) for t in f.args)
        out = f"dsum({coeffs}; {args}) {f.rel} {f.rhs}"
        if f.at is not None:
            out += f" at {f.at}"
        return out
    if isinstance(f, Not):
        return _wrap(f"not {_print(f.body, 5)}", 5, level)
    if isinstance(f, And):
        return _wrap(f"{_print(f.left, 4)} and {_print(f.right, 5)}", 4, level)
    if isinstance(f, Or):
        return _wrap(f"{_print(f.left, 3)} or {_print(f.right, 4)}", 3, level)
    if isinstance(f, Implies):
        return _wrap(f"{_print(f.left, 3)} -> {_print(f.right, 2)}", 2, level)
    if isinstance(f, Iff):
        return _wrap(f"{_print(f.left, 2)} <-> {_print(f.right, 1)}", 1, level)
    if isinstance(f, _QUANTIFIERS):
        word = {Exists1: "ex1", Forall1: "all1", Exists2: "ex2", Forall2: "all2"}[type(f)]
        return _wrap(f"{word} {f.var}. {_print(f.body, 0)}", 0, level)
    raise AssertionError(type(f))


def _wrap(text: str, mine: int, context: int) -> str:
    return f"({text})" if mine < context else text


def pretty(f: Formula) -> str:
    return _print(f, 0)
