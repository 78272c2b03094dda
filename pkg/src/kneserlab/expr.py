"""Construction expressions such as ``X(C(5), Kneser(5,2))`` or ``Exp(2, K(3))``.

Grammar::

    term   := NAME "(" arg ("," arg)* ")"
    arg    := INT | term

Families and their argument shapes:

    K(n)          complete graph
    C(n)          cycle
    Kneser(m,n)   Kneser graph
    Mycielski(t)  Mycielski construction applied to a term
    X(t,t)        categorical product
    Lex(t,t)      lexicographic product
    Exp(c,t)      exponential graph with c colours over a term

Whitespace (including newlines) is allowed between tokens.  Errors carry a
1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .graph import (
    Graph,
    categorical_product,
    complete,
    cycle,
    exponential_graph,
    kneser,
    lexicographic_product,
    mycielski,
)


class ExpressionError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Term:
    family: str
    args: tuple["Arg", ...]

    def __str__(self) -> str:
        return f"{self.family}({','.join(str(a) for a in self.args)})"


Arg = Union[int, Term]

# family -> argument kinds, "i" for an integer and "t" for a term
FAMILIES: dict[str, str] = {
    "K": "i",
    "C": "i",
    "Kneser": "ii",
    "Mycielski": "t",
    "X": "tt",
    "Lex": "tt",
    "Exp": "it",
}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[(),])|(?P<bad>\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def fail(self, message: str, tok: _Tok) -> ExpressionError:
        return ExpressionError(message, *_position(self.text, tok.offset))

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind == "bad":
            raise self.fail(f"unexpected character {tok.text!r}", tok)
        self.i += 1
        return tok

    def expect(self, punct: str) -> None:
        tok = self.take()
        if tok.text != punct or tok.kind != "punct":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.fail(f"expected {punct!r}, found {found}", tok)

    def term(self) -> Term:
        tok = self.take()
        if tok.kind != "name":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.fail(f"expected a family name, found {found}", tok)
        shape = FAMILIES.get(tok.text)
        if shape is None:
            raise self.fail(f"unknown family {tok.text!r} (known: {', '.join(sorted(FAMILIES))})", tok)
        self.expect("(")
        args: list[Arg] = []
        for j, kind in enumerate(shape):
            if j:
                self.expect(",")
            args.append(self.integer() if kind == "i" else self.term())
        self.expect(")")
        return Term(tok.text, tuple(args))

    def integer(self) -> int:
        tok = self.take()
        if tok.kind != "int":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.fail(f"expected an integer, found {found}", tok)
        return int(tok.text)


def parse_expression(text: str) -> Term:
    parser = _Parser(text)
    term = parser.term()
    tok = parser.peek()
    if tok.kind != "end":
        raise parser.fail(f"trailing input {tok.text!r}", tok)
    return term


def evaluate(term: Term, *, guard: int | None = None) -> Graph:
    """Build the graph a term denotes.  Products refuse looped factors."""
    f, a = term.family, term.args
    if f == "K":
        return complete(a[0])
    if f == "C":
        return cycle(a[0])
    if f == "Kneser":
        return kneser(a[0], a[1])
    if f == "Mycielski":
        return mycielski(evaluate(a[0], guard=guard))
    if f == "X":
        return categorical_product(evaluate(a[0], guard=guard), evaluate(a[1], guard=guard))
    if f == "Lex":
        return lexicographic_product(evaluate(a[0], guard=guard), evaluate(a[1], guard=guard))
    if f == "Exp":
        return exponential_graph(a[0], evaluate(a[1], guard=guard), guard=guard)
    raise AssertionError(f)


def build(text: str, *, guard: int | None = None) -> Graph:
    return evaluate(parse_expression(text), guard=guard)


def canonical_text(text: str) -> str:
    """The expression re-rendered without whitespace."""
    return str(parse_expression(text))
