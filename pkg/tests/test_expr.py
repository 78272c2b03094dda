from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kneserlab.expr import FAMILIES, ExpressionError, Term, build, canonical_text, parse_expression
from kneserlab.graph import (
    GraphError,
    LoopError,
    SizeGuardError,
    categorical_product,
    complete,
    cycle,
    exponential_graph,
    kneser,
    lexicographic_product,
    mycielski,
)


def test_parse_examples():
    assert parse_expression("Exp(2, K(3))") == Term("Exp", (2, Term("K", (3,))))
    assert parse_expression("X(C(5), Kneser(5,2))") == Term("X", (Term("C", (5,)), Term("Kneser", (5, 2))))
    assert parse_expression("Lex(C(5), K(2))") == Term("Lex", (Term("C", (5,)), Term("K", (2,))))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("K(4)", complete(4)),
        ("C(7)", cycle(7)),
        ("Kneser(6,2)", kneser(6, 2)),
        ("Exp(2, K(3))", exponential_graph(2, complete(3))),
        ("X(C(5), Kneser(5,2))", categorical_product(cycle(5), kneser(5, 2))),
        ("Lex(C(5), K(2))", lexicographic_product(cycle(5), complete(2))),
        ("Mycielski(Mycielski(C(5)))", mycielski(mycielski(cycle(5)))),
        ("X(Exp(2,K(3)), K(2))", categorical_product(exponential_graph(2, complete(3)), complete(2))),
    ],
)
def test_build_matches_constructors(text, expected):
    assert build(text) == expected


def test_whitespace_and_newlines():
    assert canonical_text("  X(\n  C( 5 ),\n\tK(2) )  ") == "X(C(5),K(2))"


@pytest.mark.parametrize(
    "text, fragment, line, column",
    [
        ("Foo(3)", "unknown family 'Foo'", 1, 1),
        ("K(3", "expected ')', found end of input", 1, 4),
        ("K(3))", "trailing input ')'", 1, 5),
        ("X(K(2),\n  K(x))", "expected an integer, found 'x'", 2, 5),
        ("Kneser(5;2)", "unexpected character ';'", 1, 9),
        ("", "expected a family name, found end of input", 1, 1),
        ("Exp(K(2), 3)", "expected an integer, found 'K'", 1, 5),
        ("K(2,3)", "expected ')', found ','", 1, 4),
    ],
)
def test_syntax_errors_carry_position(text, fragment, line, column):
    with pytest.raises(ExpressionError) as info:
        parse_expression(text)
    assert fragment in str(info.value)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).endswith(f"at line {line}, column {column}")


def test_unknown_family_lists_known_ones():
    with pytest.raises(ExpressionError, match="known: C, Exp, K, Kneser, Lex, Mycielski, X"):
        parse_expression("Q(1)")


def test_evaluation_errors():
    with pytest.raises(GraphError):
        build("K(0)")
    with pytest.raises(LoopError):
        build("X(Exp(2, K(2)), K(2))")
    with pytest.raises(SizeGuardError):
        build("Exp(9, K(9))")
    with pytest.raises(SizeGuardError):
        build("Exp(3, K(4))", guard=50)


def terms(depth: int = 2):
    leaves = st.one_of(
        st.builds(lambda n: Term("K", (n,)), st.integers(1, 4)),
        st.builds(lambda n: Term("C", (n,)), st.integers(3, 5)),
        st.builds(lambda m, n: Term("Kneser", (m, n)), st.integers(2, 5), st.just(1)),
    )
    if depth == 0:
        return leaves
    sub = terms(depth - 1)
    return st.one_of(
        leaves,
        st.builds(lambda a, b: Term("X", (a, b)), sub, sub),
        st.builds(lambda a, b: Term("Lex", (a, b)), sub, sub),
    )


@given(terms())
def test_render_parse_round_trip(term):
    text = str(term)
    assert parse_expression(text) == term
    assert canonical_text(text.replace(",", " , ")) == text


def test_family_table_shapes():
    assert set(FAMILIES) == {"K", "C", "Kneser", "Mycielski", "X", "Lex", "Exp"}
