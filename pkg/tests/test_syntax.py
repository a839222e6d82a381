import random

import pytest

from jbi.parser import parse_goal
from jbi.syntax import (
    Assign,
    BinOp,
    Call,
    GStmt,
    Ident,
    IntLit,
    IntVal,
    KChoose,
    MChoose,
    Print,
    ProcDef,
    Read,
    Seq,
    StrLit,
    StrVal,
    SymVal,
    TrueStmt,
    free_idents,
    pretty_expr,
    pretty_print,
    render_value,
    substitute,
    value_literal,
)

from gen import rand_stmt


def test_substitute_replaces_expression_occurrences():
    stmt = Assign("age", BinOp("add", Ident("x"), IntLit(1)))
    got = substitute(stmt, "x", IntVal(30))
    assert got == Assign("age", BinOp("add", IntLit(30), IntLit(1)))


def test_substitute_no_occurrences():
    assert substitute(TrueStmt(), "x", IntVal(5)) == TrueStmt()


def test_substitute_read_binder_shadows_continuation():
    stmt = Seq(Read("x"), Print(Ident("x")))
    assert substitute(stmt, "x", IntVal(7)) == stmt


def test_substitute_leaves_assignment_targets():
    stmt = Assign("x", BinOp("add", Ident("x"), IntLit(1)))
    got = substitute(stmt, "x", IntVal(2))
    assert got == Assign("x", BinOp("add", IntLit(2), IntLit(1)))


def test_substitute_scopes_read_to_its_own_sequence():
    # the read inside a branch does not shadow what follows the choice
    stmt = Seq(KChoose((Read("x"),)), Print(Ident("x")))
    got = substitute(stmt, "x", IntVal(3))
    assert got == Seq(KChoose((Read("x"),)), Print(IntLit(3)))


def test_substitute_symbol_values_quote_as_identifiers():
    got = substitute(Print(Ident("who")), "who", SymVal("kim"))
    assert got == Print(Ident("kim"))


def test_pretty_sequence_matches_listing():
    stmt = Seq(Assign("emp", Ident("tom")), Assign("age", IntLit(31)))
    assert pretty_print(stmt) == "emp = tom; age = 31"


def test_pretty_true_and_kchoose():
    assert pretty_print(TrueStmt()) == "true"
    assert pretty_print(KChoose((TrueStmt(), TrueStmt()))) == "kchoose(true, true)"


def test_pretty_mchoose_quotes_labels():
    stmt = MChoose((("OK", TrueStmt()), ("Cancel", Read("x"))))
    assert pretty_print(stmt) == 'mchoose("OK": true, "Cancel": read(x))'


def test_pretty_expr_precedence():
    e = BinOp("mul", BinOp("add", Ident("a"), Ident("b")), IntLit(2))
    assert pretty_expr(e) == "(a + b) * 2"
    e = BinOp("add", Ident("a"), BinOp("mul", Ident("b"), IntLit(2)))
    assert pretty_expr(e) == "a + b * 2"
    e = BinOp("sub", IntLit(1), BinOp("sub", IntLit(2), IntLit(3)))
    assert pretty_expr(e) == "1 - (2 - 3)"


def test_pretty_grouped_sequence_in_prim_position():
    stmt = Seq(Seq(TrueStmt(), Read("x")), Print(Ident("x")))
    assert pretty_print(stmt) == "(true; read(x)); print(x)"


def test_free_idents_examples():
    assert free_idents(Assign("age", BinOp("add", Ident("x"), IntLit(1)))) == {"x"}
    assert free_idents(Seq(Read("x"), Print(Ident("x")))) == set()
    assert free_idents(Print(BinOp("add", Ident("a"), Ident("b")))) == {"a", "b"}


def test_free_idents_skip_read_and_assign_targets():
    assert free_idents(Read("x")) == set()
    assert free_idents(Assign("x", IntLit(1))) == set()
    assert free_idents(Call("p", (Ident("q"),))) == {"q"}


def test_value_literal_and_render():
    assert value_literal(IntVal(3)) == IntLit(3)
    assert value_literal(StrVal("hi")) == StrLit("hi")
    assert value_literal(SymVal("kim")) == Ident("kim")
    assert render_value(IntVal(3)) == "3"
    assert render_value(StrVal("hi")) == "hi"
    assert render_value(SymVal("kim")) == "kim"


def test_invariants_rejected_at_construction():
    with pytest.raises(ValueError):
        KChoose(())
    with pytest.raises(ValueError):
        MChoose((("OK", TrueStmt()), ("OK", TrueStmt())))
    with pytest.raises(ValueError):
        ProcDef("p", ("x", "x"), TrueStmt())
    with pytest.raises(ValueError):
        Ident("9lives")
    with pytest.raises(ValueError):
        BinOp("div", IntLit(1), IntLit(2))


def _shape(stmt: GStmt):
    match stmt:
        case Seq(first, second):
            return ("seq", _shape(first), _shape(second))
        case KChoose(branches):
            return ("kchoose", tuple(_shape(b) for b in branches))
        case MChoose(branches):
            return ("mchoose", tuple(_shape(b) for _, b in branches))
        case _:
            return type(stmt).__name__


def test_substitution_preserves_shape_and_is_idempotent_when_closed():
    rng = random.Random(1309)
    for _ in range(300):
        stmt = rand_stmt(rng)
        got = substitute(stmt, "x", IntVal(9))
        assert _shape(got) == _shape(stmt)
        if "x" not in free_idents(stmt):
            assert got == stmt
        # once substituted, x is no longer free
        assert "x" not in free_idents(got)


def test_round_trip_generated_statements():
    rng = random.Random(417)
    for _ in range(300):
        stmt = rand_stmt(rng)
        assert parse_goal(pretty_print(stmt)) == stmt
