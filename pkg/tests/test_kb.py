"""Knowledge-base files: parsing, constants, grounding, and round-trips."""

import pytest

from lri import FormulaSyntaxError, UnknownSymbol, parse_formula, print_formula
from lri.kb import KnowledgeBase, dump_domain, dumps, load, loads, save

PERMIT_TEXT = """\
# environmental permit scenario
axioms:
    act.
hypotheses:
    act -> perm.   # granted by default
    ex.
    ex -> -perm.
queries:
    perm.
    -perm.
"""


def _texts(formulas):
    return [print_formula(f) for f in formulas]


def test_load_permit_scenario():
    kb = loads(PERMIT_TEXT)
    assert _texts(kb.axioms) == ["act"]
    assert _texts(kb.hypotheses) == ["(act -> perm)", "ex", "(ex -> -perm)"]
    assert _texts(kb.queries) == ["perm", "-perm"]
    assert kb.declared_constants is None


def test_hypothesis_indices_follow_file_order():
    kb = loads(PERMIT_TEXT)
    domain = kb.domain()
    assert _texts(domain.hypotheses) == _texts(kb.hypotheses)
    ex = parse_formula("ex", kb.signature)
    assert domain.hypotheses[1] == ex


def test_sections_may_be_omitted():
    kb = loads("axioms:\n    p.\n")
    assert _texts(kb.axioms) == ["p"]
    assert kb.hypotheses == ()
    assert kb.queries == ()


def test_empty_text_is_an_empty_base():
    kb = loads("")
    assert kb.axioms == kb.hypotheses == kb.queries == ()
    assert kb.domain().consistent(frozenset())


def test_sections_in_any_order():
    kb = loads("queries:\n    q.\nhypotheses:\n    h.\naxioms:\n    a.\n")
    assert _texts(kb.axioms) == ["a"]
    assert _texts(kb.hypotheses) == ["h"]
    assert _texts(kb.queries) == ["q"]


def test_comments_and_blank_lines_ignored():
    text = (
        "# preamble note\n\n"
        "axioms:\n"
        "    # nothing yet\n"
        "    p.  # trailing\n\n"
        "hypotheses:\n"
    )
    kb = loads(text)
    assert _texts(kb.axioms) == ["p"]


def test_text_before_first_header_rejected():
    with pytest.raises(FormulaSyntaxError) as exc:
        loads("p.\naxioms:\n    q.\n")
    assert "before the first section" in str(exc.value)


def test_duplicate_section_rejected():
    with pytest.raises(FormulaSyntaxError) as exc:
        loads("axioms:\n    p.\naxioms:\n    q.\n")
    assert "duplicate section" in str(exc.value)


def test_syntax_errors_report_section_and_absolute_position():
    text = "axioms:\n    p.\nhypotheses:\n    q & .\n"
    with pytest.raises(FormulaSyntaxError) as exc:
        loads(text)
    assert "in hypotheses section" in str(exc.value)
    assert text[exc.value.position] == "."


# ---------------------------------------------------------------------------
# constants and grounding


def test_constants_fix_grounding_order():
    text = (
        "constants: rita paul\n"
        "axioms:\n"
        "    likes(X).\n"
    )
    kb = loads(text)
    assert _texts(kb.axioms) == ["likes(rita)", "likes(paul)"]
    assert kb.declared_constants == ("rita", "paul")


def test_two_variable_statement_grounds_as_product():
    text = (
        "constants: a b\n"
        "hypotheses:\n"
        "    r(X, Y).\n"
    )
    kb = loads(text)
    assert _texts(kb.hypotheses) == [
        "r(a, a)", "r(a, b)", "r(b, a)", "r(b, b)"
    ]


def test_constants_line_allows_trailing_comment():
    kb = loads("constants: a b  # the agents\naxioms:\n    p(a).\n")
    assert kb.declared_constants == ("a", "b")


def test_statement_after_constants_line_rejected():
    with pytest.raises(FormulaSyntaxError):
        loads("constants: a\n    p(a).\naxioms:\n")


def test_invalid_constant_name_rejected():
    with pytest.raises(FormulaSyntaxError):
        loads("constants: a Bad\naxioms:\n")


def test_duplicate_constant_rejected():
    with pytest.raises(FormulaSyntaxError):
        loads("constants: a a\naxioms:\n")


def test_undeclared_constant_in_formula_rejected():
    text = "constants: a\naxioms:\n    p(b).\n"
    with pytest.raises(UnknownSymbol):
        loads(text)


def test_formulas_may_introduce_constants_without_declaration():
    kb = loads("axioms:\n    p(somebody).\n")
    assert _texts(kb.axioms) == ["p(somebody)"]


def test_parse_query_accepts_new_predicates():
    kb = loads(PERMIT_TEXT)
    (query,) = kb.parse_query("perm & -revoked")
    assert print_formula(query) == "(perm & -revoked)"


def test_parse_query_grounds_over_declared_constants():
    kb = loads("constants: a b\naxioms:\n    p(a).\n")
    queries = kb.parse_query("p(X)")
    assert _texts(queries) == ["p(a)", "p(b)"]


def test_parse_query_rejects_new_constants_when_declared():
    kb = loads("constants: a\naxioms:\n    p(a).\n")
    with pytest.raises(UnknownSymbol):
        kb.parse_query("p(newcomer)")


# ---------------------------------------------------------------------------
# round-trips


def test_dumps_round_trips_loaded_base():
    kb = loads(PERMIT_TEXT)
    text = dumps(kb.axioms, kb.hypotheses, kb.queries, kb.signature)
    again = loads(text)
    assert again.axioms == kb.axioms
    assert again.hypotheses == kb.hypotheses
    assert again.queries == kb.queries


def test_dump_output_is_canonical_fixed_point():
    kb = loads(PERMIT_TEXT)
    text = dumps(kb.axioms, kb.hypotheses, kb.queries, kb.signature)
    again = loads(text)
    assert dumps(again.axioms, again.hypotheses, again.queries,
                 again.signature) == text


def test_dump_emits_constants_line():
    kb = loads("constants: a b\naxioms:\n    p(X).\n")
    text = dumps(kb.axioms, kb.hypotheses, signature=kb.signature)
    assert text.splitlines()[0] == "constants: a b"
    assert loads(text).declared_constants == ("a", "b")


def test_save_and_load_domain(tmp_path):
    kb = loads(PERMIT_TEXT)
    domain = kb.domain()
    path = tmp_path / "permit.lri"
    save(str(path), domain, kb.queries)
    again = load(str(path))
    assert again.axioms == kb.axioms
    assert again.hypotheses == kb.hypotheses
    assert again.queries == kb.queries
    assert again.domain() == domain


def test_dump_domain_matches_dumps():
    kb = loads(PERMIT_TEXT)
    domain = kb.domain()
    assert dump_domain(domain, kb.queries) == dumps(
        kb.axioms, kb.hypotheses, kb.queries, kb.signature
    )


def test_domain_passes_decision_budget():
    kb = loads(PERMIT_TEXT)
    domain = kb.domain(max_decisions=123)
    assert domain.max_decisions == 123
