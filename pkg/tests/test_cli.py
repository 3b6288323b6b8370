"""Command line surface: documents, exit codes, and the interactive session."""

import json
import subprocess
import sys

import pytest

from lri import cli
from lri.cli import ReplSession
from lri.kb import loads

PERMIT_TEXT = """\
axioms:
    act.
hypotheses:
    act -> perm.
    ex.
    ex -> -perm.
queries:
    perm.
    -perm.
"""

DOC_FIELDS = {
    "command",
    "input",
    "verdict",
    "positions",
    "justifications",
    "contexts",
    "diagnostics",
}


@pytest.fixture()
def permit_file(tmp_path):
    path = tmp_path / "permit.lri"
    path.write_text(PERMIT_TEXT, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    doc = json.loads(out)
    assert set(doc) == DOC_FIELDS
    return code, doc, err


# ---------------------------------------------------------------------------
# batch verbs


def test_check_reports_consistency(capsys, permit_file):
    code, doc, err = run_json(capsys, "check", permit_file)
    assert code == 0
    assert doc["command"] == "check"
    assert doc["verdict"] == {
        "axioms_consistent": True,
        "overall_consistent": False,
        "maximal_position_count": 3,
    }
    assert doc["diagnostics"] == {"axiom_count": 1, "hypothesis_count": 3}
    assert "inconsistent" in err


def test_check_pretty_swaps_streams(capsys, permit_file):
    code, out, err = run_cli(capsys, "check", "--pretty", permit_file)
    assert code == 0
    assert err == ""
    assert out.splitlines() == [
        "axioms: consistent",
        "axioms + hypotheses: inconsistent",
        "maximal positions: 3",
    ]


def test_check_writes_dimacs(capsys, permit_file, tmp_path):
    target = tmp_path / "clauses.cnf"
    code, doc, _ = run_json(
        capsys, "check", permit_file, "--dimacs", str(target)
    )
    assert code == 0
    lines = target.read_text(encoding="utf-8").splitlines()
    assert any(line.startswith("p cnf ") for line in lines)
    assert lines[0].startswith("c 1 = ")


def test_positions_lists_maximal_positions(capsys, permit_file):
    code, doc, _ = run_json(capsys, "positions", permit_file)
    assert code == 0
    assert doc["verdict"] == {"count": 3}
    assert [p["indices"] for p in doc["positions"]] == [
        [0, 1],
        [0, 2],
        [1, 2],
    ]
    assert doc["positions"][0]["hypotheses"] == ["(act -> perm)", "ex"]


def test_infer_reasonable_formula(capsys, permit_file):
    code, doc, _ = run_json(capsys, "infer", permit_file, "perm")
    assert code == 0
    assert doc["verdict"] == "reasonable"
    assert [p["indices"] for p in doc["positions"]] == [[0, 1]]
    assert [j["indices"] for j in doc["justifications"]] == [[0]]
    assert doc["justifications"][0]["conclusion"] == "perm"


def test_infer_contradiction_not_reasonable(capsys, permit_file):
    code, doc, _ = run_json(capsys, "infer", permit_file, "perm & -perm")
    assert code == 0
    assert doc["verdict"] == "not-reasonable"
    assert doc["positions"] == []
    assert doc["justifications"] == []


def test_justify_lists_minimal_justifications(capsys, permit_file):
    code, doc, _ = run_json(capsys, "justify", permit_file, "-perm")
    assert code == 0
    assert doc["verdict"] == "reasonable"
    assert [j["indices"] for j in doc["justifications"]] == [[1, 2]]
    assert doc["justifications"][0]["hypotheses"] == ["ex", "(ex -> -perm)"]


def test_context_uses_file_queries_by_default(capsys, permit_file):
    code, doc, _ = run_json(capsys, "context", permit_file)
    assert code == 0
    assert doc["verdict"] == {"count": 2}
    shapes = [
        [(p["conclusion"], p["indices"]) for p in c["pairs"]]
        for c in doc["contexts"]
    ]
    assert shapes == [
        [("perm", [0])],
        [("-perm", [1, 2])],
    ]


def test_context_accepts_explicit_queries(capsys, permit_file):
    code, doc, _ = run_json(capsys, "context", permit_file, "perm", "ex")
    assert code == 0
    assert doc["verdict"] == {"count": 1}
    assert len(doc["contexts"][0]["pairs"]) == 2


def test_context_for_impossible_query_is_empty(capsys, permit_file):
    code, doc, _ = run_json(capsys, "context", permit_file, "perm & -perm")
    assert code == 0
    assert doc["verdict"] == {"count": 1}
    assert doc["contexts"] == [{"pairs": []}]


def test_variety_reports_components(capsys, permit_file):
    code, doc, _ = run_json(capsys, "variety", permit_file)
    assert code == 0
    assert doc["verdict"] == {
        "component_count": 3,
        "discrete": False,
        "connected": True,
    }
    first = doc["positions"][0]
    assert first["component"] == 0
    assert first["axioms"] == ["act", "(act -> perm)", "ex"]
    assert first["indices"] == [0, 1]


def test_variety_probe_reports_upper_level(capsys, permit_file, tmp_path):
    probe = tmp_path / "probe.lri"
    probe.write_text(
        "perm.\n-perm.\nact.\nperm & -perm.\n", encoding="utf-8"
    )
    code, doc, _ = run_json(
        capsys, "variety", permit_file, "--probe", str(probe)
    )
    assert code == 0
    assert doc["verdict"]["upper_level"] == ["perm", "-perm", "act"]


def test_variety_writes_overlap_dot(capsys, permit_file, tmp_path):
    target = tmp_path / "overlap.dot"
    code, _, _ = run_json(
        capsys, "variety", permit_file, "--dot", str(target)
    )
    assert code == 0
    text = target.read_text(encoding="utf-8")
    assert text.startswith("graph components {")
    assert 'c0 -- c1 [label="2"];' in text


def test_compat_verdicts(capsys, permit_file):
    code, doc, _ = run_json(capsys, "compat", permit_file, "0")
    assert code == 0
    assert doc["verdict"] == {"compatible": True}
    code, doc, _ = run_json(capsys, "compat", permit_file, "0", "1")
    assert code == 0
    assert doc["verdict"] == {"compatible": False}
    assert doc["input"] == {"indices": [0, 1]}


def test_witness_reports_boundary(capsys):
    code, doc, _ = run_json(capsys, "witness", "3")
    assert code == 0
    assert doc["verdict"]["n"] == 3
    assert doc["verdict"]["connected"] is True
    matrix = doc["verdict"]["matrix"]
    assert [row["indices"] for row in matrix] == [
        [1, 2],
        [0, 2],
        [0, 1],
        [0, 1, 2],
    ]
    assert [row["compatible"] for row in matrix] == [True, True, True, False]


def test_partition_reports_clusters(capsys, tmp_path):
    path = tmp_path / "split.lri"
    path.write_text(
        "axioms:\n    p -> q.\nhypotheses:\n    q -> r.\n    s -> t.\n",
        encoding="utf-8",
    )
    code, doc, _ = run_json(capsys, "partition", str(path))
    assert code == 0
    assert doc["verdict"]["partition_count"] == 2
    first, second = doc["verdict"]["partitions"]
    assert first["formulas"] == ["(p -> q)", "(q -> r)"]
    assert first["atoms"] == ["p", "q", "r"]
    assert second["formulas"] == ["(s -> t)"]


def test_partition_writes_dot(capsys, tmp_path):
    path = tmp_path / "split.lri"
    path.write_text("axioms:\n    p.\n    q.\n", encoding="utf-8")
    target = tmp_path / "parts.dot"
    code, _, _ = run_json(capsys, "partition", str(path), "--dot", str(target))
    assert code == 0
    assert target.read_text(encoding="utf-8").startswith("graph partitions {")


def test_json_output_is_deterministic(capsys, permit_file):
    _, out1, _ = run_cli(capsys, "infer", permit_file, "perm")
    _, out2, _ = run_cli(capsys, "infer", permit_file, "perm")
    assert out1 == out2


# ---------------------------------------------------------------------------
# exit codes


def test_missing_file_exits_2(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "check", str(tmp_path / "absent.lri"))
    assert code == 2
    assert doc["verdict"] == "error"
    assert doc["diagnostics"]["error"] == "InputError"


def test_syntax_error_exits_2(capsys, permit_file):
    code, doc, _ = run_json(capsys, "infer", permit_file, "perm &")
    assert code == 2
    assert doc["diagnostics"]["error"] == "FormulaSyntaxError"


def test_duplicate_context_queries_exit_2(capsys, permit_file):
    code, doc, _ = run_json(capsys, "context", permit_file, "perm", "perm")
    assert code == 2
    assert "duplicate" in doc["diagnostics"]["message"]


def test_too_many_context_queries_exit_2(capsys, permit_file):
    queries = [f"q{i}" for i in range(13)]
    code, doc, _ = run_json(capsys, "context", permit_file, *queries)
    assert code == 2
    assert "too many" in doc["diagnostics"]["message"]


def test_inconsistent_axioms_exit_3(capsys, tmp_path):
    path = tmp_path / "broken.lri"
    path.write_text(
        "axioms:\n    p.\n    -p.\nhypotheses:\n    q.\n", encoding="utf-8"
    )
    code, doc, _ = run_json(capsys, "positions", str(path))
    assert code == 3
    assert doc["diagnostics"]["error"] == "InconsistentAxioms"


def test_decision_budget_exit_4(capsys, tmp_path):
    path = tmp_path / "wide.lri"
    lines = ["axioms:"] + [f"    a{i} | b{i}." for i in range(6)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, doc, _ = run_json(
        capsys, "check", str(path), "--max-decisions", "2"
    )
    assert code == 4
    assert doc["diagnostics"]["error"] == "ResourceLimit"


def test_multiple_groundings_exit_5(capsys, tmp_path):
    path = tmp_path / "pair.lri"
    path.write_text(
        "constants: a b\naxioms:\n    p(a).\n", encoding="utf-8"
    )
    code, doc, _ = run_json(capsys, "infer", str(path), "p(X)")
    assert code == 5
    assert doc["diagnostics"]["error"] == "MultipleGroundings"


def test_bad_component_indices_exit_6(capsys, permit_file):
    code, doc, _ = run_json(capsys, "compat", permit_file, "0", "9")
    assert code == 6
    assert doc["diagnostics"]["error"] == "InvalidComponents"
    code, doc, _ = run_json(capsys, "compat", permit_file, "0", "0")
    assert code == 6


def test_witness_needs_two_components(capsys):
    code, doc, _ = run_json(capsys, "witness", "1")
    assert code == 2
    assert doc["diagnostics"]["error"] == "InputError"


# ---------------------------------------------------------------------------
# interactive session


def _session(text=PERMIT_TEXT):
    return ReplSession(loads(text))


def test_repl_blank_and_comment_lines_ignored():
    session = _session()
    assert session.handle("") == {}
    assert session.handle("   # note") == {}


def test_repl_quit_ends_session():
    assert _session().handle("quit") is None


def test_repl_query_matches_batch_document(capsys, permit_file):
    _, batch, _ = run_cli(capsys, "infer", permit_file, "perm")
    doc = _session().handle("infer perm")
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == batch


def test_repl_assert_hyp_appends_and_echoes():
    session = _session()
    doc = session.handle("assert-hyp -act -> -perm")
    assert doc["verdict"]["accepted"] is True
    listing = doc["verdict"]["hypotheses"]
    assert listing[-1] == {"index": 3, "formula": "(-act -> -perm)"}


def test_repl_assert_hyp_refuses_duplicates():
    session = _session()
    doc = session.handle("assert-hyp ex")
    assert doc["verdict"]["accepted"] is False
    assert "already a hypothesis" in doc["verdict"]["reason"]
    doc = session.handle("assert-hyp act")
    assert doc["verdict"]["accepted"] is False
    assert "already an axiom" in doc["verdict"]["reason"]


def test_repl_assert_ax_accepts_consistent_axiom():
    session = _session()
    doc = session.handle("assert-ax -ex | act")
    assert doc["verdict"]["accepted"] is True
    assert "(-ex | act)" in doc["verdict"]["axioms"]


def test_repl_assert_ax_refuses_conflicts():
    session = _session()
    doc = session.handle("assert-ax -act")
    assert doc["verdict"]["accepted"] is False
    assert sorted(doc["verdict"]["conflict"]) == ["-act", "act"]
    # the refused axiom left no trace
    assert session.handle("positions")["verdict"] == {"count": 3}


def test_repl_retract_hyp_reindexes():
    session = _session()
    doc = session.handle("retract-hyp 2")
    assert doc["verdict"]["removed"] == "(ex -> -perm)"
    assert [h["formula"] for h in doc["verdict"]["hypotheses"]] == [
        "(act -> perm)",
        "ex",
    ]
    # with the excusing rule gone the permission is no longer contested
    doc = session.handle("infer -perm")
    assert doc["verdict"] == "not-reasonable"


def test_repl_retract_hyp_validates_index():
    session = _session()
    doc = session.handle("retract-hyp 9")
    assert doc["verdict"] == "error"
    doc = session.handle("retract-hyp soon")
    assert doc["verdict"] == "error"


def test_repl_unknown_command_is_an_error_document():
    doc = _session().handle("frobnicate now")
    assert doc["verdict"] == "error"
    assert "unknown command" in doc["diagnostics"]["message"]


def test_repl_errors_leave_state_intact():
    session = _session()
    session.handle("infer perm &")
    session.handle("assert-hyp")
    assert session.handle("positions")["verdict"] == {"count": 3}


def test_repl_save_round_trips(tmp_path):
    session = _session()
    target = tmp_path / "out.lri"
    doc = session.handle(f"save {target}")
    assert doc["verdict"] == {"path": str(target)}
    again = loads(target.read_text(encoding="utf-8"))
    assert [str(f) for f in again.hypotheses] == [
        str(f) for f in loads(PERMIT_TEXT).hypotheses
    ]


def test_repl_subprocess_session(permit_file):
    script = "positions\ninfer perm\nquit\n"
    proc = subprocess.run(
        [sys.executable, "-m", "lri", "repl", permit_file],
        input=script,
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stderr.count("lri> ") == 3
    docs = json.loads("[" + proc.stdout.replace("}\n{", "},\n{") + "]")
    assert [d["command"] for d in docs] == ["positions", "infer"]
    assert docs[1]["verdict"] == "reasonable"
