"""Sessions: undo/redo history, XML round-trips, replay, HTML export."""

import random

import pytest

from setproof.errors import (MalformedXml, NothingToRedo, NothingToUndo,
                             ReplayFailure, SchemaViolation, UnknownGoal)
from setproof.history import History
from setproof.kernel import (StepDescriptor, applicable_steps, is_complete,
                             open_goals)
from setproof.outline import render_outline
from setproof.parser import parse
from setproof.session import (Session, export_html, load_session,
                              save_session, session_do, session_new,
                              session_redo, session_undo, step_attributes,
                              step_from_attributes)

from ._gen import random_state


def step(kind, goal="0", **kw):
    return StepDescriptor(kind=kind, goal=goal, **kw)


def fresh(goal="x in A -> x in A", givens=(), labels=None):
    return session_new([parse(g) for g in givens], parse(goal), labels)


# -- History ----------------------------------------------------------------


def test_history_round_trip():
    h = History()
    assert not h.can_undo and not h.can_redo
    h1 = h.push("a")
    value, h2 = h1.undo("b")
    assert value == "a" and h2.can_redo and not h2.can_undo
    value, h3 = h2.redo(value)
    assert value == "b" and h3.can_undo and not h3.can_redo


def test_history_push_clears_redo():
    _, h = History().push("a").undo("b")
    h2 = h.push("c")
    assert not h2.can_redo


def test_history_empty_raises():
    with pytest.raises(NothingToUndo):
        History().undo("x")
    with pytest.raises(NothingToRedo):
        History().redo("x")


# -- session versioning and undo/redo ---------------------------------------


def test_versions_count_every_operation():
    s = fresh()
    assert s.version == 0
    s = session_do(s, step("suppose"))
    assert s.version == 1
    s = session_undo(s)
    assert s.version == 2
    s = session_redo(s)
    assert s.version == 3


def test_undo_restores_state_and_log():
    s0 = fresh()
    s1 = session_do(s0, step("suppose"))
    assert s1.log == (step("suppose"),)
    s2 = session_undo(s1)
    assert s2.state == s0.state
    assert s2.log == ()
    assert s2.can_redo and not s2.can_undo
    s3 = session_redo(s2)
    assert s3.state == s1.state and s3.log == s1.log


def test_failed_do_leaves_session_alone():
    s = fresh()
    with pytest.raises(UnknownGoal):
        session_do(s, step("suppose", goal="7"))
    assert s.version == 0 and s.log == ()


def test_random_walk_undoes_to_origin():
    rng = random.Random(11)
    s = fresh("forall x (x in A inter B -> x in B)")
    for _ in range(30):
        goals = open_goals(s.state)
        if not goals:
            break
        gid = rng.choice(goals)[0]
        moves = [t for t in applicable_steps(s.state, gid) if not t.needs]
        if not moves:
            s = session_undo(s)
            continue
        t = rng.choice(moves)
        s = session_do(s, step(t.kind, goal=gid, given=t.given, given2=t.given2))
    origin = fresh("forall x (x in A inter B -> x in B)")
    while s.can_undo:
        s = session_undo(s)
    assert s.state == origin.state and s.log == ()


# -- step attribute vocabulary ----------------------------------------------


def test_step_attribute_round_trip():
    descriptors = [
        step("suppose"),
        step("forall-elim", given="H1", term=parse("x in pow(A \\ B)").container),
        step("exists-elim", given="H2", witness="w"),
        step("reexpress-goal", path=(1, 0), rule="de-morgan-and",
             direction="backward"),
        step("reexpress-given", given="H1", path=(), rule="double-negation",
             direction="forward"),
        step("comment", text='x < "y" & z'),
        step("suppose", label="hyp"),
    ]
    for d in descriptors:
        attrs = dict(step_attributes(d))
        assert step_from_attributes(attrs) == d


def test_step_attributes_reject_garbage():
    with pytest.raises(SchemaViolation):
        step_from_attributes({"kind": "suppose", "goal": "0", "color": "red"})
    with pytest.raises(SchemaViolation):
        step_from_attributes({"goal": "0"})
    with pytest.raises(SchemaViolation, match="frobnicate"):
        step_from_attributes({"kind": "frobnicate", "goal": "0"})
    with pytest.raises(SchemaViolation):
        step_from_attributes({"kind": "suppose"})
    with pytest.raises(SchemaViolation):
        step_from_attributes({"kind": "forall-elim", "goal": "0",
                              "given": "H1", "term": "A union"})
    with pytest.raises(SchemaViolation):
        step_from_attributes({"kind": "reexpress-goal", "goal": "0",
                              "rule": "double-negation", "dir": "sideways",
                              "path": ""})
    for bad_path in ("0..1", "a", "01", "-1"):
        with pytest.raises(SchemaViolation):
            step_from_attributes({"kind": "reexpress-goal", "goal": "0",
                                  "rule": "double-negation", "dir": "forward",
                                  "path": bad_path})


# -- XML save ----------------------------------------------------------------


def test_save_fresh_session_golden():
    s = fresh("A sub B", givens=["x in A"], labels=["H1"])
    assert save_session(s).decode() == (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<proof-session version="1">\n'
        "  <theorem>\n"
        '    <given label="H1">x in A</given>\n'
        "    <goal>A sub B</goal>\n"
        "  </theorem>\n"
        "  <steps/>\n"
        "</proof-session>\n")


def test_save_escapes_markup():
    s = fresh("x in A & A sub pow(B)")
    s = session_do(s, step("comment", text='see <note> & "caveat"'))
    text = save_session(s).decode()
    assert "x in A &amp; A sub pow(B)" in text
    assert 'text="see &lt;note&gt; &amp; &quot;caveat&quot;"' in text


def test_save_load_save_is_identity():
    s = fresh("forall x (x in A inter B -> x in A)")
    s = session_do(s, step("let-arbitrary"))
    s = session_do(s, step("suppose", goal="0.0"))
    s = session_do(s, step("reexpress-given", goal="0.0.0", given="H1",
                           path=(), rule="member-of-intersection",
                           direction="forward"))
    s = session_do(s, step("and-elim", goal="0.0.0.0", given="H1"))
    s = session_do(s, step("conclude", goal="0.0.0.0.0", given="H2"))
    first = save_session(s)
    second = save_session(load_session(first))
    assert first == second


def test_load_replays_to_identical_outlines():
    s = fresh("forall x (x in A inter B -> x in A)")
    s = session_do(s, step("let-arbitrary"))
    s = session_do(s, step("suppose", goal="0.0"))
    loaded = load_session(save_session(s))
    for style in ("text", "unicode", "html"):
        assert render_outline(loaded.state, style) == render_outline(s.state, style)
    assert loaded.version == 2
    assert loaded.can_undo and not loaded.can_redo
    back = session_undo(session_undo(loaded))
    assert back.log == ()


def test_load_complete_proof_is_complete():
    s = fresh("A sub A")
    s = session_do(s, step("unfold-subset-goal"))
    s = session_do(s, step("conclude", goal="0.0", given="H1"))
    assert is_complete(load_session(save_session(s)).state)


def test_malformed_xml_reports_line():
    with pytest.raises(MalformedXml) as exc:
        load_session(b'<?xml version="1.0"?>\n<proof-session version="1">\n')
    assert exc.value.line >= 1


def test_schema_violations():
    ok = save_session(fresh("A sub B")).decode()
    cases = [
        ('version="1"', 'version="9"', "schema version"),
        ("<goal>A sub B</goal>", "", "missing <goal>"),
        ("<goal>A sub B</goal>", "<goal>A sub</goal>", "bad formula"),
        ("<theorem>", "<theorem><axiom>x in A</axiom>", "unexpected element"),
        ('label="H1"', "", "label"),
    ]
    base = save_session(fresh("A sub B", givens=["x in A"], labels=["H1"])).decode()
    for old, new, hint in cases:
        doc = (ok if old in ok else base).replace(old, new, 1)
        with pytest.raises(SchemaViolation):
            load_session(doc.encode())
    with pytest.raises(SchemaViolation, match="root element"):
        load_session(ok.replace("proof-session", "lemma-session").encode())


def test_schema_violation_names_bad_kind():
    s = session_do(fresh(), step("suppose"))
    doc = save_session(s).decode().replace('kind="suppose"', 'kind="presume"')
    with pytest.raises(SchemaViolation, match="presume"):
        load_session(doc.encode())


def test_duplicate_labels_rejected():
    doc = save_session(fresh("A sub B", givens=["x in A"], labels=["H1"])).decode()
    doc = doc.replace("<goal>", '<given label="H1">x in B</given>\n    <goal>')
    with pytest.raises(SchemaViolation):
        load_session(doc.encode())


def test_replay_failure_carries_index_and_cause():
    s = fresh()
    s = session_do(s, step("suppose"))
    doc = save_session(s).decode().replace('goal="0"', 'goal="0.3"')
    with pytest.raises(ReplayFailure) as exc:
        load_session(doc.encode())
    assert exc.value.step_index == 0
    assert isinstance(exc.value.cause, UnknownGoal)


# -- HTML export -------------------------------------------------------------


def test_export_html_document():
    s = fresh("A inter B sub A", givens=["x in A"], labels=["H1"])
    s = session_do(s, step("unfold-subset-goal"))
    html = export_html(s).decode()
    assert html.startswith("<!DOCTYPE html>")
    assert "<title>Proof: A inter B sub A</title>" in html
    assert '<p class="given">Given H1:' in html
    assert '<p class="goal">Prove:' in html
    assert '<ul class="proof">' in html
    assert 'span.relation' in html
    assert html.endswith("</html>\n")


def test_export_html_random_sessions_are_well_formed(tmp_path):
    import xml.etree.ElementTree as ET
    rng = random.Random(3)
    for _ in range(10):
        state = random_state(rng)
        s = Session(state, History(), (), 0)
        doc = export_html(s).decode()
        body = doc[doc.index("<body>"):doc.index("</html>")]
        ET.fromstring(body.replace('<meta charset="utf-8"/>', ""))
