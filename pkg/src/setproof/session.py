"""Proof sessions: unlimited undo/redo over kernel states, XML persistence,
and HTML export.

The XML document is the ground truth: it records the theorem and the step
log, never the derivation tree.  Loading replays the log through the kernel,
so a file that loads is a file whose proof still holds together, and saving
what was loaded reproduces the bytes exactly.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import (
    MalformedXml, ParseError, ProofError, ReplayFailure, SchemaViolation,
)
from .formulas import Formula, is_var_name
from .history import History
from .kernel import (
    Given, KINDS, ProofState, StepDescriptor, apply_step, new_proof,
)
from .outline import render_outline
from .parser import parse, parse_term
from .render import render

SCHEMA_VERSION = "1"

_Snapshot = tuple[ProofState, tuple[StepDescriptor, ...]]


@dataclass(frozen=True)
class Session:
    state: ProofState
    history: History
    log: tuple[StepDescriptor, ...]
    version: int

    @property
    def theorem_givens(self) -> tuple[Given, ...]:
        return self.state.theorem_givens

    @property
    def theorem_goal(self) -> Formula:
        return self.state.theorem_goal

    @property
    def can_undo(self) -> bool:
        return self.history.can_undo

    @property
    def can_redo(self) -> bool:
        return self.history.can_redo


def session_new(givens: Sequence[Formula], goal: Formula,
                labels: Optional[Sequence[str]] = None) -> Session:
    return Session(new_proof(givens, goal, labels), History(), (), 0)


def session_do(s: Session, step: StepDescriptor) -> Session:
    """Apply a step; on error the session is unchanged (the exception
    propagates before anything new is built)."""
    state = apply_step(s.state, step)
    snapshot: _Snapshot = (s.state, s.log)
    return Session(state, s.history.push(snapshot), s.log + (step,),
                   s.version + 1)


def session_undo(s: Session) -> Session:
    (state, log), hist = s.history.undo((s.state, s.log))
    return Session(state, hist, log, s.version + 1)


def session_redo(s: Session) -> Session:
    (state, log), hist = s.history.redo((s.state, s.log))
    return Session(state, hist, log, s.version + 1)


# -- step attribute vocabulary (shared by XML, scripts, and the service) ----


_ATTR_ORDER = ("goal", "given", "given2", "term", "witness", "path", "rule",
               "dir", "text", "label")


def step_attributes(step: StepDescriptor) -> list[tuple[str, str]]:
    """The step's serialized attributes, in canonical order, kind first."""
    attrs: list[tuple[str, str]] = [("kind", step.kind), ("goal", step.goal)]
    if step.given is not None:
        attrs.append(("given", step.given))
    if step.given2 is not None:
        attrs.append(("given2", step.given2))
    if step.term is not None:
        attrs.append(("term", render(step.term, "ascii")))
    if step.witness is not None:
        attrs.append(("witness", step.witness))
    if step.path is not None:
        attrs.append(("path", ".".join(str(i) for i in step.path)))
    if step.rule is not None:
        attrs.append(("rule", step.rule))
    if step.direction is not None:
        attrs.append(("dir", step.direction))
    if step.text is not None:
        attrs.append(("text", step.text))
    if step.label is not None:
        attrs.append(("label", step.label))
    return attrs


def step_from_attributes(attrs: Mapping[str, str]) -> StepDescriptor:
    """Build a step from its attribute map, validating the vocabulary."""
    known = {"kind"} | set(_ATTR_ORDER)
    for key in attrs:
        if key not in known:
            raise SchemaViolation(f"unknown step attribute {key!r}")
    kind = attrs.get("kind")
    if kind is None:
        raise SchemaViolation("step is missing its kind")
    if kind not in KINDS:
        raise SchemaViolation(f"unknown step kind {kind!r}")
    goal = attrs.get("goal")
    if goal is None:
        raise SchemaViolation("step is missing its goal")
    term = None
    if "term" in attrs:
        try:
            term = parse_term(attrs["term"])
        except ParseError as e:
            raise SchemaViolation(f"bad term attribute: {e}") from None
    path = None
    if "path" in attrs:
        path = _parse_path(attrs["path"])
    direction = attrs.get("dir")
    if direction is not None and direction not in ("forward", "backward"):
        raise SchemaViolation(f"bad dir attribute {direction!r}")
    return StepDescriptor(
        kind=kind, goal=goal,
        given=attrs.get("given"), given2=attrs.get("given2"),
        term=term, witness=attrs.get("witness"), path=path,
        rule=attrs.get("rule"), direction=direction,
        text=attrs.get("text"), label=attrs.get("label"))


def _parse_path(text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    parts = text.split(".")
    if not all(p.isdigit() and str(int(p)) == p for p in parts):
        raise SchemaViolation(f"bad path attribute {text!r}")
    return tuple(int(p) for p in parts)


# -- XML persistence --------------------------------------------------------


def _esc_text(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _esc_attr(text: str) -> str:
    return _esc_text(text).replace('"', "&quot;")


def save_session(s: Session) -> bytes:
    """Serialize the theorem and step log as canonical XML (stable bytes)."""
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<proof-session version="{SCHEMA_VERSION}">',
             "  <theorem>"]
    for g in s.theorem_givens:
        lines.append(f'    <given label="{_esc_attr(g.label)}">'
                     f'{_esc_text(render(g.formula, "ascii"))}</given>')
    lines.append(f'    <goal>{_esc_text(render(s.theorem_goal, "ascii"))}</goal>')
    lines.append("  </theorem>")
    if not s.log:
        lines.append("  <steps/>")
    else:
        lines.append("  <steps>")
        for step in s.log:
            attrs = " ".join(f'{k}="{_esc_attr(v)}"'
                             for k, v in step_attributes(step))
            lines.append(f"    <step {attrs}/>")
        lines.append("  </steps>")
    lines.append("</proof-session>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_session(data) -> Session:
    """Parse and replay a session document.  Raises MalformedXml for broken
    XML, SchemaViolation for a well-formed but invalid document, and
    ReplayFailure (with the 0-based step index) when a logged step no longer
    applies."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        line = e.position[0] if e.position else 0
        raise MalformedXml(line, str(e)) from None
    if root.tag != "proof-session":
        raise SchemaViolation(f"root element must be proof-session, "
                              f"got {root.tag!r}")
    if root.get("version") != SCHEMA_VERSION:
        raise SchemaViolation(f"unsupported schema version {root.get('version')!r}")
    theorem = root.find("theorem")
    if theorem is None:
        raise SchemaViolation("missing <theorem> element")
    givens: list[Formula] = []
    labels: list[str] = []
    goal: Optional[Formula] = None
    for child in theorem:
        if child.tag == "given":
            label = child.get("label")
            if label is None or not is_var_name(label):
                raise SchemaViolation(f"bad given label {label!r}")
            labels.append(label)
            givens.append(_parse_formula(child.text, "given"))
        elif child.tag == "goal":
            if goal is not None:
                raise SchemaViolation("more than one <goal> element")
            goal = _parse_formula(child.text, "goal")
        else:
            raise SchemaViolation(f"unexpected element <{child.tag}> in theorem")
    if goal is None:
        raise SchemaViolation("missing <goal> element")
    if len(set(labels)) != len(labels):
        raise SchemaViolation("duplicate given labels")
    steps_el = root.find("steps")
    if steps_el is None:
        raise SchemaViolation("missing <steps> element")
    steps = []
    for el in steps_el:
        if el.tag != "step":
            raise SchemaViolation(f"unexpected element <{el.tag}> in steps")
        steps.append(step_from_attributes(el.attrib))
    try:
        session = session_new(givens, goal, labels)
    except ProofError as e:
        raise SchemaViolation(f"invalid theorem: {e}") from None
    for i, step in enumerate(steps):
        try:
            session = session_do(session, step)
        except ProofError as e:
            raise ReplayFailure(i, e) from None
    return session


def _parse_formula(text: Optional[str], where: str) -> Formula:
    if text is None or not text.strip():
        raise SchemaViolation(f"empty <{where}> element")
    try:
        return parse(text)
    except ParseError as e:
        raise SchemaViolation(f"bad formula in <{where}>: {e}") from None


# -- HTML export ------------------------------------------------------------


_CSS = """\
body { font-family: Georgia, serif; max-width: 50rem; margin: 2rem auto; }
h1 { font-size: 1.4rem; }
p.given, p.goal { margin: 0.2rem 0; }
ul.proof, ul.proof ul { list-style: none; padding-left: 1.5rem; }
ul.proof li { margin: 0.25rem 0; }
li.placeholder { color: #777; font-style: italic; }
li.comment { color: #555; }
span.connective { color: #0b5394; font-weight: bold; }
span.quantifier { color: #674ea7; font-weight: bold; }
span.variable { font-style: italic; }
span.set-op { color: #38761d; }
span.relation { color: #a64d79; }
span.punct { color: #444; }
"""


def export_html(s: Session) -> bytes:
    """A standalone HTML document: theorem header plus the html outline."""
    title = _esc_text(render(s.theorem_goal, "ascii"))
    head = [f"<!DOCTYPE html>", '<html lang="en">', "<head>",
            '<meta charset="utf-8"/>',
            f"<title>Proof: {title}</title>",
            f"<style>\n{_CSS}</style>", "</head>", "<body>", "<h1>Theorem</h1>"]
    body = []
    for g in s.theorem_givens:
        body.append(f'<p class="given">Given {_esc_text(g.label)}: '
                    f'{render(g.formula, "html")}</p>')
    body.append(f'<p class="goal">Prove: {render(s.theorem_goal, "html")}</p>')
    body.append(render_outline(s.state, "html"))
    tail = ["</body>", "</html>"]
    return ("\n".join(head + body + tail) + "\n").encode("utf-8")
