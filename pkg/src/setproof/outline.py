"""Natural-language proof outlines in text, unicode, and html styles."""

from __future__ import annotations

from html import escape

from .kernel import Branch, Closed, Open, ProofNode, ProofState, is_complete
from .render import render

QED = "∎"


def _sentence(segments, formula_style: str) -> str:
    parts = []
    for kind, payload in segments:
        parts.append(render(payload, formula_style) if kind == "formula"
                     else payload)
    return "".join(parts)


def _sentence_html(segments) -> str:
    parts = []
    for kind, payload in segments:
        parts.append(render(payload, "html") if kind == "formula"
                     else escape(payload))
    return "".join(parts)


def render_outline(state: ProofState, style: str = "text") -> str:
    """The proof as a structured outline.  Open goals render as placeholders;
    a complete outline ends with the tombstone in text/unicode styles."""
    if style == "html":
        return f'<ul class="proof">{_items(state.root)}</ul>'
    if style not in ("text", "unicode"):
        raise ValueError(f"unknown outline style {style!r}")
    formula_style = "ascii" if style == "text" else "unicode"
    lines = ["Proof."]
    _walk(state.root, 1, lines, formula_style)
    if is_complete(state):
        lines.append(QED)
    return "\n".join(lines)


def _walk(node: ProofNode, depth: int, lines: list[str],
          formula_style: str) -> None:
    pad = "  " * depth
    if isinstance(node, Open):
        for comment in node.comments:
            lines.append(f"{pad}[{comment}]")
        goal = render(node.goal, formula_style)
        lines.append(f"{pad}[Proof of {goal} goes here.]")
    elif isinstance(node, Closed):
        lines.append(pad + _sentence(node.sentence, formula_style))
    else:
        lines.append(pad + _sentence(node.sentence, formula_style))
        if len(node.children) == 1:
            _walk(node.children[0], depth, lines, formula_style)
        else:
            for header, child in zip(node.child_headers, node.children):
                lines.append(pad + _sentence(header, formula_style))
                _walk(child, depth + 1, lines, formula_style)


def _items(node: ProofNode) -> str:
    if isinstance(node, Open):
        out = [f'<li class="comment">[{escape(c)}]</li>' for c in node.comments]
        out.append(f'<li class="placeholder">[Proof of '
                   f'{render(node.goal, "html")} goes here.]</li>')
        return "".join(out)
    if isinstance(node, Closed):
        return f"<li>{_sentence_html(node.sentence)}</li>"
    out = [f"<li>{_sentence_html(node.sentence)}</li>"]
    if len(node.children) == 1:
        out.append(_items(node.children[0]))
    else:
        for header, child in zip(node.child_headers, node.children):
            out.append(f"<li>{_sentence_html(header)}"
                       f"<ul>{_items(child)}</ul></li>")
    return "".join(out)
