"""Command-line driver.

Subcommands operate on session XML files (new/apply/auto/undo/redo/render),
batch-check proof scripts, or launch the HTTP service.  Exit codes: 0 success
or complete proof, 1 incomplete proof (check only), 2 usage or parse error,
3 step-application error.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from typing import Optional, Sequence

from .errors import (InvalidTheorem, MalformedXml, ParseError, ProofError,
                     ReplayFailure, SchemaViolation)
from .kernel import is_complete
from .outline import render_outline
from .parser import parse
from .session import (Session, export_html, load_session, save_session,
                      session_do, session_new, session_redo, session_undo,
                      step_from_attributes)

USAGE_ERROR = 2
STEP_ERROR = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _input_error(e: ProofError) -> _CliError:
    return _CliError(f"{type(e).__name__}: {e}", USAGE_ERROR)


def _step_error(e: ProofError) -> _CliError:
    return _CliError(f"{type(e).__name__}: {e}", STEP_ERROR)


def _load_file(path: str) -> Session:
    try:
        data = open(path, "rb").read()
    except OSError as e:
        raise _CliError(str(e), USAGE_ERROR) from None
    try:
        return load_session(data)
    except (MalformedXml, SchemaViolation, ReplayFailure) as e:
        raise _input_error(e) from None


def _write_file(path: str, session: Session) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(save_session(session))
    except OSError as e:
        raise _CliError(str(e), USAGE_ERROR) from None


def _step_from_tokens(tokens: Sequence[str]):
    """A script step line: the kind, then key=value arguments."""
    if not tokens:
        raise _CliError("empty step", USAGE_ERROR)
    attrs = {"kind": tokens[0]}
    for tok in tokens[1:]:
        key, eq, value = tok.partition("=")
        if not eq or not key:
            raise _CliError(f"expected key=value, found {tok!r}", USAGE_ERROR)
        if key in attrs:
            raise _CliError(f"duplicate step argument {key!r}", USAGE_ERROR)
        attrs[key] = value
    try:
        return step_from_attributes(attrs)
    except (SchemaViolation, ParseError) as e:
        raise _input_error(e) from None


# -- subcommands --------------------------------------------------------------


def _cmd_new(args) -> int:
    try:
        goal = parse(args.goal)
        givens = [parse(g) for g in args.givens]
        session = session_new(givens, goal, labels=args.labels)
    except (ParseError, InvalidTheorem) as e:
        raise _input_error(e) from None
    _write_file(args.file, session)
    return 0


def _cmd_apply(args) -> int:
    tokens = args.step
    if len(tokens) == 1:
        # the whole step may arrive as one quoted string, script-line style
        tokens = shlex.split(tokens[0])
    step = _step_from_tokens(tokens)
    session = _load_file(args.file)
    try:
        session = session_do(session, step)
    except ProofError as e:
        raise _step_error(e) from None
    _write_file(args.file, session)
    return 0


def _cmd_auto(args) -> int:
    from .auto import auto_run, auto_step
    session = _load_file(args.file)
    try:
        if args.run:
            _, applied = auto_run(session.state, args.goal,
                                  max_steps=args.max_steps)
        else:
            _, step = auto_step(session.state, args.goal)
            if step is None:
                raise _CliError(
                    f"no automatic step applies to goal {args.goal}",
                    STEP_ERROR)
            applied = [step]
        for step in applied:
            session = session_do(session, step)
    except ProofError as e:
        raise _step_error(e) from None
    for step in applied:
        print(f"applied {step.kind} at goal {step.goal}", file=sys.stderr)
    _write_file(args.file, session)
    return 0


def _cmd_undo(args) -> int:
    session = _load_file(args.file)
    try:
        session = session_undo(session)
    except ProofError as e:
        raise _step_error(e) from None
    _write_file(args.file, session)
    return 0


def _cmd_redo(args) -> int:
    session = _load_file(args.file)
    try:
        session = session_redo(session)
    except ProofError as e:
        raise _step_error(e) from None
    _write_file(args.file, session)
    return 0


def _cmd_render(args) -> int:
    session = _load_file(args.file)
    if args.format == "html":
        sys.stdout.write(export_html(session).decode("utf-8"))
    else:
        print(render_outline(session.state, args.format))
    return 0


def _parse_script(text: str):
    givens = []
    goal = None
    steps = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("given:"):
                if steps or goal is not None:
                    raise _CliError(
                        f"line {number}: given after the header", USAGE_ERROR)
                givens.append(parse(line[len("given:"):].strip()))
            elif line.startswith("goal:"):
                if goal is not None:
                    raise _CliError(
                        f"line {number}: second goal line", USAGE_ERROR)
                goal = parse(line[len("goal:"):].strip())
            else:
                if goal is None:
                    raise _CliError(
                        f"line {number}: step before the goal line",
                        USAGE_ERROR)
                steps.append(_step_from_tokens(shlex.split(line)))
        except ParseError as e:
            raise _CliError(f"line {number}: {e}", USAGE_ERROR) from None
    if goal is None:
        raise _CliError("script has no goal line", USAGE_ERROR)
    return givens, goal, steps


def _cmd_check(args) -> int:
    try:
        text = open(args.script, "r", encoding="utf-8").read()
    except OSError as e:
        raise _CliError(str(e), USAGE_ERROR) from None
    givens, goal, steps = _parse_script(text)
    try:
        session = session_new(givens, goal)
    except InvalidTheorem as e:
        raise _input_error(e) from None
    for index, step in enumerate(steps):
        try:
            session = session_do(session, step)
        except ProofError as e:
            raise _CliError(f"step {index}: {type(e).__name__}: {e}",
                            STEP_ERROR) from None
    print(render_outline(session.state, "text"))
    return 0 if is_complete(session.state) else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(args.state_dir), host=args.host, port=args.port)
    return 0


# -- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setproof",
        description="structured proof assistant for elementary set theory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="create a session file")
    p.add_argument("file", help="session XML file to create")
    p.add_argument("--goal", required=True, help="theorem goal formula")
    p.add_argument("--given", dest="givens", action="append", default=[],
                   metavar="FORMULA", help="theorem given (repeatable)")
    p.add_argument("--label", dest="labels", action="append", default=None,
                   metavar="NAME", help="label for the matching given")
    p.set_defaults(func=_cmd_new)

    p = sub.add_parser("apply", help="apply one step to a session file")
    p.add_argument("file", help="session XML file")
    p.add_argument("step", nargs="+",
                   help="step: KIND key=value... (e.g. suppose goal=0)")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("auto", help="apply automatic steps")
    p.add_argument("file", help="session XML file")
    p.add_argument("--goal", default="0", help="target goal id")
    p.add_argument("--run", action="store_true",
                   help="repeat until no step applies")
    p.add_argument("--max-steps", type=int, default=50)
    p.set_defaults(func=_cmd_auto)

    p = sub.add_parser("undo", help="undo the last step")
    p.add_argument("file", help="session XML file")
    p.set_defaults(func=_cmd_undo)

    p = sub.add_parser("redo", help="redo an undone step")
    p.add_argument("file", help="session XML file")
    p.set_defaults(func=_cmd_redo)

    p = sub.add_parser("render", help="print the proof outline")
    p.add_argument("file", help="session XML file")
    p.add_argument("--format", choices=("text", "unicode", "html"),
                   default="text")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("check", help="replay a proof script")
    p.add_argument("script", help="proof script file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("SETPROOF_PORT", "8000")))
    p.add_argument("--state-dir",
                   default=os.environ.get("SETPROOF_STATE_DIR"))
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as e:
        print(f"setproof: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
