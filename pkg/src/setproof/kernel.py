"""The proof kernel: derivation trees, the step catalog, applicability and
application of steps.

A proof is a tree.  Open leaves carry a goal and the givens available for it;
applying a step replaces an Open leaf by a Branch whose children are the new
Open/Closed leaves (Comment is the one exception: it annotates the leaf in
place so its goal id is stable).  Goal ids are dotted child-index paths rooted
at "0".

Narrative sentences are stored as segment tuples (text / formula / name) so
one tree can be rendered in every outline style.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    ArgumentMissing, FreshnessViolation, InvalidTheorem, NotApplicable,
    UnknownGiven, UnknownGoal,
)
from .formulas import (
    And, Contradiction, Eq, Exists, ForAll, Formula, Iff, Implies, In, Not,
    Or, Path, Subset, Term, Var, all_var_names, alpha_eq,
    contains_contradiction, free_vars, fresh_var, is_var_name, substitute,
)
from .reexpress import apply_equivalence

ORIGINS = ("hypothesis", "assumption", "instantiation", "inference",
           "reexpression")

GOAL_KINDS = (
    "suppose", "let-arbitrary", "exhibit-witness", "split-and", "split-iff",
    "double-inclusion", "unfold-subset-goal", "prove-left", "prove-right",
    "or-to-conditional", "prove-by-contradiction", "conclude",
    "contradiction-close",
)
INFERENCE_KINDS = (
    "and-elim", "iff-elim", "cases", "exists-elim", "forall-elim",
    "modus-ponens", "modus-tollens",
)
OTHER_KINDS = ("reexpress-goal", "reexpress-given", "comment")
KINDS = frozenset(GOAL_KINDS + INFERENCE_KINDS + OTHER_KINDS)

GoalId = str
Segment = tuple  # ("text", str) | ("formula", Node) | ("name", str)


def _t(text: str) -> Segment:
    return ("text", text)


def _f(node) -> Segment:
    return ("formula", node)


def _n(name: str) -> Segment:
    return ("name", name)


@dataclass(frozen=True)
class Given:
    label: str
    formula: Formula
    origin: str = "hypothesis"


@dataclass(frozen=True)
class StepDescriptor:
    kind: str
    goal: GoalId = "0"
    given: Optional[str] = None
    given2: Optional[str] = None
    term: Optional[Term] = None
    witness: Optional[str] = None
    path: Optional[Path] = None
    rule: Optional[str] = None
    direction: Optional[str] = None
    text: Optional[str] = None
    label: Optional[str] = None


class ProofNode:
    """Base class of derivation-tree nodes."""
    __slots__ = ()


@dataclass(frozen=True)
class Open(ProofNode):
    goal: Formula
    givens: tuple[Given, ...]
    comments: tuple[str, ...] = ()


@dataclass(frozen=True)
class Closed(ProofNode):
    by: StepDescriptor
    sentence: tuple[Segment, ...]


@dataclass(frozen=True)
class Branch(ProofNode):
    step: StepDescriptor
    sentence: tuple[Segment, ...]
    children: tuple[ProofNode, ...]
    child_headers: tuple[tuple[Segment, ...], ...] = ()


@dataclass(frozen=True)
class ProofState:
    theorem_givens: tuple[Given, ...]
    theorem_goal: Formula
    root: ProofNode


@dataclass(frozen=True)
class StepTemplate:
    """An entry of the applicable-steps menu; ``needs`` names the arguments
    the user still has to supply."""
    kind: str
    needs: tuple[str, ...] = ()
    given: Optional[str] = None
    given2: Optional[str] = None


def new_proof(givens: Sequence[Formula], goal: Formula,
              labels: Optional[Sequence[str]] = None) -> ProofState:
    """Start a proof.  The contradiction constant may not appear in the
    theorem; default labels are H1, H2, ..."""
    if contains_contradiction(goal) or any(contains_contradiction(g) for g in givens):
        raise InvalidTheorem("the contradiction constant cannot appear in a theorem")
    if labels is None:
        labels = [f"H{i + 1}" for i in range(len(givens))]
    if len(labels) != len(givens):
        raise InvalidTheorem("one label per given required")
    if len(set(labels)) != len(labels) or not all(is_var_name(l) for l in labels):
        raise InvalidTheorem("labels must be distinct identifiers")
    packed = tuple(Given(l, g, "hypothesis") for l, g in zip(labels, givens))
    return ProofState(packed, goal, Open(goal, packed))


# -- goal addressing -------------------------------------------------------


def _goal_indices(goal_id: GoalId) -> tuple[int, ...]:
    parts = goal_id.split(".")
    if parts[0] != "0" or not all(p.isdigit() and str(int(p)) == p for p in parts):
        raise UnknownGoal(f"malformed goal id {goal_id!r}")
    return tuple(int(p) for p in parts[1:])


def node_at(state: ProofState, goal_id: GoalId) -> ProofNode:
    node = state.root
    for idx in _goal_indices(goal_id):
        if not isinstance(node, Branch) or not 0 <= idx < len(node.children):
            raise UnknownGoal(f"no goal {goal_id!r} in this proof")
        node = node.children[idx]
    return node


def _open_at(state: ProofState, goal_id: GoalId) -> Open:
    node = node_at(state, goal_id)
    if not isinstance(node, Open):
        raise UnknownGoal(f"goal {goal_id!r} is not open")
    return node


def _with_node(node: ProofNode, indices: tuple[int, ...],
               replacement: ProofNode) -> ProofNode:
    if not indices:
        return replacement
    assert isinstance(node, Branch)
    kids = list(node.children)
    kids[indices[0]] = _with_node(kids[indices[0]], indices[1:], replacement)
    return Branch(node.step, node.sentence, tuple(kids), node.child_headers)


def open_goals(state: ProofState) -> list[tuple[GoalId, Open]]:
    """Open leaves in depth-first, left-to-right order."""
    out: list[tuple[GoalId, Open]] = []

    def walk(node: ProofNode, goal_id: GoalId) -> None:
        if isinstance(node, Open):
            out.append((goal_id, node))
        elif isinstance(node, Branch):
            for i, child in enumerate(node.children):
                walk(child, f"{goal_id}.{i}")

    walk(state.root, "0")
    return out


def is_complete(state: ProofState) -> bool:
    return not open_goals(state)


# -- context helpers -------------------------------------------------------


def _context_names(leaf: Open) -> set[str]:
    names = set(all_var_names(leaf.goal))
    for g in leaf.givens:
        names |= all_var_names(g.formula)
    return names


def _context_free(leaf: Open) -> set[str]:
    names = set(free_vars(leaf.goal))
    for g in leaf.givens:
        names |= free_vars(g.formula)
    return names


def _find_given(leaf: Open, label: Optional[str], arg: str) -> Given:
    if label is None:
        raise ArgumentMissing(f"step needs argument {arg!r}")
    for g in leaf.givens:
        if g.label == label:
            return g
    raise UnknownGiven(f"no given labeled {label!r} at this goal")


def _new_label(leaf_labels: set[str], supplied: Optional[str]) -> str:
    if supplied is not None:
        if not is_var_name(supplied):
            raise FreshnessViolation(f"label {supplied!r} is not a valid identifier")
        if supplied in leaf_labels:
            raise FreshnessViolation(f"label {supplied!r} is already in use")
        return supplied
    k = 1
    while f"H{k}" in leaf_labels:
        k += 1
    return f"H{k}"


def _labels(leaf: Open) -> set[str]:
    return {g.label for g in leaf.givens}


def _need(value, name: str):
    if value is None:
        raise ArgumentMissing(f"step needs argument {name!r}")
    return value


# -- step application ------------------------------------------------------


def apply_step(state: ProofState, step: StepDescriptor) -> ProofState:
    """Apply one step at its target goal, returning the new state.  The state
    is unchanged (this function raises) when the step does not fit."""
    indices = _goal_indices(step.goal)
    leaf = _open_at(state, step.goal)
    replacement = _perform(leaf, step)
    return ProofState(state.theorem_givens, state.theorem_goal,
                      _with_node(state.root, indices, replacement))


def _perform(leaf: Open, step: StepDescriptor) -> ProofNode:
    goal = leaf.goal
    kind = step.kind
    if kind == "suppose":
        if not isinstance(goal, Implies):
            raise NotApplicable("suppose needs a conditional goal")
        g = Given(_new_label(_labels(leaf), step.label), goal.left, "assumption")
        child = Open(goal.right, leaf.givens + (g,))
        return Branch(step, (_t("Suppose "), _f(goal.left), _t(".")), (child,))

    if kind == "let-arbitrary":
        if not isinstance(goal, ForAll):
            raise NotApplicable("let-arbitrary needs a universal goal")
        name = fresh_var(goal.var, _context_names(leaf))
        child = Open(substitute(goal.body, goal.var, Var(name)), leaf.givens)
        return Branch(step, (_t("Let "), _n(name), _t(" be arbitrary.")), (child,))

    if kind == "exhibit-witness":
        if not isinstance(goal, Exists):
            raise NotApplicable("exhibit-witness needs an existential goal")
        term = _need(step.term, "term")
        child = Open(substitute(goal.body, goal.var, term), leaf.givens)
        return Branch(step, (_t("Choose "), _f(term), _t(".")), (child,))

    if kind == "split-and":
        if not isinstance(goal, And):
            raise NotApplicable("split-and needs a conjunctive goal")
        kids = (Open(goal.left, leaf.givens), Open(goal.right, leaf.givens))
        return Branch(step, (_t("We prove each conjunct separately."),), kids,
                      _part_headers(goal.left, goal.right))

    if kind == "split-iff":
        if not isinstance(goal, Iff):
            raise NotApplicable("split-iff needs a biconditional goal")
        fwd, bwd = Implies(goal.left, goal.right), Implies(goal.right, goal.left)
        kids = (Open(fwd, leaf.givens), Open(bwd, leaf.givens))
        return Branch(step, (_t("We prove both directions."),), kids,
                      _part_headers(fwd, bwd))

    if kind == "double-inclusion":
        if not isinstance(goal, Eq):
            raise NotApplicable("double-inclusion needs an equality goal")
        lr, rl = Subset(goal.left, goal.right), Subset(goal.right, goal.left)
        kids = (Open(lr, leaf.givens), Open(rl, leaf.givens))
        return Branch(step, (_t("We prove inclusion in both directions."),),
                      kids, _part_headers(lr, rl))

    if kind == "unfold-subset-goal":
        if not isinstance(goal, Subset):
            raise NotApplicable("unfold-subset-goal needs a subset goal")
        name = fresh_var("x", _context_names(leaf))
        g = Given(_new_label(_labels(leaf), step.label),
                  In(Var(name), goal.left), "assumption")
        child = Open(In(Var(name), goal.right), leaf.givens + (g,))
        return Branch(step, (_t("Let "), _n(name),
                             _t(" be an arbitrary element of "),
                             _f(goal.left), _t(".")), (child,))

    if kind in ("prove-left", "prove-right"):
        if not isinstance(goal, Or):
            raise NotApplicable(f"{kind} needs a disjunctive goal")
        picked = goal.left if kind == "prove-left" else goal.right
        child = Open(picked, leaf.givens)
        return Branch(step, (_t("It suffices to prove "), _f(picked), _t(".")),
                      (child,))

    if kind == "or-to-conditional":
        if not isinstance(goal, Or):
            raise NotApplicable("or-to-conditional needs a disjunctive goal")
        g = Given(_new_label(_labels(leaf), step.label), Not(goal.left),
                  "assumption")
        child = Open(goal.right, leaf.givens + (g,))
        return Branch(step, (_t("Suppose "), _f(Not(goal.left)), _t(".")),
                      (child,))

    if kind == "prove-by-contradiction":
        g = Given(_new_label(_labels(leaf), step.label), Not(goal), "assumption")
        child = Open(Contradiction(), leaf.givens + (g,))
        return Branch(step, (_t("Suppose, for contradiction, "),
                             _f(Not(goal)), _t(".")), (child,))

    if kind == "conclude":
        g = _find_given(leaf, step.given, "given")
        if not alpha_eq(g.formula, goal):
            raise NotApplicable(f"given {g.label} is not the goal")
        return Closed(step, (_t("By "), _n(g.label), _t(", "), _f(goal), _t(".")))

    if kind == "contradiction-close":
        if not isinstance(goal, Contradiction):
            raise NotApplicable("contradiction-close needs the goal contra")
        g1 = _find_given(leaf, step.given, "given")
        g2 = _find_given(leaf, step.given2, "given2")
        if not alpha_eq(g2.formula, Not(g1.formula)):
            raise NotApplicable(
                f"given {g2.label} is not the negation of {g1.label}")
        return Closed(step, (_t("Givens "), _n(g1.label), _t(" and "),
                             _n(g2.label), _t(" are contradictory.")))

    if kind == "and-elim":
        g = _find_given(leaf, step.given, "given")
        if not isinstance(g.formula, And):
            raise NotApplicable("and-elim needs a conjunctive given")
        labels = _labels(leaf)
        l1 = _new_label(labels, None)
        g1 = Given(l1, g.formula.left, "inference")
        g2 = Given(_new_label(labels | {l1}, None), g.formula.right, "inference")
        child = Open(goal, leaf.givens + (g1, g2))
        return Branch(step, (_t("From "), _n(g.label), _t(", we get "),
                             _f(g.formula.left), _t(" and "),
                             _f(g.formula.right), _t(".")), (child,))

    if kind == "iff-elim":
        g = _find_given(leaf, step.given, "given")
        if not isinstance(g.formula, Iff):
            raise NotApplicable("iff-elim needs a biconditional given")
        fwd = Implies(g.formula.left, g.formula.right)
        bwd = Implies(g.formula.right, g.formula.left)
        labels = _labels(leaf)
        l1 = _new_label(labels, None)
        g1 = Given(l1, fwd, "inference")
        g2 = Given(_new_label(labels | {l1}, None), bwd, "inference")
        child = Open(goal, leaf.givens + (g1, g2))
        return Branch(step, (_t("From "), _n(g.label), _t(", we get "),
                             _f(fwd), _t(" and "), _f(bwd), _t(".")), (child,))

    if kind == "cases":
        g = _find_given(leaf, step.given, "given")
        if not isinstance(g.formula, Or):
            raise NotApplicable("cases needs a disjunctive given")
        label = _new_label(_labels(leaf), step.label)
        kids = (Open(goal, leaf.givens + (Given(label, g.formula.left, "assumption"),)),
                Open(goal, leaf.givens + (Given(label, g.formula.right, "assumption"),)))
        headers = ((_t("Case 1: "), _f(g.formula.left), _t(".")),
                   (_t("Case 2: "), _f(g.formula.right), _t(".")))
        return Branch(step, (_t("We consider cases on "), _n(g.label), _t(".")),
                      kids, headers)

    if kind == "exists-elim":
        g = _find_given(leaf, step.given, "given")
        if not isinstance(g.formula, Exists):
            raise NotApplicable("exists-elim needs an existential given")
        name = _need(step.witness, "witness")
        if not is_var_name(name):
            raise FreshnessViolation(f"{name!r} is not a valid variable name")
        if name in _context_free(leaf):
            raise FreshnessViolation(
                f"name {name!r} already occurs free in the context")
        instantiated = substitute(g.formula.body, g.formula.var, Var(name))
        new = Given(_new_label(_labels(leaf), step.label), instantiated,
                    "instantiation")
        child = Open(goal, leaf.givens + (new,))
        return Branch(step, (_t("By "), _n(g.label), _t(", choose "), _n(name),
                             _t(" so that "), _f(instantiated), _t(".")),
                      (child,))

    if kind == "forall-elim":
        g = _find_given(leaf, step.given, "given")
        if not isinstance(g.formula, ForAll):
            raise NotApplicable("forall-elim needs a universal given")
        term = _need(step.term, "term")
        instantiated = substitute(g.formula.body, g.formula.var, term)
        new = Given(_new_label(_labels(leaf), step.label), instantiated,
                    "instantiation")
        child = Open(goal, leaf.givens + (new,))
        return Branch(step, (_t("By "), _n(g.label), _t(" applied to "),
                             _f(term), _t(", "), _f(instantiated), _t(".")),
                      (child,))

    if kind == "modus-ponens":
        g1 = _find_given(leaf, step.given, "given")
        g2 = _find_given(leaf, step.given2, "given2")
        if not isinstance(g1.formula, Implies):
            raise NotApplicable("modus-ponens needs a conditional given")
        if not alpha_eq(g2.formula, g1.formula.left):
            raise NotApplicable(
                f"given {g2.label} is not the antecedent of {g1.label}")
        new = Given(_new_label(_labels(leaf), step.label), g1.formula.right,
                    "inference")
        child = Open(goal, leaf.givens + (new,))
        return Branch(step, (_t("Since "), _n(g1.label), _t(" and "),
                             _n(g2.label), _t(", "), _f(g1.formula.right),
                             _t(".")), (child,))

    if kind == "modus-tollens":
        g1 = _find_given(leaf, step.given, "given")
        g2 = _find_given(leaf, step.given2, "given2")
        if not isinstance(g1.formula, Implies):
            raise NotApplicable("modus-tollens needs a conditional given")
        if not alpha_eq(g2.formula, Not(g1.formula.right)):
            raise NotApplicable(
                f"given {g2.label} is not the negated consequent of {g1.label}")
        new = Given(_new_label(_labels(leaf), step.label), Not(g1.formula.left),
                    "inference")
        child = Open(goal, leaf.givens + (new,))
        return Branch(step, (_t("Since "), _n(g1.label), _t(" and "),
                             _n(g2.label), _t(", "), _f(Not(g1.formula.left)),
                             _t(".")), (child,))

    if kind == "reexpress-goal":
        path = _need(step.path, "path")
        rule = _need(step.rule, "rule")
        direction = _need(step.direction, "dir")
        rewritten = apply_equivalence(goal, path, rule, direction)
        child = Open(rewritten, leaf.givens)
        return Branch(step, (_t("The goal is equivalent to "), _f(rewritten),
                             _t(".")), (child,))

    if kind == "reexpress-given":
        g = _find_given(leaf, step.given, "given")
        path = _need(step.path, "path")
        rule = _need(step.rule, "rule")
        direction = _need(step.direction, "dir")
        rewritten = apply_equivalence(g.formula, path, rule, direction)
        givens = tuple(Given(x.label, rewritten, "reexpression")
                       if x.label == g.label else x for x in leaf.givens)
        child = Open(goal, givens)
        return Branch(step, (_t("Equivalently, "), _n(g.label), _t(": "),
                             _f(rewritten), _t(".")), (child,))

    if kind == "comment":
        text = _need(step.text, "text")
        return Open(leaf.goal, leaf.givens, leaf.comments + (text,))

    raise NotApplicable(f"unknown step kind {kind!r}")


def _part_headers(left: Formula, right: Formula):
    return ((_t("Part 1: "), _f(left), _t(".")),
            (_t("Part 2: "), _f(right), _t(".")))


# -- applicability ---------------------------------------------------------


def applicable_steps(state: ProofState, goal_id: GoalId,
                     selected_given: Optional[str] = None) -> list[StepTemplate]:
    """The menu for a goal: goal-oriented actions when no given is selected,
    inferences on the selected given otherwise."""
    leaf = _open_at(state, goal_id)
    if selected_given is not None:
        g = _find_given(leaf, selected_given, "given")
        return _given_menu(leaf, g)
    return _goal_menu(leaf)


def _goal_menu(leaf: Open) -> list[StepTemplate]:
    goal = leaf.goal
    out: list[StepTemplate] = []
    match goal:
        case Implies():
            out.append(StepTemplate("suppose"))
        case ForAll():
            out.append(StepTemplate("let-arbitrary"))
        case Exists():
            out.append(StepTemplate("exhibit-witness", ("term",)))
        case And():
            out.append(StepTemplate("split-and"))
        case Iff():
            out.append(StepTemplate("split-iff"))
        case Eq():
            out.append(StepTemplate("double-inclusion"))
        case Subset():
            out.append(StepTemplate("unfold-subset-goal"))
        case Or():
            out.append(StepTemplate("prove-left"))
            out.append(StepTemplate("prove-right"))
            out.append(StepTemplate("or-to-conditional"))
        case Contradiction():
            for g1 in leaf.givens:
                for g2 in leaf.givens:
                    if g1.label != g2.label and alpha_eq(g2.formula, Not(g1.formula)):
                        out.append(StepTemplate("contradiction-close",
                                                given=g1.label, given2=g2.label))
    for g in leaf.givens:
        if alpha_eq(g.formula, goal):
            out.append(StepTemplate("conclude", given=g.label))
    out.append(StepTemplate("prove-by-contradiction"))
    out.append(StepTemplate("reexpress-goal", ("path", "rule", "dir")))
    out.append(StepTemplate("comment", ("text",)))
    return out


def _given_menu(leaf: Open, g: Given) -> list[StepTemplate]:
    out: list[StepTemplate] = []
    match g.formula:
        case And():
            out.append(StepTemplate("and-elim", given=g.label))
        case Iff():
            out.append(StepTemplate("iff-elim", given=g.label))
        case Or():
            out.append(StepTemplate("cases", given=g.label))
        case Exists():
            out.append(StepTemplate("exists-elim", ("witness",), given=g.label))
        case ForAll():
            out.append(StepTemplate("forall-elim", ("term",), given=g.label))
        case Implies(antecedent, consequent):
            for other in leaf.givens:
                if other.label != g.label and alpha_eq(other.formula, antecedent):
                    out.append(StepTemplate("modus-ponens", given=g.label,
                                            given2=other.label))
            for other in leaf.givens:
                if other.label != g.label and alpha_eq(other.formula,
                                                       Not(consequent)):
                    out.append(StepTemplate("modus-tollens", given=g.label,
                                            given2=other.label))
    out.append(StepTemplate("reexpress-given", ("path", "rule", "dir"),
                            given=g.label))
    return out
