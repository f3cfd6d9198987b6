"""An interactive structured proof assistant for elementary set theory.

Build proofs of set-theoretic theorems step by step: goal-oriented moves,
inferences from givens, and re-expression of subformulas by definitional and
logical equivalences, with unlimited undo/redo, XML persistence, HTML export,
a command-line driver, and an HTTP/JSON service.
"""

from .errors import (
    ArgumentMissing, CategoryMismatch, FreshnessViolation, InvalidPath,
    InvalidTheorem, MalformedXml, NotApplicable, NothingToRedo, NothingToUndo,
    ParseError, ProofError, ReplayFailure, RuleNotApplicable, SchemaViolation,
    UnboundVariable, UnknownGiven, UnknownGoal, UnknownRule,
)
from .formulas import (
    And, Contradiction, Diff, EmptySet, Eq, Exists, ExistsUnique, FamInter,
    FamUnion, ForAll, Formula, Iff, Implies, In, Inter, Not, Or, Pow, Subset,
    Term, Union, Var, all_var_names, alpha_eq, free_vars, fresh_var,
    replace_at, subformula_at, substitute,
)
from .parser import parse, parse_term
from .render import render
from .reexpress import (
    CATALOG, EquivRule, ReexpressSession, applicable_equivalences,
    apply_equivalence, rex_apply, rex_open, rex_redo, rex_result, rex_undo,
)
from .kernel import (
    Given, ProofState, StepDescriptor, StepTemplate, applicable_steps,
    apply_step, is_complete, new_proof, open_goals,
)
from .outline import render_outline
from .auto import auto_run, auto_step
from .oracle import FiniteModel, assignments, evaluate, holds, universe
from .history import History
from .session import (
    Session, export_html, load_session, save_session, session_do, session_new,
    session_redo, session_undo,
)

__version__ = "0.1.0"
