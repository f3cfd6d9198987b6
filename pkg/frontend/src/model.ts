/** Pure view-model: what is selected, which dialog is open, and the
 * reexpress dialog's own linear history.  No proof logic lives here; every
 * formula string and menu entry comes from the server. */

import type { View } from "./api.js";

export interface Selection {
  goal: string | null;
  given: string | null;
}

export interface AppliedRule {
  path: number[];
  rule: string;
  direction: "forward" | "backward";
  /** server-rendered formula after this application */
  result: string;
  resultHtml: string;
}

export interface ReexpressState {
  target: "goal" | "given";
  goalId: string;
  /** given label when target is "given" */
  label: string | null;
  /** ascii text of the formula the dialog opened on */
  original: string;
  originalHtml: string;
  steps: AppliedRule[];
  /** number of steps currently in effect; < and > move this */
  cursor: number;
  /** selected subformula path within the current formula */
  path: number[];
}

export interface EntryRow {
  text: string;
  error: string | null;
}

export interface EntryState {
  goal: EntryRow;
  givens: EntryRow[];
}

export type Dialog = "entry" | "reexpress" | null;

export interface UiState {
  sessionId: string | null;
  view: View | null;
  selection: Selection;
  dialog: Dialog;
  entry: EntryState;
  reexpress: ReexpressState | null;
  notice: string | null;
  /** one mutating request at a time; controls disable while true */
  busy: boolean;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    view: null,
    selection: { goal: null, given: null },
    dialog: "entry",
    entry: { goal: { text: "", error: null }, givens: [] },
    reexpress: null,
    notice: null,
    busy: false,
  };
}

/** Install a fresh server view, dropping any selection it no longer
 * supports. */
export function withView(state: UiState, view: View): UiState {
  let { goal, given } = state.selection;
  const node = view.open_goals.find((g) => g.id === goal);
  if (!node) {
    goal = view.open_goals.length === 1 ? view.open_goals[0].id : null;
    given = null;
  } else if (given !== null && !node.givens.some((g) => g.label === given)) {
    given = null;
  }
  return { ...state, view, selection: { goal, given } };
}

export function selectGoal(state: UiState, id: string): UiState {
  if (state.selection.goal === id) return state;
  return { ...state, selection: { goal: id, given: null } };
}

/** Toggle a given under the selected goal. */
export function selectGiven(state: UiState, label: string): UiState {
  if (state.selection.goal === null) return state;
  const given = state.selection.given === label ? null : label;
  return { ...state, selection: { ...state.selection, given } };
}


// ---- reexpress dialog history ------------------------------------------------

export function rexOpen(target: "goal" | "given", goalId: string,
                        label: string | null, formula: string,
                        html: string): ReexpressState {
  return {
    target, goalId, label,
    original: formula, originalHtml: html,
    steps: [], cursor: 0, path: [],
  };
}

export function rexCurrent(r: ReexpressState): string {
  return r.cursor === 0 ? r.original : r.steps[r.cursor - 1].result;
}

export function rexCurrentHtml(r: ReexpressState): string {
  return r.cursor === 0 ? r.originalHtml : r.steps[r.cursor - 1].resultHtml;
}

export function rexCanUndo(r: ReexpressState): boolean {
  return r.cursor > 0;
}

export function rexCanRedo(r: ReexpressState): boolean {
  return r.cursor < r.steps.length;
}

/** Apply a rule: truncates any redo tail, like any linear history. */
export function rexApply(r: ReexpressState, step: AppliedRule): ReexpressState {
  const steps = r.steps.slice(0, r.cursor).concat([step]);
  return { ...r, steps, cursor: steps.length, path: [] };
}

export function rexUndo(r: ReexpressState): ReexpressState {
  return rexCanUndo(r) ? { ...r, cursor: r.cursor - 1, path: [] } : r;
}

export function rexRedo(r: ReexpressState): ReexpressState {
  return rexCanRedo(r) ? { ...r, cursor: r.cursor + 1, path: [] } : r;
}

/** The steps a Commit will post, in order. */
export function rexCommitted(r: ReexpressState): AppliedRule[] {
  return r.steps.slice(0, r.cursor);
}
