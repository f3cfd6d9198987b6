/** HTML builders for every panel.  All of them are pure string functions;
 * the controller assigns the results to fixed containers and reads clicks
 * back through data-* attributes. */

import type { EquivOption, StepTemplate, View } from "./api.js";
import type { EntryState, ReexpressState, Selection } from "./model.js";
import { rexCanRedo, rexCanUndo, rexCurrentHtml } from "./model.js";

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;")
    .replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

const KIND_LABELS: Record<string, string> = {
  "suppose": "Suppose the antecedent",
  "let-arbitrary": "Let the variable be arbitrary",
  "exhibit-witness": "Exhibit a witness",
  "split-and": "Prove both parts",
  "split-iff": "Prove both directions",
  "double-inclusion": "Prove by double inclusion",
  "unfold-subset-goal": "Let an arbitrary element",
  "prove-left": "Prove the left disjunct",
  "prove-right": "Prove the right disjunct",
  "or-to-conditional": "Assume the left part fails",
  "prove-by-contradiction": "Prove by contradiction",
  "conclude": "Conclude from",
  "contradiction-close": "Contradictory givens",
  "and-elim": "Split into parts",
  "iff-elim": "Split into directions",
  "cases": "Argue by cases",
  "exists-elim": "Name the asserted object",
  "forall-elim": "Apply to a term",
  "modus-ponens": "Modus ponens",
  "modus-tollens": "Modus tollens",
  "comment": "Add a comment",
};

export function kindLabel(template: StepTemplate): string {
  const base = KIND_LABELS[template.kind] ?? template.kind;
  const parts: string[] = [base];
  if (template.given) parts.push(template.given);
  if (template.given2) parts.push(`with ${template.given2}`);
  return parts.join(" ");
}


// ---- theorem entry -----------------------------------------------------------

export function renderEntry(entry: EntryState): string {
  const rows = entry.givens.map((row, i) => `
    <div class="entry-row" data-row="${i}">
      <input data-field="given" data-row="${i}" value="${esc(row.text)}"
             placeholder="given formula"/>
      <button data-action="remove-given" data-row="${i}">Remove</button>
      ${row.error ? `<span class="error">${esc(row.error)}</span>` : ""}
    </div>`).join("");
  const blocked = entry.goal.text.trim() === "" || entry.goal.error !== null
    || entry.givens.some((g) => g.error !== null);
  return `
  <section class="entry" data-dialog="entry">
    <h2>New theorem</h2>
    ${rows}
    <button data-action="add-given">Add given</button>
    <div class="entry-row">
      <input data-field="goal" value="${esc(entry.goal.text)}"
             placeholder="goal formula"/>
      ${entry.goal.error ? `<span class="error">${esc(entry.goal.error)}</span>` : ""}
    </div>
    <button data-action="create" ${blocked ? "disabled" : ""}>Start proof</button>
  </section>`;
}


// ---- toolbar -----------------------------------------------------------------

export function renderToolbar(view: View, busy: boolean): string {
  const off = (enabled: boolean) => (enabled && !busy ? "" : "disabled");
  return `
  <nav class="toolbar">
    <button data-action="auto" ${off(!view.complete)}>Auto</button>
    <button data-action="undo" ${off(view.can_undo)}>Undo</button>
    <button data-action="redo" ${off(view.can_redo)}>Redo</button>
    <button data-action="save" ${off(true)}>Save</button>
    <button data-action="load" ${off(true)}>Load</button>
    <button data-action="export-html" ${off(true)}>Export HTML</button>
    <span class="version">v${view.version}${view.complete ? " · complete" : ""}</span>
  </nav>`;
}


// ---- goals and givens ----------------------------------------------------------

export function renderGoals(view: View, selection: Selection): string {
  if (view.complete) {
    return `<section class="goals"><p class="done">No open goals.</p></section>`;
  }
  const blocks = view.open_goals.map((g) => {
    const selected = selection.goal === g.id;
    const givens = g.givens.map((gv) => `
      <li class="given ${selected && selection.given === gv.label ? "selected" : ""}"
          data-action="select-given" data-goal="${g.id}" data-given="${gv.label}">
        <span class="label">${esc(gv.label)}</span> ${gv.formula_html}
      </li>`).join("");
    return `
    <article class="goal ${selected ? "selected" : ""}" data-goal="${g.id}">
      <header data-action="select-goal" data-goal="${g.id}">
        Goal ${esc(g.id)}: ${g.goal_html}
      </header>
      <ul class="givens">${givens}</ul>
    </article>`;
  }).join("");
  return `<section class="goals">${blocks}</section>`;
}


// ---- step menus ----------------------------------------------------------------

export interface MenuModel {
  selection: Selection;
  templates: StepTemplate[];
}

function menuEntry(t: StepTemplate): string {
  if (t.kind === "reexpress-goal" || t.kind === "reexpress-given") {
    return `
    <li><button data-action="open-reexpress" data-kind="${t.kind}"
        ${t.given ? `data-given="${esc(t.given)}"` : ""}>Reexpress…</button></li>`;
  }
  const needs = t.needs.join(",");
  const given = t.given ? `data-given="${esc(t.given)}"` : "";
  const given2 = t.given2 ? `data-given2="${esc(t.given2)}"` : "";
  return `
  <li><button data-action="menu-step" data-kind="${t.kind}"
      data-needs="${needs}" ${given} ${given2}>${esc(kindLabel(t))}</button></li>`;
}

export function renderMenus(model: MenuModel, busy: boolean): string {
  if (model.selection.goal === null) {
    return `<section class="menus"><p>Select a goal.</p></section>`;
  }
  const heading = model.selection.given === null
    ? `Goal actions for ${esc(model.selection.goal)}`
    : `Infer from ${esc(model.selection.given)}`;
  const cls = model.selection.given === null ? "goal-menu" : "infer-menu";
  const items = model.templates.map(menuEntry).join("");
  return `
  <section class="menus ${busy ? "busy" : ""}">
    <h3>${heading}</h3>
    <ul class="${cls}">${items}</ul>
  </section>`;
}

/** Small follow-up form for a template that needs an argument. */
export function renderArgumentForm(kind: string, needs: string[],
                                   given: string | undefined,
                                   error: string | null): string {
  const inputs = needs.map((name) => `
    <label>${esc(name)} <input data-arg="${esc(name)}"/></label>`).join("");
  return `
  <form class="argument" data-kind="${esc(kind)}"
        ${given ? `data-given="${esc(given)}"` : ""}>
    ${inputs}
    <button data-action="apply-with-args">Apply</button>
    <button data-action="cancel-args" type="button">Cancel</button>
    ${error ? `<span class="error">${esc(error)}</span>` : ""}
  </form>`;
}


// ---- reexpress dialog ------------------------------------------------------------

export function renderReexpress(r: ReexpressState, options: EquivOption[],
                                busy: boolean): string {
  const subject = r.target === "goal"
    ? `goal ${esc(r.goalId)}` : `given ${esc(r.label ?? "")}`;
  const rows = options.map((o, i) => `
    <li><button data-action="rex-apply" data-index="${i}">
      ${esc(o.name)} (${o.direction}) → <code>${o.preview_html}</code>
    </button></li>`).join("");
  return `
  <section class="reexpress" data-dialog="reexpress">
    <h3>Reexpress ${subject}</h3>
    <p class="formula" data-role="rex-formula">${rexCurrentHtml(r)}</p>
    <p class="hint">Click a token to narrow the target; applied rules:
      ${r.cursor}/${r.steps.length}</p>
    <ul class="options">${rows}</ul>
    <button data-action="rex-undo" ${rexCanUndo(r) && !busy ? "" : "disabled"}>&lt;</button>
    <button data-action="rex-redo" ${rexCanRedo(r) && !busy ? "" : "disabled"}>&gt;</button>
    <button data-action="rex-commit" ${busy ? "disabled" : ""}>Commit</button>
    <button data-action="rex-cancel">Cancel</button>
  </section>`;
}


// ---- notices ----------------------------------------------------------------------

export function renderNotice(notice: string | null): string {
  return notice === null ? "" : `<p class="notice">${esc(notice)}</p>`;
}

export function renderOutline(view: View): string {
  return `<section class="outline">${view.outline_html}</section>`;
}
