/** Controller: owns the UiState, talks to the API, and re-renders fixed
 * containers.  All user gestures arrive through event delegation on the
 * root element, so the DOM can be replaced wholesale on every render. */

import { ApiClient, ApiError } from "./api.js";
import type { EquivOption, StepTemplate, View } from "./api.js";
import {
  initialState, rexApply, rexCommitted, rexCurrent, rexOpen, rexRedo,
  rexUndo, selectGiven, selectGoal, withView,
} from "./model.js";
import type { AppliedRule, UiState } from "./model.js";
import {
  renderArgumentForm, renderEntry, renderGoals, renderMenus, renderNotice,
  renderOutline, renderReexpress, renderToolbar,
} from "./render.js";

export interface AppHooks {
  /** Deliver a file to the user (Save / Export HTML). */
  download(filename: string, text: string, mime: string): void;
  /** Ask the user for a file's text (Load); null cancels. */
  pickFile(): Promise<string | null>;
}

interface ArgumentForm {
  kind: string;
  needs: string[];
  given?: string;
  given2?: string;
  error: string | null;
}

function browserDownload(filename: string, text: string, mime: string): void {
  const blob = new Blob([text], { type: mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

function browserPickFile(): Promise<string | null> {
  return new Promise((resolve) => {
    const input = document.createElement("input");
    input.type = "file";
    input.addEventListener("change", () => {
      const file = input.files && input.files[0];
      if (!file) return resolve(null);
      file.text().then(resolve, () => resolve(null));
    });
    input.click();
  });
}

export class ProofApp {
  state: UiState = initialState();

  private readonly root: HTMLElement;
  private readonly api: ApiClient;
  private readonly hooks: AppHooks;
  private menuTemplates: StepTemplate[] = [];
  private rexOptions: EquivOption[] = [];
  private argForm: ArgumentForm | null = null;
  private queue: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, api: ApiClient, hooks?: Partial<AppHooks>) {
    this.root = root;
    this.api = api;
    this.hooks = {
      download: hooks?.download ?? browserDownload,
      pickFile: hooks?.pickFile ?? browserPickFile,
    };
  }

  mount(): void {
    this.root.addEventListener("click", (ev) => this.onClick(ev));
    this.root.addEventListener("input", (ev) => this.onInput(ev));
    const sid = (window.location.hash || "").replace(/^#/, "");
    if (sid) {
      this.enqueue(async () => {
        try {
          const view = await this.api.view(sid);
          this.state = withView({ ...this.state, sessionId: sid, dialog: null }, view);
          await this.refreshMenus();
        } catch {
          this.state.notice = "session not found; starting fresh";
        }
      });
    }
    this.render();
  }

  /** Resolves when every queued handler has finished; tests await this. */
  settle(): Promise<void> {
    return this.queue;
  }

  private enqueue(work: () => Promise<void>): void {
    this.queue = this.queue
      .then(work)
      .catch((err) => {
        this.state.notice = err instanceof Error ? err.message : String(err);
      })
      .then(() => this.render());
  }

  // ---- rendering -------------------------------------------------------------

  private render(): void {
    const s = this.state;
    const parts: string[] = [renderNotice(s.notice)];
    if (s.dialog === "entry" || s.view === null) {
      parts.push(renderEntry(s.entry));
    } else {
      parts.push(renderToolbar(s.view, s.busy));
      parts.push(renderOutline(s.view));
      parts.push(renderGoals(s.view, s.selection));
      if (s.dialog === "reexpress" && s.reexpress) {
        parts.push(renderReexpress(s.reexpress, this.rexOptions, s.busy));
      } else {
        parts.push(renderMenus(
          { selection: s.selection, templates: this.menuTemplates }, s.busy));
        if (this.argForm) {
          parts.push(renderArgumentForm(this.argForm.kind, this.argForm.needs,
                                        this.argForm.given, this.argForm.error));
        }
      }
    }
    this.root.innerHTML = parts.join("\n");
  }

  // ---- event plumbing ----------------------------------------------------------

  private onClick(ev: Event): void {
    const target = ev.target as HTMLElement | null;
    if (!target) return;
    const pathEl = target.closest<HTMLElement>("[data-path]");
    if (pathEl && this.state.dialog === "reexpress"
        && pathEl.closest("[data-role='rex-formula']")) {
      ev.preventDefault();
      const raw = pathEl.getAttribute("data-path") ?? "";
      const path = raw === "" ? [] : raw.split(".").map(Number);
      this.enqueue(() => this.rexSelectPath(path));
      return;
    }
    const el = target.closest<HTMLElement>("[data-action]");
    if (!el) return;
    ev.preventDefault();
    this.dispatch(el);
  }

  private dispatch(el: HTMLElement): void {
    const action = el.getAttribute("data-action")!;
    const data = (name: string) => el.getAttribute(`data-${name}`) ?? undefined;
    switch (action) {
      case "add-given":
        this.state.entry.givens.push({ text: "", error: null });
        return this.render();
      case "remove-given":
        this.state.entry.givens.splice(Number(data("row")), 1);
        return this.render();
      case "create":
        return this.enqueue(() => this.createSession());
      case "select-goal":
        this.state = selectGoal(this.state, data("goal")!);
        this.argForm = null;
        return this.enqueue(() => this.refreshMenus());
      case "select-given":
        this.state = selectGoal(this.state, data("goal")!);
        this.state = selectGiven(this.state, data("given")!);
        this.argForm = null;
        return this.enqueue(() => this.refreshMenus());
      case "menu-step": {
        const needs = (data("needs") ?? "").split(",").filter(Boolean);
        const kind = data("kind")!;
        const given = data("given");
        const given2 = data("given2");
        if (needs.length === 0) {
          return this.enqueue(() => this.applyStep(kind, given, given2, {}));
        }
        this.argForm = { kind, needs, given, given2, error: null };
        return this.render();
      }
      case "apply-with-args": {
        const form = el.closest("form");
        const args: Record<string, string> = {};
        form?.querySelectorAll<HTMLInputElement>("[data-arg]").forEach((inp) => {
          args[inp.getAttribute("data-arg")!] = inp.value;
        });
        const { kind, given, given2 } = this.argForm!;
        return this.enqueue(() => this.applyStep(kind, given, given2, args));
      }
      case "cancel-args":
        this.argForm = null;
        return this.render();
      case "open-reexpress":
        return this.enqueue(() => this.openReexpress(data("kind")!, data("given")));
      case "rex-apply":
        return this.enqueue(() => this.rexApplyOption(Number(data("index"))));
      case "rex-undo":
        return this.enqueue(async () => {
          this.state.reexpress = rexUndo(this.state.reexpress!);
          await this.rexSelectPath([]);
        });
      case "rex-redo":
        return this.enqueue(async () => {
          this.state.reexpress = rexRedo(this.state.reexpress!);
          await this.rexSelectPath([]);
        });
      case "rex-commit":
        return this.enqueue(() => this.rexCommit());
      case "rex-cancel":
        this.state = { ...this.state, dialog: null, reexpress: null };
        return this.render();
      case "auto":
        return this.enqueue(() => this.autoStep());
      case "undo":
        return this.enqueue(() => this.historyStep("undo"));
      case "redo":
        return this.enqueue(() => this.historyStep("redo"));
      case "save":
        return this.enqueue(async () => {
          const xml = await this.api.exportXml(this.state.sessionId!);
          this.hooks.download(`proof-${this.state.sessionId}.xml`, xml,
                              "application/xml");
        });
      case "export-html":
        return this.enqueue(async () => {
          const html = await this.api.exportHtml(this.state.sessionId!);
          this.hooks.download(`proof-${this.state.sessionId}.html`, html,
                              "text/html");
        });
      case "load":
        return this.enqueue(() => this.loadFromFile());
      default:
        return;
    }
  }

  private onInput(ev: Event): void {
    const el = ev.target as HTMLInputElement | null;
    if (!el || this.state.dialog !== "entry") return;
    const field = el.getAttribute("data-field");
    if (field === "goal") {
      this.state.entry.goal.text = el.value;
      this.enqueue(() => this.validateEntryRow(this.state.entry.goal));
    } else if (field === "given") {
      const row = this.state.entry.givens[Number(el.getAttribute("data-row"))];
      if (!row) return;
      row.text = el.value;
      this.enqueue(() => this.validateEntryRow(row));
    }
  }

  // ---- flows ---------------------------------------------------------------------

  private async validateEntryRow(row: { text: string; error: string | null }):
      Promise<void> {
    if (row.text.trim() === "") {
      row.error = null;
      return;
    }
    try {
      await this.api.parse(row.text);
      row.error = null;
    } catch (err) {
      if (err instanceof ApiError && err.error === "ParseError") {
        row.error = err.offset === undefined
          ? err.message : `at ${err.offset}: ${err.message}`;
      } else {
        throw err;
      }
    }
  }

  private async createSession(): Promise<void> {
    const givens = this.state.entry.givens
      .map((g) => g.text.trim()).filter((t) => t !== "");
    try {
      const created = await this.api.createSession(
        this.state.entry.goal.text.trim(), givens);
      this.state = withView(
        { ...this.state, sessionId: created.id, dialog: null, notice: null },
        created.view);
      window.location.hash = created.id;
      await this.refreshMenus();
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.notice = err.message;
        return;
      }
      throw err;
    }
  }

  private installView(view: View): Promise<void> {
    this.state = withView(this.state, view);
    this.argForm = null;
    return this.refreshMenus();
  }

  private async refreshMenus(): Promise<void> {
    const { goal, given } = this.state.selection;
    if (this.state.sessionId === null || goal === null) {
      this.menuTemplates = [];
      return;
    }
    // the endpoint already splits the menus: goal actions without the given
    // parameter, inferences from that given with it
    this.menuTemplates = await this.api.steps(this.state.sessionId, goal,
                                              given ?? undefined);
  }

  /** One mutating request at a time; every error converges the view. */
  private async mutate<T>(work: () => Promise<T>,
                          onResult: (result: T) => Promise<void>): Promise<void> {
    if (this.state.busy || this.state.sessionId === null) return;
    this.state.busy = true;
    this.render();
    try {
      const result = await work();
      await onResult(result);
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.notice = `${err.error}: ${err.message}`;
        if (err.status === 409) {
          await this.installView(await this.api.view(this.state.sessionId));
        }
      } else {
        throw err;
      }
    } finally {
      this.state.busy = false;
    }
  }

  private applyStep(kind: string, given: string | undefined,
                    given2: string | undefined,
                    args: Record<string, string>): Promise<void> {
    const step: Record<string, string> = { kind, ...args };
    if (given) step.given = given;
    if (given2) step.given2 = given2;
    return this.mutate(
      () => this.api.applyStep(this.state.sessionId!, this.state.view!.version,
                               this.state.selection.goal!, step),
      async (result) => {
        this.state.notice = null;
        await this.installView(result.view);
      },
    ).then(() => {
      // a parse error in an argument keeps the form open for another try
      if (this.argForm && this.state.notice !== null) {
        this.argForm.error = this.state.notice;
      }
    });
  }

  private async autoStep(): Promise<void> {
    const goal = this.state.selection.goal
      ?? this.state.view!.open_goals[0]?.id;
    if (goal === undefined) {
      this.state.notice = "no open goal";
      return;
    }
    await this.mutate(
      () => this.api.auto(this.state.sessionId!, this.state.view!.version, goal),
      async (result) => {
        this.state.notice = null;
        await this.installView(result.view);
      },
    );
  }

  private historyStep(which: "undo" | "redo"): Promise<void> {
    const call = which === "undo"
      ? () => this.api.undo(this.state.sessionId!, this.state.view!.version)
      : () => this.api.redo(this.state.sessionId!, this.state.view!.version);
    return this.mutate(call, async (view) => {
      this.state.notice = null;
      await this.installView(view);
    });
  }

  private async loadFromFile(): Promise<void> {
    const text = await this.hooks.pickFile();
    if (text === null) return;
    await this.mutate(
      () => this.api.importXml(text),
      async (created) => {
        this.state = withView(
          { ...this.state, sessionId: created.id, dialog: null, notice: null },
          created.view);
        window.location.hash = created.id;
        await this.refreshMenus();
      },
    );
  }

  // ---- reexpress dialog -------------------------------------------------------------

  private findSelectedFormula(kind: string, given: string | undefined):
      { text: string; html: string } | null {
    const goal = this.state.view!.open_goals
      .find((g) => g.id === this.state.selection.goal);
    if (!goal) return null;
    if (kind === "reexpress-goal") {
      return { text: goal.goal, html: goal.goal_html };
    }
    const gv = goal.givens.find((g) => g.label === given);
    return gv ? { text: gv.formula, html: gv.formula_html } : null;
  }

  private async openReexpress(kind: string, given: string | undefined):
      Promise<void> {
    const subject = this.findSelectedFormula(kind, given);
    if (!subject || this.state.selection.goal === null) return;
    this.state.reexpress = rexOpen(
      kind === "reexpress-goal" ? "goal" : "given",
      this.state.selection.goal, given ?? null, subject.text, subject.html);
    this.state.dialog = "reexpress";
    await this.rexSelectPath([]);
  }

  private async rexSelectPath(path: number[]): Promise<void> {
    const r = this.state.reexpress;
    if (!r) return;
    const result = await this.api.equivalences(rexCurrent(r), path);
    this.state.reexpress = { ...r, path: result.path };
    this.rexOptions = result.options;
  }

  private async rexApplyOption(index: number): Promise<void> {
    const r = this.state.reexpress;
    const option = this.rexOptions[index];
    if (!r || !option) return;
    const applied: AppliedRule = {
      path: r.path,
      rule: option.rule,
      direction: option.direction,
      result: option.preview,
      resultHtml: option.preview_html,
    };
    this.state.reexpress = rexApply(r, applied);
    await this.rexSelectPath([]);
  }

  /** Post one reexpress step per applied rule, chasing the goal id as each
   * step opens the restated child goal. */
  private async rexCommit(): Promise<void> {
    const r = this.state.reexpress;
    if (!r) return;
    const steps = rexCommitted(r);
    this.state.dialog = null;
    this.state.reexpress = null;
    if (steps.length === 0) return this.render();
    const kind = r.target === "goal" ? "reexpress-goal" : "reexpress-given";
    await this.mutate(
      async () => {
        let goalId = r.goalId;
        let view = this.state.view!;
        for (const step of steps) {
          const payload: Record<string, string> = {
            kind,
            path: step.path.join("."),
            rule: step.rule,
            dir: step.direction,
          };
          if (r.label) payload.given = r.label;
          const result = await this.api.applyStep(
            this.state.sessionId!, view.version, goalId, payload);
          view = result.view;
          const child = view.open_goals.find((g) => g.id.startsWith(goalId));
          if (!child) break;
          goalId = child.id;
        }
        return view;
      },
      async (view) => {
        this.state.notice = null;
        await this.installView(view);
      },
    );
  }
}
