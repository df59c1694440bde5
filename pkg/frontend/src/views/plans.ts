import { ApiError } from "../api";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import type { PlanRow } from "../types";

const TASK_KINDS = ["WATERING", "FERTILIZING", "PRUNING", "PEST_CONTROL", "MOWING"];
const SUBJECT_KINDS = ["TREE", "FLOWER", "GREEN_SPACE"];

/** Maintenance plans with an inline task composer per plan. */
export function renderPlans(root: HTMLElement, ctx: AppCtx): void {
  const gate = new SequenceGate();
  clear(root);

  const list = el("div", { class: "cards", id: "plan-list" });
  const title = el("input", { name: "title", placeholder: "Plan title" });
  const description = el("input", { name: "description", placeholder: "Description" });
  const createError = el("p", { class: "error", role: "alert" });
  root.append(
    el("header", { class: "page-head" }, el("h1", {}, "Maintenance plans")),
    el(
      "form",
      {
        class: "inline-form plan-create",
        onsubmit: (event) => {
          event.preventDefault();
          void (async () => {
            createError.textContent = "";
            try {
              await ctx.api.createPlan(title.value, description.value || undefined);
              title.value = "";
              description.value = "";
              await load();
            } catch (err) {
              createError.textContent = err instanceof ApiError ? err.message : String(err);
            }
          })();
        },
      },
      title,
      description,
      el("button", { type: "submit" }, "Create plan"),
      createError,
    ),
    list,
  );

  function select(name: string, options: string[]): HTMLSelectElement {
    return el("select", { name }, ...options.map((value) => el("option", { value }, value)));
  }

  function taskComposer(plan: PlanRow): HTMLElement {
    const kind = select("kind", TASK_KINDS);
    const subjectKind = select("subject_kind", SUBJECT_KINDS);
    const subjectId = el("input", { name: "subject_id", type: "number", min: "1", value: "1" });
    const assignee = el("input", { name: "assignee_gardener_id", type: "number", min: "1", value: "1" });
    const scheduledAt = el("input", { name: "scheduled_at", placeholder: "2026-09-01T08:00:00+00:00" });
    const location = el("input", { name: "location", placeholder: "Location" });
    const error = el("p", { class: "error", role: "alert" });
    return el(
      "form",
      {
        class: "inline-form task-create",
        onsubmit: (event) => {
          event.preventDefault();
          void (async () => {
            error.textContent = "";
            try {
              await ctx.api.createTask(plan.id, {
                kind: kind.value,
                subject_kind: subjectKind.value,
                subject_id: Number(subjectId.value),
                assignee_gardener_id: Number(assignee.value),
                scheduled_at: scheduledAt.value,
                location: location.value,
              });
              await load();
            } catch (err) {
              error.textContent = err instanceof ApiError ? err.message : String(err);
            }
          })();
        },
      },
      kind,
      subjectKind,
      subjectId,
      assignee,
      scheduledAt,
      location,
      el("button", { type: "submit" }, "Add task"),
      error,
    );
  }

  function planCard(plan: PlanRow): HTMLElement {
    return el(
      "article",
      { class: "card plan", "data-plan-id": String(plan.id) },
      el(
        "header",
        {},
        el("strong", {}, `#${plan.id} ${plan.title}`),
        el("span", { class: "meta task-ids" }, `tasks: ${plan.task_ids.join(", ") || "none"}`),
      ),
      plan.description ? el("p", { class: "meta" }, plan.description) : null,
      taskComposer(plan),
    );
  }

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listPlans();
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No plans yet."));
      return;
    }
    for (const plan of page.items) list.append(planCard(plan));
  }

  void load();
}
