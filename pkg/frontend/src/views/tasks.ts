import { ApiError } from "../api";
import { actionsFor, TASK_STATUS_ACTIONS } from "../actions";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { fileBytes } from "../files";
import { SequenceGate } from "../seq";
import { toast } from "../toast";
import type { Role, TaskCard } from "../types";

export const STALE_STATE_NOTICE = "state changed, refresh";

export interface TaskHandlers {
  onAction: (action: string, task: TaskCard) => void;
  onSubmitCompletion: (task: TaskCard, files: Blob[], notes: string, error: HTMLElement) => void;
}

/** One task as a card. Buttons come from the status->actions table,
 * filtered by the viewer's role; what each click does is decided by the
 * server and nothing else.
 */
export function taskCardElement(task: TaskCard, role: Role, handlers: TaskHandlers): HTMLElement {
  const actions = el("div", { class: "actions" });
  for (const spec of actionsFor(TASK_STATUS_ACTIONS, task.status, role)) {
    actions.append(
      el(
        "button",
        { "data-action": spec.action, onclick: () => handlers.onAction(spec.action, task) },
        spec.label,
      ),
    );
  }

  const card = el(
    "article",
    { class: "card task", "data-task-id": String(task.id), "data-status": task.status },
    el(
      "header",
      {},
      el("strong", {}, `#${task.id} ${task.kind}`),
      el("span", { class: `badge status-${task.status.toLowerCase()}` }, task.status),
      task.overdue ? el("span", { class: "badge overdue" }, "OVERDUE") : null,
    ),
    el(
      "p",
      { class: "meta" },
      `${task.subject.kind} #${task.subject.subject_id} at ${task.location} - due ${task.scheduled_at}`,
    ),
    task.required_tools ? el("p", { class: "meta" }, `Tools: ${task.required_tools}`) : null,
    task.review_comment ? el("p", { class: "review-comment" }, `Reviewer: ${task.review_comment}`) : null,
    actions,
  );

  if (task.status === "IN_PROGRESS") {
    card.append(completionForm(task, handlers));
  }
  return card;
}

/** Completion evidence form, shown under an IN_PROGRESS card once the
 * gardener clicks Complete. Photos are uploaded first; the completion
 * call then references the stored paths.
 */
function completionForm(task: TaskCard, handlers: TaskHandlers): HTMLElement {
  const photos = el("input", { type: "file", accept: "image/*", multiple: true, name: "photos" });
  const notes = el("textarea", { name: "notes", placeholder: "What was done?" });
  const error = el("p", { class: "error", role: "alert" });
  const form = el(
    "form",
    {
      class: "completion-form hidden",
      onsubmit: (event) => {
        event.preventDefault();
        const files = photos.files ? Array.from(photos.files) : [];
        handlers.onSubmitCompletion(task, files, notes.value, error);
      },
    },
    el("label", {}, "Completion photos", photos),
    el("label", {}, "Notes", notes),
    error,
    el("button", { type: "submit" }, "Submit for review"),
  );
  return form;
}

export function renderTasks(root: HTMLElement, ctx: AppCtx): void {
  const role = ctx.session.current?.role ?? "GARDENER";
  const gate = new SequenceGate();
  clear(root);

  const list = el("div", { class: "cards", id: "task-list" });
  const signIn = el(
    "button",
    {
      class: "secondary",
      id: "attendance-button",
      onclick: () => {
        void (async () => {
          try {
            const record = await ctx.api.signInAttendance();
            toast(`Signed in for ${record.sign_in_date}`);
          } catch (err) {
            toast(err instanceof ApiError ? err.message : String(err), "error");
          }
        })();
      },
    },
    "Sign attendance",
  );
  root.append(el("header", { class: "page-head" }, el("h1", {}, "Task board"), signIn), list);

  const handlers: TaskHandlers = {
    onAction: (action, task) => {
      if (action === "complete") {
        // reveal the evidence form on this card; no server call yet
        const card = list.querySelector(`[data-task-id="${task.id}"]`);
        card?.querySelector(".completion-form")?.classList.toggle("hidden");
        return;
      }
      void (async () => {
        try {
          if (action === "accept") await ctx.api.acceptTask(task.id);
          else if (action === "approve") await ctx.api.reviewTask(task.id, true);
          else if (action === "reject") await ctx.api.reviewTask(task.id, false);
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) toast(STALE_STATE_NOTICE, "error");
          else toast(err instanceof ApiError ? err.message : String(err), "error");
        }
        await load();
      })();
    },
    onSubmitCompletion: (task, files, notes, error) => {
      void (async () => {
        error.textContent = "";
        try {
          if (files.length === 0) {
            error.textContent = "attach at least one photo";
            return;
          }
          const paths: string[] = [];
          for (const file of files) {
            const name = file instanceof File ? file.name : "photo.png";
            const uploaded = await ctx.api.uploadPhoto(await fileBytes(file), name, file.type);
            paths.push(uploaded.path);
          }
          await ctx.api.completeTask(task.id, paths, notes);
          await load();
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            toast(STALE_STATE_NOTICE, "error");
            await load();
          } else {
            error.textContent = err instanceof ApiError ? err.message : String(err);
          }
        }
      })();
    },
  };

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listTasks();
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No tasks assigned."));
      return;
    }
    for (const task of page.items) list.append(taskCardElement(task, role, handlers));
  }

  void load();
}
