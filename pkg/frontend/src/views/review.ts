import { ApiError } from "../api";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import { toast } from "../toast";
import { STALE_STATE_NOTICE } from "./tasks";
import type { TaskCard } from "../types";

/** Admin review queue: every AWAITING_REVIEW task with its evidence
 * photos, an optional comment, and approve/reject. Decisions round-trip
 * through the review endpoint and the queue re-reads the server's truth;
 * a concurrent decision elsewhere surfaces as a conflict toast.
 */
export function renderReview(root: HTMLElement, ctx: AppCtx): void {
  const gate = new SequenceGate();
  clear(root);
  const list = el("div", { class: "cards", id: "review-list" });
  root.append(el("header", { class: "page-head" }, el("h1", {}, "Review queue")), list);

  function reviewCard(task: TaskCard): HTMLElement {
    const comment = el("input", { name: "comment", placeholder: "Review comment (optional)" });
    const decide = (approve: boolean) => {
      void (async () => {
        try {
          await ctx.api.reviewTask(task.id, approve, comment.value || undefined);
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) toast(STALE_STATE_NOTICE, "error");
          else toast(err instanceof ApiError ? err.message : String(err), "error");
        }
        await load();
      })();
    };
    return el(
      "article",
      { class: "card review", "data-task-id": String(task.id) },
      el(
        "header",
        {},
        el("strong", {}, `#${task.id} ${task.kind}`),
        el("span", { class: "meta" }, `${task.subject.kind} #${task.subject.subject_id} at ${task.location}`),
      ),
      el(
        "div",
        { class: "photos" },
        ...task.completion_photos.map((path) =>
          el("img", { src: ctx.api.url(path), alt: "completion photo", class: "evidence" }),
        ),
      ),
      el("p", { class: "notes" }, task.completion_notes ?? ""),
      comment,
      el(
        "div",
        { class: "actions" },
        el("button", { "data-action": "approve", onclick: () => decide(true) }, "Approve"),
        el("button", { "data-action": "reject", class: "danger", onclick: () => decide(false) }, "Reject"),
      ),
    );
  }

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listTasks({ status: "AWAITING_REVIEW" });
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "Nothing awaiting review."));
      return;
    }
    for (const task of page.items) list.append(reviewCard(task));
  }

  void load();
}
