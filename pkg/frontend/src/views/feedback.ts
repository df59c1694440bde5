import { ApiError } from "../api";
import { roleSatisfies } from "../actions";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import { toast } from "../toast";
import type { FeedbackThread } from "../types";

/** Feedback threads: gardeners and suppliers file them, admins reply.
 * The list shows what the server scopes to the caller.
 */
export function renderFeedback(root: HTMLElement, ctx: AppCtx): void {
  const role = ctx.session.current?.role ?? "GARDENER";
  const gate = new SequenceGate();
  clear(root);

  const list = el("div", { class: "cards", id: "feedback-list" });
  root.append(el("header", { class: "page-head" }, el("h1", {}, "Feedback")), list);

  if (role !== "ADMIN") {
    const title = el("input", { name: "title", placeholder: "Title" });
    const content = el("textarea", { name: "content", placeholder: "Describe the issue" });
    const error = el("p", { class: "error", role: "alert" });
    root.insertBefore(
      el(
        "form",
        {
          class: "inline-form feedback-create",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              error.textContent = "";
              try {
                await ctx.api.createFeedback(title.value, content.value);
                title.value = "";
                content.value = "";
                await load();
              } catch (err) {
                error.textContent = err instanceof ApiError ? err.message : String(err);
              }
            })();
          },
        },
        title,
        content,
        el("button", { type: "submit" }, "Submit feedback"),
        error,
      ),
      list,
    );
  }

  function thread(item: FeedbackThread): HTMLElement {
    const card = el(
      "article",
      { class: "card feedback", "data-feedback-id": String(item.id) },
      el("header", {}, el("strong", {}, item.title), el("span", { class: "meta" }, item.created_at)),
      el("p", {}, item.content),
      item.reply ? el("p", { class: "reply" }, `Reply: ${item.reply.text}`) : null,
    );
    if (roleSatisfies(role, "ADMIN") && !item.reply) {
      const text = el("input", { name: "text", placeholder: "Reply" });
      card.append(
        el(
          "form",
          {
            class: "inline-form reply-form",
            onsubmit: (event) => {
              event.preventDefault();
              void (async () => {
                try {
                  await ctx.api.replyFeedback(item.id, text.value);
                  await load();
                } catch (err) {
                  toast(err instanceof ApiError ? err.message : String(err), "error");
                }
              })();
            },
          },
          text,
          el("button", { type: "submit" }, "Send"),
        ),
      );
    }
    return card;
  }

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listFeedback();
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No feedback yet."));
      return;
    }
    for (const item of page.items) list.append(thread(item));
  }

  void load();
}
