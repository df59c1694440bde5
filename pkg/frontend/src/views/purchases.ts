import { ApiError } from "../api";
import { actionsFor, PURCHASE_STATUS_ACTIONS, PURCHASE_STEPS, roleSatisfies } from "../actions";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import { toast } from "../toast";
import type { PurchaseRow, Role } from "../types";

export interface PurchaseHandlers {
  onAction: (action: string, purchase: PurchaseRow) => void;
  onFeedback: (purchase: PurchaseRow, note: string) => void;
}

/** Pipeline position as a stepper; a REJECTED application renders a
 * terminal badge instead.
 */
function stepper(row: PurchaseRow): HTMLElement {
  if (row.status === "REJECTED") {
    return el("span", { class: "badge rejected", "data-status": "REJECTED" }, "REJECTED");
  }
  const position = PURCHASE_STEPS.indexOf(row.status);
  const steps = PURCHASE_STEPS.map((step, index) =>
    el(
      "li",
      {
        class: index < position ? "done" : index === position ? "current" : "",
        "data-step": step,
      },
      step,
    ),
  );
  return el("ol", { class: "stepper" }, ...steps);
}

export function purchaseRowElement(row: PurchaseRow, role: Role, handlers: PurchaseHandlers): HTMLElement {
  const actions = el("div", { class: "actions" });
  for (const spec of actionsFor(PURCHASE_STATUS_ACTIONS, row.status, role)) {
    if (spec.action === "feedback") {
      const note = el("input", { name: "note", placeholder: "Feedback note" });
      actions.append(
        el(
          "form",
          {
            class: "feedback-form",
            onsubmit: (event) => {
              event.preventDefault();
              handlers.onFeedback(row, note.value);
            },
          },
          note,
          el("button", { type: "submit", "data-action": "feedback" }, spec.label),
        ),
      );
    } else {
      actions.append(
        el(
          "button",
          { "data-action": spec.action, onclick: () => handlers.onAction(spec.action, row) },
          spec.label,
        ),
      );
    }
  }
  return el(
    "article",
    { class: "card purchase", "data-purchase-id": String(row.id), "data-status": row.status },
    el(
      "header",
      {},
      el("strong", {}, `#${row.id} ${row.resource_name}`),
      el("span", { class: "meta" }, `x${row.quantity} @ ${row.unit_price}`),
    ),
    stepper(row),
    row.feedback_note ? el("pre", { class: "feedback-note" }, row.feedback_note) : null,
    actions,
  );
}

export function renderPurchases(root: HTMLElement, ctx: AppCtx): void {
  const role = ctx.session.current?.role ?? "SUPPLIER";
  const gate = new SequenceGate();
  clear(root);

  const list = el("div", { class: "cards", id: "purchase-list" });
  const head = el("header", { class: "page-head" }, el("h1", {}, "Purchase orders"));
  root.append(head, list);

  if (roleSatisfies(role, "ADMIN")) {
    const name = el("input", { name: "resource_name", placeholder: "Resource" });
    const quantity = el("input", { name: "quantity", type: "number", min: "1", value: "1" });
    const price = el("input", { name: "unit_price", type: "number", min: "0", value: "0" });
    const error = el("p", { class: "error", role: "alert" });
    head.append(
      el(
        "form",
        {
          class: "inline-form purchase-create",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              error.textContent = "";
              try {
                await ctx.api.createPurchase(name.value, Number(quantity.value), Number(price.value));
                name.value = "";
                await load();
              } catch (err) {
                error.textContent = err instanceof ApiError ? err.message : String(err);
              }
            })();
          },
        },
        name,
        quantity,
        price,
        el("button", { type: "submit" }, "Create order"),
        error,
      ),
    );
  }

  const STATUS_BY_ACTION: Record<string, "ACCEPTED" | "REJECTED" | "SHIPPED" | "DELIVERED"> = {
    accept: "ACCEPTED",
    reject: "REJECTED",
    ship: "SHIPPED",
    deliver: "DELIVERED",
  };

  const handlers: PurchaseHandlers = {
    onAction: (action, purchase) => {
      const target = STATUS_BY_ACTION[action];
      if (!target) return;
      void (async () => {
        try {
          await ctx.api.setPurchaseStatus(purchase.id, target);
        } catch (err) {
          toast(err instanceof ApiError ? err.message : String(err), "error");
        }
        await load();
      })();
    },
    onFeedback: (purchase, note) => {
      void (async () => {
        try {
          await ctx.api.purchaseFeedback(purchase.id, note);
        } catch (err) {
          toast(err instanceof ApiError ? err.message : String(err), "error");
        }
        await load();
      })();
    },
  };

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listPurchases();
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No purchase orders."));
      return;
    }
    for (const row of page.items) list.append(purchaseRowElement(row, role, handlers));
  }

  void load();
}
