import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";

const MENU: ReadonlyArray<{ hash: string; title: string; blurb: string }> = [
  { hash: "#/purchases", title: "Purchases", blurb: "Create orders and confirm deliveries" },
  { hash: "#/plans", title: "Plans", blurb: "Author maintenance plans and tasks" },
  { hash: "#/review", title: "Review", blurb: "Approve or reject completed work" },
  { hash: "#/inventory", title: "Inventory", blurb: "Trees on the books" },
  { hash: "#/supplies", title: "Supplies", blurb: "Audit supplier applications" },
  { hash: "#/feedback", title: "Feedback", blurb: "Answer staff reports" },
];

/** Admin landing page: one card per management area. */
export function renderDashboard(root: HTMLElement, _ctx: AppCtx): void {
  clear(root);
  root.append(
    el("header", { class: "page-head" }, el("h1", {}, "Management dashboard")),
    el(
      "div",
      { class: "cards menu" },
      ...MENU.map((entry) =>
        el(
          "a",
          { class: "card menu-card", href: entry.hash, "data-menu": entry.hash },
          el("strong", {}, entry.title),
          el("p", { class: "meta" }, entry.blurb),
        ),
      ),
    ),
  );
}
