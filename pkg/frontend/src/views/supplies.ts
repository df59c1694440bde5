import { ApiError } from "../api";
import { roleSatisfies } from "../actions";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import { toast } from "../toast";
import type { SupplyRow } from "../types";

/** Supply desk. Suppliers file applications (the server enforces one
 * pending application per phone number; its message is shown verbatim)
 * and see their own history. Admins see every application and audit the
 * pending ones.
 */
export function renderSupplies(root: HTMLElement, ctx: AppCtx): void {
  const session = ctx.session.current;
  const role = session?.role ?? "SUPPLIER";
  const gate = new SequenceGate();
  clear(root);

  const list = el("div", { class: "cards", id: "supply-list" });
  root.append(el("header", { class: "page-head" }, el("h1", {}, "Supply desk")), list);

  if (role === "SUPPLIER") {
    const realName = el("input", { name: "real_name", placeholder: "Real name" });
    const phone = el("input", { name: "phone", placeholder: "Phone" });
    const product = el("input", { name: "product_name", placeholder: "Product" });
    const quantity = el("input", { name: "quantity", type: "number", min: "1", value: "1" });
    const error = el("p", { class: "error", role: "alert" });
    const form = el(
      "form",
      {
        class: "inline-form supply-form",
        onsubmit: (event) => {
          event.preventDefault();
          void (async () => {
            error.textContent = "";
            try {
              await ctx.api.submitSupply({
                username: session?.username ?? "",
                real_name: realName.value,
                phone: phone.value,
                product_name: product.value,
                quantity: Number(quantity.value),
              });
              product.value = "";
              toast("Application submitted");
              await load();
            } catch (err) {
              error.textContent = err instanceof ApiError ? err.message : String(err);
            }
          })();
        },
      },
      realName,
      phone,
      product,
      quantity,
      el("button", { type: "submit" }, "Submit application"),
      error,
    );
    root.insertBefore(form, list);
  }

  function supplyCard(row: SupplyRow): HTMLElement {
    const actions = el("div", { class: "actions" });
    if (roleSatisfies(role, "ADMIN") && row.audit_status === "PENDING") {
      const audit = (approve: boolean) => {
        void (async () => {
          try {
            await ctx.api.auditSupply(row.id, approve);
          } catch (err) {
            toast(err instanceof ApiError ? err.message : String(err), "error");
          }
          await load();
        })();
      };
      actions.append(
        el("button", { "data-action": "approve", onclick: () => audit(true) }, "Approve"),
        el("button", { "data-action": "reject", class: "danger", onclick: () => audit(false) }, "Reject"),
      );
    }
    return el(
      "article",
      { class: "card supply", "data-supply-id": String(row.id), "data-audit": row.audit_status },
      el(
        "header",
        {},
        el("strong", {}, `${row.product_name} x${row.quantity}`),
        el("span", { class: `badge audit-${row.audit_status.toLowerCase()}` }, row.audit_status),
      ),
      el("p", { class: "meta" }, `${row.real_name} (${row.username}) - ${row.phone}`),
      actions,
    );
  }

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let page;
    try {
      page = await ctx.api.listSupplies();
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (page.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No supply applications."));
      return;
    }
    for (const row of page.items) list.append(supplyCard(row));
  }

  void load();
}
