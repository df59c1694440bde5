import { ApiError } from "../api";
import { roleSatisfies } from "../actions";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { SequenceGate } from "../seq";
import type { TreeRow } from "../types";

const PAGE_SIZE = 10;

/** Tree inventory: keyword search, paged table, and (for admins) a quick
 * add form. Search responses are sequence-gated, so a slow stale query
 * can never overwrite the latest keystroke's results.
 */
export function renderInventory(root: HTMLElement, ctx: AppCtx): void {
  const role = ctx.session.current?.role ?? "GARDENER";
  const gate = new SequenceGate();
  let page = 1;
  clear(root);

  const keyword = el("input", {
    name: "keyword",
    placeholder: "Search trees",
    oninput: () => {
      page = 1;
      void load();
    },
  });
  const tbody = el("tbody", {});
  const pageLabel = el("span", { class: "page-label" }, "");
  const prev = el("button", { class: "secondary", onclick: () => void turn(-1) }, "Prev");
  const next = el("button", { class: "secondary", onclick: () => void turn(1) }, "Next");
  const status = el("p", { class: "empty", id: "inventory-status" }, "");

  root.append(
    el("header", { class: "page-head" }, el("h1", {}, "Tree inventory"), keyword),
    el(
      "table",
      { class: "data-table", id: "tree-table" },
      el(
        "thead",
        {},
        el(
          "tr",
          {},
          ...["Name", "Category", "Qty", "Area", "Health"].map((h) => el("th", {}, h)),
        ),
      ),
      tbody,
    ),
    status,
    el("div", { class: "pager" }, prev, pageLabel, next),
  );

  if (roleSatisfies(role, "ADMIN")) {
    const name = el("input", { name: "name", placeholder: "Name" });
    const category = el("input", { name: "category", placeholder: "Category" });
    const quantity = el("input", { name: "quantity", type: "number", min: "1", value: "1" });
    const area = el("input", { name: "planting_area", placeholder: "Planting area" });
    const error = el("p", { class: "error", role: "alert" });
    root.append(
      el(
        "form",
        {
          class: "inline-form tree-create",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              error.textContent = "";
              try {
                await ctx.api.createTree({
                  name: name.value,
                  category: category.value,
                  quantity: Number(quantity.value),
                  planting_area: area.value,
                });
                name.value = "";
                await load();
              } catch (err) {
                error.textContent = err instanceof ApiError ? err.message : String(err);
              }
            })();
          },
        },
        name,
        category,
        quantity,
        area,
        el("button", { type: "submit" }, "Add tree"),
        error,
      ),
    );
  }

  let totalCount = 0;

  async function turn(direction: number): Promise<void> {
    const lastPage = Math.max(1, Math.ceil(totalCount / PAGE_SIZE));
    page = Math.min(Math.max(1, page + direction), lastPage);
    await load();
  }

  function row(tree: TreeRow): HTMLElement {
    return el(
      "tr",
      { "data-tree-id": String(tree.id) },
      el("td", {}, tree.name),
      el("td", {}, tree.category),
      el("td", {}, String(tree.quantity)),
      el("td", {}, tree.planting_area),
      el("td", {}, el("span", { class: `badge health-${tree.health.toLowerCase()}` }, tree.health)),
    );
  }

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let result;
    try {
      result = await ctx.api.listTrees({
        keyword: keyword.value || undefined,
        page,
        pageSize: PAGE_SIZE,
      });
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      status.textContent = err instanceof ApiError ? err.message : String(err);
      status.className = "error banner";
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    totalCount = result.total_count;
    clear(tbody);
    for (const tree of result.items) tbody.append(row(tree));
    status.className = "empty";
    status.textContent = result.items.length === 0 ? "No trees match." : "";
    pageLabel.textContent = `page ${result.page} of ${Math.max(1, Math.ceil(totalCount / PAGE_SIZE))}`;
  }

  void load();
}

/** Species catalog search for suppliers (any signed-in role may read). */
export function renderCatalog(root: HTMLElement, ctx: AppCtx): void {
  const gate = new SequenceGate();
  clear(root);
  const keyword = el("input", {
    name: "keyword",
    placeholder: "Search species",
    oninput: () => void load(),
  });
  const list = el("div", { class: "cards", id: "species-list" });
  root.append(el("header", { class: "page-head" }, el("h1", {}, "Species catalog"), keyword), list);

  async function load(): Promise<void> {
    const ticket = gate.begin();
    let result;
    try {
      result = await ctx.api.searchSpecies(keyword.value || undefined);
    } catch (err) {
      if (!gate.isCurrent(ticket)) return;
      clear(list);
      list.append(el("p", { class: "error banner" }, err instanceof ApiError ? err.message : String(err)));
      return;
    }
    if (!gate.isCurrent(ticket)) return;
    clear(list);
    if (result.items.length === 0) {
      list.append(el("p", { class: "empty" }, "No species match."));
      return;
    }
    for (const species of result.items) {
      list.append(
        el(
          "article",
          { class: "card species", "data-species-id": String(species.id) },
          el("header", {}, el("strong", {}, species.name), el("span", { class: "meta" }, species.family ?? "")),
          species.characteristics ? el("p", { class: "meta" }, species.characteristics) : null,
          species.suitable_environment ? el("p", { class: "meta" }, species.suitable_environment) : null,
        ),
      );
    }
  }

  void load();
}
