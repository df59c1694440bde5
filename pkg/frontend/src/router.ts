import { roleSatisfies } from "./actions";
import type { AppCtx } from "./ctx";
import { clear, el } from "./dom";
import { defaultRoute } from "./routes";
import type { Role } from "./types";
import { renderDashboard } from "./views/dashboard";
import { renderFeedback } from "./views/feedback";
import { renderCatalog, renderInventory } from "./views/inventory";
import { renderLogin } from "./views/login";
import { renderPlans } from "./views/plans";
import { renderPurchases } from "./views/purchases";
import { renderReview } from "./views/review";
import { renderSupplies } from "./views/supplies";
import { renderTasks } from "./views/tasks";

export interface RouteSpec {
  title: string;
  render: (root: HTMLElement, ctx: AppCtx) => void;
  /** Roles whose holders see this route; [] means any signed-in account.
   * The lattice applies, so admins pass every requirement. This guards
   * navigation only; the server independently rejects unauthorized calls.
   */
  roles: Role[];
}

export const ROUTES: Record<string, RouteSpec> = {
  "#/dashboard": { title: "Dashboard", render: renderDashboard, roles: ["ADMIN"] },
  "#/tasks": { title: "Tasks", render: renderTasks, roles: ["GARDENER"] },
  "#/review": { title: "Review", render: renderReview, roles: ["ADMIN"] },
  "#/plans": { title: "Plans", render: renderPlans, roles: ["ADMIN"] },
  "#/purchases": { title: "Purchases", render: renderPurchases, roles: ["ADMIN", "SUPPLIER"] },
  "#/supplies": { title: "Supplies", render: renderSupplies, roles: ["SUPPLIER"] },
  "#/inventory": { title: "Inventory", render: renderInventory, roles: [] },
  "#/catalog": { title: "Catalog", render: renderCatalog, roles: [] },
  "#/feedback": { title: "Feedback", render: renderFeedback, roles: [] },
};

export function routeAllowed(spec: RouteSpec, role: Role): boolean {
  return spec.roles.length === 0 || spec.roles.some((required) => roleSatisfies(role, required));
}

export class Router {
  private readonly view: HTMLElement;
  private readonly nav: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly ctx: AppCtx,
  ) {
    this.nav = el("nav", { id: "navbar" });
    this.view = el("main", { id: "view" });
    clear(root);
    root.append(this.nav, this.view);
  }

  start(): void {
    window.addEventListener("hashchange", () => this.apply());
    this.ctx.session.onChange((state) => {
      // Session loss (sign-out or a 401 from any call) drops straight
      // back to the login screen; don't wait for the hashchange event.
      if (state === null) window.location.hash = "#/login";
      this.apply();
    });
    this.apply();
  }

  apply(): void {
    const session = this.ctx.session.current;
    this.renderNav();
    if (!session) {
      renderLogin(this.view, this.ctx);
      return;
    }
    let hash = window.location.hash;
    if (!hash || hash === "#/" || hash === "#/login") hash = defaultRoute(session.role);
    const spec = ROUTES[hash];
    if (!spec) {
      this.renderMissing(hash);
      return;
    }
    if (!routeAllowed(spec, session.role)) {
      this.renderDenied(spec);
      return;
    }
    spec.render(this.view, this.ctx);
  }

  private renderNav(): void {
    const session = this.ctx.session.current;
    clear(this.nav);
    if (!session) return;
    const links = Object.entries(ROUTES)
      .filter(([, spec]) => routeAllowed(spec, session.role))
      .map(([hash, spec]) => el("a", { href: hash, class: "nav-link" }, spec.title));
    this.nav.append(
      el("span", { class: "brand" }, "greenops"),
      ...links,
      el("span", { class: "spacer" }),
      el("span", { class: "whoami" }, `${session.username} (${session.role})`),
      el(
        "button",
        { class: "secondary", id: "sign-out", onclick: () => this.ctx.session.clear() },
        "Sign out",
      ),
    );
  }

  private renderDenied(spec: RouteSpec): void {
    clear(this.view);
    this.view.append(
      el(
        "section",
        { class: "denied" },
        el("h1", {}, "Not authorized"),
        el("p", {}, `${spec.title} requires role ${spec.roles.join(" or ")}.`),
        el("a", { href: defaultRoute(this.ctx.session.current?.role ?? "GARDENER") }, "Back to home"),
      ),
    );
  }

  private renderMissing(hash: string): void {
    clear(this.view);
    this.view.append(
      el(
        "section",
        { class: "denied" },
        el("h1", {}, "Not found"),
        el("p", {}, `No view at ${hash}.`),
        el("a", { href: defaultRoute(this.ctx.session.current?.role ?? "GARDENER") }, "Back to home"),
      ),
    );
  }
}
