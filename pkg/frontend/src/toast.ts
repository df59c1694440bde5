import { el } from "./dom";

const TOAST_LIFETIME_MS = 4000;

/** Transient notice in the shared #toasts region (created on demand). */
export function toast(message: string, tone: "info" | "error" = "info"): void {
  let region = document.getElementById("toasts");
  if (!region) {
    region = el("div", { id: "toasts", "aria-live": "polite" });
    document.body.append(region);
  }
  const node = el("div", { class: `toast ${tone}` }, message);
  region.append(node);
  setTimeout(() => node.remove(), TOAST_LIFETIME_MS);
}
