import { ApiError } from "../api";
import type { AppCtx } from "../ctx";
import { clear, el } from "../dom";
import { defaultRoute } from "../routes";

export function renderLogin(root: HTMLElement, ctx: AppCtx): void {
  clear(root);
  const error = el("p", { class: "error", role: "alert" });
  const username = el("input", { name: "username", autocomplete: "username" });
  const password = el("input", { name: "password", type: "password", autocomplete: "current-password" });

  const form = el(
    "form",
    {
      class: "login-form",
      onsubmit: (event) => {
        event.preventDefault();
        void submit();
      },
    },
    el("h1", {}, "Greening console"),
    el("label", {}, "Username", username),
    el("label", {}, "Password", password),
    error,
    el("button", { type: "submit" }, "Sign in"),
  );

  async function submit(): Promise<void> {
    error.textContent = "";
    try {
      const result = await ctx.api.login(username.value, password.value);
      ctx.session.set({
        token: result.token,
        role: result.account.role,
        accountId: result.account.id,
        username: result.account.username,
      });
      ctx.navigate(defaultRoute(result.account.role));
    } catch (err) {
      // The server's message is uniform for unknown user and wrong
      // password, so showing it verbatim leaks nothing.
      error.textContent = err instanceof ApiError ? err.message : "service unreachable";
    }
  }

  root.append(form);
}
