import { Api } from "./api";
import { resolveApiBase } from "./config";
import type { AppCtx } from "./ctx";
import { Router } from "./router";
import { Session } from "./session";
import "./styles.css";

const session = new Session();
const api = new Api(
  resolveApiBase(),
  () => session.current?.token ?? null,
  () => session.clear(),
);

const ctx: AppCtx = {
  api,
  session,
  navigate: (hash: string) => {
    if (window.location.hash === hash) router.apply();
    else window.location.hash = hash;
  },
};

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
const router = new Router(root, ctx);
router.start();
