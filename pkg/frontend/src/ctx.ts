import type { Api } from "./api";
import type { Session } from "./session";

/** Everything a view needs: the API client, the session, and navigation. */
export interface AppCtx {
  api: Api;
  session: Session;
  navigate: (hash: string) => void;
}
