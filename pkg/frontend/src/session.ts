import type { Role } from "./types";

export interface SessionState {
  token: string;
  role: Role;
  accountId: number;
  username: string;
}

type Listener = (state: SessionState | null) => void;

const STORAGE_KEY = "greenops.session";

function defaultStorage(): Storage | null {
  // sessionStorage survives reloads within the tab but not a browser
  // restart, so the token never reaches long-lived storage.
  try {
    return globalThis.sessionStorage ?? null;
  } catch {
    return null;
  }
}

/** Holds the authenticated session in memory, mirrored to sessionStorage
 * for reload survival. Cleared whenever the server answers 401.
 */
export class Session {
  private state: SessionState | null = null;
  private readonly listeners = new Set<Listener>();
  private readonly storage: Storage | null;

  constructor(storage?: Storage | null) {
    this.storage = storage === undefined ? defaultStorage() : storage;
    this.state = this.restore();
  }

  private restore(): SessionState | null {
    const raw = this.storage?.getItem(STORAGE_KEY);
    if (!raw) return null;
    try {
      const doc = JSON.parse(raw) as SessionState;
      if (typeof doc.token === "string" && typeof doc.role === "string") return doc;
    } catch {
      // corrupted entry: fall through and discard
    }
    this.storage?.removeItem(STORAGE_KEY);
    return null;
  }

  get current(): SessionState | null {
    return this.state;
  }

  set(state: SessionState): void {
    this.state = state;
    this.storage?.setItem(STORAGE_KEY, JSON.stringify(state));
    this.notify();
  }

  clear(): void {
    if (this.state === null && this.storage?.getItem(STORAGE_KEY) == null) return;
    this.state = null;
    this.storage?.removeItem(STORAGE_KEY);
    this.notify();
  }

  onChange(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }
}
