import { afterEach, describe, expect, it, vi } from "vitest";

import { Api, ApiError } from "../src/api";
import { roleSatisfies } from "../src/actions";
import { Session, type SessionState } from "../src/session";

const STATE: SessionState = {
  token: "tok-abc",
  role: "GARDENER",
  accountId: 2,
  username: "gardener1",
};

afterEach(() => {
  sessionStorage.clear();
  vi.unstubAllGlobals();
});

describe("session store", () => {
  it("starts empty and persists set() to sessionStorage", () => {
    const session = new Session(sessionStorage);
    expect(session.current).toBeNull();
    session.set(STATE);
    expect(JSON.parse(sessionStorage.getItem("greenops.session") ?? "{}").token).toBe("tok-abc");
  });

  it("restores a stored session on construction", () => {
    new Session(sessionStorage).set(STATE);
    const revived = new Session(sessionStorage);
    expect(revived.current).toEqual(STATE);
  });

  it("discards corrupted storage instead of throwing", () => {
    sessionStorage.setItem("greenops.session", "{not json");
    const session = new Session(sessionStorage);
    expect(session.current).toBeNull();
    expect(sessionStorage.getItem("greenops.session")).toBeNull();
  });

  it("clear() wipes state and storage and notifies listeners", () => {
    const session = new Session(sessionStorage);
    session.set(STATE);
    const seen: Array<SessionState | null> = [];
    session.onChange((state) => seen.push(state));
    session.clear();
    expect(session.current).toBeNull();
    expect(sessionStorage.getItem("greenops.session")).toBeNull();
    expect(seen).toEqual([null]);
  });

  it("works with no storage at all (memory only)", () => {
    const session = new Session(null);
    session.set(STATE);
    expect(session.current?.username).toBe("gardener1");
    session.clear();
    expect(session.current).toBeNull();
  });
});

describe("401 handling", () => {
  it("clears the session before surfacing the error", async () => {
    const session = new Session(null);
    session.set(STATE);
    const api = new Api(
      "http://example.invalid",
      () => session.current?.token ?? null,
      () => session.clear(),
    );
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify({ code: "UNAUTHENTICATED", message: "token expired" }), {
          status: 401,
          headers: { "Content-Type": "application/json" },
        }),
      ),
    );
    await expect(api.listTasks()).rejects.toMatchObject({ status: 401, code: "UNAUTHENTICATED" });
    expect(session.current).toBeNull();
  });

  it("other errors leave the session alone", async () => {
    const session = new Session(null);
    session.set(STATE);
    const api = new Api(
      "http://example.invalid",
      () => session.current?.token ?? null,
      () => session.clear(),
    );
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify({ code: "FORBIDDEN", message: "requires role ADMIN" }), {
          status: 403,
          headers: { "Content-Type": "application/json" },
        }),
      ),
    );
    const failure = await api.listTasks().catch((err) => err as ApiError);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(403);
    expect((failure as ApiError).message).toBe("requires role ADMIN");
    expect(session.current).toEqual(STATE);
  });
});

describe("role lattice", () => {
  it("admin satisfies every requirement, others only their own", () => {
    expect(roleSatisfies("ADMIN", "ADMIN")).toBe(true);
    expect(roleSatisfies("ADMIN", "GARDENER")).toBe(true);
    expect(roleSatisfies("ADMIN", "SUPPLIER")).toBe(true);
    expect(roleSatisfies("GARDENER", "GARDENER")).toBe(true);
    expect(roleSatisfies("GARDENER", "ADMIN")).toBe(false);
    expect(roleSatisfies("GARDENER", "SUPPLIER")).toBe(false);
    expect(roleSatisfies("SUPPLIER", "SUPPLIER")).toBe(true);
    expect(roleSatisfies("SUPPLIER", "ADMIN")).toBe(false);
    expect(roleSatisfies("SUPPLIER", "GARDENER")).toBe(false);
  });
});
