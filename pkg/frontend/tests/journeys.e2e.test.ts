import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Api } from "../src/api";
import type { AppCtx } from "../src/ctx";
import { Router } from "../src/router";
import { Session } from "../src/session";
import {
  CREDENTIALS,
  rawGet,
  rawToken,
  startServer,
  type LiveServer,
} from "./helpers/server";
import { byName, click, setValue, submit, waitFor } from "./helpers/ui";

// Full user journeys through the rendered console against a live seeded
// backend: every mutation here goes through a form or button, and every
// assertion about stored state goes through the raw API as the oracle.

let server: LiveServer;
let ctx: AppCtx;

const PNG_BYTES = new Uint8Array([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, ...new Array(64).fill(0)]);

beforeAll(async () => {
  server = await startServer();
}, 60_000);

afterAll(async () => {
  await server?.stop();
});

function mountApp(): void {
  document.body.innerHTML = '<div id="app"></div>';
  window.location.hash = "";
  const session = new Session(null);
  const api = new Api(server.base, () => session.current?.token ?? null, () => session.clear());
  const root = document.getElementById("app")!;
  const appCtx: AppCtx = {
    api,
    session,
    navigate: (hash) => {
      if (window.location.hash === hash) router.apply();
      else window.location.hash = hash;
    },
  };
  const router = new Router(root, appCtx);
  router.start();
  ctx = appCtx;
}

async function loginAs(who: keyof typeof CREDENTIALS): Promise<void> {
  const form = await waitFor(
    () => document.querySelector<HTMLFormElement>("form.login-form"),
    "login form",
  );
  setValue(byName(form, "username"), CREDENTIALS[who].username);
  setValue(byName(form, "password"), CREDENTIALS[who].password);
  submit(form);
  await waitFor(() => ctx.session.current, `session for ${who}`);
}

async function signOut(): Promise<void> {
  const button = await waitFor(() => document.querySelector("#sign-out"), "sign-out button");
  click(button);
  await waitFor(() => document.querySelector(".login-form"), "login screen after sign-out");
}

async function goTo(hash: string, probe: () => Element | null, what: string): Promise<void> {
  ctx.navigate(hash);
  await waitFor(probe, what);
}

function taskCard(id: number): HTMLElement | null {
  return document.querySelector<HTMLElement>(`[data-task-id="${id}"]`);
}

function cardActions(card: ParentNode): string[] {
  return Array.from(card.querySelectorAll<HTMLElement>(".actions [data-action]")).map(
    (node) => node.dataset.action ?? "",
  );
}

describe("gardener accepts and completes a task; admin reviews", () => {
  let taskId: number;

  it("admin authors a plan and task through the console", async () => {
    mountApp();
    await loginAs("admin");
    await goTo("#/plans", () => document.querySelector("form.plan-create"), "plan composer");

    const planForm = document.querySelector<HTMLFormElement>("form.plan-create")!;
    setValue(byName(planForm, "title"), "Willow Revival");
    setValue(byName(planForm, "description"), "Storm recovery for the lakeside willows");
    submit(planForm);

    const planCard = await waitFor(() => {
      for (const card of document.querySelectorAll<HTMLElement>("[data-plan-id]")) {
        if (card.textContent?.includes("Willow Revival")) return card;
      }
      return null;
    }, "new plan card");

    const taskForm = planCard.querySelector<HTMLFormElement>("form.task-create")!;
    byName<HTMLSelectElement>(taskForm, "kind").value = "PRUNING";
    byName<HTMLSelectElement>(taskForm, "subject_kind").value = "TREE";
    setValue(byName(taskForm, "subject_id"), "1");
    setValue(byName(taskForm, "assignee_gardener_id"), "1");
    setValue(byName(taskForm, "scheduled_at"), "2026-09-02T08:00:00+00:00");
    setValue(byName(taskForm, "location"), "Lakeside");
    submit(taskForm);

    const updated = await waitFor(() => {
      for (const card of document.querySelectorAll<HTMLElement>("[data-plan-id]")) {
        if (!card.textContent?.includes("Willow Revival")) continue;
        const ids = card.querySelector(".task-ids")?.textContent ?? "";
        const match = ids.match(/tasks: (\d+)/);
        if (match) return match[1];
      }
      return null;
    }, "task id on the plan card");
    taskId = Number(updated);
    expect(taskId).toBeGreaterThan(1); // task 1 is seeded
  });

  it("the gardener sees the pending card with only Accept offered", async () => {
    await signOut();
    await loginAs("gardener");
    await waitFor(() => taskCard(taskId), "assigned task on the board");
    const card = taskCard(taskId)!;
    expect(card.dataset.status).toBe("PENDING");
    expect(cardActions(card)).toEqual(["accept"]);
  });

  it("accepting moves the card to IN_PROGRESS with only Complete offered", async () => {
    click(taskCard(taskId)!.querySelector('[data-action="accept"]')!);
    await waitFor(() => taskCard(taskId)?.dataset.status === "IN_PROGRESS", "IN_PROGRESS card");
    expect(cardActions(taskCard(taskId)!)).toEqual(["complete"]);
  });

  it("the completion form uploads the photo and submits the evidence", async () => {
    const card = taskCard(taskId)!;
    click(card.querySelector('[data-action="complete"]')!);
    const form = card.querySelector<HTMLFormElement>("form.completion-form")!;
    expect(form.classList.contains("hidden")).toBe(false);

    const photo = new File([PNG_BYTES], "evidence.png", { type: "image/png" });
    Object.defineProperty(byName(form, "photos"), "files", { value: [photo] });
    setValue(byName<HTMLTextAreaElement>(form, "notes"), "Pruned dead branches, cleared the path.");
    submit(form);

    await waitFor(() => taskCard(taskId)?.dataset.status === "AWAITING_REVIEW", "AWAITING_REVIEW card");
    expect(cardActions(taskCard(taskId)!)).toEqual([]);

    const admin = await rawToken(server.base, "admin");
    const stored = await rawGet(server.base, admin, `/api/tasks/${taskId}`);
    expect(stored.status).toBe("AWAITING_REVIEW");
    expect(stored.completion_photos).toHaveLength(1);
    expect(stored.completion_photos[0]).toMatch(/^\/uploads\//);
    expect(stored.completion_notes).toBe("Pruned dead branches, cleared the path.");
  });

  it("the admin review queue shows the evidence and approval completes the task", async () => {
    await signOut();
    await loginAs("admin");
    await goTo("#/review", () => document.querySelector("#review-list"), "review queue");

    const card = await waitFor(() => taskCard(taskId), "card in the review queue");
    const evidence = card.querySelector<HTMLImageElement>("img.evidence");
    expect(evidence?.src).toContain("/uploads/");
    expect(card.textContent).toContain("Pruned dead branches");

    setValue(byName(card, "comment"), "Good work.");
    click(card.querySelector('[data-action="approve"]')!);
    await waitFor(() => taskCard(taskId) === null, "card to leave the queue");
    // the seeded board has no other completed work, so the queue empties
    await waitFor(() => document.querySelector("#review-list .empty"), "empty state");

    const admin = await rawToken(server.base, "admin");
    const stored = await rawGet(server.base, admin, `/api/tasks/${taskId}`);
    expect(stored.status).toBe("COMPLETED");
    expect(stored.review_comment).toBe("Good work.");
    const subject = await rawGet(server.base, admin, "/api/trees/1");
    expect(subject.last_maintained_at).not.toBeNull();
  });
});

describe("admin-initiated purchase moves through the pipeline to delivery", () => {
  let purchaseId: number;

  function purchaseCard(): HTMLElement | null {
    for (const card of document.querySelectorAll<HTMLElement>("[data-purchase-id]")) {
      if (card.textContent?.includes("Mulch")) return card;
    }
    return null;
  }

  function currentStep(card: HTMLElement): string | undefined {
    return card.querySelector<HTMLElement>(".stepper li.current")?.dataset.step;
  }

  it("admin creates the order; it starts PENDING with accept and reject offered", async () => {
    mountApp();
    await loginAs("admin");
    await goTo("#/purchases", () => document.querySelector("form.purchase-create"), "purchase form");

    const form = document.querySelector<HTMLFormElement>("form.purchase-create")!;
    setValue(byName(form, "resource_name"), "Mulch");
    setValue(byName(form, "quantity"), "30");
    setValue(byName(form, "unit_price"), "500");
    submit(form);

    const card = await waitFor(purchaseCard, "new purchase row");
    purchaseId = Number(card.dataset.purchaseId);
    expect(card.dataset.status).toBe("PENDING");
    expect(currentStep(card)).toBe("PENDING");
    // the lattice admits the admin to the supplier's accept as well
    expect(cardActions(card)).toEqual(["accept", "reject"]);
  });

  it("the supplier accepts and ships", async () => {
    await signOut();
    await loginAs("supplier");
    await goTo("#/purchases", () => document.querySelector("#purchase-list"), "purchase list");

    let card = await waitFor(purchaseCard, "purchase row for the supplier");
    expect(cardActions(card)).toEqual(["accept"]);
    click(card.querySelector('[data-action="accept"]')!);
    await waitFor(() => purchaseCard()?.dataset.status === "ACCEPTED", "ACCEPTED row");
    card = purchaseCard()!;
    expect(currentStep(card)).toBe("ACCEPTED");
    expect(cardActions(card)).toEqual(["ship"]);

    click(card.querySelector('[data-action="ship"]')!);
    await waitFor(() => purchaseCard()?.dataset.status === "SHIPPED", "SHIPPED row");
    expect(cardActions(purchaseCard()!)).toEqual([]);

    const admin = await rawToken(server.base, "admin");
    const stored = await rawGet(server.base, admin, `/api/purchases/${purchaseId}`);
    expect(stored.status).toBe("SHIPPED");
    expect(stored.supplier_id).toBe(1); // stamped when the supplier accepted
  });

  it("the admin confirms delivery and records feedback", async () => {
    await signOut();
    await loginAs("admin");
    await goTo("#/purchases", () => document.querySelector("#purchase-list"), "purchase list");

    let card = await waitFor(purchaseCard, "shipped purchase row");
    expect(cardActions(card)).toEqual(["deliver"]);
    click(card.querySelector('[data-action="deliver"]')!);
    await waitFor(() => purchaseCard()?.dataset.status === "DELIVERED", "DELIVERED row");
    card = purchaseCard()!;
    expect(currentStep(card)).toBe("DELIVERED");

    const feedbackForm = card.querySelector<HTMLFormElement>("form.feedback-form")!;
    setValue(byName(feedbackForm, "note"), "Arrived intact.");
    submit(feedbackForm);
    await waitFor(
      () => purchaseCard()?.querySelector(".feedback-note")?.textContent === "Arrived intact.",
      "feedback note on the row",
    );

    const admin = await rawToken(server.base, "admin");
    const stored = await rawGet(server.base, admin, `/api/purchases/${purchaseId}`);
    expect(stored.status).toBe("DELIVERED");
    expect(stored.feedback_note).toBe("Arrived intact.");
  });
});

describe("supply desk", () => {
  it("a duplicate pending phone shows the server message verbatim", async () => {
    mountApp();
    await loginAs("supplier");
    const form = await waitFor(
      () => document.querySelector<HTMLFormElement>("form.supply-form"),
      "supply form",
    );
    setValue(byName(form, "real_name"), "Liu Yang");
    setValue(byName(form, "phone"), "13900000001"); // the seeded application is still pending
    setValue(byName(form, "product_name"), "Twine");
    setValue(byName(form, "quantity"), "5");
    submit(form);

    await waitFor(
      () =>
        form.querySelector(".error")?.textContent ===
        "There is already a pending application for this cell phone number.",
      "verbatim duplicate-phone error",
    );
  });

  it("a fresh phone files the application and the admin audit approves it", async () => {
    const form = document.querySelector<HTMLFormElement>("form.supply-form")!;
    setValue(byName(form, "phone"), "13911112222");
    setValue(byName(form, "product_name"), "Twine");
    submit(form);

    const card = await waitFor(() => {
      for (const node of document.querySelectorAll<HTMLElement>("[data-supply-id]")) {
        if (node.textContent?.includes("Twine x5")) return node;
      }
      return null;
    }, "new supply card");
    expect(card.dataset.audit).toBe("PENDING");
    const supplyId = Number(card.dataset.supplyId);

    await signOut();
    await loginAs("admin");
    await goTo("#/supplies", () => document.querySelector("#supply-list"), "supply list");
    const adminCard = await waitFor(
      () => document.querySelector<HTMLElement>(`[data-supply-id="${supplyId}"]`),
      "supply card for the admin",
    );
    click(adminCard.querySelector('[data-action="approve"]')!);
    await waitFor(
      () =>
        document.querySelector<HTMLElement>(`[data-supply-id="${supplyId}"]`)?.dataset.audit ===
        "APPROVED",
      "approved badge",
    );
  });
});
