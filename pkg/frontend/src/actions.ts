import type { PurchaseStatus, Role, TaskStatus } from "./types";

/** One offerable action: its wire verb, button label, and the role the
 * server demands for it.
 */
export interface ActionSpec {
  readonly action: string;
  readonly label: string;
  readonly role: Role;
}

/** ADMIN satisfies every requirement; the other roles only their own.
 * Mirrors the server's role lattice exactly; kept here only to decide
 * what to draw. The server re-checks every call.
 */
export function roleSatisfies(actual: Role, required: Role): boolean {
  return actual === "ADMIN" || actual === required;
}

/** Status -> actions table for maintenance tasks. Buttons are offered
 * from this table alone; the client never reasons about transitions
 * beyond it, and a stale button click is answered by the server with a
 * 409, never applied locally.
 */
export const TASK_STATUS_ACTIONS: Record<TaskStatus, readonly ActionSpec[]> = {
  PENDING: [{ action: "accept", label: "Accept", role: "GARDENER" }],
  IN_PROGRESS: [{ action: "complete", label: "Complete", role: "GARDENER" }],
  AWAITING_REVIEW: [
    { action: "approve", label: "Approve", role: "ADMIN" },
    { action: "reject", label: "Reject", role: "ADMIN" },
  ],
  COMPLETED: [],
  REJECTED: [],
};

/** Status -> actions table for purchase applications. */
export const PURCHASE_STATUS_ACTIONS: Record<PurchaseStatus, readonly ActionSpec[]> = {
  PENDING: [
    { action: "accept", label: "Accept", role: "SUPPLIER" },
    { action: "reject", label: "Reject", role: "ADMIN" },
  ],
  ACCEPTED: [{ action: "ship", label: "Mark shipped", role: "SUPPLIER" }],
  SHIPPED: [{ action: "deliver", label: "Confirm delivery", role: "ADMIN" }],
  DELIVERED: [{ action: "feedback", label: "Add feedback", role: "ADMIN" }],
  REJECTED: [],
};

/** Stepper order for the purchase pipeline; REJECTED renders as a
 * terminal badge instead of a step.
 */
export const PURCHASE_STEPS: readonly PurchaseStatus[] = [
  "PENDING",
  "ACCEPTED",
  "SHIPPED",
  "DELIVERED",
];

export function actionsFor<S extends string>(
  table: Record<S, readonly ActionSpec[]>,
  status: S,
  role: Role,
): ActionSpec[] {
  return table[status].filter((spec) => roleSatisfies(role, spec.role));
}
