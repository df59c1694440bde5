import type { Role } from "./types";

/** Landing route per role: admins get the management dashboard,
 * gardeners their task board, suppliers the supply desk.
 */
export function defaultRoute(role: Role): string {
  switch (role) {
    case "ADMIN":
      return "#/dashboard";
    case "GARDENER":
      return "#/tasks";
    case "SUPPLIER":
      return "#/supplies";
  }
}
