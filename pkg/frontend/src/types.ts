/** Wire types for the greenops HTTP API.
 *
 * The view models below (TreeRow, TaskCard, PurchaseRow, SupplyRow,
 * FeedbackThread) are straight projections of API payloads. The client
 * adds no business fields and never computes state transitions locally;
 * every status shown on screen came out of a server response.
 */

export type Role = "ADMIN" | "GARDENER" | "SUPPLIER";

export type TaskStatus =
  | "PENDING"
  | "IN_PROGRESS"
  | "AWAITING_REVIEW"
  | "COMPLETED"
  | "REJECTED";

export type PurchaseStatus =
  | "PENDING"
  | "ACCEPTED"
  | "SHIPPED"
  | "DELIVERED"
  | "REJECTED";

export type HealthStatus = "HEALTHY" | "NEEDS_ATTENTION" | "SICK" | "DEAD";

export type AuditStatus = "PENDING" | "APPROVED" | "REJECTED";

export interface Account {
  id: number;
  username: string;
  role: Role;
  email: string | null;
  phone: string | null;
}

export interface LoginResult {
  token: string;
  account: Account;
}

export interface PageOf<T> {
  items: T[];
  total_count: number;
  page: number;
  page_size: number;
}

export interface SubjectRef {
  kind: "TREE" | "FLOWER" | "GREEN_SPACE";
  subject_id: number;
}

export interface TaskCard {
  id: number;
  plan_id: number;
  kind: string;
  subject: SubjectRef;
  assignee_gardener_id: number;
  scheduled_at: string;
  location: string;
  required_tools: string | null;
  status: TaskStatus;
  completion_photos: string[];
  completion_notes: string | null;
  review_comment: string | null;
  overdue: boolean;
}

export interface PlanRow {
  id: number;
  title: string;
  created_by: number;
  description: string | null;
  task_ids: number[];
}

export interface TreeRow {
  id: number;
  name: string;
  category: string;
  quantity: number;
  planting_area: string;
  health: HealthStatus;
  species_id: number | null;
  image_url: string | null;
  last_maintained_at: string | null;
}

export interface SpeciesRow {
  id: number;
  name: string;
  family: string | null;
  characteristics: string | null;
  suitable_environment: string | null;
  distribution: string[];
}

export interface PurchaseRow {
  id: number;
  resource_name: string;
  quantity: number;
  unit_price: number;
  status: PurchaseStatus;
  supplier_id: number | null;
  feedback_note: string | null;
}

export interface SupplyRow {
  id: number;
  username: string;
  real_name: string;
  phone: string;
  product_name: string;
  quantity: number;
  created_at: string;
  audit_status: AuditStatus;
}

export interface SupplyForm {
  username: string;
  real_name: string;
  phone: string;
  product_name: string;
  quantity: number;
}

export interface FeedbackReply {
  admin_id: number;
  text: string;
  at: string;
}

export interface FeedbackThread {
  id: number;
  title: string;
  content: string;
  submitter_id: number;
  created_at: string;
  reply: FeedbackReply | null;
}

export interface GardenerRow {
  id: number;
  name: string;
  phone: string;
  hire_date: string;
  account_id: number;
  email: string | null;
  responsible_area: string | null;
}
