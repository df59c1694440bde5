import type {
  FeedbackThread,
  GardenerRow,
  LoginResult,
  PageOf,
  PlanRow,
  PurchaseRow,
  PurchaseStatus,
  SpeciesRow,
  SupplyForm,
  SupplyRow,
  TaskCard,
  TreeRow,
} from "./types";

/** A non-2xx response, carrying the server's error body verbatim. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type Query = Record<string, string | number | undefined>;

/** Thin client over the HTTP/JSON API.
 *
 * All authority lives on the server: the client attaches the bearer token
 * and reports what came back. A 401 on any call invokes
 * `onUnauthenticated` (the session is cleared and the UI returns to the
 * login screen) before the error propagates.
 */
export class Api {
  constructor(
    readonly base: string = "",
    private readonly token: () => string | null = () => null,
    private readonly onUnauthenticated: () => void = () => {},
  ) {}

  url(path: string): string {
    return this.base + path;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
    raw?: { contentType: string; payload: Uint8Array },
  ): Promise<unknown> {
    const headers: Record<string, string> = {};
    const token = this.token();
    if (token) headers["Authorization"] = `Bearer ${token}`;
    let payload: BodyInit | undefined;
    if (raw) {
      headers["Content-Type"] = raw.contentType;
      // lib.dom's BodyInit does not admit ArrayBufferLike-backed views
      payload = raw.payload as unknown as BodyInit;
    } else if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    const response = await fetch(this.url(path), { method, headers, body: payload });
    if (response.status === 204) return null;
    let doc: Record<string, unknown> = {};
    try {
      doc = (await response.json()) as Record<string, unknown>;
    } catch {
      // non-JSON bodies fall through to the generic error below
    }
    if (!response.ok) {
      if (response.status === 401) this.onUnauthenticated();
      throw new ApiError(
        response.status,
        String(doc.code ?? "ERROR"),
        String(doc.message ?? response.statusText),
      );
    }
    return doc;
  }

  private get(path: string, query?: Query): Promise<unknown> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query ?? {})) {
      if (value !== undefined) params.set(key, String(value));
    }
    const encoded = params.toString();
    return this.request("GET", encoded ? `${path}?${encoded}` : path);
  }

  // -- auth ------------------------------------------------------------

  async login(username: string, password: string): Promise<LoginResult> {
    return (await this.request("POST", "/api/auth/login", { username, password })) as LoginResult;
  }

  async me(): Promise<{ account: LoginResult["account"]; profile: unknown }> {
    return (await this.get("/api/auth/me")) as { account: LoginResult["account"]; profile: unknown };
  }

  // -- maintenance -----------------------------------------------------

  async listTasks(query?: Query): Promise<PageOf<TaskCard>> {
    return (await this.get("/api/tasks", query)) as PageOf<TaskCard>;
  }

  async acceptTask(id: number): Promise<TaskCard> {
    return (await this.request("POST", `/api/tasks/${id}/accept`)) as TaskCard;
  }

  async completeTask(id: number, photos: string[], notes: string): Promise<TaskCard> {
    return (await this.request("POST", `/api/tasks/${id}/complete`, { photos, notes })) as TaskCard;
  }

  async reviewTask(id: number, approve: boolean, comment?: string): Promise<TaskCard> {
    return (await this.request("POST", `/api/tasks/${id}/review`, { approve, comment })) as TaskCard;
  }

  async listPlans(query?: Query): Promise<PageOf<PlanRow>> {
    return (await this.get("/api/plans", query)) as PageOf<PlanRow>;
  }

  async createPlan(title: string, description?: string): Promise<PlanRow> {
    return (await this.request("POST", "/api/plans", { title, description })) as PlanRow;
  }

  async createTask(
    planId: number,
    task: {
      kind: string;
      subject_kind: string;
      subject_id: number;
      assignee_gardener_id: number;
      scheduled_at: string;
      location: string;
      required_tools?: string;
    },
  ): Promise<TaskCard> {
    return (await this.request("POST", `/api/plans/${planId}/tasks`, task)) as TaskCard;
  }

  async listGardeners(): Promise<PageOf<GardenerRow>> {
    return (await this.get("/api/gardeners")) as PageOf<GardenerRow>;
  }

  // -- uploads ---------------------------------------------------------

  /** Multipart upload of one file under the field name "file".
   *
   * The body is assembled by hand instead of through FormData so the
   * same code path runs in browsers and under test DOMs whose File
   * implementation the fetch stack cannot serialize.
   */
  async uploadPhoto(bytes: Uint8Array, filename: string, contentType: string): Promise<{ path: string }> {
    const boundary = `----greenops-${Date.now().toString(16)}-${Math.random().toString(16).slice(2)}`;
    const encoder = new TextEncoder();
    const head = encoder.encode(
      `--${boundary}\r\n` +
        `Content-Disposition: form-data; name="file"; filename="${filename.split('"').join("")}"\r\n` +
        `Content-Type: ${contentType || "application/octet-stream"}\r\n\r\n`,
    );
    const tail = encoder.encode(`\r\n--${boundary}--\r\n`);
    const payload = new Uint8Array(head.length + bytes.length + tail.length);
    payload.set(head, 0);
    payload.set(bytes, head.length);
    payload.set(tail, head.length + bytes.length);
    return (await this.request("POST", "/api/uploads", undefined, {
      contentType: `multipart/form-data; boundary=${boundary}`,
      payload,
    })) as { path: string };
  }

  // -- purchases -------------------------------------------------------

  async listPurchases(query?: Query): Promise<PageOf<PurchaseRow>> {
    return (await this.get("/api/purchases", query)) as PageOf<PurchaseRow>;
  }

  async createPurchase(resourceName: string, quantity: number, unitPrice: number): Promise<PurchaseRow> {
    return (await this.request("POST", "/api/purchases", {
      resource_name: resourceName,
      quantity,
      unit_price: unitPrice,
    })) as PurchaseRow;
  }

  async setPurchaseStatus(id: number, status: PurchaseStatus): Promise<PurchaseRow> {
    return (await this.request("PUT", `/api/purchases/${id}/status`, { status })) as PurchaseRow;
  }

  async purchaseFeedback(id: number, note: string): Promise<PurchaseRow> {
    return (await this.request("POST", `/api/purchases/${id}/feedback`, { note })) as PurchaseRow;
  }

  // -- supplies --------------------------------------------------------

  async listSupplies(query?: Query): Promise<PageOf<SupplyRow>> {
    return (await this.get("/api/supplies", query)) as PageOf<SupplyRow>;
  }

  async submitSupply(form: SupplyForm): Promise<SupplyRow> {
    return (await this.request("POST", "/api/supplies", form)) as SupplyRow;
  }

  async auditSupply(id: number, approve: boolean): Promise<SupplyRow> {
    return (await this.request("POST", `/api/supplies/${id}/audit`, { approve })) as SupplyRow;
  }

  // -- inventory -------------------------------------------------------

  async listTrees(query?: Query): Promise<PageOf<TreeRow>> {
    return (await this.get("/api/trees", query)) as PageOf<TreeRow>;
  }

  async createTree(tree: {
    name: string;
    category: string;
    quantity: number;
    planting_area: string;
  }): Promise<TreeRow> {
    return (await this.request("POST", "/api/trees", tree)) as TreeRow;
  }

  async searchSpecies(keyword?: string): Promise<PageOf<SpeciesRow>> {
    return (await this.get("/api/species", keyword ? { keyword } : undefined)) as PageOf<SpeciesRow>;
  }

  // -- feedback & attendance --------------------------------------------

  async listFeedback(query?: Query): Promise<PageOf<FeedbackThread>> {
    return (await this.get("/api/feedback", query)) as PageOf<FeedbackThread>;
  }

  async createFeedback(title: string, content: string): Promise<FeedbackThread> {
    return (await this.request("POST", "/api/feedback", { title, content })) as FeedbackThread;
  }

  async replyFeedback(id: number, text: string): Promise<FeedbackThread> {
    return (await this.request("POST", `/api/feedback/${id}/reply`, { text })) as FeedbackThread;
  }

  async signInAttendance(): Promise<{ sign_in_date: string }> {
    return (await this.request("POST", "/api/attendance/sign-in")) as { sign_in_date: string };
  }
}
