// Typed client for the corpus service. The UI never does any linguistic
// processing of its own: validation, stemming and folding all happen on
// the server, and this module just relays its answers.

export interface SimileRecord {
  id: number;
  display_form: string;
  canonical_key: string;
  kind: string;
  source: string;
  status: string;
  submitted_by: string | null;
  created_at: string;
  updated_at: string;
  evidence: { doc_url: string; count: number }[];
  revision_count: number;
  revisions?: Revision[];
}

export interface Revision {
  record_id: number;
  editor: string;
  action: string;
  before: string;
  after: string;
  timestamp: string;
}

export interface BrowsePage {
  items: SimileRecord[];
  page: number;
  page_size: number;
  total: number;
  total_pages: number;
}

export interface Session {
  token: string;
  user: string;
  role: string;
  expires_at: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public payload: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

let apiBase = "";

export function setApiBase(base: string): void {
  apiBase = base.replace(/\/$/, "");
}

async function request<T>(
  path: string,
  options: RequestInit = {},
  token?: string,
): Promise<T> {
  const headers: Record<string, string> = {
    ...(options.body ? { "Content-Type": "application/json" } : {}),
    ...(token ? { Authorization: `Bearer ${token}` } : {}),
  };
  const response = await fetch(apiBase + path, { ...options, headers });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const code = typeof body.code === "string" ? body.code : "invalid_request";
    const message = typeof body.message === "string" ? body.message : response.statusText;
    throw new ApiError(response.status, code, message, body);
  }
  return body as T;
}

export function browse(page: number, pageSize = 10): Promise<BrowsePage> {
  return request(`/api/similes?page=${page}&page_size=${pageSize}`);
}

export function search(query: string): Promise<{ query: string; items: SimileRecord[] }> {
  return request(`/api/similes/search?q=${encodeURIComponent(query)}`);
}

export function submit(
  phrase: string,
  contributor?: string,
): Promise<{ record: SimileRecord; notice: string }> {
  return request("/api/similes", {
    method: "POST",
    body: JSON.stringify({ phrase, contributor: contributor || null }),
  });
}

export function login(username: string, password: string): Promise<Session> {
  return request("/api/login", {
    method: "POST",
    body: JSON.stringify({ username, password }),
  });
}

export function pending(token: string): Promise<{ items: SimileRecord[] }> {
  return request("/api/pending", {}, token);
}

export function approve(id: number, token: string): Promise<{ record: SimileRecord }> {
  return request(`/api/similes/${id}/approve`, { method: "POST" }, token);
}

export function reject(id: number, token: string): Promise<{ record: SimileRecord }> {
  return request(`/api/similes/${id}/reject`, { method: "POST" }, token);
}

export function edit(
  id: number,
  displayForm: string,
  token: string,
): Promise<{ record: SimileRecord }> {
  return request(
    `/api/similes/${id}`,
    { method: "PUT", body: JSON.stringify({ display_form: displayForm }) },
    token,
  );
}

export function stats(): Promise<Record<string, unknown>> {
  return request("/api/stats");
}
