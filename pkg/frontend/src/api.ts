/**
 * Typed client for the session service.
 *
 * Every request and response mirrors the service's JSON vocabulary; the
 * client never post-processes ranks or buckets, it only carries them.
 */

export type Rank = number | "inf";
export type RankDelta = number | "inf" | "-inf";
export type Bucket = "plausible" | "surprising" | "very_surprising" | "impossible";
export type Kind = "observe" | "act";
export type Role = "state" | "suppressor" | "inertia" | "action";

export interface VariableDecl {
  name: string;
  values: string[];
  kind: "event" | "persistence";
  controllable: boolean;
  preconditions?: [string, string][];
  flip_surprise?: Rank;
  action_surprise?: Rank;
}

export interface NetworkDocument {
  format_version: number;
  variables: VariableDecl[];
  families: unknown[];
  comment?: string;
}

export interface AssertionIn {
  t: number;
  var: string;
  value: string;
  kind?: Kind;
}

export interface RemovalIn {
  t: number;
  var: string;
  kind?: Kind;
}

export interface BeliefEntry {
  node: string;
  var: string;
  role: Role;
  t: number;
  ranks: Record<string, Rank>;
  buckets: Record<string, Bucket>;
  believed: string | null;
  asserted: { value: string; kind: Kind } | null;
}

export interface BeliefsResponse {
  horizon: number;
  beliefs: BeliefEntry[];
}

export interface SessionInfo {
  id: string;
  network: string;
  horizon: number;
  actions_from_slice: number;
  assertions: { t: number; var: string; value: string; role: Role; kind: Kind }[];
  evidence_rank: Rank;
}

export interface BranchResult {
  beliefs?: BeliefEntry[];
  error?: string;
}

export interface DiffEntry {
  node: string;
  deltas: Record<string, RankDelta>;
}

export interface WhatIfResponse {
  base: BranchResult;
  hypothetical: BranchResult;
  diffs: DiffEntry[] | null;
}

export interface ConflictBody {
  detail: { message: string; conflict: string[] };
}

/** Error carrying the HTTP status and the decoded body of a failed call. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

async function request<T>(
  base: string,
  method: string,
  path: string,
  payload?: unknown,
): Promise<T> {
  const response = await fetch(base + path, {
    method,
    headers: payload === undefined ? undefined : { "Content-Type": "application/json" },
    body: payload === undefined ? undefined : JSON.stringify(payload),
  });
  if (response.status === 204) {
    return undefined as T;
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    throw new ApiError(response.status, body);
  }
  return body as T;
}

export class Client {
  constructor(readonly base: string = "") {}

  uploadNetwork(doc: NetworkDocument): Promise<{ id: string }> {
    return request(this.base, "POST", "/networks", doc);
  }

  getNetwork(id: string): Promise<NetworkDocument> {
    return request(this.base, "GET", `/networks/${id}`);
  }

  createSession(
    network: string,
    horizon: number,
    actionsFromSlice = 0,
  ): Promise<{ id: string; horizon: number }> {
    return request(this.base, "POST", "/sessions", {
      network,
      horizon,
      actions_from_slice: actionsFromSlice,
    });
  }

  getSession(id: string): Promise<SessionInfo> {
    return request(this.base, "GET", `/sessions/${id}`);
  }

  putAssertions(
    id: string,
    add: AssertionIn[],
    remove: RemovalIn[] = [],
  ): Promise<{ evidence_rank: Rank; count: number }> {
    return request(this.base, "PUT", `/sessions/${id}/assertions`, { add, remove });
  }

  getBeliefs(id: string, vars?: string): Promise<BeliefsResponse> {
    const suffix = vars ? `?vars=${encodeURIComponent(vars)}` : "";
    return request(this.base, "GET", `/sessions/${id}/beliefs${suffix}`);
  }

  whatIf(id: string, delta: AssertionIn[]): Promise<WhatIfResponse> {
    return request(this.base, "POST", `/sessions/${id}/whatif`, { delta });
  }

  deleteSession(id: string): Promise<void> {
    return request(this.base, "DELETE", `/sessions/${id}`);
  }
}
