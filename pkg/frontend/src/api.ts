// Typed client for the assistant service JSON API.

export interface HistoryRow {
  guess: string;
  response: string;
}

export interface SessionSnapshot {
  id: string;
  strategy: string;
  seed: number;
  created: string;
  updated: string;
  history: HistoryRow[];
  candidate_count: number;
  suggestion: string | null;
  solved: boolean;
}

export interface ScoredCandidate {
  word: string;
  score: number | null;
}

export interface CandidateList {
  total: number;
  candidates: ScoredCandidate[];
}

export interface PreviewGroup {
  key: string;
  size: number;
}

export interface Preview {
  guess: string;
  mode: string;
  total: number;
  group_count: number;
  entropy: number;
  groups: PreviewGroup[];
}

export interface StrategyInfo {
  name: string;
  label: string;
}

/** Service-reported failure: carries the HTTP status and the error code. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class AssistantClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const response = await fetch(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? "error",
        payload.message ?? response.statusText,
      );
    }
    return payload as T;
  }

  health(): Promise<{ status: string; config_digest: string }> {
    return this.request("GET", "/health");
  }

  strategies(): Promise<{ strategies: StrategyInfo[] }> {
    return this.request("GET", "/strategies");
  }

  createSession(strategy: string, seed?: number): Promise<SessionSnapshot> {
    return this.request("POST", "/sessions", { strategy, seed });
  }

  getSession(id: string): Promise<SessionSnapshot> {
    return this.request("GET", `/sessions/${id}`);
  }

  deleteSession(id: string): Promise<{ deleted: string }> {
    return this.request("DELETE", `/sessions/${id}`);
  }

  submitFeedback(id: string, guess: string, response: string): Promise<SessionSnapshot> {
    return this.request("POST", `/sessions/${id}/feedback`, { guess, response });
  }

  rollback(id: string): Promise<SessionSnapshot> {
    return this.request("POST", `/sessions/${id}/rollback`);
  }

  candidates(id: string, limit: number): Promise<CandidateList> {
    return this.request("GET", `/sessions/${id}/candidates?limit=${limit}`);
  }

  preview(id: string, guess: string, mode = "by-pattern"): Promise<Preview> {
    const query = new URLSearchParams({ guess, mode });
    return this.request("GET", `/sessions/${id}/preview?${query}`);
  }
}
