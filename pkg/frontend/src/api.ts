import type {
  Answer,
  AnswerResponse,
  CreateSessionResponse,
  OutputResponse,
  QueryResponse,
  SessionState,
  TranscriptDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: unknown,
  ) {
    super(`API error ${status}: ${JSON.stringify(detail)}`);
  }
}

export interface CreateSessionRequest {
  n: number;
  mode: string;
  strategy?: string;
  seed?: number;
  cap?: number;
  budget?: number | null;
}

/** Thin fetch wrapper over the session endpoints. */
export class SessionApi {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, payload?.detail ?? payload);
    }
    return payload as T;
  }

  createSession(req: CreateSessionRequest): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions", req);
  }

  submitQuery(id: string, i: number, j: number): Promise<QueryResponse> {
    return this.request("POST", `/sessions/${id}/query`, { i, j });
  }

  submitOutput(id: string, position: number): Promise<OutputResponse> {
    return this.request("POST", `/sessions/${id}/output`, { position });
  }

  submitAnswer(id: string, answer: Answer): Promise<AnswerResponse> {
    return this.request("POST", `/sessions/${id}/answer`, { answer });
  }

  getState(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}/state`);
  }

  getTranscript(id: string): Promise<TranscriptDoc> {
    return this.request("GET", `/sessions/${id}/transcript`);
  }
}
