// Documents exchanged with the session API. These mirror the server's
// wire format exactly; the UI never derives game state on its own.

export type Answer = "equal" | "not_equal";

export interface QueryDoc {
  i: number;
  j: number;
  answer: Answer;
}

export interface OutputDoc {
  position: number;
  value: number | null;
}

export interface TranscriptDoc {
  n: number;
  mode: string;
  queries: QueryDoc[];
  output: OutputDoc | null;
  verdict: string;
  comparisons: number;
}

export interface AdversarySnapshot {
  n: number;
  phase: "ambiguous" | "committed";
  edges: [number, number][];
  bottom: number[];
  top: number[];
  committed_majority: number[] | null;
  comparisons: number;
  budget: number;
  remaining: number;
  certificate: string;
  feasible_count: number | null;
}

export interface CreateSessionResponse {
  id: string;
  n: number;
  mode: string;
  snapshot?: AdversarySnapshot;
  pending_query?: [number, number];
  transcript?: TranscriptDoc;
  witness?: number[] | null;
}

export interface QueryResponse {
  answer: Answer;
  comparisons: number;
  snapshot: AdversarySnapshot;
}

export interface OutputResponse {
  verdict: string;
  witness: number[] | null;
  transcript: TranscriptDoc;
}

export interface AnswerResponse {
  accepted: boolean;
  comparisons: number;
  next_query?: [number, number];
  solver_output?: { position: number };
  verdict?: string;
  witness?: number[] | null;
  transcript?: TranscriptDoc;
}

export interface SessionState {
  id: string;
  n: number;
  mode: string;
  finished: boolean;
  comparisons: number;
  snapshot?: AdversarySnapshot;
  pending_query?: [number, number] | null;
  transcript?: TranscriptDoc;
  witness?: number[] | null;
}
