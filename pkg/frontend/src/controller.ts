// Game flow on top of the session API. The browser app and the tests
// drive games through these controllers, so a scripted test exercises
// exactly the code paths a clicking human does.

import { SessionApi } from "./api.js";
import type {
  AdversarySnapshot,
  Answer,
  AnswerResponse,
  OutputResponse,
  TranscriptDoc,
} from "./types.js";

/** Human plays the algorithm; the machine adversary answers queries. */
export class AlgorithmGame {
  private id = "";
  snapshot: AdversarySnapshot | null = null;
  result: OutputResponse | null = null;

  constructor(
    private readonly api: SessionApi,
    readonly n: number,
  ) {}

  get finished(): boolean {
    return this.result !== null;
  }

  async start(): Promise<AdversarySnapshot> {
    const created = await this.api.createSession({
      n: this.n,
      mode: "human_vs_adversary",
    });
    this.id = created.id;
    this.snapshot = created.snapshot!;
    return this.snapshot;
  }

  async query(i: number, j: number): Promise<AdversarySnapshot> {
    const response = await this.api.submitQuery(this.id, i, j);
    this.snapshot = response.snapshot;
    return this.snapshot;
  }

  async output(position: number): Promise<OutputResponse> {
    this.result = await this.api.submitOutput(this.id, position);
    return this.result;
  }

  async transcript(): Promise<TranscriptDoc> {
    return this.api.getTranscript(this.id);
  }
}

/** Human plays the adversary; a machine strategy asks the queries. */
export class AdversaryGame {
  private id = "";
  pendingQuery: [number, number] | null = null;
  comparisons = 0;
  result: AnswerResponse | null = null;

  constructor(
    private readonly api: SessionApi,
    readonly n: number,
    private readonly strategy: string = "optimal",
  ) {}

  get finished(): boolean {
    return this.result?.solver_output !== undefined;
  }

  async start(): Promise<[number, number]> {
    const created = await this.api.createSession({
      n: this.n,
      mode: "human_as_adversary",
      strategy: this.strategy,
    });
    this.id = created.id;
    this.pendingQuery = created.pending_query!;
    return this.pendingQuery;
  }

  /** Submit an answer; rejected answers surface as ApiError (409). */
  async answer(answer: Answer): Promise<AnswerResponse> {
    const response = await this.api.submitAnswer(this.id, answer);
    this.comparisons = response.comparisons;
    if (response.next_query) {
      this.pendingQuery = [response.next_query[0], response.next_query[1]];
    } else {
      this.pendingQuery = null;
      this.result = response;
    }
    return response;
  }

  async transcript(): Promise<TranscriptDoc> {
    return this.api.getTranscript(this.id);
  }
}
