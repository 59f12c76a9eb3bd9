/** HTTP and WebSocket clients for the checking service.
 *
 * The game channel is server-authoritative: this client only forwards user
 * actions and hands every received frame to the caller. On an unexpected
 * disconnect it reconnects to the same session id; the server replays the
 * board frame and the current snapshot, so no client-side state is needed.
 */

import type {
  ClientAction,
  Diagnostic,
  ExerciseSummary,
  ServerFrame,
  SpecDoc,
  SubmissionResponse,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  diagnostics: Diagnostic[];

  constructor(status: number, message: string, diagnostics: Diagnostic[] = []) {
    super(message);
    this.status = status;
    this.diagnostics = diagnostics;
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let message = `${res.status} ${res.statusText}`;
  let diagnostics: Diagnostic[] = [];
  try {
    const body = await res.json();
    const detail = body.detail ?? body;
    if (typeof detail === "string") message = detail;
    if (detail && Array.isArray(detail.diagnostics)) {
      diagnostics = detail.diagnostics;
      message = diagnostics.map((d) => `${d.line}:${d.col}: ${d.message}`).join("\n");
    }
  } catch {
    /* non-JSON body: keep the status text */
  }
  return new ApiError(res.status, message, diagnostics);
}

export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      ...init,
      headers: { "Content-Type": "application/json", ...(init?.headers ?? {}) },
    });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  listExercises(): Promise<ExerciseSummary[]> {
    return this.request("/api/exercises");
  }

  getExercise(id: string): Promise<ExerciseSummary> {
    return this.request(`/api/exercises/${encodeURIComponent(id)}`);
  }

  createExercise(
    token: string,
    payload: { id?: string; title: string; description?: string; modelSpec: string },
  ): Promise<ExerciseSummary> {
    return this.request("/api/exercises", {
      method: "POST",
      headers: { Authorization: `Bearer ${token}` },
      body: JSON.stringify(payload),
    });
  }

  submitAst(exerciseId: string, doc: SpecDoc, seed?: number): Promise<SubmissionResponse> {
    return this.request(`/api/exercises/${encodeURIComponent(exerciseId)}/submissions`, {
      method: "POST",
      body: JSON.stringify({ studentAst: doc, ...(seed != null ? { seed } : {}) }),
    });
  }

  sessionUrl(sessionId: string): string {
    return `${this.baseUrl.replace(/^http/, "ws")}/api/sessions/${encodeURIComponent(sessionId)}`;
  }
}

// -- game channel ----------------------------------------------------------

/** Minimal WebSocket surface; satisfied by the browser WebSocket and the
 * `ws` package alike, so tests can inject an implementation. */
export interface WsLike {
  send(data: string): void;
  close(): void;
  addEventListener(type: "open" | "close", cb: () => void): void;
  addEventListener(type: "message", cb: (ev: { data: unknown }) => void): void;
}

export type WsFactory = (url: string) => WsLike;

export interface GameClientOptions {
  /** Reconnect attempts after an unexpected close (0 disables). */
  maxReconnects?: number;
  reconnectDelayMs?: number;
  onFrame: (frame: ServerFrame) => void;
  onClose?: (reason: "ended" | "gaveUp" | "closedByClient") => void;
  onReconnect?: (attempt: number) => void;
}

export class GameClient {
  private ws: WsLike | null = null;
  private ended = false;
  private closedByClient = false;
  private attempts = 0;

  constructor(
    private readonly url: string,
    private readonly makeWs: WsFactory,
    private readonly opts: GameClientOptions,
  ) {}

  connect(): void {
    const ws = this.makeWs(this.url);
    this.ws = ws;
    ws.addEventListener("message", (ev) => {
      const frame = JSON.parse(String(ev.data)) as ServerFrame;
      if (frame.type === "scoreReport") this.ended = true;
      this.attempts = 0; // a live frame proves the link is healthy again
      this.opts.onFrame(frame);
    });
    ws.addEventListener("close", () => this.handleClose());
  }

  private handleClose(): void {
    if (this.closedByClient) {
      this.opts.onClose?.("closedByClient");
      return;
    }
    if (this.ended) {
      this.opts.onClose?.("ended");
      return;
    }
    const max = this.opts.maxReconnects ?? 5;
    if (this.attempts >= max) {
      this.opts.onClose?.("gaveUp");
      return;
    }
    this.attempts += 1;
    this.opts.onReconnect?.(this.attempts);
    const delay = (this.opts.reconnectDelayMs ?? 250) * this.attempts;
    setTimeout(() => {
      if (!this.closedByClient) this.connect(); // same session id in the url
    }, delay);
  }

  send(action: ClientAction): void {
    this.ws?.send(JSON.stringify(action));
  }

  placeTower(kind: string, cell: [number, number]): void {
    this.send({ action: "placeTower", params: { kind, cell } });
  }

  startWave(): void {
    this.send({ action: "startWave", params: {} });
  }

  close(): void {
    this.closedByClient = true;
    this.ws?.close();
  }
}
