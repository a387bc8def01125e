/**
 * Thin client for the audit service. The fetch implementation is injectable
 * so tests run against fixture payloads without a network.
 */

import type {
  ConfigPayload,
  ErrorPayload,
  GenerateResponse,
  ModelEndpoint,
  ProbeResponse,
  TargetPair,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Carries the HTTP provenance (status + server message) for inline banners. */
export class ApiError extends Error {
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, field: string | null, message: string) {
    super(message);
    this.status = status;
    this.field = field;
  }

  get provenance(): string {
    const where = this.field ? ` (field: ${this.field})` : "";
    return `HTTP ${this.status}${where}: ${this.message}`;
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  let field: string | null = null;
  let message = resp.statusText || "request failed";
  try {
    const body = (await resp.json()) as ErrorPayload;
    if (body && body.error) {
      field = body.error.field;
      message = body.error.message;
    }
  } catch {
    // non-JSON error body: keep the status text
  }
  return new ApiError(resp.status, field, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (exc) {
      throw new ApiError(0, null, `service unreachable: ${String(exc)}`);
    }
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  async config(): Promise<ConfigPayload> {
    const resp = await this.fetchFn(this.baseUrl + "/api/config");
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as ConfigPayload;
  }

  generate(text: string, config?: Record<string, unknown>): Promise<GenerateResponse> {
    return this.post<GenerateResponse>("/api/generate", { text, config });
  }

  targeted(text: string, targets: TargetPair[], config?: Record<string, unknown>): Promise<GenerateResponse> {
    return this.post<GenerateResponse>("/api/targeted", { text, targets, config });
  }

  probe(
    models: ModelEndpoint[],
    texts: string[],
    targets: TargetPair[],
    attribute = "attributes",
  ): Promise<ProbeResponse> {
    return this.post<ProbeResponse>("/api/probe", { models, texts, targets, attribute });
  }
}
