/** Minimal JSON client for the engine service.
 *
 * The UI holds no algebra logic; every computation goes through these
 * endpoints.  `fetchImpl` is injectable so tests can replay recorded
 * responses byte-for-byte.
 */

import type {
  AllowedResponse,
  ApiError,
  MutateRequest,
  MutateResponse,
  QuiverModel,
} from "./types.js";

export type FetchLike = (
  url: string,
  init: { method: string; headers: Record<string, string>; body: string },
) => Promise<{ status: number; text(): Promise<string> }>;

export class ServiceError extends Error {
  constructor(
    public status: number,
    public payload: ApiError,
  ) {
    super(`${payload.error}: ${payload.detail}`);
  }
}

/** What the session needs from the backend; tests substitute a recording. */
export interface ApiLike {
  mutate(req: MutateRequest): Promise<MutateResponse>;
  allowed(quiver: QuiverModel, vertex: number): Promise<AllowedResponse>;
}

export class Api implements ApiLike {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const text = await resp.text();
    if (resp.status !== 200) {
      let payload: ApiError;
      try {
        payload = JSON.parse(text) as ApiError;
      } catch {
        payload = { error: "TransportError", detail: text };
      }
      throw new ServiceError(resp.status, payload);
    }
    return JSON.parse(text) as T;
  }

  mutate(req: MutateRequest): Promise<MutateResponse> {
    return this.post("/mutate", req);
  }

  allowed(quiver: QuiverModel, vertex: number): Promise<AllowedResponse> {
    return this.post("/allowed", { quiver, vertex });
  }
}
