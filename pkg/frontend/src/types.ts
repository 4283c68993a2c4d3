/** Wire types mirroring the service's pydantic models. */

export interface QuiverModel {
  n: number;
  m: number;
  B: number[][];
  N: number[][][];
  frozen: number[];
}

export interface MutateRequest {
  quiver: QuiverModel;
  vertex: number;
  labels: string[] | null;
}

export interface MutateResponse {
  quiver: QuiverModel;
  vertex: number;
  label: string;
  label_terms: unknown;
  labels: string[];
  classical_label: string;
  allowed: boolean;
  violations: string[];
}

export interface AllowedResponse {
  allowed: boolean;
  violations: string[];
}

export interface ApiError {
  error: string;
  detail: string;
}

/** One snapshot of the explorer: everything needed to redraw the page. */
export interface SessionState {
  quiver: QuiverModel;
  labels: string[];
  history: number[];
  enabled: boolean[];
  lastLabel: string | null;
  lastVertex: number | null;
}
