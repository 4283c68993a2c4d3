/** Replays recorded service responses keyed by the canonical request JSON.
 *
 * The fixtures are generated from the real service handlers, so every
 * string a test sees is byte-identical to what the live service (and the
 * CLI, which shares the handlers) would produce.
 */

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import type { ApiLike } from "../src/api.js";
import type {
  AllowedResponse,
  MutateRequest,
  MutateResponse,
  QuiverModel,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture<T = unknown>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(sortKeys);
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortKeys((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}

export function canonical(value: unknown): string {
  return JSON.stringify(sortKeys(value));
}

interface Recorded {
  mutate: Record<string, MutateResponse>;
  allowed: Record<string, AllowedResponse>;
}

export class FakeApi implements ApiLike {
  private recorded: Recorded;
  calls: string[] = [];

  constructor() {
    this.recorded = loadFixture<Recorded>("recorded.json");
  }

  async mutate(req: MutateRequest): Promise<MutateResponse> {
    const key = canonical(req);
    this.calls.push(`mutate ${key}`);
    const resp = this.recorded.mutate[key];
    if (!resp) throw new Error(`no recorded /mutate response for ${key}`);
    return structuredClone(resp);
  }

  async allowed(quiver: QuiverModel, vertex: number): Promise<AllowedResponse> {
    const key = canonical({ quiver, vertex });
    this.calls.push(`allowed ${key}`);
    const resp = this.recorded.allowed[key];
    if (!resp) throw new Error(`no recorded /allowed response for ${key}`);
    return structuredClone(resp);
  }
}
