/** Session state for the stepwise mutation explorer.
 *
 * The server is the single source of truth for algebra; the client keeps a
 * snapshot stack so that undo restores the previous state bit for bit.
 * Re-mutating on the server would NOT undo (mutation is not an involution:
 * a double mutation rescales the label by a nilpotent unit), hence the
 * stack.  Replaying the recorded history through the service from the
 * initial seed must reproduce the current state exactly; `replay` checks
 * that invariant.
 */

import type { ApiLike } from "./api.js";
import type { QuiverModel, SessionState } from "./types.js";

/** Canonical names of the initial even labels, matching the server. */
export function initialLabels(n: number): string[] {
  if (n === 1) return ["x"];
  return Array.from({ length: n }, (_, i) => `x${i + 1}`);
}

function deepCopy<T>(v: T): T {
  return JSON.parse(JSON.stringify(v)) as T;
}

export function deepEqual(a: unknown, b: unknown): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

export class Session {
  current!: SessionState;
  private initialQuiver!: QuiverModel;
  private undoStack: SessionState[] = [];

  constructor(private api: ApiLike) {}

  async init(quiver: QuiverModel): Promise<SessionState> {
    this.initialQuiver = deepCopy(quiver);
    this.undoStack = [];
    this.current = {
      quiver: deepCopy(quiver),
      labels: initialLabels(quiver.n),
      history: [],
      enabled: await this.refreshEnabled(quiver),
      lastLabel: null,
      lastVertex: null,
    };
    return this.current;
  }

  private async refreshEnabled(quiver: QuiverModel): Promise<boolean[]> {
    const out: boolean[] = [];
    for (let v = 0; v < quiver.n; v++) {
      const resp = await this.api.allowed(quiver, v);
      out.push(resp.allowed);
    }
    return out;
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  /** Mutate at a vertex the server reported as enabled. */
  async mutateClick(vertex: number): Promise<SessionState> {
    if (!this.current.enabled[vertex]) {
      throw new Error(`vertex ${vertex} is disabled`);
    }
    const resp = await this.api.mutate({
      quiver: this.current.quiver,
      vertex,
      labels: this.current.history.length === 0 ? null : this.current.labels,
    });
    this.undoStack.push(deepCopy(this.current));
    this.current = {
      quiver: resp.quiver,
      labels: resp.labels,
      history: [...this.current.history, vertex],
      enabled: await this.refreshEnabled(resp.quiver),
      lastLabel: resp.label,
      lastVertex: vertex,
    };
    return this.current;
  }

  /** Client-side restore; no server call, bit-identical to the prior state. */
  undo(): SessionState {
    const prev = this.undoStack.pop();
    if (!prev) throw new Error("nothing to undo");
    this.current = prev;
    return this.current;
  }

  /** Re-run the recorded history from the initial seed through the service
   * and verify it reproduces the current state exactly. */
  async replay(): Promise<boolean> {
    let quiver = deepCopy(this.initialQuiver);
    let labels: string[] | null = null;
    let lastLabel: string | null = null;
    for (const v of this.current.history) {
      const resp = await this.api.mutate({ quiver, vertex: v, labels });
      quiver = resp.quiver;
      labels = resp.labels;
      lastLabel = resp.label;
    }
    const replayed = {
      quiver,
      labels: labels ?? initialLabels(quiver.n),
      lastLabel,
    };
    return (
      deepEqual(replayed.quiver, this.current.quiver) &&
      deepEqual(replayed.labels, this.current.labels) &&
      replayed.lastLabel === this.current.lastLabel
    );
  }
}
