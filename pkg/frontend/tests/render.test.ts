import { describe, expect, it } from "vitest";

import { renderLabelsHtml, renderQuiverSvg } from "../src/render.js";
import { Session, initialLabels } from "../src/state.js";
import type { QuiverModel, SessionState } from "../src/types.js";
import { FakeApi, loadFixture } from "./fake_api.js";

const quivers = loadFixture<Record<string, QuiverModel>>("quivers.json");

function staticState(quiver: QuiverModel, enabled: boolean[]): SessionState {
  return {
    quiver,
    labels: initialLabels(quiver.n),
    history: [],
    enabled,
    lastLabel: null,
    lastVertex: null,
  };
}

describe("quiver rendering", () => {
  it("draws the A2 quiver with one 2-path group through x1", () => {
    const svg = renderQuiverSvg(staticState(quivers.a2_super, [true, true]));
    const groups = svg.match(/data-pathgroup="p0-0-1-0"/g) ?? [];
    expect(groups.length).toBe(2); // one pair of arrows
    expect(svg).toContain('data-odd="0"');
    expect(svg).toContain('data-odd="1"');
    expect(svg).toContain('data-vertex="1"');
  });

  it("renders the disjoint-pairs quiver with vertex 0 visibly disabled", async () => {
    const session = new Session(new FakeApi());
    await session.init(quivers.disjoint_pairs);
    const svg = renderQuiverSvg(session.current);
    expect(svg).toMatch(/class="vertex disabled" data-vertex="0"/);
    expect(svg).toMatch(/class="vertex enabled" data-vertex="1"/);
  });

  it("renders a classical quiver (m = 0) with no odd nodes", () => {
    const svg = renderQuiverSvg(staticState(quivers.classical_a2, [true, true]));
    expect(svg).not.toContain("data-odd");
    expect(svg).toContain('data-vertex="0"');
  });

  it("draws arrow multiplicities as parallel lines", () => {
    const kronecker: QuiverModel = {
      n: 2,
      m: 0,
      B: [
        [0, -2],
        [2, 0],
      ],
      N: [[], []],
      frozen: [],
    };
    const svg = renderQuiverSvg(staticState(kronecker, [true, true]));
    const lines = svg.match(/<line /g) ?? [];
    expect(lines.length).toBe(2);
  });
});

describe("labels panel", () => {
  it("shows the returned Laurent polynomial after a click", async () => {
    const session = new Session(new FakeApi());
    await session.init(quivers.a2_super);
    await session.mutateClick(0);
    const html = renderLabelsHtml(session.current);
    expect(html).toContain('id="last-label"');
    expect(html).toContain("(1+x2+X1*X2)/x1");
    expect(html).toContain("history");
  });

  it("escapes nothing it should not and keeps canonical strings verbatim", async () => {
    const session = new Session(new FakeApi());
    await session.init(quivers.a2_super);
    await session.mutateClick(0);
    await session.mutateClick(1);
    const html = renderLabelsHtml(session.current);
    expect(html).toContain("(1+x1+x2+X1*X2+x1*X1*X2)/(x1*x2)");
  });
});
