/** SVG rendering of an extended quiver and the session panels.
 *
 * Pure string output so tests run without a DOM.  Even vertices sit on a
 * lower arc as squares (clickable unless disabled), odd vertices on an
 * upper arc as red circles, even arrows carry their multiplicity, and each
 * net 2-path xi_i -> x_k -> xi_j is drawn as a paired pale-red arrow
 * through its even vertex with a shared data-pathgroup attribute.
 */

import type { QuiverModel, SessionState } from "./types.js";

const W = 760;
const H = 420;

function evenPos(i: number, n: number): [number, number] {
  if (n === 1) return [W / 2, 300];
  const x = 120 + (i * (W - 240)) / (n - 1);
  return [x, 300];
}

function oddPos(a: number, m: number): [number, number] {
  if (m === 1) return [W / 2, 110];
  const x = 80 + (a * (W - 160)) / (m - 1);
  return [x, 110];
}

function arrow(
  from: [number, number],
  to: [number, number],
  opts: { color: string; offset?: number; group?: string; width?: number },
): string {
  const [x1, y1] = from;
  const [x2, y2] = to;
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.hypot(dx, dy) || 1;
  const nx = -dy / len;
  const ny = dx / len;
  const off = opts.offset ?? 0;
  const sx = x1 + nx * off;
  const sy = y1 + ny * off;
  const ex = x2 + nx * off;
  const ey = y2 + ny * off;
  // shorten so arrowheads do not overlap the node markers
  const t = 22 / len;
  const ax = sx + (ex - sx) * (1 - t);
  const ay = sy + (ey - sy) * (1 - t);
  const bx = sx + (ex - sx) * t;
  const by = sy + (ey - sy) * t;
  const group = opts.group ? ` data-pathgroup="${opts.group}"` : "";
  return (
    `<line x1="${bx.toFixed(1)}" y1="${by.toFixed(1)}" x2="${ax.toFixed(1)}" ` +
    `y2="${ay.toFixed(1)}" stroke="${opts.color}" ` +
    `stroke-width="${opts.width ?? 1.6}" marker-end="url(#arr)"${group}/>`
  );
}

export function renderQuiverSvg(state: SessionState): string {
  const q: QuiverModel = state.quiver;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" width="${W}" height="${H}">`,
    `<defs><marker id="arr" viewBox="0 0 8 8" refX="7" refY="4" markerWidth="7" ` +
      `markerHeight="7" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="context-stroke"/></marker></defs>`,
  );
  // even arrows with multiplicity
  for (let i = 0; i < q.n; i++) {
    for (let j = 0; j < q.n; j++) {
      const mult = q.B[i][j];
      if (mult > 0) {
        for (let c = 0; c < mult; c++) {
          parts.push(
            arrow(evenPos(i, q.n), evenPos(j, q.n), {
              color: "#333",
              offset: (c - (mult - 1) / 2) * 7,
            }),
          );
        }
      }
    }
  }
  // 2-paths: a pair of arrows through the even vertex per net path
  for (let k = 0; k < q.n; k++) {
    for (let i = 0; i < q.m; i++) {
      for (let j = 0; j < q.m; j++) {
        const mult = q.N[k]?.[i]?.[j] ?? 0;
        if (mult > 0) {
          for (let c = 0; c < mult; c++) {
            const group = `p${k}-${i}-${j}-${c}`;
            const off = (c - (mult - 1) / 2) * 6;
            parts.push(
              arrow(oddPos(i, q.m), evenPos(k, q.n), {
                color: "#c0392b",
                offset: off,
                group,
              }),
              arrow(evenPos(k, q.n), oddPos(j, q.m), {
                color: "#c0392b",
                offset: off,
                group,
              }),
            );
          }
        }
      }
    }
  }
  // odd vertices
  for (let a = 0; a < q.m; a++) {
    const [x, y] = oddPos(a, q.m);
    parts.push(
      `<circle cx="${x}" cy="${y}" r="16" fill="#fdecea" stroke="#c0392b" data-odd="${a}"/>`,
      `<text x="${x}" y="${y + 5}" text-anchor="middle" fill="#c0392b" font-size="13">X${a + 1}</text>`,
    );
  }
  // even vertices: squares, disabled ones grayed and inert
  for (let v = 0; v < q.n; v++) {
    const [x, y] = evenPos(v, q.n);
    const enabled = state.enabled[v];
    const frozen = q.frozen.includes(v);
    const cls = frozen ? "frozen" : enabled ? "enabled" : "disabled";
    const fill = frozen ? "#dde" : enabled ? "#eaf4ff" : "#e5e5e5";
    const stroke = enabled ? "#2471a3" : "#999";
    parts.push(
      `<g class="vertex ${cls}" data-vertex="${v}" data-enabled="${enabled}">` +
        `<rect x="${x - 22}" y="${y - 18}" width="44" height="36" rx="5" ` +
        `fill="${fill}" stroke="${stroke}" stroke-width="2"/>` +
        `<text x="${x}" y="${y + 5}" text-anchor="middle" font-size="14">` +
        `${labelName(v, q.n)}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

function labelName(v: number, n: number): string {
  return n === 1 ? "x" : `x${v + 1}`;
}

export function renderLabelsHtml(state: SessionState): string {
  const rows = state.labels
    .map(
      (label, v) =>
        `<tr><td>${labelName(v, state.quiver.n)}</td><td><code>${escapeHtml(label)}</code></td></tr>`,
    )
    .join("");
  const last =
    state.lastLabel === null
      ? ""
      : `<p class="last">new label at ${labelName(state.lastVertex ?? 0, state.quiver.n)}: ` +
        `<code id="last-label">${escapeHtml(state.lastLabel)}</code></p>`;
  const hist = state.history.length
    ? state.history.map((v) => `&mu;<sub>${v}</sub>`).join(" , ")
    : "(initial seed)";
  return (
    `${last}<p class="history">history: ${hist}</p>` +
    `<table class="labels"><thead><tr><th>vertex</th><th>label</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

function escapeHtml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
