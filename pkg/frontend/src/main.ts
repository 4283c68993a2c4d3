/** Browser entry point: wires the session to the DOM. */

import { Api, ServiceError } from "./api.js";
import { renderLabelsHtml, renderQuiverSvg } from "./render.js";
import { Session } from "./state.js";
import type { QuiverModel } from "./types.js";

const PRESETS: Record<string, QuiverModel> = {
  "width-1 (one even, two odd)": {
    n: 1,
    m: 2,
    B: [[0]],
    N: [
      [
        [0, 1],
        [-1, 0],
      ],
    ],
    frozen: [],
  },
  "A2 with one 2-path": {
    n: 2,
    m: 2,
    B: [
      [0, 1],
      [-1, 0],
    ],
    N: [
      [
        [0, 1],
        [-1, 0],
      ],
      [
        [0, 0],
        [0, 0],
      ],
    ],
    frozen: [],
  },
  "forbidden pair configuration": {
    n: 2,
    m: 4,
    B: [
      [0, 1],
      [-1, 0],
    ],
    N: [
      [
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
      ],
      [
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
      ],
    ],
    frozen: [],
  },
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot() {
  const baseUrl =
    new URLSearchParams(window.location.search).get("api") ??
    "http://127.0.0.1:8000";
  const api = new Api(baseUrl);
  const session = new Session(api);
  const diagram = el<HTMLDivElement>("diagram");
  const panel = el<HTMLDivElement>("panel");
  const status = el<HTMLDivElement>("status");
  const undoBtn = el<HTMLButtonElement>("undo");
  const replayBtn = el<HTMLButtonElement>("replay");
  const picker = el<HTMLSelectElement>("preset");
  const editor = el<HTMLTextAreaElement>("editor");
  const loadBtn = el<HTMLButtonElement>("load");

  for (const name of Object.keys(PRESETS)) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    picker.appendChild(opt);
  }

  function redraw() {
    diagram.innerHTML = renderQuiverSvg(session.current);
    panel.innerHTML = renderLabelsHtml(session.current);
    undoBtn.disabled = !session.canUndo;
    diagram
      .querySelectorAll<SVGGElement>("g.vertex.enabled")
      .forEach((g) => {
        g.style.cursor = "pointer";
        g.addEventListener("click", () => {
          const v = Number(g.dataset.vertex);
          void click(v);
        });
      });
  }

  async function click(v: number) {
    status.textContent = `mutating at vertex ${v} ...`;
    try {
      await session.mutateClick(v);
      status.textContent = "";
    } catch (err) {
      status.textContent =
        err instanceof ServiceError ? err.message : String(err);
    }
    redraw();
  }

  async function load(quiver: QuiverModel) {
    status.textContent = "loading ...";
    try {
      await session.init(quiver);
      editor.value = JSON.stringify(quiver, null, 1);
      status.textContent = "";
    } catch (err) {
      status.textContent =
        err instanceof ServiceError ? err.message : String(err);
      return;
    }
    redraw();
  }

  undoBtn.addEventListener("click", () => {
    if (session.canUndo) {
      session.undo();
      redraw();
    }
  });
  replayBtn.addEventListener("click", () => {
    status.textContent = "replaying history through the service ...";
    void session.replay().then((okay) => {
      status.textContent = okay
        ? "replay reproduces the current state exactly"
        : "REPLAY MISMATCH (this should never happen)";
    });
  });
  picker.addEventListener("change", () => void load(PRESETS[picker.value]));
  loadBtn.addEventListener("click", () => {
    try {
      void load(JSON.parse(editor.value) as QuiverModel);
    } catch (err) {
      status.textContent = `bad quiver JSON: ${String(err)}`;
    }
  });

  await load(PRESETS["A2 with one 2-path"]);
  picker.value = "A2 with one 2-path";
}

void boot();
