/**
 * App wiring: one mutable state slot, every interaction produces a new
 * state via the pure transitions and triggers a full redraw.
 */

import { fetchGraph, searchKeyword } from "./api.js";
import { formatClock, indexGraph } from "./graph.js";
import { render } from "./render.js";
import {
  clearSelection,
  initialState,
  inspect,
  loadGraph,
  searchBox,
  setHostHidden,
  setRadius,
  visibleHosts,
  type ViewState,
} from "./state.js";
import { isGraphExport } from "./types.js";

let state: ViewState = initialState();

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

function update(next: ViewState): void {
  state = next;
  redraw();
}

function redraw(): void {
  const canvas = byId<HTMLDivElement>("canvas");
  canvas.replaceChildren(render(document, state));
  byId<HTMLSpanElement>("notice").textContent = state.notice;
  drawHostToggles();
  drawDetailPanel();
}

function drawHostToggles(): void {
  const box = byId<HTMLDivElement>("hosts");
  box.replaceChildren();
  if (state.graph === null) return;
  for (const host of [...state.graph.hosts].sort()) {
    const label = document.createElement("label");
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.checked = !state.hiddenHosts.has(host);
    checkbox.addEventListener("change", () => {
      update(setHostHidden(state, host, !checkbox.checked));
    });
    label.appendChild(checkbox);
    label.appendChild(document.createTextNode(` ${host}`));
    box.appendChild(label);
  }
}

function drawDetailPanel(): void {
  const panel = byId<HTMLDivElement>("detail");
  panel.replaceChildren();
  if (state.graph === null || state.selected === null) {
    panel.textContent = "select an event to inspect it";
    return;
  }
  const event = state.graph.events.find((e) => e.id === state.selected);
  if (event === undefined) return;
  const idx = indexGraph(state.graph);
  const rows: Array<[string, string]> = [
    ["event", `#${event.id} on ${event.host}`],
    ["clock", formatClock(event.clock)],
    ["description", event.description],
    ["predecessors", (idx.predecessors.get(event.id) ?? []).join(", ") || "none"],
    ["successors", (idx.successors.get(event.id) ?? []).join(", ") || "none"],
  ];
  if (event.sim_time !== undefined) rows.splice(2, 0, ["sim time", `${event.sim_time} ms`]);
  const dl = document.createElement("dl");
  for (const [term, value] of rows) {
    const dt = document.createElement("dt");
    dt.textContent = term;
    const dd = document.createElement("dd");
    dd.textContent = value;
    dl.appendChild(dt);
    dl.appendChild(dd);
  }
  panel.appendChild(dl);
}

function wireControls(): void {
  const searchInput = byId<HTMLInputElement>("search-input");
  const searchMode = byId<HTMLSelectElement>("search-mode");
  byId<HTMLFormElement>("search-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    void searchBox(state, searchInput.value, searchKeyword, searchMode.value).then(update);
  });
  searchInput.disabled = !state.searchAvailable;

  byId<HTMLInputElement>("radius-input").addEventListener("change", (ev) => {
    const raw = (ev.target as HTMLInputElement).value;
    update(setRadius(state, raw === "" ? null : Number(raw)));
  });

  byId<HTMLButtonElement>("clear-selection").addEventListener("click", () => {
    update(clearSelection(state));
  });

  byId<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file === undefined) return;
    try {
      const doc: unknown = JSON.parse(await file.text());
      if (!isGraphExport(doc)) throw new Error("not a graph export");
      update(loadGraph(state, doc, false));
      byId<HTMLInputElement>("search-input").disabled = true;
    } catch (err) {
      update({ ...state, notice: `could not load file: ${String(err)}` });
    }
  });

  byId<HTMLDivElement>("canvas").addEventListener("click", (ev) => {
    const target = ev.target as Element;
    if (target.classList.contains("event")) {
      const id = Number(target.getAttribute("data-id"));
      update(inspect(state, id));
    }
  });
}

async function boot(): Promise<void> {
  wireControls();
  try {
    const graph = await fetchGraph();
    update(loadGraph(state, graph, true));
    byId<HTMLInputElement>("search-input").disabled = false;
  } catch {
    update({ ...state, notice: "no server graph; open an export file below" });
  }
  // keep the lexicographic lane order visible in the legend
  byId<HTMLSpanElement>("lane-order").textContent = visibleHosts(state).join(" | ");
}

if (typeof document !== "undefined" && document.getElementById("canvas") !== null) {
  void boot();
}
