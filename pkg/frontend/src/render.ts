/**
 * SVG time-space diagram.
 *
 * One vertical timeline per visible host, lexicographic left to right.
 * Events sit at y proportional to their causal layer, so any event that
 * happens-before another is drawn strictly above it.  Communication edges
 * become arrows; same-host order is implied by the timeline.
 */

import { futureCone, indexGraph, neighborhoodBall, pastCone, type Indexed } from "./graph.js";
import type { ViewState } from "./state.js";
import { visibleHosts } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const LANE_WIDTH = 180;
export const ROW_HEIGHT = 56;
export const MARGIN_X = 90;
export const MARGIN_Y = 48;
const NODE_RADIUS = 7;

function el<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export interface Placement {
  x: Map<number, number>;
  y: Map<number, number>;
}

export function placeEvents(state: ViewState, idx: Indexed): Placement {
  const lanes = visibleHosts(state);
  const laneOf = new Map(lanes.map((h, i) => [h, i]));
  const x = new Map<number, number>();
  const y = new Map<number, number>();
  if (state.graph === null) return { x, y };
  for (const event of state.graph.events) {
    const lane = laneOf.get(event.host);
    if (lane === undefined) continue; // host hidden
    x.set(event.id, MARGIN_X + lane * LANE_WIDTH);
    y.set(event.id, MARGIN_Y + (idx.layers.get(event.id) ?? 0) * ROW_HEIGHT);
  }
  return { x, y };
}

/** Build the diagram for the current view; an empty graph gives empty axes. */
export function render(doc: Document, state: ViewState): SVGSVGElement {
  const lanes = visibleHosts(state);
  const idx: Indexed | null = state.graph === null ? null : indexGraph(state.graph);
  const maxLayer = idx === null ? 0 : Math.max(0, ...idx.layers.values());
  const width = MARGIN_X * 2 + Math.max(0, lanes.length - 1) * LANE_WIDTH + 60;
  const height = MARGIN_Y * 2 + maxLayer * ROW_HEIGHT + 40;

  const svg = el(doc, "svg", {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
    class: "diagram",
  });

  const defs = el(doc, "defs", {});
  const marker = el(doc, "marker", {
    id: "arrowhead",
    markerWidth: "9",
    markerHeight: "7",
    refX: "9",
    refY: "3.5",
    orient: "auto",
  });
  marker.appendChild(el(doc, "polygon", { points: "0 0, 9 3.5, 0 7", class: "arrowhead" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  if (state.graph === null || idx === null) return svg;
  const graph = state.graph;
  const placement = placeEvents(state, idx);
  const bottom = MARGIN_Y + maxLayer * ROW_HEIGHT + 20;

  lanes.forEach((host, lane) => {
    const x = MARGIN_X + lane * LANE_WIDTH;
    svg.appendChild(
      el(doc, "line", {
        x1: String(x),
        y1: String(MARGIN_Y - 20),
        x2: String(x),
        y2: String(bottom),
        class: "timeline",
        "data-host": host,
      }),
    );
    const label = el(doc, "text", {
      x: String(x),
      y: String(MARGIN_Y - 28),
      class: "host-label",
      "text-anchor": "middle",
    });
    label.textContent = host;
    svg.appendChild(label);
  });

  for (const [a, b] of graph.comm_edges) {
    const x1 = placement.x.get(a);
    const x2 = placement.x.get(b);
    if (x1 === undefined || x2 === undefined) continue; // an endpoint is hidden
    svg.appendChild(
      el(doc, "line", {
        x1: String(x1),
        y1: String(placement.y.get(a)!),
        x2: String(x2),
        y2: String(placement.y.get(b)!),
        class: "comm-edge",
        "marker-end": "url(#arrowhead)",
        "data-edge": `${a}-${b}`,
      }),
    );
  }

  const past = state.selected !== null ? pastCone(idx, state.selected) : new Set<number>();
  const future = state.selected !== null ? futureCone(idx, state.selected) : new Set<number>();
  const focus =
    state.selected !== null && state.radius !== null
      ? neighborhoodBall(idx, state.selected, state.radius)
      : null;

  for (const event of graph.events) {
    const x = placement.x.get(event.id);
    if (x === undefined) continue;
    const y = placement.y.get(event.id)!;
    const classes = ["event"];
    if (state.highlight.has(event.id)) classes.push("highlight");
    if (state.selected === event.id) classes.push("selected");
    if (past.has(event.id)) classes.push("past-cone");
    if (future.has(event.id)) classes.push("future-cone");
    if (focus !== null && !focus.has(event.id)) classes.push("dimmed");
    svg.appendChild(
      el(doc, "circle", {
        cx: String(x),
        cy: String(y),
        r: String(NODE_RADIUS),
        class: classes.join(" "),
        "data-id": String(event.id),
      }),
    );
    const label = el(doc, "text", {
      x: String(x + 12),
      y: String(y + 4),
      class: "event-label",
      "data-label-for": String(event.id),
    });
    label.textContent = event.action;
    svg.appendChild(label);
  }

  return svg;
}
