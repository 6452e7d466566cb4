/**
 * Client-side graph helpers: layering, adjacency, and causal cones.
 *
 * The export's `edges` are the covering happens-before edges, so their
 * transitive closure is the full causal relation; everything here derives
 * from walking them.
 */

import type { GraphExport } from "./types.js";

export interface Indexed {
  /** layer[id]: longest-path depth from the minimal events. */
  layers: Map<number, number>;
  successors: Map<number, number[]>;
  predecessors: Map<number, number[]>;
  hostOf: Map<number, string>;
}

export function indexGraph(graph: GraphExport): Indexed {
  const successors = new Map<number, number[]>();
  const predecessors = new Map<number, number[]>();
  const hostOf = new Map<number, string>();
  for (const e of graph.events) {
    successors.set(e.id, []);
    predecessors.set(e.id, []);
    hostOf.set(e.id, e.host);
  }
  for (const [a, b] of graph.edges) {
    successors.get(a)?.push(b);
    predecessors.get(b)?.push(a);
  }
  return { layers: computeLayers(graph), successors, predecessors, hostOf };
}

/** Longest-path layering via Kahn's algorithm; minimal events sit at 0. */
export function computeLayers(graph: GraphExport): Map<number, number> {
  const indegree = new Map<number, number>();
  const succ = new Map<number, number[]>();
  for (const e of graph.events) {
    indegree.set(e.id, 0);
    succ.set(e.id, []);
  }
  for (const [a, b] of graph.edges) {
    succ.get(a)!.push(b);
    indegree.set(b, (indegree.get(b) ?? 0) + 1);
  }
  const layer = new Map<number, number>();
  const ready: number[] = [];
  for (const [id, deg] of indegree) {
    if (deg === 0) {
      ready.push(id);
      layer.set(id, 0);
    }
  }
  ready.sort((a, b) => a - b);
  let done = 0;
  while (ready.length > 0) {
    const node = ready.shift()!;
    done += 1;
    for (const next of succ.get(node)!) {
      layer.set(next, Math.max(layer.get(next) ?? 0, layer.get(node)! + 1));
      const deg = indegree.get(next)! - 1;
      indegree.set(next, deg);
      if (deg === 0) ready.push(next);
    }
  }
  if (done !== graph.events.length) {
    throw new Error("export edges contain a cycle");
  }
  return layer;
}

function walk(start: number, step: Map<number, number[]>): Set<number> {
  const seen = new Set<number>();
  const stack = [...(step.get(start) ?? [])];
  while (stack.length > 0) {
    const node = stack.pop()!;
    if (seen.has(node)) continue;
    seen.add(node);
    stack.push(...(step.get(node) ?? []));
  }
  return seen;
}

/** Everything the event causally depends on. */
export function pastCone(idx: Indexed, id: number): Set<number> {
  return walk(id, idx.predecessors);
}

/** Everything causally downstream of the event. */
export function futureCone(idx: Indexed, id: number): Set<number> {
  return walk(id, idx.successors);
}

/** True iff a happens-before b, by walking covering edges. */
export function happensBefore(idx: Indexed, a: number, b: number): boolean {
  return futureCone(idx, a).has(b);
}

/** Events within `radius` hops of `center`, edges taken undirected. */
export function neighborhoodBall(idx: Indexed, center: number, radius: number): Set<number> {
  const ball = new Set<number>([center]);
  let frontier = [center];
  for (let hop = 0; hop < radius; hop += 1) {
    const next: number[] = [];
    for (const node of frontier) {
      for (const other of [...(idx.successors.get(node) ?? []), ...(idx.predecessors.get(node) ?? [])]) {
        if (!ball.has(other)) {
          ball.add(other);
          next.push(other);
        }
      }
    }
    frontier = next;
  }
  return ball;
}

export function formatClock(clock: Record<string, number>): string {
  const parts = Object.keys(clock)
    .sort()
    .map((host) => `"${host}":${clock[host]}`);
  return `{${parts.join(",")}}`;
}
