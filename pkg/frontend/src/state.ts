/**
 * View state and its transitions.
 *
 * Transitions are pure: each returns a fresh state, so the UI redraws from
 * one reducer-style entry point and tests can drive transitions directly.
 * Search never filters client-side; the highlight set is whatever the
 * server returned, which keeps UI results identical to CLI results.
 */

import type { GraphExport } from "./types.js";

export type SearchFn = (keyword: string, mode: string) => Promise<number[]>;

export interface ViewState {
  graph: GraphExport | null;
  highlight: Set<number>;
  hiddenHosts: Set<string>;
  selected: number | null;
  /** Neighborhood focus in covering-edge hops; null means no focus. */
  radius: number | null;
  /** True when the graph came from /api/graph and /api/search is usable. */
  searchAvailable: boolean;
  notice: string;
}

export function initialState(): ViewState {
  return {
    graph: null,
    highlight: new Set(),
    hiddenHosts: new Set(),
    selected: null,
    radius: null,
    searchAvailable: false,
    notice: "no graph loaded",
  };
}

export function loadGraph(state: ViewState, graph: GraphExport, fromServer: boolean): ViewState {
  return {
    ...initialState(),
    graph,
    searchAvailable: fromServer,
    notice: fromServer
      ? `loaded ${graph.events.length} events from server`
      : `loaded ${graph.events.length} events from file (search needs the server)`,
  };
}

/** Replace the highlight set with the server's result for a keyword. */
export async function searchBox(
  state: ViewState,
  keyword: string,
  searchFn: SearchFn,
  mode = "action-exact",
): Promise<ViewState> {
  if (state.graph === null) {
    return { ...state, notice: "no graph loaded" };
  }
  if (keyword.trim() === "") {
    return { ...state, notice: "enter a keyword to search" };
  }
  if (!state.searchAvailable) {
    return { ...state, notice: "search needs the server; reload via /api/graph" };
  }
  const ids = await searchFn(keyword, mode);
  return {
    ...state,
    highlight: new Set(ids),
    notice: `${ids.length} match${ids.length === 1 ? "" : "es"} for "${keyword}"`,
  };
}

export function inspect(state: ViewState, id: number): ViewState {
  if (state.graph === null || !state.graph.events.some((e) => e.id === id)) {
    return { ...state, notice: `unknown event ${id}` };
  }
  return { ...state, selected: id, notice: `inspecting event ${id}` };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selected: null };
}

export function setHostHidden(state: ViewState, host: string, hidden: boolean): ViewState {
  const hiddenHosts = new Set(state.hiddenHosts);
  if (hidden) {
    hiddenHosts.add(host);
  } else {
    hiddenHosts.delete(host);
  }
  let selected = state.selected;
  if (selected !== null && state.graph !== null) {
    const event = state.graph.events.find((e) => e.id === selected);
    if (event !== undefined && hiddenHosts.has(event.host)) {
      selected = null; // hiding a host abandons any selection on it
    }
  }
  return { ...state, hiddenHosts, selected };
}

export function setRadius(state: ViewState, radius: number | null): ViewState {
  if (radius !== null && (!Number.isInteger(radius) || radius < 0)) {
    return { ...state, notice: "radius must be a non-negative integer" };
  }
  return { ...state, radius };
}

export function visibleHosts(state: ViewState): string[] {
  if (state.graph === null) return [];
  return state.graph.hosts.filter((h) => !state.hiddenHosts.has(h)).sort();
}
