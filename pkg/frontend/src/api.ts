/** Fetch wrappers for the two server endpoints. */

import { isGraphExport, type GraphExport } from "./types.js";

export async function fetchGraph(): Promise<GraphExport> {
  const response = await fetch("/api/graph");
  if (!response.ok) {
    throw new Error(`GET /api/graph failed: ${response.status}`);
  }
  const doc: unknown = await response.json();
  if (!isGraphExport(doc)) {
    throw new Error("/api/graph returned an unexpected document");
  }
  return doc;
}

export async function searchKeyword(keyword: string, mode: string): Promise<number[]> {
  const params = new URLSearchParams({ keyword, mode });
  const response = await fetch(`/api/search?${params}`);
  if (!response.ok) {
    throw new Error(`GET /api/search failed: ${response.status}`);
  }
  return (await response.json()) as number[];
}
