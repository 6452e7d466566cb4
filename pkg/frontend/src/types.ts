/** Graph export schema served at /api/graph. */

export interface GraphEvent {
  id: number;
  host: string;
  clock: Record<string, number>;
  action: string;
  description: string;
  sim_time?: number;
}

export type Edge = [number, number];

export interface GraphExport {
  hosts: string[];
  events: GraphEvent[];
  edges: Edge[];
  comm_edges: Edge[];
}

export function isGraphExport(doc: unknown): doc is GraphExport {
  if (typeof doc !== "object" || doc === null) return false;
  const g = doc as Record<string, unknown>;
  return (
    Array.isArray(g.hosts) &&
    Array.isArray(g.events) &&
    Array.isArray(g.edges) &&
    Array.isArray(g.comm_edges)
  );
}
