/** Shapes of the emitted artifact files the explorer consumes. */

export interface GraphNode {
  id: string;
  label: string;
  group: string; // Part label for sections, "external" for cited Acts
  nodeSize: number; // total inbound textual mentions of this node
  url: string;
}

export interface GraphLink {
  source: string;
  target: string;
  thick: number; // mention count behind the edge
}

export type GraphMode = "inbound" | "outbound";

export interface GraphDocument {
  mode: GraphMode;
  nodes: GraphNode[];
  links: GraphLink[];
}

export class SchemaError extends Error {}

function fail(message: string): never {
  throw new SchemaError(message);
}

/**
 * Validate a parsed JSON value against the graph-document contract.
 * Throws SchemaError on any violation; callers must not partially render.
 */
export function validateGraphDocument(data: unknown): GraphDocument {
  if (typeof data !== "object" || data === null) fail("document is not an object");
  const doc = data as Record<string, unknown>;
  if (doc.mode !== "inbound" && doc.mode !== "outbound") fail(`bad mode: ${String(doc.mode)}`);
  if (!Array.isArray(doc.nodes) || !Array.isArray(doc.links)) fail("nodes/links must be arrays");

  const ids = new Set<string>();
  for (const raw of doc.nodes) {
    const node = raw as Record<string, unknown>;
    if (typeof node.id !== "string" || node.id.length === 0) fail("node id must be a string");
    if (typeof node.label !== "string") fail(`node ${node.id}: label must be a string`);
    if (typeof node.group !== "string") fail(`node ${node.id}: group must be a string`);
    if (typeof node.nodeSize !== "number" || node.nodeSize < 0 || !Number.isInteger(node.nodeSize))
      fail(`node ${node.id}: nodeSize must be a non-negative integer`);
    if (typeof node.url !== "string") fail(`node ${node.id}: url must be a string`);
    if (ids.has(node.id)) fail(`duplicate node id ${node.id}`);
    ids.add(node.id);
  }
  for (const raw of doc.links) {
    const link = raw as Record<string, unknown>;
    if (typeof link.source !== "string" || typeof link.target !== "string")
      fail("link endpoints must be strings");
    if (!ids.has(link.source)) fail(`link source ${link.source} is not a node`);
    if (!ids.has(link.target)) fail(`link target ${link.target} is not a node`);
    if (typeof link.thick !== "number" || link.thick < 1 || !Number.isInteger(link.thick))
      fail(`link ${link.source}->${link.target}: thick must be a positive integer`);
  }
  return data as unknown as GraphDocument;
}
