/** Node coloring: one color per Part group; distinct colors per external Act. */

import type { GraphNode } from "./types.js";

export const PART_PALETTE = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
  "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0",
];

export const EXTERNAL_PALETTE = [
  "#8dd3c7", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
  "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5",
  "#ffed6f", "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
  "#66a61e", "#e6ab02", "#a6761d", "#666666", "#386cb0",
];

function hashString(s: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < s.length; i++) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 16777619) >>> 0;
  }
  return h >>> 0;
}

/** Pure function of the group label: same group, same color. */
export function colorForGroup(group: string): string {
  const index = /^\d+$/.test(group) ? parseInt(group, 10) : hashString(group);
  return PART_PALETTE[index % PART_PALETTE.length]!;
}

/**
 * External Acts are each a single colored node: colors are assigned by
 * first appearance order in the artifact file, so they are stable for a
 * given emitted document.
 */
export function externalColors(nodes: GraphNode[]): Map<string, string> {
  const colors = new Map<string, string>();
  let next = 0;
  for (const node of nodes) {
    if (node.group === "external" && !colors.has(node.id)) {
      colors.set(node.id, EXTERNAL_PALETTE[next % EXTERNAL_PALETTE.length]!);
      next += 1;
    }
  }
  return colors;
}

export function nodeColor(node: GraphNode, externals: Map<string, string>): string {
  if (node.group === "external") {
    return externals.get(node.id) ?? EXTERNAL_PALETTE[0]!;
  }
  return colorForGroup(node.group);
}
