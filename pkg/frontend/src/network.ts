/** SVG renderer for the weighted citation networks. */

import { externalColors, nodeColor } from "./color.js";
import { computeLayout } from "./force.js";
import type { GraphDocument, GraphNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface NetworkCallbacks {
  onNodeClick?: (node: GraphNode) => void;
  onNodeHover?: (node: GraphNode | null, event?: MouseEvent) => void;
}

/** Node radius grows strictly with nodeSize; never-referenced nodes keep a minimum. */
export function radiusFor(nodeSize: number): number {
  return 4 + 2 * Math.sqrt(nodeSize);
}

/** Edge width grows strictly with thick. */
export function strokeWidthFor(thick: number): number {
  return 0.8 + 0.9 * Math.sqrt(thick);
}

export function renderNetwork(
  container: HTMLElement,
  doc: GraphDocument,
  callbacks: NetworkCallbacks = {},
): SVGSVGElement {
  const width = 960;
  const height = 640;
  const positions = computeLayout(doc, { width, height });
  const externals = externalColors(doc.nodes);

  const svg = container.ownerDocument.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", `network network-${doc.mode}`);

  const edgeLayer = container.ownerDocument.createElementNS(SVG_NS, "g");
  edgeLayer.setAttribute("class", "edges");
  for (const link of doc.links) {
    const a = positions.get(link.source);
    const b = positions.get(link.target);
    if (!a || !b) continue;
    const line = container.ownerDocument.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "edge");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke-width", strokeWidthFor(link.thick).toFixed(2));
    line.setAttribute("data-source", link.source);
    line.setAttribute("data-target", link.target);
    line.setAttribute("data-thick", String(link.thick));
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = container.ownerDocument.createElementNS(SVG_NS, "g");
  nodeLayer.setAttribute("class", "nodes");
  for (const node of doc.nodes) {
    const at = positions.get(node.id);
    if (!at) continue;
    const circle = container.ownerDocument.createElementNS(SVG_NS, "circle");
    circle.setAttribute("class", "node");
    circle.setAttribute("cx", at.x.toFixed(1));
    circle.setAttribute("cy", at.y.toFixed(1));
    circle.setAttribute("r", radiusFor(node.nodeSize).toFixed(2));
    circle.setAttribute("fill", nodeColor(node, externals));
    circle.setAttribute("data-id", node.id);
    circle.setAttribute("data-group", node.group);
    circle.setAttribute("data-node-size", String(node.nodeSize));
    const title = container.ownerDocument.createElementNS(SVG_NS, "title");
    title.textContent = node.label;
    circle.appendChild(title);
    circle.addEventListener("click", () => callbacks.onNodeClick?.(node));
    circle.addEventListener("mouseenter", (event) =>
      callbacks.onNodeHover?.(node, event as MouseEvent),
    );
    circle.addEventListener("mouseleave", () => callbacks.onNodeHover?.(null));
    nodeLayer.appendChild(circle);
  }
  svg.appendChild(nodeLayer);

  container.replaceChildren(svg);
  return svg;
}
