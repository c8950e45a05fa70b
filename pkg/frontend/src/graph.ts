import { layoutNetwork } from "./layout";
import type { NetworkDocument } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

// one color per cluster, cycled
const CLUSTER_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#ff9da7",
];

export interface GraphHandlers {
  /** Click on a non-base node; the UI excludes the ingredient and re-queries. */
  onExclude: (id: string) => void;
  /** Click on a base node; base ingredients cannot be excluded. */
  onBaseClick?: (id: string) => void;
}

/**
 * Render the node-link document into an SVG element. Every node in the
 * document gets exactly one circle (nothing invented, nothing dropped);
 * base nodes get a distinct ring, clusters get distinct colors.
 */
export function renderNetwork(
  svg: SVGSVGElement,
  doc: NetworkDocument,
  handlers: GraphHandlers,
): void {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const width = Number(svg.getAttribute("width") ?? 640);
  const height = Number(svg.getAttribute("height") ?? 420);
  const positions = layoutNetwork(doc, width, height);

  const clusterOf = new Map<string, number>();
  doc.clusters.forEach((cluster, index) => {
    for (const id of cluster) clusterOf.set(id, index);
  });

  const edgeLayer = document.createElementNS(SVG_NS, "g");
  edgeLayer.setAttribute("class", "edges");
  for (const link of doc.links) {
    const a = positions.get(link.source);
    const b = positions.get(link.target);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke-width", String(Math.min(1 + link.weight * 0.4, 5)));
    line.setAttribute("data-weight", String(link.weight));
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = document.createElementNS(SVG_NS, "g");
  nodeLayer.setAttribute("class", "nodes");
  for (const node of doc.nodes) {
    const p = positions.get(node.id)!;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", node.in_base ? "node base" : "node");
    group.setAttribute("data-id", node.id);

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", String(6 + Math.min(node.degree, 8)));
    circle.setAttribute(
      "fill",
      CLUSTER_COLORS[(clusterOf.get(node.id) ?? 0) % CLUSTER_COLORS.length]!,
    );

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = node.in_base
      ? `${node.label} is a base ingredient and cannot be excluded`
      : `${node.label}: click to exclude`;
    circle.appendChild(title);

    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", p.x.toFixed(1));
    text.setAttribute("y", (p.y - 10 - Math.min(node.degree, 8)).toFixed(1));
    text.textContent = node.label;

    group.appendChild(circle);
    group.appendChild(text);
    group.addEventListener("click", () => {
      if (node.in_base) {
        handlers.onBaseClick?.(node.id);
      } else {
        handlers.onExclude(node.id);
      }
    });
    nodeLayer.appendChild(group);
  }
  svg.appendChild(nodeLayer);
}
