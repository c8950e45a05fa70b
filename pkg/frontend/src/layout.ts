import type { NetworkDocument } from "./types";

export interface Point {
  x: number;
  y: number;
}

/**
 * Deterministic force-directed layout: nodes start on a circle (in document
 * order), then repulsion between all pairs, spring attraction along links,
 * and a weak centering pull run for a fixed number of iterations. No
 * randomness, so the same document always lays out the same way.
 */
export function layoutNetwork(
  doc: NetworkDocument,
  width: number,
  height: number,
  iterations = 180,
): Map<string, Point> {
  const nodes = doc.nodes.map((n) => n.id);
  const positions = new Map<string, Point>();
  const count = nodes.length;
  if (count === 0) return positions;

  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.35;
  nodes.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / count;
    positions.set(id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  if (count === 1) {
    positions.set(nodes[0]!, { x: cx, y: cy });
    return positions;
  }

  const area = width * height;
  const k = Math.sqrt(area / count) * 0.6; // ideal spacing
  const maxWeight = Math.max(1, ...doc.links.map((l) => l.weight));

  for (let iter = 0; iter < iterations; iter++) {
    const cooling = 1 - iter / iterations;
    const step = k * 0.12 * cooling;
    const force = new Map<string, Point>(nodes.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < count; i++) {
      for (let j = i + 1; j < count; j++) {
        const a = positions.get(nodes[i]!)!;
        const b = positions.get(nodes[j]!)!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          // identical positions: push apart along a fixed direction
          dx = 1;
          dy = 0;
          dist = 1;
        }
        const repulse = (k * k) / dist;
        const fa = force.get(nodes[i]!)!;
        const fb = force.get(nodes[j]!)!;
        fa.x += (dx / dist) * repulse;
        fa.y += (dy / dist) * repulse;
        fb.x -= (dx / dist) * repulse;
        fb.y -= (dy / dist) * repulse;
      }
    }

    for (const link of doc.links) {
      const a = positions.get(link.source);
      const b = positions.get(link.target);
      if (!a || !b) continue;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const pull = ((dist * dist) / k) * (0.5 + (0.5 * link.weight) / maxWeight);
      const fa = force.get(link.source)!;
      const fb = force.get(link.target)!;
      fa.x -= (dx / dist) * pull;
      fa.y -= (dy / dist) * pull;
      fb.x += (dx / dist) * pull;
      fb.y += (dy / dist) * pull;
    }

    for (const id of nodes) {
      const p = positions.get(id)!;
      const f = force.get(id)!;
      f.x += (cx - p.x) * 0.02;
      f.y += (cy - p.y) * 0.02;
      const magnitude = Math.max(Math.hypot(f.x, f.y), 1e-6);
      const capped = Math.min(magnitude, step * 10);
      p.x += (f.x / magnitude) * capped * 0.1;
      p.y += (f.y / magnitude) * capped * 0.1;
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return positions;
}
