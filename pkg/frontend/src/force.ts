/** Deterministic force-directed layout.
 *
 * Positions are seeded from node ids and the simulation is plain
 * arithmetic, so the same document always lays out identically
 * (reproducible screenshots, stable tests).
 */

import type { GraphDocument } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export function hashString(s: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < s.length; i++) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 16777619) >>> 0;
  }
  return h >>> 0;
}

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
}

export function computeLayout(doc: GraphDocument, options: LayoutOptions): Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 120;
  const n = doc.nodes.length;
  const index = new Map<string, number>();
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);

  doc.nodes.forEach((node, i) => {
    index.set(node.id, i);
    const rand = mulberry32(hashString(node.id));
    xs[i] = width * (0.1 + 0.8 * rand());
    ys[i] = height * (0.1 + 0.8 * rand());
  });

  const springs: Array<[number, number]> = [];
  for (const link of doc.links) {
    const a = index.get(link.source);
    const b = index.get(link.target);
    if (a !== undefined && b !== undefined && a !== b) springs.push([a, b]);
  }

  const area = width * height;
  const k = Math.sqrt(area / Math.max(n, 1)) * 0.7;
  const dx = new Float64Array(n);
  const dy = new Float64Array(n);

  for (let iter = 0; iter < iterations; iter++) {
    dx.fill(0);
    dy.fill(0);
    // pairwise repulsion
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = xs[i]! - xs[j]!;
        let vy = ys[i]! - ys[j]!;
        let d2 = vx * vx + vy * vy;
        if (d2 < 0.01) {
          // deterministic tie-break for coincident nodes
          vx = 0.01 * ((i % 7) - 3);
          vy = 0.01 * ((j % 5) - 2);
          d2 = vx * vx + vy * vy + 0.01;
        }
        const force = (k * k) / d2;
        dx[i]! += vx * force * 0.01;
        dy[i]! += vy * force * 0.01;
        dx[j]! -= vx * force * 0.01;
        dy[j]! -= vy * force * 0.01;
      }
    }
    // spring attraction along links
    for (const [a, b] of springs) {
      const vx = xs[a]! - xs[b]!;
      const vy = ys[a]! - ys[b]!;
      const d = Math.sqrt(vx * vx + vy * vy) || 0.1;
      const force = (d * d) / k / d;
      dx[a]! -= vx * force * 0.02;
      dy[a]! -= vy * force * 0.02;
      dx[b]! += vx * force * 0.02;
      dy[b]! += vy * force * 0.02;
    }
    // gentle centering plus cooling cap
    const temperature = (1 - iter / iterations) * k;
    for (let i = 0; i < n; i++) {
      dx[i]! += (width / 2 - xs[i]!) * 0.005;
      dy[i]! += (height / 2 - ys[i]!) * 0.005;
      const len = Math.sqrt(dx[i]! * dx[i]! + dy[i]! * dy[i]!) || 1;
      const cap = Math.min(len, temperature);
      xs[i] = Math.min(width - 8, Math.max(8, xs[i]! + (dx[i]! / len) * cap));
      ys[i] = Math.min(height - 8, Math.max(8, ys[i]! + (dy[i]! / len) * cap));
    }
  }

  const out = new Map<string, Point>();
  doc.nodes.forEach((node, i) => out.set(node.id, { x: xs[i]!, y: ys[i]! }));
  return out;
}
