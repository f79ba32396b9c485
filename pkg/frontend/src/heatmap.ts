// Heatmap rendering helpers: light-to-dark color scale over normalized
// traversal counts, plus a grid diff used to highlight model drift after a
// verdict is applied.

import type { HeatmapPattern } from "./types.js";

// 0 -> near-white, 1 -> dark ink.
export function heatColor(value: number): string {
  const v = Math.max(0, Math.min(1, value));
  const channel = (from: number, to: number) => Math.round(from + (to - from) * v);
  const r = channel(248, 23);
  const g = channel(250, 58);
  const b = channel(252, 94);
  return `rgb(${r},${g},${b})`;
}

export function cellsChanged(
  before: number[][],
  after: number[][],
  epsilon = 1e-12,
): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (let r = 0; r < after.length; r++) {
    for (let c = 0; c < after[r].length; c++) {
      const prev = before[r]?.[c] ?? 0;
      if (Math.abs(after[r][c] - prev) > epsilon) out.push([r, c]);
    }
  }
  return out;
}

export function heatmapSVG(
  pattern: HeatmapPattern,
  cellSize = 8,
  highlight: Array<[number, number]> = [],
): string {
  const marked = new Set(highlight.map(([r, c]) => `${r}:${c}`));
  const cells: string[] = [];
  for (let r = 0; r < pattern.rows; r++) {
    for (let c = 0; c < pattern.cols; c++) {
      // row 0 is the alignment start; draw it at the bottom like a lattice
      const y = (pattern.rows - 1 - r) * cellSize;
      const x = c * cellSize;
      const stroke = marked.has(`${r}:${c}`)
        ? ` stroke="#e11d48" stroke-width="1"`
        : "";
      cells.push(
        `<rect x="${x}" y="${y}" width="${cellSize}" height="${cellSize}" ` +
          `fill="${heatColor(pattern.values[r][c])}"${stroke}/>`,
      );
    }
  }
  const width = pattern.cols * cellSize;
  const height = pattern.rows * cellSize;
  return (
    `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${cells.join("")}</svg>`
  );
}
