// Pure chart math for the detail view: scaled polylines, alignment segments
// between the representative chart and the query chart, and one marker per
// direction-bearing alignment step (red when the step failed detection).

export interface Pt {
  x: number;
  y: number;
}

export interface ChartBox {
  width: number;
  height: number;
  padding: number;
}

export function valueRange(...seriesList: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const series of seriesList) {
    for (const v of series) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!isFinite(lo)) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
}

export function scaleSeries(
  values: number[],
  box: ChartBox,
  range: [number, number],
): Pt[] {
  const [lo, hi] = range;
  const innerW = box.width - 2 * box.padding;
  const innerH = box.height - 2 * box.padding;
  const dx = values.length > 1 ? innerW / (values.length - 1) : 0;
  return values.map((v, i) => ({
    x: box.padding + i * dx,
    y: box.padding + (hi - v) * (innerH / (hi - lo)),
  }));
}

// Thin long paths down to roughly `target` drawn segments.
export function thinningStep(count: number, target = 48): number {
  return Math.max(1, Math.ceil(count / target));
}

export interface Segment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

// One line per k-th alignment step, from the representative sample (row) on
// the top chart to the aligned query sample (col) on the bottom chart.
export function alignmentSegments(
  path: [number, number][],
  repPts: Pt[],
  queryPts: Pt[],
  step?: number,
): Segment[] {
  const k = step ?? thinningStep(path.length);
  const out: Segment[] = [];
  for (let i = 0; i < path.length; i += k) {
    const [row, col] = path[i];
    out.push({
      x1: repPts[row].x,
      y1: repPts[row].y,
      x2: queryPts[col].x,
      y2: queryPts[col].y,
    });
  }
  return out;
}

export interface StepMarker {
  x: number;
  y: number;
  flag: number;
}

// Exactly one marker per per-step flag, placed at the aligned query sample.
export function stepMarkers(
  path: [number, number][],
  flags: number[],
  queryPts: Pt[],
): StepMarker[] {
  const out: StepMarker[] = [];
  for (let i = 1; i < path.length; i++) {
    const [, col] = path[i];
    out.push({ x: queryPts[col].x, y: queryPts[col].y, flag: flags[i - 1] ?? 0 });
  }
  return out;
}
