// SVG builders for the queue and the alignment detail view.

import {
  alignmentSegments,
  scaleSeries,
  stepMarkers,
  thinningStep,
  valueRange,
  type ChartBox,
  type Pt,
} from "./geometry.js";
import type { QueueItem, SeriesDetail } from "./types.js";

// Scores are displayed exactly as the service reported them.
export function fmtScore(score: number): string {
  return String(score);
}

function polyline(pts: Pt[], cls: string): string {
  const points = pts.map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`).join(" ");
  return `<polyline class="${cls}" fill="none" points="${points}"/>`;
}

export function queueRowHTML(item: QueueItem, selected: boolean): string {
  return (
    `<li class="queue-row${selected ? " selected" : ""}" data-item="${item.item_id}" ` +
    `data-series="${item.series_id}">` +
    `<span class="sid">${item.series_id}</span>` +
    `<span class="badge">${fmtScore(item.score)}</span>` +
    `</li>`
  );
}

export interface DetailRender {
  svg: string;
  markerCount: number;
  segmentCount: number;
}

// Representative on top, query below, alignment lines between the two,
// and one marker per direction-bearing step (red when detection failed).
export function detailSVG(
  repValues: number[] | null,
  detail: SeriesDetail,
  width = 640,
  chartHeight = 150,
  gap = 60,
): DetailRender {
  const query = detail.series.values;
  const rep = repValues ?? [];
  const box: ChartBox = { width, height: chartHeight, padding: 10 };
  const range = valueRange(rep, query);
  const repPts = scaleSeries(rep, box, range);
  const queryPts = scaleSeries(query, box, range).map((p) => ({
    x: p.x,
    y: p.y + chartHeight + gap,
  }));
  const parts: string[] = [];
  if (repPts.length) parts.push(polyline(repPts, "series rep"));
  if (queryPts.length) parts.push(polyline(queryPts, "series query"));

  let segmentCount = 0;
  let markerCount = 0;
  const path = detail.outcome.path;
  if (path && repPts.length) {
    const step = thinningStep(path.length);
    const segments = alignmentSegments(path, repPts, queryPts, step);
    segmentCount = segments.length;
    for (const s of segments) {
      parts.push(
        `<line class="align" x1="${s.x1.toFixed(2)}" y1="${s.y1.toFixed(2)}" ` +
          `x2="${s.x2.toFixed(2)}" y2="${s.y2.toFixed(2)}"/>`,
      );
    }
    const markers = stepMarkers(path, detail.outcome.per_step_flags, queryPts);
    markerCount = markers.length;
    for (const m of markers) {
      parts.push(
        `<circle class="step ${m.flag ? "ok" : "failed"}" ` +
          `cx="${m.x.toFixed(2)}" cy="${m.y.toFixed(2)}" r="2.5"/>`,
      );
    }
  }
  const height = 2 * chartHeight + gap;
  const svg =
    `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${parts.join("")}</svg>`;
  return { svg, markerCount, segmentCount };
}
