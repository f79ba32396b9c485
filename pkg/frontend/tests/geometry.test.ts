import { describe, expect, it } from "vitest";

import {
  alignmentSegments,
  scaleSeries,
  stepMarkers,
  thinningStep,
  valueRange,
} from "../src/geometry.js";
import { detailSVG } from "../src/render.js";
import type { SeriesDetail } from "../src/types.js";

const BOX = { width: 120, height: 60, padding: 10 };

describe("chart scaling", () => {
  it("shares one value range across both series", () => {
    expect(valueRange([0, 1], [-2, 5])).toEqual([-2, 5]);
    expect(valueRange([3, 3])).toEqual([2, 4]); // flat series widened
    expect(valueRange([])).toEqual([0, 1]);
  });

  it("maps first and last samples to the padded edges", () => {
    const pts = scaleSeries([0, 5, 10], BOX, [0, 10]);
    expect(pts[0]).toEqual({ x: 10, y: 50 });
    expect(pts[2]).toEqual({ x: 110, y: 10 });
    expect(pts[1].x).toBeCloseTo(60);
    expect(pts[1].y).toBeCloseTo(30);
  });
});

describe("alignment overlay", () => {
  const path: [number, number][] = [
    [0, 0],
    [0, 1],
    [1, 2],
    [2, 2],
  ];
  const repPts = scaleSeries([0, 1, 2], BOX, [0, 2]);
  const queryPts = scaleSeries([0, 1, 2], BOX, [0, 2]).map((p) => ({ x: p.x, y: p.y + 100 }));

  it("draws a segment per k-th path step", () => {
    const segments = alignmentSegments(path, repPts, queryPts, 1);
    expect(segments).toHaveLength(4);
    expect(segments[1]).toMatchObject({ x1: repPts[0].x, y1: repPts[0].y, x2: queryPts[1].x });
    expect(alignmentSegments(path, repPts, queryPts, 2)).toHaveLength(2);
  });

  it("thins long paths to a bounded segment count", () => {
    expect(thinningStep(10, 48)).toBe(1);
    expect(thinningStep(480, 48)).toBe(10);
  });

  it("emits exactly one marker per flag", () => {
    const flags = [1, 0, 1];
    const markers = stepMarkers(path, flags, queryPts);
    expect(markers).toHaveLength(flags.length);
    expect(markers.map((m) => m.flag)).toEqual(flags);
    expect(markers[1].x).toBe(queryPts[2].x);
  });
});

describe("detail rendering", () => {
  const detail: SeriesDetail = {
    series: { id: "q", values: [0, 1, 2, 1], label: null },
    outcome: {
      score: 0.3333333333333333,
      classification: "uncertain",
      pattern_id: "ref",
      infeasible: false,
      per_step_flags: [1, 0, 1],
      path: [
        [0, 0],
        [1, 1],
        [2, 2],
        [3, 3],
      ],
    },
  };

  it("draws one marker per flag and styles failures", () => {
    const rendered = detailSVG([0, 1, 2, 1], detail);
    expect(rendered.markerCount).toBe(3);
    expect((rendered.svg.match(/class="step failed"/g) ?? []).length).toBe(1);
    expect((rendered.svg.match(/class="step ok"/g) ?? []).length).toBe(2);
  });

  it("skips overlay when the alignment was infeasible", () => {
    const infeasible: SeriesDetail = {
      series: detail.series,
      outcome: { ...detail.outcome, path: null, per_step_flags: [], infeasible: true },
    };
    const rendered = detailSVG([0, 1, 2, 1], infeasible);
    expect(rendered.markerCount).toBe(0);
    expect(rendered.segmentCount).toBe(0);
    expect(rendered.svg).toContain("polyline");
  });
});
