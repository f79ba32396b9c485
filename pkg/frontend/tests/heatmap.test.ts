import { describe, expect, it } from "vitest";

import { cellsChanged, heatColor, heatmapSVG } from "../src/heatmap.js";

describe("heat color scale", () => {
  it("runs light to dark over [0, 1]", () => {
    expect(heatColor(0)).toBe("rgb(248,250,252)");
    expect(heatColor(1)).toBe("rgb(23,58,94)");
    expect(heatColor(-3)).toBe(heatColor(0));
    expect(heatColor(9)).toBe(heatColor(1));
  });
});

describe("grid diff", () => {
  it("finds exactly the changed cells", () => {
    const before = [
      [0, 0.2],
      [0.4, 1],
    ];
    const after = [
      [0, 0.5],
      [0.4, 0.9],
    ];
    expect(cellsChanged(before, after)).toEqual([
      [0, 1],
      [1, 1],
    ]);
    expect(cellsChanged(before, before)).toEqual([]);
  });
});

describe("heatmap svg", () => {
  const pattern = {
    pattern_id: "ref",
    rows: 2,
    cols: 3,
    values: [
      [0, 0.5, 1],
      [0.2, 0, 0.8],
    ],
    band_fraction: 0.9,
  };

  it("renders one rect per cell with row 0 at the bottom", () => {
    const svg = heatmapSVG(pattern, 10);
    expect((svg.match(/<rect /g) ?? []).length).toBe(6);
    // cell (0, 2) has value 1 and sits on the bottom row (y = 10)
    expect(svg).toContain(`x="20" y="10" width="10" height="10" fill="${heatColor(1)}"`);
  });

  it("outlines highlighted cells", () => {
    const svg = heatmapSVG(pattern, 10, [[1, 1]]);
    expect((svg.match(/stroke="#e11d48"/g) ?? []).length).toBe(1);
  });
});
