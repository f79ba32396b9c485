// In-memory double of the review service, mirroring its JSON contract:
// pending queue of uncertain detections, feedback bumping the model version
// and the traversal counts along the labeled item's path, 404/409 semantics.

import type { FetchLike } from "../src/api.js";
import type { QueueItem, SeriesDetail } from "../src/types.js";

interface SeededItem {
  item: QueueItem;
  detail: SeriesDetail;
}

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export class FakeService {
  version = 1;
  pending: SeededItem[] = [];
  labeled = new Map<string, string>();
  details = new Map<string, SeriesDetail>();
  counts: number[][];
  repValues: number[];
  patternId = "ref";
  private itemCounter = 0;

  constructor(rows = 6, cols = 6) {
    this.counts = Array.from({ length: rows }, (_, r) =>
      Array.from({ length: cols }, (_, c) => (r === c ? 5 : 0)),
    );
    // keep the normalization peak on a cell feedback paths never touch, so
    // every touched cell visibly drifts in the normalized view
    this.counts[0][cols - 1] = 9;
    this.repValues = Array.from({ length: rows }, (_, i) => Math.sin(i / 2));
  }

  seedUncertain(seriesId: string, score: number, path: [number, number][]): string {
    this.itemCounter += 1;
    const itemId = `item-${String(this.itemCounter).padStart(5, "0")}`;
    const flags = path.slice(1).map((_, i) => (i % 2 === 0 ? 1 : 0));
    const detail: SeriesDetail = {
      series: {
        id: seriesId,
        values: Array.from({ length: this.counts[0].length }, (_, i) => Math.sin(i / 2) + 0.1),
        label: null,
      },
      outcome: {
        score,
        classification: "uncertain",
        pattern_id: this.patternId,
        infeasible: false,
        per_step_flags: flags,
        path,
      },
    };
    this.details.set(seriesId, detail);
    this.pending.push({
      item: {
        item_id: itemId,
        series_id: seriesId,
        score,
        classification: "uncertain",
        pattern_id: this.patternId,
        queued_at: this.itemCounter,
        status: "pending",
      },
      detail,
    });
    return itemId;
  }

  // A decided (non-uncertain) detection: stored, but never queued.
  seedDecided(seriesId: string, score: number, classification: string): void {
    this.details.set(seriesId, {
      series: { id: seriesId, values: [0, 1, 0], label: null },
      outcome: {
        score,
        classification,
        pattern_id: this.patternId,
        infeasible: false,
        per_step_flags: [1, 1],
        path: [
          [0, 0],
          [1, 1],
          [2, 2],
        ],
      },
    });
  }

  normalizedCounts(): number[][] {
    let peak = 0;
    for (const row of this.counts) for (const v of row) peak = Math.max(peak, v);
    return this.counts.map((row) => row.map((v) => (peak > 0 ? v / peak : 0)));
  }

  fetch: FetchLike = async (url, init) => {
    const parsed = new URL(url, "http://fake");
    const path = parsed.pathname;
    const method = (init?.method ?? "GET").toUpperCase();

    if (method === "GET" && path === "/queue") {
      const status = parsed.searchParams.get("status") ?? "pending";
      const limit = Number(parsed.searchParams.get("limit") ?? 50);
      const offset = Number(parsed.searchParams.get("offset") ?? 0);
      const items =
        status === "pending" ? this.pending.map((entry) => entry.item) : [];
      return jsonResponse({
        total: items.length,
        items: items.slice(offset, offset + limit),
        model_version: this.version,
      });
    }

    if (method === "GET" && path.startsWith("/series/")) {
      const seriesId = decodeURIComponent(path.slice("/series/".length));
      const detail = this.details.get(seriesId);
      if (!detail) return jsonResponse({ detail: `unknown series '${seriesId}'` }, 404);
      return jsonResponse(detail);
    }

    if (method === "GET" && path === "/model/heatmap") {
      return jsonResponse({
        model_version: this.version,
        patterns: [
          {
            pattern_id: this.patternId,
            rows: this.counts.length,
            cols: this.counts[0].length,
            values: this.normalizedCounts(),
            band_fraction: 1.0,
          },
        ],
      });
    }

    if (method === "GET" && path === "/model") {
      return jsonResponse({
        version: 1,
        representative: { id: this.patternId, values: this.repValues },
        model_version: this.version,
      });
    }

    if (method === "POST" && path === "/feedback") {
      const body = JSON.parse(String(init?.body)) as { item_id: string; label: string };
      if (this.labeled.has(body.item_id)) {
        return jsonResponse({ detail: `item '${body.item_id}' is labeled` }, 409);
      }
      const index = this.pending.findIndex((entry) => entry.item.item_id === body.item_id);
      if (index < 0) return jsonResponse({ detail: `unknown item '${body.item_id}'` }, 404);
      const [entry] = this.pending.splice(index, 1);
      this.labeled.set(body.item_id, body.label);
      const delta = body.label === "normal" ? 1 : -1;
      for (const [r, c] of entry.detail.outcome.path ?? []) {
        this.counts[r][c] = Math.max(0, this.counts[r][c] + delta);
      }
      this.version += 1;
      return jsonResponse({ model_version: this.version });
    }

    return jsonResponse({ detail: `no route ${method} ${path}` }, 404);
  };
}
