// Wire types mirroring the service JSON responses.

export interface QueueItem {
  item_id: string;
  series_id: string;
  score: number;
  classification: string;
  pattern_id: string | null;
  queued_at: number;
  status: string;
}

export interface QueuePage {
  total: number;
  items: QueueItem[];
  model_version: number;
}

export interface SeriesOutcome {
  score: number;
  classification: string;
  pattern_id: string | null;
  infeasible: boolean;
  per_step_flags: number[];
  path: [number, number][] | null;
}

export interface SeriesDetail {
  series: { id: string; values: number[]; label: string | null };
  outcome: SeriesOutcome;
}

export interface HeatmapPattern {
  pattern_id: string;
  rows: number;
  cols: number;
  values: number[][];
  band_fraction: number;
}

export interface HeatmapResponse {
  model_version: number;
  patterns: HeatmapPattern[];
}

export type Verdict = "normal" | "anomalous";
