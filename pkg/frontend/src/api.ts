// Thin typed client over the service HTTP API. All model state flows through
// here; the console never computes scores or mutates anything except via
// POST /feedback.

import type { HeatmapResponse, QueuePage, SeriesDetail, Verdict } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function detailOf(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    return body.detail ?? response.statusText;
  } catch {
    return response.statusText;
  }
}

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await detailOf(response));
    }
    return (await response.json()) as T;
  }

  fetchQueue(status = "pending", limit = 50, offset = 0): Promise<QueuePage> {
    return this.request<QueuePage>(`/queue?status=${status}&limit=${limit}&offset=${offset}`);
  }

  fetchSeries(seriesId: string): Promise<SeriesDetail> {
    return this.request<SeriesDetail>(`/series/${encodeURIComponent(seriesId)}`);
  }

  fetchHeatmap(): Promise<HeatmapResponse> {
    return this.request<HeatmapResponse>("/model/heatmap");
  }

  fetchModel(): Promise<Record<string, unknown>> {
    return this.request<Record<string, unknown>>("/model");
  }

  submitVerdict(itemId: string, label: Verdict): Promise<{ model_version: number }> {
    return this.request<{ model_version: number }>("/feedback", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ item_id: itemId, label }),
    });
  }
}

// Pull each pattern's representative values out of a model document, which is
// either a flat single-pattern document or {patterns: [...]}.
export function representatives(doc: Record<string, unknown>): Map<string, number[]> {
  const out = new Map<string, number[]>();
  const collect = (entry: Record<string, unknown>) => {
    const rep = entry["representative"] as { id: string; values: number[] } | undefined;
    if (rep) out.set(rep.id, rep.values);
  };
  const patterns = doc["patterns"];
  if (Array.isArray(patterns)) {
    for (const entry of patterns) collect(entry as Record<string, unknown>);
  } else {
    collect(doc);
  }
  return out;
}
