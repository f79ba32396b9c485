// Server-authoritative queue state with optimistic verdict submission.

import { ApiError, Client } from "./api.js";
import type { QueueItem, Verdict } from "./types.js";

export interface SubmitResult {
  ok: boolean;
  message?: string;
}

export class QueueStore {
  items: QueueItem[] = [];
  total = 0;
  modelVersion = 0;

  constructor(private readonly client: Client) {}

  async refresh(limit = 50, offset = 0): Promise<void> {
    const page = await this.client.fetchQueue("pending", limit, offset);
    this.items = page.items;
    this.total = page.total;
    this.modelVersion = page.model_version;
  }

  // Optimistically removes the item; restores it when the service rejects the
  // verdict for a reason other than "someone already labeled it".
  async submit(itemId: string, label: Verdict): Promise<SubmitResult> {
    const index = this.items.findIndex((item) => item.item_id === itemId);
    if (index < 0) {
      return { ok: false, message: `item ${itemId} is not in the queue` };
    }
    const [removed] = this.items.splice(index, 1);
    this.total -= 1;
    try {
      const response = await this.client.submitVerdict(itemId, label);
      this.modelVersion = response.model_version;
      return { ok: true };
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // stale item: it left the pending state elsewhere, keep it removed
        return { ok: false, message: "already labeled elsewhere" };
      }
      this.items.splice(index, 0, removed);
      this.total += 1;
      const message = error instanceof Error ? error.message : String(error);
      return { ok: false, message };
    }
  }
}

// Poll interval controller: steady cadence while healthy, exponential
// backoff up to a cap while the service is unreachable.
export class Backoff {
  private failures = 0;

  constructor(
    private readonly baseMs = 3000,
    private readonly capMs = 30000,
  ) {}

  succeed(): number {
    this.failures = 0;
    return this.baseMs;
  }

  fail(): number {
    this.failures += 1;
    return Math.min(this.capMs, this.baseMs * 2 ** this.failures);
  }
}
