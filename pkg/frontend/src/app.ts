// Console wiring: polling loop, selection, verdicts, heatmap drift display.

import { Client, representatives } from "./api.js";
import { cellsChanged, heatmapSVG } from "./heatmap.js";
import { detailSVG, fmtScore, queueRowHTML } from "./render.js";
import { Backoff, QueueStore } from "./store.js";
import type { HeatmapResponse, Verdict } from "./types.js";

export class App {
  private store: QueueStore;
  private backoff = new Backoff();
  private reps = new Map<string, number[]>();
  private lastHeatmap: HeatmapResponse | null = null;
  private selectedItem: string | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly root: Document,
    private readonly client: Client,
  ) {
    this.store = new QueueStore(client);
  }

  async start(): Promise<void> {
    try {
      this.reps = representatives(await this.client.fetchModel());
      await this.refreshHeatmap([]);
    } catch (error) {
      this.toast(error instanceof Error ? error.message : String(error));
    }
    await this.tick();
  }

  stop(): void {
    if (this.timer !== null) clearTimeout(this.timer);
  }

  private schedule(delay: number): void {
    this.timer = setTimeout(() => void this.tick(), delay);
  }

  private async tick(): Promise<void> {
    try {
      await this.store.refresh();
      this.renderQueue();
      this.renderVersion();
      this.schedule(this.backoff.succeed());
    } catch {
      this.toast("service unreachable, retrying");
      this.schedule(this.backoff.fail());
    }
  }

  private el(id: string): HTMLElement {
    const node = this.root.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node;
  }

  private toast(message: string): void {
    const node = this.el("toast");
    node.textContent = message;
    node.classList.add("visible");
    setTimeout(() => node.classList.remove("visible"), 4000);
  }

  private renderVersion(): void {
    this.el("version").textContent = `model v${this.store.modelVersion}`;
  }

  private renderQueue(): void {
    const list = this.el("queue");
    if (!this.store.items.length) {
      list.innerHTML = `<li class="empty">nothing waiting for review</li>`;
      return;
    }
    list.innerHTML = this.store.items
      .map((item) => queueRowHTML(item, item.item_id === this.selectedItem))
      .join("");
    for (const row of Array.from(list.querySelectorAll<HTMLElement>(".queue-row"))) {
      row.addEventListener("click", () => {
        void this.select(row.dataset.item!, row.dataset.series!);
      });
    }
  }

  private async select(itemId: string, seriesId: string): Promise<void> {
    this.selectedItem = itemId;
    this.renderQueue();
    try {
      const detail = await this.client.fetchSeries(seriesId);
      const rep = detail.outcome.pattern_id
        ? (this.reps.get(detail.outcome.pattern_id) ?? null)
        : null;
      const rendered = detailSVG(rep, detail);
      this.el("detail-chart").innerHTML = rendered.svg;
      this.el("detail-meta").innerHTML =
        `<span>${detail.series.id}</span>` +
        `<span>score ${fmtScore(detail.outcome.score)}</span>` +
        `<span>${detail.outcome.classification}</span>`;
      const normalBtn = this.el("verdict-normal") as HTMLButtonElement;
      const anomalousBtn = this.el("verdict-anomalous") as HTMLButtonElement;
      normalBtn.disabled = anomalousBtn.disabled = false;
      normalBtn.onclick = () => void this.verdict(itemId, "normal");
      anomalousBtn.onclick = () => void this.verdict(itemId, "anomalous");
    } catch (error) {
      this.toast(error instanceof Error ? error.message : String(error));
    }
  }

  private async verdict(itemId: string, label: Verdict): Promise<void> {
    (this.el("verdict-normal") as HTMLButtonElement).disabled = true;
    (this.el("verdict-anomalous") as HTMLButtonElement).disabled = true;
    const result = await this.store.submit(itemId, label);
    this.renderQueue();
    this.renderVersion();
    if (!result.ok) {
      this.toast(result.message ?? "verdict failed");
      return;
    }
    if (this.selectedItem === itemId) {
      this.selectedItem = null;
      this.el("detail-chart").innerHTML = "";
      this.el("detail-meta").textContent = "pick an item from the queue";
    }
    await this.refreshHeatmap();
    this.toast(`recorded ${label}, model v${this.store.modelVersion}`);
  }

  private async refreshHeatmap(forceHighlight?: Array<[number, number]>): Promise<void> {
    const previous = this.lastHeatmap;
    const next = await this.client.fetchHeatmap();
    this.lastHeatmap = next;
    const pattern = next.patterns[0];
    if (!pattern) return;
    const highlight =
      forceHighlight ??
      (previous
        ? cellsChanged(previous.patterns[0]?.values ?? [], pattern.values)
        : []);
    this.el("heatmap").innerHTML = heatmapSVG(pattern, 8, highlight);
    this.el("heatmap-meta").textContent =
      `${pattern.pattern_id}: diagonal mass ${pattern.band_fraction.toFixed(3)}`;
  }
}

export function bootstrap(root: Document, apiBase: string): App {
  const app = new App(root, new Client(apiBase));
  void app.start();
  return app;
}
