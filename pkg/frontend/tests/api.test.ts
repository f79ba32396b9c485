import { describe, expect, it } from "vitest";

import { ApiError, Client, representatives } from "../src/api.js";
import { FakeService } from "./fake_service.js";

describe("client", () => {
  it("fetches the pending queue with paging parameters", async () => {
    const service = new FakeService();
    service.seedUncertain("s1", 0.27, [
      [0, 0],
      [1, 1],
    ]);
    service.seedUncertain("s2", 0.29, [
      [0, 0],
      [1, 1],
    ]);
    const client = new Client("", service.fetch);
    const page = await client.fetchQueue("pending", 1, 1);
    expect(page.total).toBe(2);
    expect(page.items).toHaveLength(1);
    expect(page.items[0].series_id).toBe("s2");
    expect(page.model_version).toBe(1);
  });

  it("fetches series detail with path and flags", async () => {
    const service = new FakeService();
    service.seedUncertain("s1", 0.27, [
      [0, 0],
      [1, 1],
      [2, 2],
    ]);
    const client = new Client("", service.fetch);
    const detail = await client.fetchSeries("s1");
    expect(detail.outcome.path).toHaveLength(3);
    expect(detail.outcome.per_step_flags).toHaveLength(2);
    expect(detail.outcome.score).toBe(0.27);
  });

  it("maps service errors to ApiError with status and detail", async () => {
    const service = new FakeService();
    const client = new Client("", service.fetch);
    await expect(client.fetchSeries("nope")).rejects.toMatchObject({
      status: 404,
    });
    try {
      await client.submitVerdict("item-99999", "normal");
      expect.unreachable();
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).message).toContain("unknown item");
    }
  });

  it("extracts representatives from flat and bundled documents", () => {
    const flat = { representative: { id: "a", values: [1, 2] } };
    expect(representatives(flat).get("a")).toEqual([1, 2]);
    const bundle = {
      patterns: [
        { representative: { id: "a", values: [1] } },
        { representative: { id: "b", values: [2] } },
      ],
    };
    const reps = representatives(bundle);
    expect([...reps.keys()].sort()).toEqual(["a", "b"]);
  });
});
