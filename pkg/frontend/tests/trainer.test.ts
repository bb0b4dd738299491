// @vitest-environment jsdom
import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { TrainerView } from "../src/trainer.js";

const SESSION = {
  session_id: "s1",
  status: "done",
  pattern_count: 3,
  per_digit_counts: [0, 2, 1, 0, 0, 0, 0, 0, 0, 0],
  has_network: true,
  config: { learning_rate: 0.2, momentum: 0.8, mse_threshold: 0.05, max_epochs: 10000, rng_seed: 0 },
  report: null,
  error: null,
};

const PATTERNS = {
  patterns: [
    { cells: "1".repeat(96), label: 1 },
    { cells: "0".repeat(95) + "1", label: 1 },
    { cells: ("10".repeat(48)), label: 2 },
  ],
  per_digit_counts: SESSION.per_digit_counts,
};

const PLAIN_PROJECTION = {
  points: [[0, 0], [1, 1], [2, -1]] as [number, number][],
  labels: [1, 1, 2],
  explained_variance: [0.7, 0.2] as [number, number],
  degenerate: false,
  augmented: false,
};

const AUGMENTED_PROJECTION = {
  ...PLAIN_PROJECTION,
  points: [[5, 5], [6, 6], [7, -7]] as [number, number][],
  augmented: true,
};

afterEach(() => vi.unstubAllGlobals());

describe("TrainerView augmentation toggle", () => {
  it("refetches from the server and re-renders without recomputing", async () => {
    const projectionRequests: string[] = [];
    vi.stubGlobal("fetch", async (url: string) => {
      let payload: unknown;
      if (url.includes("/projection")) {
        projectionRequests.push(url);
        payload = url.includes("augment=true") ? AUGMENTED_PROJECTION : PLAIN_PROJECTION;
      } else if (url.endsWith("/patterns")) {
        payload = PATTERNS;
      } else if (url.endsWith("/sessions/s1")) {
        payload = SESSION;
      } else {
        throw new Error(`unexpected request ${url}`);
      }
      return new Response(JSON.stringify(payload), { status: 200 });
    });

    const view = new TrainerView(new ApiClient(), "s1");
    document.body.appendChild(view.element);
    await view.restore();
    expect(projectionRequests.at(-1)).toContain("augment=false");

    const scatter = (view as never as { scatter: { points: { x: number; y: number }[] } }).scatter;
    expect(scatter.points.map((p) => p.x)).toEqual([0, 1, 2]);

    const toggle = view.element.querySelector("#augment-toggle") as HTMLInputElement;
    toggle.checked = true;
    toggle.dispatchEvent(new Event("change"));
    await vi.waitFor(() => {
      expect(projectionRequests.at(-1)).toContain("augment=true");
    });
    // displayed coordinates are exactly the served augmented ones
    await vi.waitFor(() => {
      expect(scatter.points.map((p) => p.x)).toEqual([5, 6, 7]);
    });
  });
});
