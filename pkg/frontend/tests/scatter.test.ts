// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { ScatterView } from "../src/scatter.js";
import type { ProjectionResponse } from "../src/types.js";

function makeView(): ScatterView {
  const canvas = document.createElement("canvas");
  canvas.width = 400;
  canvas.height = 300;
  return new ScatterView(canvas);
}

function projection(points: [number, number][], labels?: (number | null)[]): ProjectionResponse {
  return {
    points,
    labels: labels ?? points.map((_, i) => i % 10),
    explained_variance: [0.6, 0.2],
    degenerate: false,
    augmented: false,
  };
}

const SAMPLE = projection([
  [-1.5, 0.2], [0.1, 1.1], [2.0, -0.7], [0.4, 0.4], [-0.3, -1.2],
]);

describe("ScatterView geometry", () => {
  it("round-trips world and screen coordinates", () => {
    const view = makeView();
    view.setData(SAMPLE);
    for (const point of view.points) {
      const screen = view.toScreen(point.x, point.y);
      const world = view.toWorld(screen.x, screen.y);
      expect(world.x).toBeCloseTo(point.x, 9);
      expect(world.y).toBeCloseTo(point.y, 9);
    }
  });

  it("fit places every point on the canvas", () => {
    const view = makeView();
    view.setData(SAMPLE);
    for (const point of view.points) {
      const { x, y } = view.toScreen(point.x, point.y);
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(view.canvas.width);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(view.canvas.height);
    }
  });

  it("zoom keeps the anchor point fixed on screen", () => {
    const view = makeView();
    view.setData(SAMPLE);
    const anchorWorld = view.toWorld(120, 80);
    view.zoomAt(120, 80, 1.7);
    const moved = view.toScreen(anchorWorld.x, anchorWorld.y);
    expect(moved.x).toBeCloseTo(120, 6);
    expect(moved.y).toBeCloseTo(80, 6);
    expect(view.transform.scale).toBeGreaterThan(0);
  });

  it("pan shifts screen positions by the drag delta", () => {
    const view = makeView();
    view.setData(SAMPLE);
    const before = view.toScreen(view.points[0].x, view.points[0].y);
    view.pan(25, -10);
    const after = view.toScreen(view.points[0].x, view.points[0].y);
    expect(after.x - before.x).toBeCloseTo(25, 9);
    expect(after.y - before.y).toBeCloseTo(-10, 9);
  });
});

describe("point identity under interaction", () => {
  it("hit testing finds the same point after arbitrary zooms and pans", () => {
    const view = makeView();
    view.setData(SAMPLE);
    // a deterministic zigzag of zooms and pans
    view.zoomAt(200, 150, 1.6);
    view.pan(40, -30);
    view.zoomAt(90, 220, 1 / 1.3);
    view.pan(-12, 55);
    view.zoomAt(310, 40, 2.1);
    for (const point of view.points) {
      const screen = view.toScreen(point.x, point.y);
      const hit = view.hitTest(screen.x, screen.y);
      expect(hit).not.toBeNull();
      expect(hit!.index).toBe(point.index);
    }
  });

  it("hover reports the point whose thumbnail should be shown", () => {
    const canvas = document.createElement("canvas");
    canvas.width = 400;
    canvas.height = 300;
    const hovers: (number | null)[] = [];
    const view = new ScatterView(canvas, (p) => hovers.push(p ? p.index : null));
    view.setData(SAMPLE);
    const target = view.points[2];
    const screen = view.toScreen(target.x, target.y);
    canvas.dispatchEvent(new MouseEvent("mousemove", {
      clientX: screen.x, clientY: screen.y, bubbles: true,
    }));
    expect(hovers.at(-1)).toBe(2);
  });

  it("misses when clicking far from every point", () => {
    const view = makeView();
    view.setData(SAMPLE);
    view.zoomAt(200, 150, 8); // spread points far apart
    expect(view.hitTest(1, 1)).toBeNull();
  });
});

describe("served data is displayed verbatim", () => {
  it("setData replaces all points with exactly the served coordinates", () => {
    const view = makeView();
    view.setData(SAMPLE);
    const replacement = projection([[9.5, -3.25], [-8.125, 4.75]], [7, 1]);
    view.setData(replacement);
    expect(view.points.length).toBe(2);
    expect(view.points[0]).toMatchObject({ x: 9.5, y: -3.25, label: 7, index: 0 });
    expect(view.points[1]).toMatchObject({ x: -8.125, y: 4.75, label: 1, index: 1 });
  });
});
