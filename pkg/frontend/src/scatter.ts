import type { ProjectionResponse } from "./types.js";

/** Fixed categorical palette for digits 0-9. */
export const DIGIT_COLORS = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface ScatterPoint {
  x: number;
  y: number;
  label: number | null;
  index: number;
}

/**
 * Zoomable, pannable scatter of projected patterns on a canvas.
 *
 * All geometry (world/screen transforms, wheel zoom anchored at the
 * cursor, drag pan, nearest-point hit testing) lives in pure methods so
 * it can be exercised headlessly; painting is skipped when no 2D context
 * exists. The view never recomputes projections: `setData` replaces the
 * points wholesale with whatever the server sent.
 */
export class ScatterView {
  points: ScatterPoint[] = [];
  transform: ViewTransform = { scale: 1, offsetX: 0, offsetY: 0 };
  hovered: ScatterPoint | null = null;

  private dragging = false;
  private lastDrag = { x: 0, y: 0 };

  constructor(
    readonly canvas: HTMLCanvasElement,
    private readonly onHover?: (point: ScatterPoint | null) => void,
  ) {
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = ev.deltaY < 0 ? 1.2 : 1 / 1.2;
      const { x, y } = this.eventPosition(ev);
      this.zoomAt(x, y, factor);
      this.render();
    });
    canvas.addEventListener("mousedown", (ev) => {
      this.dragging = true;
      this.lastDrag = this.eventPosition(ev);
    });
    canvas.addEventListener("mousemove", (ev) => {
      const pos = this.eventPosition(ev);
      if (this.dragging) {
        this.pan(pos.x - this.lastDrag.x, pos.y - this.lastDrag.y);
        this.lastDrag = pos;
        this.render();
        return;
      }
      const hit = this.hitTest(pos.x, pos.y);
      if (hit !== this.hovered) {
        this.hovered = hit;
        this.onHover?.(hit);
        this.render();
      }
    });
    canvas.addEventListener("mouseup", () => (this.dragging = false));
    canvas.addEventListener("mouseleave", () => {
      this.dragging = false;
      if (this.hovered) {
        this.hovered = null;
        this.onHover?.(null);
        this.render();
      }
    });
  }

  private eventPosition(ev: MouseEvent): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect();
    return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
  }

  /** Replace the displayed points with served projection data. */
  setData(projection: ProjectionResponse): void {
    this.points = projection.points.map(([x, y], index) => ({
      x,
      y,
      label: projection.labels[index] ?? null,
      index,
    }));
    this.fit();
    this.render();
  }

  /** Reset the transform so every point is visible with a margin. */
  fit(): void {
    if (this.points.length === 0) {
      this.transform = { scale: 1, offsetX: this.canvas.width / 2, offsetY: this.canvas.height / 2 };
      return;
    }
    const xs = this.points.map((p) => p.x);
    const ys = this.points.map((p) => p.y);
    const minX = Math.min(...xs);
    const maxX = Math.max(...xs);
    const minY = Math.min(...ys);
    const maxY = Math.max(...ys);
    const spanX = maxX - minX || 1;
    const spanY = maxY - minY || 1;
    const margin = 0.9;
    this.transform.scale = margin * Math.min(this.canvas.width / spanX, this.canvas.height / spanY);
    // y grows upward in projection space, downward on canvas
    this.transform.offsetX = this.canvas.width / 2 - this.transform.scale * (minX + maxX) / 2;
    this.transform.offsetY = this.canvas.height / 2 + this.transform.scale * (minY + maxY) / 2;
  }

  toScreen(x: number, y: number): { x: number; y: number } {
    return {
      x: this.transform.scale * x + this.transform.offsetX,
      y: -this.transform.scale * y + this.transform.offsetY,
    };
  }

  toWorld(sx: number, sy: number): { x: number; y: number } {
    return {
      x: (sx - this.transform.offsetX) / this.transform.scale,
      y: -(sy - this.transform.offsetY) / this.transform.scale,
    };
  }

  /** Zoom by `factor` keeping the world point under (sx, sy) fixed. */
  zoomAt(sx: number, sy: number, factor: number): void {
    const anchor = this.toWorld(sx, sy);
    this.transform.scale *= factor;
    const moved = this.toScreen(anchor.x, anchor.y);
    this.transform.offsetX += sx - moved.x;
    this.transform.offsetY += sy - moved.y;
  }

  pan(dx: number, dy: number): void {
    this.transform.offsetX += dx;
    this.transform.offsetY += dy;
  }

  /** The point whose screen position is within `radius` px, nearest first. */
  hitTest(sx: number, sy: number, radius = 6): ScatterPoint | null {
    let best: ScatterPoint | null = null;
    let bestDist = radius * radius;
    for (const point of this.points) {
      const screen = this.toScreen(point.x, point.y);
      const dx = screen.x - sx;
      const dy = screen.y - sy;
      const dist = dx * dx + dy * dy;
      if (dist <= bestDist) {
        best = point;
        bestDist = dist;
      }
    }
    return best;
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
    for (const point of this.points) {
      const { x, y } = this.toScreen(point.x, point.y);
      ctx.beginPath();
      ctx.arc(x, y, point === this.hovered ? 6 : 3.5, 0, Math.PI * 2);
      ctx.fillStyle = point.label === null ? "#444" : DIGIT_COLORS[point.label];
      ctx.fill();
      if (point === this.hovered) {
        ctx.strokeStyle = "#000";
        ctx.stroke();
      }
    }
  }
}
