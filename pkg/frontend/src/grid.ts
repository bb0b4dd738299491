import { GRID_CELLS, GRID_COLS, GRID_ROWS } from "./types.js";

export function emptyCells(): string {
  return "0".repeat(GRID_CELLS);
}

export function cellIndex(row: number, col: number): number {
  return row * GRID_COLS + col;
}

export function toggledCells(cells: string, row: number, col: number): string {
  const idx = cellIndex(row, col);
  const flipped = cells[idx] === "1" ? "0" : "1";
  return cells.slice(0, idx) + flipped + cells.slice(idx + 1);
}

/**
 * The clickable 12x8 pattern grid. Each cell is a div; clicking flips it.
 * State is a 96-character 0/1 string, row-major, matching the wire format.
 */
export class GridEditor {
  readonly element: HTMLDivElement;
  private cellsValue = emptyCells();
  private readonly cellDivs: HTMLDivElement[] = [];

  constructor(private readonly onChange?: (cells: string) => void) {
    this.element = document.createElement("div");
    this.element.className = "pattern-grid";
    for (let row = 0; row < GRID_ROWS; row++) {
      for (let col = 0; col < GRID_COLS; col++) {
        const cell = document.createElement("div");
        cell.className = "grid-cell";
        cell.dataset.row = String(row);
        cell.dataset.col = String(col);
        cell.addEventListener("click", () => this.toggle(row, col));
        this.cellDivs.push(cell);
        this.element.appendChild(cell);
      }
    }
  }

  get cells(): string {
    return this.cellsValue;
  }

  setCells(cells: string): void {
    this.cellsValue = cells;
    this.cellDivs.forEach((div, idx) => {
      div.classList.toggle("on", cells[idx] === "1");
    });
    this.onChange?.(this.cellsValue);
  }

  toggle(row: number, col: number): void {
    this.setCells(toggledCells(this.cellsValue, row, col));
  }

  clear(): void {
    this.setCells(emptyCells());
  }

  isEmpty(): boolean {
    return !this.cellsValue.includes("1");
  }
}

/** Paint a 96-cell string into a small canvas thumbnail. */
export function paintThumbnail(canvas: HTMLCanvasElement, cells: string, scale = 4): void {
  canvas.width = GRID_COLS * scale;
  canvas.height = GRID_ROWS * scale;
  const ctx = canvas.getContext("2d");
  if (!ctx) return; // headless test environments have no 2D context
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#1d1d1f";
  for (let row = 0; row < GRID_ROWS; row++) {
    for (let col = 0; col < GRID_COLS; col++) {
      if (cells[cellIndex(row, col)] === "1") {
        ctx.fillRect(col * scale, row * scale, scale, scale);
      }
    }
  }
}
