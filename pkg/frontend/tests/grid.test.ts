// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { GridEditor, cellIndex, emptyCells, toggledCells } from "../src/grid.js";
import { GRID_CELLS } from "../src/types.js";

describe("cell math", () => {
  it("uses row-major indexing", () => {
    expect(cellIndex(0, 0)).toBe(0);
    expect(cellIndex(0, 7)).toBe(7);
    expect(cellIndex(1, 0)).toBe(8);
    expect(cellIndex(11, 7)).toBe(95);
  });

  it("toggling is an involution", () => {
    const start = emptyCells();
    const once = toggledCells(start, 5, 3);
    expect(once[cellIndex(5, 3)]).toBe("1");
    expect(toggledCells(once, 5, 3)).toBe(start);
  });

  it("toggling touches exactly one cell", () => {
    const once = toggledCells(emptyCells(), 2, 6);
    const setCount = [...once].filter((c) => c === "1").length;
    expect(setCount).toBe(1);
    expect(once.length).toBe(GRID_CELLS);
  });
});

describe("GridEditor", () => {
  it("renders 96 cells and reflects clicks in its state", () => {
    const editor = new GridEditor();
    const cells = editor.element.querySelectorAll(".grid-cell");
    expect(cells.length).toBe(96);

    (cells[cellIndex(3, 4)] as HTMLElement).click();
    expect(editor.cells[cellIndex(3, 4)]).toBe("1");
    expect(cells[cellIndex(3, 4)].classList.contains("on")).toBe(true);

    (cells[cellIndex(3, 4)] as HTMLElement).click();
    expect(editor.isEmpty()).toBe(true);
  });

  it("clear resets every cell", () => {
    const editor = new GridEditor();
    editor.toggle(0, 0);
    editor.toggle(11, 7);
    editor.clear();
    expect(editor.cells).toBe(emptyCells());
  });

  it("notifies on change with the current cell string", () => {
    const seen: string[] = [];
    const editor = new GridEditor((cells) => seen.push(cells));
    editor.toggle(1, 1);
    expect(seen.at(-1)).toBe(editor.cells);
  });
});
