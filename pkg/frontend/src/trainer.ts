import { ApiClient, ApiError } from "./api.js";
import { formatProbability, renderProbabilityBars } from "./bars.js";
import { GridEditor, paintThumbnail } from "./grid.js";
import { DIGIT_COLORS, ScatterView } from "./scatter.js";
import type { StoredPattern, TrainReport } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/**
 * The trainer layout: pattern editor and controls on the left, the PCA
 * visual analyzer on the right. All displayed numbers come straight from
 * the server.
 */
export class TrainerView {
  readonly element: HTMLDivElement;
  private readonly grid: GridEditor;
  private readonly labelSelect: HTMLSelectElement;
  private readonly patternList: HTMLUListElement;
  private readonly countsList: HTMLDivElement;
  private readonly trainButton: HTMLButtonElement;
  private readonly cancelButton: HTMLButtonElement;
  private readonly recognizeButton: HTMLButtonElement;
  private readonly statusLine: HTMLDivElement;
  private readonly reportBox: HTMLDivElement;
  private readonly barsBox: HTMLDivElement;
  private readonly resultLine: HTMLDivElement;
  private readonly scatter: ScatterView;
  private readonly augmentToggle: HTMLInputElement;
  private readonly hoverThumb: HTMLCanvasElement;
  private readonly hoverCaption: HTMLDivElement;
  private patterns: StoredPattern[] = [];
  private polling = false;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
  ) {
    this.element = el("div", "trainer-view");

    // --- left: digit pattern generator -------------------------------
    const generator = el("section", "panel generator");
    generator.appendChild(el("h2", undefined, "Digit pattern generator"));
    generator.appendChild(el("div", "hint", "Network 96-48-10. Click cells to draw."));

    this.grid = new GridEditor();
    generator.appendChild(this.grid.element);

    const addRow = el("div", "control-row");
    this.labelSelect = el("select");
    for (let d = 0; d <= 9; d++) {
      const option = el("option", undefined, String(d)) as HTMLOptionElement;
      option.value = String(d);
      this.labelSelect.appendChild(option);
    }
    const addButton = el("button", undefined, "Add pattern");
    addButton.addEventListener("click", () => void this.addPattern());
    const clearButton = el("button", undefined, "Clear grid");
    clearButton.addEventListener("click", () => this.grid.clear());
    addRow.append(el("span", "control-label", "Label"), this.labelSelect, addButton, clearButton);
    generator.appendChild(addRow);

    const controlRow = el("div", "control-row");
    this.trainButton = el("button", "primary", "Train");
    this.trainButton.addEventListener("click", () => void this.train());
    this.cancelButton = el("button", undefined, "Cancel");
    this.cancelButton.disabled = true;
    this.cancelButton.addEventListener("click", () => void this.api.cancelTraining(this.sessionId));
    this.recognizeButton = el("button", undefined, "Recognize");
    this.recognizeButton.addEventListener("click", () => void this.recognize());
    controlRow.append(this.trainButton, this.cancelButton, this.recognizeButton);
    generator.appendChild(controlRow);

    this.statusLine = el("div", "status-line", "status: idle");
    generator.appendChild(this.statusLine);
    this.reportBox = el("div", "report-box");
    generator.appendChild(this.reportBox);

    this.resultLine = el("div", "result-line");
    this.barsBox = el("div", "bars-box");
    generator.append(this.resultLine, this.barsBox);

    // --- middle: stored patterns -------------------------------------
    const listPanel = el("section", "panel pattern-list-panel");
    listPanel.appendChild(el("h2", undefined, "Patterns"));
    this.patternList = el("ul", "pattern-list");
    listPanel.appendChild(this.patternList);
    this.countsList = el("div", "digit-counts");
    listPanel.appendChild(this.countsList);

    // --- right: visual analyzer --------------------------------------
    const analyzer = el("section", "panel analyzer");
    analyzer.appendChild(el("h2", undefined, "Visual analyzer"));
    const scatterCanvas = el("canvas", "scatter-canvas") as HTMLCanvasElement;
    scatterCanvas.width = 520;
    scatterCanvas.height = 420;
    this.hoverThumb = el("canvas", "hover-thumb") as HTMLCanvasElement;
    this.hoverCaption = el("div", "hover-caption");
    this.scatter = new ScatterView(scatterCanvas, (point) => {
      if (point === null) {
        this.hoverCaption.textContent = "";
        paintThumbnail(this.hoverThumb, "0".repeat(96));
        return;
      }
      const pattern = this.patterns[point.index];
      if (pattern) {
        paintThumbnail(this.hoverThumb, pattern.cells, 6);
        this.hoverCaption.textContent = `pattern ${point.index}, digit ${pattern.label}`;
      }
    });
    const augmentRow = el("div", "control-row");
    this.augmentToggle = el("input") as HTMLInputElement;
    this.augmentToggle.type = "checkbox";
    this.augmentToggle.id = "augment-toggle";
    this.augmentToggle.addEventListener("change", () => void this.refreshProjection());
    const augmentLabel = el("label", undefined, "Use hidden-layer features") as HTMLLabelElement;
    augmentLabel.htmlFor = "augment-toggle";
    const refreshButton = el("button", undefined, "Refresh projection");
    refreshButton.addEventListener("click", () => void this.refreshProjection());
    augmentRow.append(this.augmentToggle, augmentLabel, refreshButton);
    const legend = el("div", "legend");
    DIGIT_COLORS.forEach((color, digit) => {
      const entry = el("span", "legend-entry", String(digit));
      entry.style.borderBottomColor = color;
      legend.appendChild(entry);
    });
    const hoverRow = el("div", "hover-row");
    hoverRow.append(this.hoverThumb, this.hoverCaption);
    analyzer.append(scatterCanvas, augmentRow, legend, hoverRow);

    this.element.append(generator, listPanel, analyzer);
  }

  /** Refetch everything after a reload: the UI holds no state of its own. */
  async restore(): Promise<void> {
    const state = await this.api.getSession(this.sessionId);
    this.renderReport(state.report);
    this.setStatus(state.status);
    if (state.status === "training") {
      void this.pollUntilDone();
    }
    await this.refreshPatterns();
    if (state.pattern_count >= 2) {
      await this.refreshProjection();
    }
  }

  private setStatus(status: string): void {
    this.statusLine.textContent = `status: ${status}`;
    const busy = status === "training";
    this.trainButton.disabled = busy;
    this.cancelButton.disabled = !busy;
  }

  private async addPattern(): Promise<void> {
    if (this.grid.isEmpty()) {
      this.resultLine.textContent = "draw something before adding";
      return;
    }
    try {
      const response = await this.api.addPattern(
        this.sessionId,
        this.grid.cells,
        Number(this.labelSelect.value),
      );
      this.resultLine.textContent = response.added ? "" : "duplicate pattern ignored";
      await this.refreshPatterns();
      if (response.pattern_count >= 2) await this.refreshProjection();
    } catch (err) {
      this.showError(err);
    }
  }

  private async refreshPatterns(): Promise<void> {
    const listing = await this.api.listPatterns(this.sessionId);
    this.patterns = listing.patterns;
    this.patternList.textContent = "";
    listing.patterns.forEach((pattern, index) => {
      const item = el("li", "pattern-item");
      const thumb = el("canvas", "pattern-thumb") as HTMLCanvasElement;
      paintThumbnail(thumb, pattern.cells, 3);
      const caption = el("span", undefined, `#${index} → ${pattern.label}`);
      const remove = el("button", "remove-button", "×");
      remove.addEventListener("click", () => void this.removePattern(index));
      item.append(thumb, caption, remove);
      this.patternList.appendChild(item);
    });
    this.countsList.textContent = "";
    listing.per_digit_counts.forEach((count, digit) => {
      this.countsList.appendChild(el("span", "count-chip", `${digit}: ${count}`));
    });
  }

  private async removePattern(index: number): Promise<void> {
    try {
      await this.api.deletePattern(this.sessionId, index);
      await this.refreshPatterns();
    } catch (err) {
      this.showError(err);
    }
  }

  private async train(): Promise<void> {
    try {
      await this.api.startTraining(this.sessionId);
      this.setStatus("training");
      await this.pollUntilDone();
    } catch (err) {
      this.showError(err);
    }
  }

  private async pollUntilDone(): Promise<void> {
    if (this.polling) return; // at most one in-flight train poll loop
    this.polling = true;
    try {
      for (;;) {
        const status = await this.api.trainStatus(this.sessionId);
        this.setStatus(status.status);
        if (status.status !== "training") {
          this.renderReport(status.report);
          if (status.error) this.resultLine.textContent = status.error;
          break;
        }
        await new Promise((resolve) => setTimeout(resolve, 500));
      }
      if (this.augmentToggle.checked) await this.refreshProjection();
    } finally {
      this.polling = false;
    }
  }

  private renderReport(report: TrainReport | null): void {
    this.reportBox.textContent = "";
    if (!report) return;
    const rows: [string, string][] = [
      ["epochs", String(report.epochs_run)],
      ["final MSE", report.final_mse.toFixed(6)],
      ["accuracy", formatProbability(report.training_accuracy)],
      ["time", `${report.wall_time_seconds.toFixed(3)}s`],
      ["converged", String(report.converged)],
    ];
    for (const [key, value] of rows) {
      const row = el("div", "report-row");
      row.append(el("span", "report-key", key), el("span", "report-value", value));
      this.reportBox.appendChild(row);
    }
  }

  private async recognize(): Promise<void> {
    if (this.grid.isEmpty()) {
      this.resultLine.textContent = "draw a digit to recognize";
      return;
    }
    try {
      const response = await this.api.recognize(this.sessionId, this.grid.cells);
      this.resultLine.textContent =
        `recognized: ${response.label} (p=${formatProbability(response.probs[response.label])})`;
      renderProbabilityBars(this.barsBox, response.probs);
    } catch (err) {
      this.showError(err);
    }
  }

  private async refreshProjection(): Promise<void> {
    try {
      const projection = await this.api.projection(this.sessionId, this.augmentToggle.checked);
      this.scatter.setData(projection);
      this.hoverCaption.textContent =
        `explained variance ${projection.explained_variance.map(formatProbability).join(", ")}` +
        (projection.degenerate ? " (degenerate)" : "");
    } catch (err) {
      if (err instanceof ApiError && err.code === "no-network") {
        this.resultLine.textContent = "train a network before augmenting the projection";
        this.augmentToggle.checked = false;
        return;
      }
      if (err instanceof ApiError && err.code === "data-error") {
        return; // fewer than 2 patterns; nothing to project yet
      }
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    this.resultLine.textContent =
      err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
  }
}
