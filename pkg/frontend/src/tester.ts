import { ApiClient, ApiError } from "./api.js";
import { renderProbabilityBars } from "./bars.js";
import type { EvalResponse } from "./types.js";

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
 * The tester dashboard: pick saved models and a test pattern file from
 * the server's data directory, evaluate, and browse per-pattern
 * probability bars (reddish for correct, bluish for incorrect).
 */
export class TesterView {
  readonly element: HTMLDivElement;
  private readonly modelSelect: HTMLSelectElement;
  private readonly patternSelect: HTMLSelectElement;
  private readonly accuracyBox: HTMLDivElement;
  private readonly resultsBox: HTMLDivElement;
  private readonly messageLine: HTMLDivElement;

  constructor(private readonly api: ApiClient) {
    this.element = el("div", "tester-view");
    const panel = el("section", "panel");
    panel.appendChild(el("h2", undefined, "Neural network tester"));

    const row = el("div", "control-row");
    this.modelSelect = el("select") as HTMLSelectElement;
    this.modelSelect.multiple = true;
    this.modelSelect.size = 4;
    this.patternSelect = el("select") as HTMLSelectElement;
    const refresh = el("button", undefined, "Refresh files");
    refresh.addEventListener("click", () => void this.refreshFiles());
    const evaluate = el("button", "primary", "Evaluate");
    evaluate.addEventListener("click", () => void this.evaluate());
    row.append(
      el("span", "control-label", "Models"), this.modelSelect,
      el("span", "control-label", "Test set"), this.patternSelect,
      refresh, evaluate,
    );
    panel.appendChild(row);

    this.messageLine = el("div", "status-line");
    this.accuracyBox = el("div", "accuracy-box");
    this.resultsBox = el("div", "results-box");
    panel.append(this.messageLine, this.accuracyBox, this.resultsBox);
    this.element.appendChild(panel);
  }

  async refreshFiles(): Promise<void> {
    const files = await this.api.testerFiles();
    this.modelSelect.textContent = "";
    for (const name of files.models) {
      const option = el("option", undefined, name) as HTMLOptionElement;
      option.value = name;
      this.modelSelect.appendChild(option);
    }
    this.patternSelect.textContent = "";
    for (const name of files.patterns) {
      const option = el("option", undefined, name) as HTMLOptionElement;
      option.value = name;
      this.patternSelect.appendChild(option);
    }
    this.messageLine.textContent =
      files.models.length === 0
        ? "no saved models in the data directory; save one from the trainer"
        : "";
  }

  private async evaluate(): Promise<void> {
    const models = Array.from(this.modelSelect.selectedOptions).map((o) => o.value);
    const patterns = this.patternSelect.value;
    if (models.length === 0 || !patterns) {
      this.messageLine.textContent = "select at least one model and a test set";
      return;
    }
    try {
      this.messageLine.textContent = "evaluating...";
      const report = await this.api.testerEvaluate(models, patterns);
      this.messageLine.textContent = "";
      this.renderReport(report);
    } catch (err) {
      this.messageLine.textContent =
        err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    }
  }

  private renderReport(report: EvalResponse): void {
    this.accuracyBox.textContent = "";
    for (const entry of report.per_model) {
      const row = el("div", "report-row");
      row.append(
        el("span", "report-key", entry.model),
        el("span", "report-value", `accuracy ${entry.accuracy.toFixed(4)}`),
      );
      this.accuracyBox.appendChild(row);
    }

    this.resultsBox.textContent = "";
    const shown = report.per_pattern.slice(0, 200); // keep the DOM responsive
    for (const result of shown) {
      const card = el("div", "result-card");
      card.appendChild(el(
        "div", "result-title",
        `${result.model} · pattern ${result.pattern_index} · label ${result.label} → ` +
        `${result.predicted} ${result.correct ? "✓" : "✗"}`,
      ));
      const bars = el("div", "bars-box");
      renderProbabilityBars(bars, result.probs, result.correct ? "correct" : "incorrect");
      card.appendChild(bars);
      this.resultsBox.appendChild(card);
    }
    if (report.per_pattern.length > shown.length) {
      this.resultsBox.appendChild(
        el("div", "hint", `showing ${shown.length} of ${report.per_pattern.length} rows`),
      );
    }
  }
}
