/** Displayed probabilities are rounded to two decimals; the API keeps
 * full precision underneath. */
export function formatProbability(p: number): string {
  return p.toFixed(2);
}

export function argmaxIndex(values: number[]): number {
  let best = 0;
  for (let i = 1; i < values.length; i++) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

export type BarTint = "neutral" | "correct" | "incorrect";

/**
 * Render a 10-class probability distribution as horizontal bars, one per
 * digit, with the argmax row highlighted. Tint encodes the tester's
 * correct (reddish) / incorrect (bluish) convention; the trainer view
 * uses the neutral tint.
 */
export function renderProbabilityBars(
  container: HTMLElement,
  probs: number[],
  tint: BarTint = "neutral",
): void {
  container.textContent = "";
  const top = argmaxIndex(probs);
  probs.forEach((p, digit) => {
    const row = document.createElement("div");
    row.className = "bar-row" + (digit === top ? " argmax" : "");

    const label = document.createElement("span");
    label.className = "bar-digit";
    label.textContent = String(digit);

    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = `bar-fill ${tint}`;
    fill.style.width = `${(p * 100).toFixed(1)}%`;
    track.appendChild(fill);

    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = formatProbability(p);

    row.append(label, track, value);
    container.appendChild(row);
  });
}
