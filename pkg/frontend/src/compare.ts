// Side-by-side feature table: the query against the hovered result, all 13
// indexed fields.

import type { FeatureVector } from "./api.js";

const FIELDS: (keyof FeatureVector)[] = [
  "name", "width", "height", "threshold",
  "mean_r", "mean_g", "mean_b",
  "median_r", "median_g", "median_b",
  "std_r", "std_g", "std_b",
];

function format(value: string | number): string {
  if (typeof value === "string") return value;
  return Number.isInteger(value) ? String(value) : value.toFixed(3);
}

export function renderCompare(
  root: HTMLElement,
  query: FeatureVector | null,
  hovered: FeatureVector | null,
): void {
  if (!query) {
    root.innerHTML = `<p class="compare-hint">Run a query to inspect features.</p>`;
    return;
  }
  root.innerHTML = `
    <table class="compare-table">
      <thead><tr><th>field</th><th>query</th><th>hovered</th></tr></thead>
      <tbody></tbody>
    </table>`;
  const body = root.querySelector("tbody") as HTMLElement;
  for (const field of FIELDS) {
    const tr = document.createElement("tr");
    const th = document.createElement("th");
    th.textContent = field;
    const queryCell = document.createElement("td");
    queryCell.textContent = format(query[field]);
    const hoverCell = document.createElement("td");
    hoverCell.textContent = hovered ? format(hovered[field]) : "—";
    tr.append(th, queryCell, hoverCell);
    body.append(tr);
  }
}
