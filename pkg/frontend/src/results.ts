// Ranked result strip: rank badge, thumbnail, score to two decimals.
// Clicking any tile re-queries from it; hovering feeds the compare table.

import type { QueryResponse } from "./api.js";

export interface ResultHandlers {
  onRequery: (name: string) => void;
  onHover: (name: string | null) => void;
}

export function renderResults(
  root: HTMLElement,
  response: QueryResponse,
  resolveUrl: (relative: string) => string,
  handlers: ResultHandlers,
): void {
  root.innerHTML = "";

  const banner = document.createElement("p");
  banner.className = "excluded-banner";
  banner.textContent = `${response.excluded_count} images outside DF`;
  root.append(banner);

  const strip = document.createElement("div");
  strip.className = "result-strip";
  for (const item of response.results) {
    const tile = document.createElement("figure");
    tile.className = "result-tile";
    tile.dataset.name = item.name;
    if (item.name === response.query.name) {
      tile.classList.add("query-tile");
    }
    const badge = document.createElement("span");
    badge.className = "rank-badge";
    badge.textContent = String(item.rank);
    const img = document.createElement("img");
    img.alt = item.name;
    img.loading = "lazy";
    img.src = resolveUrl(item.thumbnail_url);
    const caption = document.createElement("figcaption");
    caption.innerHTML = `<span class="result-name"></span><span class="result-score"></span>`;
    (caption.querySelector(".result-name") as HTMLElement).textContent = item.name;
    (caption.querySelector(".result-score") as HTMLElement).textContent =
      item.score.toFixed(2);
    tile.append(badge, img, caption);
    tile.addEventListener("click", () => handlers.onRequery(item.name));
    tile.addEventListener("mouseenter", () => handlers.onHover(item.name));
    tile.addEventListener("mouseleave", () => handlers.onHover(null));
    strip.append(tile);
  }
  root.append(strip);
}
