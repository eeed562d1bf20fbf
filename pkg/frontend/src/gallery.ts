// Corpus browser: a thumbnail grid with lazy loading. jsdom and very old
// browsers lack IntersectionObserver; fall back to eager loading there.

import type { ImageSummary } from "./api.js";

export function renderGallery(
  root: HTMLElement,
  images: ImageSummary[],
  resolveUrl: (relative: string) => string,
  onSelect: (name: string) => void,
): void {
  root.innerHTML = "";
  const observer =
    typeof IntersectionObserver === "undefined"
      ? null
      : new IntersectionObserver(
          (entries, obs) => {
            for (const entry of entries) {
              if (!entry.isIntersecting) continue;
              const img = entry.target as HTMLImageElement;
              const src = img.dataset.src;
              if (src) img.src = src;
              obs.unobserve(img);
            }
          },
          { rootMargin: "100px" },
        );

  for (const image of images) {
    const tile = document.createElement("figure");
    tile.className = "gallery-tile";
    tile.dataset.name = image.name;
    const img = document.createElement("img");
    img.alt = image.name;
    img.loading = "lazy";
    const src = resolveUrl(image.thumbnail_url);
    if (observer) {
      img.dataset.src = src;
      observer.observe(img);
    } else {
      img.src = src;
    }
    const caption = document.createElement("figcaption");
    caption.textContent = `${image.name} · ${image.width}×${image.height}`;
    tile.append(img, caption);
    tile.addEventListener("click", () => onSelect(image.name));
    root.append(tile);
  }
}

export function markSelected(root: HTMLElement, name: string | null): void {
  root.querySelectorAll(".gallery-tile").forEach((tile) => {
    tile.classList.toggle(
      "selected",
      name !== null && (tile as HTMLElement).dataset.name === name,
    );
  });
}
