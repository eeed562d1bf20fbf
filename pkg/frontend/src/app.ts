// Application wiring: corpus gallery, query panel, ranked results, compare
// view, history and URL-hash state. At most one query is in flight; a new
// submission aborts the previous one.

import { ApiClient, FeatureVector, ImageSummary, QueryResponse } from "./api.js";
import { renderCompare } from "./compare.js";
import { markSelected, renderGallery } from "./gallery.js";
import { QueryPanel } from "./queryPanel.js";
import { renderResults } from "./results.js";
import {
  DEFAULT_SPEC,
  HistoryStack,
  Spec,
  decodeHash,
  encodeHash,
} from "./state.js";

export interface UiState {
  corpus: ImageSummary[];
  selectedQuery: string | null;
  spec: Spec;
  lastResponse: QueryResponse | null;
  history: HistoryStack;
}

export interface App {
  ready: Promise<void>;
  state: UiState;
  panel: QueryPanel;
  runQuery: () => Promise<void>;
}

export function initApp(root: HTMLElement, baseUrl = ""): App {
  const api = new ApiClient(baseUrl);
  const state: UiState = {
    corpus: [],
    selectedQuery: null,
    spec: { ...DEFAULT_SPEC },
    lastResponse: null,
    history: new HistoryStack(),
  };

  root.innerHTML = `
    <header class="topbar">
      <h1>hue-rank</h1>
      <p class="tagline">query-by-example color retrieval</p>
      <button id="back" type="button" disabled>&larr; Back</button>
      <span id="status" class="status"></span>
    </header>
    <main class="layout">
      <aside class="side">
        <section id="panel" class="panel"></section>
        <section id="compare" class="compare"></section>
      </aside>
      <section class="content">
        <div id="results" class="results"></div>
        <h2 class="gallery-heading">Corpus</h2>
        <div id="gallery" class="gallery"></div>
      </section>
    </main>
  `;
  const galleryEl = root.querySelector("#gallery") as HTMLElement;
  const resultsEl = root.querySelector("#results") as HTMLElement;
  const compareEl = root.querySelector("#compare") as HTMLElement;
  const statusEl = root.querySelector("#status") as HTMLElement;
  const backBtn = root.querySelector("#back") as HTMLButtonElement;

  const restored = typeof location !== "undefined" ? decodeHash(location.hash) : null;
  if (restored) {
    state.spec = restored.spec;
    state.selectedQuery = restored.query;
  }

  const panel = new QueryPanel(
    root.querySelector("#panel") as HTMLElement,
    state.spec,
    {
      onChange: (spec) => {
        state.spec = spec;
      },
      onRun: () => {
        void runQuery();
      },
    },
  );

  const featureCache = new Map<string, FeatureVector>();
  let inflight: AbortController | null = null;

  function setStatus(text: string): void {
    statusEl.textContent = text;
  }

  function selectQuery(name: string): void {
    state.selectedQuery = name;
    markSelected(galleryEl, name);
    panel.setRunnable(true);
    setStatus(`query: ${name}`);
  }

  async function hoverResult(name: string | null): Promise<void> {
    const query = state.lastResponse?.query ?? null;
    if (!name) {
      renderCompare(compareEl, query, null);
      return;
    }
    let features = featureCache.get(name) ?? null;
    if (!features) {
      try {
        features = await api.imageFeatures(name);
        featureCache.set(name, features);
      } catch {
        features = null;
      }
    }
    renderCompare(compareEl, query, features);
  }

  async function runQuery(): Promise<void> {
    if (!state.selectedQuery) return;
    inflight?.abort();
    const controller = new AbortController();
    inflight = controller;
    setStatus("querying…");
    try {
      const response = await api.runQuery(
        {
          query_name: state.selectedQuery,
          method: state.spec.method,
          channels: state.spec.channels,
          df: state.spec.df,
          scope: state.spec.scope,
          top: state.spec.top,
        },
        controller.signal,
      );
      if (inflight !== controller) return; // superseded
      state.lastResponse = response;
      featureCache.set(response.query.name, response.query);
      renderResults(resultsEl, response, (u) => api.resolveUrl(u), {
        onRequery: requeryFrom,
        onHover: (name) => void hoverResult(name),
      });
      renderCompare(compareEl, response.query, null);
      if (typeof location !== "undefined") {
        location.hash = encodeHash(state.selectedQuery, state.spec);
      }
      setStatus(`${response.results.length} results for ${response.query.name}`);
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      setStatus(`error: ${(err as Error).message}`);
    } finally {
      if (inflight === controller) inflight = null;
      backBtn.disabled = state.history.size === 0;
    }
  }

  function requeryFrom(name: string): void {
    if (state.selectedQuery) {
      state.history.push({ query: state.selectedQuery, spec: state.spec });
    }
    selectQuery(name);
    void runQuery();
  }

  backBtn.addEventListener("click", () => {
    const previous = state.history.pop();
    backBtn.disabled = state.history.size === 0;
    if (!previous) return;
    panel.setSpec(previous.spec);
    state.spec = previous.spec;
    selectQuery(previous.query);
    void runQuery();
  });

  const ready = (async () => {
    state.corpus = await api.listImages();
    renderGallery(galleryEl, state.corpus, (u) => api.resolveUrl(u), (name) => {
      selectQuery(name);
    });
    renderCompare(compareEl, null, null);
    if (state.selectedQuery && state.corpus.some((i) => i.name === state.selectedQuery)) {
      selectQuery(state.selectedQuery);
    } else {
      state.selectedQuery = null;
      panel.setRunnable(false);
    }
    setStatus(`${state.corpus.length} images indexed`);
  })();

  return { ready, state, panel, runQuery };
}
