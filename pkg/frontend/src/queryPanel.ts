// Method / channel / DF / scope / top controls. Invalid channel counts are
// unselectable: once a method's maximum arity is reached the remaining
// checkboxes disable, and a forced change event is reverted, so the panel
// can never encode a request the server would reject.

import type { Method, Scope } from "./api.js";
import {
  ARITY,
  CHANNELS,
  DEFAULT_SPEC,
  METHOD_LABELS,
  METHODS,
  Spec,
  adjustChannels,
  channelsValid,
} from "./state.js";

export interface PanelHandlers {
  onChange?: (spec: Spec) => void;
  onRun?: () => void;
}

export class QueryPanel {
  private root: HTMLElement;
  private handlers: PanelHandlers;
  private current: Spec;
  private hasQuery = false;

  constructor(root: HTMLElement, spec: Spec = DEFAULT_SPEC, handlers: PanelHandlers = {}) {
    this.root = root;
    this.handlers = handlers;
    this.current = { ...spec };
    this.render();
    this.sync();
  }

  get spec(): Spec {
    return { ...this.current };
  }

  setSpec(spec: Spec): void {
    this.current = { ...spec };
    this.applySpecToControls();
    this.sync();
  }

  setRunnable(hasQuery: boolean): void {
    this.hasQuery = hasQuery;
    this.sync();
  }

  private render(): void {
    const methodRows = METHODS.map(
      (m) => `
      <label class="method-option">
        <input type="radio" name="method" value="${m}" ${m === this.current.method ? "checked" : ""}>
        ${METHOD_LABELS[m]}
      </label>`,
    ).join("");
    const channelBoxes = CHANNELS.map(
      (c) => `
      <label class="channel-option channel-${c}">
        <input type="checkbox" data-channel="${c}" ${this.current.channels.includes(c) ? "checked" : ""}>
        ${c.toUpperCase()}
      </label>`,
    ).join("");
    this.root.innerHTML = `
      <fieldset class="methods"><legend>Method</legend>${methodRows}</fieldset>
      <fieldset class="channels"><legend>Channels</legend>${channelBoxes}</fieldset>
      <fieldset class="tuning">
        <legend>Tolerance</legend>
        <label>DF <input id="df" type="number" min="0" step="any" value="${this.current.df}"></label>
        <label>Scope
          <select id="scope">
            <option value="group">same-size group</option>
            <option value="corpus">whole corpus</option>
          </select>
        </label>
        <label>Top
          <select id="top">
            ${[4, 8, 12, 16, 24, 50]
              .map((n) => `<option value="${n}">${n}</option>`)
              .join("")}
          </select>
        </label>
      </fieldset>
      <button id="run" type="button" disabled>Run query</button>
    `;
    (this.root.querySelector("#scope") as HTMLSelectElement).value = this.current.scope;
    (this.root.querySelector("#top") as HTMLSelectElement).value = String(this.current.top);

    this.root.querySelectorAll<HTMLInputElement>('input[name="method"]').forEach((radio) => {
      radio.addEventListener("change", () => {
        this.current.method = radio.value as Method;
        this.current.channels = adjustChannels(this.current.method, this.current.channels);
        this.applyChannelsToBoxes();
        this.sync();
      });
    });
    this.root.querySelectorAll<HTMLInputElement>("input[data-channel]").forEach((box) => {
      box.addEventListener("change", () => {
        const picked = CHANNELS.filter((c) => this.channelBox(c).checked).join("");
        const [, hi] = ARITY[this.current.method];
        if (picked.length > hi) {
          box.checked = false; // guard against force-enabled controls
          return;
        }
        this.current.channels = picked;
        this.sync();
      });
    });
    (this.root.querySelector("#df") as HTMLInputElement).addEventListener("input", (ev) => {
      this.current.df = Number((ev.target as HTMLInputElement).value);
      this.sync();
    });
    (this.root.querySelector("#scope") as HTMLSelectElement).addEventListener("change", (ev) => {
      this.current.scope = (ev.target as HTMLSelectElement).value as Scope;
      this.sync();
    });
    (this.root.querySelector("#top") as HTMLSelectElement).addEventListener("change", (ev) => {
      this.current.top = Number((ev.target as HTMLSelectElement).value);
      this.sync();
    });
    (this.root.querySelector("#run") as HTMLButtonElement).addEventListener("click", () => {
      this.handlers.onRun?.();
    });
  }

  private channelBox(c: string): HTMLInputElement {
    return this.root.querySelector(`input[data-channel="${c}"]`) as HTMLInputElement;
  }

  private applyChannelsToBoxes(): void {
    for (const c of CHANNELS) {
      this.channelBox(c).checked = this.current.channels.includes(c);
    }
  }

  private applySpecToControls(): void {
    const radio = this.root.querySelector(
      `input[name="method"][value="${this.current.method}"]`,
    ) as HTMLInputElement;
    radio.checked = true;
    this.applyChannelsToBoxes();
    (this.root.querySelector("#df") as HTMLInputElement).value = String(this.current.df);
    (this.root.querySelector("#scope") as HTMLSelectElement).value = this.current.scope;
    (this.root.querySelector("#top") as HTMLSelectElement).value = String(this.current.top);
  }

  private sync(): void {
    const [, hi] = ARITY[this.current.method];
    const count = this.current.channels.length;
    for (const c of CHANNELS) {
      const box = this.channelBox(c);
      box.disabled = !box.checked && count >= hi;
    }
    const dfOk = Number.isFinite(this.current.df) && this.current.df >= 0;
    const runnable = channelsValid(this.current.method, this.current.channels) && dfOk && this.hasQuery;
    (this.root.querySelector("#run") as HTMLButtonElement).disabled = !runnable;
    this.handlers.onChange?.(this.spec);
  }
}
