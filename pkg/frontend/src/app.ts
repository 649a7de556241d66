/** Interaction wiring: pointer events mutate a ClientViewState, every state
 * change issues at most one scene request (latest wins), and arriving scenes
 * repaint the dumb renderer. */

import { CardStore, type StorageLike } from "./cards.js";
import {
  type ClientViewState,
  dragLeft,
  dragMiddle,
  dragRight,
  initialState,
  sceneQuery,
  shiftWindow,
} from "./state.js";
import { BAND_HEIGHT, renderBand, renderCard, renderMap } from "./render.js";
import type { Meta, Scene, Summary } from "./types.js";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export interface AppOptions {
  fetchFn?: FetchLike;
  storage?: StorageLike;
  baseUrl?: string;
}

interface DragState {
  kind: "left" | "right" | "middle" | "card";
  cardId?: number;
  grabOffset: number; // periods for middle, px for cards
  grabOffsetY?: number;
}

export class App {
  meta!: Meta;
  state!: ClientViewState;
  lastScene: Scene | null = null;

  readonly cardStore: CardStore;
  private fetchFn: FetchLike;
  private baseUrl: string;

  private mapSvg!: SVGSVGElement;
  private bandSvg!: SVGSVGElement;
  private cardLayer!: HTMLDivElement;
  private banner!: HTMLDivElement;
  private thresholdInput!: HTMLInputElement;

  private inFlight = false;
  private pendingQuery: string | null = null;
  private seq = 0;
  private applied = 0;
  private drag: DragState | null = null;
  private summaries = new Map<number, Summary>();

  /** Resolves whenever no scene request is running; tests await this. */
  idle: Promise<void> = Promise.resolve();
  private idleResolve: (() => void) | null = null;

  constructor(private root: HTMLElement, opts: AppOptions = {}) {
    this.fetchFn = opts.fetchFn ?? ((url) => fetch(url));
    this.baseUrl = opts.baseUrl ?? "";
    this.cardStore = new CardStore(opts.storage ?? window.localStorage);
  }

  async init(): Promise<void> {
    const resp = await this.fetchFn(`${this.baseUrl}/api/meta`);
    if (!resp.ok) {
      throw new Error(`meta request failed (${resp.status})`);
    }
    this.meta = (await resp.json()) as Meta;
    this.state = initialState(this.meta.periods.length);
    this.buildChrome();
    this.requestScene();
    await this.idle;
  }

  // --- chrome -------------------------------------------------------------

  private buildChrome(): void {
    this.root.replaceChildren();
    this.root.classList.add("relocviz");

    this.banner = document.createElement("div");
    this.banner.className = "banner hidden";
    this.root.appendChild(this.banner);

    const viewport = document.createElement("div");
    viewport.className = "viewport";
    viewport.style.position = "relative";

    this.mapSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.mapSvg.setAttribute("class", "map");
    this.mapSvg.setAttribute("width", String(this.meta.canvas.w));
    this.mapSvg.setAttribute("height", String(this.meta.canvas.h));
    viewport.appendChild(this.mapSvg);

    this.cardLayer = document.createElement("div");
    this.cardLayer.className = "cards";
    viewport.appendChild(this.cardLayer);
    this.root.appendChild(viewport);

    const controls = document.createElement("div");
    controls.className = "controls";
    const back = document.createElement("button");
    back.className = "step-back";
    back.textContent = "«";
    back.title = "shift window one period back";
    const fwd = document.createElement("button");
    fwd.className = "step-forward";
    fwd.textContent = "»";
    fwd.title = "shift window one period forward";
    const label = document.createElement("label");
    label.textContent = "threshold ";
    this.thresholdInput = document.createElement("input");
    this.thresholdInput.type = "number";
    this.thresholdInput.min = "1";
    this.thresholdInput.value = String(this.state.threshold);
    label.appendChild(this.thresholdInput);
    controls.append(back, fwd, label);
    this.root.appendChild(controls);

    this.bandSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.bandSvg.setAttribute("class", "band");
    this.bandSvg.setAttribute("width", String(this.meta.canvas.w));
    this.bandSvg.setAttribute("height", String(BAND_HEIGHT));
    this.root.appendChild(this.bandSvg);

    back.addEventListener("click", () => this.stepWindow(-1));
    fwd.addEventListener("click", () => this.stepWindow(1));
    this.thresholdInput.addEventListener("change", () => {
      const v = Math.max(1, Math.floor(Number(this.thresholdInput.value) || 1));
      this.thresholdInput.value = String(v);
      if (v !== this.state.threshold) {
        this.state.threshold = v;
        this.requestScene();
      }
    });

    this.bandSvg.addEventListener("pointerdown", (ev) => this.onBandPointerDown(ev));
    document.addEventListener("pointermove", (ev) => this.onPointerMove(ev));
    document.addEventListener("pointerup", () => this.onPointerUp());
  }

  // --- interactions -------------------------------------------------------

  setArmed(id: number | null): void {
    if (this.state.armed === id) {
      return;
    }
    this.state.armed = id;
    this.requestScene();
  }

  toggleSelected(id: number): void {
    if (this.state.selected.has(id)) {
      this.state.selected.delete(id);
      this.cardStore.drop(id);
    } else {
      this.state.selected.add(id);
    }
    this.requestScene();
  }

  stepWindow(delta: number): void {
    const next = shiftWindow(this.state.window, delta, this.meta.periods.length);
    if (next.lo !== this.state.window.lo || next.hi !== this.state.window.hi) {
      this.state.window = next;
      this.requestScene();
    }
  }

  /** Apply one slider drag step; used by the pointer handlers. */
  moveHandle(which: "left" | "right" | "middle", target: number): void {
    const t = this.meta.periods.length;
    const w = this.state.window;
    const next =
      which === "left"
        ? dragLeft(w, target)
        : which === "right"
          ? dragRight(w, target, t)
          : dragMiddle(w, target, t);
    if (next.lo !== w.lo || next.hi !== w.hi) {
      this.state.window = next;
      this.renderBandNow();
      this.requestScene();
    }
  }

  pinCard(id: number): void {
    const element = this.cardLayer.querySelector<HTMLDivElement>(
      `.card[data-building="${id}"]`
    );
    if (!element) return;
    const x = parseFloat(element.style.left) || 0;
    const y = parseFloat(element.style.top) || 0;
    const current = this.cardStore.get(id)?.pinned ?? false;
    this.cardStore.setPinned(id, !current, x, y);
    this.renderCards();
  }

  moveCard(id: number, x: number, y: number): void {
    this.cardStore.move(id, x, y);
    const element = this.cardLayer.querySelector<HTMLDivElement>(
      `.card[data-building="${id}"]`
    );
    if (element) {
      element.style.left = `${x}px`;
      element.style.top = `${y}px`;
    }
  }

  private onBandPointerDown(ev: Event): void {
    const target = ev.target as Element;
    const id = target.id;
    if (id === "handle-left" || id === "handle-right") {
      this.drag = { kind: id === "handle-left" ? "left" : "right", grabOffset: 0 };
    } else if (id === "handle-middle") {
      const idx = this.indexFromX((ev as PointerEvent).clientX);
      this.drag = { kind: "middle", grabOffset: idx - this.state.window.lo };
    }
  }

  private onPointerMove(ev: Event): void {
    if (!this.drag) return;
    const pe = ev as PointerEvent;
    if (this.drag.kind === "card") {
      const id = this.drag.cardId!;
      this.moveCard(
        id,
        pe.clientX - this.drag.grabOffset,
        pe.clientY - (this.drag.grabOffsetY ?? 0)
      );
      return;
    }
    const idx = this.indexFromX(pe.clientX);
    if (this.drag.kind === "middle") {
      this.moveHandle("middle", idx - this.drag.grabOffset);
    } else {
      this.moveHandle(this.drag.kind, idx);
    }
  }

  private onPointerUp(): void {
    this.drag = null;
  }

  /** Map a horizontal pixel position on the band to a period index. */
  indexFromX(clientX: number): number {
    const rect = this.bandSvg.getBoundingClientRect();
    const width = rect.width || Number(this.bandSvg.getAttribute("width")) || 1;
    const x = clientX - rect.left;
    const t = this.meta.periods.length;
    return Math.min(Math.max(Math.floor((x / width) * t), 0), t - 1);
  }

  // --- scene fetching -----------------------------------------------------

  requestScene(): void {
    this.issue(sceneQuery(this.state));
  }

  private issue(query: string): void {
    if (this.inFlight) {
      this.pendingQuery = query;
      return;
    }
    this.inFlight = true;
    if (!this.idleResolve) {
      this.idle = new Promise((resolve) => {
        this.idleResolve = resolve;
      });
    }
    const mySeq = ++this.seq;
    this.fetchFn(`${this.baseUrl}/api/scene?${query}`)
      .then(async (resp) => {
        if (!resp.ok) {
          const body = (await resp.json().catch(() => ({}))) as { error?: string };
          throw new Error(body.error ?? `scene request failed (${resp.status})`);
        }
        const scene = (await resp.json()) as Scene;
        if (!Array.isArray(scene.layers) || scene.layers.length !== 5) {
          throw new Error("malformed scene");
        }
        if (mySeq > this.applied) {
          this.applied = mySeq;
          this.applyScene(scene);
        }
      })
      .catch((err: unknown) => {
        this.showBanner(err instanceof Error ? err.message : String(err));
      })
      .finally(() => {
        this.inFlight = false;
        const pending = this.pendingQuery;
        this.pendingQuery = null;
        if (pending !== null) {
          this.issue(pending);
        } else if (this.idleResolve) {
          this.idleResolve();
          this.idleResolve = null;
        }
      });
  }

  private applyScene(scene: Scene): void {
    this.lastScene = scene;
    this.hideBanner();
    renderMap(this.mapSvg, scene);
    this.wireBuildings();
    renderBand(this.bandSvg, scene.histogram, scene.slider, scene.canvas.w);
    this.renderCards();
    this.refreshPinnedSummaries(scene);
  }

  private renderBandNow(): void {
    if (this.lastScene) {
      const { lo, hi } = this.state.window;
      renderBand(
        this.bandSvg,
        this.lastScene.histogram.map((bar, i) => ({
          ...bar,
          in_window: lo <= i && i <= hi,
        })),
        { lo, hi, t: this.meta.periods.length },
        this.lastScene.canvas.w
      );
    }
  }

  private wireBuildings(): void {
    for (const shape of this.mapSvg.querySelectorAll<SVGPolygonElement>(".building")) {
      const id = Number(shape.getAttribute("data-building"));
      shape.addEventListener("pointerenter", () => this.setArmed(id));
      shape.addEventListener("pointerleave", () => this.setArmed(null));
      shape.addEventListener("click", () => this.toggleSelected(id));
    }
  }

  private renderCards(): void {
    if (!this.lastScene) return;
    this.cardLayer.replaceChildren();
    const drawn = new Set<number>();
    for (const card of this.lastScene.cards) {
      const override = this.cardStore.get(card.building);
      const pos = override ?? { x: card.x, y: card.y, pinned: card.pinned };
      this.attachCard(renderCard(card, this.nameOf(card.building), pos), card.building);
      drawn.add(card.building);
    }
    // pinned cards survive deselection; payloads come from /api/summary
    for (const id of this.cardStore.pinnedIds()) {
      if (drawn.has(id)) continue;
      const pos = this.cardStore.get(id)!;
      const summary = this.summaries.get(id);
      const payload = {
        building: id,
        x: pos.x,
        y: pos.y,
        pinned: true,
        out: summary?.out ?? 0,
        in: summary?.in ?? 0,
        net: summary?.net ?? 0,
        internal: summary?.internal ?? 0,
        partners: summary?.partners ?? [],
      };
      this.attachCard(renderCard(payload, this.nameOf(id), pos), id);
    }
  }

  private attachCard(element: HTMLDivElement, id: number): void {
    const header = element.querySelector<HTMLDivElement>(".card-header")!;
    header.addEventListener("pointerdown", (ev) => {
      if ((ev.target as Element).classList.contains("pin")) return;
      const pe = ev as PointerEvent;
      this.drag = {
        kind: "card",
        cardId: id,
        grabOffset: pe.clientX - (parseFloat(element.style.left) || 0),
        grabOffsetY: pe.clientY - (parseFloat(element.style.top) || 0),
      };
    });
    element.querySelector<HTMLButtonElement>(".pin")!.addEventListener("click", () => {
      this.pinCard(id);
    });
    this.cardLayer.appendChild(element);
  }

  private refreshPinnedSummaries(scene: Scene): void {
    const selected = new Set(scene.cards.map((c) => c.building));
    const { lo, hi } = this.state.window;
    for (const id of this.cardStore.pinnedIds()) {
      if (selected.has(id)) continue;
      this.fetchFn(`${this.baseUrl}/api/summary/${id}?from=${lo}&to=${hi}`)
        .then(async (resp) => {
          if (!resp.ok) return;
          this.summaries.set(id, (await resp.json()) as Summary);
          this.renderCards();
        })
        .catch(() => undefined);
    }
  }

  private nameOf(id: number): string {
    return this.meta.buildings.find((b) => b.id === id)?.name ?? `#${id}`;
  }

  private showBanner(message: string): void {
    this.banner.textContent = `error: ${message}`;
    this.banner.classList.remove("hidden");
  }

  private hideBanner(): void {
    this.banner.classList.add("hidden");
  }
}
