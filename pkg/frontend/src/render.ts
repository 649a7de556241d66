/** Dumb scene rendering: the server decides geometry, styling, and layer
 * order; this module only turns scene JSON into DOM. */

import type { HistogramBar, Scene, SceneCard, SceneItem } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
export const BAND_HEIGHT = 80;

export function hslCss(fill: { h: number; s: number; l: number }): string {
  return `hsl(${fill.h.toFixed(3)},${(fill.s * 100).toFixed(3)}%,${(fill.l * 100).toFixed(3)}%)`;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  return node;
}

const pointList = (points: [number, number][]) =>
  points.map(([x, y]) => `${x},${y}`).join(" ");

function renderItem(item: SceneItem): SVGElement[] {
  if (item.kind === "poly") {
    const poly = el("polygon", {
      points: pointList(item.points),
      fill: hslCss(item.fill),
    });
    if (item.building !== undefined) {
      poly.setAttribute("data-building", String(item.building));
      poly.setAttribute("class", "building");
    }
    return [poly];
  }
  const d =
    `M ${item.points[0]![0]} ${item.points[0]![1]} ` +
    item.points.slice(1).map(([x, y]) => `L ${x} ${y}`).join(" ");
  const color = hslCss(item.fill);
  const path = el("path", {
    d,
    fill: "none",
    stroke: color,
    "stroke-width": String(item.thickness),
    "stroke-linecap": "round",
    "data-src": String(item.src),
    "data-dst": String(item.dst),
  });
  const head = el("polygon", { points: pointList(item.arrow), fill: color });
  return [path, head];
}

/** Repaint the map layers into `svg` (replacing previous content). */
export function renderMap(svg: SVGSVGElement, scene: Scene): void {
  svg.setAttribute("viewBox", `0 0 ${scene.canvas.w} ${scene.canvas.h}`);
  svg.replaceChildren();
  scene.layers.forEach((layer, z) => {
    const group = el("g", { id: `layer-${z}` });
    for (const item of layer) {
      for (const node of renderItem(item)) {
        group.appendChild(node);
      }
    }
    svg.appendChild(group);
  });
}

/** Histogram bars plus the three slider handles in the bottom band. */
export function renderBand(
  svg: SVGSVGElement,
  histogram: HistogramBar[],
  slider: { lo: number; hi: number; t: number },
  width: number
): void {
  svg.setAttribute("viewBox", `0 0 ${width} ${BAND_HEIGHT}`);
  svg.replaceChildren();
  const t = slider.t;
  if (t === 0) return;
  const slot = width / t;
  const base = BAND_HEIGHT - 24;

  const bars = el("g", { id: "band-histogram" });
  histogram.forEach((bar, i) => {
    const rect = el("rect", {
      x: String(i * slot + slot * 0.1),
      y: String(base - bar.height),
      width: String(slot * 0.8),
      height: String(bar.height),
      fill: "#607080",
      opacity: bar.in_window ? "1" : "0.35",
      "data-period": String(i),
    });
    const title = el("title", {});
    title.textContent = `${bar.label}: ${bar.total}`;
    rect.appendChild(title);
    bars.appendChild(rect);
  });
  svg.appendChild(bars);

  const trackY = base + 10;
  const track = el("line", {
    x1: "0",
    y1: String(trackY),
    x2: String(width),
    y2: String(trackY),
    stroke: "#404040",
    "stroke-width": "1",
  });
  svg.appendChild(track);

  const handles = el("g", { id: "band-handles" });
  const loX = (slider.lo + 0.5) * slot;
  const hiX = (slider.hi + 0.5) * slot;
  handles.appendChild(
    el("polygon", {
      id: "handle-left",
      class: "handle",
      points: `${loX - 6},${trackY} ${loX},${trackY - 8} ${loX},${trackY + 8}`,
      fill: "#202020",
    })
  );
  handles.appendChild(
    el("polygon", {
      id: "handle-right",
      class: "handle",
      points: `${hiX + 6},${trackY} ${hiX},${trackY - 8} ${hiX},${trackY + 8}`,
      fill: "#202020",
    })
  );
  handles.appendChild(
    el("rect", {
      id: "handle-middle",
      class: "handle",
      x: String(loX),
      y: String(trackY - 4),
      width: String(Math.max(hiX - loX, 8)),
      height: "8",
      fill: "#808080",
      opacity: "0.7",
    })
  );
  svg.appendChild(handles);
}

/** One summary card element (absolutely positioned HTML). */
export function renderCard(
  card: SceneCard,
  name: string,
  pos: { x: number; y: number; pinned: boolean }
): HTMLDivElement {
  const div = document.createElement("div");
  div.className = pos.pinned ? "card pinned" : "card";
  div.dataset["building"] = String(card.building);
  div.style.left = `${pos.x}px`;
  div.style.top = `${pos.y}px`;

  const header = document.createElement("div");
  header.className = "card-header";
  const title = document.createElement("span");
  title.textContent = name;
  const pin = document.createElement("button");
  pin.className = "pin";
  pin.title = pos.pinned ? "unpin" : "pin";
  pin.textContent = pos.pinned ? "\u{1F4CC}" : "○";
  header.append(title, pin);
  div.appendChild(header);

  const body = document.createElement("div");
  body.className = "card-body";
  const netSign = card.net > 0 ? "+" : "";
  body.innerHTML =
    `<div class="totals">out ${card.out} &middot; in ${card.in} &middot; ` +
    `net ${netSign}${card.net} &middot; internal ${card.internal}</div>`;
  const partners = document.createElement("ul");
  for (const p of card.partners) {
    const li = document.createElement("li");
    li.textContent = `#${p.id}: out ${p.out}, in ${p.in}`;
    partners.appendChild(li);
  }
  body.appendChild(partners);
  div.appendChild(body);
  return div;
}
