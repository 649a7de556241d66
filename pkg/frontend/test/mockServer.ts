/** In-memory stand-in for the scene service, mirroring the shared fixture:
 * buildings A, B, C; periods P1..P4; flows P1 A->B=5, B->A=1, A->C=2;
 * P2 A->B=3; P4 B->C=10, C->A=4. */

import type { FetchLike } from "../src/app.js";
import type { Meta, Scene, SceneCard, SceneItem } from "../src/types.js";

const MATRICES = [
  [
    [0, 5, 2],
    [1, 0, 0],
    [0, 0, 0],
  ],
  [
    [0, 3, 0],
    [0, 0, 0],
    [0, 0, 0],
  ],
  [
    [0, 0, 0],
    [0, 0, 0],
    [0, 0, 0],
  ],
  [
    [0, 0, 0],
    [0, 0, 10],
    [4, 0, 0],
  ],
];

const ANCHORS: [number, number][] = [
  [4, 4],
  [12, 4],
  [4, 12],
];

export const META: Meta = {
  periods: ["P1", "P2", "P3", "P4"],
  buildings: [
    { id: 0, name: "A", color: "FF0000", anchor: ANCHORS[0]! },
    { id: 1, name: "B", color: "00FF00", anchor: ANCHORS[1]! },
    { id: 2, name: "C", color: "0000FF", anchor: ANCHORS[2]! },
  ],
  canvas: { w: 64, h: 64 },
};

function aggregate(lo: number, hi: number): number[][] {
  const out = [
    [0, 0, 0],
    [0, 0, 0],
    [0, 0, 0],
  ];
  for (let t = lo; t <= hi; t += 1) {
    for (let i = 0; i < 3; i += 1) {
      for (let j = 0; j < 3; j += 1) {
        out[i]![j]! += MATRICES[t]![i]![j]!;
      }
    }
  }
  return out;
}

function square(cx: number, cy: number): [number, number][] {
  return [
    [cx - 2, cy - 2],
    [cx + 2, cy - 2],
    [cx + 2, cy + 2],
    [cx - 2, cy + 2],
  ];
}

function summaryFor(id: number, lo: number, hi: number) {
  const agg = aggregate(lo, hi);
  let out = 0;
  let inc = 0;
  const partners = [];
  for (let j = 0; j < 3; j += 1) {
    if (j === id) continue;
    out += agg[id]![j]!;
    inc += agg[j]![id]!;
    if (agg[id]![j]! || agg[j]![id]!) {
      partners.push({ id: j, out: agg[id]![j]!, in: agg[j]![id]! });
    }
  }
  partners.sort((a, b) => b.out + b.in - (a.out + a.in) || a.id - b.id);
  return {
    building: id,
    out,
    in: inc,
    net: inc - out,
    internal: agg[id]![id]!,
    partners,
  };
}

function buildScene(params: URLSearchParams): Scene {
  const lo = Number(params.get("from") ?? 0);
  const hi = Number(params.get("to") ?? 3);
  const threshold = Number(params.get("threshold") ?? 1);
  const selectedRaw = params.get("selected");
  const selected = new Set(
    selectedRaw ? selectedRaw.split(",").map((s) => Number(s)) : []
  );
  const armed = params.get("armed") !== null ? Number(params.get("armed")) : null;

  const agg = aggregate(lo, hi);
  const layers: SceneItem[][] = [[], [], [], [], []];
  layers[0]!.push({
    kind: "poly",
    points: [
      [0, 0],
      [64, 0],
      [64, 64],
      [0, 64],
    ],
    fill: { h: 0, s: 0, l: 0.8 },
  });
  const level = (id: number) =>
    (selected.has(id) ? 2 : 0) + (armed === id ? 1 : 0);
  for (let id = 0; id < 3; id += 1) {
    const item: SceneItem = {
      kind: "poly",
      points: square(...ANCHORS[id]!),
      fill: { h: 10, s: 0.15, l: 0.5 },
      building: id,
    };
    layers[level(id) > 0 ? 4 : 2]!.push(item);
  }
  for (let i = 0; i < 3; i += 1) {
    for (let j = 0; j < 3; j += 1) {
      if (i === j || agg[i]![j]! < 1) continue;
      const focus = level(i) > 0 || level(j) > 0;
      if (!focus && agg[i]![j]! < threshold) continue;
      layers[focus ? 3 : 1]!.push({
        kind: "arc",
        src: i,
        dst: j,
        count: agg[i]![j]!,
        points: [ANCHORS[i]!, [8, 8], ANCHORS[j]!],
        thickness: 2,
        fill: { h: 210, s: 0.15, l: 0.5 },
        arrow: [ANCHORS[j]!, [0, 0], [1, 1]],
      });
    }
  }

  const totals = MATRICES.map((m) =>
    m.reduce((acc, row, i) => acc + row.reduce((a, v, j) => (i === j ? a : a + v), 0), 0)
  );
  const cards: SceneCard[] = [...selected]
    .sort((a, b) => a - b)
    .map((id, k) => ({
      ...summaryFor(id, lo, hi),
      x: ANCHORS[id]![0] + 16 + 12 * k,
      y: ANCHORS[id]![1] - 16 + 12 * k,
      pinned: false,
    }));

  return {
    canvas: META.canvas,
    layers,
    histogram: totals.map((total, i) => ({
      label: META.periods[i]!,
      total,
      height: total === 0 ? 0 : (40 * Math.log1p(total)) / Math.log1p(14),
      in_window: lo <= i && i <= hi,
    })),
    slider: { lo, hi, t: 4 },
    cards,
  };
}

export interface MockServer {
  fetchFn: FetchLike;
  sceneRequests: string[];
  summaryRequests: string[];
}

export function mockServer(): MockServer {
  const sceneRequests: string[] = [];
  const summaryRequests: string[] = [];
  const fetchFn: FetchLike = (url) => {
    const parsed = new URL(url, "http://test");
    const ok = (body: unknown) =>
      Promise.resolve({ ok: true, status: 200, json: () => Promise.resolve(body) });
    if (parsed.pathname === "/api/meta") {
      return ok(META);
    }
    if (parsed.pathname === "/api/scene") {
      sceneRequests.push(parsed.search);
      return ok(buildScene(parsed.searchParams));
    }
    const match = parsed.pathname.match(/^\/api\/summary\/(\d+)$/);
    if (match) {
      summaryRequests.push(parsed.pathname + parsed.search);
      const lo = Number(parsed.searchParams.get("from") ?? 0);
      const hi = Number(parsed.searchParams.get("to") ?? 3);
      return ok(summaryFor(Number(match[1]), lo, hi));
    }
    return Promise.resolve({
      ok: false,
      status: 404,
      json: () => Promise.resolve({ error: "not found" }),
    });
  };
  return { fetchFn, sceneRequests, summaryRequests };
}

export class MemoryStorage {
  private data = new Map<string, string>();

  getItem(key: string): string | null {
    return this.data.get(key) ?? null;
  }

  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }
}
