/** Wire types for the scene service. */

export interface Hsl {
  h: number;
  s: number;
  l: number;
}

export interface PolyItem {
  kind: "poly";
  points: [number, number][];
  fill: Hsl;
  building?: number;
}

export interface ArcItem {
  kind: "arc";
  src: number;
  dst: number;
  count: number;
  points: [number, number][];
  thickness: number;
  fill: Hsl;
  arrow: [number, number][];
}

export type SceneItem = PolyItem | ArcItem;

export interface HistogramBar {
  label: string;
  total: number;
  height: number;
  in_window: boolean;
}

export interface Partner {
  id: number;
  out: number;
  in: number;
}

export interface SceneCard {
  building: number;
  x: number;
  y: number;
  pinned: boolean;
  out: number;
  in: number;
  net: number;
  internal: number;
  partners: Partner[];
}

export interface Scene {
  canvas: { w: number; h: number };
  layers: SceneItem[][];
  histogram: HistogramBar[];
  slider: { lo: number; hi: number; t: number };
  cards: SceneCard[];
}

export interface BuildingMeta {
  id: number;
  name: string;
  color: string;
  anchor: [number, number];
}

export interface Meta {
  periods: string[];
  buildings: BuildingMeta[];
  canvas: { w: number; h: number };
}

/** Summary payload from /api/summary/<id>. */
export interface Summary {
  building: number;
  out: number;
  in: number;
  net: number;
  internal: number;
  partners: Partner[];
}
