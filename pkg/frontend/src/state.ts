/** Client view state and the pure window arithmetic behind the slider. */

export interface TimeWindow {
  lo: number;
  hi: number;
}

export interface ClientViewState {
  window: TimeWindow;
  threshold: number;
  selected: Set<number>;
  armed: number | null;
}

export function initialState(periodCount: number): ClientViewState {
  return {
    window: { lo: 0, hi: periodCount - 1 },
    threshold: 1,
    selected: new Set(),
    armed: null,
  };
}

const clamp = (v: number, lo: number, hi: number) => Math.min(Math.max(v, lo), hi);

/** Left handle: lower bound moves freely within [0, hi]. */
export function dragLeft(w: TimeWindow, target: number): TimeWindow {
  return { lo: clamp(Math.round(target), 0, w.hi), hi: w.hi };
}

/** Right handle: upper bound moves freely within [lo, T-1]. */
export function dragRight(w: TimeWindow, target: number, periodCount: number): TimeWindow {
  return { lo: w.lo, hi: clamp(Math.round(target), w.lo, periodCount - 1) };
}

/** Middle handle: slide both bounds, width preserved, clamped to the range. */
export function shiftWindow(w: TimeWindow, delta: number, periodCount: number): TimeWindow {
  const width = w.hi - w.lo;
  const lo = clamp(w.lo + delta, 0, periodCount - 1 - width);
  return { lo, hi: lo + width };
}

/** Middle drag to an absolute target index for the window's low edge. */
export function dragMiddle(w: TimeWindow, targetLo: number, periodCount: number): TimeWindow {
  return shiftWindow(w, Math.round(targetLo) - w.lo, periodCount);
}

/** Serialize the analyst state into /api/scene query parameters. */
export function sceneQuery(vs: ClientViewState): string {
  const params = new URLSearchParams();
  params.set("from", String(vs.window.lo));
  params.set("to", String(vs.window.hi));
  params.set("threshold", String(vs.threshold));
  if (vs.selected.size > 0) {
    params.set("selected", [...vs.selected].sort((a, b) => a - b).join(","));
  }
  if (vs.armed !== null) {
    params.set("armed", String(vs.armed));
  }
  return params.toString();
}
