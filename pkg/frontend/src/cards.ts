/** Card position/pin bookkeeping with localStorage persistence.
 *
 * Positions of moved cards live in memory for the session; pinned cards are
 * written through to storage so they survive selection changes and reloads.
 */

export interface CardState {
  x: number;
  y: number;
  pinned: boolean;
}

const STORAGE_KEY = "relocviz.cards.v1";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export class CardStore {
  private states = new Map<number, CardState>();

  constructor(private storage: StorageLike) {
    const raw = storage.getItem(STORAGE_KEY);
    if (raw) {
      try {
        const parsed = JSON.parse(raw) as Record<string, CardState>;
        for (const [id, state] of Object.entries(parsed)) {
          if (state.pinned) {
            this.states.set(Number(id), { ...state });
          }
        }
      } catch {
        // corrupt storage resets silently
      }
    }
  }

  get(id: number): CardState | undefined {
    return this.states.get(id);
  }

  /** Every pinned card, whether or not its building is selected. */
  pinnedIds(): number[] {
    return [...this.states.entries()].filter(([, s]) => s.pinned).map(([id]) => id);
  }

  move(id: number, x: number, y: number): void {
    const prev = this.states.get(id);
    this.states.set(id, { x, y, pinned: prev?.pinned ?? false });
    this.persist();
  }

  setPinned(id: number, pinned: boolean, x: number, y: number): void {
    this.states.set(id, { x, y, pinned });
    this.persist();
  }

  /** Forget an unpinned card (its building was deselected). */
  drop(id: number): void {
    const state = this.states.get(id);
    if (state && !state.pinned) {
      this.states.delete(id);
      this.persist();
    }
  }

  private persist(): void {
    const pinned: Record<string, CardState> = {};
    for (const [id, state] of this.states) {
      if (state.pinned) {
        pinned[String(id)] = state;
      }
    }
    this.storage.setItem(STORAGE_KEY, JSON.stringify(pinned));
  }
}
