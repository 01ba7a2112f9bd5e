// Client view state. Everything here is rebuildable from the API plus a
// session id, so a page reload loses nothing.

import type { SessionPayload, StrategyEntryPayload } from './types';

export type View = 'tool1' | 'tool2';

export interface DraftEntry {
  doc_id: string;
  note: string;
  chunks: Set<number>;
}

/** Collapse marked chunk indexes into inclusive [start, end] runs. */
export function chunksToSegments(chunks: ReadonlySet<number>):
    [number, number][] {
  const sorted = [...chunks].sort((a, b) => a - b);
  const segments: [number, number][] = [];
  for (const chunk of sorted) {
    const last = segments[segments.length - 1];
    if (last && chunk === last[1] + 1) {
      last[1] = chunk;
    } else {
      segments.push([chunk, chunk]);
    }
  }
  return segments;
}

export function segmentsToChunks(segments: ReadonlyArray<[number, number]>):
    Set<number> {
  const chunks = new Set<number>();
  for (const [start, end] of segments) {
    for (let chunk = start; chunk <= end; chunk += 1) chunks.add(chunk);
  }
  return chunks;
}

export class ViewStore {
  view: View = 'tool1';
  selectedTheme: number | null = null;
  basket: string[] = [];
  draft: DraftEntry[] = [];
  revealed = false;

  private listeners: Array<() => void> = [];

  constructor(readonly maxSelection: number) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  selectTheme(themeId: number | null): void {
    this.selectedTheme = themeId;
    this.emit();
  }

  inBasket(docId: string): boolean {
    return this.basket.includes(docId);
  }

  /** Add or remove a paper; adds beyond the selection limit are ignored.
   * The strategy draft tracks membership. */
  toggleBasket(docId: string): boolean {
    if (this.inBasket(docId)) {
      this.basket = this.basket.filter((d) => d !== docId);
      this.draft = this.draft.filter((e) => e.doc_id !== docId);
    } else {
      if (this.basket.length >= this.maxSelection) return false;
      this.basket = [...this.basket, docId];
      this.draft = [...this.draft,
                    { doc_id: docId, note: '', chunks: new Set() }];
    }
    this.emit();
    return true;
  }

  canOpenTool2(): boolean {
    return this.basket.length > 0;
  }

  /** The reading view needs at least one selected paper. */
  openTool2(): boolean {
    if (!this.canOpenTool2()) return false;
    this.view = 'tool2';
    this.emit();
    return true;
  }

  openTool1(): void {
    this.view = 'tool1';
    this.emit();
  }

  moveEntry(index: number, delta: -1 | 1): void {
    const target = index + delta;
    if (index < 0 || index >= this.draft.length) return;
    if (target < 0 || target >= this.draft.length) return;
    const next = [...this.draft];
    [next[index], next[target]] = [next[target], next[index]];
    this.draft = next;
    this.emit();
  }

  setNote(docId: string, note: string): void {
    const entry = this.draft.find((e) => e.doc_id === docId);
    if (!entry) return;
    entry.note = note;
    this.emit();
  }

  toggleChunk(docId: string, chunkIndex: number): void {
    const entry = this.draft.find((e) => e.doc_id === docId);
    if (!entry) return;
    if (entry.chunks.has(chunkIndex)) {
      entry.chunks.delete(chunkIndex);
    } else {
      entry.chunks.add(chunkIndex);
    }
    this.emit();
  }

  markedChunks(docId: string): ReadonlySet<number> {
    return this.draft.find((e) => e.doc_id === docId)?.chunks ?? new Set();
  }

  /** Draft in reading order; rank is the 1-based position. */
  draftEntries(): StrategyEntryPayload[] {
    return this.draft.map((entry, index) => ({
      doc_id: entry.doc_id,
      rank: index + 1,
      note: entry.note,
      segments: chunksToSegments(entry.chunks),
    }));
  }

  reveal(): void {
    this.revealed = true;
    this.emit();
  }

  /** Rebuild local state from a stored session. */
  loadSession(session: SessionPayload): void {
    this.basket = [...session.selection];
    const byDoc = new Map(session.strategy.map((e) => [e.doc_id, e]));
    this.draft = [...session.strategy]
      .sort((a, b) => a.rank - b.rank)
      .map((e) => ({
        doc_id: e.doc_id,
        note: e.note,
        chunks: segmentsToChunks(e.segments),
      }));
    for (const docId of this.basket) {
      if (!byDoc.has(docId)) {
        this.draft.push({ doc_id: docId, note: '', chunks: new Set() });
      }
    }
    this.revealed = session.titles_revealed;
    this.emit();
  }
}
