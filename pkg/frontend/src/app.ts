// Application shell: the theme map browser (tool 1) and the reading view
// with excerpt map, wheels, and strategy editor (tool 2).

import { ApiClient } from './api';
import { renderCloud } from './cloud';
import { highlightCluster, highlightTheme, renderMap } from './hex';
import { ViewStore } from './state';
import type {
  AboutPayload,
  ExcerptBody,
  MapPayload,
  PaperRecord,
  ThemeDetail,
  ThemeRecord,
  WheelSegment,
} from './types';
import { highlightWheelTheme, renderWheel } from './wheel';

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, className?: string, text?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  private detail: ThemeDetail | null = null;
  private excerpt: ExcerptBody | null = null;
  private papers = new Map<string, PaperRecord>();
  private mapSvg: SVGSVGElement | null = null;
  private excerptSvg: SVGSVGElement | null = null;

  constructor(private readonly root: HTMLElement,
              private readonly client: ApiClient,
              readonly store: ViewStore,
              private readonly map: MapPayload,
              private readonly about: AboutPayload,
              readonly sessionId: string) {}

  /** Label shown for a paper; the id stands in until titles are revealed. */
  private paperLabel(docId: string, title: string | null): string {
    return title ?? docId;
  }

  render(): void {
    this.root.textContent = '';
    this.root.appendChild(this.renderHeader());
    const main = el('main');
    main.appendChild(this.store.view === 'tool1' ? this.renderTool1()
                                                 : this.renderTool2());
    this.root.appendChild(main);
  }

  private renderHeader(): HTMLElement {
    const header = el('header');
    header.appendChild(el('h1', 'app-title', 'Corpus explorer'));
    header.appendChild(el(
      'span', 'about-line',
      `${this.about.n_papers} papers, ${this.about.k} themes, ` +
      `${this.about.n_clusters} clusters`));
    const session = el('span', 'session-line', `session ${this.sessionId}`);
    session.id = 'session-id';
    header.appendChild(session);

    const nav = el('nav');
    const mapBtn = el('button', 'nav-tool1', 'Theme map');
    mapBtn.id = 'nav-tool1';
    mapBtn.addEventListener('click', () => {
      this.store.openTool1();
      this.render();
    });
    nav.appendChild(mapBtn);

    const reveal = el('button', 'reveal-button', 'Reveal titles');
    reveal.id = 'reveal-titles';
    reveal.disabled = this.store.revealed;
    if (this.store.revealed) reveal.textContent = 'Titles revealed';
    reveal.addEventListener('click', () => void this.revealTitles());
    nav.appendChild(reveal);
    header.appendChild(nav);
    return header;
  }

  // ---- tool 1: theme map and paper picking ----

  private renderTool1(): HTMLElement {
    const tool = el('section', 'tool1');
    tool.id = 'tool1';

    const mapPane = el('div', 'map-pane');
    this.mapSvg = renderMap(this.map, {
      onSelect: (theme) => void this.selectTheme(theme),
      onHover: (theme) => {
        if (this.mapSvg) {
          highlightCluster(this.mapSvg, theme ? theme.cluster : null);
        }
      },
    });
    this.mapSvg.id = 'theme-map';
    mapPane.appendChild(this.mapSvg);
    tool.appendChild(mapPane);

    const side = el('div', 'side-pane');
    side.appendChild(this.renderDetail());
    side.appendChild(this.renderBasket());
    tool.appendChild(side);
    return tool;
  }

  private async selectTheme(theme: ThemeRecord): Promise<void> {
    this.store.selectTheme(theme.theme_id);
    this.detail = await this.client.themeDetail(theme.theme_id,
                                                this.sessionId);
    this.render();
  }

  private renderDetail(): HTMLElement {
    const panel = el('div', 'theme-detail');
    panel.id = 'theme-detail';
    if (!this.detail) {
      panel.appendChild(el('p', 'hint', 'Click a hex to inspect a theme.'));
      return panel;
    }
    const { theme, papers } = this.detail;
    panel.appendChild(el('h2', 'detail-title',
                         `Theme #${theme.theme_id}: ${theme.label}`));
    const cloud = renderCloud(theme.theme_id, theme.top_terms, theme.color);
    cloud.id = 'word-cloud';
    panel.appendChild(cloud);

    const list = el('ul', 'paper-list');
    list.id = 'paper-list';
    for (const paper of papers) {
      const row = el('li', 'paper-row');
      row.dataset.doc = paper.doc_id;
      row.appendChild(renderWheel(paper.wheel, { size: 56 }));
      const label = el('span', 'paper-label',
                       this.paperLabel(paper.doc_id, paper.title));
      row.appendChild(label);
      row.appendChild(el('span', 'relevance',
                         `${paper.relevance_percent.toFixed(1)}%`));
      const toggle = el('button', 'basket-toggle',
                        this.store.inBasket(paper.doc_id) ? 'Remove' : 'Add');
      toggle.addEventListener('click', () => {
        this.store.toggleBasket(paper.doc_id);
        this.render();
      });
      row.appendChild(toggle);
      list.appendChild(row);
    }
    panel.appendChild(list);
    return panel;
  }

  private renderBasket(): HTMLElement {
    const basket = el('div', 'basket');
    basket.id = 'basket';
    basket.appendChild(el(
      'h3', 'basket-title',
      `Selected ${this.store.basket.length} of ${this.about.max_selection}`));
    const chips = el('ul', 'basket-chips');
    for (const docId of this.store.basket) {
      const chip = el('li', 'basket-chip',
                      this.paperLabel(docId, this.papers.get(docId)?.title ??
                                             null));
      chip.dataset.doc = docId;
      chips.appendChild(chip);
    }
    basket.appendChild(chips);

    const open = el('button', 'open-tool2', 'Open reading view');
    open.id = 'open-tool2';
    open.disabled = !this.store.canOpenTool2();
    open.addEventListener('click', () => void this.openTool2());
    basket.appendChild(open);
    return basket;
  }

  async openTool2(): Promise<void> {
    if (!this.store.canOpenTool2()) return;
    await this.client.putSelection(this.sessionId, this.store.basket);
    this.excerpt = await this.client.excerptMap(this.sessionId);
    await this.loadPaperRecords(this.store.basket);
    this.store.openTool2();
    this.render();
  }

  private async loadPaperRecords(docIds: readonly string[]): Promise<void> {
    const records = await Promise.all(
      docIds.map((id) => this.client.paper(id, this.sessionId)));
    for (const record of records) this.papers.set(record.doc_id, record);
  }

  // ---- tool 2: excerpt map, wheels, strategy ----

  private renderTool2(): HTMLElement {
    const tool = el('section', 'tool2');
    tool.id = 'tool2';
    if (!this.excerpt) {
      tool.appendChild(el('p', 'hint', 'No selection loaded.'));
      return tool;
    }
    const { excerpt, wheels } = this.excerpt;

    const split = el('div', 'tool2-split');
    const mapPane = el('div', 'excerpt-pane');
    this.excerptSvg = renderMap(excerpt, {
      onHover: (theme) => this.linkHover(theme ? theme.theme_id : null),
    });
    this.excerptSvg.id = 'excerpt-map';
    mapPane.appendChild(this.excerptSvg);
    mapPane.appendChild(this.renderProvenance());
    split.appendChild(mapPane);

    const wheelGrid = el('div', 'wheel-grid');
    wheelGrid.id = 'wheel-grid';
    for (const wheel of wheels) {
      const cell = el('figure', 'wheel-cell');
      cell.dataset.doc = wheel.doc_id;
      cell.appendChild(renderWheel(wheel, {
        size: 110,
        marked: this.store.markedChunks(wheel.doc_id),
        handlers: {
          onSegmentClick: (segment: WheelSegment) => {
            this.store.toggleChunk(wheel.doc_id, segment.chunk_index);
            this.render();
          },
          onSegmentHover: (segment: WheelSegment | null) =>
            this.linkHover(segment ? segment.theme_id : null),
        },
      }));
      const caption = el(
        'figcaption', 'wheel-caption',
        this.paperLabel(wheel.doc_id,
                        this.papers.get(wheel.doc_id)?.title ?? null));
      cell.appendChild(caption);
      wheelGrid.appendChild(cell);
    }
    split.appendChild(wheelGrid);
    tool.appendChild(split);
    tool.appendChild(this.renderStrategy());
    return tool;
  }

  /** Hovering a theme anywhere lights it up on the map and every wheel. */
  private linkHover(themeId: number | null): void {
    if (this.excerptSvg) highlightTheme(this.excerptSvg, themeId);
    const grid = this.root.querySelector('#wheel-grid');
    if (grid) highlightWheelTheme(grid, themeId);
  }

  private renderProvenance(): HTMLElement {
    const panel = el('div', 'provenance');
    panel.id = 'provenance';
    if (!this.excerpt) return panel;
    const byTheme = new Map(
      this.excerpt.excerpt.provenance.map((p) => [p.theme_id, p.witnesses]));
    const list = el('ul', 'provenance-list');
    for (const theme of this.excerpt.excerpt.themes) {
      const row = el('li', 'provenance-row');
      row.dataset.theme = String(theme.theme_id);
      const swatch = el('span', 'swatch');
      swatch.style.backgroundColor = theme.color;
      row.appendChild(swatch);
      const witnesses = (byTheme.get(theme.theme_id) ?? [])
        .map(([doc, weight]) => `${doc} (${weight.toFixed(2)})`)
        .join(', ');
      row.appendChild(el('span', 'provenance-text',
                         `#${theme.theme_id} ${theme.label}: ${witnesses}`));
      list.appendChild(row);
    }
    panel.appendChild(list);
    return panel;
  }

  private renderStrategy(): HTMLElement {
    const editor = el('div', 'strategy-editor');
    editor.id = 'strategy-editor';
    editor.appendChild(el('h3', 'strategy-title', 'Reading strategy'));

    const list = el('ol', 'strategy-list');
    this.store.draft.forEach((entry, index) => {
      const row = el('li', 'strategy-row');
      row.dataset.doc = entry.doc_id;

      const up = el('button', 'move-up', '↑');
      up.disabled = index === 0;
      up.addEventListener('click', () => {
        this.store.moveEntry(index, -1);
        this.render();
      });
      row.appendChild(up);

      const down = el('button', 'move-down', '↓');
      down.disabled = index === this.store.draft.length - 1;
      down.addEventListener('click', () => {
        this.store.moveEntry(index, 1);
        this.render();
      });
      row.appendChild(down);

      row.appendChild(el(
        'span', 'strategy-label',
        `${index + 1}. ` +
        this.paperLabel(entry.doc_id,
                        this.papers.get(entry.doc_id)?.title ?? null)));

      const ranges = [...entry.chunks].sort((a, b) => a - b).join(', ');
      row.appendChild(el('span', 'strategy-chunks',
                         ranges ? `chunks ${ranges}` : 'no chunks marked'));

      const note = el('input', 'strategy-note');
      note.type = 'text';
      note.placeholder = 'note';
      note.value = entry.note;
      note.addEventListener('change', () => {
        this.store.setNote(entry.doc_id, note.value);
      });
      row.appendChild(note);
      list.appendChild(row);
    });
    editor.appendChild(list);

    const save = el('button', 'save-strategy', 'Save strategy');
    save.id = 'save-strategy';
    save.addEventListener('click', () => void this.saveStrategy());
    editor.appendChild(save);

    const status = el('span', 'strategy-status');
    status.id = 'strategy-status';
    editor.appendChild(status);
    return editor;
  }

  async saveStrategy(): Promise<void> {
    const entries = this.store.draftEntries();
    await this.client.putStrategy(this.sessionId, entries);
    const status = this.root.querySelector('#strategy-status');
    if (status) status.textContent = `Saved ${entries.length} entries`;
  }

  /** One-way: confirm, flip the session flag, then refetch whatever is on
   * screen so real titles replace the ids. */
  async revealTitles(): Promise<void> {
    if (this.store.revealed) return;
    if (!window.confirm('Reveal paper titles? This cannot be undone.')) return;
    await this.client.reveal(this.sessionId);
    this.store.reveal();
    if (this.detail) {
      this.detail = await this.client.themeDetail(this.detail.theme.theme_id,
                                                  this.sessionId);
    }
    await this.loadPaperRecords([...this.papers.keys(),
                                 ...this.store.basket]);
    this.render();
  }
}

export async function boot(root: HTMLElement, client: ApiClient,
                           sessionId?: string): Promise<App> {
  const about = await client.about();
  const map = await client.themeMap();
  const session = sessionId ? await client.session(sessionId)
                            : await client.createSession();
  const store = new ViewStore(about.max_selection);
  store.loadSession(session);
  const app = new App(root, client, store, map, about, session.session_id);
  if (typeof window !== 'undefined') {
    window.location.hash = `session=${session.session_id}`;
  }
  app.render();
  return app;
}
