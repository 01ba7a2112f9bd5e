// Word cloud for a theme's top terms. Font size follows term weight;
// placement walks an Archimedean spiral from a per-theme seed so the
// same payload always yields the same layout.

const SVG_NS = 'http://www.w3.org/2000/svg';

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

function overlaps(a: Box, b: Box): boolean {
  return a.x < b.x + b.w && b.x < a.x + a.w &&
         a.y < b.y + b.h && b.y < a.y + a.h;
}

const MIN_FONT = 11;
const MAX_FONT = 34;
// jsdom has no text metrics; a fixed glyph aspect keeps layout deterministic
// everywhere.
const GLYPH_ASPECT = 0.62;

export interface CloudWord {
  term: string;
  fontSize: number;
  x: number;
  y: number;
}

export function layoutCloud(terms: ReadonlyArray<[string, number]>,
                            seed: number): CloudWord[] {
  if (terms.length === 0) return [];
  const weights = terms.map(([, w]) => w);
  const lo = Math.min(...weights);
  const hi = Math.max(...weights);
  const scale = (w: number) =>
    hi > lo ? MIN_FONT + ((w - lo) / (hi - lo)) * (MAX_FONT - MIN_FONT)
            : (MIN_FONT + MAX_FONT) / 2;

  const rand = mulberry32(seed);
  const placed: Box[] = [];
  const words: CloudWord[] = [];
  for (const [term, weight] of terms) {
    const fontSize = scale(weight);
    const w = term.length * fontSize * GLYPH_ASPECT;
    const h = fontSize * 1.1;
    const theta0 = rand() * 2 * Math.PI;
    let x = 0;
    let y = 0;
    for (let step = 0; step < 2000; step += 1) {
      const theta = theta0 + step * 0.35;
      const radius = step * 1.4;
      x = radius * Math.cos(theta);
      y = radius * Math.sin(theta);
      const box = { x: x - w / 2, y: y - h / 2, w, h };
      if (!placed.some((other) => overlaps(box, other))) {
        placed.push(box);
        break;
      }
    }
    words.push({ term, fontSize, x, y });
  }
  return words;
}

/** Render a theme's terms seeded by its id; colors use the theme color. */
export function renderCloud(themeId: number,
                            terms: ReadonlyArray<[string, number]>,
                            color: string): SVGSVGElement {
  const words = layoutCloud(terms, themeId);
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.classList.add('word-cloud');
  let extent = 40;
  for (const word of words) {
    const halfW = (word.term.length * word.fontSize * GLYPH_ASPECT) / 2;
    extent = Math.max(extent, Math.abs(word.x) + halfW,
                      Math.abs(word.y) + word.fontSize);
  }
  svg.setAttribute('viewBox',
                   `${-extent} ${-extent} ${2 * extent} ${2 * extent}`);
  for (const word of words) {
    const text = document.createElementNS(SVG_NS, 'text');
    text.classList.add('cloud-word');
    text.textContent = word.term;
    text.setAttribute('x', word.x.toFixed(2));
    text.setAttribute('y', word.y.toFixed(2));
    text.setAttribute('font-size', word.fontSize.toFixed(2));
    text.setAttribute('fill', color);
    text.setAttribute('text-anchor', 'middle');
    svg.appendChild(text);
  }
  return svg;
}
