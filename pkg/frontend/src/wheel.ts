// Theme wheels: an annulus split into equal arcs, one per text chunk,
// clockwise from twelve o'clock in reading order.

import type { WheelPayload, WheelSegment } from './types';

export const NEUTRAL_COLOR = '#e2e2e2';
export const TRACE_OPACITY = '0.35';
const SVG_NS = 'http://www.w3.org/2000/svg';

function polar(cx: number, cy: number, radius: number,
               angleDeg: number): { x: number; y: number } {
  // Degrees clockwise from twelve o'clock; SVG y grows downward.
  const rad = ((angleDeg - 90) * Math.PI) / 180;
  return { x: cx + radius * Math.cos(rad), y: cy + radius * Math.sin(rad) };
}

function fmt(value: number): string {
  return value.toFixed(3);
}

export function annulusSegmentPath(cx: number, cy: number,
                                   rInner: number, rOuter: number,
                                   startDeg: number, endDeg: number): string {
  // A single arc command cannot span the full circle.
  const end = endDeg - startDeg >= 360 ? startDeg + 359.99 : endDeg;
  const largeArc = end - startDeg > 180 ? 1 : 0;
  const o0 = polar(cx, cy, rOuter, startDeg);
  const o1 = polar(cx, cy, rOuter, end);
  const i0 = polar(cx, cy, rInner, startDeg);
  const i1 = polar(cx, cy, rInner, end);
  return [
    `M ${fmt(o0.x)} ${fmt(o0.y)}`,
    `A ${fmt(rOuter)} ${fmt(rOuter)} 0 ${largeArc} 1 ${fmt(o1.x)} ${fmt(o1.y)}`,
    `L ${fmt(i1.x)} ${fmt(i1.y)}`,
    `A ${fmt(rInner)} ${fmt(rInner)} 0 ${largeArc} 0 ${fmt(i0.x)} ${fmt(i0.y)}`,
    'Z',
  ].join(' ');
}

export interface WheelHandlers {
  onSegmentClick?: (segment: WheelSegment) => void;
  onSegmentHover?: (segment: WheelSegment | null) => void;
}

export interface WheelOptions {
  size?: number;
  handlers?: WheelHandlers;
  /** Chunk indexes to draw with the to-read marker. */
  marked?: ReadonlySet<number>;
}

/** Render a wheel payload as an SVG annulus. Segment fills come straight
 * from the payload so colors match the theme map exactly. */
export function renderWheel(payload: WheelPayload,
                            options: WheelOptions = {}): SVGSVGElement {
  const size = options.size ?? 72;
  const rOuter = size / 2 - 1;
  const rInner = rOuter * 0.45;
  const cx = size / 2;
  const cy = size / 2;

  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.classList.add('theme-wheel', `wheel-${payload.variant}`);
  svg.setAttribute('viewBox', `0 0 ${size} ${size}`);
  svg.dataset.doc = payload.doc_id;

  const n = payload.segments.length;
  const span = n > 0 ? 360 / n : 0;
  payload.segments.forEach((segment, position) => {
    const path = document.createElementNS(SVG_NS, 'path');
    path.classList.add('wheel-segment');
    path.setAttribute(
      'd', annulusSegmentPath(cx, cy, rInner, rOuter,
                              position * span, (position + 1) * span));
    path.setAttribute('fill', segment.color ?? NEUTRAL_COLOR);
    if (segment.trace_only) path.setAttribute('opacity', TRACE_OPACITY);
    path.dataset.chunk = String(segment.chunk_index);
    path.dataset.theme = String(segment.theme_id);
    if (options.marked?.has(segment.chunk_index)) {
      path.classList.add('marked');
    }
    const handlers = options.handlers ?? {};
    path.addEventListener('click', () => handlers.onSegmentClick?.(segment));
    path.addEventListener('mouseenter',
                          () => handlers.onSegmentHover?.(segment));
    path.addEventListener('mouseleave', () => handlers.onSegmentHover?.(null));
    svg.appendChild(path);
  });
  return svg;
}

/** Toggle the theme-highlight class on every segment of a theme. */
export function highlightWheelTheme(root: ParentNode, themeId: number | null):
    void {
  root.querySelectorAll<SVGPathElement>('.wheel-segment').forEach((seg) => {
    const on = themeId !== null && seg.dataset.theme === String(themeId);
    seg.classList.toggle('theme-highlight', on);
  });
}
