// Axial-coordinate hexagon geometry and the SVG theme map.
//
// Pointy-top orientation: a cell at axial (q, r) sits at
// x = size * sqrt(3) * (q + r / 2), y = size * 1.5 * r.

import type { MapPayload, ThemeRecord } from './types';

export const HEX_SIZE = 24;
const SQRT3 = Math.sqrt(3);
const SVG_NS = 'http://www.w3.org/2000/svg';

export function hexCenter(q: number, r: number,
                          size: number = HEX_SIZE): { x: number; y: number } {
  return { x: size * SQRT3 * (q + r / 2), y: size * 1.5 * r };
}

export function hexPoints(cx: number, cy: number,
                          size: number = HEX_SIZE): string {
  const corners: string[] = [];
  for (let i = 0; i < 6; i += 1) {
    const angle = (Math.PI / 180) * (60 * i - 30);
    const x = cx + size * Math.cos(angle);
    const y = cy + size * Math.sin(angle);
    corners.push(`${x.toFixed(2)},${y.toFixed(2)}`);
  }
  return corners.join(' ');
}

export interface MapHandlers {
  onSelect?: (theme: ThemeRecord) => void;
  onHover?: (theme: ThemeRecord | null) => void;
}

/** One polygon per theme, colored by its cluster; cells carry data-theme
 * and data-cluster so views can cross-highlight. */
export function renderMap(payload: MapPayload,
                          handlers: MapHandlers = {},
                          size: number = HEX_SIZE): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.classList.add('theme-map');
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const theme of payload.themes) {
    const { x, y } = hexCenter(theme.q, theme.r, size);
    minX = Math.min(minX, x - size * SQRT3 / 2);
    maxX = Math.max(maxX, x + size * SQRT3 / 2);
    minY = Math.min(minY, y - size);
    maxY = Math.max(maxY, y + size);

    const cell = document.createElementNS(SVG_NS, 'polygon');
    cell.classList.add('hex');
    cell.setAttribute('points', hexPoints(x, y, size));
    cell.setAttribute('fill', theme.color);
    cell.dataset.theme = String(theme.theme_id);
    cell.dataset.cluster = String(theme.cluster);
    const tooltip = document.createElementNS(SVG_NS, 'title');
    tooltip.textContent = `#${theme.theme_id} ${theme.label}`;
    cell.appendChild(tooltip);

    cell.addEventListener('click', () => handlers.onSelect?.(theme));
    cell.addEventListener('mouseenter', () => handlers.onHover?.(theme));
    cell.addEventListener('mouseleave', () => handlers.onHover?.(null));
    svg.appendChild(cell);
  }
  const pad = size;
  svg.setAttribute(
    'viewBox',
    `${minX - pad} ${minY - pad} ${maxX - minX + 2 * pad} ${maxY - minY + 2 * pad}`);
  return svg;
}

/** Toggle the cluster-highlight class on every cell of a cluster. */
export function highlightCluster(svg: SVGSVGElement, cluster: number | null):
    void {
  svg.querySelectorAll<SVGPolygonElement>('.hex').forEach((cell) => {
    const on = cluster !== null && cell.dataset.cluster === String(cluster);
    cell.classList.toggle('cluster-highlight', on);
  });
}

/** Toggle the theme-highlight class on one theme's cell. */
export function highlightTheme(svg: SVGSVGElement, themeId: number | null):
    void {
  svg.querySelectorAll<SVGPolygonElement>('.hex').forEach((cell) => {
    const on = themeId !== null && cell.dataset.theme === String(themeId);
    cell.classList.toggle('theme-highlight', on);
  });
}
