// Color consistency across views: a theme's hex on a map and every wheel
// segment for that theme must carry exactly the same color string.

import { describe, expect, it } from 'vitest';

import { renderMap } from '../src/hex';
import type { WheelPayload } from '../src/types';
import { NEUTRAL_COLOR, renderWheel } from '../src/wheel';
import { loadFixtures } from './mockServer';

const fixtures = loadFixtures();

function hexFills(svg: SVGSVGElement): Map<string, string> {
  const fills = new Map<string, string>();
  svg.querySelectorAll<SVGPolygonElement>('.hex').forEach((cell) => {
    fills.set(cell.dataset.theme!, cell.getAttribute('fill')!);
  });
  return fills;
}

function expectWheelMatchesMap(wheel: WheelPayload,
                               fills: Map<string, string>): number {
  let matched = 0;
  const svg = renderWheel(wheel);
  svg.querySelectorAll<SVGPathElement>('.wheel-segment').forEach((seg) => {
    const fill = seg.getAttribute('fill')!;
    const mapFill = fills.get(seg.dataset.theme!);
    if (fill === NEUTRAL_COLOR) {
      // Null-colored chunks belong to themes outside this map.
      expect(mapFill).toBeUndefined();
      return;
    }
    expect(mapFill).toBe(fill);
    matched += 1;
  });
  return matched;
}

describe('map colors', () => {
  it('fills every hex with its cluster color from the payload', () => {
    const payload = fixtures.themes.payload;
    const svg = renderMap(payload);
    const fills = hexFills(svg);
    const clusterColor = new Map(
      payload.clusters.map((c) => [c.cluster_id, c.color]));
    expect(fills.size).toBe(payload.themes.length);
    for (const theme of payload.themes) {
      expect(fills.get(String(theme.theme_id))).toBe(theme.color);
      expect(theme.color).toBe(clusterColor.get(theme.cluster));
    }
  });
});

describe('color consistency across views', () => {
  it('matches single-theme wheels against the main map exactly', () => {
    const fills = hexFills(renderMap(fixtures.themes.payload));
    const detail = fixtures.themeDetails[String(fixtures.e2e.theme_id)];
    let matched = 0;
    for (const paper of detail.papers) {
      matched += expectWheelMatchesMap(paper.wheel, fills);
    }
    expect(matched).toBeGreaterThan(0);
  });

  it('matches reading-view wheels against the excerpt map exactly', () => {
    const { excerpt, wheels } = fixtures.e2e.excerpt;
    const fills = hexFills(renderMap(excerpt));
    expect(wheels).toHaveLength(fixtures.e2e.selection.length);
    let matched = 0;
    for (const wheel of wheels) {
      matched += expectWheelMatchesMap(wheel, fills);
    }
    expect(matched).toBeGreaterThan(0);
  });

  it('keeps excerpt witnesses inside the recorded selection', () => {
    const { excerpt } = fixtures.e2e.excerpt;
    const selection = new Set(fixtures.e2e.selection);
    expect(excerpt.provenance.length).toBe(excerpt.themes.length);
    for (const provenance of excerpt.provenance) {
      expect(provenance.witnesses.length).toBeGreaterThan(0);
      for (const [docId] of provenance.witnesses) {
        expect(selection.has(docId)).toBe(true);
      }
    }
  });
});
