"""Deterministic cluster color assignment.

Base palette follows Okabe-Ito plus a few Paul Tol picks, chosen to stay
readable under common color-vision deficiencies.  When a map needs more
colors than the base palette, entries cycle with a lightness shift per
round, and any residual collision is nudged until every color is unique.
"""

from __future__ import annotations

import colorsys

from .errors import ConfigError

BASE_PALETTE: tuple[str, ...] = (
    "#E69F00", "#56B4E9", "#009E73", "#F0E442", "#0072B2", "#D55E00",
    "#CC79A7", "#999999", "#332288", "#117733", "#882255", "#88CCEE",
)

# Lightness offsets applied per cycle through the base palette.
_ROUND_SHIFTS = (0.0, 0.18, -0.18, 0.32, -0.30, 0.40)


def _hex_to_hls(color: str) -> tuple[float, float, float]:
    r = int(color[1:3], 16) / 255.0
    g = int(color[3:5], 16) / 255.0
    b = int(color[5:7], 16) / 255.0
    return colorsys.rgb_to_hls(r, g, b)


def _hls_to_hex(h: float, l: float, s: float) -> str:
    r, g, b = colorsys.hls_to_rgb(h, l, s)
    return "#{:02X}{:02X}{:02X}".format(
        round(r * 255), round(g * 255), round(b * 255))


def _shift_lightness(color: str, delta: float) -> str:
    h, l, s = _hex_to_hls(color)
    l = min(0.92, max(0.08, l + delta))
    return _hls_to_hex(h, l, s)


def _nudge(color: str) -> str:
    # Wraps within [0.08, 0.92] so repeated nudges always move.
    h, l, s = _hex_to_hls(color)
    l += 0.013
    if l > 0.92:
        l -= 0.84
    return _hls_to_hex(h, l, s)


def palette(n: int) -> tuple[str, ...]:
    """n pairwise-distinct colors; same n always yields the same tuple."""
    if n < 1:
        raise ConfigError(f"palette size must be >= 1, got {n}")
    out: list[str] = []
    used: set[str] = set()
    for i in range(n):
        base = BASE_PALETTE[i % len(BASE_PALETTE)]
        cycle = i // len(BASE_PALETTE)
        shift = _ROUND_SHIFTS[cycle % len(_ROUND_SHIFTS)]
        if cycle >= len(_ROUND_SHIFTS):
            shift += 0.05 * (cycle // len(_ROUND_SHIFTS))
        color = _shift_lightness(base, shift)
        attempts = 0
        while color in used:
            color = _nudge(color)
            attempts += 1
            if attempts > 1000:
                raise ConfigError(f"cannot produce {n} distinct colors")
        used.add(color)
        out.append(color)
    return tuple(out)
