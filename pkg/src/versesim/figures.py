"""Deterministic SVG bar charts of group means with 95% CI error bars.

The SVG is assembled by string templating, so identical inputs always
produce identical bytes.
"""

import math
from dataclasses import dataclass

_WIDTH = 640
_HEIGHT = 400
_MARGIN_LEFT = 72
_MARGIN_RIGHT = 24
_MARGIN_TOP = 48
_MARGIN_BOTTOM = 64
_BAR_FILL = "#4878a8"


@dataclass(frozen=True)
class FigureData:
    labels: tuple
    means: tuple
    ci_half_widths: tuple
    caption: str

    def __post_init__(self):
        if not (len(self.labels) == len(self.means) == len(self.ci_half_widths)):
            raise ValueError("labels, means and CI arrays must have equal length")
        if len(self.labels) == 0:
            raise ValueError("figure needs at least one group")
        for v in list(self.means) + list(self.ci_half_widths):
            if not math.isfinite(v):
                raise ValueError("figure data contains non-finite values")
        if any(c < 0 for c in self.ci_half_widths):
            raise ValueError("CI half-widths must be non-negative")


def confidence_half_width(sd, n, z=1.96):
    """Normal-approximation 95% CI half-width, 1.96 * sd / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return z * sd / math.sqrt(n)


def _nice_ticks(lo, hi, target=5):
    span = hi - lo
    if span <= 0:
        span = abs(hi) if hi != 0 else 1.0
        lo, hi = hi - span / 2, hi + span / 2
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * max(1.0, abs(hi)):
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def emit_bar_svg(figure, path):
    """Write ``figure`` as a static bar chart with error bars."""
    k = len(figure.labels)
    lows = [m - c for m, c in zip(figure.means, figure.ci_half_widths)]
    highs = [m + c for m, c in zip(figure.means, figure.ci_half_widths)]
    y_min = min(0.0, min(lows))
    y_max = max(0.0, max(highs))
    if y_max == y_min:
        y_max = y_min + 1.0
    pad = 0.08 * (y_max - y_min)
    y_min = y_min - (pad if y_min < 0 else 0.0)
    y_max = y_max + pad

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def y_px(v):
        return _MARGIN_TOP + plot_h * (y_max - v) / (y_max - y_min)

    slot = plot_w / k
    bar_w = slot * 0.6

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d" font-family="sans-serif">' % (_WIDTH, _HEIGHT, _WIDTH, _HEIGHT),
        '<rect width="%d" height="%d" fill="white"/>' % (_WIDTH, _HEIGHT),
        '<text x="%.2f" y="24" font-size="15" text-anchor="middle">%s</text>'
        % (_WIDTH / 2, _escape(figure.caption)),
    ]

    for t in _nice_ticks(y_min, y_max):
        y = y_px(t)
        parts.append(
            '<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="#cccccc" stroke-width="1"/>'
            % (_MARGIN_LEFT, y, _WIDTH - _MARGIN_RIGHT, y)
        )
        parts.append(
            '<text x="%d" y="%.2f" font-size="11" text-anchor="end">%s</text>'
            % (_MARGIN_LEFT - 6, y + 4, "%.3g" % t)
        )

    zero_y = y_px(max(y_min, min(0.0, y_max)))
    for i, (label, mean, ci) in enumerate(
        zip(figure.labels, figure.means, figure.ci_half_widths)
    ):
        cx = _MARGIN_LEFT + slot * (i + 0.5)
        x0 = cx - bar_w / 2
        top = y_px(max(mean, 0.0))
        bottom = y_px(min(mean, 0.0))
        parts.append(
            '<rect x="%.2f" y="%.2f" width="%.2f" height="%.2f" fill="%s"/>'
            % (x0, top, bar_w, max(bottom - top, 0.5), _BAR_FILL)
        )
        if ci > 0:
            y_hi, y_lo = y_px(mean + ci), y_px(mean - ci)
            cap = bar_w * 0.25
            parts.append(
                '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="black" stroke-width="1.5"/>'
                % (cx, y_hi, cx, y_lo)
            )
            for y in (y_hi, y_lo):
                parts.append(
                    '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="black" stroke-width="1.5"/>'
                    % (cx - cap, y, cx + cap, y)
                )
        parts.append(
            '<text x="%.2f" y="%d" font-size="12" text-anchor="middle">%s</text>'
            % (cx, _HEIGHT - _MARGIN_BOTTOM + 20, _escape(label))
        )

    parts.append(
        '<line x1="%d" y1="%.2f" x2="%d" y2="%.2f" stroke="black" stroke-width="1"/>'
        % (_MARGIN_LEFT, zero_y, _WIDTH - _MARGIN_RIGHT, zero_y)
    )
    parts.append(
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black" stroke-width="1"/>'
        % (_MARGIN_LEFT, _MARGIN_TOP, _MARGIN_LEFT, _HEIGHT - _MARGIN_BOTTOM)
    )
    parts.append(
        '<text x="18" y="%.2f" font-size="12" text-anchor="middle" '
        'transform="rotate(-90 18 %.2f)">mean cosine similarity</text>'
        % (_HEIGHT / 2, _HEIGHT / 2)
    )
    parts.append("</svg>")

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")


def _escape(text):
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
