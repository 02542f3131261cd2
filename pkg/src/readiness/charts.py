"""Chart specifications and a small self-contained SVG renderer.

Metric modules describe what to draw as a :class:`ChartSpec` (validated on
construction); rendering turns a spec into a standalone SVG string with no
third-party plotting dependency.  Supported kinds: bar, pie, heatmap, box,
scatter, histogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .summary import quantile

PALETTE = (
    "#4878a8", "#e49444", "#5ba053", "#d1605e", "#85b6b2",
    "#e7ca60", "#a87c9f", "#967662", "#b8b0ac", "#6f9fd8",
)

_KINDS = ("bar", "pie", "heatmap", "box", "scatter", "histogram")


class ChartError(ValueError):
    """Raised when a chart specification is inconsistent."""


@dataclass(frozen=True)
class Series:
    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass(frozen=True)
class ChartSpec:
    kind: str
    title: str
    labels: tuple[str, ...] = ()
    series: tuple[Series, ...] = ()
    x_label: str = ""
    y_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(v) for v in self.labels))
        object.__setattr__(self, "series", tuple(self.series))
        if self.kind not in _KINDS:
            raise ChartError(f"unknown chart kind {self.kind!r}")
        if not self.series:
            raise ChartError("a chart needs at least one series")
        check = getattr(self, f"_check_{self.kind}")
        check()

    def _check_bar(self) -> None:
        for s in self.series:
            if len(s.values) != len(self.labels):
                raise ChartError(
                    f"bar series {s.name!r} has {len(s.values)} values for "
                    f"{len(self.labels)} labels"
                )

    def _check_histogram(self) -> None:
        if len(self.series) != 1:
            raise ChartError("a histogram takes exactly one series")
        self._check_bar()

    def _check_pie(self) -> None:
        if len(self.series) != 1:
            raise ChartError("a pie takes exactly one series")
        vals = self.series[0].values
        if len(vals) != len(self.labels):
            raise ChartError("pie values and labels disagree in length")
        if any(v < 0 or not math.isfinite(v) for v in vals):
            raise ChartError("pie values must be finite and non-negative")
        if sum(vals) <= 0:
            raise ChartError("pie values must not all be zero")

    def _check_heatmap(self) -> None:
        for s in self.series:
            if len(s.values) != len(self.labels):
                raise ChartError("heatmap rows must match the column labels")

    def _check_box(self) -> None:
        if len(self.labels) != len(self.series):
            raise ChartError("box charts need one label per box")
        for s in self.series:
            if len(s.values) != 5:
                raise ChartError(f"box {s.name!r} needs (min, q1, median, q3, max)")
            v = s.values
            if any(v[i] > v[i + 1] for i in range(4)):
                raise ChartError(f"box {s.name!r} summary is not sorted")

    def _check_scatter(self) -> None:
        if len(self.series) != 2:
            raise ChartError("a scatter takes exactly two series (x then y)")
        if len(self.series[0].values) != len(self.series[1].values):
            raise ChartError("scatter x and y series differ in length")


def pie_angles(values) -> list[tuple[float, float]]:
    """Sector (start, end) angles in degrees, clockwise from 12 o'clock."""
    vals = [float(v) for v in values]
    total = sum(vals)
    if total <= 0:
        raise ChartError("pie values must not all be zero")
    out = []
    acc = 0.0
    for v in vals:
        start = acc / total * 360.0
        acc += v
        out.append((start, acc / total * 360.0))
    return out


def _lerp_channel(a: int, b: int, t: float) -> int:
    return int(round(a + (b - a) * t))


def _hex_to_rgb(h: str) -> tuple[int, int, int]:
    return int(h[1:3], 16), int(h[3:5], 16), int(h[5:7], 16)


def blend(low: str, high: str, t: float) -> str:
    """Linear blend between two hex colors, t in [0, 1]."""
    t = min(1.0, max(0.0, t))
    la, lb = _hex_to_rgb(low), _hex_to_rgb(high)
    return "#{:02x}{:02x}{:02x}".format(
        *(_lerp_channel(a, b, t) for a, b in zip(la, lb))
    )


class _Svg:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: list[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        ]

    def rect(self, x, y, w, h, fill, stroke="none"):
        self.parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def line(self, x1, y1, x2, y2, stroke="#444444", width=1.0):
        self.parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def circle(self, cx, cy, r, fill):
        self.parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="{fill}"/>')

    def path(self, d, fill, stroke="#ffffff"):
        self.parts.append(f'<path d="{d}" fill="{fill}" stroke="{stroke}"/>')

    def text(self, x, y, content, size=11, anchor="start", color="#222222", rotate=None):
        transform = f' transform="rotate({rotate:.0f} {x:.2f} {y:.2f})"' if rotate else ""
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}" '
            f'fill="{color}"{transform}>{escape(str(content))}</text>'
        )

    def to_string(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


_W, _H = 640, 420
_MARGIN = dict(left=70, right=20, top=46, bottom=72)


def _plot_rect():
    x0 = _MARGIN["left"]
    y0 = _MARGIN["top"]
    return x0, y0, _W - _MARGIN["right"] - x0, _H - _MARGIN["bottom"] - y0


def _value_span(values) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    lo = min(0.0, min(finite)) if finite else 0.0
    hi = max(0.0, max(finite)) if finite else 1.0
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def _frame(svg: _Svg, spec: ChartSpec) -> None:
    svg.text(_W / 2, 24, spec.title, size=14, anchor="middle")
    if spec.x_label:
        svg.text(_W / 2, _H - 10, spec.x_label, anchor="middle")
    if spec.y_label:
        svg.text(16, _H / 2, spec.y_label, anchor="middle", rotate=-90)


def _y_axis(svg: _Svg, lo: float, hi: float) -> None:
    x0, y0, w, h = _plot_rect()
    svg.line(x0, y0, x0, y0 + h)
    for i in range(5):
        t = i / 4
        v = lo + (hi - lo) * (1 - t)
        y = y0 + h * t
        svg.line(x0 - 4, y, x0, y)
        svg.text(x0 - 8, y + 4, f"{v:.3g}", size=10, anchor="end")


def _render_bar(svg: _Svg, spec: ChartSpec, touching: bool = False) -> None:
    x0, y0, w, h = _plot_rect()
    all_vals = [v for s in spec.series for v in s.values]
    lo, hi = _value_span(all_vals)
    _y_axis(svg, lo, hi)
    svg.line(x0, y0 + h, x0 + w, y0 + h)
    n = len(spec.labels)
    ns = len(spec.series)
    slot = w / max(n, 1)
    pad = 0.0 if touching else slot * 0.15
    bar_w = (slot - 2 * pad) / ns
    zero_y = y0 + h * (hi / (hi - lo))
    for si, s in enumerate(spec.series):
        for i, v in enumerate(s.values):
            if not math.isfinite(v):
                continue
            x = x0 + i * slot + pad + si * bar_w
            vy = y0 + h * ((hi - v) / (hi - lo))
            top = min(vy, zero_y)
            svg.rect(x, top, bar_w, abs(vy - zero_y), PALETTE[si % len(PALETTE)])
    rotate = -35 if n > 6 else None
    for i, label in enumerate(spec.labels):
        x = x0 + (i + 0.5) * slot
        anchor = "end" if rotate else "middle"
        svg.text(x, y0 + h + 16, _shorten(label), size=10, anchor=anchor, rotate=rotate)
    if ns > 1:
        for si, s in enumerate(spec.series):
            lx = x0 + w - 110
            ly = y0 + 14 * si + 4
            svg.rect(lx, ly - 8, 10, 10, PALETTE[si % len(PALETTE)])
            svg.text(lx + 14, ly, _shorten(s.name), size=10)


def _shorten(label: str, limit: int = 18) -> str:
    return label if len(label) <= limit else label[: limit - 1] + "…"


def _render_pie(svg: _Svg, spec: ChartSpec) -> None:
    vals = spec.series[0].values
    cx, cy, r = _W * 0.38, (_H + 30) / 2, min(_W, _H) * 0.3
    angles = pie_angles(vals)
    total = sum(vals)
    for i, ((start, end), label) in enumerate(zip(angles, spec.labels)):
        color = PALETTE[i % len(PALETTE)]
        sweep = end - start
        if sweep <= 0:
            continue
        if sweep >= 360.0 - 1e-9:
            svg.circle(cx, cy, r, color)
        else:
            a0 = math.radians(start)
            a1 = math.radians(end)
            x1, y1 = cx + r * math.sin(a0), cy - r * math.cos(a0)
            x2, y2 = cx + r * math.sin(a1), cy - r * math.cos(a1)
            large = 1 if sweep > 180 else 0
            svg.path(
                f"M {cx:.2f} {cy:.2f} L {x1:.2f} {y1:.2f} "
                f"A {r:.2f} {r:.2f} 0 {large} 1 {x2:.2f} {y2:.2f} Z",
                color,
            )
    lx = _W * 0.70
    for i, (label, v) in enumerate(zip(spec.labels, vals)):
        ly = 70 + 16 * i
        svg.rect(lx, ly - 9, 10, 10, PALETTE[i % len(PALETTE)])
        svg.text(lx + 14, ly, f"{_shorten(label)} ({100 * v / total:.1f}%)", size=10)


def _render_heatmap(svg: _Svg, spec: ChartSpec) -> None:
    x0, y0, w, h = _plot_rect()
    cols = len(spec.labels)
    rows = len(spec.series)
    cw, ch = w / cols, h / rows
    finite = [v for s in spec.series for v in s.values if math.isfinite(v)]
    lo = min(finite) if finite else 0.0
    hi = max(finite) if finite else 1.0
    diverging = lo < 0
    for ri, s in enumerate(spec.series):
        for ci, v in enumerate(s.values):
            x, y = x0 + ci * cw, y0 + ri * ch
            if not math.isfinite(v):
                color = "#cccccc"
            elif diverging:
                # diverging map for correlation-style values in [-1, 1]
                if v >= 0:
                    color = blend("#ffffff", "#4878a8", min(v, 1.0))
                else:
                    color = blend("#ffffff", "#c0504d", min(-v, 1.0))
            else:
                span = hi if hi > 0 else 1.0
                color = blend("#ffffff", "#4878a8", v / span)
            svg.rect(x, y, cw, ch, color, stroke="#e0e0e0")
            if cols <= 12:
                dark = math.isfinite(v) and abs(v) > 0.6
                svg.text(
                    x + cw / 2, y + ch / 2 + 3,
                    "" if not math.isfinite(v) else f"{v:.2f}",
                    size=9, anchor="middle",
                    color="#ffffff" if dark else "#222222",
                )
        svg.text(x0 - 6, y0 + (ri + 0.5) * ch + 3, _shorten(s.name, 12), size=9, anchor="end")
    for ci, label in enumerate(spec.labels):
        svg.text(
            x0 + (ci + 0.5) * cw, y0 + h + 14, _shorten(label, 12),
            size=9, anchor="end", rotate=-35,
        )


def _render_box(svg: _Svg, spec: ChartSpec) -> None:
    x0, y0, w, h = _plot_rect()
    all_vals = [v for s in spec.series for v in s.values]
    lo, hi = min(all_vals), max(all_vals)
    if hi == lo:
        hi = lo + 1.0
    pad = (hi - lo) * 0.05
    lo, hi = lo - pad, hi + pad
    _y_axis(svg, lo, hi)

    def sy(v: float) -> float:
        return y0 + h * (hi - v) / (hi - lo)

    n = len(spec.series)
    slot = w / n
    for i, s in enumerate(spec.series):
        mn, q1, med, q3, mx = s.values
        cx = x0 + (i + 0.5) * slot
        bw = slot * 0.4
        color = PALETTE[i % len(PALETTE)]
        svg.line(cx, sy(mn), cx, sy(q1))
        svg.line(cx, sy(q3), cx, sy(mx))
        svg.line(cx - bw / 4, sy(mn), cx + bw / 4, sy(mn))
        svg.line(cx - bw / 4, sy(mx), cx + bw / 4, sy(mx))
        svg.rect(cx - bw / 2, sy(q3), bw, max(sy(q1) - sy(q3), 0.5), color, stroke="#444444")
        svg.line(cx - bw / 2, sy(med), cx + bw / 2, sy(med), stroke="#222222", width=1.5)
        svg.text(cx, y0 + h + 16, _shorten(spec.labels[i]), size=10, anchor="middle")


def _render_scatter(svg: _Svg, spec: ChartSpec) -> None:
    x0, y0, w, h = _plot_rect()
    xs = spec.series[0].values
    ys = spec.series[1].values
    if not xs:
        return
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    _y_axis(svg, y_lo, y_hi)
    svg.line(x0, y0 + h, x0 + w, y0 + h)
    for i in range(5):
        t = i / 4
        v = x_lo + (x_hi - x_lo) * t
        svg.text(x0 + w * t, y0 + h + 16, f"{v:.3g}", size=10, anchor="middle")
    for px, py in zip(xs, ys):
        sx = x0 + w * (px - x_lo) / (x_hi - x_lo)
        sy = y0 + h * (y_hi - py) / (y_hi - y_lo)
        svg.circle(sx, sy, 2.5, PALETTE[0])


def render_svg_string(spec: ChartSpec) -> str:
    """Render a spec to a standalone SVG document string."""
    svg = _Svg(_W, _H)
    _frame(svg, spec)
    if spec.kind == "bar":
        _render_bar(svg, spec)
    elif spec.kind == "histogram":
        _render_bar(svg, spec, touching=True)
    elif spec.kind == "pie":
        _render_pie(svg, spec)
    elif spec.kind == "heatmap":
        _render_heatmap(svg, spec)
    elif spec.kind == "box":
        _render_box(svg, spec)
    elif spec.kind == "scatter":
        _render_scatter(svg, spec)
    return svg.to_string()


def render_svg(spec: ChartSpec, path: str | Path) -> Path:
    """Render a spec and write it to ``path``; returns the path."""
    path = Path(path)
    path.write_text(render_svg_string(spec), encoding="utf-8")
    return path


def five_number_summary(values) -> tuple[float, float, float, float, float]:
    """(min, q1, median, q3, max) with linearly interpolated quartiles.

    NaN entries are treated as missing and skipped.
    """
    arr = np.asarray(values, dtype=np.float64)
    arr = np.sort(arr[~np.isnan(arr)])
    if len(arr) == 0:
        raise ChartError("cannot summarize an empty sequence")
    return (
        float(arr[0]),
        quantile(arr, 0.25),
        quantile(arr, 0.5),
        quantile(arr, 0.75),
        float(arr[-1]),
    )
