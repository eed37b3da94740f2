"""Confidence-distribution plots as standalone SVG or plain-text art.

The curve spans ``center +/- 4 * scale``; the region where the hypothesis
holds is shaded and the title carries the confidence level computed by
:func:`conflevel.inference.confidence_level`, rounded for display only.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

import numpy as np

from .errors import DomainError
from .inference import confidence_level, format_percent
from .model import Between, ConfidenceDistribution, GreaterThan, Hypothesis, LessThan

__all__ = ["render_confidence_plot", "plot_title", "ASCII_WIDTH"]

SVG_NS = "http://www.w3.org/2000/svg"
ASCII_WIDTH = 80
_SPAN = 4.0
_N_POINTS = 401  # odd, so the centre is a sample point


def plot_title(cd: ConfidenceDistribution, shaded: Hypothesis, decimals: int = 1) -> str:
    conf = confidence_level(cd, shaded).confidence
    return f"confidence ({shaded}) = {format_percent(conf, decimals)}"


def _curve(cd):
    u = np.linspace(-_SPAN, _SPAN, _N_POINTS)
    xs = cd.center + cd.scale * u
    ys = np.array([cd.family.pdf(v) for v in u]) / cd.scale
    return xs, ys


def _shaded_spans(h, lo, hi):
    if isinstance(h, GreaterThan):
        a, b = h.threshold, hi
    elif isinstance(h, LessThan):
        a, b = lo, h.threshold
    elif isinstance(h, Between):
        a, b = h.lo, h.hi
    else:
        raise TypeError(f"unsupported hypothesis: {h!r}")
    a, b = max(a, lo), min(b, hi)
    return [(a, b)] if a < b else []


def _thresholds(h):
    return (h.lo, h.hi) if isinstance(h, Between) else (h.threshold,)


def _nice_ticks(lo, hi, target=7):
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    return [first + k * step for k in range(int((hi - first) / step + 1e-9) + 1)]


def _fmt(v):
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _svg(cd, shaded, decimals, width, height):
    ml, mr, mt, mb = 50.0, 20.0, 40.0, 45.0
    pw, ph = width - ml - mr, height - mt - mb
    xs, ys = _curve(cd)
    lo, hi = xs[0], xs[-1]
    ymax = 1.1 * float(ys.max())

    def px(x):
        return ml + (x - lo) / (hi - lo) * pw

    def py(y):
        return mt + ph - y / ymax * ph

    def path(points):
        return "M " + " L ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in points) + " Z"

    svg = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    title = plot_title(cd, shaded, decimals)
    ET.SubElement(svg, "title").text = title
    ET.SubElement(svg, "rect", width=str(width), height=str(height), fill="white")

    baseline = [(lo, 0.0), *zip(xs, ys), (hi, 0.0)]
    ET.SubElement(svg, "path", {"class": "area", "d": path(baseline), "fill": "#e4e8f0", "stroke": "none"})
    for a, b in _shaded_spans(shaded, lo, hi):
        inside = (xs > a) & (xs < b)
        pts = [(a, 0.0), (a, cd.pdf(a)), *zip(xs[inside], ys[inside]), (b, cd.pdf(b)), (b, 0.0)]
        ET.SubElement(
            svg, "path", {"class": "shaded", "d": path(pts), "fill": "#4a7ab5", "fill-opacity": "0.75"}
        )
    ET.SubElement(
        svg,
        "polyline",
        {
            "class": "density",
            "points": " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys)),
            "fill": "none",
            "stroke": "#1f2d3d",
            "stroke-width": "1.5",
        },
    )
    y0 = _fmt(py(0.0))
    ET.SubElement(svg, "line", {"class": "axis", "x1": _fmt(ml), "y1": y0, "x2": _fmt(ml + pw), "y2": y0, "stroke": "black"})
    for t in _nice_ticks(lo, hi):
        x = _fmt(px(t))
        ET.SubElement(svg, "line", x1=x, y1=y0, x2=x, y2=_fmt(py(0.0) + 5), stroke="black")
        ET.SubElement(svg, "text", {"x": x, "y": _fmt(py(0.0) + 18), "text-anchor": "middle", "font-size": "11"}).text = f"{t:g}"
    for c in _thresholds(shaded):
        if lo <= c <= hi:
            x = _fmt(px(c))
            ET.SubElement(
                svg,
                "line",
                {"class": "threshold", "x1": x, "y1": _fmt(mt), "x2": x, "y2": y0, "stroke": "#b03a2e", "stroke-dasharray": "4 3"},
            )
    ET.SubElement(
        svg, "text", {"class": "label", "x": _fmt(ml + pw / 2), "y": "24", "text-anchor": "middle", "font-size": "15"}
    ).text = title
    ET.SubElement(
        svg, "text", {"x": _fmt(ml + pw / 2), "y": _fmt(height - 8), "text-anchor": "middle", "font-size": "11"}
    ).text = f"parameter value ({cd.family}, centre {cd.center:g}, scale {cd.scale:.4g})"
    ET.indent(svg)
    return b'<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="utf-8") + b"\n"


def _ascii(cd, shaded, decimals, rows=16):
    cols = ASCII_WIDTH - 2
    lo, hi = cd.center - _SPAN * cd.scale, cd.center + _SPAN * cd.scale
    centres = lo + (np.arange(cols) + 0.5) * (hi - lo) / cols
    dens = np.array([cd.pdf(x) for x in centres])
    heights = dens / dens.max() * rows
    spans = _shaded_spans(shaded, lo, hi)
    in_h = [any(a <= x <= b for a, b in spans) for x in centres]
    lines = [plot_title(cd, shaded, decimals)[:ASCII_WIDTH], ""]
    for r in range(rows):
        level = rows - r - 0.5
        lines.append(
            "  " + "".join(("#" if in_h[j] else ":") if heights[j] >= level else " " for j in range(cols))
        )
    axis = ["-"] * cols
    for c in _thresholds(shaded):
        if lo <= c <= hi:
            axis[min(cols - 1, int((c - lo) / (hi - lo) * cols))] = "|"
    lines.append("  " + "".join(axis))
    left, mid, right = f"{lo:.3g}", f"{cd.center:.3g}", f"{hi:.3g}"
    ticks = [" "] * cols
    for text, pos in ((left, 0), (mid, cols // 2 - len(mid) // 2), (right, cols - len(right))):
        ticks[pos : pos + len(text)] = text
    lines.append("  " + "".join(ticks))
    lines.append(f"  # = region where {shaded}; {cd.family}, centre {cd.center:g}, scale {cd.scale:.4g}"[:ASCII_WIDTH])
    return ("\n".join(line.rstrip() for line in lines) + "\n").encode("utf-8")


def render_confidence_plot(
    cd: ConfidenceDistribution,
    shaded: Hypothesis,
    format: str = "svg",
    decimals: int = 1,
    width: int = 640,
    height: int = 360,
) -> bytes:
    """Draw the confidence distribution with the ``shaded`` region filled.

    ``format`` is ``"svg"`` (SVG 1.1 document) or ``"ascii"`` (at most 80
    columns per line).
    """
    fmt = format.lower()
    if fmt == "svg":
        return _svg(cd, shaded, decimals, width, height)
    if fmt == "ascii":
        return _ascii(cd, shaded, decimals)
    raise DomainError(f"unknown plot format {format!r}; expected svg or ascii")
