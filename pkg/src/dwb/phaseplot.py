"""Static SVG phase plots: trajectory plus the zero set of the specialized curve.

Pure emitter, stdlib only.  The viewport is the trajectory bounding box padded
by 10%; the curve is sampled as y = -c(x)/S(x) over the viewport's x range,
split into polyline segments wherever S(x) gets close to zero.
"""

from __future__ import annotations

from .curves import InvariantCurve
from .dynamics import SINGULARITY_GUARD, Trajectory, _split_curve, _exact

WIDTH = 640
HEIGHT = 480
CURVE_SAMPLES = 512


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _polyline(points: list[tuple[float, float]], style: str) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polyline fill="none" {style} points="{pts}" />'


def curve_polylines(
    curve: InvariantCurve, b0, x_lo: float, x_hi: float
) -> list[list[tuple[float, float]]]:
    """Sampled branches of {F = 0} over [x_lo, x_hi] in the (x, y) plane."""
    s_poly, c_poly = _split_curve(curve, _exact(b0))
    segments: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    for k in range(CURVE_SAMPLES + 1):
        x = x_lo + (x_hi - x_lo) * k / CURVE_SAMPLES
        s = s_poly.eval_float(x, 0.0)
        if abs(s) <= SINGULARITY_GUARD:
            if len(current) > 1:
                segments.append(current)
            current = []
            continue
        current.append((x, -c_poly.eval_float(x, 0.0) / s))
    if len(current) > 1:
        segments.append(current)
    return segments


def write_phase_plot(path, traj: Trajectory, curve: InvariantCurve, b0) -> None:
    """Trajectory (solid) and curve zero set (dashed) in one SVG file."""
    xs = [x for x, _ in traj.states]
    ys = [y for _, y in traj.states]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    pad_x = 0.1 * (x_hi - x_lo) or 0.1
    pad_y = 0.1 * (y_hi - y_lo) or 0.1
    x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    def to_px(p: tuple[float, float]) -> tuple[float, float]:
        x, y = p
        px = (x - x_lo) / (x_hi - x_lo) * WIDTH
        py = HEIGHT - (y - y_lo) / (y_hi - y_lo) * HEIGHT
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white" />',
    ]
    curve_style = 'stroke="#888888" stroke-width="1" stroke-dasharray="6,4"'

    def flush(run: list[tuple[float, float]]) -> None:
        if len(run) > 1:
            parts.append(_polyline([to_px(q) for q in run], curve_style))

    for segment in curve_polylines(curve, b0, x_lo, x_hi):
        run: list[tuple[float, float]] = []
        for p in segment:
            if y_lo <= p[1] <= y_hi:
                run.append(p)
            else:
                flush(run)
                run = []
        flush(run)
    parts.append(
        _polyline([to_px(p) for p in traj.states], 'stroke="#c02020" stroke-width="1.5"')
    )
    sx, sy = to_px(traj.states[0])
    parts.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3" fill="#c02020" />')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(parts) + "\n")


__all__ = ["curve_polylines", "write_phase_plot"]
