"""Flat-file artifacts: CSV tables, JSON documents and static SVG plots."""

import logging
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict

logger = logging.getLogger(__name__)

Column = tuple[str, str]

SVG_WIDTH = 640
SVG_HEIGHT = 400
MARGIN = 48
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


class TableDocument(BaseModel):
    """JSON shape of a CSV table: column headers and rows."""

    model_config = ConfigDict(frozen=True)

    columns: list[str]
    rows: list[list[float]]


def header(columns: Sequence[Column]) -> list[str]:
    """``name[unit]`` labels; dimensionless columns use ``1``."""
    return [f"{name}[{unit or '1'}]" for name, unit in columns]


def _cell(value: float) -> str:
    return format(float(value), ".17g")


def write_csv(path: Path, columns: Sequence[Column], rows: Iterable[Sequence[float]]) -> Path:
    """Write a header row and ``.17g`` values with ``\\n`` line endings."""
    labels = header(columns)
    lines = [",".join(labels)]
    for row in rows:
        if len(row) != len(labels):
            raise ValueError(f"row has {len(row)} values for {len(labels)} columns")
        lines.append(",".join(_cell(v) for v in row))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="")
    logger.debug("wrote %s (%d rows)", path, len(lines) - 1)
    return path


def write_json(path: Path, document: BaseModel) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8", newline="")
    logger.debug("wrote %s", path)
    return path


def write_table(
    out: Path,
    stem: str,
    columns: Sequence[Column],
    rows: Sequence[Sequence[float]],
    formats: Iterable[str],
) -> list[Path]:
    """Emit ``stem.csv`` and/or ``stem.json`` holding the same table."""
    written: list[Path] = []
    for fmt in formats:
        if fmt == "csv":
            written.append(write_csv(out / f"{stem}.csv", columns, rows))
        elif fmt == "json":
            doc = TableDocument(
                columns=header(columns), rows=[[float(v) for v in row] for row in rows]
            )
            written.append(write_json(out / f"{stem}.json", doc))
    return written


# svg -------------------------------------------------------------------------


def _svg(body: list[str], title: str) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">'
    )
    caption = (
        f'<text x="{SVG_WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_escape(title)}</text>'
    )
    return "\n".join([head, caption, *body, "</svg>"]) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _color(fraction: float) -> str:
    """White to dark red."""
    f = min(max(fraction, 0.0), 1.0)
    g = round(255 * (1.0 - f))
    r = round(255 - 100 * f)
    return f"#{r:02x}{g:02x}{g:02x}"


def heatmap_svg(
    path: Path,
    values: ArrayLike,
    x: ArrayLike,
    t: ArrayLike,
    title: str,
    *,
    log_scale: bool = True,
) -> Path:
    """One ``<rect>`` per cell of ``values[i_t, i_x]``; t grows upwards."""
    grid = np.asarray(values, dtype=float)
    xs = np.asarray(x, dtype=float)
    ts = np.asarray(t, dtype=float)
    shade = np.log10(np.maximum(grid, 1e-300)) if log_scale else grid
    finite = shade[np.isfinite(shade)]
    lo = float(np.min(finite)) if finite.size else 0.0
    hi = float(np.max(finite)) if finite.size else 1.0
    span = hi - lo if hi > lo else 1.0
    width = (SVG_WIDTH - 2 * MARGIN) / xs.size
    height = (SVG_HEIGHT - 2 * MARGIN) / ts.size
    body = []
    for i in range(ts.size):
        for j in range(xs.size):
            fraction = (shade[i, j] - lo) / span if math.isfinite(shade[i, j]) else 1.0
            px = MARGIN + j * width
            py = SVG_HEIGHT - MARGIN - (i + 1) * height
            body.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{width:.2f}" height="{height:.2f}" '
                f'fill="{_color(fraction)}"><title>x={xs[j]:.6g} t={ts[i]:.6g} '
                f"value={grid[i, j]:.6g}</title></rect>"
            )
    body.append(
        f'<text x="{MARGIN}" y="{SVG_HEIGHT - MARGIN / 3:.1f}" font-family="sans-serif" '
        f'font-size="11">x in [{xs[0]:.6g}, {xs[-1]:.6g}], t in [{ts[0]:.6g}, {ts[-1]:.6g}]'
        f"{', log10 scale' if log_scale else ''}</text>"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_svg(body, title), encoding="utf-8", newline="")
    return path


def polyline_svg(
    path: Path,
    x: ArrayLike,
    series: dict[str, ArrayLike],
    title: str,
) -> Path:
    """One ``<polyline>`` per named series over a shared x axis."""
    xs = np.asarray(x, dtype=float)
    curves = {name: np.asarray(v, dtype=float) for name, v in series.items()}
    stacked = np.concatenate([c[np.isfinite(c)] for c in curves.values()] or [np.zeros(1)])
    y_lo, y_hi = float(np.min(stacked)), float(np.max(stacked))
    y_span = y_hi - y_lo if y_hi > y_lo else 1.0
    x_span = float(xs[-1] - xs[0]) if xs.size > 1 else 1.0

    def px(v: float) -> float:
        return MARGIN + (v - xs[0]) / x_span * (SVG_WIDTH - 2 * MARGIN)

    def py(v: float) -> float:
        return SVG_HEIGHT - MARGIN - (v - y_lo) / y_span * (SVG_HEIGHT - 2 * MARGIN)

    body = [
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SVG_WIDTH - 2 * MARGIN}" '
        f'height="{SVG_HEIGHT - 2 * MARGIN}" fill="none" stroke="#888"/>'
    ]
    for k, (name, ys) in enumerate(curves.items()):
        color = PALETTE[k % len(PALETTE)]
        points = " ".join(
            f"{px(xv):.2f},{py(yv):.2f}" for xv, yv in zip(xs, ys, strict=True) if math.isfinite(yv)
        )
        body.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        body.append(
            f'<text x="{SVG_WIDTH - MARGIN - 4}" y="{MARGIN + 16 * (k + 1)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{_escape(name)}</text>'
        )
    body.append(
        f'<text x="{MARGIN}" y="{SVG_HEIGHT - MARGIN / 3:.1f}" font-family="sans-serif" '
        f'font-size="11">x in [{xs[0]:.6g}, {xs[-1]:.6g}], y in [{y_lo:.6g}, {y_hi:.6g}]</text>'
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_svg(body, title), encoding="utf-8", newline="")
    return path


__all__ = [
    "TableDocument",
    "header",
    "heatmap_svg",
    "polyline_svg",
    "write_csv",
    "write_json",
    "write_table",
]
