"""Resolution-independent scene graph and deterministic SVG renderer.

A SceneGraph is the single source of truth for an image: an ordered list of
primitives on a canvas, plus a role map ("legend", "hour_hand", ...) pointing
at primitive indices. Rendering is a pure function of the scene graph; the
same scene always produces byte-identical SVG, in any process.

Text extent is not measured from font metrics. It is estimated as
``0.6 * font_size`` per glyph wide and ``1.0 * font_size`` tall
(TEXT_WIDTH_FACTOR / TEXT_HEIGHT_FACTOR), which keeps geometry queries
deterministic and independent of any font stack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .palette import PALETTE, color_css, rgb_css

TEXT_WIDTH_FACTOR = 0.6
TEXT_HEIGHT_FACTOR = 1.0

KINDS = ("line", "polyline", "rectangle", "circle", "arc", "wedge", "text", "polygon")
SHAPE_KINDS = ("line", "polyline", "rectangle", "circle", "arc", "wedge", "polygon")

MIN_CANVAS_SIDE = 64


class InvalidScene(ValueError):
    """Scene violates an invariant; carries the offending primitive indices."""

    def __init__(self, problems: list[tuple[int, str]]):
        self.problems = problems
        detail = "; ".join(f"primitive {i}: {msg}" for i, msg in problems)
        super().__init__(f"invalid scene: {detail}")


class UnknownRole(KeyError):
    pass


class LayoutOverflow(ValueError):
    """Raised by scene builders when labels cannot fit the canvas."""


@dataclass(frozen=True)
class Canvas:
    width: int = 640
    height: int = 480
    background: tuple[int, int, int] = (255, 255, 255)


@dataclass(frozen=True)
class StyleSpec:
    """Drawing style. Colors are palette names (see palette.PALETTE)."""

    stroke: str | None = None
    stroke_width: float = 1.0
    fill: str | None = None
    font_size: float | None = None
    dash: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Primitive:
    """One drawable element.

    Geometry layout per kind:
      line:      (x1, y1, x2, y2)
      polyline:  ((x, y), ...)
      polygon:   ((x, y), ...)
      rectangle: (x, y, width, height)
      circle:    (cx, cy, r)
      arc:       (cx, cy, r, start_deg, sweep_deg)
      wedge:     (cx, cy, r, start_deg, sweep_deg)
      text:      (x, y, content, anchor)   anchor in {start, middle, end}

    Angles are degrees, measured clockwise from 12 o'clock. (x, y) of a text
    primitive is the top of the line box at its anchor point.
    """

    kind: str
    geometry: tuple
    style: StyleSpec
    z: int = 0


BBox = tuple[float, float, float, float]


def line(x1, y1, x2, y2, style: StyleSpec, z: int = 0) -> Primitive:
    return Primitive("line", (float(x1), float(y1), float(x2), float(y2)), style, z)


def polyline(points, style: StyleSpec, z: int = 0) -> Primitive:
    pts = tuple((float(x), float(y)) for x, y in points)
    return Primitive("polyline", pts, style, z)


def polygon(points, style: StyleSpec, z: int = 0) -> Primitive:
    pts = tuple((float(x), float(y)) for x, y in points)
    return Primitive("polygon", pts, style, z)


def rect(x, y, w, h, style: StyleSpec, z: int = 0) -> Primitive:
    return Primitive("rectangle", (float(x), float(y), float(w), float(h)), style, z)


def circle(cx, cy, r, style: StyleSpec, z: int = 0) -> Primitive:
    return Primitive("circle", (float(cx), float(cy), float(r)), style, z)


def arc(cx, cy, r, start_deg, sweep_deg, style: StyleSpec, z: int = 0) -> Primitive:
    geo = (float(cx), float(cy), float(r), float(start_deg), float(sweep_deg))
    return Primitive("arc", geo, style, z)


def wedge(cx, cy, r, start_deg, sweep_deg, style: StyleSpec, z: int = 0) -> Primitive:
    geo = (float(cx), float(cy), float(r), float(start_deg), float(sweep_deg))
    return Primitive("wedge", geo, style, z)


def text(x, y, content: str, style: StyleSpec, anchor: str = "start", z: int = 0) -> Primitive:
    return Primitive("text", (float(x), float(y), str(content), anchor), style, z)


@dataclass(frozen=True)
class SceneGraph:
    canvas: Canvas
    primitives: tuple[Primitive, ...]
    labels: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def role_indices(self, role: str) -> tuple[int, ...]:
        if role not in self.labels:
            raise UnknownRole(role)
        return self.labels[role]


class SceneBuilder:
    """Accumulates primitives with optional roles, then emits a SceneGraph.

    build() sorts primitives stably by z and remaps role indices, so callers
    never deal with draw-order bookkeeping.
    """

    def __init__(self, canvas: Canvas):
        self.canvas = canvas
        self._items: list[tuple[Primitive, tuple[str, ...]]] = []

    def add(self, prim: Primitive, *roles: str) -> None:
        self._items.append((prim, roles))

    def extend(self, prims, *roles: str) -> None:
        for p in prims:
            self.add(p, *roles)

    def build(self) -> SceneGraph:
        order = sorted(range(len(self._items)), key=lambda i: (self._items[i][0].z, i))
        labels: dict[str, list[int]] = {}
        prims: list[Primitive] = []
        for new_index, old_index in enumerate(order):
            prim, roles = self._items[old_index]
            prims.append(prim)
            for role in roles:
                labels.setdefault(role, []).append(new_index)
        scene = SceneGraph(
            canvas=self.canvas,
            primitives=tuple(prims),
            labels={role: tuple(sorted(ix)) for role, ix in labels.items()},
        )
        validate_scene(scene)
        return scene


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def primitive_problems(p: Primitive) -> list[str]:
    """All invariant violations for one primitive (empty list = valid)."""
    problems: list[str] = []
    if p.kind not in KINDS:
        return [f"unknown kind {p.kind!r}"]
    g = p.geometry
    if p.kind == "text":
        x, y, content, anchor = g
        if not _finite(x, y):
            problems.append("non-finite coordinates")
        if not content:
            problems.append("empty text content")
        if anchor not in ("start", "middle", "end"):
            problems.append(f"bad anchor {anchor!r}")
        if p.style.font_size is None or p.style.font_size <= 0:
            problems.append("text requires positive font_size")
    else:
        coords = _flat_coords(p)
        if not _finite(*coords):
            problems.append("non-finite coordinates")
        if p.style.stroke is None and p.style.fill is None:
            problems.append("shape needs stroke or fill")
        if p.kind in ("arc", "wedge"):
            sweep = g[4]
            if not (0.0 < sweep <= 360.0):
                problems.append(f"sweep {sweep} outside (0, 360]")
            if g[2] <= 0:
                problems.append("non-positive radius")
        if p.kind == "circle" and g[2] <= 0:
            problems.append("non-positive radius")
    for attr in ("stroke", "fill"):
        name = getattr(p.style, attr)
        if name is not None and name not in PALETTE:
            problems.append(f"unknown {attr} color {name!r}")
    if p.style.stroke_width < 0:
        problems.append("negative stroke_width")
    return problems


def _flat_coords(p: Primitive) -> tuple[float, ...]:
    if p.kind in ("polyline", "polygon"):
        return tuple(v for pt in p.geometry for v in pt)
    if p.kind == "text":
        return (p.geometry[0], p.geometry[1])
    return tuple(float(v) for v in p.geometry)


def validate_scene(scene: SceneGraph) -> None:
    problems: list[tuple[int, str]] = []
    canvas = scene.canvas
    if canvas.width < MIN_CANVAS_SIDE or canvas.height < MIN_CANVAS_SIDE:
        problems.append((-1, f"canvas below {MIN_CANVAS_SIDE}px minimum"))
    if any(not (0 <= c <= 255) for c in canvas.background):
        problems.append((-1, "background channel outside [0,255]"))
    last_z = None
    for i, prim in enumerate(scene.primitives):
        for msg in primitive_problems(prim):
            problems.append((i, msg))
        if last_z is not None and prim.z < last_z:
            problems.append((i, "primitives not sorted by z"))
        last_z = prim.z
    n = len(scene.primitives)
    for role, indices in scene.labels.items():
        for ix in indices:
            if not (0 <= ix < n):
                problems.append((ix, f"label {role!r} index out of range"))
    if problems:
        raise InvalidScene(problems)


# ---------------------------------------------------------------------------
# Geometry queries


def angle_point(cx: float, cy: float, r: float, deg: float) -> tuple[float, float]:
    """Point on a circle at `deg` degrees clockwise from 12 o'clock."""
    rad = math.radians(deg)
    return (cx + r * math.sin(rad), cy - r * math.cos(rad))


def bounding_box(p: Primitive) -> BBox:
    """(x_min, y_min, x_max, y_max) containing all geometry of `p`.

    Text extent uses the documented glyph heuristic; arc/wedge boxes are
    exact (endpoints plus any crossed cardinal directions).
    """
    g = p.geometry
    if p.kind == "line":
        x1, y1, x2, y2 = g
        return (min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2))
    if p.kind in ("polyline", "polygon"):
        xs = [pt[0] for pt in g]
        ys = [pt[1] for pt in g]
        return (min(xs), min(ys), max(xs), max(ys))
    if p.kind == "rectangle":
        x, y, w, h = g
        return (x, y, x + w, y + h)
    if p.kind == "circle":
        cx, cy, r = g
        return (cx - r, cy - r, cx + r, cy + r)
    if p.kind in ("arc", "wedge"):
        cx, cy, r, start, sweep = g
        pts = [angle_point(cx, cy, r, start), angle_point(cx, cy, r, start + sweep)]
        if p.kind == "wedge":
            pts.append((cx, cy))
        for cardinal in (0.0, 90.0, 180.0, 270.0):
            if ((cardinal - start) % 360.0) <= sweep:
                pts.append(angle_point(cx, cy, r, cardinal))
        xs = [pt[0] for pt in pts]
        ys = [pt[1] for pt in pts]
        return (min(xs), min(ys), max(xs), max(ys))
    if p.kind == "text":
        x, y, content, anchor = g
        size = float(p.style.font_size or 0.0)
        w = TEXT_WIDTH_FACTOR * size * len(content)
        h = TEXT_HEIGHT_FACTOR * size
        if anchor == "middle":
            return (x - w / 2.0, y, x + w / 2.0, y + h)
        if anchor == "end":
            return (x - w, y, x, y + h)
        return (x, y, x + w, y + h)
    raise ValueError(f"unknown kind {p.kind!r}")


def bbox_intersection_area(a: BBox, b: BBox) -> float:
    w = min(a[2], b[2]) - max(a[0], b[0])
    h = min(a[3], b[3]) - max(a[1], b[1])
    if w <= 0 or h <= 0:
        return 0.0
    return w * h


def overlap_pairs(
    scene: SceneGraph, roles: set[str] | frozenset[str]
) -> list[tuple[int, int, float]]:
    """All index pairs among the role-selected primitives whose bounding
    boxes intersect with positive area, with the intersection area.
    """
    indices: set[int] = set()
    for role in sorted(roles):
        indices.update(scene.role_indices(role))
    selected = sorted(indices)
    boxes = {i: bounding_box(scene.primitives[i]) for i in selected}
    pairs: list[tuple[int, int, float]] = []
    for a_pos, i in enumerate(selected):
        for j in selected[a_pos + 1:]:
            area = bbox_intersection_area(boxes[i], boxes[j])
            if area > 0:
                pairs.append((i, j, area))
    return pairs


# ---------------------------------------------------------------------------
# SVG rendering


def _fmt(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _style_attrs(style: StyleSpec, is_text: bool) -> str:
    parts: list[str] = []
    if is_text:
        fill = style.fill or "black"
        parts.append(f'fill="{color_css(fill)}"')
        parts.append(f'font-size="{_fmt(style.font_size or 10.0)}"')
        parts.append('font-family="sans-serif"')
    else:
        if style.fill is not None:
            parts.append(f'fill="{color_css(style.fill)}"')
        else:
            parts.append('fill="none"')
        if style.stroke is not None:
            parts.append(f'stroke="{color_css(style.stroke)}"')
            parts.append(f'stroke-width="{_fmt(style.stroke_width)}"')
        if style.dash:
            parts.append(f'stroke-dasharray="{" ".join(_fmt(d) for d in style.dash)}"')
    return " ".join(parts)


def _points_attr(points) -> str:
    return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)


def _arc_path(cx, cy, r, start, sweep, close_to_center: bool) -> str:
    x1, y1 = angle_point(cx, cy, r, start)
    if sweep >= 360.0:
        # Full circle: two half arcs, since a single 360-degree arc collapses.
        xm, ym = angle_point(cx, cy, r, start + 180.0)
        d = (
            f"M {_fmt(x1)} {_fmt(y1)} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(xm)} {_fmt(ym)} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(x1)} {_fmt(y1)}"
        )
        return d + " Z" if close_to_center else d
    x2, y2 = angle_point(cx, cy, r, start + sweep)
    large = 1 if sweep > 180.0 else 0
    arc_part = f"A {_fmt(r)} {_fmt(r)} 0 {large} 1 {_fmt(x2)} {_fmt(y2)}"
    if close_to_center:
        return f"M {_fmt(cx)} {_fmt(cy)} L {_fmt(x1)} {_fmt(y1)} {arc_part} Z"
    return f"M {_fmt(x1)} {_fmt(y1)} {arc_part}"


def _element(p: Primitive) -> str:
    g = p.geometry
    if p.kind == "line":
        x1, y1, x2, y2 = g
        attrs = _style_attrs(p.style, False)
        return f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" {attrs}/>'
    if p.kind == "polyline":
        return f'<polyline points="{_points_attr(g)}" {_style_attrs(p.style, False)}/>'
    if p.kind == "polygon":
        return f'<polygon points="{_points_attr(g)}" {_style_attrs(p.style, False)}/>'
    if p.kind == "rectangle":
        x, y, w, h = g
        attrs = _style_attrs(p.style, False)
        return f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" height="{_fmt(h)}" {attrs}/>'
    if p.kind == "circle":
        cx, cy, r = g
        attrs = _style_attrs(p.style, False)
        return f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" {attrs}/>'
    if p.kind == "arc":
        cx, cy, r, start, sweep = g
        return f'<path d="{_arc_path(cx, cy, r, start, sweep, False)}" {_style_attrs(p.style, False)}/>'
    if p.kind == "wedge":
        cx, cy, r, start, sweep = g
        return f'<path d="{_arc_path(cx, cy, r, start, sweep, True)}" {_style_attrs(p.style, False)}/>'
    if p.kind == "text":
        x, y, content, anchor = g
        size = float(p.style.font_size or 10.0)
        # Baseline sits at ~0.8em below the top of the heuristic line box.
        baseline = y + 0.8 * size
        attrs = _style_attrs(p.style, True)
        return (
            f'<text x="{_fmt(x)}" y="{_fmt(baseline)}" text-anchor="{anchor}" {attrs}>'
            f"{escape(content)}</text>"
        )
    raise ValueError(f"unknown kind {p.kind!r}")


def render_svg(scene: SceneGraph) -> bytes:
    """Render a scene to a standalone SVG 1.1 document.

    Deterministic: the same scene yields byte-identical output. Raises
    InvalidScene if any scene invariant is violated.
    """
    validate_scene(scene)
    c = scene.canvas
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{c.width}" height="{c.height}" viewBox="0 0 {c.width} {c.height}">',
        f'<rect x="0" y="0" width="{c.width}" height="{c.height}" fill="{rgb_css(c.background)}"/>',
    ]
    lines.extend(_element(p) for p in scene.primitives)
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
