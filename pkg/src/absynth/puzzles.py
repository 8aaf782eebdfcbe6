"""Visual puzzles (pattern induction, two-panel comparison) and 2D planar
layouts (floor plans and webpage layouts).

Induction puzzles show 3-4 panels following a single-attribute rule (rotate,
count, scale, or color-cycle) plus four candidate continuations; exactly one
candidate extends the rule and every distractor breaks it in exactly one
attribute. Comparison puzzles inject 1-3 cell-disjoint differences into a
copy of a panel. Floor plans come from recursive rectangle splits, so rooms
can never overlap; webpage layouts reuse the same machinery with region
names.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, replace
from random import Random

from .records import QuestionDraft
from .scene import (
    Canvas, LayoutOverflow, Primitive, SceneBuilder, SceneGraph, StyleSpec,
    TEXT_WIDTH_FACTOR, circle, polygon, rect, text,
)
from .seeds import derive_seed, stable_digest

PUZZLE_SHAPES = ("triangle", "square", "arrow", "circle", "star")
ORIENTABLE_SHAPES = ("triangle", "arrow")
COLOR_CYCLE = ("red", "blue", "green", "orange", "purple", "teal")
OPTION_LETTERS = ("A", "B", "C", "D")


# ---------------------------------------------------------------------------
# Shape geometry


def _rotate(points, cx, cy, deg):
    rad = math.radians(deg)
    cos, sin = math.cos(rad), math.sin(rad)
    return tuple(
        (cx + (x - cx) * cos - (y - cy) * sin, cy + (x - cx) * sin + (y - cy) * cos)
        for x, y in points
    )


def shape_primitive(shape: str, cx: float, cy: float, radius: float, angle: float,
                    color: str, z: int = 1) -> Primitive:
    """One filled mark; `angle` rotates clockwise around its center."""
    style = StyleSpec(fill=color, stroke="black", stroke_width=1.0)
    if shape == "circle":
        return circle(cx, cy, radius, style, z=z)
    if shape == "square":
        half = radius * 0.78
        pts = ((cx - half, cy - half), (cx + half, cy - half),
               (cx + half, cy + half), (cx - half, cy + half))
    elif shape == "triangle":
        pts = ((cx, cy - radius), (cx + 0.87 * radius, cy + 0.5 * radius),
               (cx - 0.87 * radius, cy + 0.5 * radius))
    elif shape == "arrow":
        r = radius
        pts = ((cx, cy - r), (cx + 0.55 * r, cy - 0.15 * r), (cx + 0.22 * r, cy - 0.15 * r),
               (cx + 0.22 * r, cy + r), (cx - 0.22 * r, cy + r), (cx - 0.22 * r, cy - 0.15 * r),
               (cx - 0.55 * r, cy - 0.15 * r))
    elif shape == "star":
        pts = []
        for i in range(10):
            rr = radius if i % 2 == 0 else radius * 0.45
            a = math.radians(36 * i)
            pts.append((cx + rr * math.sin(a), cy - rr * math.cos(a)))
        pts = tuple(pts)
    else:
        raise ValueError(f"unknown puzzle shape {shape!r}")
    return polygon(_rotate(pts, cx, cy, angle), style, z=z)


# ---------------------------------------------------------------------------
# Induction puzzles


@dataclass(frozen=True)
class PanelSpec:
    shape: str
    angle: float
    count: int
    size: float
    color: str


@dataclass(frozen=True)
class PatternRule:
    base: PanelSpec
    transform: tuple[str, float]  # (rotate deg | count +k | scale xs | color_cycle +k)
    steps_shown: int
    options: tuple[PanelSpec, PanelSpec, PanelSpec, PanelSpec]
    correct_index: int

    def to_dict(self) -> dict:
        return asdict(self)


def apply_transform(panel: PanelSpec, transform: tuple[str, float]) -> PanelSpec:
    op, amount = transform
    if op == "rotate":
        return replace(panel, angle=(panel.angle + amount) % 360.0)
    if op == "count":
        return replace(panel, count=panel.count + int(amount))
    if op == "scale":
        return replace(panel, size=panel.size * amount)
    if op == "color_cycle":
        ix = COLOR_CYCLE.index(panel.color)
        return replace(panel, color=COLOR_CYCLE[(ix + int(amount)) % len(COLOR_CYCLE)])
    raise ValueError(f"unknown transform {op!r}")


def shown_panels(rule: PatternRule) -> list[PanelSpec]:
    panels = [rule.base]
    for _ in range(rule.steps_shown - 1):
        panels.append(apply_transform(panels[-1], rule.transform))
    return panels


def correct_panel(rule: PatternRule) -> PanelSpec:
    return apply_transform(shown_panels(rule)[-1], rule.transform)


def panel_attribute_diffs(a: PanelSpec, b: PanelSpec) -> int:
    return sum((
        a.shape != b.shape,
        a.angle != b.angle,
        a.count != b.count,
        abs(a.size - b.size) > 1e-9,
        a.color != b.color,
    ))


def _distractors(rng: Random, correct: PanelSpec) -> list[PanelSpec]:
    options: list[tuple[str, PanelSpec]] = []
    if correct.shape in ORIENTABLE_SHAPES:
        options.append(("angle", replace(correct, angle=(correct.angle + 45.0) % 360.0)))
    options.append(("count+", replace(correct, count=correct.count + 1)))
    if correct.count > 1:
        options.append(("count-", replace(correct, count=correct.count - 1)))
    options.append(("size", replace(correct, size=correct.size * 0.7)))
    other_color = next(c for c in COLOR_CYCLE if c != correct.color)
    options.append(("color", replace(correct, color=other_color)))
    other_shape = next(s for s in PUZZLE_SHAPES if s != correct.shape and s != "star")
    options.append(("shape", replace(correct, shape=other_shape)))
    rng.shuffle(options)
    picked: list[PanelSpec] = []
    kinds: set[str] = set()
    for kind, panel in options:
        attr = kind.rstrip("+-")
        if attr not in kinds:
            kinds.add(attr)
            picked.append(panel)
        if len(picked) == 3:
            break
    return picked


def sample_pattern_rule(seed: int) -> PatternRule:
    rng = Random(derive_seed(seed, "induction"))
    op = rng.choice(("rotate", "count", "scale", "color_cycle"))
    color = rng.choice(COLOR_CYCLE)
    steps_shown = rng.randint(3, 4)
    if op == "rotate":
        shape = rng.choice(ORIENTABLE_SHAPES)
        base = PanelSpec(shape, rng.choice((0.0, 90.0)), 1, 1.0, color)
        transform = ("rotate", rng.choice((45.0, 90.0)))
    elif op == "count":
        shape = rng.choice(("circle", "square", "triangle", "star"))
        base = PanelSpec(shape, 0.0, rng.randint(1, 3), 0.55, color)
        transform = ("count", 1.0)
    elif op == "scale":
        shape = rng.choice(("circle", "square", "triangle"))
        base = PanelSpec(shape, 0.0, 1, 1.0, color)
        transform = ("scale", rng.choice((1.2, 0.8)))
    else:
        shape = rng.choice(("circle", "square", "triangle"))
        base = PanelSpec(shape, 0.0, 1, 1.0, color)
        transform = ("color_cycle", 1.0)
    panels = [base]
    for _ in range(steps_shown - 1):
        panels.append(apply_transform(panels[-1], transform))
    correct = apply_transform(panels[-1], transform)
    distractors = _distractors(rng, correct)
    slots = [correct] + distractors
    order = list(range(4))
    rng.shuffle(order)
    options = tuple(slots[order.index(i)] for i in range(4))
    correct_index = order[0]
    rule = PatternRule(base, transform, steps_shown, options, correct_index)
    assert options[correct_index] == correct
    return rule


# ---------------------------------------------------------------------------
# Comparison puzzles


@dataclass(frozen=True)
class PanelItem:
    shape: str
    color: str
    cell: int  # 0..8 on a 3x3 grid
    size: float = 1.0


@dataclass(frozen=True)
class DiffPairSpec:
    base_items: tuple[PanelItem, ...]
    variant_items: tuple[PanelItem, ...]
    diff_manifest: tuple[str, ...]

    def to_dict(self) -> dict:
        return asdict(self)


def sample_diff_pair(seed: int) -> DiffPairSpec:
    rng = Random(derive_seed(seed, "comparison"))
    n_items = rng.randint(4, 6)
    cells = rng.sample(range(9), n_items)
    combos = [(s, c) for s in ("circle", "square", "triangle", "star") for c in COLOR_CYCLE]
    chosen = rng.sample(combos, n_items)
    base = tuple(PanelItem(s, c, cell) for (s, c), cell in zip(chosen, cells))

    d = rng.randint(1, 3)
    variant = {item.cell: item for item in base}
    used_cells = set(cells)
    touched: set[int] = set()
    manifest: list[str] = []
    targets = rng.sample(base, d)
    for item in targets:
        ops = ["color", "shape", "remove"]
        free = [c for c in range(9) if c not in used_cells and c not in touched]
        if free:
            ops.append("move")
            ops.append("add")
        op = rng.choice(ops)
        if op == "color":
            new_color = rng.choice([c for c in COLOR_CYCLE if c != item.color])
            variant[item.cell] = replace(item, color=new_color)
            manifest.append(f"the {item.color} {item.shape} changed color to {new_color}")
            touched.add(item.cell)
        elif op == "shape":
            new_shape = rng.choice([s for s in ("circle", "square", "triangle", "star")
                                    if s != item.shape])
            variant[item.cell] = replace(item, shape=new_shape)
            manifest.append(f"the {item.color} {item.shape} became a {new_shape}")
            touched.add(item.cell)
        elif op == "remove":
            del variant[item.cell]
            manifest.append(f"the {item.color} {item.shape} disappeared")
            touched.add(item.cell)
        elif op == "move":
            target = rng.choice(free)
            del variant[item.cell]
            variant[target] = replace(item, cell=target)
            manifest.append(f"the {item.color} {item.shape} moved to a different position")
            touched.update({item.cell, target})
            used_cells.add(target)
        else:  # add
            target = rng.choice(free)
            new_combo = rng.choice([cb for cb in combos if cb not in chosen])
            variant[target] = PanelItem(new_combo[0], new_combo[1], target)
            manifest.append(f"a new {new_combo[1]} {new_combo[0]} appeared")
            touched.add(target)
            used_cells.add(target)
    variant_items = tuple(variant[c] for c in sorted(variant))
    return DiffPairSpec(base, variant_items, tuple(manifest))


def sample_puzzle(seed: int, kind: str | None = None) -> PatternRule | DiffPairSpec:
    """Either puzzle family, chosen by seed when `kind` is not given."""
    rng = Random(derive_seed(seed, "puzzle-kind"))
    kind = kind or rng.choice(("induction", "comparison"))
    if kind == "induction":
        return sample_pattern_rule(seed)
    if kind == "comparison":
        return sample_diff_pair(seed)
    raise ValueError(f"unknown puzzle kind {kind!r}")


# ---------------------------------------------------------------------------
# Puzzle scenes

_PANEL = 100.0
_GAP = 16.0
_PANEL_STYLE = StyleSpec(stroke="black", stroke_width=1.5)


def _draw_panel(b: SceneBuilder, panel: PanelSpec, x: float, y: float) -> None:
    b.add(rect(x, y, _PANEL, _PANEL, _PANEL_STYLE), "panels")
    _draw_marks(b, panel, x, y)


def _draw_marks(b: SceneBuilder, panel: PanelSpec, x: float, y: float) -> None:
    if panel.count == 1:
        radius = min(20.0 * panel.size, _PANEL / 2 - 4)
        b.add(shape_primitive(panel.shape, x + _PANEL / 2, y + _PANEL / 2,
                              radius, panel.angle, panel.color), "marks")
        return
    positions = ((0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75),
                 (0.5, 0.5), (0.25, 0.5), (0.75, 0.5), (0.5, 0.25), (0.5, 0.75))
    for i in range(panel.count):
        px, py = positions[i % len(positions)]
        b.add(shape_primitive(panel.shape, x + px * _PANEL, y + py * _PANEL,
                              11.0 * panel.size, panel.angle, panel.color), "marks")


def build_induction_scene(rule: PatternRule, font_scale: float = 1.0) -> SceneGraph:
    panels = shown_panels(rule)
    n_top = len(panels) + 1
    width = max(640, int(n_top * _PANEL + (n_top + 1) * _GAP))
    canvas = Canvas(width, 400)
    b = SceneBuilder(canvas)
    font = 13.0 * font_scale
    b.add(text(canvas.width / 2, 12, "Which option continues the pattern?",
               StyleSpec(font_size=font), anchor="middle"), "title")
    top_w = n_top * _PANEL + (n_top - 1) * _GAP
    x0 = (canvas.width - top_w) / 2
    y_top = 48.0
    for i, panel in enumerate(panels):
        _draw_panel(b, panel, x0 + i * (_PANEL + _GAP), y_top)
    qx = x0 + len(panels) * (_PANEL + _GAP)
    b.add(rect(qx, y_top, _PANEL, _PANEL, StyleSpec(stroke="gray", stroke_width=1.5,
                                                    dash=(6.0, 4.0))), "panels")
    b.add(text(qx + _PANEL / 2, y_top + _PANEL / 2 - 14, "?",
               StyleSpec(font_size=28.0 * font_scale), anchor="middle"), "marks")
    opt_w = 4 * _PANEL + 3 * _GAP
    ox0 = (canvas.width - opt_w) / 2
    y_opt = 210.0
    for i, option in enumerate(rule.options):
        x = ox0 + i * (_PANEL + _GAP)
        _draw_panel(b, option, x, y_opt)
        b.add(text(x + _PANEL / 2, y_opt + _PANEL + 8, OPTION_LETTERS[i],
                   StyleSpec(font_size=font), anchor="middle"), "option_labels")
    return b.build()


_DIFF_PANEL = 240.0
_DIFF_CELL = _DIFF_PANEL / 3


def diff_panel_primitives(items: tuple[PanelItem, ...], x: float, y: float) -> list[Primitive]:
    prims = []
    for item in sorted(items, key=lambda it: it.cell):
        row, col = divmod(item.cell, 3)
        cx = x + (col + 0.5) * _DIFF_CELL
        cy = y + (row + 0.5) * _DIFF_CELL
        prims.append(shape_primitive(item.shape, cx, cy, 26.0 * item.size, 0.0, item.color))
    return prims


def build_comparison_scene(spec: DiffPairSpec, font_scale: float = 1.0) -> SceneGraph:
    canvas = Canvas(640, 340)
    b = SceneBuilder(canvas)
    font = 13.0 * font_scale
    x_left, x_right, y0 = 40.0, 360.0, 60.0
    for title, x, items in (("Picture 1", x_left, spec.base_items),
                            ("Picture 2", x_right, spec.variant_items)):
        b.add(text(x + _DIFF_PANEL / 2, y0 - font - 10, title,
                   StyleSpec(font_size=font), anchor="middle"), "panel_titles")
        b.add(rect(x, y0, _DIFF_PANEL, _DIFF_PANEL, _PANEL_STYLE), "panels")
        b.extend(diff_panel_primitives(items, x, y0), "marks")
    return b.build()


# ---------------------------------------------------------------------------
# Puzzle questions


def puzzle_questions(spec: PatternRule | DiffPairSpec) -> list[QuestionDraft]:
    if isinstance(spec, PatternRule):
        letter = OPTION_LETTERS[spec.correct_index]
        op, amount = spec.transform
        rule_text = {
            "rotate": f"each panel rotates the shape by {amount:g} degrees",
            "count": "each panel adds one more shape",
            "scale": "each panel scales the shape by the same factor",
            "color_cycle": "the color advances one step in a fixed cycle",
        }[op]
        question = ("The first panels follow a pattern and the last panel is missing. "
                    "Which option (A, B, C, or D) completes the pattern?")
        rationale = (f"From panel to panel, {rule_text}; applying the rule once more "
                     f"matches option {letter}.")
        return [QuestionDraft(question, letter, "choice", "induction",
                              rationale=rationale)]
    drafts = [QuestionDraft(
        "How many differences are there between Picture 1 and Picture 2?",
        str(len(spec.diff_manifest)), "numeric", "diff_count")]
    drafts.append(QuestionDraft(
        "Describe one difference between Picture 1 and Picture 2.",
        spec.diff_manifest[0], "phrase", "diff_describe",
        alternates=tuple(spec.diff_manifest[1:])))
    return drafts


# ---------------------------------------------------------------------------
# Floor plans / webpage layouts


@dataclass(frozen=True)
class Room:
    name: str
    bounds: tuple[float, float, float, float]  # x, y, w, h
    fixtures: tuple[str, ...] = ()

    def area(self) -> float:
        return self.bounds[2] * self.bounds[3]


@dataclass(frozen=True)
class FloorPlanSpec:
    style: str  # architectural | webpage
    rooms: tuple[Room, ...]
    doors: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return asdict(self)

    def room(self, name: str) -> Room:
        return next(r for r in self.rooms if r.name == name)


_ROOM_NAMES = ("Living Room", "Kitchen", "Bedroom 1", "Bedroom 2", "Bedroom 3",
               "Bathroom", "Study", "Dining Room")
_REGION_NAMES = ("Header", "Navigation", "Sidebar", "Content", "Ad Banner",
                 "Footer", "Search Panel", "Gallery")
_ROOM_FILLS = ("cyan", "yellow", "pink", "olive", "teal", "orange", "green", "gray")

_MIN_W = 150.0
_MIN_H = 100.0

INTERIOR = (40.0, 60.0, 560.0, 370.0)


def shared_wall(a: Room, b: Room) -> float:
    """Length of the wall segment two rooms share (0 when not adjacent)."""
    ax, ay, aw, ah = a.bounds
    bx, by, bw, bh = b.bounds
    if abs((ax + aw) - bx) < 1e-6 or abs((bx + bw) - ax) < 1e-6:
        return max(0.0, min(ay + ah, by + bh) - max(ay, by))
    if abs((ay + ah) - by) < 1e-6 or abs((by + bh) - ay) < 1e-6:
        return max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    return 0.0


def sample_floorplan(seed: int) -> FloorPlanSpec:
    """Recursive rectangle subdivision into 4-6 connected, named rooms."""
    rng = Random(derive_seed(seed, "floorplan"))
    style = rng.choice(("architectural", "webpage"))
    target = rng.randint(4, 6)
    rects = [INTERIOR]
    while len(rects) < target:
        splittable = [i for i, (x, y, w, h) in enumerate(rects)
                      if w >= 2 * _MIN_W or h >= 2 * _MIN_H]
        if not splittable:
            break
        ix = rng.choice(splittable)
        x, y, w, h = rects.pop(ix)
        ratio = rng.uniform(0.4, 0.6)
        if w >= 2 * _MIN_W and (h < 2 * _MIN_H or w >= h):
            cut = x + w * ratio
            rects.insert(ix, (x, y, cut - x, h))
            rects.insert(ix + 1, (cut, y, x + w - cut, h))
        else:
            cut = y + h * ratio
            rects.insert(ix, (x, y, w, cut - y))
            rects.insert(ix + 1, (x, cut, w, y + h - cut))
    rects.sort(key=lambda r: (r[1], r[0]))
    pool = _ROOM_NAMES if style == "architectural" else _REGION_NAMES
    names = rng.sample(pool, len(rects))
    fixture = "washroom" if style == "architectural" else "search box"
    fixture_rooms = set(rng.sample(range(len(rects)), rng.randint(1, 2)))
    rooms = tuple(
        Room(name, bounds, (fixture,) if i in fixture_rooms else ())
        for i, (name, bounds) in enumerate(zip(names, rects))
    )
    # Doors: spanning tree over wall adjacency plus an occasional extra.
    adj: list[tuple[str, str]] = []
    for i, a in enumerate(rooms):
        for b in rooms[i + 1:]:
            if shared_wall(a, b) >= 50.0:
                adj.append((a.name, b.name))
    connected = {rooms[0].name}
    doors: list[tuple[str, str]] = []
    while len(connected) < len(rooms):
        progress = False
        for a, b in adj:
            if (a in connected) != (b in connected):
                doors.append((a, b))
                connected.update({a, b})
                progress = True
        if not progress:
            break
    extras = [pair for pair in adj if pair not in doors]
    if extras and rng.random() < 0.5:
        doors.append(rng.choice(extras))
    return FloorPlanSpec(style, rooms, tuple(doors))


def build_floorplan_scene(spec: FloorPlanSpec, font_scale: float = 1.0) -> SceneGraph:
    canvas = Canvas(640, 480)
    b = SceneBuilder(canvas)
    font = 11.0 * font_scale
    title = "Floor Plan" if spec.style == "architectural" else "Webpage Layout"
    b.add(text(canvas.width / 2, 14, title, StyleSpec(font_size=16.0 * font_scale),
               anchor="middle"), "title")
    for i, room in enumerate(spec.rooms):
        x, y, w, h = room.bounds
        fill = _ROOM_FILLS[i % len(_ROOM_FILLS)]
        b.add(rect(x, y, w, h, StyleSpec(fill=fill, stroke="black", stroke_width=2.0)),
              "rooms")
        if TEXT_WIDTH_FACTOR * font * len(room.name) > w - 8:
            raise LayoutOverflow(f"room name {room.name!r} wider than its room")
        b.add(text(x + w / 2, y + 8, room.name, StyleSpec(font_size=font), anchor="middle",
                   z=3), "room_labels")
        for j, fixture in enumerate(room.fixtures):
            fx, fy = x + 8, y + h - 26 - j * 26
            b.add(rect(fx, fy, 14, 14, StyleSpec(stroke="black", stroke_width=1.0,
                                                 dash=(3.0, 2.0)), z=2), "fixtures")
            b.add(text(fx + 18, fy + 3, fixture, StyleSpec(font_size=8.0 * font_scale), z=3),
                  "fixture_labels")
    by_name = {r.name: r for r in spec.rooms}
    for a_name, b_name in spec.doors:
        a, c = by_name[a_name], by_name[b_name]
        ax, ay, aw, ah = a.bounds
        bx, by_, bw, bh = c.bounds
        if abs((ax + aw) - bx) < 1e-6 or abs((bx + bw) - ax) < 1e-6:
            wall_x = bx if abs((ax + aw) - bx) < 1e-6 else ax
            y0 = max(ay, by_)
            y1 = min(ay + ah, by_ + bh)
            mid = (y0 + y1) / 2
            b.add(rect(wall_x - 3, mid - 12, 6, 24, StyleSpec(fill="brown"), z=4), "doors")
        else:
            wall_y = by_ if abs((ay + ah) - by_) < 1e-6 else ay
            x0 = max(ax, bx)
            x1 = min(ax + aw, bx + bw)
            mid = (x0 + x1) / 2
            b.add(rect(mid - 12, wall_y - 3, 24, 6, StyleSpec(fill="brown"), z=4), "doors")
    return b.build()


def layout_questions(spec: FloorPlanSpec) -> list[QuestionDraft]:
    """Size, containment, adjacency, and count questions; area ties produce
    multi-alternate answers instead of being resampled away."""
    rng = Random(stable_digest(spec.to_dict()))
    unit = "room" if spec.style == "architectural" else "region"
    areas = [(r.area(), r.name) for r in spec.rooms]
    max_area = max(a for a, _ in areas)
    min_area = min(a for a, _ in areas)
    largest = tuple(n for a, n in areas if a == max_area)
    smallest = tuple(n for a, n in areas if a == min_area)
    drafts = [
        QuestionDraft(f"Which {unit} is the largest?", largest[0], "phrase",
                      "largest_room", alternates=largest[1:]),
        QuestionDraft(f"Which {unit} is the smallest?", smallest[0], "phrase",
                      "smallest_room", alternates=smallest[1:]),
        QuestionDraft(f"How many {unit}s does this layout contain?",
                      str(len(spec.rooms)), "numeric", "room_count"),
    ]
    fixture = "washroom" if spec.style == "architectural" else "search box"
    probe = spec.rooms[rng.randrange(len(spec.rooms))]
    answer = "Yes" if fixture in probe.fixtures else "No"
    drafts.append(QuestionDraft(
        f"Does the {probe.name} contain a {fixture}?", answer, "phrase", "containment"))
    a = spec.rooms[rng.randrange(len(spec.rooms))]
    others = [r for r in spec.rooms if r.name != a.name]
    c = others[rng.randrange(len(others))]
    adjacent = "Yes" if shared_wall(a, c) > 0 else "No"
    drafts.append(QuestionDraft(
        f"Is the {a.name} directly adjacent to the {c.name}?", adjacent, "phrase",
        "adjacency"))
    return drafts


def build_puzzle_scene(spec: PatternRule | DiffPairSpec, font_scale: float = 1.0) -> SceneGraph:
    """Scene dispatcher used by the generation pipeline."""
    if isinstance(spec, PatternRule):
        return build_induction_scene(spec, font_scale)
    return build_comparison_scene(spec, font_scale)


from .records import register_generator

register_generator("puzzle-gen", puzzle_questions)
register_generator("floorplan-gen", layout_questions)
