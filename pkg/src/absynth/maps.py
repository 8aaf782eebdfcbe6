"""Simulated road-map synthesis via a self-avoiding biased random walk.

One map = one walk: starting from a random free cell the walker steps
according to per-direction probabilities, re-samples its direction with
probability turn_prob, never revisits a cell, and stops when the step budget
runs out or it is boxed in; the stopping cell becomes the endpoint. With
turn_prob = 0 a blocked walker simply stops, so the gold path is a straight
segment. Distractor branches are then grown off cells where the path turns,
one self-avoiding corridor each, never touching the rest of the network, so
a junction always coincides with a turn and a straight gold path stays at
difficulty 1.

Intersections (network degree >= 3) plus the start and end cells are named
from a fixed street-name list; the gold answer to the navigation question is
the ordered landmark-name sequence along the path, including start and end.

Difficulty is level = 1 + min(4, (turns + intersections) // 2), a documented
config-style formula: two turns plus two intersections is exactly level 3.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from random import Random

from .records import QuestionDraft
from .scene import Canvas, SceneBuilder, SceneGraph, StyleSpec, circle, line, rect, text
from .seeds import derive_seed

Cell = tuple[int, int]  # (row, col)

DIRECTIONS: dict[str, Cell] = {
    "up": (-1, 0),
    "down": (1, 0),
    "left": (0, -1),
    "right": (0, 1),
}
_DIR_ORDER = ("up", "down", "left", "right")

STREET_NAMES: tuple[str, ...] = (
    "Oak", "Pine", "Elm", "Maple", "Cedar", "Birch", "Willow", "Aspen",
    "Holly", "Laurel", "Magnolia", "Juniper", "Hazel", "Alder", "Poplar", "Spruce",
    "Main", "High", "Park", "Lake", "Hill", "River", "Bridge", "Mill",
    "Church", "Market", "Station", "Harbor", "Garden", "Meadow", "Orchard", "Valley",
    "Sunset", "Sunrise", "Summit", "Ridge", "Canyon", "Prairie", "Forest", "Grove",
    "Brook", "Spring", "Fountain", "Crescent", "Liberty", "Union", "Victory", "Camden",
    "Baker", "Carter", "Dalton", "Ellis", "Foster", "Granger", "Hudson", "Irving",
    "Jasper", "Keaton", "Langley", "Mercer", "Norton", "Oswald", "Preston", "Quincy",
)

MAX_BRANCHES = 4
BRANCH_MIN_LEN = 2
BRANCH_MAX_LEN = 5
MIN_GOLD_CELLS = 3
RESEED_ATTEMPTS = 20


class DegenerateMap(ValueError):
    """Walk parameters cannot produce a usable gold path."""


@dataclass(frozen=True)
class WalkParams:
    grid_size: tuple[int, int] = (12, 12)
    direction_probs: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    turn_prob: float = 0.30
    max_steps: int = 36
    obstacle_density: float = 0.10

    def validate(self) -> None:
        rows, cols = self.grid_size
        if rows < 2 or cols < 2:
            raise ValueError("grid must be at least 2x2")
        if abs(sum(self.direction_probs) - 1.0) > 1e-9:
            raise ValueError("direction probabilities must sum to 1")
        if any(p < 0 for p in self.direction_probs):
            raise ValueError("direction probabilities must be non-negative")
        if not (0.0 <= self.turn_prob <= 1.0):
            raise ValueError("turn_prob must be in [0, 1]")
        if not (0 < self.max_steps <= rows * cols):
            raise ValueError("max_steps must be in 1..rows*cols")
        if not (0.0 <= self.obstacle_density <= 0.4):
            raise ValueError("obstacle_density must be in [0, 0.4]")


@dataclass(frozen=True)
class PathTrace:
    cells: tuple[Cell, ...]
    turns: int
    intersections: int
    landmarks: tuple[str, ...]


@dataclass(frozen=True)
class RoadMapSpec:
    params: WalkParams
    network: frozenset[Cell]
    obstacles: frozenset[Cell]
    start: Cell
    end: Cell
    gold: PathTrace
    landmark_names: dict[Cell, str]
    difficulty: int

    def to_dict(self) -> dict:
        data = asdict(self)
        data["network"] = sorted(self.network)
        data["obstacles"] = sorted(self.obstacles)
        data["landmark_names"] = {str(k): v for k, v in sorted(self.landmark_names.items())}
        return data


def count_turns(cells: tuple[Cell, ...]) -> int:
    turns = 0
    for a, b, c in zip(cells, cells[1:], cells[2:]):
        if (b[0] - a[0], b[1] - a[1]) != (c[0] - b[0], c[1] - b[1]):
            turns += 1
    return turns


def network_degree(cell: Cell, network: frozenset[Cell]) -> int:
    r, c = cell
    return sum((r + dr, c + dc) in network for dr, dc in DIRECTIONS.values())


def classify_difficulty(gold: PathTrace) -> int:
    """Map complexity level 1..5, monotone in turns and intersections."""
    return 1 + min(4, (gold.turns + gold.intersections) // 2)


def _weighted_direction(rng: Random, params: WalkParams, valid: list[str]) -> str | None:
    weights = [params.direction_probs[_DIR_ORDER.index(d)] for d in valid]
    total = sum(weights)
    if total <= 0:
        return None
    roll = rng.random() * total
    acc = 0.0
    for d, w in zip(valid, weights):
        acc += w
        if roll <= acc:
            return d
    return valid[-1]


def _walk(rng: Random, params: WalkParams, obstacles: set[Cell]) -> list[Cell]:
    rows, cols = params.grid_size
    free = [
        (r, c) for r in range(rows) for c in range(cols) if (r, c) not in obstacles
    ]
    if not free:
        return []
    start = free[rng.randrange(len(free))]
    low = min(MIN_GOLD_CELLS + 1, params.max_steps)
    budget = rng.randint(low, params.max_steps)
    path = [start]
    visited = {start}
    direction: str | None = None
    for _ in range(budget):
        r, c = path[-1]
        valid = []
        for d in _DIR_ORDER:
            dr, dc = DIRECTIONS[d]
            nxt = (r + dr, c + dc)
            if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                continue
            if nxt in visited or nxt in obstacles:
                continue
            # The path must never run alongside itself: a fold would draw a
            # shortcut edge and make the gold route ambiguous on the image.
            touches = sum(
                (nxt[0] + ddr, nxt[1] + ddc) in visited for ddr, ddc in DIRECTIONS.values()
            )
            if touches == 1:
                valid.append(d)
        if not valid:
            break  # boxed in
        if direction is None or rng.random() < params.turn_prob:
            chosen = _weighted_direction(rng, params, valid)
            if chosen is None:
                break
        elif direction in valid:
            chosen = direction
        elif params.turn_prob > 0.0:
            chosen = _weighted_direction(rng, params, valid)
            if chosen is None:
                break
        else:
            break  # a walker that never turns stops at the first blockage
        direction = chosen
        dr, dc = DIRECTIONS[chosen]
        nxt = (r + dr, c + dc)
        path.append(nxt)
        visited.add(nxt)
    return path


def _grow_branch(
    rng: Random, params: WalkParams, network: set[Cell], obstacles: set[Cell],
    attach: Cell, length: int,
) -> list[Cell]:
    """Self-avoiding corridor growing out of `attach`; each new cell touches
    the existing network only through its predecessor."""
    rows, cols = params.grid_size
    branch: list[Cell] = []
    current = attach
    for _ in range(length):
        options = []
        for d in _DIR_ORDER:
            dr, dc = DIRECTIONS[d]
            nxt = (current[0] + dr, current[1] + dc)
            if not (0 <= nxt[0] < rows and 0 <= nxt[1] < cols):
                continue
            if nxt in network or nxt in obstacles:
                continue
            touches = sum(
                (nxt[0] + ddr, nxt[1] + ddc) in network for ddr, ddc in DIRECTIONS.values()
            )
            if touches == 1:  # only the predecessor
                options.append(nxt)
        if not options:
            break
        current = options[rng.randrange(len(options))]
        branch.append(current)
        network.add(current)
    return branch


def generate_map(seed: int, params: WalkParams | None = None) -> RoadMapSpec:
    """Generate a deterministic road map for (seed, params).

    Raises DegenerateMap if no attempt out of RESEED_ATTEMPTS produces a gold
    path of at least MIN_GOLD_CELLS cells.
    """
    params = params or WalkParams()
    params.validate()
    rows, cols = params.grid_size

    path: list[Cell] = []
    rng = Random()
    for attempt in range(RESEED_ATTEMPTS):
        rng = Random(derive_seed(seed, "map", attempt))
        all_cells = [(r, c) for r in range(rows) for c in range(cols)]
        n_obstacles = int(params.obstacle_density * rows * cols)
        obstacles = set(rng.sample(all_cells, n_obstacles))
        path = _walk(rng, params, obstacles)
        if len(path) >= MIN_GOLD_CELLS:
            break
    else:
        raise DegenerateMap(
            f"no gold path of >= {MIN_GOLD_CELLS} cells after {RESEED_ATTEMPTS} attempts"
        )

    network: set[Cell] = set(path)
    # Distractor branches grow out of corner cells, so an added junction is
    # always paired with a turn and a zero-turn path keeps difficulty 1.
    corners = [
        b for a, b, c in zip(path, path[1:], path[2:])
        if (b[0] - a[0], b[1] - a[1]) != (c[0] - b[0], c[1] - b[1])
    ]
    if corners:
        n_branches = rng.randint(0, min(MAX_BRANCHES, len(corners)))
        attach_cells = rng.sample(corners, n_branches)
        for attach in attach_cells:
            _grow_branch(rng, params, network, obstacles,
                         attach, rng.randint(BRANCH_MIN_LEN, BRANCH_MAX_LEN))

    frozen_network = frozenset(network)
    start, end = path[0], path[-1]
    named_cells = {c for c in network if network_degree(c, frozen_network) >= 3}
    named_cells.update((start, end))
    ordered = sorted(named_cells)
    names = list(STREET_NAMES)
    rng.shuffle(names)
    if len(ordered) > len(names):
        raise DegenerateMap("more intersections than available landmark names")
    landmark_names = {cell: names[i] for i, cell in enumerate(ordered)}

    cells = tuple(path)
    landmarks = tuple(landmark_names[c] for c in cells if c in landmark_names)
    trace = PathTrace(
        cells=cells,
        turns=count_turns(cells),
        intersections=sum(
            1 for c in cells if network_degree(c, frozen_network) >= 3
        ),
        landmarks=landmarks,
    )
    return RoadMapSpec(
        params=params,
        network=frozen_network,
        obstacles=frozenset(obstacles),
        start=start,
        end=end,
        gold=trace,
        landmark_names=landmark_names,
        difficulty=classify_difficulty(trace),
    )


# ---------------------------------------------------------------------------
# Scene

CELL_PX = 36.0
MARGIN_PX = 38.0
LABEL_FONT = 9.0

_ROAD_STYLE = StyleSpec(stroke="gray", stroke_width=9.0)
_OBSTACLE_STYLE = StyleSpec(fill="brown", stroke="black", stroke_width=0.5)
_NODE_STYLE = StyleSpec(fill="black")


def _cell_center(cell: Cell) -> tuple[float, float]:
    r, c = cell
    return (MARGIN_PX + c * CELL_PX, MARGIN_PX + r * CELL_PX)


def build_map_scene(spec: RoadMapSpec, font_scale: float = 1.0) -> SceneGraph:
    """Draw the road network, obstacles, landmark labels, and start/end
    markers. The gold path itself is not highlighted (it is the answer)."""
    rows, cols = spec.params.grid_size
    canvas = Canvas(
        int(2 * MARGIN_PX + (cols - 1) * CELL_PX),
        int(2 * MARGIN_PX + (rows - 1) * CELL_PX),
        background=(250, 247, 240),
    )
    b = SceneBuilder(canvas)
    drawn: set[tuple[Cell, Cell]] = set()
    for cell in sorted(spec.network):
        x, y = _cell_center(cell)
        for dr, dc in DIRECTIONS.values():
            other = (cell[0] + dr, cell[1] + dc)
            if other in spec.network and (other, cell) not in drawn:
                ox, oy = _cell_center(other)
                b.add(line(x, y, ox, oy, _ROAD_STYLE), "roads")
                drawn.add((cell, other))
    for cell in sorted(spec.obstacles):
        x, y = _cell_center(cell)
        b.add(rect(x - 8, y - 8, 16, 16, _OBSTACLE_STYLE, z=1), "obstacles")

    font = LABEL_FONT * font_scale
    for cell in sorted(spec.landmark_names):
        x, y = _cell_center(cell)
        if cell == spec.start:
            b.add(circle(x, y, 8, StyleSpec(fill="green", stroke="black", stroke_width=1.0),
                         z=3), "start_marker")
        elif cell == spec.end:
            b.add(rect(x - 7, y - 7, 14, 14,
                       StyleSpec(fill="red", stroke="black", stroke_width=1.0), z=3),
                  "end_marker")
        else:
            b.add(circle(x, y, 4.5, _NODE_STYLE, z=2), "landmarks")
        above = (cell[0] + cell[1]) % 2 == 0
        ly = y - 13.0 - font if above else y + 11.0
        b.add(text(x, ly, spec.landmark_names[cell], StyleSpec(font_size=font), anchor="middle",
                   z=4), "landmark_labels")
    return b.build()


def map_instruction(spec: RoadMapSpec) -> QuestionDraft:
    """The navigation question: the route's landmark names in order,
    including the start and end cells (the recorded convention)."""
    start_name = spec.landmark_names[spec.start]
    end_name = spec.landmark_names[spec.end]
    sequence = ", ".join(spec.gold.landmarks)
    question = (
        f"Plan a route on this road map from {start_name} to {end_name}. "
        f"List, in order, the names of all marked points you pass through, "
        f"including the start and the end."
    )
    rationale = (
        f"Starting at {start_name}, the road leads through "
        f"{sequence} and ends at {end_name}."
    )
    return QuestionDraft(question, sequence, "landmark_sequence", "navigation",
                         rationale=rationale)


def map_questions(spec: RoadMapSpec) -> list[QuestionDraft]:
    """Draft list wrapper so maps register like every other generator."""
    return [map_instruction(spec)]


from .records import register_generator

register_generator("map-gen", map_questions)
