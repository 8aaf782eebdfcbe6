"""Three-level quality filter: render feasibility with bounded retries,
geometric aesthetics screening, and answer-consistency support thresholds.

Feasibility retries rebuild the scene with fonts shrunk by 0.85 per attempt
(the procedural analogue of regenerate-on-compiler-error); after max_retries
failed attempts the candidate is rejected, never raised. The aesthetics gate
is purely geometric: text/legend interference area, minimum font size, and
canvas containment, each reported as a machine-readable reason.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable

from .scene import LayoutOverflow, SceneGraph, bounding_box, bbox_intersection_area

FONT_SCALE_DECAY = 0.85


@dataclass(frozen=True)
class GateConfig:
    max_retries: int = 3
    max_overlap_fraction: float = 0.02
    min_font_px: float = 8.0
    min_vote_support: int = 2
    review_fraction: float = 0.10

    def validate(self) -> None:
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        for name in ("max_overlap_fraction", "review_fraction"):
            v = getattr(self, name)
            if not (0 < v <= 1):
                raise ValueError(f"{name} must be in (0, 1]")


@dataclass(frozen=True)
class Rejection:
    stage: str
    reason: str


@dataclass(frozen=True)
class FeasibilityResult:
    scene: SceneGraph | None
    attempts: int
    rejection: Rejection | None = None

    @property
    def accepted(self) -> bool:
        return self.scene is not None


def default_builder(spec: Any) -> Callable[[Any, float], SceneGraph]:
    """Scene builder for a scenario spec, dispatched on its type."""
    from .charts import ChartSpec, build_chart_scene
    from .diagrams import FlowSpec, TreeSpec, layout_hierarchy
    from .gauges import DialSpec, build_dial_scene
    from .maps import RoadMapSpec, build_map_scene
    from .puzzles import (
        DiffPairSpec, FloorPlanSpec, PatternRule, build_floorplan_scene,
        build_puzzle_scene,
    )
    if isinstance(spec, ChartSpec):
        return build_chart_scene
    if isinstance(spec, RoadMapSpec):
        return build_map_scene
    if isinstance(spec, DialSpec):
        return build_dial_scene
    if isinstance(spec, (TreeSpec, FlowSpec)):
        return layout_hierarchy
    if isinstance(spec, (PatternRule, DiffPairSpec)):
        return build_puzzle_scene
    if isinstance(spec, FloorPlanSpec):
        return build_floorplan_scene
    raise TypeError(f"no scene builder known for {type(spec).__name__}")


def feasibility_gate(
    spec: Any,
    config: GateConfig,
    builder: Callable[[Any, float], SceneGraph] | None = None,
) -> FeasibilityResult:
    """Attempt scene construction up to max_retries times, shrinking fonts on
    each retry. Rejection is a value, not an exception."""
    config.validate()
    if builder is None:
        builder = default_builder(spec)
    last_error = "no attempts made"
    for attempt in range(config.max_retries):
        scale = FONT_SCALE_DECAY ** attempt
        try:
            scene = builder(spec, scale)
        except LayoutOverflow as err:
            last_error = str(err)
            continue
        return FeasibilityResult(scene, attempts=attempt + 1)
    return FeasibilityResult(
        None,
        attempts=config.max_retries,
        rejection=Rejection("feasibility", f"layout failed after "
                            f"{config.max_retries} attempts: {last_error}"),
    )


@dataclass(frozen=True)
class AestheticsResult:
    passed: bool
    reasons: tuple[str, ...] = ()


def _interference_area(scene: SceneGraph, config: GateConfig) -> float:
    """Total pairwise bbox overlap among text primitives and legend elements,
    ignoring pairs inside the legend itself (a swatch under its own label is
    not interference)."""
    legend = set(scene.labels.get("legend", ()))
    candidates = sorted(
        {i for i, p in enumerate(scene.primitives) if p.kind == "text"} | legend
    )
    boxes = {i: bounding_box(scene.primitives[i]) for i in candidates}
    total = 0.0
    for pos, i in enumerate(candidates):
        for j in candidates[pos + 1:]:
            if i in legend and j in legend:
                continue
            total += bbox_intersection_area(boxes[i], boxes[j])
    return total


def aesthetics_gate(scene: SceneGraph, config: GateConfig) -> AestheticsResult:
    """Fail on text/legend interference, illegible fonts, or out-of-canvas
    elements; reasons enumerate every violation found."""
    config.validate()
    reasons: list[str] = []
    canvas_area = scene.canvas.width * scene.canvas.height
    overlap = _interference_area(scene, config)
    if overlap > config.max_overlap_fraction * canvas_area:
        reasons.append(
            f"interference: text/legend overlap area {overlap:.1f}px^2 exceeds "
            f"{config.max_overlap_fraction:.0%} of canvas"
        )
    small = sorted(
        i for i, p in enumerate(scene.primitives)
        if p.kind == "text" and (p.style.font_size or 0) < config.min_font_px
    )
    if small:
        reasons.append(f"small-font: primitives {small} below {config.min_font_px}px")
    outside = []
    for i, p in enumerate(scene.primitives):
        x0, y0, x1, y1 = bounding_box(p)
        if x0 < -0.5 or y0 < -0.5 or x1 > scene.canvas.width + 0.5 \
                or y1 > scene.canvas.height + 0.5:
            outside.append(i)
    if outside:
        reasons.append(f"out-of-bounds: primitives {outside} leave the canvas")
    return AestheticsResult(not reasons, tuple(reasons))


@dataclass
class GateReport:
    """Per-candidate outcome of the full gate pipeline."""

    outcomes: dict[str, Rejection | None] = field(default_factory=dict)

    def accept(self, candidate_id: str) -> None:
        self._record(candidate_id, None)

    def reject(self, candidate_id: str, stage: str, reason: str) -> None:
        self._record(candidate_id, Rejection(stage, reason))

    def _record(self, candidate_id: str, outcome: Rejection | None) -> None:
        if candidate_id in self.outcomes:
            raise ValueError(f"candidate {candidate_id!r} gated twice")
        self.outcomes[candidate_id] = outcome

    @property
    def accepted_ids(self) -> list[str]:
        return [cid for cid, out in self.outcomes.items() if out is None]

    def aggregate(self) -> dict:
        total = len(self.outcomes)
        accepted = len(self.accepted_ids)
        by_stage: dict[str, int] = {}
        for out in self.outcomes.values():
            if out is not None:
                by_stage[out.stage] = by_stage.get(out.stage, 0) + 1
        return {
            "candidates": total,
            "accepted": accepted,
            "rejected": total - accepted,
            "rejected_by_stage": dict(sorted(by_stage.items())),
            "pass_rate": round(accepted / total, 4) if total else 1.0,
        }

    def to_json(self) -> str:
        body = {
            "summary": self.aggregate(),
            "outcomes": {
                cid: ({"accepted": True} if out is None
                      else {"accepted": False, "stage": out.stage, "reason": out.reason})
                for cid, out in sorted(self.outcomes.items())
            },
        }
        return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False)
