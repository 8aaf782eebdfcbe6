"""End-to-end dataset generation: sample, gate, question, verify, serialize.

One image per (scenario, index) slot; the record seed is derived from the
master seed so runs shard cleanly across workers and reproduce byte-for-byte
regardless of job count. Every procedural record must re-verify against its
spec via the generator oracle before it is written; a mismatch (which would
indicate a generator bug) drops the record through the accuracy gate rather
than shipping a wrong answer.

With a backend configured, each accepted image also gains one LLM-proposed
question whose answer passes self-consistency voting at min_vote_support
(the only records that bypass oracle verification, marked by the
"llm-bridge" provenance).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from random import Random
from typing import Any, Callable

from . import bridge
from .charts import build_chart_scene, chart_questions, sample_chart_spec
from .diagrams import (
    diagram_questions, layout_hierarchy, sample_flow_spec, sample_relation_graph,
)
from .gate import GateConfig, GateReport, aesthetics_gate, feasibility_gate
from .gauges import build_dial_scene, dial_questions, sample_dial_spec
from .keywords import ORGANIZATION_TOPICS
from .maps import build_map_scene, generate_map, map_questions
from .puzzles import (
    build_floorplan_scene, build_puzzle_scene, layout_questions, puzzle_questions,
    sample_floorplan, sample_puzzle,
)
import json

from .records import (
    InstructionRecord, Manifest, Provenance, QuestionDraft, SCENARIOS, dump_manifest,
    sample_for_review, verify_record,
)
from .scene import SceneGraph, render_svg
from .seeds import derive_seed

NON_TABLE_CHART_KINDS = ("line", "bar", "pie", "composite")


@dataclass(frozen=True)
class ScenarioDef:
    sample: Callable[[int], Any]
    build: Callable[[Any, float], SceneGraph]
    questions: Callable[[Any], list[QuestionDraft]]
    generator: str


def _sample_chart(seed: int):
    kind = Random(derive_seed(seed, "chart-kind")).choice(NON_TABLE_CHART_KINDS)
    return sample_chart_spec(seed, kind=kind)


def _sample_table(seed: int):
    return sample_chart_spec(seed, kind="table")


def _sample_graph(seed: int):
    topic = Random(derive_seed(seed, "graph-topic")).choice(ORGANIZATION_TOPICS)
    return sample_relation_graph(seed, topic)


SCENARIO_DEFS: dict[str, ScenarioDef] = {
    "chart": ScenarioDef(_sample_chart, build_chart_scene, chart_questions, "chart-gen"),
    "table": ScenarioDef(_sample_table, build_chart_scene, chart_questions, "chart-gen"),
    "map": ScenarioDef(lambda s: generate_map(s), build_map_scene, map_questions, "map-gen"),
    "dashboard": ScenarioDef(lambda s: sample_dial_spec(s), build_dial_scene,
                             dial_questions, "gauge-gen"),
    "flowchart": ScenarioDef(lambda s: sample_flow_spec(s), layout_hierarchy,
                             diagram_questions, "diagram-gen"),
    "relation_graph": ScenarioDef(_sample_graph, layout_hierarchy,
                                  diagram_questions, "diagram-gen"),
    "puzzle": ScenarioDef(lambda s: sample_puzzle(s), build_puzzle_scene,
                          puzzle_questions, "puzzle-gen"),
    "layout": ScenarioDef(lambda s: sample_floorplan(s), build_floorplan_scene,
                          layout_questions, "floorplan-gen"),
}


@dataclass
class RunConfig:
    scenarios: tuple[str, ...] = SCENARIOS
    counts: dict[str, int] = field(default_factory=dict)
    default_count: int = 10
    seed: int = 0
    out_dir: str = "out"
    jobs: int = 1
    gate: GateConfig = field(default_factory=GateConfig)
    questions_per_image: int = 5
    train_fraction: float = 0.0
    backend: bridge.BackendConfig | None = None

    def count_for(self, scenario: str) -> int:
        return int(self.counts.get(scenario, self.default_count))

    def validate(self) -> None:
        for scenario in self.scenarios:
            if scenario not in SCENARIO_DEFS:
                raise ValueError(f"unknown scenario {scenario!r}")
            if self.count_for(scenario) < 0:
                raise ValueError(f"negative count for {scenario!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if not (0.0 <= self.train_fraction <= 1.0):
            raise ValueError("train_fraction must be in [0, 1]")
        self.gate.validate()


@dataclass
class ImageResult:
    scenario: str
    index: int
    image_id: str
    rejection: tuple[str, str] | None = None  # (stage, reason)
    svg: bytes | None = None
    records: list[InstructionRecord] = field(default_factory=list)
    dropped_records: list[tuple[str, str]] = field(default_factory=list)


def _assign_split(config: RunConfig, record_id: str) -> str:
    if config.train_fraction <= 0.0:
        return "test"
    bucket = derive_seed(config.seed, "split", record_id) % 10_000
    return "train" if bucket < config.train_fraction * 10_000 else "test"


def _llm_extra_record(
    config: RunConfig, scenario: str, image_id: str, image_ref: str, spec: Any, seed: int
) -> InstructionRecord | None:
    """One backend-proposed question gated by self-consistency support."""
    assert config.backend is not None
    topic = getattr(spec, "topic", None) or getattr(spec, "root_label", None) or scenario
    try:
        pairs = bridge.propose("qa", {"topic": str(topic)}, config.backend,
                               request_id=seed % 1_000_000)
        question = pairs[0]["question"]
        answer, support = bridge.self_consistent_answer(
            question, {"topic": str(topic)}, config=config.backend)
    except (bridge.BackendUnavailable, bridge.ContractViolation):
        return None
    if support < config.gate.min_vote_support:
        return None
    record_id = f"{image_id}-qllm"
    return InstructionRecord(
        id=record_id, scenario=scenario, image_ref=image_ref,
        question=question, answer=answer, answer_kind="phrase", question_type="llm_qa",
        split=_assign_split(config, record_id),
        provenance=Provenance("llm-bridge", seed),
    )


def generate_image(config: RunConfig, scenario: str, index: int) -> ImageResult:
    sdef = SCENARIO_DEFS[scenario]
    image_id = f"{scenario}-{index:05d}"
    seed = derive_seed(config.seed, scenario, index)
    result = ImageResult(scenario, index, image_id)
    spec = sdef.sample(seed)
    feasibility = feasibility_gate(spec, config.gate, sdef.build)
    if not feasibility.accepted:
        result.rejection = (feasibility.rejection.stage, feasibility.rejection.reason)
        return result
    aesthetics = aesthetics_gate(feasibility.scene, config.gate)
    if not aesthetics.passed:
        result.rejection = ("aesthetics", "; ".join(aesthetics.reasons))
        return result
    result.svg = render_svg(feasibility.scene)
    image_ref = f"images/{scenario}/{image_id}.svg"
    drafts = sdef.questions(spec)[: config.questions_per_image]
    difficulty = getattr(spec, "difficulty", None)
    for j, draft in enumerate(drafts):
        record_id = f"{image_id}-q{j:02d}"
        record = InstructionRecord(
            id=record_id, scenario=scenario, image_ref=image_ref,
            question=draft.question, answer=draft.answer,
            answer_kind=draft.answer_kind, question_type=draft.question_type,
            alternates=draft.alternates, rationale=draft.rationale,
            difficulty=difficulty, split=_assign_split(config, record_id),
            provenance=Provenance(sdef.generator, seed),
        )
        verdict = verify_record(record, spec)
        if verdict.ok:
            result.records.append(record)
        else:
            result.dropped_records.append((record_id, verdict.details))
    if config.backend is not None and result.records:
        extra = _llm_extra_record(config, scenario, image_id, image_ref, spec, seed)
        if extra is not None:
            result.records.append(extra)
    return result


def generate_dataset(config: RunConfig) -> tuple[Manifest, GateReport, dict[str, bytes]]:
    """Run every (scenario, index) slot through the full pipeline.

    Returns the manifest, the gate report, and the image files keyed by
    their manifest-relative path. Output is independent of config.jobs.
    """
    config.validate()
    slots = [
        (scenario, index)
        for scenario in config.scenarios
        for index in range(config.count_for(scenario))
    ]
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(
                lambda slot: generate_image(config, slot[0], slot[1]), slots))
    else:
        results = [generate_image(config, scenario, index) for scenario, index in slots]

    manifest = Manifest()
    report = GateReport()
    images: dict[str, bytes] = {}
    for result in sorted(results, key=lambda r: (r.scenario, r.index)):
        if result.rejection is not None:
            report.reject(result.image_id, *result.rejection)
            continue
        report.accept(result.image_id)
        for record_id, details in result.dropped_records:
            report.reject(record_id, "accuracy", details)
        images[f"images/{result.scenario}/{result.image_id}.svg"] = result.svg
        manifest.records.extend(result.records)
    manifest.validate()
    return manifest, report, images


def write_outputs(
    out_dir: str,
    manifest: Manifest,
    report: GateReport,
    images: dict[str, bytes],
    review_fraction: float = 0.10,
    seed: int = 0,
) -> dict[str, str]:
    """Write manifest.jsonl, gate_report.json, the stratified human-review
    sample, and every SVG under out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    manifest_path = os.path.join(out_dir, "manifest.jsonl")
    with open(manifest_path, "wb") as fh:
        fh.write(dump_manifest(manifest))
    paths["manifest"] = manifest_path
    report_path = os.path.join(out_dir, "gate_report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    paths["gate_report"] = report_path
    review_path = os.path.join(out_dir, "review_sample.json")
    review_ids = sample_for_review(manifest, review_fraction, seed) if manifest.records else []
    with open(review_path, "w", encoding="utf-8") as fh:
        json.dump({"fraction": review_fraction, "record_ids": review_ids}, fh, indent=2)
        fh.write("\n")
    paths["review_sample"] = review_path
    for rel, data in sorted(images.items()):
        full = os.path.join(out_dir, rel)
        os.makedirs(os.path.dirname(full), exist_ok=True)
        with open(full, "wb") as fh:
            fh.write(data)
    return paths
