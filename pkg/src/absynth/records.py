"""Instruction records, the dataset manifest, and answer verification.

One InstructionRecord is one dataset row: a question about one image, its
canonical answer, acceptable alternates, and an optional rationale. Records
are serialized one-per-line as JSON (see MANIFEST_SCHEMA_VERSION and the
field list in the README).

Answer verification re-derives every answer from the originating scenario
spec through a registered generator oracle, so a stored answer can never
drift from the parameters that produced the image.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, asdict
from random import Random
from typing import Any, Callable

from .seeds import derive_seed

MANIFEST_SCHEMA_VERSION = "1"

SCENARIOS = (
    "chart",
    "table",
    "map",
    "dashboard",
    "flowchart",
    "relation_graph",
    "puzzle",
    "layout",
)

ANSWER_KINDS = ("numeric", "phrase", "sentence", "landmark_sequence", "choice")

# Question types whose records must carry a step-by-step rationale.
RATIONALE_REQUIRED_TYPES = frozenset({"math", "offset_math", "inverse_reasoning"})


class UnknownGenerator(KeyError):
    pass


class SchemaMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QuestionDraft:
    """A question/answer unit produced by a scenario generator, before it is
    bound to an image and an id."""

    question: str
    answer: str
    answer_kind: str
    question_type: str
    alternates: tuple[str, ...] = ()
    rationale: str | None = None


@dataclass(frozen=True)
class Provenance:
    generator: str
    seed: int


@dataclass(frozen=True)
class InstructionRecord:
    id: str
    scenario: str
    image_ref: str
    question: str
    answer: str
    answer_kind: str
    question_type: str
    alternates: tuple[str, ...] = ()
    rationale: str | None = None
    difficulty: int | None = None
    split: str = "test"
    provenance: Provenance = Provenance("unknown", 0)


def validate_record(record: InstructionRecord) -> list[str]:
    """All invariant violations for a record (empty list = valid)."""
    problems: list[str] = []
    if record.scenario not in SCENARIOS:
        problems.append(f"unknown scenario {record.scenario!r}")
    if record.answer_kind not in ANSWER_KINDS:
        problems.append(f"unknown answer_kind {record.answer_kind!r}")
    if record.answer_kind == "numeric":
        value = parse_number(record.answer)
        if value is None or not math.isfinite(value):
            problems.append(f"numeric answer {record.answer!r} does not parse")
    if record.answer_kind == "landmark_sequence":
        names = [n.strip() for n in record.answer.split(",")]
        if len(names) != len(set(names)) or any(not n for n in names):
            problems.append("landmark sequence must be unique non-empty names")
    if record.question_type in RATIONALE_REQUIRED_TYPES and not record.rationale:
        problems.append(f"{record.question_type} record missing rationale")
    if record.split not in ("train", "test"):
        problems.append(f"bad split {record.split!r}")
    if record.difficulty is not None and not (1 <= record.difficulty <= 5):
        problems.append(f"difficulty {record.difficulty} outside 1..5")
    return problems


# ---------------------------------------------------------------------------
# Canonicalization

_TIME_RE = re.compile(r"^(\d{1,2}):(\d{2})(?:\s*(am|pm))?$")
_NUMBER_RE = re.compile(r"-?\d{1,3}(?:,\d{3})+(?:\.\d+)?|-?\d+(?:\.\d+)?")


def parse_number(text: str) -> float | None:
    """Last number appearing in `text`, or None.

    Chain-of-thought responses state the answer last, so the final number is
    taken as the prediction.
    """
    matches = _NUMBER_RE.findall(text)
    if not matches:
        return None
    try:
        return float(matches[-1].replace(",", ""))
    except ValueError:
        return None


def format_number(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.6f}".rstrip("0").rstrip(".")


def canonicalize(answer: str, kind: str = "phrase") -> str:
    """Normalize an answer string for comparison.

    Trims and casefolds; collapses whitespace; rewrites 12-hour clock times
    ("4:10 pm") to 24-hour form; for numeric kinds, reduces the text to its
    final number with units stripped.
    """
    out = " ".join(str(answer).split()).casefold()
    m = _TIME_RE.match(out)
    if m:
        hour, minute, meridiem = int(m.group(1)), m.group(2), m.group(3)
        if meridiem == "pm" and hour != 12:
            hour += 12
        elif meridiem == "am" and hour == 12:
            hour = 0
        return f"{hour}:{minute}"
    if kind == "numeric":
        value = parse_number(out)
        if value is not None:
            return format_number(value)
    return out


def answer_set(record: InstructionRecord) -> set[str]:
    """Canonical forms of the gold answer and all alternates."""
    forms = {canonicalize(record.answer, record.answer_kind)}
    forms.update(canonicalize(a, record.answer_kind) for a in record.alternates)
    return forms


# ---------------------------------------------------------------------------
# Oracle verification

# generator name -> callable(spec) -> list[QuestionDraft]
_GENERATORS: dict[str, Callable[[Any], list[QuestionDraft]]] = {}


def register_generator(name: str, fn: Callable[[Any], list[QuestionDraft]]) -> None:
    _GENERATORS[name] = fn


def generator_names() -> tuple[str, ...]:
    return tuple(sorted(_GENERATORS))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    details: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_record(record: InstructionRecord, spec: Any) -> Verdict:
    """Re-derive the record's answer from its scenario spec and compare.

    Looks up the generator named in record.provenance, regenerates all drafts
    for `spec`, finds the draft with the same question, and compares answer
    plus alternates canonically.
    """
    name = record.provenance.generator
    if name not in _GENERATORS:
        raise UnknownGenerator(name)
    drafts = _GENERATORS[name](spec)
    match = None
    for draft in drafts:
        if draft.question == record.question and draft.question_type == record.question_type:
            match = draft
            break
    if match is None:
        return Verdict(False, f"no draft regenerated for question {record.question!r}")
    expected = {canonicalize(match.answer, match.answer_kind)}
    expected.update(canonicalize(a, match.answer_kind) for a in match.alternates)
    got = answer_set(record)
    if expected == got:
        return Verdict(True)
    return Verdict(False, f"expected {sorted(expected)}, got {sorted(got)}")


def vote_select(candidates: list[str], kind: str = "phrase") -> tuple[str, int]:
    """Modal answer after canonicalization, with its support count.

    Ties break toward the earliest-seen candidate. Requires >= 3 candidates.
    The returned winner is the first raw candidate whose canonical form won.
    """
    if len(candidates) < 3:
        raise ValueError("vote_select needs at least 3 candidates")
    counts: dict[str, int] = {}
    first_raw: dict[str, str] = {}
    for raw in candidates:
        key = canonicalize(raw, kind)
        counts[key] = counts.get(key, 0) + 1
        first_raw.setdefault(key, raw)
    best_key = None
    best_count = -1
    for key in counts:  # dict preserves first-seen order
        if counts[key] > best_count:
            best_key, best_count = key, counts[key]
    assert best_key is not None
    return first_raw[best_key], best_count


# ---------------------------------------------------------------------------
# Manifest

@dataclass
class Manifest:
    records: list[InstructionRecord] = field(default_factory=list)
    schema_version: str = MANIFEST_SCHEMA_VERSION

    def stats(self) -> dict[str, dict[str, int]]:
        """Per-scenario record and image counts, recomputed from records."""
        out: dict[str, dict[str, int]] = {}
        for scenario in SCENARIOS:
            recs = [r for r in self.records if r.scenario == scenario]
            images = {r.image_ref for r in recs}
            if recs:
                out[scenario] = {"records": len(recs), "images": len(images)}
        return out

    def validate(self) -> None:
        ids = [r.id for r in self.records]
        if len(ids) != len(set(ids)):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate record ids: {dupes[:5]}")
        for r in self.records:
            problems = validate_record(r)
            if problems:
                raise ValueError(f"record {r.id}: {problems}")


def record_to_json(record: InstructionRecord) -> str:
    data = asdict(record)
    data["alternates"] = list(record.alternates)
    return json.dumps(data, ensure_ascii=False, sort_keys=True)


def record_from_json(line: str) -> InstructionRecord:
    data = json.loads(line)
    prov = data.get("provenance") or {}
    return InstructionRecord(
        id=data["id"],
        scenario=data["scenario"],
        image_ref=data["image_ref"],
        question=data["question"],
        answer=data["answer"],
        answer_kind=data["answer_kind"],
        question_type=data["question_type"],
        alternates=tuple(data.get("alternates") or ()),
        rationale=data.get("rationale"),
        difficulty=data.get("difficulty"),
        split=data.get("split", "test"),
        provenance=Provenance(prov.get("generator", "unknown"), int(prov.get("seed", 0))),
    )


def dump_manifest(manifest: Manifest) -> bytes:
    """Serialize to line-delimited JSON: one header line, one line per record."""
    manifest.validate()
    header = json.dumps(
        {"kind": "manifest-header", "schema_version": manifest.schema_version},
        sort_keys=True,
    )
    lines = [header] + [record_to_json(r) for r in manifest.records]
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_manifest(data: bytes | str) -> Manifest:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SchemaMismatch("empty manifest file")
    header = json.loads(lines[0])
    if header.get("kind") != "manifest-header":
        raise SchemaMismatch("missing manifest header line")
    version = header.get("schema_version")
    if version != MANIFEST_SCHEMA_VERSION:
        raise SchemaMismatch(f"schema_version {version!r}, expected {MANIFEST_SCHEMA_VERSION!r}")
    manifest = Manifest(records=[record_from_json(ln) for ln in lines[1:]], schema_version=version)
    manifest.validate()
    return manifest


def sample_for_review(manifest: Manifest, fraction: float = 0.10, seed: int = 0) -> list[str]:
    """Deterministic stratified sample of record ids for human review.

    Per scenario, picks ceil(fraction * count) ids.
    """
    if not (0 < fraction <= 1):
        raise ValueError("fraction must be in (0, 1]")
    chosen: list[str] = []
    for scenario in SCENARIOS:
        ids = sorted(r.id for r in manifest.records if r.scenario == scenario)
        if not ids:
            continue
        k = math.ceil(fraction * len(ids))
        rng = Random(derive_seed(seed, "review", scenario))
        chosen.extend(rng.sample(ids, k))
    return chosen
