"""Metric suite and aggregate scoring for prediction files.

Routing is by answer kind: numeric answers use the 5% relative-error rule in
chart/table/dashboard scenarios (inclusive boundary; a zero gold requires a
zero prediction) and exact matching elsewhere; phrase and choice answers
match canonically or as token-boundary substrings; sentence answers score
token-level Rouge-L (F1, beta=1); landmark sequences score the Landmark
Coverage Rate, the LCS between the extracted and annotated sequences divided
by the annotated length. Numeric extraction always takes the LAST number in
a response, because chain-of-thought answers end with the result.

"Compared sequentially" is implemented as LCS by default (the more generous
order-preserving reading); a greedy mode is available for sensitivity
analysis.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

from .records import InstructionRecord, Manifest, canonicalize, parse_number

TOLERANT_SCENARIOS = frozenset({"chart", "table", "dashboard"})
NUMERIC_TOLERANCE = 0.05


@dataclass(frozen=True)
class Prediction:
    record_id: str
    raw_response: str


def load_predictions(data: bytes | str) -> dict[str, str]:
    """Parse a prediction file: one JSON object per line with fields
    ``id`` and ``response``. Later duplicates win."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    out: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        row = json.loads(line)
        out[str(row["id"])] = str(row["response"])
    return out


def dump_predictions(predictions: Iterable[Prediction]) -> bytes:
    lines = [
        json.dumps({"id": p.record_id, "response": p.raw_response}, ensure_ascii=False)
        for p in predictions
    ]
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Primitive metrics


def tokenize(text: str) -> list[str]:
    return re.findall(r"[a-z0-9]+", text.lower())


def lcs_length(a: list, b: list) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[len(b)]


def score_numeric(
    pred: str, gold: str, alternates: tuple[str, ...] = (), tolerant: bool = False
) -> str:
    """'correct', 'incorrect', or 'unparsable' (no number in the response)."""
    p = parse_number(pred)
    if p is None:
        return "unparsable"
    for form in (gold, *alternates):
        g = parse_number(form)
        if g is None:
            continue
        if tolerant:
            if g == 0:
                if p == 0:
                    return "correct"
            elif abs(p - g) <= NUMERIC_TOLERANCE * abs(g):
                return "correct"
        elif p == g:
            return "correct"
    return "incorrect"


def _contains_token_boundary(haystack: str, needle: str) -> bool:
    pattern = r"(?<![a-z0-9])" + re.escape(needle) + r"(?![a-z0-9])"
    return re.search(pattern, haystack) is not None


def score_phrase(pred: str, gold: str, alternates: tuple[str, ...] = ()) -> bool:
    """Correct iff any gold form equals the canonical prediction or appears
    in it as a token-boundary substring."""
    canon_pred = canonicalize(pred)
    for form in (gold, *alternates):
        canon_gold = canonicalize(form)
        if not canon_gold:
            continue
        if canon_pred == canon_gold or _contains_token_boundary(canon_pred, canon_gold):
            return True
    return False


def score_sentence(pred: str, gold: str) -> float:
    """Token-level Rouge-L F-score with beta = 1."""
    pred_tokens = tokenize(pred)
    gold_tokens = tokenize(gold)
    if not pred_tokens or not gold_tokens:
        return 0.0
    lcs = lcs_length(pred_tokens, gold_tokens)
    if lcs == 0:
        return 0.0
    precision = lcs / len(pred_tokens)
    recall = lcs / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def extract_landmarks(pred_raw: str, vocabulary: Iterable[str]) -> list[str]:
    """Gold-vocabulary names found in the response, ordered by first
    occurrence (each name counted once)."""
    lowered = pred_raw.lower()
    hits: list[tuple[int, str]] = []
    for name in vocabulary:
        m = re.search(r"(?<![a-z0-9])" + re.escape(name.lower()) + r"(?![a-z0-9])", lowered)
        if m:
            hits.append((m.start(), name))
    hits.sort()
    return [name for _, name in hits]


def score_landmarks(pred_raw: str, gold_sequence: list[str] | tuple[str, ...],
                    mode: str = "lcs") -> float:
    """Landmark Coverage Rate in [0, 1]."""
    gold = list(gold_sequence)
    if not gold:
        raise ValueError("gold landmark sequence must be non-empty")
    pred_seq = extract_landmarks(pred_raw, gold)
    if mode == "lcs":
        matched = lcs_length(pred_seq, gold)
    elif mode == "greedy":
        matched = 0
        for name in pred_seq:
            if matched < len(gold) and name == gold[matched]:
                matched += 1
    else:
        raise ValueError(f"unknown landmark mode {mode!r}")
    return matched / len(gold)


# ---------------------------------------------------------------------------
# Aggregation


@dataclass
class ScenarioScore:
    gold: int = 0
    scored: int = 0
    missing: int = 0
    unparsable: int = 0
    accuracy_points: float = 0.0  # sum of per-record scores in [0, 1]
    accuracy_n: int = 0  # non-sentence records
    rouge_sum: float = 0.0
    rouge_n: int = 0
    lcr_sum: float = 0.0
    lcr_n: int = 0

    @property
    def accuracy(self) -> float | None:
        if self.accuracy_n == 0:
            return None
        return 100.0 * self.accuracy_points / self.accuracy_n

    @property
    def rouge_mean(self) -> float | None:
        return self.rouge_sum / self.rouge_n if self.rouge_n else None

    @property
    def lcr_mean_pct(self) -> float | None:
        return 100.0 * self.lcr_sum / self.lcr_n if self.lcr_n else None


@dataclass
class ScoreReport:
    per_scenario: dict[str, ScenarioScore] = field(default_factory=dict)
    per_question_type: dict[str, tuple[float, int]] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, int]:
        return {
            "gold": sum(s.gold for s in self.per_scenario.values()),
            "scored": sum(s.scored for s in self.per_scenario.values()),
            "missing": sum(s.missing for s in self.per_scenario.values()),
            "unparsable": sum(s.unparsable for s in self.per_scenario.values()),
        }

    @property
    def overall_accuracy(self) -> float | None:
        n = sum(s.accuracy_n for s in self.per_scenario.values())
        if n == 0:
            return None
        points = sum(s.accuracy_points for s in self.per_scenario.values())
        return 100.0 * points / n

    @property
    def sentence_rouge_mean(self) -> float | None:
        n = sum(s.rouge_n for s in self.per_scenario.values())
        if n == 0:
            return None
        return sum(s.rouge_sum for s in self.per_scenario.values()) / n

    @property
    def map_lcr_mean_pct(self) -> float | None:
        n = sum(s.lcr_n for s in self.per_scenario.values())
        if n == 0:
            return None
        return 100.0 * sum(s.lcr_sum for s in self.per_scenario.values()) / n

    def to_json(self) -> str:
        body = {
            "counts": self.counts,
            "overall_accuracy": _round(self.overall_accuracy),
            "sentence_rouge_mean": _round(self.sentence_rouge_mean, 4),
            "map_lcr_mean_pct": _round(self.map_lcr_mean_pct),
            "per_scenario": {
                name: {
                    "gold": s.gold,
                    "scored": s.scored,
                    "missing": s.missing,
                    "unparsable": s.unparsable,
                    "accuracy": _round(s.accuracy),
                    "rouge_mean": _round(s.rouge_mean, 4),
                    "lcr_mean_pct": _round(s.lcr_mean_pct),
                }
                for name, s in sorted(self.per_scenario.items())
            },
            "per_question_type": {
                qt: {"accuracy": _round(100.0 * pts / n), "records": n}
                for qt, (pts, n) in sorted(self.per_question_type.items())
            },
        }
        return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False)


def _round(v: float | None, digits: int = 2) -> float | None:
    return None if v is None else round(v, digits)


def score_record(record: InstructionRecord, raw: str) -> tuple[float, str]:
    """(score in [0,1], status) for one prediction against one record."""
    if record.answer_kind == "numeric":
        verdict = score_numeric(raw, record.answer, record.alternates,
                                tolerant=record.scenario in TOLERANT_SCENARIOS)
        if verdict == "unparsable":
            return 0.0, "unparsable"
        return (1.0 if verdict == "correct" else 0.0), "scored"
    if record.answer_kind in ("phrase", "choice"):
        return (1.0 if score_phrase(raw, record.answer, record.alternates) else 0.0), "scored"
    if record.answer_kind == "sentence":
        return score_sentence(raw, record.answer), "scored"
    if record.answer_kind == "landmark_sequence":
        gold_seq = [n.strip() for n in record.answer.split(",")]
        return score_landmarks(raw, gold_seq), "scored"
    raise ValueError(f"unknown answer kind {record.answer_kind!r}")


def aggregate(manifest: Manifest, predictions: dict[str, str]) -> ScoreReport:
    """Score a prediction map against every record of the gold manifest.

    Missing and unparsable predictions score zero and are tallied
    separately; scored + missing + unparsable = gold record count.
    """
    report = ScoreReport()
    for record in manifest.records:
        s = report.per_scenario.setdefault(record.scenario, ScenarioScore())
        s.gold += 1
        raw = predictions.get(record.id)
        if raw is None:
            s.missing += 1
            score, status = 0.0, "missing"
        else:
            score, status = score_record(record, raw)
            if status == "unparsable":
                s.unparsable += 1
            else:
                s.scored += 1
        if record.answer_kind == "sentence":
            s.rouge_sum += score
            s.rouge_n += 1
        else:
            s.accuracy_points += score
            s.accuracy_n += 1
            pts, n = report.per_question_type.get(record.question_type, (0.0, 0))
            report.per_question_type[record.question_type] = (pts + score, n + 1)
        if record.answer_kind == "landmark_sequence":
            s.lcr_sum += score
            s.lcr_n += 1
    return report


def render_report_text(report: ScoreReport) -> str:
    lines = [
        f"{'scenario':<16}{'gold':>6}{'scored':>8}{'miss':>6}{'unpar':>7}"
        f"{'acc%':>8}{'rouge':>8}{'lcr%':>7}",
        "-" * 66,
    ]
    for name, s in sorted(report.per_scenario.items()):
        acc = f"{s.accuracy:.1f}" if s.accuracy is not None else "-"
        rouge = f"{s.rouge_mean:.3f}" if s.rouge_mean is not None else "-"
        lcr = f"{s.lcr_mean_pct:.1f}" if s.lcr_mean_pct is not None else "-"
        lines.append(f"{name:<16}{s.gold:>6}{s.scored:>8}{s.missing:>6}"
                     f"{s.unparsable:>7}{acc:>8}{rouge:>8}{lcr:>7}")
    lines.append("-" * 66)
    counts = report.counts
    overall = f"{report.overall_accuracy:.1f}" if report.overall_accuracy is not None else "-"
    lines.append(f"overall accuracy {overall}%  gold {counts['gold']}  "
                 f"scored {counts['scored']}  missing {counts['missing']}  "
                 f"unparsable {counts['unparsable']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Dataset statistics


def dataset_stats(manifest: Manifest) -> dict:
    """Recounted statistics: per scenario (images + records), question type,
    difficulty, and split."""
    per_scenario = manifest.stats()
    by_type: dict[str, int] = {}
    by_difficulty: dict[str, int] = {}
    by_split: dict[str, int] = {}
    for r in manifest.records:
        by_type[r.question_type] = by_type.get(r.question_type, 0) + 1
        if r.difficulty is not None:
            key = f"level_{r.difficulty}"
            by_difficulty[key] = by_difficulty.get(key, 0) + 1
        by_split[r.split] = by_split.get(r.split, 0) + 1
    return {
        "records": len(manifest.records),
        "images": sum(v["images"] for v in per_scenario.values()),
        "per_scenario": {k: dict(v) for k, v in sorted(per_scenario.items())},
        "per_question_type": dict(sorted(by_type.items())),
        "per_difficulty": dict(sorted(by_difficulty.items())),
        "per_split": dict(sorted(by_split.items())),
    }
