"""Instruction records: canonicalization, verification, voting, manifests."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

import absynth  # noqa: F401  (registers the scenario generators)
from absynth.charts import chart_questions, sample_chart_spec
from absynth.gauges import GEOMETRIES, SCALES, DialSpec
from absynth.maps import generate_map, map_instruction
from absynth.records import (
    InstructionRecord, Manifest, Provenance, UnknownGenerator, canonicalize,
    dump_manifest, load_manifest, parse_number, record_from_json, record_to_json,
    sample_for_review, validate_record, verify_record, vote_select,
)


def make_record(i=0, scenario="chart", answer="30", kind="numeric", qtype="extraction",
                question="What is the value of 'B'?", alternates=(), rationale=None,
                split="test"):
    return InstructionRecord(
        id=f"{scenario}-{i:05d}-q00",
        scenario=scenario,
        image_ref=f"images/{scenario}/{scenario}-{i:05d}.svg",
        question=question,
        answer=answer,
        answer_kind=kind,
        question_type=qtype,
        alternates=tuple(alternates),
        rationale=rationale,
        split=split,
        provenance=Provenance("chart-gen", i),
    )


# -- canonicalization -------------------------------------------------------


def test_canonicalize_trims_and_casefolds():
    assert canonicalize("  Organization CHART  ") == "organization chart"


def test_canonicalize_normalizes_pm_times():
    assert canonicalize("4:10 PM") == "16:10"
    assert canonicalize("4:10pm") == "16:10"
    assert canonicalize("12:05 am") == "0:05"
    assert canonicalize("16:10") == "16:10"
    assert canonicalize("4:10") == "4:10"


def test_canonicalize_numeric_strips_units():
    assert canonicalize("57 units", "numeric") == "57"
    assert canonicalize("$1,200", "numeric") == "1200"
    assert canonicalize("about 30.50", "numeric") == "30.5"


def test_parse_number_takes_last():
    assert parse_number("first 3 then 42, so the answer is 7") == 7.0
    assert parse_number("no digits here") is None
    assert parse_number("-12.5 then -3") == -3.0


@given(st.text(max_size=60))
def test_canonicalize_idempotent(s):
    once = canonicalize(s)
    assert canonicalize(once) == once


# -- record validation ------------------------------------------------------


def test_numeric_answer_must_parse():
    rec = make_record(answer="not-a-number")
    assert any("does not parse" in p for p in validate_record(rec))
    assert validate_record(make_record(answer="42.5")) == []


def test_landmark_sequence_unique_names():
    ok = make_record(answer="Oak, Pine, Elm", kind="landmark_sequence", qtype="navigation")
    assert validate_record(ok) == []
    dup = make_record(answer="Oak, Oak", kind="landmark_sequence", qtype="navigation")
    assert validate_record(dup)


def test_math_records_require_rationale():
    missing = make_record(qtype="math")
    assert any("rationale" in p for p in validate_record(missing))
    assert validate_record(make_record(qtype="math", rationale="because 40 - 10 = 30")) == []


# -- verification -----------------------------------------------------------


def test_verify_record_ok_for_generated_chart_answers():
    spec = sample_chart_spec(3, kind="pie")
    for i, draft in enumerate(chart_questions(spec)):
        rec = InstructionRecord(
            id=f"chart-00003-q{i:02d}", scenario="chart", image_ref="images/chart/x.svg",
            question=draft.question, answer=draft.answer, answer_kind=draft.answer_kind,
            question_type=draft.question_type, alternates=draft.alternates,
            rationale=draft.rationale, provenance=Provenance("chart-gen", 3),
        )
        assert verify_record(rec, spec)


def test_verify_record_detects_tampering():
    spec = sample_chart_spec(3, kind="pie")
    draft = next(d for d in chart_questions(spec) if d.question_type == "math")
    tampered = str(float(draft.answer) + 1)
    rec = InstructionRecord(
        id="chart-00003-q04", scenario="chart", image_ref="images/chart/x.svg",
        question=draft.question, answer=tampered, answer_kind="numeric",
        question_type="math", rationale=draft.rationale,
        provenance=Provenance("chart-gen", 3),
    )
    verdict = verify_record(rec, spec)
    assert not verdict.ok
    assert draft.answer in verdict.details and tampered.rstrip("0").rstrip(".") in verdict.details


def test_verify_clock_alternates_accepted():
    spec = DialSpec("clock", (8, 10), SCALES["clock"], GEOMETRIES["clock"], 8.0, 1.5)
    from absynth.gauges import dial_questions
    draft = next(d for d in dial_questions(spec) if d.question_type == "offset_math")
    rec = InstructionRecord(
        id="dashboard-00000-q01", scenario="dashboard", image_ref="images/dashboard/x.svg",
        question=draft.question, answer="4:10 PM", answer_kind="phrase",
        question_type="offset_math", alternates=("4:10",), rationale=draft.rationale,
        provenance=Provenance("gauge-gen", 0),
    )
    assert verify_record(rec, spec)


def test_verify_unknown_generator():
    rec = make_record()
    rec = InstructionRecord(**{**rec.__dict__, "provenance": Provenance("nope", 0)})
    with pytest.raises(UnknownGenerator):
        verify_record(rec, sample_chart_spec(0))


def test_verify_map_instruction():
    spec = generate_map(9)
    draft = map_instruction(spec)
    rec = InstructionRecord(
        id="map-00009-q00", scenario="map", image_ref="images/map/x.svg",
        question=draft.question, answer=draft.answer, answer_kind="landmark_sequence",
        question_type="navigation", rationale=draft.rationale,
        provenance=Provenance("map-gen", 9),
    )
    assert verify_record(rec, spec)


# -- voting -----------------------------------------------------------------


def test_vote_majority():
    assert vote_select(["8:10", "8:10", "10:10"]) == ("8:10", 2)


def test_vote_unanimous():
    assert vote_select(["30", "30", "30", "30"]) == ("30", 4)


def test_vote_all_distinct_first_wins():
    assert vote_select(["a", "b", "c"]) == ("a", 1)


def test_vote_canonicalizes_before_counting():
    winner, support = vote_select(["16:10", "4:10 PM", "9:00"])
    assert winner == "16:10"
    assert support == 2


def test_vote_requires_three():
    with pytest.raises(ValueError):
        vote_select(["x", "y"])


def test_vote_reorder_invariant_without_ties():
    candidates = ["30", "30", "29", "30", "29"]
    winner, support = vote_select(candidates)
    assert (winner, support) == ("30", 3)
    assert vote_select(list(reversed(candidates))) == ("30", 3)


# -- manifest ---------------------------------------------------------------


def sample_manifest(n_chart=5, n_map=3):
    records = [make_record(i) for i in range(n_chart)]
    records += [
        InstructionRecord(
            id=f"map-{i:05d}-q00", scenario="map", image_ref=f"images/map/map-{i:05d}.svg",
            question="Plan a route.", answer="Oak, Pine", answer_kind="landmark_sequence",
            question_type="navigation", provenance=Provenance("map-gen", i),
        )
        for i in range(n_map)
    ]
    return Manifest(records=records)


def test_manifest_round_trip():
    manifest = sample_manifest()
    data = dump_manifest(manifest)
    again = load_manifest(data)
    assert again.records == manifest.records
    assert dump_manifest(again) == data


def test_manifest_duplicate_ids_rejected():
    manifest = Manifest(records=[make_record(1), make_record(1)])
    with pytest.raises(ValueError, match="duplicate"):
        dump_manifest(manifest)


def test_manifest_stats_recount():
    manifest = sample_manifest(5, 3)
    stats = manifest.stats()
    assert stats["chart"] == {"records": 5, "images": 5}
    assert stats["map"] == {"records": 3, "images": 3}


def test_record_json_round_trip():
    rec = make_record(7, alternates=("a", "b"), rationale="why")
    assert record_from_json(record_to_json(rec)) == rec


def test_sample_for_review_sizes():
    manifest = sample_manifest(100, 1)
    ids = sample_for_review(manifest, 0.10, seed=4)
    chart_ids = [i for i in ids if i.startswith("chart")]
    map_ids = [i for i in ids if i.startswith("map")]
    assert len(chart_ids) == 10  # ceil(0.10 * 100)
    assert len(map_ids) == 1  # ceil(0.10 * 1)
    assert sample_for_review(manifest, 0.10, seed=4) == ids
    assert sample_for_review(manifest, 0.10, seed=5) != ids


def test_empty_manifest_file_is_schema_error():
    from absynth.records import SchemaMismatch
    with pytest.raises(SchemaMismatch):
        load_manifest(b"")
    with pytest.raises(SchemaMismatch):
        load_manifest(b'{"not": "a header"}\n')


def test_vote_select_numeric_kind_strips_units():
    assert vote_select(["30 units", "$30", "29"], kind="numeric") == ("30 units", 2)
