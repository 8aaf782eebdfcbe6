"""LLM bridge: templates, contracts, retries, fallback, self-consistency."""

import threading
import time

import pytest

from absynth import bridge
from absynth.bridge import (
    BackendConfig, BackendUnavailable, ContractViolation, TEMPLATES, offline_transport,
    parse_output, parse_tree, propose, self_consistent_answer, serialize_tree,
)
from absynth.diagrams import TreeSpec, tree_layers, tree_nodes


def test_templates_render_and_demand_contract():
    prompt = TEMPLATES["data"].render({"topic": "Digital Forensics Unit"})
    assert "Digital Forensics Unit" in prompt
    assert "Output format" in prompt


def test_unbound_placeholder_raises():
    with pytest.raises(ValueError, match="unbound placeholder"):
        TEMPLATES["data"].render({})


def test_offline_data_stage_yields_valid_tree():
    spec = propose("data", {"topic": "Digital Forensics Unit"})
    assert isinstance(spec, TreeSpec)
    assert spec.root_label == "Digital Forensics Unit"
    assert len(tree_nodes(spec.root)) <= 8
    for layer in tree_layers(spec.root):
        assert len(layer) <= 3


def test_offline_fallback_is_deterministic_and_networkless():
    first = propose("data", {"topic": "Regional Hospital"})
    second = propose("data", {"topic": "Regional Hospital"})
    assert first == second


def test_offline_idea_and_title():
    idea = propose("idea", {"scenario": "road map"})
    assert "road map" in idea
    title = propose("title", {"topic": "GDP"})
    assert title == "GDP"


def test_offline_qa_stage():
    pairs = propose("qa", {"topic": "City Public Library"})
    assert pairs and all({"question", "answer"} <= set(p) for p in pairs)


def test_tree_serialization_round_trip():
    spec = propose("data", {"topic": "Culinary School"})
    assert parse_tree(serialize_tree(spec)) == spec


def test_malformed_reply_reprompts_once_then_raises():
    calls = []

    def broken(payload):
        calls.append(payload["prompt"])
        return "complete nonsense"

    with pytest.raises(ContractViolation) as err:
        propose("title", {"topic": "x"}, transport=broken)
    assert len(calls) == 2
    assert "could not be parsed" in calls[1]
    assert err.value.raw == "complete nonsense"


def test_malformed_then_fixed_reply_succeeds():
    replies = iter(["garbage", "title: Fixed"])

    def flaky(payload):
        return next(replies)

    assert propose("title", {"topic": "x"}, transport=flaky) == "Fixed"


def test_backend_retries_with_backoff(monkeypatch):
    sleeps = []
    monkeypatch.setattr(bridge, "_sleep", sleeps.append)
    attempts = []

    def down(payload):
        attempts.append(1)
        raise BackendUnavailable("boom")

    config = BackendConfig(retry_budget=2)
    with pytest.raises(BackendUnavailable, match="after 3 attempts"):
        propose("title", {"topic": "x"}, config=config, transport=down)
    assert len(attempts) == 3
    assert sleeps == [0.2, 0.4]


def test_parse_tree_rejects_constraint_violations():
    lines = [f"node: N{i} | parent: {'-' if i == 0 else 'N0'} | color: cyan"
             for i in range(9)]
    with pytest.raises(ContractViolation, match="constraints"):
        parse_tree("\n".join(lines))


def test_parse_output_answer_stage():
    assert parse_output("answer", "thinking...\nanswer: 42") == "42"
    with pytest.raises(ContractViolation):
        parse_output("answer", "no answer here")


def test_self_consistent_answer_votes():
    replies = iter(["answer: 30", "answer: 30", "answer: 29"])
    lock = threading.Lock()

    def fake(payload):
        with lock:
            return next(replies)

    config = BackendConfig(max_parallel=1)
    answer, support = self_consistent_answer("total?", {}, 3, config, fake)
    assert (answer, support) == ("30", 2)


def test_self_consistent_unanimous():
    def fake(payload):
        return "answer: yes"

    answer, support = self_consistent_answer("q", {}, 5, BackendConfig(), fake)
    assert (answer, support) == ("yes", 5)


def test_all_distinct_support_one():
    def fake(payload):
        return f"answer: v{payload['request_id']}"

    answer, support = self_consistent_answer("q", {}, 3, BackendConfig(), fake)
    assert support == 1
    assert answer == "v0"  # deterministic despite any completion order


def test_parallelism_never_exceeds_configured_bound():
    active = 0
    peak = 0
    lock = threading.Lock()

    def slow(payload):
        nonlocal active, peak
        with lock:
            active += 1
            peak = max(peak, active)
        time.sleep(0.02)
        with lock:
            active -= 1
        return f"answer: {payload['request_id']}"

    config = BackendConfig(max_parallel=2)
    self_consistent_answer("q", {}, 8, config, slow)
    assert peak <= 2


def test_request_log_written(tmp_path):
    log = tmp_path / "requests.jsonl"
    config = BackendConfig(request_log=str(log))
    propose("title", {"topic": "x"}, config=config)
    assert log.exists()
    assert '"stage": "title"' in log.read_text()


def test_offline_transport_never_needs_network():
    # The offline transport is pure computation; calling it many times with
    # the same payload yields identical bytes.
    send = offline_transport()
    payload = {"stage": "qa", "prompt": "p", "context": {"topic": "t"}, "request_id": 1}
    assert send(payload) == send(payload)


def test_parse_tree_rejects_multiple_or_missing_roots():
    two_roots = "node: A | parent: - | color: cyan\nnode: B | parent: - | color: teal"
    with pytest.raises(ContractViolation, match="multiple roots"):
        parse_tree(two_roots)
    no_root = "node: A | parent: B | color: cyan"
    with pytest.raises(ContractViolation, match="no root"):
        parse_tree(no_root)
