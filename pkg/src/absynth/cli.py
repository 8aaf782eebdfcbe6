"""Command-line entry point: gen, eval, stats, gallery.

All commands are deterministic for a fixed --seed and config; `gen` prints
per-scenario accepted/rejected counts, `eval` writes report.json/report.txt,
`stats` writes stats.json/stats.txt, and `gallery` emits a static HTML page
referencing images relatively.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bridge import BackendConfig
from .gallery import render_gallery
from .gate import GateConfig
from .pipeline import RunConfig, generate_dataset, write_outputs
from .records import SCENARIOS, SchemaMismatch, load_manifest
from .scoring import aggregate, dataset_stats, load_predictions, render_report_text


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = _read_json(args.config) if args.config else {}
    scenarios: tuple[str, ...]
    if args.all:
        scenarios = SCENARIOS
    elif args.scenario:
        scenarios = tuple(args.scenario)
    elif "scenarios" in file_cfg:
        scenarios = tuple(file_cfg["scenarios"])
    else:
        scenarios = SCENARIOS
    gate_cfg = GateConfig(**file_cfg.get("gate", {}))
    backend = None
    if args.backend:
        backend = BackendConfig(**_read_json(args.backend))
    elif "backend" in file_cfg:
        backend = BackendConfig(**file_cfg["backend"])
    config = RunConfig(
        scenarios=scenarios,
        counts=dict(file_cfg.get("counts", {})),
        default_count=args.count if args.count is not None
        else int(file_cfg.get("default_count", 10)),
        seed=args.seed if args.seed is not None else int(file_cfg.get("seed", 0)),
        out_dir=args.out or file_cfg.get("out", "out"),
        jobs=args.jobs if args.jobs is not None else int(file_cfg.get("jobs", 1)),
        gate=gate_cfg,
        questions_per_image=int(file_cfg.get("questions_per_image", 5)),
        train_fraction=float(file_cfg.get("train_fraction", 0.0)),
        backend=backend,
    )
    config.validate()
    return config


def cmd_gen(args: argparse.Namespace) -> int:
    config = _load_run_config(args)
    if args.dry_run:
        plan = {s: config.count_for(s) for s in config.scenarios}
        print(f"dry run: seed {config.seed}, out {config.out_dir!r}, "
              f"jobs {config.jobs}, images per scenario {plan}")
        return 0
    manifest, report, images = generate_dataset(config)
    paths = write_outputs(config.out_dir, manifest, report, images,
                          review_fraction=config.gate.review_fraction, seed=config.seed)
    by_scenario: dict[str, list[int]] = {}
    for cid, outcome in report.outcomes.items():
        scenario = cid.rsplit("-", 2)[0] if cid.count("-") >= 2 else cid.rsplit("-", 1)[0]
        acc, rej = by_scenario.setdefault(scenario, [0, 0])
        if outcome is None:
            by_scenario[scenario][0] = acc + 1
        else:
            by_scenario[scenario][1] = rej + 1
    stats = manifest.stats()
    for scenario in config.scenarios:
        accepted, rejected = by_scenario.get(scenario, [0, 0])
        records = stats.get(scenario, {}).get("records", 0)
        print(f"{scenario:<16} images accepted {accepted:>4}  rejected {rejected:>3}  "
              f"records {records:>5}")
    print(f"wrote {paths['manifest']} ({len(manifest.records)} records) and "
          f"{len(images)} images")
    return 0


def _load_manifest_file(path: str):
    if not os.path.exists(path):
        raise FileNotFoundError(f"manifest not found: {path}")
    with open(path, "rb") as fh:
        return load_manifest(fh.read())


def cmd_eval(args: argparse.Namespace) -> int:
    manifest = _load_manifest_file(args.gold)
    if not os.path.exists(args.predictions):
        raise FileNotFoundError(f"prediction file not found: {args.predictions}")
    with open(args.predictions, "rb") as fh:
        predictions = load_predictions(fh.read())
    report = aggregate(manifest, predictions)
    out_dir = args.out or os.path.dirname(os.path.abspath(args.predictions))
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, "report.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    text = render_report_text(report)
    with open(os.path.join(out_dir, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(text, end="")
    print(f"wrote {json_path}")
    missing = report.counts["missing"]
    if args.max_missing is not None and missing > args.max_missing:
        print(f"error: {missing} predictions missing exceeds --max-missing "
              f"{args.max_missing}", file=sys.stderr)
        return 2
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    manifest = _load_manifest_file(args.manifest)
    stats = dataset_stats(manifest)
    out_dir = args.out or os.path.dirname(os.path.abspath(args.manifest))
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, "stats.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(stats, fh, indent=2, sort_keys=True)
        fh.write("\n")
    lines = [f"records {stats['records']}  images {stats['images']}"]
    for scenario, counts in stats["per_scenario"].items():
        lines.append(f"  {scenario:<16} images {counts['images']:>5}  "
                     f"records {counts['records']:>6}")
    text = "\n".join(lines) + "\n"
    with open(os.path.join(out_dir, "stats.txt"), "w", encoding="utf-8") as fh:
        fh.write(text)
    print(text, end="")
    print(f"wrote {json_path}")
    return 0


def cmd_gallery(args: argparse.Namespace) -> int:
    manifest = _load_manifest_file(args.manifest)
    out_path = args.out or os.path.join(
        os.path.dirname(os.path.abspath(args.manifest)), "gallery.html")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(render_gallery(manifest))
    print(f"wrote {out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absynth",
        description="Generate abstract-image instruction datasets and score predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate images, records, and gate report")
    gen.add_argument("--scenario", action="append", choices=SCENARIOS,
                     help="scenario to generate (repeatable)")
    gen.add_argument("--all", action="store_true", help="generate every scenario")
    gen.add_argument("--count", type=int, default=None,
                     help="images per scenario (default 10)")
    gen.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    gen.add_argument("--out", default=None, help="output directory (default ./out)")
    gen.add_argument("--jobs", type=int, default=None, help="parallel workers")
    gen.add_argument("--config", default=None, help="JSON run-config file")
    gen.add_argument("--backend", default=None, help="JSON backend-config file")
    gen.add_argument("--dry-run", action="store_true",
                     help="validate configuration without writing")
    gen.set_defaults(func=cmd_gen)

    ev = sub.add_parser("eval", help="score a prediction file against a gold manifest")
    ev.add_argument("gold", help="gold manifest (.jsonl)")
    ev.add_argument("predictions", help="prediction file (.jsonl with id/response)")
    ev.add_argument("--out", default=None, help="directory for report files")
    ev.add_argument("--max-missing", type=int, default=None,
                    help="exit nonzero when more predictions are missing")
    ev.set_defaults(func=cmd_eval)

    st = sub.add_parser("stats", help="dataset statistics for a manifest")
    st.add_argument("manifest")
    st.add_argument("--out", default=None)
    st.set_defaults(func=cmd_stats)

    ga = sub.add_parser("gallery", help="emit a static HTML gallery")
    ga.add_argument("manifest")
    ga.add_argument("--out", default=None, help="output HTML path")
    ga.set_defaults(func=cmd_gallery)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, SchemaMismatch, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
