"""Command-line toolkit: validate, run, compare and grade.

Exit codes: 0 on success, 1 on validation failure, 2 on parse error.
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import ParseError, PipelineConfig, ingest, run_pipeline
from .report import STAGES, emit, polar
from .urgency import grade_label


def _load_config(args) -> PipelineConfig:
    if getattr(args, "config", None):
        return PipelineConfig.from_file(args.config)
    return PipelineConfig()


def _cmd_validate(args) -> int:
    config = _load_config(args)
    records = ingest(args.evidence_file, config)
    print(f"{args.evidence_file}: ok ({len(records)} evidences)")
    for record in records:
        body_total = record.timed.to_qbpa().total_classic()
        rel_total = record.reliability.total_classic()
        print(
            f"  {record.evidence_id}: {len(record.timed.propositions)} propositions, "
            f"mass total {body_total:.5f}, reliability total {rel_total:.5f}, "
            f"urgency {record.urgency.exponent:g} ({record.urgency.label})"
        )
        for warning in record.warnings:
            print(f"  warning: {warning}")
    return 0


def _cmd_run(args) -> int:
    config = _load_config(args)
    records = ingest(args.evidence_file, config)
    report = run_pipeline(records, config)
    fmt = args.format or config.output_format
    print(emit(report, fmt, args.stage), end="")
    return 0


def _cmd_compare(args) -> int:
    config = _load_config(args)
    records = ingest(args.evidence_file, config)
    if len(records) < 2:
        raise ValueError("comparison needs at least 2 evidences")
    report = run_pipeline(records, config)
    assert report.baseline is not None
    frame = report.final.fin.frame
    print(f"comparison for {args.evidence_file} ({len(records)} evidences)")
    header = f"{'focal':<12}{'improved':>20}{'classic':>12}{'baseline':>20}{'classic':>12}"
    print(header)
    keys = sorted(
        set(report.final.fin.masses) | set(report.baseline.masses), key=frame.sort_key
    )
    for focal in keys:
        improved = report.final.fin.amplitude(focal)
        base = report.baseline.amplitude(focal)
        print(
            f"{{{focal}}}".ljust(12)
            + f"{polar(improved.magnitude, improved.phase):>20}"
            + f"{improved.classic:>12.6g}"
            + f"{polar(base.magnitude, base.phase):>20}"
            + f"{base.classic:>12.6g}"
        )
    return 0


def _cmd_grade(args) -> int:
    print(grade_label(args.exponent))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfuse",
        description="Fuse complex-amplitude evidence bodies with time, reliability and urgency weighting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse and validate an evidence file")
    p_validate.add_argument("evidence_file")
    p_validate.add_argument("--config")
    p_validate.set_defaults(func=_cmd_validate)

    p_run = sub.add_parser("run", help="run the full pipeline")
    p_run.add_argument("evidence_file")
    p_run.add_argument("--config")
    p_run.add_argument("--format", choices=("table", "csv", "json"))
    p_run.add_argument("--stage", choices=STAGES)
    p_run.set_defaults(func=_cmd_run)

    p_compare = sub.add_parser("compare", help="pipeline vs plain combination")
    p_compare.add_argument("evidence_file")
    p_compare.add_argument("--config")
    p_compare.set_defaults(func=_cmd_compare)

    p_grade = sub.add_parser("grade", help="urgency band for an exponent")
    p_grade.add_argument("exponent", type=float)
    p_grade.set_defaults(func=_cmd_grade)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
