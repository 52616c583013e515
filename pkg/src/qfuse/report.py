"""Rendering of run reports as text tables, CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

STAGES = ("time", "reliability", "tdqbf", "final")


def polar(mag: float, phase: float) -> str:
    """Four-decimal polar print, matching the report precision."""
    return f"{mag:.4f}∠{phase:.4f}"


def emit(report: Any, fmt: str = "table", stage: str | None = None) -> str:
    """Render a run report (or its dict form) in the requested format.

    ``stage`` restricts the output to one stage: time, reliability, tdqbf
    or final (final includes the baseline comparison).  JSON output is
    canonical (sorted keys, compact separators), so rendering a parsed
    report again is byte-identical.
    """
    data = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    if stage is not None:
        if stage not in STAGES:
            raise ValueError(f"unknown stage {stage!r}; expected one of {STAGES}")
        data = _filter_stage(data, stage)
    if fmt == "json":
        return _emit_json(data)
    if fmt == "csv":
        return _emit_csv(data)
    if fmt == "table":
        return _emit_table(data)
    raise ValueError(f"unknown format {fmt!r}; expected table, csv or json")


def _filter_stage(data: Mapping[str, Any], stage: str) -> dict[str, Any]:
    trimmed: dict[str, Any] = {
        "config": data.get("config"),
        "warnings": data.get("warnings", []),
    }
    if stage == "final":
        trimmed["final"] = data.get("final")
        trimmed["baseline"] = data.get("baseline")
        return trimmed
    trimmed["evidences"] = [
        {
            "id": entry.get("id"),
            "urgency": entry.get("urgency"),
            "stages": {stage: entry.get("stages", {}).get(stage)},
        }
        for entry in data.get("evidences", [])
    ]
    return trimmed


def _emit_json(data: Mapping[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _amp_rows(body: Mapping[str, Mapping[str, float]]):
    for focal, value in body.items():
        yield focal, value["mag"], value["phase"], value["mag"] ** 2


def _emit_csv(data: Mapping[str, Any]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["stage", "evidence", "focal", "magnitude", "phase", "classic"])

    def write_body(stage: str, evidence: str, body: Mapping[str, Any] | None):
        if not body:
            return
        for focal, mag, phase, classic in _amp_rows(body):
            writer.writerow([stage, evidence, focal, f"{mag:.10g}", f"{phase:.10g}", f"{classic:.10g}"])

    for entry in data.get("evidences", []):
        evidence = entry.get("id", "?")
        stages = entry.get("stages", {})
        if "input" in stages and stages["input"]:
            write_body("input", evidence, stages["input"].get("body"))
        if "time" in stages and stages["time"]:
            write_body("time", evidence, stages["time"].get("body"))
        if "reliability" in stages and stages["reliability"]:
            write_body("reliability", evidence, stages["reliability"].get("body"))
        if "tdqbf" in stages and stages["tdqbf"]:
            write_body("tdqbf_raw", evidence, stages["tdqbf"].get("raw"))
            write_body("tdqbf_normalized", evidence, stages["tdqbf"].get("normalized"))
    final = data.get("final")
    if final:
        write_body("final_nor", "all", final.get("nor"))
        write_body("final", "all", final.get("fin"))
    baseline = data.get("baseline")
    if baseline:
        write_body("baseline", "all", baseline.get("body"))
    return buffer.getvalue()


def _table_section(lines: list[str], title: str, body: Mapping[str, Any], classic: Mapping[str, float] | None = None):
    lines.append(title)
    for focal, mag, phase, squared in _amp_rows(body):
        value = classic.get(focal, squared) if classic is not None else squared
        lines.append(f"  {{{focal}}}".ljust(14) + f"{polar(mag, phase):>18}    classic {value:.6g}")


def _emit_table(data: Mapping[str, Any]) -> str:
    lines: list[str] = []
    config = data.get("config")
    if config:
        upsilon = config.get("upsilon", {})
        policy = config.get("interval_policy", {})
        lines.append("== configuration ==")
        lines.append(
            "  connection grades: strong {strong:g}, moderate {moderate:g}, weak {weak:g}".format(
                **upsilon
            )
        )
        lines.append(f"  interval policy: {policy.get('mode')}"
                     + (f" bounds {policy.get('bounds')}" if policy.get("bounds") else ""))
        lines.append(f"  mass tolerance: {config.get('tolerance'):g}")
    for warning in data.get("warnings", []):
        lines.append(f"  warning: {warning}")
    for entry in data.get("evidences", []):
        urgency = entry.get("urgency", {})
        lines.append("")
        lines.append(
            f"== evidence {entry.get('id')} "
            f"(urgency {urgency.get('exponent')}: {urgency.get('label')}) =="
        )
        stages = entry.get("stages", {})
        if stages.get("input"):
            _table_section(lines, "  -- input body --", stages["input"]["body"])
        if stages.get("time"):
            weights = ", ".join(f"{w:.4f}" for w in stages["time"].get("weights", []))
            lines.append(f"  -- time rule (weights {weights}) --")
            _table_section(lines, "  reweighted:", stages["time"]["body"])
        if stages.get("reliability"):
            rel = stages["reliability"]
            lines.append(
                f"  -- reliability (hesitancy ratios y {rel.get('ratio_y', 0.0):.4f}, "
                f"n {rel.get('ratio_n', 0.0):.4f}) --"
            )
            _table_section(lines, "  redistributed:", rel["body"])
        if stages.get("tdqbf"):
            fusion = stages["tdqbf"]
            _table_section(lines, "  -- fused (raw) --", fusion["raw"])
            _table_section(lines, "  -- fused (normalized) --", fusion["normalized"])
            if fusion.get("note"):
                lines.append(f"  note: {fusion['note']}")
    final = data.get("final")
    if final:
        lines.append("")
        lines.append("== final (improved) ==")
        _table_section(lines, "  distribution:", final["fin"], final.get("classic"))
    baseline = data.get("baseline")
    if baseline:
        lines.append("")
        lines.append("== baseline (plain combination) ==")
        _table_section(lines, "  distribution:", baseline["body"], baseline.get("classic"))
        conflicts = baseline.get("step_conflicts")
        if conflicts:
            lines.append("  step conflicts: " + ", ".join(f"{c:.4f}" for c in conflicts))
    return "\n".join(lines) + "\n"
