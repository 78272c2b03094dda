"""Verification reports: one row per checked instance, emitted in key order."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

PASS = "pass"
FAIL = "fail"
REGIME = "regime"
BUDGET = "budget"
VERDICTS = (PASS, FAIL, REGIME, BUDGET)

CSV_FIELDS = ("operation", "instance", "values", "certificate", "nodes", "verdict", "note")


@dataclass(frozen=True)
class Report:
    """Outcome of one check.  ``nodes`` is search effort, never wall time, so reruns match."""

    operation: str
    instance: str
    values: dict = field(default_factory=dict)
    certificate: str | None = None
    nodes: int = 0
    verdict: str = PASS
    note: str = ""

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.operation, self.instance)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_obj(self) -> dict:
        return {
            "operation": self.operation,
            "instance": self.instance,
            "values": self.values,
            "certificate": self.certificate,
            "nodes": self.nodes,
            "verdict": self.verdict,
            "note": self.note,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "Report":
        return cls(
            obj["operation"],
            obj["instance"],
            dict(obj.get("values", {})),
            obj.get("certificate"),
            int(obj.get("nodes", 0)),
            obj.get("verdict", PASS),
            obj.get("note", ""),
        )

    def line(self) -> str:
        shown = ", ".join(f"{k}={_short(v)}" for k, v in sorted(self.values.items()))
        tail = f"  ({self.note})" if self.note else ""
        return f"[{self.verdict.upper()}] {self.operation} {self.instance}: {shown}{tail}"


def _short(value) -> str:
    text = json.dumps(value, sort_keys=True, separators=(",", ":"))
    return text if len(text) <= 60 else text[:57] + "..."


def sort_reports(reports: Iterable[Report]) -> list[Report]:
    return sorted(reports, key=lambda r: r.key)


def summary(reports: Iterable[Report]) -> dict[str, int]:
    counts = {v: 0 for v in VERDICTS}
    for r in reports:
        counts[r.verdict] += 1
    return counts


def reports_to_json(reports: Iterable[Report], suite: str | None = None) -> str:
    rows = sort_reports(reports)
    doc = {"suite": suite, "summary": summary(rows), "reports": [r.to_obj() for r in rows]}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def reports_from_json(text: str) -> list[Report]:
    doc = json.loads(text)
    return [Report.from_obj(obj) for obj in doc["reports"]]


def reports_to_csv(reports: Iterable[Report]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in sort_reports(reports):
        writer.writerow(
            [
                r.operation,
                r.instance,
                json.dumps(r.values, sort_keys=True, separators=(",", ":")),
                r.certificate or "",
                r.nodes,
                r.verdict,
                r.note,
            ]
        )
    return buf.getvalue()


def reports_to_text(reports: Iterable[Report]) -> str:
    rows = sort_reports(reports)
    counts = summary(rows)
    lines = [r.line() for r in rows]
    lines.append("summary: " + ", ".join(f"{v}={counts[v]}" for v in VERDICTS))
    return "\n".join(lines) + "\n"
