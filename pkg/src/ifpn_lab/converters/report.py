import json
from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class Report:
    """What a CLI command emits: command echo, resolution metadata, sections, exit status."""
    command: List[str]
    resolution: Dict[str, Any]
    sections: List[Dict[str, Any]] = field(default_factory=list)
    exit_status: int = 0
    summary: Dict[str, Any] = field(default_factory=dict)

    def add(self, section: Dict[str, Any]):
        self.sections.append(section)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "resolution": self.resolution,
            "sections": self.sections,
            "summary": self.summary,
            "exit_status": self.exit_status,
        }


class ReportConverter:
    @staticmethod
    def to_json(report: Report) -> str:
        # key order is insertion order; no timestamps, so equal inputs give equal bytes
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2, allow_nan=False) + "\n"

    @staticmethod
    def to_text(report: Report) -> str:
        lines = [f"$ ifpn {' '.join(report.command)}"]
        lines.append("resolution: " + ", ".join(f"{k}={v}" for k, v in report.resolution.items()))
        for section in report.sections:
            lines.append("")
            lines.extend(ReportConverter._section_lines(section))
        if report.summary:
            lines.append("")
            lines.append("summary: " + ", ".join(f"{k}={_compact(v)}" for k, v in report.summary.items()))
        lines.append(f"exit status: {report.exit_status}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render(report: Report, mode: str) -> str:
        if mode == "json":
            return ReportConverter.to_json(report)
        if mode == "text":
            return ReportConverter.to_text(report)
        raise ValueError(f"unknown report mode {mode!r}")

    @staticmethod
    def _section_lines(section: Dict[str, Any]) -> List[str]:
        lines = [f"== {section.get('title', section.get('kind', 'section'))} =="]
        if "error" in section:
            lines.append(f"  error: {section['error']}")
        for row in section.get("rows", []):
            lines.append("  " + ", ".join(f"{k}={_compact(v)}" for k, v in row.items()))
        for item in section.get("verdicts", []):
            lines.append(f"  {item['name']}: {item['verdict']}  [{_resolution_tag(item.get('resolution', {}))}]")
            if item.get("witness") is not None:
                lines.append(f"    witness: {_compact(item['witness'])}")
            if item.get("certificate") is not None:
                lines.append(f"    certificate: {_compact(item['certificate'])}")
            for note in item.get("diagnostics", []):
                lines.append(f"    note: {note}")
        for edge in section.get("edges", []):
            lines.append(f"  edge {edge['edge']} ({edge['direction']}): {edge['status']}")
        for e in section.get("expectations", []):
            mark = "ok" if e["met"] else "MISSED"
            lines.append(f"  expect {e['property']} = {e['expected']}: observed {e['observed']} [{mark}]")
        return lines


def _resolution_tag(resolution: Dict[str, Any]) -> str:
    keys = ("grid", "tol", "seed", "eps_grid", "delta_candidates", "alpha_grid")
    return "; ".join(f"{k}={_compact(resolution[k])}" for k in keys if k in resolution)


def _compact(value: Any, limit: int = 240) -> str:
    text = json.dumps(value, ensure_ascii=False, separators=(",", ":"))
    return text if len(text) <= limit else text[: limit - 3] + "..."
