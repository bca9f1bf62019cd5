"""Suite reports, run manifests, and the JSON + PNG files written for them."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

__all__ = ["SuiteReport", "timed", "RunManifest", "write_report"]


@dataclass
class SuiteReport:
    suite: str
    g: Optional[int]
    total_cases: int = 0
    failures: List[Dict] = field(default_factory=list)
    elapsed_ms: int = 0
    notes: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, case_id: str, inputs, expected, got) -> bool:
        self.total_cases += 1
        if not condition:
            self.fail(case_id, inputs, expected, got)
        return condition

    def fail(self, case_id: str, inputs, expected, got) -> None:
        self.failures.append({"case_id": case_id, "inputs": inputs, "expected": expected, "got": got})

    def to_json(self) -> Dict:
        out = {
            "suite": self.suite,
            "g": self.g,
            "total_cases": self.total_cases,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


class timed:
    """Context manager filling in elapsed_ms."""

    def __init__(self, report: SuiteReport):
        self.report = report

    def __enter__(self) -> SuiteReport:
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> bool:
        self.report.elapsed_ms = int(1000 * (time.perf_counter() - self.t0))
        return False


@dataclass
class RunManifest:
    suite: str
    g_range: List[int]
    seed: int
    version: str
    reports: List[SuiteReport] = field(default_factory=list)
    skipped: List[Dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def failures(self) -> List[Dict]:
        out = []
        for r in self.reports:
            for f in r.failures:
                out.append({"suite": r.suite, "g": r.g, **f})
        return out

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> Dict:
        reports = []
        for r in self.reports:
            j = r.to_json()
            if not timing:
                j["elapsed_ms"] = 0
            reports.append(j)
        return {
            "suite": self.suite,
            "g_range": self.g_range,
            "seed": self.seed,
            "version": self.version,
            "total_cases": sum(r.total_cases for r in self.reports),
            "failures": self.failures,
            "skipped": self.skipped,
            "elapsed_ms": self.elapsed_ms if timing else 0,
            "reports": reports,
        }


def write_report(path: str | Path, payload: Dict) -> List[Path]:
    """Write payload as JSON to path and a PNG summary next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    written = [path]
    png = path.with_suffix(".png")
    _render(png, payload)
    written.append(png)
    return written


def _render(png: Path, payload: Dict) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    if "profile" in payload:
        _plot_profile(ax, payload["profile"])
    else:
        _plot_cases(ax, payload)
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(png, dpi=100, metadata={"Software": None})
    plt.close(fig)


def _plot_profile(ax, profile: Dict) -> None:
    counts = profile["counts"]
    dims = list(range(len(counts)))
    ax.bar([d - 0.2 for d in dims], counts, width=0.4, label="simplices", color="#4c72b0")
    betti = [h["betti_z"] if h["betti_z"] is not None else h["betti_f2"] for h in profile["degrees"]]
    ax.bar([h["degree"] + 0.2 for h in profile["degrees"]], betti, width=0.4, label="reduced Betti", color="#dd8452")
    ax.set_yscale("symlog")
    ax.set_xticks(dims)
    ax.set_xlabel("dimension")
    ax.set_title(f"{profile['complex']} (g={profile['g']})")
    ax.legend()


def _plot_cases(ax, payload: Dict) -> None:
    reports: Sequence[Dict] = payload.get("reports") or [payload]
    labels = [f"{r['suite']}" + (f"\ng={r['g']}" if r.get("g") is not None else "") for r in reports]
    total = [r["total_cases"] for r in reports]
    failed = [len(r["failures"]) for r in reports]
    xs = range(len(reports))
    ax.bar(xs, total, color="#55a868", label="cases")
    ax.bar(xs, failed, color="#c44e52", label="failures")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=7)
    ax.set_yscale("symlog")
    ax.set_title(payload.get("suite", "report"))
    ax.legend()
