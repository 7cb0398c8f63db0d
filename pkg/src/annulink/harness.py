"""Per-diagram theorem checks and batch reports."""

from __future__ import annotations

import csv
import io
import json
import sys
from importlib import resources
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .crossings import is_dotted_reduced
from .diagram import (
    AnnularDiagram,
    DiagramError,
    cut_path,
    from_json,
    is_alternating,
    parse_diagram,
    validate,
    writhe,
)
from .skein import (
    DEFAULT_MAX_STATES,
    bracket,
    extreme_state_contributions,
    normalize,
    resolve_state,
)

__all__ = [
    "CHECKS",
    "CSV_COLUMNS",
    "BatchReport",
    "VerificationRecord",
    "batch",
    "corpus_dir",
    "load_corpus",
    "load_diagram",
    "verify",
]

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"
CHECKS = ("prop2_2", "prop2_3", "sAB", "thm3_5", "cor3_6", "thm4_1")
CSV_COLUMNS = (
    "id",
    "n",
    "alternating",
    "dotted_reduced",
    "writhe",
    "span_A",
    "maxA_allA",
    "minA_allB",
) + CHECKS


@dataclass(frozen=True)
class VerificationRecord:
    id: str
    n: int
    alternating: bool
    dotted_reduced: bool
    writhe: int
    span_A: int
    maxA_allA: int
    minA_allB: int
    checks: dict[str, str] = field(default_factory=dict)
    connected: bool = True

    def failed(self) -> list[str]:
        return [name for name, v in self.checks.items() if v == FAIL]

    def row(self) -> dict[str, str | int]:
        out: dict[str, str | int] = {
            "id": self.id,
            "n": self.n,
            "alternating": int(self.alternating),
            "dotted_reduced": int(self.dotted_reduced),
            "writhe": self.writhe,
            "span_A": self.span_A,
            "maxA_allA": self.maxA_allA,
            "minA_allB": self.minA_allB,
        }
        out.update(self.checks)
        return out


def _flag(applies: bool, holds: bool) -> str:
    if not applies:
        return VACUOUS
    return PASS if holds else FAIL


def verify(
    d: AnnularDiagram,
    diagram_id: str = "",
    *,
    workers: int = 1,
    max_states: int = DEFAULT_MAX_STATES,
) -> VerificationRecord:
    """Evaluate every theorem check on one validated diagram.

    The span bound, the circle-count identity and the span equality are
    only asserted for connected diagrams: a split union such as two
    disjoint loops already has span 4 with no crossings.
    """
    cp = cut_path(d)
    br = bracket(d, workers=workers, max_states=max_states, cp=cp)
    all_a, all_b = extreme_state_contributions(d, cp)
    n = d.n
    w = writhe(d) if n else 0
    jones_span = normalize(br, w).span_a()
    alternating = is_alternating(d)
    reduced = is_dotted_reduced(d)
    connected = d.is_connected()
    hi, lo = br.max_degree_a(), br.min_degree_a()
    hi_a, lo_b = all_a.max_degree_a(), all_b.min_degree_a()
    if n or d.loops:
        s_a = resolve_state(d, 0, cp).num_circles
        s_b = resolve_state(d, (1 << n) - 1, cp).num_circles
    else:
        s_a = s_b = 1
    core = alternating and reduced and connected
    checks = {
        "prop2_2": _flag(True, hi <= hi_a and lo >= lo_b),
        "prop2_3": _flag(connected, hi - lo <= 4 * n),
        "sAB": _flag(alternating and connected, s_a + s_b == n + 2),
        "thm3_5": _flag(core, hi - lo == 4 * n),
        "cor3_6": _flag(core, jones_span == 4 * n),
        "thm4_1": _flag(core, hi == hi_a and lo == lo_b),
    }
    return VerificationRecord(diagram_id, n, alternating, reduced, w, hi - lo, hi_a, lo_b, checks, connected)


def load_diagram(path: str | Path) -> AnnularDiagram:
    """Read a diagram document, text or JSON object form, and validate it."""
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    return load_diagram_text(text)


def load_diagram_text(text: str) -> AnnularDiagram:
    d = from_json(text) if text.lstrip().startswith("{") else parse_diagram(text)
    report = validate(d)
    if not report.ok:
        raise DiagramError("; ".join(report.problems))
    return d


def corpus_dir() -> Path:
    return Path(str(resources.files("annulink") / "corpus"))


def load_corpus() -> tuple[dict[str, AnnularDiagram], dict]:
    """Shipped diagrams by name, and the expected-value table."""
    root = corpus_dir()
    expected = json.loads((root / "expected.json").read_text())
    diagrams = {p.stem: load_diagram(p) for p in sorted(root.glob("*.txt"))}
    return diagrams, expected


@dataclass
class BatchReport:
    records: list[VerificationRecord]
    errors: list[tuple[str, str]]
    seed: int | None = None

    @property
    def exit_status(self) -> int:
        return 1 if any(r.failed() for r in self.records) else 0

    def header_lines(self) -> list[str]:
        seed = "none" if self.seed is None else str(self.seed)
        return [f"# annulink {__version__} seed={seed}"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for line in self.header_lines():
            buf.write(line + "\n")
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in self.records:
            writer.writerow(r.row())
        for name, message in self.errors:
            buf.write(f"# error {name}: {message}\n")
        return buf.getvalue()

    def to_object(self) -> dict:
        return {
            "tool": "annulink",
            "version": __version__,
            "seed": self.seed,
            "columns": list(CSV_COLUMNS),
            "records": [r.row() for r in self.records],
            "errors": [{"id": name, "message": msg} for name, msg in self.errors],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_object(), indent=2, sort_keys=True) + "\n"


def _verify_item(args) -> tuple[str, VerificationRecord | None, str | None]:
    name, source, max_states = args
    try:
        d = source if isinstance(source, AnnularDiagram) else load_diagram(source)
        return name, verify(d, name, max_states=max_states), None
    except (OSError, ValueError) as exc:
        return name, None, f"{type(exc).__name__}: {exc}"


def batch(
    items: Iterable[str | Path | tuple[str, AnnularDiagram]],
    *,
    workers: int = 1,
    max_states: int = DEFAULT_MAX_STATES,
    seed: int | None = None,
) -> BatchReport:
    """Verify many diagrams; bad inputs are reported and skipped.

    Items are paths or ``(id, diagram)`` pairs. Results keep input order
    whatever the worker count.
    """
    jobs = []
    for item in items:
        if isinstance(item, tuple):
            jobs.append((item[0], item[1], max_states))
        else:
            jobs.append((Path(item).stem, item, max_states))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results: Sequence = list(pool.map(_verify_item, jobs, chunksize=8))
    else:
        results = [_verify_item(job) for job in jobs]
    report = BatchReport([], [], seed)
    for name, record, error in results:
        if record is not None:
            report.records.append(record)
        else:
            report.errors.append((name, error))
    return report
