"""Structured verification outcomes.

A :class:`VerdictReport` collects per-item pass/fail/skip statuses with
witness payloads.  Serialization is deterministic: items are sorted by key
and wall-clock timings are zeroed unless explicitly requested, so identical
configurations produce byte-identical reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckItem:
    key: str
    status: str  # "pass" | "fail" | "skip"
    witness: str | None = None
    ms: int = 0


@dataclass
class VerdictReport:
    suite: str
    config: dict = field(default_factory=dict)
    items: list[CheckItem] = field(default_factory=list)

    def add(self, key: str, ok: bool, witness: str | None = None,
            ms: int = 0) -> None:
        if not ok and witness is None:
            witness = "unexplained failure"
        self.items.append(CheckItem(key, "pass" if ok else "fail",
                                    witness, ms))

    def add_skip(self, key: str, reason: str | None = None) -> None:
        self.items.append(CheckItem(key, "skip", reason))

    def extend_from(self, other: "VerdictReport", prefix: str = "") -> None:
        for item in other.items:
            self.items.append(CheckItem(prefix + item.key, item.status,
                                        item.witness, item.ms))

    @property
    def ok(self) -> bool:
        return all(item.status != "fail" for item in self.items)

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for item in self.items:
            out[item.status] += 1
        return out

    def first_failure(self) -> CheckItem | None:
        for item in sorted(self.items, key=lambda i: i.key):
            if item.status == "fail":
                return item
        return None

    def to_json_dict(self, include_timings: bool = False) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "items": [
                {"key": item.key, "status": item.status,
                 "witness": item.witness,
                 "ms": item.ms if include_timings else 0}
                for item in sorted(self.items, key=lambda i: i.key)
            ],
        }

    def to_text(self) -> str:
        lines = []
        for item in sorted(self.items, key=lambda i: i.key):
            tag = item.status.upper().ljust(4)
            line = f"[{tag}] {item.key}"
            if item.witness is not None:
                line += f"  :: {item.witness}"
            lines.append(line)
        c = self.counts
        lines.append(f"suite={self.suite} passed={c['pass']} "
                     f"failed={c['fail']} skipped={c['skip']}")
        return "\n".join(lines)
