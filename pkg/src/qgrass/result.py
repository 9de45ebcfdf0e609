"""Check items and reports shared by the verification suites and the CLI."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


def clip(text: str, limit: int = 160) -> str:
    text = str(text)
    return text if len(text) <= limit else text[: limit - 3] + "..."


@dataclass
class CheckItem:
    name: str
    passed: bool
    witness: str = ""

    def to_json(self) -> dict:
        data = {"name": self.name, "pass": self.passed}
        if self.witness:
            data["witness"] = self.witness
        return data

    def render_text(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        tail = f": {self.witness}" if self.witness and not self.passed else ""
        return f"{tag} {self.name}{tail}"


@dataclass
class Report:
    command: str
    items: list[CheckItem] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, name: str, passed: bool, witness: str = "") -> CheckItem:
        item = CheckItem(name, passed, clip(witness))
        self.items.append(item)
        return item

    def extend(self, items) -> None:
        self.items.extend(items)

    def all_passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "pass": self.all_passed(),
            "checks": [item.to_json() for item in self.items],
            "elapsed_s": round(self.elapsed, 3),
        }

    def render_text(self) -> str:
        lines = [item.render_text() for item in self.items]
        total = len(self.items)
        good = sum(1 for i in self.items if i.passed)
        lines.append(f"{good}/{total} checks passed ({self.elapsed:.2f}s)")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2)
        return self.render_text()
