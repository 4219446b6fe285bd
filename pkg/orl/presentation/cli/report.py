# orl/presentation/cli/report.py
"""
Rapport texte des commandes : lignes libres, séparateur `---`, puis un bloc
`key: value` lisible par machine.
"""
from typing import Any, List, Optional, Tuple

from orl.infrastructure.io.ogf_codec import format_key_values

SEPARATOR = "---"


class Report:

    def __init__(self, command: str, seed: Optional[int] = None):
        self.lines: List[str] = []
        self.fields: List[Tuple[str, Any]] = [("command", command)]
        if seed is not None:
            self.fields.append(("seed", seed))
        self._failed: List[str] = []

    def line(self, text: str) -> None:
        self.lines.append(text)

    def field(self, key: str, value: Any) -> None:
        self.fields.append((key, value))

    def extend(self, pairs) -> None:
        for key, value in pairs:
            self.field(key, value)

    def check(self, key: str, ok: bool) -> bool:
        """Champ booléen compté dans le verdict final"""
        self.field(key, bool(ok))
        if not ok:
            self._failed.append(key)
        return bool(ok)

    @property
    def passed(self) -> bool:
        return not self._failed

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def render(self) -> str:
        body = "".join(f"{text}\n" for text in self.lines)
        verdict = [("failed_checks", self._failed)] if self._failed else []
        return body + SEPARATOR + "\n" + format_key_values(self.fields + verdict + [("passed", self.passed)])
