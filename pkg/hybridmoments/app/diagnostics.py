from __future__ import annotations

import importlib.util
import re
import sys
from pathlib import Path
from typing import List

_WARNED = False
_REQUIREMENTS_PATH = Path(__file__).resolve().parents[2] / "requirements.txt"
_NAME_RE = re.compile(r"^\s*([A-Za-z0-9_.\-]+)")

_IMPORT_NAMES = {"numpy": "numpy"}
_MISSING_MESSAGES = {
    "numpy": "Missing numpy. Integration, the oscillator benchmark and Jacobi sampling will not work.",
}


def emit_startup_warnings() -> None:
    global _WARNED
    if _WARNED:
        return
    _WARNED = True
    for message in collect_dependency_warnings():
        print(f"Warning: {message}", file=sys.stderr)


def read_requirements(path: Path = _REQUIREMENTS_PATH) -> List[str]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError:
        return []
    names = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line or line.startswith("-"):
            continue
        match = _NAME_RE.match(line)
        if match:
            names.append(match.group(1).lower())
    return names


def collect_dependency_warnings() -> List[str]:
    warnings: List[str] = []
    for requirement in read_requirements():
        if not _has_module(_IMPORT_NAMES.get(requirement, requirement.replace("-", "_"))):
            warnings.append(_MISSING_MESSAGES.get(requirement, f"Missing dependency: {requirement}."))
    return warnings


def _has_module(name: str) -> bool:
    return importlib.util.find_spec(name) is not None
