from __future__ import annotations

from typing import Any, List, Mapping, Optional

from ..hamiltonian.eom import EomSystem


def render_eom(system: EomSystem, names: Optional[Mapping[Any, str]] = None) -> str:
    """One ``d/dt <symbol> = <rhs>`` line per state symbol, in layout order."""
    names = names or {}
    lines: List[str] = []
    for symbol, rhs in system.items():
        label = names.get(symbol, symbol.render())
        lines.append(f"d/dt {label} = {rhs.render(names)}")
    return "\n".join(lines)


def render_eom_report(system: EomSystem, names: Optional[Mapping[Any, str]] = None) -> str:
    header = (
        f"# {system.signature.label}, {system.kind.value} bracket, "
        f"truncation order {system.truncation_order}, {system.size} equations"
    )
    return "\n".join(
        [
            header,
            f"H_eff = {system.h_eff.render(names)}",
            render_eom(system, names),
        ]
    )
