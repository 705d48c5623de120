"""Evaluation of Boolean register family terms to plain focus -> content maps.

Composition is a map union in which a name clash collapses the register to
the inoperative content, and encapsulation removes the named registers.
Every closed family term evaluates to such a map, so downstream code only
ever sees evaluated families.
"""

from __future__ import annotations

from .syntax import (
    ComposeFamily,
    EmptyFamily,
    Focus,
    HideFamily,
    RegisterContent,
    RegisterFamilyTerm,
    SingletonFamily,
    focus_sort_key,
)

RegisterFamily = dict[Focus, RegisterContent]


def evaluate_family(t: RegisterFamilyTerm) -> RegisterFamily:
    if isinstance(t, EmptyFamily):
        return {}
    if isinstance(t, SingletonFamily):
        return {t.focus: t.content}
    if isinstance(t, ComposeFamily):
        return compose(evaluate_family(t.left), evaluate_family(t.right))
    if isinstance(t, HideFamily):
        body = evaluate_family(t.body)
        return {f: c for f, c in body.items() if f not in t.hidden}
    raise TypeError(f"not a register family term: {t!r}")


def compose(left: RegisterFamily, right: RegisterFamily) -> RegisterFamily:
    """Union of two families; same-name registers collapse to inoperative."""
    out = dict(left)
    for focus, content in right.items():
        out[focus] = RegisterContent.INOPERATIVE if focus in out else content
    return out


def render_family(family: RegisterFamily) -> str:
    if not family:
        return "{}"
    parts = [
        f"{focus}={family[focus].token}"
        for focus in sorted(family, key=focus_sort_key)
    ]
    return "{" + ", ".join(parts) + "}"


def family_key(family: RegisterFamily) -> tuple:
    """Hashable canonical view, for use as a state-space component."""
    return tuple(sorted(family.items(), key=lambda kv: focus_sort_key(kv[0])))
