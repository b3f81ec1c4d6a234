"""Worked examples with their conventional names.

The C2(4) bisections are named by the arrows they pick at ``+`` and ``-``,
so the names survive any change in enumeration order.
"""
from __future__ import annotations

from .core import FiniteGroupoid

# name -> (b_s(+), b_s(-))
C2_4_BISECTIONS: dict[str, tuple[str, str]] = {
    "b_e": ("1+", "1-"),
    "b_+": ("s+", "1-"),
    "b_-": ("1+", "s-"),
    "b_g": ("s+", "s-"),
    "b_1": ("b1", "a1"),
    "b_2": ("b2", "a1"),
    "b_3": ("b1", "a2"),
    "b_4": ("b2", "a2"),
}
C2_4_ORDER = list(C2_4_BISECTIONS)


def c2_4_bisection_labels(bg) -> list[str] | None:
    """Conventional names for the bisections of C2(4), or None for other groupoids."""
    g: FiniteGroupoid = bg.groupoid
    if g.object_labels != ("+", "-"):
        return None
    by_arrows = {v: k for k, v in C2_4_BISECTIONS.items()}
    try:
        names = [by_arrows[tuple(g.arrow_labels[a] for a in b.arrows)] for b in bg]
    except KeyError:
        return None
    return names if len(set(names)) == len(C2_4_BISECTIONS) == len(names) else None


# Cells of the swap symmetroid over swap_base(): (id, source, target).
# Factor arrows: 1+/1- units, a = (- -> +), ai = a⁻¹.
SWAP_CELLS: list[tuple[str, str, str]] = [
    ("x_a+", "(a,1+)", "(1+,a)"),
    ("x_a-", "(a,1-)", "(1-,a)"),
    ("x_ai+", "(ai,1+)", "(1+,ai)"),
    ("x_ai-", "(ai,1-)", "(1-,ai)"),
    ("x_aai", "(a,ai)", "(ai,a)"),
    ("x_+-", "(1+,1-)", "(1-,1+)"),
]
