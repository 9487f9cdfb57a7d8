"""Loader for the natural-language feedback templates shipped as package data.

The exact wording of these messages is part of the product contract (they are
golden-file tested), so code never inlines them; it always formats a template
fetched through :func:`feedback_template`.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

_ORDINALS = (
    "first", "second", "third", "fourth", "fifth", "sixth",
    "seventh", "eighth", "ninth", "tenth", "eleventh", "twelfth",
)


@lru_cache(maxsize=None)
def feedback_template(name: str) -> str:
    path = resources.files("planforge").joinpath("templates", "feedback", f"{name}.txt")
    return path.read_text(encoding="utf-8")


def ordinal(n: int) -> str:
    """1 -> 'first', 2 -> 'second', ...; falls back to '13th' beyond twelve."""
    if 1 <= n <= len(_ORDINALS):
        return _ORDINALS[n - 1]
    return f"{n}th"


def unsupported_keyword_message(keyword: str) -> str:
    return feedback_template("unsupported_keyword").format(keyword=keyword)
