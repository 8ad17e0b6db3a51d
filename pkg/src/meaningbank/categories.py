"""CCG categories: atoms, slash-directed functors, text notation.

A category is either an atomic symbol (S, NP, N, PP, optionally carrying a
feature such as S[dcl]) or a functor ``result/argument`` (forward) or
``result\\argument`` (backward).  The text notation puts parentheses exactly
around functor sub-categories, so printing followed by parsing is the
identity on every canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

FORWARD = "/"
BACKWARD = "\\"

ATOM_NAMES = ("NP", "PP", "N", "S")  # longest match first when lexing


class CategorySyntaxError(ValueError):
    """Raised on malformed category text; carries the character offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at offset {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True, slots=True)
class Atomic:
    name: str
    feature: Optional[str] = None

    def __str__(self) -> str:
        if self.feature:
            return f"{self.name}[{self.feature}]"
        return self.name


@dataclass(frozen=True, slots=True)
class Functor:
    result: "Category"
    slash: str  # FORWARD or BACKWARD
    argument: "Category"

    def __str__(self) -> str:
        return f"{_wrap(self.result)}{self.slash}{_wrap(self.argument)}"


Category = Union[Atomic, Functor]


def _wrap(cat: Category) -> str:
    return f"({cat})" if isinstance(cat, Functor) else str(cat)


def forward(result: Category, argument: Category) -> Functor:
    return Functor(result, FORWARD, argument)


def backward(result: Category, argument: Category) -> Functor:
    return Functor(result, BACKWARD, argument)


def parse_category(text: str) -> Category:
    """Parse the slash notation, left-associative with explicit parentheses."""
    if not text or not text.strip():
        raise CategorySyntaxError("empty category", text, 0)
    cat, pos = _parse_seq(text, 0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise CategorySyntaxError("trailing input", text, pos)
    return cat


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_seq(text: str, pos: int) -> tuple[Category, int]:
    left, pos = _parse_part(text, pos)
    while True:
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] in (FORWARD, BACKWARD):
            slash = text[pos]
            right, pos = _parse_part(text, pos + 1)
            left = Functor(left, slash, right)
        else:
            return left, pos


def _parse_part(text: str, pos: int) -> tuple[Category, int]:
    pos = _skip_ws(text, pos)
    if pos >= len(text):
        raise CategorySyntaxError("unexpected end of category", text, pos)
    if text[pos] == "(":
        inner, pos = _parse_seq(text, pos + 1)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ")":
            raise CategorySyntaxError("unbalanced parenthesis", text, pos)
        return inner, pos + 1
    if text[pos] == ")":
        raise CategorySyntaxError("unbalanced parenthesis", text, pos)
    for name in ATOM_NAMES:
        if text.startswith(name, pos):
            end = pos + len(name)
            feature = None
            if end < len(text) and text[end] == "[":
                close = text.find("]", end)
                if close < 0:
                    raise CategorySyntaxError("unterminated feature", text, end)
                feature = text[end + 1 : close]
                end = close + 1
            return Atomic(name, feature), end
    raise CategorySyntaxError("unknown atom", text, pos)


def unify(a: Category, b: Category) -> Optional[Category]:
    """Match two categories, treating a missing atomic feature as a wildcard.

    Returns the more specific category when they are compatible, None when
    they conflict (different atoms, different slashes, or two different
    explicit features).
    """
    if isinstance(a, Atomic) and isinstance(b, Atomic):
        if a.name != b.name:
            return None
        if a.feature is not None and b.feature is not None and a.feature != b.feature:
            return None
        return Atomic(a.name, a.feature or b.feature)
    if isinstance(a, Functor) and isinstance(b, Functor):
        if a.slash != b.slash:
            return None
        result = unify(a.result, b.result)
        argument = unify(a.argument, b.argument)
        if result is None or argument is None:
            return None
        return Functor(result, a.slash, argument)
    return None


def same_shape(a: Category, b: Category) -> bool:
    """Structural equality ignoring slash directions and features."""
    if isinstance(a, Atomic) and isinstance(b, Atomic):
        return a.name == b.name
    if isinstance(a, Functor) and isinstance(b, Functor):
        return same_shape(a.result, b.result) and same_shape(a.argument, b.argument)
    return False
