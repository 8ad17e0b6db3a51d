"""Tokens and per-token annotation bundles."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .categories import Category
from .terms import Term

GLUE = "~"


@dataclass(frozen=True, slots=True)
class Token:
    """A token span over the document text (character offsets, end exclusive).

    Multiword tokens carry their pieces in ``glue_parts`` and a surface where
    the glue whitespace is replaced by ``~``.  Tokens produced by compound
    decomposition record the full orthographic word in ``decomposed_from``.
    """

    id: int
    char_start: int
    char_end: int
    surface: str
    glue_parts: tuple[str, ...] = ()
    decomposed_from: Optional[str] = None

    def __post_init__(self):
        if self.char_start >= self.char_end:
            raise ValueError("empty token span")


@dataclass(frozen=True)
class TokenAnnotation:
    """One token with its semtag, symbol, category and lexical semantics.

    Fields beyond the token fill up as the pipeline stages run; the symbol
    stays None for semtags registered as symbol-free.
    """

    token: Token
    semtag: str
    symbol: Optional[str] = None
    category: Optional[Category] = None
    lexsem: Optional[Term] = None

    def with_(self, **kw) -> "TokenAnnotation":
        return replace(self, **kw)
