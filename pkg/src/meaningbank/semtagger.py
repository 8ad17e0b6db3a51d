"""Universal semantic tagset registry and a lexicon/heuristic tagger.

The registry ships the built-in tagset (extensible through a TSV definition
file) and records for every fine tag its coarse class, a description, and
whether tokens with the tag carry a non-logical symbol.  The tagger assigns
one tag per token: a human override wins, then the ranked lexicon, then a
fixed heuristic ladder (clock patterns, pronouns, mid-sentence
capitalization, punctuation, finally the plain-concept fallback).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .tokens import Token
from . import data

LANGUAGES = ("en", "de", "it", "nl")


class UnknownLanguageError(ValueError):
    pass


class UnknownTagError(ValueError):
    pass


@dataclass(frozen=True)
class TagEntry:
    code: str
    coarse: str
    symbol_free: bool
    description: str


class TagSet:
    def __init__(self, entries: Iterable[TagEntry]):
        self.entries: dict[str, TagEntry] = {}
        for e in entries:
            if e.code in self.entries:
                raise ValueError(f"duplicate tag code {e.code}")
            self.entries[e.code] = e

    def __contains__(self, code: str) -> bool:
        return code.upper() in self.entries

    def lookup(self, code: str) -> Optional[TagEntry]:
        return self.entries.get(code.upper())

    def symbol_free(self, code: str) -> bool:
        entry = self.lookup(code)
        if entry is None:
            raise UnknownTagError(f"unknown semtag {code!r}")
        return entry.symbol_free

    @classmethod
    def from_tsv(cls, text: str) -> "TagSet":
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            code, coarse, free, desc = line.split("\t")
            entries.append(TagEntry(code.upper(), coarse, free == "1", desc))
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> "TagSet":
        return cls.from_tsv(Path(path).read_text(encoding="utf-8"))


def default_tagset() -> TagSet:
    return TagSet.from_tsv(data.read_text("tagset.tsv"))


class TagLexicon:
    """Ranked (language, surface) -> semtag mapping learned from counts."""

    def __init__(self, counts: Optional[Mapping[tuple[str, str], Mapping[str, int]]] = None):
        self.counts: dict[tuple[str, str], dict[str, int]] = {}
        if counts:
            for key, tags in counts.items():
                self.counts[key] = dict(tags)

    def ranked(self, lang: str, surface: str) -> list[tuple[str, int]]:
        tags = self.counts.get((lang, surface.lower()), {})
        return sorted(tags.items(), key=lambda kv: (-kv[1], kv[0]))

    def top(self, lang: str, surface: str) -> Optional[str]:
        ranked = self.ranked(lang, surface)
        return ranked[0][0] if ranked else None

    def to_tsv(self) -> str:
        lines = []
        for (lang, surface), tags in sorted(self.counts.items()):
            for tag, count in sorted(tags.items()):
                lines.append(f"{lang}\t{surface}\t{tag}\t{count}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_tsv(cls, text: str) -> "TagLexicon":
        lex = cls()
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lang, surface, tag, count = line.split("\t")
            lex.counts.setdefault((lang, surface), {})[tag.upper()] = int(count)
        return lex

    @classmethod
    def from_file(cls, path) -> "TagLexicon":
        return cls.from_tsv(Path(path).read_text(encoding="utf-8"))

    def save(self, path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")


def train_lexicon(annotated: Iterable[tuple[str, str, str]],
                  tagset: Optional[TagSet] = None) -> TagLexicon:
    """Aggregate (language, surface, semtag) counts into a lexicon."""
    tagset = tagset or default_tagset()
    lex = TagLexicon()
    for lang, surface, tag in annotated:
        tag = tag.upper()
        if tag not in tagset:
            raise UnknownTagError(f"unknown semtag {tag!r}")
        bucket = lex.counts.setdefault((lang, surface.lower()), {})
        bucket[tag] = bucket.get(tag, 0) + 1
    return lex


_CLOCK = re.compile(r"^\d{1,2}(:\d{2})?(~(am|pm|a\.m\.|p\.m\.|o'clock))?$", re.IGNORECASE)
_ALLDIGIT = re.compile(r"^\d+$")
_PUNCT = re.compile(r"^[^\w~]+$", re.UNICODE)


def load_pronouns(lang: str) -> dict[str, str]:
    """surface -> gender/person symbol for the built-in pronoun table."""
    if lang not in LANGUAGES:
        raise UnknownLanguageError(f"unknown language {lang!r}")
    table = {}
    for line in data.read_text(f"pronouns/{lang}.tsv").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, symbol = line.split("\t")
        table[surface] = symbol
    return table


def tag(tokens: Sequence[Token], lang: str,
        lexicon: Optional[TagLexicon] = None,
        overrides: Optional[Mapping[int, str]] = None,
        tagset: Optional[TagSet] = None,
        sentence_initial: Optional[set[int]] = None) -> list[str]:
    """One semtag per token.

    Heuristic ladder after override and lexicon: clock/digit pattern, the
    pronoun table, capitalized mid-sentence (proper name), punctuation,
    otherwise plain concept.
    """
    if lang not in LANGUAGES:
        raise UnknownLanguageError(f"unknown language {lang!r}")
    tagset = tagset or default_tagset()
    lexicon = lexicon or TagLexicon()
    overrides = overrides or {}
    pronouns = load_pronouns(lang)
    if sentence_initial is None:
        sentence_initial = {0} if tokens else set()

    out = []
    for i, tok in enumerate(tokens):
        if i in overrides:
            chosen = overrides[i].upper()
            if chosen not in tagset:
                raise UnknownTagError(f"override with unknown semtag {chosen!r}")
            out.append(chosen)
            continue
        top = lexicon.top(lang, tok.surface)
        if top is not None:
            out.append(top)
            continue
        surface = tok.surface
        if _ALLDIGIT.match(surface) or _CLOCK.match(surface):
            out.append("CLO")
        elif surface.lower() in pronouns:
            out.append("PRO")
        elif i not in sentence_initial and surface[:1].isupper():
            out.append("NAM")
        elif _PUNCT.match(surface):
            out.append("NIL")
        else:
            out.append("CON")
    return out
