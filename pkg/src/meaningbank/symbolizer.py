"""Symbolization: mapping tokens to their non-logical symbols.

An ordered rule cascade combines normalization with lemmatization:

    override > gazetteer (incl. pronoun table) > clock/number
             > irregular-form table > suffix lemmatizer > lowercase identity

Symbol-free semtags (determiners, negation triggers, punctuation...) never
receive a symbol: their semantics is carried by logical structure.  Symbols
are lowercase except literal values such as clock times and numbers.

Clock normalization produces zero-padded 24-hour HH:MM literals.  Bare hours
without a meridiem follow a configurable civil-time default: 1 to 7 mean PM,
8 to 12 mean AM.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping, Optional, Union

from .semtagger import TagSet, default_tagset, load_pronouns
from .tokens import GLUE, Token
from . import data


class ClockPatternError(ValueError):
    pass


PM_DEFAULT_MAX = 7  # bare hours 1..7 read as PM, 8..12 as AM

_CLOCK_RE = re.compile(
    r"^(?P<hour>\d{1,2})(?::(?P<minute>\d{2}))?"
    r"(?:~?(?P<meridiem>am|pm|a\.m\.|p\.m\.|o'clock))?$",
    re.IGNORECASE,
)


def normalize_clock(surface: str, pm_default_max: int = PM_DEFAULT_MAX) -> str:
    """24-hour HH:MM literal for a clock expression (glue-joined)."""
    m = _CLOCK_RE.match(surface.strip())
    if not m:
        raise ClockPatternError(f"not a clock expression: {surface!r}")
    hour = int(m.group("hour"))
    minute = int(m.group("minute") or 0)
    meridiem = (m.group("meridiem") or "").lower().replace(".", "")
    if minute > 59:
        raise ClockPatternError(f"bad minutes in {surface!r}")
    if meridiem in ("am", "pm"):
        if not 1 <= hour <= 12:
            raise ClockPatternError(f"bad 12-hour value in {surface!r}")
        hour = hour % 12
        if meridiem == "pm":
            hour += 12
    else:
        # Ambiguous civil time (bare hour or o'clock): apply the default.
        if meridiem == "o'clock" and not 1 <= hour <= 12:
            raise ClockPatternError(f"bad 12-hour value in {surface!r}")
        if 1 <= hour <= pm_default_max:
            hour += 12
        elif hour == 12:
            hour = 0
        elif hour > 23:
            raise ClockPatternError(f"bad hour in {surface!r}")
    return f"{hour:02d}:{minute:02d}"


_SIBILANT = ("s", "x", "z", "ch", "sh")

_SUFFIX_RULES: dict[str, list[str]] = {
    "en": ["ies", "ing", "ed", "es", "s"],
    "de": ["en", "er", "e"],
    "it": ["i", "e"],
    "nl": ["en", "s"],
}

_VOWELS = "aeiou"


def _heal_en(stem: str) -> str:
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
        return stem[:-1]
    if len(stem) <= 4 and len(stem) >= 3 and stem[-1] not in _VOWELS + "wxy" \
            and stem[-2] in _VOWELS and stem[-3] not in _VOWELS:
        return stem + "e"
    return stem


def lemmatize(surface: str, lang: str,
              irregular: Optional[Mapping[str, str]] = None) -> str:
    """Longest-matching suffix rule applied once; identity fallback."""
    word = surface.lower()
    if irregular and word in irregular:
        return irregular[word]
    for suffix in _SUFFIX_RULES.get(lang, []):
        if not word.endswith(suffix) or len(word) - len(suffix) < 2:
            continue
        stem = word[: -len(suffix)]
        if lang == "en":
            if suffix == "ies":
                return stem + "y"
            if suffix in ("ing", "ed"):
                return _heal_en(stem)
            if suffix == "es":
                if stem.endswith(_SIBILANT):
                    return stem
                continue
            if suffix == "s":
                if word.endswith("ss"):
                    continue
                return stem
            return stem
        return stem
    return word


def load_irregular(lang: str) -> dict[str, str]:
    table = {}
    try:
        text = data.read_text(f"irregular/{lang}.tsv")
    except FileNotFoundError:
        return table
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        surface, lemma = line.split("\t")
        table[surface] = lemma
    return table


class Gazetteer:
    """surface -> (symbol, optional semtag constraint) rows."""

    def __init__(self, rows: Optional[list[tuple[str, str, Optional[str]]]] = None):
        self.rows: dict[str, list[tuple[str, Optional[str]]]] = {}
        for surface, symbol, constraint in rows or []:
            self.rows.setdefault(surface.lower(), []).append((symbol, constraint))

    def lookup(self, surface: str, semtag: str) -> Optional[str]:
        for symbol, constraint in self.rows.get(surface.lower(), []):
            if constraint is None or constraint.upper() == semtag.upper():
                return symbol
        return None

    @classmethod
    def from_tsv(cls, text: str) -> "Gazetteer":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            surface, symbol = parts[0], parts[1]
            constraint = parts[2] if len(parts) > 2 and parts[2] != "-" else None
            rows.append((surface, symbol, constraint))
        return cls(rows)

    @classmethod
    def from_file(cls, path) -> "Gazetteer":
        return cls.from_tsv(Path(path).read_text(encoding="utf-8"))


def load_gazetteer(lang: str) -> Gazetteer:
    try:
        return Gazetteer.from_tsv(data.read_text(f"gazetteers/{lang}.tsv"))
    except FileNotFoundError:
        return Gazetteer()


_ALLDIGIT = re.compile(r"^\d+$")


def symbolize(token: Union[Token, str], semtag: str, lang: str,
              gazetteer: Optional[Gazetteer] = None,
              override: Optional[str] = None,
              tagset: Optional[TagSet] = None,
              irregular: Optional[Mapping[str, str]] = None,
              pm_default_max: int = PM_DEFAULT_MAX,
              confident_only: bool = False,
              fallback: Optional[str] = None) -> Optional[str]:
    """Run the cascade for one token; None for symbol-free semtags.

    With ``confident_only`` the lemmatizer stages and the identity fallthrough
    are skipped and ``fallback`` is returned instead: used when projecting, so
    target words keep the pivot symbol unless a target rule knows better.
    """
    surface = token.surface if isinstance(token, Token) else token
    tagset = tagset or default_tagset()
    semtag = semtag.upper()
    if tagset.symbol_free(semtag):
        return None
    if override is not None:
        return override
    gazetteer = gazetteer if gazetteer is not None else load_gazetteer(lang)
    hit = gazetteer.lookup(surface, semtag)
    if hit is not None:
        return hit
    if semtag == "PRO":
        pronoun = load_pronouns(lang).get(surface.lower())
        if pronoun is not None:
            return pronoun
    if semtag == "CLO":
        try:
            return normalize_clock(surface, pm_default_max)
        except ClockPatternError:
            pass
    if _ALLDIGIT.match(surface):
        return surface
    if confident_only:
        return fallback
    if irregular is None:
        irregular = load_irregular(lang)
    lemma = lemmatize(surface, lang, irregular)
    return lemma.replace(" ", GLUE)
