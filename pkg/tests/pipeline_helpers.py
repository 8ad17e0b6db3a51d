"""Shared builders for composed sentences used across test modules."""

from meaningbank.categories import parse_category
from meaningbank.chartparser import parse
from meaningbank.composer import (
    FreshRefs, compose, default_inventory, default_roles, default_templates,
    lexical_semantics,
)
from meaningbank.projector import SourceSentence
from meaningbank.tokens import Token, TokenAnnotation

_REGISTRY = default_templates()
_ROLES = default_roles()


def registry():
    return _REGISTRY


def roles():
    return _ROLES


def make_tokens(surfaces):
    toks = []
    pos = 0
    for i, s in enumerate(surfaces):
        display = s.replace("~", " ")
        toks.append(Token(i, pos, pos + len(display), s,
                          tuple(s.split("~")) if "~" in s else ()))
        pos += len(display) + 1
    return toks


def annotate(surfaces, semtags, symbols, categories):
    fresh = FreshRefs()
    anns = []
    for tok, semtag, symbol, cat_text in zip(make_tokens(surfaces), semtags,
                                             symbols, categories):
        cat = parse_category(cat_text)
        term = lexical_semantics(semtag, cat, symbol, _ROLES, _REGISTRY, fresh)
        anns.append(TokenAnnotation(tok, semtag, symbol, cat, term))
    return anns, fresh


def build_source(surfaces, semtags, symbols, categories, goal="S"):
    anns, fresh = annotate(surfaces, semtags, symbols, categories)
    inventory = default_inventory(_REGISTRY, _ROLES, fresh)
    deriv = parse(anns, inventory, parse_category(goal))
    box = compose(deriv)
    return SourceSentence(tuple(anns), deriv, box)
