import random

import pytest

from meaningbank.categories import Atomic, parse_category
from meaningbank.chartparser import (
    DerivNode, EmptyElement, EmptyInventory, NoParseError, check, combine,
    from_sexpr, parse, to_sexpr,
)
from meaningbank.tokens import Token, TokenAnnotation
from oracles import enumerator_accepts
from sentence_fixtures import CATEGORIES_EN, SEMTAGS_EN, SYMBOLS_EN, TOKENS_EN

S = Atomic("S")
NP = Atomic("NP")

POOL = [parse_category(c) for c in [
    "S", "NP", "N", "PP",
    r"S\NP", r"(S\NP)/NP", "NP/N", "N/N", r"N\N",
    r"(S\NP)\(S\NP)", "S/S", "PP/NP",
]]

INVENTORY = EmptyInventory((EmptyElement(parse_category("NP/N"), "DIS"),))


def make_annotations(categories, surfaces=None, semtags=None, symbols=None):
    anns = []
    pos = 0
    for i, cat in enumerate(categories):
        surface = surfaces[i] if surfaces else f"w{i}"
        ann = TokenAnnotation(
            Token(i, pos, pos + len(surface), surface),
            semtags[i] if semtags else "UNK",
            symbols[i] if symbols else None,
            cat if not isinstance(cat, str) else parse_category(cat),
        )
        pos += len(surface) + 1
        anns.append(ann)
    return anns


def test_combine_forward_application():
    left = parse_category(r"((S\NP)\(S\NP))/NP")
    assert combine(left, NP) == [("fa", parse_category(r"(S\NP)\(S\NP)"))]


def test_combine_backward_application():
    assert combine(parse_category(r"S\NP"), parse_category(r"(S\NP)\(S\NP)")) == \
        [("ba", parse_category(r"S\NP"))]


def test_combine_nothing():
    assert combine(NP, NP) == []


def test_combine_compositions():
    assert ("fc", parse_category("NP/N")) in combine(
        parse_category("NP/N"), parse_category("N/N"))
    assert ("bc", parse_category(r"(S\NP)\(S\NP)")) in combine(
        parse_category(r"(S\NP)\(S\NP)"), parse_category(r"(S\NP)\(S\NP)"))
    crossed = combine(parse_category("PP/NP"), parse_category(r"NP\N"), crossed=True)
    assert ("bcx", parse_category(r"PP\N")) in crossed
    assert ("bcx", parse_category(r"PP\N")) not in combine(
        parse_category("PP/NP"), parse_category(r"NP\N"))


def test_example_sentence_derivation_shape():
    anns = make_annotations(CATEGORIES_EN, TOKENS_EN, SEMTAGS_EN, SYMBOLS_EN)
    deriv = parse(anns, INVENTORY)
    assert check(deriv)
    sexpr = to_sexpr(deriv)
    assert sexpr == (
        '(ba S (lex NP He pro male) '
        '(ba S\\NP (ba S\\NP (lex S\\NP came eps come) '
        '(lex "(S\\NP)\\(S\\NP)" back ist back)) '
        '(fa "(S\\NP)\\(S\\NP)" (lex "((S\\NP)\\(S\\NP))/NP" at rel at) '
        '(fa NP (empty NP/N dis) (lex N 5~o\'clock clo 17:00)))))'
    )


def test_single_token_goal():
    anns = make_annotations([NP])
    deriv = parse(anns, EmptyInventory(), goal=NP)
    assert deriv.rule == "lex"
    assert deriv.category == NP


def test_prefers_fewer_insertions():
    # N alone can reach NP both via one insertion; a plain NP next to it
    # should never trigger an insertion when application suffices.
    anns = make_annotations(["NP/N", "N"])
    deriv = parse(anns, INVENTORY, goal=NP)
    assert all(l.rule != "empty" for l in deriv.leaves())


def test_prefers_application_over_composition():
    anns = make_annotations([r"S\NP", r"(S\NP)\(S\NP)", r"(S\NP)\(S\NP)"])
    deriv = parse(anns, EmptyInventory(), goal=parse_category(r"S\NP"))
    rules = {n.rule for n in _walk(deriv)}
    assert "bc" not in rules


def _walk(node):
    yield node
    for c in node.children:
        yield from _walk(c)


def test_determinism():
    anns = make_annotations(CATEGORIES_EN, TOKENS_EN, SEMTAGS_EN, SYMBOLS_EN)
    assert parse(anns, INVENTORY) == parse(anns, INVENTORY)


def test_no_parse_error_reports_spans():
    anns = make_annotations(["NP", "NP"])
    with pytest.raises(NoParseError) as exc:
        parse(anns, EmptyInventory())
    assert (0, 1) in exc.value.covered


def test_check_rejects_tampered_category():
    anns = make_annotations(CATEGORIES_EN, TOKENS_EN, SEMTAGS_EN, SYMBOLS_EN)
    deriv = parse(anns, INVENTORY)

    def tamper(node):
        if node.rule == "lex" and node.lexical.token.surface == "at":
            return DerivNode(node.span, NP, "lex", (), node.lexical)
        if node.children:
            return DerivNode(node.span, node.category, node.rule,
                             tuple(tamper(c) for c in node.children),
                             node.lexical, node.empty)
        return node

    assert check(deriv)
    assert not check(tamper(deriv))


def test_sexpr_roundtrip():
    anns = make_annotations(CATEGORIES_EN, TOKENS_EN, SEMTAGS_EN, SYMBOLS_EN)
    deriv = parse(anns, INVENTORY)
    back = from_sexpr(to_sexpr(deriv), anns, INVENTORY)
    assert _shapes(back) == _shapes(deriv)
    assert back.category == deriv.category


def _shapes(node):
    return (node.rule, str(node.category),
            tuple(_shapes(c) for c in node.children))


def agreement_case(cats):
    try:
        deriv = parse(make_annotations(cats), INVENTORY, goal=S, max_insertions=1)
        ok = True
    except NoParseError:
        deriv = None
        ok = False
    expected = enumerator_accepts(cats, [e.category for e in INVENTORY], S)
    assert ok == expected, f"disagreement on {[str(c) for c in cats]}"
    if deriv is not None:
        assert check(deriv)


def test_exhaustive_agreement_short_sequences():
    # Lengths 1..3 exhaustively over the 12-category pool.
    import itertools
    for n in (1, 2, 3):
        for cats in itertools.product(POOL, repeat=n):
            agreement_case(list(cats))


def test_sampled_agreement_longer_sequences():
    rng = random.Random(19)
    for _ in range(400):
        n = rng.randrange(4, 7)
        cats = [rng.choice(POOL) for _ in range(n)]
        agreement_case(cats)
