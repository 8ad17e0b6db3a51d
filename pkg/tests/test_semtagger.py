import pytest

from meaningbank.semtagger import (
    TagLexicon, UnknownLanguageError, UnknownTagError, default_tagset, tag,
    train_lexicon,
)
from meaningbank.tokens import Token


def tok(i, surface):
    start = i * 12
    return Token(i, start, start + len(surface), surface)


def toks(*surfaces):
    return [tok(i, s) for i, s in enumerate(surfaces)]


def test_default_tagset_negation():
    ts = default_tagset()
    entry = ts.lookup("NOT")
    assert entry.coarse == "Negation"
    assert entry.description == "negation trigger"
    assert entry.symbol_free


def test_default_tagset_clock_has_symbol():
    ts = default_tagset()
    assert ts.lookup("CLO").symbol_free is False


def test_default_tagset_unknown_absent():
    assert default_tagset().lookup("XYZ") is None


def test_default_tagset_quoted_inventory_present():
    ts = default_tagset()
    for code in ["NOT", "POS", "ROL", "CON", "PRO", "EPS", "IST", "REL", "DIS",
                 "CLO", "NIL", "UNK"]:
        assert code in ts


def test_coarse_classes_unique_per_tag():
    ts = default_tagset()
    assert all(e.coarse for e in ts.entries.values())


def test_tag_negation_from_lexicon():
    lex = train_lexicon([("en", "not", "NOT")])
    assert tag(toks("not"), "en", lex) == ["NOT"]


def test_tag_clock_heuristic():
    assert tag(toks("5~o'clock"), "en") == ["CLO"]
    assert tag(toks("2~pm"), "en") == ["CLO"]
    assert tag(toks("17"), "en") == ["CLO"]


def test_tag_role_from_lexicon():
    lex = train_lexicon([("en", "boxer", "ROL")])
    assert tag(toks("boxer"), "en", lex) == ["ROL"]


def test_tag_pronoun_heuristic():
    assert tag(toks("He"), "en") == ["PRO"]
    assert tag(toks("Er"), "de") == ["PRO"]


def test_tag_capitalized_mid_sentence():
    out = tag(toks("He", "saw", "Mary"), "en")
    assert out[2] == "NAM"


def test_tag_sentence_initial_capital_not_name():
    out = tag(toks("Table", "legs"), "en")
    assert out[0] == "CON"


def test_tag_punctuation():
    assert tag(toks("."), "en") == ["NIL"]


def test_tag_fallback_concept():
    assert tag(toks("zzgarble"), "en") == ["CON"]


def test_tag_override_wins_and_is_local():
    lex = train_lexicon([("en", "boxer", "CON")])
    base = tag(toks("the", "boxer", "won"), "en", lex)
    changed = tag(toks("the", "boxer", "won"), "en", lex, overrides={1: "ROL"})
    assert changed[1] == "ROL"
    assert [changed[0], changed[2]] == [base[0], base[2]]


def test_tag_unknown_language():
    with pytest.raises(UnknownLanguageError):
        tag(toks("hello"), "xx")


def test_tag_total_and_in_tagset():
    ts = default_tagset()
    out = tag(toks("He", "came", "back", "at", "5~o'clock"), "en")
    assert len(out) == 5
    assert all(t in ts for t in out)


def test_train_lexicon_counts():
    lex = train_lexicon([("en", "he", "PRO")])
    assert lex.ranked("en", "he") == [("PRO", 1)]
    lex = train_lexicon([("en", "he", "PRO"), ("en", "he", "PRO")])
    assert lex.ranked("en", "he") == [("PRO", 2)]


def test_train_lexicon_ranking_by_count():
    rows = [("en", "word", "CON")] * 3 + [("en", "word", "ROL")]
    lex = train_lexicon(rows)
    assert lex.top("en", "word") == "CON"


def test_train_lexicon_tie_breaks_by_code():
    rows = [("en", "word", "ROL"), ("en", "word", "CON")]
    assert train_lexicon(rows).top("en", "word") == "CON"


def test_train_lexicon_unknown_tag():
    with pytest.raises(UnknownTagError):
        train_lexicon([("en", "he", "QQQ")])


def test_retraining_superset_only_reranks():
    base_rows = [("en", "word", "CON"), ("en", "word", "ROL")]
    more_rows = base_rows + [("en", "word", "ROL"), ("en", "word", "ROL")]
    base = train_lexicon(base_rows)
    more = train_lexicon(more_rows)
    base_tags = {t for t, _ in base.ranked("en", "word")}
    more_tags = {t for t, _ in more.ranked("en", "word")}
    assert base_tags <= more_tags
    assert more.top("en", "word") == "ROL"


def test_lexicon_tsv_roundtrip():
    lex = train_lexicon([("en", "he", "PRO"), ("de", "er", "PRO")])
    clone = TagLexicon.from_tsv(lex.to_tsv())
    assert clone.counts == lex.counts
