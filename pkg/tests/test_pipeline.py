import pytest

from meaningbank.bank import Bank, DocumentId
from meaningbank.drs import alpha_equal
from meaningbank.pipeline import (
    AppConfig, LanguageConfig, LanguageModels, interpret_doc, project_doc,
    projection_record, reannotate_doc, run_full, segment_doc, semtag_doc,
    symbolize_doc,
)
from meaningbank.projector import VERIFIED
from oracles import bruteforce_alpha_equal
from sentence_fixtures import (
    ALIGNMENT, FINAL_BOX, SENTENCE_DE, SENTENCE_EN, SYMBOLS_EN, TOKENS_DE,
    TOKENS_EN,
)


@pytest.fixture(scope="module")
def config():
    return AppConfig()


@pytest.fixture
def bank(tmp_path):
    return Bank(tmp_path / "bank")


@pytest.fixture
def doc(bank):
    d = DocumentId("00", 3178)
    bank.write_raw(d, "en", SENTENCE_EN)
    bank.write_raw(d, "de", SENTENCE_DE)
    align = " ".join(f"{s}-{t}" for s, t in ALIGNMENT)
    bank.write_automatic(d, "de", "align", align + "\n")
    return d


def test_segment_stage(bank, doc, config):
    tokens = segment_doc(bank, doc, "en", config.models("en"))
    assert [t.surface for t in tokens] == TOKENS_EN
    assert bank.read_automatic(doc, "en", "tok") is not None


def test_semtag_and_symbol_stages(bank, doc, config):
    models = config.models("en")
    segment_doc(bank, doc, "en", models)
    tags = semtag_doc(bank, doc, "en", models)
    assert [t.lower() for t in tags] == ["pro", "eps", "ist", "rel", "clo"]
    symbols = symbolize_doc(bank, doc, "en", models)
    assert symbols == SYMBOLS_EN


def test_interpret_writes_expected_box(bank, doc, config):
    models = config.models("en")
    boxes = run_full(bank, doc, "en", models)
    assert len(boxes) == 1
    assert bruteforce_alpha_equal(boxes[0], FINAL_BOX)
    drs_text = bank.effective(doc, "en", "drs")
    assert "Role Theme e1 x1" in drs_text
    assert 'Value x2 "17:00"' in drs_text


def test_stage_outputs_byte_stable(bank, doc, config):
    models = config.models("en")
    run_full(bank, doc, "en", models)
    first = {
        layer: bank.layer_path(doc, "en", layer).read_bytes()
        for layer in ("tok", "semtag", "sym", "cat", "drs")
    }
    run_full(bank, doc, "en", models)
    second = {
        layer: bank.layer_path(doc, "en", layer).read_bytes()
        for layer in ("tok", "semtag", "sym", "cat", "drs")
    }
    assert first == second


def test_bank_level_projection(bank, doc, config):
    run_full(bank, doc, "en", config.models("en"))
    segment_doc(bank, doc, "de", config.models("de"))
    results = project_doc(bank, doc, "en", "de", config.models("en"),
                          config.models("de"))
    assert [r.status for r in results] == [VERIFIED]
    tags = bank.effective(doc, "de", "semtag")
    assert [t.lower() for t in tags] == ["pro", "eps", "rel", "clo", "ist"]
    assert bank.effective(doc, "de", "sym") == ["male", "come", "at", "17:00", "back"]
    record = projection_record(bank, doc, "de")
    assert record["sentences"][0]["status"] == VERIFIED
    assert len(record["sentences"][0]["alignment"]) == 5
    de_drs = bank.effective(doc, "de", "drs")
    assert de_drs and "come" in de_drs


def test_semtag_bow_respected_in_downstream(bank, doc, config):
    models = config.models("en")
    segment_doc(bank, doc, "en", models)
    semtag_doc(bank, doc, "en", models)
    bank.add_bow(doc, "en", "semtag", 2, "CON", "alice")
    assert bank.effective(doc, "en", "semtag")[2] == "CON"
    symbols = symbolize_doc(bank, doc, "en", models)
    assert symbols[2] == "back"  # concept symbol still lemmatized surface


def test_reannotate_reports_exact_gold_diffs(bank, doc, config, tmp_path):
    models = config.models("en")
    run_full(bank, doc, "en", models)
    bank.set_gold(doc, "en", "semtag", True, "alice")

    # Swap the tag lexicon: "back" now tags CON instead of IST.
    lexicon = tmp_path / "swapped.tsv"
    lexicon.write_text(
        "en\tcame\tEPS\t4\nen\tat\tREL\t4\nen\tback\tCON\t4\n",
        encoding="utf-8")
    swapped_config = LanguageConfig.default("en")
    swapped_config.tag_lexicon = lexicon
    swapped = LanguageModels(swapped_config)

    old_effective = bank.effective(doc, "en", "semtag")
    new_expected = ["PRO", "EPS", "CON", "REL", "CLO"]
    expected_positions = [i for i, (a, b) in
                          enumerate(zip(old_effective, new_expected)) if a != b]

    conflicts = reannotate_doc(bank, doc, "en", swapped)
    semtag_conflicts = [c for c in conflicts if c.layer == "semtag"]
    assert [c.position for c in semtag_conflicts] == expected_positions
    assert semtag_conflicts[0].gold_value == "IST"
    assert semtag_conflicts[0].new_value == "CON"
    # Non-gold layers adopt changes silently: no conflicts beyond semtag
    # besides the dependent category/derivation layers which are not gold.
    assert all(c.layer == "semtag" for c in conflicts)


def test_reannotate_unchanged_is_quiet(bank, doc, config):
    models = config.models("en")
    run_full(bank, doc, "en", models)
    for layer in ("tok", "semtag", "sym", "cat", "drs"):
        bank.set_gold(doc, "en", layer, True, "alice")
    assert reannotate_doc(bank, doc, "en", models) == []


def test_multi_sentence_document(bank, config):
    d = DocumentId("01", 9)
    bank.write_raw(d, "en", "He came back. He saw a table.")
    models = config.models("en")
    boxes = run_full(bank, d, "en", models)
    assert len(boxes) == 2
    deriv_text = (bank.doc_dir(d) / "en.deriv").read_text(encoding="utf-8")
    assert len(deriv_text.strip().splitlines()) == 2
    drs_text = bank.effective(d, "en", "drs")
    assert drs_text.count("b1 REF") >= 2


def test_sentence_alignment_override_file(bank, config):
    d = DocumentId("01", 10)
    # Two English sentences; the German counterpart reverses their order.
    bank.write_raw(d, "en", "He came back. He saw a table.")
    bank.write_raw(d, "de", "Er sah einen Tisch. Er kam zurück.")
    run_full(bank, d, "en", config.models("en"))
    # Word alignments, one line per sentence pair (override order):
    # pair 0: en sentence 0 <-> de sentence 1; pair 1: en 1 <-> de 0.
    bank.write_automatic(d, "de", "align", "0-0 1-1 2-2\n0-0 1-1 2-2 3-3\n")
    (bank.doc_dir(d) / "de.salign").write_text("0\t1\n1\t0\n", encoding="utf-8")
    results = project_doc(bank, d, "en", "de", config.models("en"),
                          config.models("de"))
    assert len(results) == 2
    tags = bank.effective(d, "de", "semtag")
    # The German first sentence carries the projection of the second English
    # sentence (the transitive one with its determiner).
    assert "DIS" in tags[:4]


def test_reannotate_quiet_at_corrected_positions(bank, doc, config):
    # A correction on a gold layer is already adjudicated: rerunning the
    # unchanged models must not conflict with it.
    models = config.models("en")
    run_full(bank, doc, "en", models)
    bank.add_bow(doc, "en", "semtag", 2, "CON", "alice")
    bank.set_gold(doc, "en", "semtag", True, "alice")
    assert reannotate_doc(bank, doc, "en", models) == []
