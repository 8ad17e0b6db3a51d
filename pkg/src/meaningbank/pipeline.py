"""Pipeline configuration and document-level stage drivers.

Stages communicate only through the bank's layer files, so any stage output
can be replaced by a human-edited value; corrections enter each stage
through its own override mechanism (forced labels for segmentation,
per-token overrides elsewhere).  Stored automatic layers always hold pure
model output; effective values apply the journal on top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import data
from .bank import (
    Bank, Conflict, DocumentId, LayerPositionError, apply_bows,
    detect_conflicts, token_table,
)
from .categories import Category, parse_category
from .chartparser import (
    DerivNode, EmptyInventory, NoParseError, parse, to_sexpr,
)
from .composer import (
    FreshRefs, RoleLexicon, TemplateError, TemplateRegistry, compose,
    lexical_semantics, load_role_names,
)
from .drs import clausal
from .terms import ComposeError, KindError
from .projector import (
    ProjectionConfig, ProjectionResult, SentencePair, SourceSentence,
    align_sentences, parse_alignment_file, project,
)
from .segmenter import SegmenterModel, decode, labels_to_tokens, sentences
from .semtagger import TagLexicon, TagSet, tag
from .symbolizer import Gazetteer, load_irregular, symbolize
from .tokens import Token, TokenAnnotation

DEFAULT_CROSSED = ("de", "nl")


class ConfigError(ValueError):
    pass


@dataclass
class LanguageConfig:
    language: str
    segmenter_model: Path
    tagset: Path
    tag_lexicon: Optional[Path] = None
    gazetteer: Optional[Path] = None
    irregular: Optional[Path] = None
    catlex: Optional[Path] = None
    catdefaults: Optional[Path] = None
    templates: Optional[Path] = None
    role_names: Optional[Path] = None
    verb_roles: Optional[Path] = None
    empties: Optional[Path] = None
    goal: str = "S"
    crossed: Optional[bool] = None

    @classmethod
    def default(cls, lang: str) -> "LanguageConfig":
        def maybe(rel: str) -> Optional[Path]:
            p = data.path(rel)
            return p if p.exists() else None

        return cls(
            language=lang,
            segmenter_model=data.path(f"models/segmenter.{lang}.json"),
            tagset=data.path("tagset.tsv"),
            tag_lexicon=maybe(f"taglex/{lang}.tsv"),
            gazetteer=maybe(f"gazetteers/{lang}.tsv"),
            irregular=maybe(f"irregular/{lang}.tsv"),
            catlex=maybe(f"catlex/{lang}.tsv"),
            catdefaults=data.path("catdefaults.tsv"),
            templates=data.path("templates.tsv"),
            role_names=data.path("role_names.txt"),
            verb_roles=data.path("verb_roles.tsv"),
            empties=data.path("empties.tsv"),
            crossed=lang in DEFAULT_CROSSED,
        )


class LanguageModels:
    """All per-language resources, loaded and validated eagerly."""

    def __init__(self, config: LanguageConfig):
        self.config = config
        self.language = config.language
        try:
            self.segmenter = SegmenterModel.load(config.segmenter_model)
            self.tagset = TagSet.from_file(config.tagset)
            self.tag_lexicon = TagLexicon.from_file(config.tag_lexicon) \
                if config.tag_lexicon else TagLexicon()
            self.gazetteer = Gazetteer.from_file(config.gazetteer) \
                if config.gazetteer else Gazetteer()
            self.irregular = load_irregular(config.language) \
                if config.irregular is None else _read_pairs(config.irregular)
            self.catlex = _read_pairs(config.catlex) if config.catlex else {}
            self.catdefaults = _read_pairs(config.catdefaults) \
                if config.catdefaults else {}
            role_names = {l.strip() for l in
                          Path(config.role_names).read_text(encoding="utf-8").splitlines()
                          if l.strip()} if config.role_names else load_role_names()
            self.roles = RoleLexicon.from_file(config.verb_roles, role_names) \
                if config.verb_roles else RoleLexicon(role_names=role_names)
            self.registry = TemplateRegistry.from_file(config.templates, role_names) \
                if config.templates else TemplateRegistry([])
            self.empties_spec = _read_pairs(config.empties) if config.empties else {}
            self.goal: Category = parse_category(config.goal)
            self.crossed = config.crossed if config.crossed is not None \
                else config.language in DEFAULT_CROSSED
        except FileNotFoundError as exc:
            raise ConfigError(f"missing model file: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(f"bad model file: {exc}") from exc

    def inventory(self, fresh: FreshRefs) -> EmptyInventory:
        from .chartparser import EmptyElement
        elements = []
        for cat_text, semtag in self.empties_spec.items():
            category = parse_category(cat_text)
            term = lexical_semantics(semtag, category, None, self.roles,
                                     self.registry, fresh)
            elements.append(EmptyElement(category, semtag.upper(), term))
        return EmptyInventory(tuple(elements))


def _read_pairs(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("\t")
        out[key] = value
    return out


class AppConfig:
    """Per-language configs; built-in package data unless a file overrides."""

    def __init__(self, overrides: Optional[dict[str, LanguageConfig]] = None):
        self.overrides = overrides or {}
        self._models: dict[str, LanguageModels] = {}

    @classmethod
    def load(cls, path) -> "AppConfig":
        base = Path(path).parent
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        overrides = {}
        for lang, section in payload.get("languages", {}).items():
            defaults = LanguageConfig.default(lang)
            for key, value in section.items():
                if key in ("goal",):
                    defaults.goal = value
                elif key == "crossed":
                    defaults.crossed = bool(value)
                elif hasattr(defaults, key):
                    setattr(defaults, key, base / value)
                else:
                    raise ConfigError(f"unknown config key {key!r}")
            overrides[lang] = defaults
        config = cls(overrides)
        for lang in overrides:
            config.models(lang)  # validate eagerly
        return config

    def models(self, lang: str) -> LanguageModels:
        if lang not in self._models:
            config = self.overrides.get(lang) or LanguageConfig.default(lang)
            self._models[lang] = LanguageModels(config)
        return self._models[lang]


# --- stage drivers ------------------------------------------------------------

def tok_overrides(bank: Bank, doc: DocumentId, lang: str) -> list[tuple[int, str]]:
    return [(b.position, b.value) for b in bank.bows(doc, lang, "tok")]


def effective_labels(bank: Bank, doc: DocumentId, lang: str,
                     models: LanguageModels) -> tuple[str, list[str]]:
    raw = bank.read_raw(doc, lang)
    labels = decode(raw, models.segmenter, tok_overrides(bank, doc, lang))
    return raw, labels


def segment_doc(bank: Bank, doc: DocumentId, lang: str,
                models: LanguageModels) -> list[Token]:
    raw = bank.read_raw(doc, lang)
    pure = decode(raw, models.segmenter)
    bank.write_automatic(doc, lang, "tok", pure)
    labels = decode(raw, models.segmenter, tok_overrides(bank, doc, lang))
    tokens = labels_to_tokens(raw, labels)
    (bank.doc_dir(doc) / f"{lang}.tok").write_text(token_table(tokens),
                                                   encoding="utf-8")
    return tokens


def effective_tokens(bank: Bank, doc: DocumentId, lang: str,
                     models: LanguageModels) -> tuple[list[Token], list[list[Token]]]:
    raw, labels = effective_labels(bank, doc, lang, models)
    tokens = labels_to_tokens(raw, labels)
    return tokens, sentences(tokens, labels)


def semtag_doc(bank: Bank, doc: DocumentId, lang: str,
               models: LanguageModels) -> list[str]:
    tokens, sents = effective_tokens(bank, doc, lang, models)
    initial = {s[0].id for s in sents if s}
    pure = tag(tokens, lang, models.tag_lexicon, None, models.tagset, initial)
    bank.write_automatic(doc, lang, "semtag", pure)
    return bank.effective(doc, lang, "semtag")


def effective_semtags(bank: Bank, doc: DocumentId, lang: str) -> list[str]:
    tags = bank.effective(doc, lang, "semtag")
    if tags is None:
        raise ConfigError(f"semtag layer missing for {doc}/{lang}")
    return tags


def symbolize_doc(bank: Bank, doc: DocumentId, lang: str,
                  models: LanguageModels) -> list[Optional[str]]:
    tokens, _ = effective_tokens(bank, doc, lang, models)
    semtags = effective_semtags(bank, doc, lang)
    pure = [
        symbolize(tok, semtags[i], lang, models.gazetteer,
                  tagset=models.tagset, irregular=models.irregular)
        for i, tok in enumerate(tokens)
    ]
    bank.write_automatic(doc, lang, "sym", pure)
    return bank.effective(doc, lang, "sym")


def assign_categories(tokens: list[Token], semtags: list[str],
                      models: LanguageModels) -> list[Optional[str]]:
    out = []
    for tok, semtag in zip(tokens, semtags):
        if semtag.upper() == "NIL":
            out.append(None)  # punctuation takes no part in the derivation
            continue
        cat = models.catlex.get(tok.surface.lower()) or \
            models.catdefaults.get(semtag.upper())
        out.append(cat)
    return out


def categorize_doc(bank: Bank, doc: DocumentId, lang: str,
                   models: LanguageModels) -> list[Optional[str]]:
    tokens, _ = effective_tokens(bank, doc, lang, models)
    semtags = effective_semtags(bank, doc, lang)
    pure = assign_categories(tokens, semtags, models)
    bank.write_automatic(doc, lang, "cat", pure)
    return bank.effective(doc, lang, "cat")


def build_annotations(bank: Bank, doc: DocumentId, lang: str,
                      models: LanguageModels, fresh: FreshRefs
                      ) -> tuple[list[list[TokenAnnotation]], list[list[Token]]]:
    """Per-sentence annotation bundles with lexical terms attached."""
    tokens, sents = effective_tokens(bank, doc, lang, models)
    semtags = effective_semtags(bank, doc, lang)
    symbols = bank.effective(doc, lang, "sym")
    cats = bank.effective(doc, lang, "cat")
    if symbols is None or cats is None:
        raise ConfigError(f"sym/cat layers missing for {doc}/{lang}")
    per_sentence = []
    for sent in sents:
        anns = []
        for tok in sent:
            semtag = semtags[tok.id]
            if cats[tok.id] is None:
                if semtag.upper() == "NIL":
                    continue  # punctuation stays out of the derivation
                raise ConfigError(
                    f"no category for token {tok.id} ({tok.surface!r}, "
                    f"{semtag}); extend the category lexicon or defaults")
            category = parse_category(cats[tok.id])
            symbol = symbols[tok.id]
            if models.tagset.symbol_free(semtag):
                symbol = None  # symbol-free tags never carry one
            term = lexical_semantics(semtag, category, symbol, models.roles,
                                     models.registry, fresh)
            anns.append(TokenAnnotation(tok, semtag, symbol, category, term))
        per_sentence.append(anns)
    return per_sentence, sents


def parse_doc(bank: Bank, doc: DocumentId, lang: str,
              models: LanguageModels) -> list[DerivNode]:
    categorize_doc(bank, doc, lang, models)
    fresh = FreshRefs()
    per_sentence, _ = build_annotations(bank, doc, lang, models, fresh)
    inventory = models.inventory(fresh)
    derivs = [parse(anns, inventory, models.goal, models.crossed)
              for anns in per_sentence if anns]
    text = "\n".join(to_sexpr(d) for d in derivs) + "\n"
    (bank.doc_dir(doc) / f"{lang}.deriv").write_text(text, encoding="utf-8")
    return derivs


def interpret_doc(bank: Bank, doc: DocumentId, lang: str,
                  models: LanguageModels) -> list:
    derivs = parse_doc(bank, doc, lang, models)
    boxes = [compose(d) for d in derivs]
    text = "\n".join(clausal(b) for b in boxes)
    bank.write_automatic(doc, lang, "drs", text)
    return boxes


def run_full(bank: Bank, doc: DocumentId, lang: str, models: LanguageModels):
    segment_doc(bank, doc, lang, models)
    semtag_doc(bank, doc, lang, models)
    symbolize_doc(bank, doc, lang, models)
    return interpret_doc(bank, doc, lang, models)


def reannotate_doc(bank: Bank, doc: DocumentId, lang: str,
                   models: LanguageModels) -> list[Conflict]:
    """Rerun all stages; report conflicts wherever gold layers would change."""
    conflicts: list[Conflict] = []
    raw = bank.read_raw(doc, lang)

    def diff(layer: str, new_value) -> None:
        old = bank.effective(doc, lang, layer)
        if old is None or not bank.gold_flag(doc, lang, layer):
            return
        # Corrections stay applied on both sides: positions a human already
        # adjudicated never conflict, so unchanged automatic output is quiet.
        try:
            new_effective = apply_bows(new_value, bank.bows(doc, lang, layer))
        except LayerPositionError:
            new_effective = new_value
        found = detect_conflicts(doc, lang, layer, old, new_effective,
                                 True, bank.next_conflict_index(doc) +
                                 len(conflicts))
        conflicts.extend(found)

    diff("tok", decode(raw, models.segmenter))
    segment_doc(bank, doc, lang, models)

    tokens, sents = effective_tokens(bank, doc, lang, models)
    initial = {s[0].id for s in sents if s}
    diff("semtag", tag(tokens, lang, models.tag_lexicon, None,
                       models.tagset, initial))
    semtag_doc(bank, doc, lang, models)

    semtags = effective_semtags(bank, doc, lang)
    diff("sym", [symbolize(tok, semtags[i], lang, models.gazetteer,
                           tagset=models.tagset, irregular=models.irregular)
                 for i, tok in enumerate(tokens)])
    symbolize_doc(bank, doc, lang, models)

    diff("cat", assign_categories(tokens, semtags, models))
    categorize_doc(bank, doc, lang, models)

    try:
        fresh = FreshRefs()
        per_sentence, _ = build_annotations(bank, doc, lang, models, fresh)
        inventory = models.inventory(fresh)
        derivs = [parse(anns, inventory, models.goal, models.crossed)
                  for anns in per_sentence if anns]
        drs_text = "\n".join(clausal(compose(d)) for d in derivs)
        diff("drs", drs_text)
        interpret_doc(bank, doc, lang, models)
    except (NoParseError, TemplateError, ComposeError, KindError):
        pass  # leave stale derivation artifacts; earlier conflicts still count
    bank.record_conflicts(conflicts)
    return conflicts


def project_doc(bank: Bank, doc: DocumentId, source_lang: str, target_lang: str,
                source_models: LanguageModels, target_models: LanguageModels
                ) -> list[ProjectionResult]:
    """Project source annotations to the target language, sentence by sentence."""
    fresh = FreshRefs()
    per_sentence, source_sents = build_annotations(bank, doc, source_lang,
                                                   source_models, fresh)
    inventory = source_models.inventory(fresh)
    sources = []
    source_maps = []  # sentence-local raw token index -> annotation index
    for anns, sent in zip(per_sentence, source_sents):
        if not anns:
            continue
        deriv = parse(anns, inventory, source_models.goal, source_models.crossed)
        sources.append(SourceSentence(tuple(anns), deriv, compose(deriv)))
        base = sent[0].id
        by_token = {ann.token.id: k for k, ann in enumerate(anns)}
        source_maps.append({tok.id - base: by_token[tok.id]
                            for tok in sent if tok.id in by_token})

    segment_doc(bank, doc, target_lang, target_models)
    target_tokens, target_sents = effective_tokens(bank, doc, target_lang,
                                                   target_models)
    align_text = bank.effective(doc, target_lang, "align")
    if align_text is None:
        raise ConfigError(f"alignment layer missing for {doc}/{target_lang}")
    word_alignments = parse_alignment_file(align_text)

    overrides = _sentence_overrides(bank, doc, target_lang)
    pairs = align_sentences(len(sources), len(target_sents), overrides)
    pairs = [(i, j) for i, j in pairs
             if i < len(sources) and j < len(target_sents)]
    results = []
    config = ProjectionConfig(
        target_lang=target_lang,
        registry=target_models.registry,
        roles=target_models.roles,
        tagset=target_models.tagset,
        gazetteer=target_models.gazetteer,
        goal=target_models.goal,
        crossed=target_models.crossed,
    )
    for k, (i, j) in enumerate(pairs):
        sent_tokens = target_sents[j]
        base = sent_tokens[0].id
        local = [Token(t.id - base, t.char_start, t.char_end, t.surface,
                       t.glue_parts, t.decomposed_from) for t in sent_tokens]
        raw_pairs = word_alignments[k] if k < len(word_alignments) else []
        # Alignment files index raw sentence tokens; the source side maps
        # onto the punctuation-free annotation sequence the parser saw.
        alignment = [(source_maps[i][s], t) for s, t in raw_pairs
                     if s in source_maps[i] and t < len(local)]
        pair = SentencePair(sources[i], tuple(local), tuple(alignment))
        results.append(project(pair, config))

    # Write target layers from the per-sentence results.
    n = len(target_tokens)
    semtags = ["NIL"] * n
    symbols: list[Optional[str]] = [None] * n
    cats: list[Optional[str]] = [None] * n
    deriv_lines = []
    drs_chunks = []
    for j, result in enumerate(results):
        base = target_sents[pairs[j][1]][0].id if j < len(pairs) else 0
        for ann in result.annotations:
            idx = base + ann.token.id
            semtags[idx] = ann.semtag
            symbols[idx] = ann.symbol
            cats[idx] = str(ann.category) if ann.category else None
        if result.deriv is not None:
            deriv_lines.append(to_sexpr(result.deriv))
        if result.drs is not None:
            drs_chunks.append(clausal(result.drs))
    bank.write_automatic(doc, target_lang, "semtag", semtags)
    bank.write_automatic(doc, target_lang, "sym", symbols)
    bank.write_automatic(doc, target_lang, "cat", cats)
    if deriv_lines:
        (bank.doc_dir(doc) / f"{target_lang}.deriv").write_text(
            "\n".join(deriv_lines) + "\n", encoding="utf-8")
    if drs_chunks:
        bank.write_automatic(doc, target_lang, "drs", "\n".join(drs_chunks))

    record = {
        "source_lang": source_lang,
        "target_lang": target_lang,
        "sentences": [
            {
                "status": r.status,
                "reason": r.reason,
                "alignment": [list(p) for p in word_alignments[k]]
                if k < len(word_alignments) else [],
                "notes": r.notes,
            }
            for k, r in enumerate(results)
        ],
    }
    (bank.doc_dir(doc) / f"{target_lang}.proj.json").write_text(
        json.dumps(record, ensure_ascii=False, indent=1), encoding="utf-8")
    return results


def projection_record(bank: Bank, doc: DocumentId, lang: str) -> Optional[dict]:
    path = bank.doc_dir(doc) / f"{lang}.proj.json"
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))


def _sentence_overrides(bank: Bank, doc: DocumentId,
                        lang: str) -> Optional[list[tuple[int, int]]]:
    """Manual sentence alignment ({lang}.salign, TSV srcIdx tgtIdx); replaces
    the one-to-one heuristic wholesale when present."""
    path = bank.doc_dir(doc) / f"{lang}.salign"
    if not path.exists():
        return None
    pairs = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        src, tgt = line.split("\t")
        pairs.append((int(src), int(tgt)))
    return pairs
