"""Persistent document store with correction journals and layer statuses.

Layout: one directory per document, ``p{part}/d{number}/``, holding the raw
text and one file per annotation layer and language, plus an append-only
journal of structured records (JSON lines).  Journal records carry human
corrections (kind ``bow``), gold flags (kind ``gold``), detected conflicts
(kind ``conflict``) and their resolutions (kind ``resolve``).

A layer is Gold when flagged manually checked, else Silver when at least
one correction applies to it, else Bronze; the three statuses partition
every (document, language, layer).  Corrections overrule automatic values
position by position with last-write-wins semantics.  Whole-value layers
(the sentence box and the alignment) treat position 0 as the whole layer.

Concurrency: one writer per document, enforced with an in-process lock per
document directory; readers see a consistent journal prefix because records
are single appended lines.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

GOLD = "Gold"
SILVER = "Silver"
BRONZE = "Bronze"

LAYERS = ("tok", "semtag", "sym", "cat", "drs", "align")
POSITIONAL_LAYERS = ("tok", "semtag", "sym", "cat")
BLOB_LAYERS = ("drs", "align")

LAYER_TITLES = {
    "tok": "Tokens", "semtag": "Semtags", "sym": "Symbols",
    "cat": "Categories", "drs": "DRSs", "align": "Alignments",
}

GOLD_DESIGNATED_PARTS = ("00", "10")

LayerValue = Union[list, str]


class LayerPositionError(IndexError):
    pass


class ConflictStateError(ValueError):
    pass


class UnknownLayerError(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class DocumentId:
    part: str
    number: int

    def __post_init__(self):
        if len(self.part) != 2 or not self.part.isdigit():
            raise ValueError("part must be two digits, 00..99")
        if self.number < 1:
            raise ValueError("document number must be positive")

    @property
    def gold_designated(self) -> bool:
        return self.part in GOLD_DESIGNATED_PARTS

    def __str__(self) -> str:
        return f"{self.part}/{self.number}"


@dataclass(frozen=True)
class BowRecord:
    ts: float
    seq: int
    annotator: str
    lang: str
    layer: str
    position: int
    value: object


@dataclass
class Conflict:
    id: str
    doc: DocumentId
    lang: str
    layer: str
    position: int
    gold_value: object
    new_value: object
    state: str = "Open"  # Open | Resolved
    kept: object = None


def apply_bows(automatic: LayerValue, bows: Sequence[BowRecord]) -> LayerValue:
    """Effective layer: latest correction per position over automatic values.

    ``automatic`` is a list for positional layers (labels are a list of
    one-character strings) or a string blob for whole-value layers.
    """
    ordered = sorted(bows, key=lambda b: (b.ts, b.seq))
    if isinstance(automatic, str):
        value = automatic
        for bow in ordered:
            if bow.position != 0:
                raise LayerPositionError(
                    f"whole-value layer takes position 0, got {bow.position}")
            value = bow.value
        return value
    out = list(automatic)
    for bow in ordered:
        if not 0 <= bow.position < len(out):
            raise LayerPositionError(
                f"position {bow.position} out of range 0..{len(out) - 1}")
        out[bow.position] = bow.value
    return out


def status(bows: Sequence[BowRecord], gold_flag: bool) -> str:
    if gold_flag:
        return GOLD
    if bows:
        return SILVER
    return BRONZE


def detect_conflicts(doc: DocumentId, lang: str, layer: str,
                     old_effective: LayerValue, new_automatic: LayerValue,
                     gold_flag: bool, start_index: int = 1) -> list[Conflict]:
    """Open conflicts wherever a gold layer's new automatic value differs."""
    if not gold_flag:
        return []
    out = []
    counter = start_index
    if isinstance(old_effective, str) or isinstance(new_automatic, str):
        if old_effective != new_automatic:
            out.append(Conflict(f"{doc.part}-{doc.number}-{lang}-{layer}-0-{counter}",
                                doc, lang, layer, 0, old_effective, new_automatic))
        return out
    for i in range(max(len(old_effective), len(new_automatic))):
        old = old_effective[i] if i < len(old_effective) else None
        new = new_automatic[i] if i < len(new_automatic) else None
        if old != new:
            out.append(Conflict(
                f"{doc.part}-{doc.number}-{lang}-{layer}-{i}-{counter}",
                doc, lang, layer, i, old, new))
            counter += 1
    return out


# --- layer file formats -------------------------------------------------------

def layer_to_text(layer: str, value: LayerValue) -> str:
    if layer in BLOB_LAYERS:
        return value if isinstance(value, str) else str(value)
    if layer == "tok":
        return "".join(value) + "\n"
    lines = []
    for i, v in enumerate(value):
        lines.append(f"{i}\t{v if v is not None else '-'}")
    return "\n".join(lines) + ("\n" if lines else "")


def text_to_layer(layer: str, text: str) -> LayerValue:
    if layer in BLOB_LAYERS:
        return text
    if layer == "tok":
        return list(text.rstrip("\n"))
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        _, _, v = line.partition("\t")
        out.append(None if v == "-" else v)
    return out


def token_table(tokens) -> str:
    """Token TSV: id, charStart, charEnd, surface, decomposedFrom."""
    lines = []
    for t in tokens:
        decomposed = t.decomposed_from if t.decomposed_from else "-"
        lines.append(f"{t.id}\t{t.char_start}\t{t.char_end}\t{t.surface}\t{decomposed}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_token_table(text: str):
    from .tokens import Token, GLUE
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        tid, start, end, surface, decomposed = line.split("\t")
        glue_parts = tuple(surface.split(GLUE)) if GLUE in surface else ()
        out.append(Token(int(tid), int(start), int(end), surface, glue_parts,
                         None if decomposed == "-" else decomposed))
    return out


class Bank:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[Path, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # --- paths and listing ---

    def doc_dir(self, doc: DocumentId) -> Path:
        return self.root / f"p{doc.part}" / f"d{doc.number}"

    def _lock(self, doc: DocumentId) -> threading.Lock:
        path = self.doc_dir(doc)
        with self._locks_guard:
            if path not in self._locks:
                self._locks[path] = threading.Lock()
            return self._locks[path]

    def exists(self, doc: DocumentId) -> bool:
        return self.doc_dir(doc).is_dir()

    def list_documents(self, part: Optional[str] = None) -> list[DocumentId]:
        out = []
        for part_dir in sorted(self.root.glob("p[0-9][0-9]")):
            p = part_dir.name[1:]
            if part is not None and p != part:
                continue
            for doc_dir in part_dir.iterdir():
                if doc_dir.is_dir() and doc_dir.name.startswith("d"):
                    out.append(DocumentId(p, int(doc_dir.name[1:])))
        return sorted(out, key=lambda d: (d.part, d.number))

    def languages(self, doc: DocumentId) -> list[str]:
        langs = set()
        directory = self.doc_dir(doc)
        if directory.is_dir():
            for f in directory.glob("*.raw"):
                langs.add(f.name.split(".")[0])
        return sorted(langs)

    # --- raw text and automatic layers ---

    def write_raw(self, doc: DocumentId, lang: str, text: str) -> None:
        directory = self.doc_dir(doc)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / f"{lang}.raw").write_text(text, encoding="utf-8")

    def read_raw(self, doc: DocumentId, lang: str) -> str:
        return (self.doc_dir(doc) / f"{lang}.raw").read_text(encoding="utf-8")

    def layer_path(self, doc: DocumentId, lang: str, layer: str) -> Path:
        if layer not in LAYERS and layer not in ("tokl", "deriv"):
            raise UnknownLayerError(layer)
        suffix = {"tok": "tokl"}.get(layer, layer)
        return self.doc_dir(doc) / f"{lang}.{suffix}"

    def write_automatic(self, doc: DocumentId, lang: str, layer: str,
                        value: LayerValue) -> None:
        path = self.layer_path(doc, lang, layer)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(layer_to_text(layer, value), encoding="utf-8")

    def read_automatic(self, doc: DocumentId, lang: str,
                       layer: str) -> Optional[LayerValue]:
        path = self.layer_path(doc, lang, layer)
        if not path.exists():
            return None
        return text_to_layer(layer, path.read_text(encoding="utf-8"))

    # --- journal ---

    def journal_path(self, doc: DocumentId) -> Path:
        return self.doc_dir(doc) / "journal.jsonl"

    def journal(self, doc: DocumentId) -> list[dict]:
        path = self.journal_path(doc)
        if not path.exists():
            return []
        records = []
        for i, line in enumerate(path.read_text(encoding="utf-8").splitlines()):
            if not line.strip():
                continue
            record = json.loads(line)
            record["seq"] = i
            records.append(record)
        return records

    def _append(self, doc: DocumentId, record: dict) -> dict:
        record = dict(record)
        record.setdefault("ts", time.time())
        with self._lock(doc):
            path = self.journal_path(doc)
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
        return record

    def add_bow(self, doc: DocumentId, lang: str, layer: str, position: int,
                value, annotator: str) -> dict:
        if layer not in LAYERS:
            raise UnknownLayerError(layer)
        if layer in BLOB_LAYERS:
            if position != 0:
                raise LayerPositionError("whole-value layer takes position 0")
        else:
            if position < 0:
                raise LayerPositionError("negative position")
            automatic = self.read_automatic(doc, lang, layer)
            if automatic is not None and position >= len(automatic):
                raise LayerPositionError(
                    f"position {position} out of range 0..{len(automatic) - 1}")
        return self._append(doc, {
            "kind": "bow", "annotator": annotator, "lang": lang,
            "layer": layer, "position": position, "value": value,
        })

    def bows(self, doc: DocumentId, lang: str, layer: str) -> list[BowRecord]:
        out = []
        for r in self.journal(doc):
            if r.get("kind") == "bow" and r["lang"] == lang and r["layer"] == layer:
                out.append(BowRecord(r["ts"], r["seq"], r.get("annotator", "?"),
                                     lang, layer, r["position"], r["value"]))
        return sorted(out, key=lambda b: (b.ts, b.seq))

    def set_gold(self, doc: DocumentId, lang: str, layer: str, flag: bool,
                 annotator: str) -> None:
        if layer not in LAYERS:
            raise UnknownLayerError(layer)
        self._append(doc, {"kind": "gold", "annotator": annotator,
                           "lang": lang, "layer": layer, "value": bool(flag)})

    def gold_flag(self, doc: DocumentId, lang: str, layer: str) -> bool:
        flag = False
        for r in self.journal(doc):
            if r.get("kind") == "gold" and r["lang"] == lang and r["layer"] == layer:
                flag = bool(r["value"])
        return flag

    # --- effective values, statuses, conflicts ---

    def effective(self, doc: DocumentId, lang: str, layer: str) -> Optional[LayerValue]:
        automatic = self.read_automatic(doc, lang, layer)
        bows = self.bows(doc, lang, layer)
        if automatic is None:
            if not bows:
                return None
            automatic = "" if layer in BLOB_LAYERS else []
            # Corrections ahead of automation: positional bows extend the layer.
            if layer not in BLOB_LAYERS:
                size = max(b.position for b in bows) + 1
                automatic = [None] * size
        return apply_bows(automatic, bows)

    def layer_status(self, doc: DocumentId, lang: str, layer: str) -> str:
        return status(self.bows(doc, lang, layer), self.gold_flag(doc, lang, layer))

    def etag(self, doc: DocumentId, lang: str, layer: str) -> str:
        value = self.effective(doc, lang, layer)
        text = layer_to_text(layer, value) if value is not None else ""
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def record_conflicts(self, conflicts: Iterable[Conflict],
                         annotator: str = "pipeline") -> list[Conflict]:
        out = []
        for c in conflicts:
            self._append(c.doc, {
                "kind": "conflict", "annotator": annotator, "id": c.id,
                "lang": c.lang, "layer": c.layer, "position": c.position,
                "gold": c.gold_value, "new": c.new_value,
            })
            out.append(c)
        return out

    def next_conflict_index(self, doc: DocumentId) -> int:
        return 1 + sum(1 for r in self.journal(doc) if r.get("kind") == "conflict")

    def conflicts(self, doc: Optional[DocumentId] = None,
                  state: Optional[str] = None) -> list[Conflict]:
        docs = [doc] if doc is not None else self.list_documents()
        out = []
        for d in docs:
            resolved = {}
            found = []
            for r in self.journal(d):
                if r.get("kind") == "conflict":
                    found.append(Conflict(r["id"], d, r["lang"], r["layer"],
                                          r["position"], r["gold"], r["new"]))
                elif r.get("kind") == "resolve":
                    resolved[r["id"]] = r["kept"]
            for c in found:
                if c.id in resolved:
                    c.state = "Resolved"
                    c.kept = resolved[c.id]
            if state is not None:
                found = [c for c in found if c.state == state]
            out.extend(found)
        return out

    def resolve_conflict(self, doc: DocumentId, conflict_id: str, kept,
                         annotator: str) -> Conflict:
        """Record the adjudicated value: a resolve record plus a new BoW."""
        matching = [c for c in self.conflicts(doc) if c.id == conflict_id]
        if not matching:
            raise KeyError(conflict_id)
        conflict = matching[0]
        if conflict.state != "Open":
            raise ConflictStateError(f"conflict {conflict_id} is not open")
        self._append(doc, {"kind": "resolve", "annotator": annotator,
                           "id": conflict_id, "kept": kept})
        self.add_bow(doc, conflict.lang, conflict.layer, conflict.position,
                     kept, annotator)
        conflict.state = "Resolved"
        conflict.kept = kept
        return conflict

    # --- corpus statistics ---

    def stats(self) -> list[tuple[str, str, int, int, int]]:
        """Document counts per (layer, language, status)."""
        counts: dict[tuple[str, str], list[int]] = {}
        for doc in self.list_documents():
            for lang in self.languages(doc):
                for layer in LAYERS:
                    key = (layer, lang)
                    counts.setdefault(key, [0, 0, 0])
                    s = self.layer_status(doc, lang, layer)
                    counts[key][(GOLD, SILVER, BRONZE).index(s)] += 1
        lang_order = {"en": 0, "de": 1, "it": 2, "nl": 3}
        rows = []
        for layer in LAYERS:
            for (l, lang), (g, s, b) in sorted(
                    counts.items(),
                    key=lambda kv: (lang_order.get(kv[0][1], 9), kv[0][1])):
                if l == layer:
                    rows.append((LAYER_TITLES[layer], lang, g, s, b))
        return rows

    def stats_tsv(self) -> str:
        lines = ["Layer\tLang\tGold\tSilver\tBronze"]
        for layer, lang, g, s, b in self.stats():
            lines.append(f"{layer}\t{lang}\t{g}\t{s}\t{b}")
        return "\n".join(lines) + "\n"
