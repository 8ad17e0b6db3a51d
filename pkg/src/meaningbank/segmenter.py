"""Character-level segmentation into sentences and tokens.

Each character gets one of four labels: S (beginning of sentence), T
(beginning of word), I (inside a word), O (outside a word).  A token may
continue across an O-labelled gap when the material after the gap is
labelled I; the gap is rendered as the glue marker ``~`` in the token
surface, which is how multiword expressions become single tokens.  A T in
the middle of an orthographic word splits a compound; the resulting tokens
record the full word in ``decomposed_from``.

The decoder is a first-order linear sequence model over character-window
n-gram features (window width at most 7), decoded with Viterbi.  Training
is an averaged structured perceptron, deterministic under a fixed seed.
Whitespace characters are structurally forced to O and the first non-O
label on any well-formed document is S; forced overrides (human
corrections) win over both the model and the structural constraints.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .tokens import GLUE, Token

LABELS = ("S", "T", "I", "O")

_BOS = "\x02"
_EOS = "\x03"


class SegmentationError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass
class TrainConfig:
    epochs: int = 12
    seed: int = 1


@dataclass
class SegmenterModel:
    """Feature and transition weights; immutable by convention once trained."""

    features: dict[str, dict[str, float]] = field(default_factory=dict)
    transitions: dict[str, dict[str, float]] = field(default_factory=dict)
    start: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "features": self.features,
            "transitions": self.transitions,
            "start": self.start,
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "SegmenterModel":
        payload = json.loads(text)
        return cls(payload["features"], payload["transitions"], payload["start"])

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "SegmenterModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def char_features(text: str, i: int) -> list[str]:
    """Window n-grams around position i (total width <= 7)."""
    n = len(text)

    def ch(j: int) -> str:
        if j < 0:
            return _BOS
        if j >= n:
            return _EOS
        return text[j]

    feats = [f"u{off}:{ch(i + off)}" for off in range(-3, 4)]
    for off in range(-2, 2):
        feats.append(f"b{off}:{ch(i + off)}{ch(i + off + 1)}")
    feats.append(f"t:{ch(i - 1)}{ch(i)}{ch(i + 1)}")
    return feats


def _emission(model: SegmenterModel, feats: Sequence[str], label: str) -> float:
    table = model.features.get(label)
    if not table:
        return 0.0
    return sum(table.get(f, 0.0) for f in feats)


def decode(text: str, model: SegmenterModel,
           overrides: Iterable[tuple[int, str]] = ()) -> list[str]:
    """Highest-scoring label sequence; override positions are forced."""
    forced = {}
    for pos, label in overrides:
        if not 0 <= pos < len(text):
            raise IndexError(f"override position {pos} out of range")
        if label not in LABELS:
            raise ValueError(f"unknown label {label!r}")
        forced[pos] = label
    if not text:
        return []

    # State: (label, started); `started` flips once any non-O label occurs,
    # and T/I are disallowed before that unless forced.
    back: list[dict[tuple[str, bool], tuple[float, Optional[tuple[str, bool]]]]] = []
    for i, c in enumerate(text):
        feats = char_features(text, i)
        if i in forced:
            allowed = (forced[i],)
        elif c.isspace():
            allowed = ("O",)
        else:
            allowed = LABELS
        column: dict[tuple[str, bool], tuple[float, Optional[tuple[str, bool]]]] = {}
        if i == 0:
            for label in allowed:
                if i not in forced and label in ("T", "I"):
                    continue
                started = label != "O"
                score = model.start.get(label, 0.0) + _emission(model, feats, label)
                column[(label, started)] = (score, None)
        else:
            for label in allowed:
                emit = _emission(model, feats, label)
                for prev_state, (prev_score, _) in back[-1].items():
                    prev_label, prev_started = prev_state
                    if i not in forced and not prev_started and label in ("T", "I"):
                        continue
                    started = prev_started or label != "O"
                    trans = model.transitions.get(prev_label, {}).get(label, 0.0)
                    score = prev_score + trans + emit
                    state = (label, started)
                    if state not in column or score > column[state][0]:
                        column[state] = (score, prev_state)
        if not column:
            # Can only happen under contradictory constraints; fall back to O.
            column[("O", i > 0 and any(s for (_, s) in back[-1]))] = (0.0, None)
        back.append(column)

    # Pick the best final state deterministically (score, then label order).
    final = min(back[-1].items(),
                key=lambda kv: (-kv[1][0], LABELS.index(kv[0][0]), not kv[0][1]))
    labels = []
    state = final[0]
    for i in range(len(text) - 1, -1, -1):
        labels.append(state[0])
        state = back[i][state][1]
    labels.reverse()
    return labels


def train(corpus: Sequence[tuple[str, Sequence[str]]],
          config: TrainConfig = TrainConfig()) -> SegmenterModel:
    """Averaged structured perceptron; deterministic under config.seed."""
    if not corpus:
        raise ValueError("empty training corpus")
    for text, labels in corpus:
        if len(text) != len(labels):
            raise ValueError("text/labels length mismatch")
        for l in labels:
            if l not in LABELS:
                raise ValueError(f"unknown label {l!r}")

    feats_cache = [
        [char_features(text, i) for i in range(len(text))] for text, _ in corpus
    ]

    w: dict[tuple, float] = {}
    acc: dict[tuple, float] = {}
    last: dict[tuple, int] = {}
    step = 0

    def bump(key: tuple, delta: float) -> None:
        acc[key] = acc.get(key, 0.0) + w.get(key, 0.0) * (step - last.get(key, 0))
        last[key] = step
        w[key] = w.get(key, 0.0) + delta

    def materialize() -> SegmenterModel:
        model = SegmenterModel()
        for key, weight in w.items():
            total = acc.get(key, 0.0) + weight * (step - last.get(key, 0))
            avg = total / max(step, 1)
            if avg == 0.0:
                continue
            if key[0] == "f":
                _, label, feat = key
                model.features.setdefault(label, {})[feat] = avg
            elif key[0] == "t":
                _, prev, label = key
                model.transitions.setdefault(prev, {})[label] = avg
            else:
                _, label = key
                model.start[label] = avg
        return model

    rng = random.Random(config.seed)
    order = list(range(len(corpus)))
    for _ in range(config.epochs):
        rng.shuffle(order)
        for idx in order:
            text, gold = corpus[idx]
            gold = list(gold)
            step += 1
            if not text:
                continue
            pred = _viterbi_training(text, feats_cache[idx], w)
            if pred == gold:
                continue
            for i in range(len(text)):
                if pred[i] != gold[i]:
                    for f in feats_cache[idx][i]:
                        bump(("f", gold[i], f), 1.0)
                        bump(("f", pred[i], f), -1.0)
                if i == 0:
                    if pred[0] != gold[0]:
                        bump(("s", gold[0]), 1.0)
                        bump(("s", pred[0]), -1.0)
                else:
                    if (pred[i - 1], pred[i]) != (gold[i - 1], gold[i]):
                        bump(("t", gold[i - 1], gold[i]), 1.0)
                        bump(("t", pred[i - 1], pred[i]), -1.0)
    return materialize()


def _viterbi_training(text: str, feats: list[list[str]], w: dict) -> list[str]:
    """Decode against raw (unaveraged) training weights, same constraints."""
    model = SegmenterModel()
    for key, weight in w.items():
        if key[0] == "f":
            model.features.setdefault(key[1], {})[key[2]] = weight
        elif key[0] == "t":
            model.transitions.setdefault(key[1], {})[key[2]] = weight
        else:
            model.start[key[1]] = weight
    return decode(text, model)


def labels_to_tokens(text: str, labels: Sequence[str]) -> list[Token]:
    """Assemble tokens from a label sequence.

    Pieces separated by O-gaps but continued with I belong to one glued
    token; a T inside an orthographic word starts a new token and marks all
    the word's tokens as decomposed from it.
    """
    if len(text) != len(labels):
        raise SegmentationError("label sequence length differs from text", 0)
    for l in labels:
        if l not in LABELS:
            raise SegmentationError(f"unknown label {l!r}", 0)

    # Pieces: maximal runs of non-O characters. Each piece starts with S, T
    # or I; an I-initial piece continues the currently open token.
    pieces: list[tuple[int, int, str]] = []  # (start, end, head_label)
    i = 0
    n = len(text)
    while i < n:
        if labels[i] == "O":
            i += 1
            continue
        start = i
        head = labels[i]
        if head == "I":
            pass  # continuation; validity checked below
        i += 1
        while i < n and labels[i] == "I":
            i += 1
        pieces.append((start, i, head))

    # Word runs for compound decomposition: maximal non-O runs.
    runs: list[tuple[int, int]] = []
    for start, end, _ in pieces:
        if runs and runs[-1][1] == start:
            runs[-1] = (runs[-1][0], end)
        else:
            runs.append((start, end))

    def run_of(pos: int) -> tuple[int, int]:
        for r in runs:
            if r[0] <= pos < r[1]:
                return r
        raise AssertionError

    # Group pieces into tokens.
    grouped: list[list[tuple[int, int, str]]] = []
    for piece in pieces:
        if piece[2] == "I":
            if not grouped:
                raise SegmentationError("I label with no open token", piece[0])
            grouped[-1].append(piece)
        else:
            grouped.append([piece])

    # Count token starts per run to recognise decompositions. Splitting off
    # punctuation is not a compound split, so only word-like pieces count.
    starts_per_run: dict[tuple[int, int], int] = {}
    for parts in grouped:
        first = parts[0]
        if first[2] in ("S", "T") and _wordlike(text[first[0]:first[1]]):
            r = run_of(first[0])
            starts_per_run[r] = starts_per_run.get(r, 0) + 1

    tokens: list[Token] = []
    for tid, parts in enumerate(grouped):
        start = parts[0][0]
        end = parts[-1][1]
        texts = [text[a:b] for a, b, _ in parts]
        surface = GLUE.join(texts)
        glue_parts = tuple(texts) if len(texts) > 1 else ()
        decomposed = None
        runs_touched = {run_of(a) for a, _, _ in parts}
        if len(runs_touched) == 1 and _wordlike(surface):
            run = next(iter(runs_touched))
            if starts_per_run.get(run, 0) >= 2:
                decomposed = text[run[0]:run[1]]
        tokens.append(Token(tid, start, end, surface, glue_parts, decomposed))
    return tokens


def _wordlike(piece: str) -> bool:
    return any(c.isalnum() for c in piece)


def sentences(tokens: Sequence[Token], labels: Sequence[str]) -> list[list[Token]]:
    """Group tokens into sentences; each S-initial token begins one."""
    out: list[list[Token]] = []
    for tok in tokens:
        if labels[tok.char_start] == "S" or not out:
            out.append([])
        out[-1].append(tok)
    return out


def labels_to_string(labels: Sequence[str]) -> str:
    return "".join(labels)


def string_to_labels(text: str) -> list[str]:
    return list(text)
