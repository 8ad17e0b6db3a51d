"""Regenerate the segmenter models shipped as package data.

Each language model is trained on a small deterministic corpus that covers
ordinary word/sentence boundaries, glued multiword expressions (times like
"5 o'clock" / "fünf Uhr"), and a few decomposed compounds.  Training is
seeded, so rerunning this script reproduces the committed files bit for bit.
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.segmenter import TrainConfig, train  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "src" / "meaningbank" / "data" / "models"


def label_word(word, first):
    return ("S" if first else "T") + "I" * (len(word) - 1)


def sentence(words, glue_indices=(), decompose=None, period=True):
    """Build (text, labels); glue_indices are word indices glued to the next."""
    text_parts = []
    label_parts = []
    for i, w in enumerate(words):
        if decompose and i in decompose:
            prefix, stem = decompose[i]
            label = label_word(prefix, i == 0) + "T" + "I" * (len(stem) - 1)
            w = prefix + stem
        else:
            label = label_word(w, i == 0)
        text_parts.append(w)
        label_parts.append(label)
    for i in glue_indices:
        # Continue the token across the gap: the next word starts with I.
        label_parts[i + 1] = "I" + label_parts[i + 1][1:]
    text = " ".join(text_parts)
    labels = "O".join(label_parts)
    if period:
        # Sentence-final punctuation is its own token.
        text += "."
        labels += "T"
    return text, labels


CORPORA = {
    "en": {
        "vocab": ["he", "she", "it", "we", "they", "came", "went", "saw", "ran",
                  "sat", "back", "here", "there", "now", "then", "at", "in",
                  "on", "home", "away", "the", "a", "man", "woman", "dog",
                  "bird", "table", "wheel", "boxer", "quickly", "slowly",
                  "again", "today", "around", "outside", "opinion", "not"],
        "time_tails": ["o'clock", "pm", "am"],
        "imperatives": ["Go.", "Run.", "Stop.", "Wait."],
        "decompose": [("im", "possible"), ("un", "happy")],
        "extra": ["He came back at 5 o'clock"],
    },
    "de": {
        "vocab": ["er", "sie", "es", "wir", "kam", "ging", "sah", "lief",
                  "zurück", "hier", "dort", "jetzt", "um", "an", "in", "nach",
                  "hause", "weg", "der", "die", "das", "ein", "mann", "frau",
                  "hund", "tisch", "rad", "schnell", "langsam", "wieder",
                  "heute", "draußen", "nicht"],
        "time_tails": ["Uhr"],
        "time_words": ["fünf", "zwei", "drei", "vier", "sechs", "sieben",
                       "acht", "neun", "zehn", "elf", "zwölf", "ein"],
        "imperatives": ["Geh.", "Lauf.", "Warte."],
        "decompose": [],
        "extra": ["Er kam um fünf Uhr zurück"],
    },
    "it": {
        "vocab": ["lui", "lei", "noi", "venne", "andò", "vide", "corse",
                  "indietro", "qui", "là", "ora", "a", "in", "casa", "via",
                  "il", "la", "un", "una", "uomo", "donna", "cane", "tavolo",
                  "ruota", "presto", "non"],
        "time_tails": [],
        "imperatives": ["Vai."],
        "decompose": [],
        "extra": ["Lui venne a casa"],
    },
    "nl": {
        "vocab": ["hij", "zij", "wij", "kwam", "ging", "zag", "liep", "terug",
                  "hier", "daar", "nu", "om", "in", "naar", "huis", "weg",
                  "de", "het", "een", "man", "vrouw", "hond", "tafel", "wiel",
                  "snel", "niet"],
        "time_tails": ["uur"],
        "time_words": ["vijf", "twee", "drie", "vier", "zes", "zeven"],
        "imperatives": ["Ga.", "Wacht."],
        "decompose": [],
        "extra": ["Hij kwam om vijf uur terug"],
    },
}


def one_sentence(rng, spec):
    if rng.random() < 0.08 and spec["imperatives"]:
        text = rng.choice(spec["imperatives"])
        return text[:-1] + ".", "S" + "I" * (len(text) - 2) + "T"
    n = rng.randrange(3, 8)
    words = [rng.choice(spec["vocab"]) for _ in range(n)]
    words[0] = words[0].capitalize()
    glue = set()
    decompose = {}
    for i in range(1, n - 1):
        if spec["time_tails"] and rng.random() < 0.18:
            if "time_words" in spec:
                words[i] = rng.choice(spec["time_words"])
            else:
                words[i] = str(rng.randrange(1, 13))
            words[i + 1] = rng.choice(spec["time_tails"])
            glue.add(i)
        elif spec["decompose"] and rng.random() < 0.08:
            decompose[i] = rng.choice(spec["decompose"])
    return sentence(words, glue_indices=glue, decompose=decompose)


def build_corpus(lang, spec, count=240, seed=7):
    rng = random.Random(seed)
    docs = []
    for text in spec["extra"]:
        words = text.split(" ")
        glue = set()
        for i, w in enumerate(words[:-1]):
            if words[i + 1] in spec["time_tails"]:
                glue.add(i)
        docs.append(sentence(words, glue_indices=glue, period=False))
    for _ in range(count):
        text, labels = one_sentence(rng, spec)
        if rng.random() < 0.3:
            t2, l2 = one_sentence(rng, spec)
            text = text + " " + t2
            labels = labels + "O" + l2
        docs.append((text, labels))
    return docs


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for lang, spec in CORPORA.items():
        corpus = build_corpus(lang, spec)
        for text, labels in corpus:
            assert len(text) == len(labels), (lang, text, labels)
        model = train(corpus, TrainConfig(epochs=14, seed=11))
        path = OUT / f"segmenter.{lang}.json"
        model.save(path)
        from meaningbank.segmenter import decode, labels_to_tokens
        check_text = spec["extra"][0]
        toks = labels_to_tokens(check_text, decode(check_text, model))
        print(lang, path.stat().st_size, "bytes;", [t.surface for t in toks])


if __name__ == "__main__":
    main()
