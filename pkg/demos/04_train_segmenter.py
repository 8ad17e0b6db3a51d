"""Training the character-level segmenter and forcing label corrections.

Run:  python demos/04_train_segmenter.py
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.segmenter import (
    TrainConfig, decode, labels_to_tokens, train,
)

# A tiny deterministic corpus: plain sentences, glued time expressions
# ("2 pm" stays one token), and a decomposed compound.
rng = random.Random(4)
WORDS = ["he", "came", "back", "we", "sat", "there", "the", "dog", "ran"]


def sample():
    n = rng.randrange(3, 6)
    words = [rng.choice(WORDS) for _ in range(n)]
    words[0] = words[0].capitalize()
    text = " ".join(words) + "."
    labels = "O".join(("S" if i == 0 else "T") + "I" * (len(w) - 1)
                      for i, w in enumerate(words)) + "I"
    return text, labels


corpus = [sample() for _ in range(80)]
corpus.append(("We met at 2 pm.", "SIOTIIOTIOTOIII"))
corpus.append(("That is impossible.", "SIIIOTIOTITIIIIIIII"))

model = train(corpus, TrainConfig(epochs=10, seed=2))

for text in ["He came back.", "We met at 2 pm.", "That is impossible."]:
    labels = decode(text, model)
    tokens = labels_to_tokens(text, labels)
    print(f"{text!r}")
    print(f"  labels: {''.join(labels)}")
    print(f"  tokens: {[t.surface for t in tokens]}")
    decomposed = [(t.surface, t.decomposed_from) for t in tokens
                  if t.decomposed_from]
    if decomposed:
        print(f"  decomposed: {decomposed}")

# A forced label override (a human correction) wins over the model.
text = "He came back."
forced = decode(text, model, overrides=[(8, "T")])
print(f"\nwith a forced T at offset 8: {''.join(forced)}")
print(f"  tokens: {[t.surface for t in labels_to_tokens(text, forced)]}")
