"""From a raw sentence to its meaning box, one pipeline stage at a time.

Run:  python demos/01_sentence_to_box.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.chartparser import parse, to_sexpr
from meaningbank.composer import (
    FreshRefs, compose, default_inventory, default_roles, default_templates,
    lexical_semantics,
)
from meaningbank.drs import clausal
from meaningbank.pipeline import AppConfig
from meaningbank.segmenter import decode, labels_to_tokens, sentences
from meaningbank.semtagger import tag
from meaningbank.symbolizer import symbolize
from meaningbank.terms import term_str
from meaningbank.tokens import TokenAnnotation

TEXT = "He came back at 5 o'clock"

models = AppConfig().models("en")

print(f"raw text:      {TEXT!r}\n")

# 1. Character-level segmentation: four labels, S/T/I/O. The gap inside the
#    time expression is O but the continuation is I, so "5 o'clock" glues
#    into a single token.
labels = decode(TEXT, models.segmenter)
print(f"char labels:   {''.join(labels)}")
tokens = labels_to_tokens(TEXT, labels)
print(f"tokens:        {[t.surface for t in tokens]}\n")

# 2. One semantic tag per token, from the lexicon plus heuristics.
sents = sentences(tokens, labels)
initial = {s[0].id for s in sents}
tags = tag(tokens, "en", models.tag_lexicon, None, models.tagset, initial)
print(f"semtags:       {[t.lower() for t in tags]}")

# 3. Symbolization: lemmatize and normalize. Note come for came and the
#    24-hour literal for the time expression.
symbols = [symbolize(tok, tags[i], "en", models.gazetteer,
                     tagset=models.tagset, irregular=models.irregular)
           for i, tok in enumerate(tokens)]
print(f"symbols:       {symbols}\n")

# 4. Categories from the lexicon, then lexical terms from the templates.
registry = default_templates()
roles = default_roles()
fresh = FreshRefs()
annotations = []
for i, tok in enumerate(tokens):
    from meaningbank.categories import parse_category
    cat = parse_category(models.catlex.get(tok.surface.lower())
                         or models.catdefaults[tags[i]])
    term = lexical_semantics(tags[i], cat, symbols[i], roles, registry, fresh)
    annotations.append(TokenAnnotation(tok, tags[i], symbols[i], cat, term))
    print(f"  {tok.surface:<10} {str(cat):<22} {term_str(term)}")

# 5. The chart parser inserts the empty determiner before the time noun.
deriv = parse(annotations, default_inventory(registry, roles, fresh))
print(f"\nderivation:    {to_sexpr(deriv)}")

# 6. Composition: apply, reduce, resolve presuppositions.
box = compose(deriv)
print("\nsentence box, one clause per line:")
print(clausal(box))
