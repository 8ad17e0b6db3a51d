"""A tour of the core algebra: categories, boxes, terms, reduction.

Run:  python demos/05_algebra_tour.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from meaningbank.categories import parse_category
from meaningbank.chartparser import combine
from meaningbank.drs import (
    Not, Pred1, Ref, alpha_equal, clausal, drs, merge,
)
from meaningbank.terms import (
    App, DrsLit, Lam, Presup, RefTerm, Var, beta_reduce, category_kind,
    resolve_presuppositions, term_str,
)

# Categories print with parentheses exactly around functor parts, and
# parsing is the inverse of printing.
cat = parse_category(r"((S\NP)\(S\NP))/NP")
print(f"category:       {cat}")
print(f"kind:           {category_kind(cat)}")
print(f"combines with NP: {combine(cat, parse_category('NP'))}\n")

# Boxes are referent rows plus condition lists; equality is up to a
# sort-preserving renaming and ignores condition order.
x1, x9 = Ref("x", 1), Ref("x", 9)
a = drs([x1], [Pred1("male", x1)])
b = drs([x9], [Pred1("male", x9)])
print(f"box a:          {clausal(a).strip()!r}")
print(f"alpha-equal under renaming: {alpha_equal(a, b)}")

# Merging renames only genuine clashes; free uses of the left row survive.
merged = merge(drs([x1], []), drs([x1], [Pred1("time", x1)]))
print(f"merge with clash renames:   {[r.name for r in merged.refs]}\n")

# Lambda terms compose boxes. A pronoun presupposes its referent; resolving
# hoists the presupposed box to the top level, even out of a negation.
p = Var("p")
pronoun = Lam(p, Presup(DrsLit(a), App(p, RefTerm(x1))))
close = Lam(Var("v"), DrsLit(drs([], [])))
print(f"pronoun term:   {term_str(pronoun)}")
sentence = App(pronoun, close)
print(f"after reduction: {term_str(beta_reduce(sentence))}")
print("resolved box:")
print(clausal(resolve_presuppositions(sentence)))

negated = drs([], [Not(a)])
print("negation nests a box:")
print(clausal(negated))
