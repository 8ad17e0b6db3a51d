"""Cross-lingual compositional semantics pipeline and annotation bank.

The library turns raw parallel text into discourse representation boxes via
character-level segmentation, CCG derivations with explicit empty elements,
universal semantic tagging, symbolization, and lambda-calculus composition;
annotations project from the pivot language onto word-aligned translations,
and an annotation bank manages human corrections over model output.
"""

from .categories import (
    Atomic, Category, CategorySyntaxError, Functor, parse_category,
)
from .chartparser import (
    DerivNode, EmptyElement, EmptyInventory, NoParseError, check, combine,
    from_sexpr, parse, to_sexpr,
)
from .composer import (
    FreshRefs, RoleLexicon, TemplateRegistry, compose, default_inventory,
    default_roles, default_templates, lexical_semantics,
)
from .drs import (
    Before, Condition, Drs, Not, Now, Pred1, Pred2, Ref, Role, TimeEq, Value,
    alpha_equal, canonical, clausal, merge,
)
from .projector import (
    ProjectionConfig, ProjectionResult, SentencePair, SourceSentence,
    align_sentences, parse_alignment_file, project,
)
from .segmenter import (
    SegmenterModel, TrainConfig, decode, labels_to_tokens, sentences, train,
)
from .semtagger import TagLexicon, TagSet, default_tagset, tag, train_lexicon
from .symbolizer import Gazetteer, lemmatize, normalize_clock, symbolize
from .terms import (
    App, DrsLit, Lam, Merge, Neg, Presup, RefTerm, Term, Var, beta_reduce,
    category_kind, resolve_presuppositions,
)
from .tokens import Token, TokenAnnotation

__version__ = "0.1.0"

__all__ = [
    "Atomic", "Category", "CategorySyntaxError", "Functor", "parse_category",
    "DerivNode", "EmptyElement", "EmptyInventory", "NoParseError", "check",
    "combine", "from_sexpr", "parse", "to_sexpr",
    "FreshRefs", "RoleLexicon", "TemplateRegistry", "compose",
    "default_inventory", "default_roles", "default_templates",
    "lexical_semantics",
    "Before", "Condition", "Drs", "Not", "Now", "Pred1", "Pred2", "Ref",
    "Role", "TimeEq", "Value", "alpha_equal", "canonical", "clausal",
    "merge",
    "ProjectionConfig", "ProjectionResult", "SentencePair", "SourceSentence",
    "align_sentences", "parse_alignment_file", "project",
    "SegmenterModel", "TrainConfig", "decode", "labels_to_tokens",
    "sentences", "train",
    "TagLexicon", "TagSet", "default_tagset", "tag", "train_lexicon",
    "Gazetteer", "lemmatize", "normalize_clock", "symbolize",
    "App", "DrsLit", "Lam", "Merge", "Neg", "Presup", "RefTerm", "Term",
    "Var", "beta_reduce", "category_kind", "resolve_presuppositions",
    "Token", "TokenAnnotation",
    "__version__",
]
