"""Cross-lingual annotation projection over word alignments.

Aligned target tokens receive the pivot sentence's semtags and categories.
Slash directions flip when the target places a functor on the other side of
an argument: for every consumption step in the source derivation the linear
order of the functor head and the argument head is compared between the two
languages and the corresponding slash is rebuilt accordingly.

Symbols stay interlingual: the target symbolizer runs only its confident
stages (gazetteer, pronoun table, clock normalization) and otherwise keeps
the pivot symbol, so a meaning-preserving translation composes to the same
box as the source and verification can require alpha-equality.

A source token aligned to two target tokens splits: the head target token
(smallest edit distance to the pivot symbol, ties to the left) keeps the
full category and term, the helper becomes an identity modifier X/X or X\\X
that recombines with the head in the parser.  Unaligned target tokens get
an identity modifier over their nearest annotated neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .categories import Category, Functor
from .chartparser import DerivNode, NoParseError, parse
from .composer import (
    FreshRefs, RoleLexicon, TemplateError, TemplateRegistry, compose,
    default_inventory, default_roles, default_templates, lexical_semantics,
)
from .drs import Drs, alpha_equal
from .semtagger import TagSet, default_tagset
from .symbolizer import Gazetteer, load_gazetteer, symbolize
from .terms import ComposeError, KindError, category_kind, identity_term
from .tokens import Token, TokenAnnotation

VERIFIED = "Verified"
UNVERIFIED = "Unverified"
FAILED = "Failed"


class AlignmentSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SourceSentence:
    annotations: tuple[TokenAnnotation, ...]
    deriv: DerivNode
    drs: Optional[Drs] = None


@dataclass(frozen=True)
class SentencePair:
    source: SourceSentence
    target_tokens: tuple[Token, ...]
    alignment: tuple[tuple[int, int], ...]


@dataclass
class ProjectionResult:
    annotations: list[TokenAnnotation]
    deriv: Optional[DerivNode]
    drs: Optional[Drs]
    status: str
    reason: str = ""
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status == VERIFIED:
            assert self.drs is not None
        if self.status == FAILED:
            assert self.reason


@dataclass
class ProjectionConfig:
    target_lang: str = "de"
    registry: Optional[TemplateRegistry] = None
    roles: Optional[RoleLexicon] = None
    tagset: Optional[TagSet] = None
    gazetteer: Optional[Gazetteer] = None
    goal: Optional[Category] = None
    crossed: bool = False

    def resolved(self) -> "ProjectionConfig":
        from .categories import Atomic
        return ProjectionConfig(
            self.target_lang,
            self.registry or default_templates(),
            self.roles or default_roles(),
            self.tagset or default_tagset(),
            self.gazetteer if self.gazetteer is not None
            else load_gazetteer(self.target_lang),
            self.goal or Atomic("S"),
            self.crossed,
        )


def align_sentences(source_count: int, target_count: int,
                    overrides: Optional[Sequence[tuple[int, int]]] = None
                    ) -> list[tuple[int, int]]:
    """One-to-one in order; manual overrides replace the heuristic wholesale."""
    if overrides is not None:
        return list(overrides)
    return [(k, k) for k in range(min(source_count, target_count))]


def parse_alignment_file(text: str) -> list[list[tuple[int, int]]]:
    """Whitespace-separated i-j pairs, one sentence pair per line."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        pairs = []
        col = 1
        for field_text in line.split():
            col = line.index(field_text, col - 1) + 1
            left, sep, right = field_text.partition("-")
            if not sep or not left.lstrip("-").isdigit() or not right.isdigit():
                raise AlignmentSyntaxError(
                    f"malformed pair {field_text!r}", lineno, col)
            i, j = int(left), int(right)
            if i < 0 or j < 0:
                raise AlignmentSyntaxError(
                    f"negative index in {field_text!r}", lineno, col)
            pairs.append((i, j))
        out.append(pairs)
    return out


def _edit_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _is_modifier(cat: Category) -> bool:
    return isinstance(cat, Functor) and cat.result == cat.argument


def _head_token(node: DerivNode) -> Optional[int]:
    """Linguistic head: functor side, except modifiers head their argument."""
    if node.rule == "lex":
        return node.span[0]
    if node.rule == "empty":
        return None
    f, a = _functor_argument(node)
    if _is_modifier(f.category):
        head = _head_token(a)
        if head is None:
            head = _head_token(f)
        return head
    head = _head_token(f)
    if head is None:
        head = _head_token(a)
    return head


def _functor_argument(node: DerivNode) -> tuple[DerivNode, DerivNode]:
    left, right = node.children
    if node.rule in ("fa", "fc", "bcx"):
        return left, right
    return right, left


def _consumption_events(deriv: DerivNode) -> dict[int, list[DerivNode]]:
    """For each source token: argument subtrees it consumes, outermost first."""
    events: dict[int, list[DerivNode]] = {}

    def walk(node: DerivNode) -> None:
        if not node.children:
            return
        for c in node.children:
            walk(c)
        f, a = _functor_argument(node)
        head = _head_token(f)
        if head is not None:
            events.setdefault(head, []).append(a)

    walk(deriv)
    return events


class _Projector:
    def __init__(self, pair: SentencePair, config: ProjectionConfig):
        self.pair = pair
        self.config = config
        self.events = _consumption_events(pair.source.deriv)
        self.notes: list[str] = []
        src_targets: dict[int, list[int]] = {}
        tgt_sources: dict[int, list[int]] = {}
        for s, t in pair.alignment:
            src_targets.setdefault(s, []).append(t)
            tgt_sources.setdefault(t, []).append(s)
        # A target token aligned to several sources keeps the first source.
        for t, sources in tgt_sources.items():
            if len(sources) > 1:
                keep = min(sources)
                for s in sorted(sources):
                    if s != keep:
                        src_targets[s].remove(t)
                        self.notes.append(
                            f"dropped extra link {s}-{t}: target already "
                            f"aligned to source {keep}")
                tgt_sources[t] = [keep]
        self.src_targets = {s: sorted(ts) for s, ts in src_targets.items() if ts}
        self.tgt_sources = tgt_sources
        self.head_target: dict[int, int] = {}
        for s, targets in self.src_targets.items():
            self.head_target[s] = self._pick_head(s, targets)

    def _pick_head(self, src: int, targets: list[int]) -> int:
        if len(targets) == 1:
            return targets[0]
        ann = self.pair.source.annotations[src]
        probe = ann.symbol or ann.token.surface.lower()
        scored = sorted(
            targets,
            key=lambda t: (_edit_distance(self.pair.target_tokens[t].surface.lower(),
                                          probe), t))
        return scored[0]

    def target_position(self, src: int) -> Optional[int]:
        return self.head_target.get(src)

    def projected_leaf_category(self, src: int) -> Category:
        ann = self.pair.source.annotations[src]
        cat = ann.category
        evs = self.events.get(src, [])
        peeled: list[tuple[str, Category, DerivNode]] = []
        for arg in evs:
            if not isinstance(cat, Functor):
                break
            peeled.append((cat.slash, cat, arg))
            cat = cat.result
        rebuilt = cat
        own = self.target_position(src)
        for slash, source_level, arg in reversed(peeled):
            arg_cat = self.projected_subtree_category(arg)
            arg_head = _head_token(arg)
            arg_pos = self.target_position(arg_head) if arg_head is not None else None
            if own is None or arg_pos is None:
                direction = slash
            else:
                direction = "/" if arg_pos > own else "\\"
            if _is_modifier(source_level):
                # Modifiers stay X|X: the result mirrors the argument's
                # projection rather than the unprojected remainder.
                rebuilt = Functor(arg_cat, direction, arg_cat)
            else:
                rebuilt = Functor(rebuilt, direction, arg_cat)
        return rebuilt

    def projected_subtree_category(self, node: DerivNode) -> Category:
        if node.rule == "lex":
            return self.projected_leaf_category(node.span[0])
        if node.rule == "empty":
            return node.category
        f, a = _functor_argument(node)
        fcat = self.projected_subtree_category(f)
        if node.rule in ("fa", "ba"):
            return fcat.result if isinstance(fcat, Functor) else fcat
        gcat = self.projected_subtree_category(a)
        result = fcat.result if isinstance(fcat, Functor) else fcat
        if isinstance(gcat, Functor):
            return Functor(result, gcat.slash, gcat.argument)
        return result

    def project(self) -> ProjectionResult:
        cfg = self.config
        fresh = FreshRefs()
        n = len(self.pair.target_tokens)
        annotations: list[Optional[TokenAnnotation]] = [None] * n

        try:
            for src, targets in sorted(self.src_targets.items()):
                ann = self.pair.source.annotations[src]
                cat = self.projected_leaf_category(src)
                head = self.head_target[src]
                symbol = self._project_symbol(ann, head)
                try:
                    term = lexical_semantics(ann.semtag, cat, symbol,
                                             cfg.roles, cfg.registry, fresh)
                except TemplateError as exc:
                    return self._failed(annotations, f"target lexicon: {exc}")
                annotations[head] = TokenAnnotation(
                    self.pair.target_tokens[head], ann.semtag, symbol, cat, term)
                for t in targets:
                    if t == head:
                        continue
                    helper_cat = Functor(cat, "/", cat) if t < head \
                        else Functor(cat, "\\", cat)
                    annotations[t] = TokenAnnotation(
                        self.pair.target_tokens[t], "NIL", None, helper_cat,
                        identity_term(category_kind(cat)))
                    self.notes.append(
                        f"split {src}: helper {t} gets {helper_cat}")
        except KindError as exc:
            return self._failed(annotations, f"kind error: {exc}")

        if all(a is None for a in annotations):
            return self._failed(annotations, "no aligned target tokens")

        for i in range(n):
            if annotations[i] is not None:
                continue
            right = next((annotations[j] for j in range(i + 1, n)
                          if annotations[j] is not None), None)
            if right is not None:
                base = right.category
                helper_cat = Functor(base, "/", base)
            else:
                left = next(annotations[j] for j in range(i - 1, -1, -1)
                            if annotations[j] is not None)
                base = left.category
                helper_cat = Functor(base, "\\", base)
            annotations[i] = TokenAnnotation(
                self.pair.target_tokens[i], "NIL", None, helper_cat,
                identity_term(category_kind(base)))
            self.notes.append(f"unaligned target {i} gets {helper_cat}")

        inventory = default_inventory(cfg.registry, cfg.roles, fresh)
        try:
            deriv = parse(annotations, inventory, cfg.goal, cfg.crossed)
        except NoParseError as exc:
            return self._failed(annotations, f"no target derivation: {exc}")
        try:
            target_drs = compose(deriv)
        except (ComposeError, KindError) as exc:
            return ProjectionResult(annotations, deriv, None, FAILED,
                                    f"target composition: {exc}", self.notes)

        if self.pair.source.drs is None:
            return ProjectionResult(annotations, deriv, target_drs, UNVERIFIED,
                                    "source sentence carries no box", self.notes)
        if alpha_equal(self.pair.source.drs, target_drs):
            return ProjectionResult(annotations, deriv, target_drs, VERIFIED,
                                    notes=self.notes)
        return ProjectionResult(annotations, deriv, target_drs, FAILED,
                                "target box differs from source", self.notes)

    def _project_symbol(self, ann: TokenAnnotation, head: int) -> Optional[str]:
        if ann.symbol is None:
            return None
        return symbolize(self.pair.target_tokens[head], ann.semtag,
                         self.config.target_lang, self.config.gazetteer,
                         tagset=self.config.tagset, confident_only=True,
                         fallback=ann.symbol)

    def _failed(self, annotations, reason: str) -> ProjectionResult:
        done = [a for a in annotations if a is not None]
        return ProjectionResult(done, None, None, FAILED, reason, self.notes)


def project(pair: SentencePair, config: Optional[ProjectionConfig] = None
            ) -> ProjectionResult:
    config = (config or ProjectionConfig()).resolved()
    return _Projector(pair, config).project()
