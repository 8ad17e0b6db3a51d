"""Lexical semantics assignment and derivation-wide composition.

Every (semtag, category) pair resolves to a template whose symbol and role
slots are filled and whose referents are freshened from a per-sentence
counter.  Derivations compose by functional application (the functor's term
applied to the argument's) and by lambda composition for the composition
rules; the root is closed, beta-reduced, and presuppositions are resolved,
yielding a plain canonical box.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .categories import Atomic, Category, parse_category, same_shape, unify
from .chartparser import DerivNode, EmptyElement, EmptyInventory
from .drs import (
    EMPTY, Drs, Not as NotCond, Pred1, Pred2, Ref, Role as RoleCond,
    Value as ValueCond, bound_refs, canonical, condition_args, replace_args,
    validate,
)
from .terms import (
    App, BOX, ComposeError, DrsLit, Fun, KindError, Lam, Merge, Neg,
    Presup, REF, RefTerm, Term, Var, annotate_kinds, category_kind,
    resolve_presuppositions, synth_kind,
)
from .termsyntax import parse_term
from . import data


class TemplateError(KeyError):
    pass


class FreshRefs:
    """Monotonic per-composition referent source."""

    def __init__(self):
        self.counts: dict[str, int] = {}

    def next(self, sort: str) -> Ref:
        self.counts[sort] = self.counts.get(sort, 0) + 1
        return Ref(sort, self.counts[sort])


def load_role_names() -> set[str]:
    return {line.strip() for line in data.read_text("role_names.txt").splitlines()
            if line.strip() and not line.startswith("#")}


class RoleLexicon:
    """Verb symbol -> ordered thematic roles (subject role first)."""

    DEFAULT = ("Agent", "Theme")

    def __init__(self, table: Optional[dict[str, tuple[str, ...]]] = None,
                 role_names: Optional[set[str]] = None):
        self.table = table or {}
        self.role_names = role_names or load_role_names()
        for roles in self.table.values():
            for role in roles:
                if role not in self.role_names:
                    raise ValueError(f"role {role!r} not in the closed role list")

    def roles(self, symbol: Optional[str]) -> tuple[str, ...]:
        if symbol and symbol in self.table:
            roles = self.table[symbol]
        else:
            roles = self.DEFAULT
        if len(roles) < 2:
            roles = tuple(roles) + tuple(self.DEFAULT[len(roles):])
        return tuple(roles)

    @classmethod
    def from_tsv(cls, text: str, role_names: Optional[set[str]] = None) -> "RoleLexicon":
        table = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            symbol, roles = line.split("\t")
            table[symbol] = tuple(r.strip() for r in roles.split(","))
        return cls(table, role_names)

    @classmethod
    def from_file(cls, path, role_names=None) -> "RoleLexicon":
        return cls.from_tsv(Path(path).read_text(encoding="utf-8"), role_names)


def default_roles() -> RoleLexicon:
    names = load_role_names()
    return RoleLexicon.from_tsv(data.read_text("verb_roles.tsv"), names)


@dataclass(frozen=True)
class Template:
    semtag: str
    pattern: Category
    term: Term  # unannotated, with {sym}/{roleN} placeholders
    specificity: int


def _specificity(cat: Category) -> int:
    if isinstance(cat, Atomic):
        return 1 if cat.feature is not None else 0
    return _specificity(cat.result) + _specificity(cat.argument)


class TemplateRegistry:
    def __init__(self, templates: list[Template]):
        self.templates = templates
        for i, a in enumerate(templates):
            for b in templates[i + 1:]:
                if a.semtag != b.semtag:
                    continue
                if unify(a.pattern, b.pattern) is not None and \
                        a.specificity == b.specificity:
                    raise ValueError(
                        f"overlapping templates for {a.semtag}: "
                        f"{a.pattern} vs {b.pattern}")

    @classmethod
    def from_text(cls, text: str, role_names: Optional[set[str]] = None) -> "TemplateRegistry":
        role_names = role_names or load_role_names()
        templates = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                semtag, pattern_text, term_text = line.split("\t", 2)
                pattern = parse_category(pattern_text)
                term = parse_term(term_text, role_names)
                # Kind-check the raw shape against the pattern kind now, with
                # placeholders still in place.
                annotate_kinds(_fill(term, "_sym", ("Agent", "Theme")),
                               category_kind(pattern), {})
            except Exception as exc:
                raise ValueError(f"template line {lineno}: {exc}") from exc
            templates.append(Template(semtag.upper(), pattern, term,
                                      _specificity(pattern)))
        return cls(templates)

    @classmethod
    def from_file(cls, path, role_names=None) -> "TemplateRegistry":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), role_names)

    def lookup(self, semtag: str, category: Category) -> Template:
        semtag = semtag.upper()
        exact = [t for t in self.templates
                 if t.semtag == semtag and unify(t.pattern, category) is not None]
        if exact:
            return max(exact, key=lambda t: t.specificity)
        # Projection can flip slashes; semantics is direction-independent,
        # so fall back to a shape-equal pattern.
        shaped = [t for t in self.templates
                  if t.semtag == semtag and same_shape(t.pattern, category)]
        if shaped:
            return max(shaped, key=lambda t: t.specificity)
        raise TemplateError(f"no template for ({semtag}, {category})")


def default_templates() -> TemplateRegistry:
    return TemplateRegistry.from_text(data.read_text("templates.tsv"))


def _fill(t: Term, symbol: Optional[str], roles: tuple[str, ...]) -> Term:
    """Substitute {sym} and {roleN} placeholders throughout."""

    def name(s: str) -> str:
        if s == "{sym}":
            if symbol is None:
                raise TemplateError("template needs a symbol but none was produced")
            return symbol
        if s.startswith("{role"):
            index = int(s[5:-1]) - 1
            return roles[index] if index < len(roles) else RoleLexicon.DEFAULT[-1]
        return s

    def fix_cond(c):
        if isinstance(c, Pred1):
            return Pred1(name(c.symbol), c.arg)
        if isinstance(c, Pred2):
            return Pred2(name(c.symbol), c.arg1, c.arg2)
        if isinstance(c, RoleCond):
            return RoleCond(name(c.role), c.arg1, c.arg2)
        if isinstance(c, ValueCond):
            return ValueCond(c.arg, name(c.literal))
        if isinstance(c, NotCond):
            return NotCond(fix_box(c.inner))
        return c

    def fix_box(box: Drs) -> Drs:
        return Drs(box.refs, tuple(fix_cond(c) for c in box.conds))

    def walk(t: Term) -> Term:
        if isinstance(t, DrsLit):
            return DrsLit(fix_box(t.box))
        if isinstance(t, Lam):
            return Lam(t.var, walk(t.body))
        if isinstance(t, App):
            return App(walk(t.fun), walk(t.arg))
        if isinstance(t, Merge):
            return Merge(walk(t.left), walk(t.right))
        if isinstance(t, Presup):
            return Presup(walk(t.presupposed), walk(t.body))
        if isinstance(t, Neg):
            return Neg(walk(t.body))
        return t

    return walk(t)


def _collect_refs(t: Term, acc: set[Ref]) -> None:
    if isinstance(t, DrsLit):
        acc |= bound_refs(t.box)

        def args(box):
            for c in box.conds:
                for a in condition_args(c):
                    if isinstance(a, Ref):
                        acc.add(a)
                if isinstance(c, NotCond):
                    args(c.inner)

        args(t.box)
    elif isinstance(t, Lam):
        _collect_refs(t.body, acc)
    elif isinstance(t, App):
        _collect_refs(t.fun, acc)
        _collect_refs(t.arg, acc)
    elif isinstance(t, Merge):
        _collect_refs(t.left, acc)
        _collect_refs(t.right, acc)
    elif isinstance(t, Presup):
        _collect_refs(t.presupposed, acc)
        _collect_refs(t.body, acc)
    elif isinstance(t, Neg):
        _collect_refs(t.body, acc)
    elif isinstance(t, RefTerm):
        acc.add(t.ref)


def _freshen(t: Term, fresh: FreshRefs) -> Term:
    refs: set[Ref] = set()
    _collect_refs(t, refs)
    mapping = {r: fresh.next(r.sort) for r in sorted(refs, key=lambda r: (r.sort, r.index))}

    def walk(t: Term) -> Term:
        if isinstance(t, DrsLit):
            return DrsLit(replace_args(t.box, mapping))
        if isinstance(t, RefTerm):
            return RefTerm(mapping.get(t.ref, t.ref))
        if isinstance(t, Lam):
            return Lam(t.var, walk(t.body))
        if isinstance(t, App):
            return App(walk(t.fun), walk(t.arg))
        if isinstance(t, Merge):
            return Merge(walk(t.left), walk(t.right))
        if isinstance(t, Presup):
            return Presup(walk(t.presupposed), walk(t.body))
        if isinstance(t, Neg):
            return Neg(walk(t.body))
        return t

    return walk(t)


def lexical_semantics(semtag: str, category: Category, symbol: Optional[str],
                      roles: Optional[RoleLexicon] = None,
                      registry: Optional[TemplateRegistry] = None,
                      fresh: Optional[FreshRefs] = None) -> Term:
    """Instantiate the template for (semtag, category) with fresh referents."""
    registry = registry or default_templates()
    roles = roles or default_roles()
    fresh = fresh or FreshRefs()
    template = registry.lookup(semtag, category)
    term = _fill(template.term, symbol, roles.roles(symbol))
    term = _freshen(term, fresh)
    return annotate_kinds(term, category_kind(category), {})


_COMP_VAR = "_z"


def compose(deriv: DerivNode) -> Drs:
    """Sentence box for a derivation whose leaves carry lexical terms."""
    term = _node_term(deriv)
    term = _close(term, deriv.category)
    box = resolve_presuppositions(term)
    validate(box)
    return canonical(box)


def _node_term(node: DerivNode) -> Term:
    if node.rule == "lex":
        if node.lexical is None or node.lexical.lexsem is None:
            raise ComposeError(f"no lexical term at span {node.span}")
        _check_node_kind(node, node.lexical.lexsem)
        return node.lexical.lexsem
    if node.rule == "empty":
        if node.empty is None or node.empty.term is None:
            raise ComposeError(f"no term on empty element at span {node.span}")
        _check_node_kind(node, node.empty.term)
        return node.empty.term
    left, right = node.children
    lterm = _node_term(left)
    rterm = _node_term(right)
    if node.rule == "fa":
        return App(lterm, rterm)
    if node.rule == "ba":
        return App(rterm, lterm)
    if node.rule in ("fc", "bc", "bcx"):
        if node.rule == "bc":
            f, g = rterm, lterm
            zkind = category_kind(left.category.argument)
        else:
            f, g = lterm, rterm
            zkind = category_kind(right.category.argument)
        var = Var(f"{_COMP_VAR}{node.span[0]}_{node.span[1]}", zkind)
        return Lam(var, App(f, App(g, var)))
    raise ComposeError(f"unknown rule {node.rule} at span {node.span}")


def _check_node_kind(node: DerivNode, term: Term) -> None:
    try:
        got = synth_kind(term, {})
    except KindError:
        return  # open terms at leaves are template bugs caught elsewhere
    want = category_kind(node.category)
    if got != want:
        raise KindError(
            f"term kind {got} does not match category {node.category} "
            f"at span {node.span}")


def _close(term: Term, category: Category) -> Term:
    kind = category_kind(category)
    if kind == BOX:
        return term
    if kind == Fun(Fun(REF, BOX), BOX):
        v = Var("_closure", REF)
        return App(term, Lam(v, DrsLit(EMPTY)))
    if kind == Fun(REF, BOX):
        ref = Ref("x", 999)
        return Merge(DrsLit(Drs((ref,), ())), App(term, RefTerm(ref)))
    raise ComposeError(f"cannot close a derivation of category {category}")


def default_inventory(registry: Optional[TemplateRegistry] = None,
                      roles: Optional[RoleLexicon] = None,
                      fresh: Optional[FreshRefs] = None) -> EmptyInventory:
    """Empty-element inventory with terms instantiated from the templates."""
    registry = registry or default_templates()
    roles = roles or default_roles()
    fresh = fresh or FreshRefs()
    elements = []
    for line in data.read_text("empties.tsv").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cat_text, semtag = line.split("\t")
        category = parse_category(cat_text)
        term = lexical_semantics(semtag, category, None, roles, registry, fresh)
        elements.append(EmptyElement(category, semtag.upper(), term))
    return EmptyInventory(tuple(elements))
