"""CCG derivations over supertagged tokens, CKY-style.

Rules: forward/backward application, forward/backward composition, and
crossed backward composition behind a per-language flag.  Type-changing is
replaced by zero-width empty elements drawn from a configured inventory;
the parser may insert at most one empty element at any inter-token position
and prefers derivations with fewer insertions, then fewer composition
rules, then right-branching trees.  Tie-breaking is total, so parsing is
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .categories import Atomic, Category, Functor, parse_category, unify
from .terms import Term
from .tokens import TokenAnnotation

RULES = ("fa", "ba", "fc", "bc", "bcx")

RULE_NAMES = {
    "fa": "forward application",
    "ba": "backward application",
    "fc": "forward composition",
    "bc": "backward composition",
    "bcx": "crossed backward composition",
}


class NoParseError(ValueError):
    def __init__(self, message: str, covered: list[tuple[int, int]]):
        super().__init__(message)
        self.covered = covered


@dataclass(frozen=True)
class EmptyElement:
    category: Category
    semtag: str
    term: Optional[Term] = None


@dataclass(frozen=True)
class EmptyInventory:
    elements: tuple[EmptyElement, ...] = ()

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class DerivNode:
    span: tuple[int, int]  # token index range, end exclusive; empties are (i, i)
    category: Category
    rule: str  # lex | empty | fa | ba | fc | bc | bcx
    children: tuple["DerivNode", ...] = ()
    lexical: Optional[TokenAnnotation] = None
    empty: Optional[EmptyElement] = None

    def leaves(self) -> list["DerivNode"]:
        if not self.children:
            return [self]
        return [l for c in self.children for l in c.leaves()]


def combine(left: Category, right: Category,
            crossed: bool = False) -> list[tuple[str, Category]]:
    """All rule applications whose side conditions hold, in rule order."""
    out: list[tuple[str, Category]] = []
    if isinstance(left, Functor) and left.slash == "/":
        if unify(left.argument, right) is not None:
            out.append(("fa", left.result))
    if isinstance(right, Functor) and right.slash == "\\":
        if unify(right.argument, left) is not None:
            out.append(("ba", right.result))
    if isinstance(left, Functor) and left.slash == "/" and \
            isinstance(right, Functor) and right.slash == "/":
        if unify(left.argument, right.result) is not None:
            out.append(("fc", Functor(left.result, "/", right.argument)))
    if isinstance(left, Functor) and left.slash == "\\" and \
            isinstance(right, Functor) and right.slash == "\\":
        if unify(right.argument, left.result) is not None:
            out.append(("bc", Functor(right.result, "\\", left.argument)))
    if crossed and isinstance(left, Functor) and left.slash == "/" and \
            isinstance(right, Functor) and right.slash == "\\":
        if unify(left.argument, right.result) is not None:
            out.append(("bcx", Functor(left.result, "\\", right.argument)))
    return out


@dataclass(frozen=True)
class _Item:
    node: DerivNode
    ncomp: int
    left_mass: int
    nleaves: int


def _cky(leaves: Sequence[DerivNode], crossed: bool) -> dict:
    """Chart over the given leaf sequence; best item per (span, category)."""
    m = len(leaves)
    chart: dict[tuple[int, int], dict[Category, _Item]] = {}
    for i, leaf in enumerate(leaves):
        chart[(i, i + 1)] = {leaf.category: _Item(leaf, 0, 0, 1)}
    for width in range(2, m + 1):
        for i in range(0, m - width + 1):
            j = i + width
            cell: dict[Category, _Item] = {}
            for k in range(i + 1, j):
                left_cell = chart.get((i, k), {})
                right_cell = chart.get((k, j), {})
                # Dict order is insertion order, which is itself deterministic,
                # so no further sorting is needed for reproducibility.
                for lcat, litem in left_cell.items():
                    for rcat, ritem in right_cell.items():
                        for rule, cat in combine(lcat, rcat, crossed):
                            node = DerivNode(
                                (litem.node.span[0], ritem.node.span[1]),
                                cat, rule, (litem.node, ritem.node))
                            item = _Item(
                                node,
                                litem.ncomp + ritem.ncomp + (rule in ("fc", "bc", "bcx")),
                                litem.left_mass + ritem.left_mass + litem.nleaves,
                                litem.nleaves + ritem.nleaves)
                            old = cell.get(cat)
                            if old is None or (item.ncomp, item.left_mass) < \
                                    (old.ncomp, old.left_mass):
                                cell[cat] = item
            if cell:
                chart[(i, j)] = cell
    return chart


def parse(annotations: Sequence[TokenAnnotation],
          inventory: EmptyInventory = EmptyInventory(),
          goal: Category = Atomic("S"),
          crossed: bool = False,
          max_insertions: int = 2) -> DerivNode:
    """Best derivation over the full span reaching the goal category.

    Empty elements may be inserted at any inter-token position (at most one
    per position); configurations with fewer insertions are exhausted before
    more are tried.
    """
    for i, ann in enumerate(annotations):
        if ann.category is None:
            raise ValueError(f"annotation {i} carries no category")
    n = len(annotations)
    token_leaves = [
        DerivNode((i, i + 1), ann.category, "lex", lexical=ann)
        for i, ann in enumerate(annotations)
    ]
    if n == 0:
        raise NoParseError("empty sentence", [])

    zero_chart = None
    for k in range(0, max_insertions + 1):
        best = None
        for config_index, (positions, entries) in enumerate(_configs(n, k, len(inventory))):
            leaves: list[DerivNode] = []
            for i in range(n + 1):
                if i in positions:
                    element = inventory.elements[entries[positions.index(i)]]
                    leaves.append(DerivNode((i, i), element.category, "empty",
                                            empty=element))
                if i < n:
                    leaves.append(token_leaves[i])
            chart = _cky(leaves, crossed)
            if zero_chart is None and k == 0:
                zero_chart = chart
            full = chart.get((0, len(leaves)), {})
            for cat, item in full.items():
                if unify(cat, goal) is None:
                    continue
                key = (item.ncomp, item.left_mass, config_index, str(cat))
                if best is None or key < best[0]:
                    best = (key, item.node)
        if best is not None:
            return best[1]
    covered = _largest_covered(zero_chart or {}, n)
    raise NoParseError(
        f"no derivation reaches {goal} over the full span; "
        f"largest covered spans: {covered}", covered)


def _configs(n: int, k: int, inv_size: int):
    if k == 0:
        yield (), ()
        return
    if inv_size == 0:
        return
    for positions in itertools.combinations(range(n + 1), k):
        for entries in itertools.product(range(inv_size), repeat=k):
            yield positions, entries


def _largest_covered(chart: dict, n: int) -> list[tuple[int, int]]:
    spans = sorted(chart.keys(), key=lambda ij: (ij[0] - ij[1], ij[0]))
    if not spans:
        return []
    best_len = spans[0][1] - spans[0][0]
    return [ij for ij in spans if ij[1] - ij[0] == best_len]


def check(deriv: DerivNode, crossed: bool = True) -> bool:
    """True iff every node is the exact rule output of its children and the
    leaf spans tile the covered sentence range."""
    try:
        _check_node(deriv, crossed)
    except ValueError:
        return False
    return True


def _check_node(node: DerivNode, crossed: bool) -> None:
    if node.rule == "lex":
        if node.lexical is None or node.children:
            raise ValueError("malformed lexical node")
        if node.span[1] != node.span[0] + 1:
            raise ValueError("lexical span must cover one token")
        if node.category != node.lexical.category:
            raise ValueError("category mismatch at leaf")
        return
    if node.rule == "empty":
        if node.span[0] != node.span[1] or node.children:
            raise ValueError("malformed empty node")
        return
    if len(node.children) != 2:
        raise ValueError("binary rule arity")
    left, right = node.children
    if left.span[1] != right.span[0]:
        raise ValueError("children do not tile")
    if (left.span[0], right.span[1]) != node.span:
        raise ValueError("span mismatch")
    outputs = dict(combine(left.category, right.category, crossed=crossed))
    if node.rule not in outputs or outputs[node.rule] != node.category:
        raise ValueError(f"rule {node.rule} does not yield {node.category}")
    _check_node(left, crossed)
    _check_node(right, crossed)


# --- s-expression serialization ----------------------------------------------

def _atom(text: str) -> str:
    # Backslash stays literal inside quotes (categories are full of them);
    # only the quote character itself is escaped.
    if any(c in text for c in "() \t\n\"") or not text:
        return '"' + text.replace('"', '\\"') + '"'
    return text


def to_sexpr(node: DerivNode) -> str:
    if node.rule == "lex":
        ann = node.lexical
        sym = ann.symbol if ann.symbol is not None else "-"
        return (f"(lex {_atom(str(node.category))} {_atom(ann.token.surface)} "
                f"{_atom(ann.semtag.lower())} {_atom(sym)})")
    if node.rule == "empty":
        return f"(empty {_atom(str(node.category))} {_atom(node.empty.semtag.lower())})"
    kids = " ".join(to_sexpr(c) for c in node.children)
    return f"({node.rule} {_atom(str(node.category))} {kids})"


def _tokenize_sexpr(text: str):
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c
            i += 1
        elif c == '"':
            j = i + 1
            buf = []
            while j < len(text) and text[j] != '"':
                if text[j] == "\\" and j + 1 < len(text) and text[j + 1] == '"':
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= len(text):
                raise ValueError("unterminated string in derivation")
            yield "".join(buf)
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j]
            i = j


def _read(tokens: list, pos: int):
    if tokens[pos] != "(":
        raise ValueError("expected ( in derivation")
    out = []
    pos += 1
    while pos < len(tokens) and tokens[pos] != ")":
        if tokens[pos] == "(":
            node, pos = _read(tokens, pos)
            out.append(node)
        else:
            out.append(tokens[pos])
            pos += 1
    if pos >= len(tokens):
        raise ValueError("unbalanced derivation expression")
    return out, pos + 1


def from_sexpr(text: str, annotations: Sequence[TokenAnnotation],
               inventory: EmptyInventory = EmptyInventory()) -> DerivNode:
    """Rebuild a derivation; lex leaves bind to annotations in token order."""
    tokens = list(_tokenize_sexpr(text))
    tree, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ValueError("trailing input after derivation")
    cursor = [0]

    def build(form) -> DerivNode:
        head = form[0]
        if head == "lex":
            cat = parse_category(form[1])
            idx = cursor[0]
            if idx >= len(annotations):
                raise ValueError("more lex leaves than annotations")
            ann = annotations[idx]
            if ann.token.surface != form[2]:
                raise ValueError(
                    f"derivation surface {form[2]!r} does not match token "
                    f"{ann.token.surface!r}")
            cursor[0] += 1
            return DerivNode((idx, idx + 1), cat, "lex", lexical=ann)
        if head == "empty":
            cat = parse_category(form[1])
            semtag = form[2].upper()
            element = next((e for e in inventory
                            if e.category == cat and e.semtag.upper() == semtag), None)
            if element is None:
                element = EmptyElement(cat, semtag)
            pos_idx = cursor[0]
            return DerivNode((pos_idx, pos_idx), cat, "empty", empty=element)
        if head in RULES:
            cat = parse_category(form[1])
            left = build(form[2])
            right = build(form[3])
            return DerivNode((left.span[0], right.span[1]), cat, head, (left, right))
        raise ValueError(f"unknown derivation rule {head!r}")

    return build(tree)
