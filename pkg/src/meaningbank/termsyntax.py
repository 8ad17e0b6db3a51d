"""Textual syntax for lexical semantics templates.

Grammar (whitespace insensitive):

    term    := '\\' name+ '.' term | chain
    chain   := unit (';' chain)?
    unit    := atom+                       (application, left associative)
    atom    := name | '(' term ')' | box
             | 'presup' '(' term ')'       (captures the rest of its chain)
             | 'not' '(' term ')'
    box     := '[' name* ':' cond (',' cond)* ']'   (both lists may be empty)
    cond    := name '(' arg ')' | name '(' arg ',' arg ')'
             | 'value' '(' arg ',' literal ')'
             | 'not' box | arg '<' arg | arg '=' arg

Referent names declare their sort by first letter (x/y/z/u/v/w individual,
e/f event, s state, t time) and stay in scope for the rest of the template
(the merge operator binds dynamically to the right).  Names bound by a
lambda are lexically scoped.  Capitalized two-argument condition heads are
thematic roles; ``{sym}``, ``{role1}``, ``{role2}`` are placeholders filled
at instantiation time.
"""

from __future__ import annotations

import re
from typing import Optional

from .drs import (
    Before, Drs, Not, Now, Pred1, Pred2, Ref, Role, TimeEq, Value,
    sort_of_letter,
)
from .terms import App, DrsLit, Lam, Merge, Neg, Presup, RefTerm, Term, Var


class TemplateSyntaxError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<punct>[\\.();,\[\]:])"
    r"|(?P<cmp>[<=])"
    r"|(?P<name>(?:\{[a-z0-9]+\}|[A-Za-z0-9_'~](?::(?=\d))?)+))"
)

_KEYWORDS = ("presup", "not", "value", "now")


def _lex(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise TemplateSyntaxError(f"bad character at {pos} in {text!r}")
            break
        out.append(m.group("punct") or m.group("cmp") or m.group("name"))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str], role_names: Optional[set[str]] = None):
        self.tokens = tokens
        self.pos = 0
        self.lams: list[str] = []
        self.refs: dict[str, Ref] = {}
        self.sort_counts: dict[str, int] = {}
        self.role_names = role_names

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expect: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise TemplateSyntaxError("unexpected end of template")
        if expect is not None and tok != expect:
            raise TemplateSyntaxError(f"expected {expect!r}, got {tok!r}")
        self.pos += 1
        return tok

    # term := '\' name+ '.' term | chain
    def term(self) -> Term:
        if self.peek() == "\\":
            self.take()
            names = []
            while self.peek() != ".":
                tok = self.take()
                if not _is_name(tok):
                    raise TemplateSyntaxError(f"bad binder {tok!r}")
                names.append(tok)
            self.take(".")
            if not names:
                raise TemplateSyntaxError("lambda with no binders")
            self.lams.extend(names)
            body = self.term()
            for name in reversed(names):
                self.lams.pop()
                body = Lam(Var(name), body)
            return body
        return self.chain()

    # chain := unit (';' chain)?
    def chain(self) -> Term:
        first, presup_box = self.unit()
        if self.peek() == ";":
            self.take(";")
            rest = self.chain()
            if presup_box is not None:
                return Presup(first, rest)
            return Merge(first, rest)
        if presup_box is not None:
            return Presup(first, DrsLit(Drs()))
        return first

    # unit := atom+ ;  returns (term, presup_marker)
    def unit(self) -> tuple[Term, Optional[bool]]:
        head, presup = self.atom()
        while True:
            tok = self.peek()
            if tok is None or tok in (")", ";", ",", "]"):
                return head, presup
            if presup is not None:
                raise TemplateSyntaxError("presup cannot be applied")
            arg, arg_presup = self.atom()
            if arg_presup is not None:
                raise TemplateSyntaxError("presup cannot be an argument")
            head = App(head, arg)

    def atom(self) -> tuple[Term, Optional[bool]]:
        tok = self.peek()
        if tok == "(":
            self.take()
            inner = self.term()
            self.take(")")
            return inner, None
        if tok == "[":
            return DrsLit(self.box()), None
        if tok == "presup":
            self.take()
            self.take("(")
            inner = self.term()
            self.take(")")
            return inner, True
        if tok == "not":
            self.take()
            self.take("(")
            inner = self.term()
            self.take(")")
            return Neg(inner), None
        if tok is None or not _is_name(tok):
            raise TemplateSyntaxError(f"unexpected token {tok!r}")
        self.take()
        if tok in self.lams:
            return Var(tok), None
        if tok in self.refs:
            return RefTerm(self.refs[tok]), None
        raise TemplateSyntaxError(f"unknown name {tok!r} in term position")

    def box(self) -> Drs:
        self.take("[")
        refs: list[Ref] = []
        while self.peek() != ":":
            name = self.take()
            if not _is_name(name):
                raise TemplateSyntaxError(f"bad referent name {name!r}")
            ref = self.declare_ref(name)
            refs.append(ref)
        self.take(":")
        conds = []
        while self.peek() != "]":
            conds.append(self.cond())
            if self.peek() == ",":
                self.take(",")
        self.take("]")
        return Drs(tuple(refs), tuple(conds))

    def declare_ref(self, name: str) -> Ref:
        if name in self.lams:
            raise TemplateSyntaxError(f"referent {name!r} shadows a lambda binder")
        sort = sort_of_letter(name[0])
        self.sort_counts[sort] = self.sort_counts.get(sort, 0) + 1
        ref = Ref(sort, self.sort_counts[sort])
        self.refs[name] = ref
        return ref

    def cond(self):
        tok = self.take()
        if tok == "not":
            saved = dict(self.refs)
            inner = self.box()
            self.refs = saved
            return Not(inner)
        if self.peek() == "(":
            head = tok
            self.take("(")
            first = self.arg()
            if self.peek() == ",":
                self.take(",")
                if head == "value":
                    literal = self.take()
                    self.take(")")
                    return Value(first, literal)
                second = self.arg()
                self.take(")")
                if head[:1].isupper() or head.startswith("{role"):
                    if self.role_names is not None and not head.startswith("{") \
                            and head not in self.role_names:
                        raise TemplateSyntaxError(f"unknown role {head!r}")
                    return Role(head, first, second)
                return Pred2(head, first, second)
            self.take(")")
            if head == "now":
                return Now(first)
            return Pred1(head, first)
        # comparison conditions: a < b, a = b
        left = self.resolve_arg(tok)
        op = self.take()
        if op not in ("<", "="):
            raise TemplateSyntaxError(f"expected comparison, got {op!r}")
        right = self.arg()
        return Before(left, right) if op == "<" else TimeEq(left, right)

    def arg(self):
        return self.resolve_arg(self.take())

    def resolve_arg(self, name: str):
        if not _is_name(name):
            raise TemplateSyntaxError(f"bad argument {name!r}")
        if name in self.lams:
            return name  # still a variable; substituted during reduction
        if name in self.refs:
            return self.refs[name]
        raise TemplateSyntaxError(f"unknown name {name!r} in condition")


def _is_name(tok: str) -> bool:
    return tok not in "\\.();,[]<=" and len(tok) > 0


def parse_term(text: str, role_names: Optional[set[str]] = None) -> Term:
    """Parse template text into an unannotated term (kinds assigned later)."""
    parser = _Parser(_lex(text), role_names)
    term = parser.term()
    if parser.peek() is not None:
        raise TemplateSyntaxError(f"trailing input {parser.peek()!r}")
    return term
