"""λ-terms over DRS literals, with merge and presuppositional merge.

Terms compose lexical boxes into a sentence box.  The kind system is simple:
``ref`` (a discourse referent), ``box`` (a DRS), and function kinds.  CCG
categories map onto kinds as

    N, PP        ->  ref -> box
    NP, S        ->  (ref -> box) -> box
    X/Y, X\\Y    ->  kind(Y) -> kind(X)

so a complete sentence is a continuation over its main referent and is
closed by applying it to the trivial continuation ``\\v.[]``.

Beta reduction is normal-order with capture-avoiding substitution, followed
by flattening of adjacent box literals via the DRS merge.  The presupposition
operator survives reduction; resolving it hoists every presupposed box into
the outermost box (global accommodation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .categories import Atomic, Category
from .drs import (
    EMPTY, Before, Drs, Not, Now, Pred1, Pred2, Ref, Role, TimeEq, Value,
    condition_args, merge, replace_args,
)

REF = "ref"
BOX = "box"


@dataclass(frozen=True, slots=True)
class Fun:
    arg: "Kind"
    res: "Kind"

    def __str__(self) -> str:
        a = f"({self.arg})" if isinstance(self.arg, Fun) else str(self.arg)
        return f"{a} -> {self.res}"


Kind = Union[str, Fun]

RB = Fun(REF, BOX)  # a property of a referent


class KindError(TypeError):
    pass


class ComposeError(ValueError):
    """Composition left an unresolved abstraction or ill-formed term."""


def category_kind(cat: Category) -> Kind:
    if isinstance(cat, Atomic):
        if cat.name in ("N", "PP"):
            return RB
        if cat.name in ("NP", "S"):
            return Fun(RB, BOX)
        raise KindError(f"no kind for atom {cat.name}")
    return Fun(category_kind(cat.argument), category_kind(cat.result))


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    kind: Optional[Kind] = None


@dataclass(frozen=True, slots=True)
class Lam:
    var: Var
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True, slots=True)
class DrsLit:
    box: Drs


@dataclass(frozen=True, slots=True)
class Merge:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Presup:
    presupposed: "Term"
    body: "Term"


@dataclass(frozen=True, slots=True)
class Neg:
    body: "Term"


@dataclass(frozen=True, slots=True)
class RefTerm:
    ref: Ref


Term = Union[Var, Lam, App, DrsLit, Merge, Presup, Neg, RefTerm]


def lam(*args) -> Term:
    """lam(v1, v2, ..., body): nested abstraction helper."""
    *vs, body = args
    for v in reversed(vs):
        body = Lam(v, body)
    return body


def app(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def free_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var.name}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, DrsLit):
        return {a for c in _all_conds(t.box) for a in condition_args(c)
                if isinstance(a, str)}
    if isinstance(t, Merge):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, Presup):
        return free_vars(t.presupposed) | free_vars(t.body)
    if isinstance(t, Neg):
        return free_vars(t.body)
    if isinstance(t, RefTerm):
        return set()
    raise TypeError(t)


def _all_conds(box: Drs):
    for c in box.conds:
        yield c
        if isinstance(c, Not):
            yield from _all_conds(c.inner)


def _fresh_name(base: str, avoid: set[str]) -> str:
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789")
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def subst(t: Term, name: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of ``replacement`` for Var(name)."""
    if isinstance(t, Var):
        return replacement if t.name == name else t
    if isinstance(t, RefTerm):
        return t
    if isinstance(t, Lam):
        if t.var.name == name:
            return t
        if name not in free_vars(t.body):
            return t
        if t.var.name in free_vars(replacement):
            avoid = free_vars(t.body) | free_vars(replacement) | {name}
            newname = _fresh_name(t.var.name, avoid)
            newvar = Var(newname, t.var.kind)
            body = subst(t.body, t.var.name, Var(newname, t.var.kind))
            return Lam(newvar, subst(body, name, replacement))
        return Lam(t.var, subst(t.body, name, replacement))
    if isinstance(t, App):
        return App(subst(t.fun, name, replacement), subst(t.arg, name, replacement))
    if isinstance(t, Merge):
        return Merge(subst(t.left, name, replacement), subst(t.right, name, replacement))
    if isinstance(t, Presup):
        return Presup(subst(t.presupposed, name, replacement),
                      subst(t.body, name, replacement))
    if isinstance(t, Neg):
        return Neg(subst(t.body, name, replacement))
    if isinstance(t, DrsLit):
        if name not in free_vars(t):
            return t
        if isinstance(replacement, RefTerm):
            return DrsLit(replace_args(t.box, {name: replacement.ref}))
        if isinstance(replacement, Var):
            return DrsLit(replace_args(t.box, {name: replacement.name}))
        raise KindError(
            f"condition argument {name!r} must be substituted by a referent, "
            f"got {type(replacement).__name__}")
    raise TypeError(t)


def beta_reduce(t: Term) -> Term:
    """Normal form under beta reduction, then merge-flattening of box literals."""
    return _flatten(_normalize(t))


def _normalize(t: Term) -> Term:
    if isinstance(t, App):
        fun = _normalize(t.fun)
        if isinstance(fun, Lam):
            return _normalize(subst(fun.body, fun.var.name, t.arg))
        if isinstance(fun, (Var, App)):
            return App(fun, _normalize(t.arg))
        raise KindError(f"applied a non-function: {type(fun).__name__}")
    if isinstance(t, Lam):
        return Lam(t.var, _normalize(t.body))
    if isinstance(t, Merge):
        return Merge(_normalize(t.left), _normalize(t.right))
    if isinstance(t, Presup):
        return Presup(_normalize(t.presupposed), _normalize(t.body))
    if isinstance(t, Neg):
        return Neg(_normalize(t.body))
    return t


def _flatten(t: Term) -> Term:
    if isinstance(t, Merge):
        left = _flatten(t.left)
        right = _flatten(t.right)
        if isinstance(left, DrsLit) and isinstance(right, DrsLit):
            return DrsLit(merge(left.box, right.box))
        if isinstance(left, DrsLit) and isinstance(right, Merge) \
                and isinstance(right.left, DrsLit):
            return _flatten(Merge(DrsLit(merge(left.box, right.left.box)), right.right))
        return Merge(left, right)
    if isinstance(t, Presup):
        return Presup(_flatten(t.presupposed), _flatten(t.body))
    if isinstance(t, Neg):
        body = _flatten(t.body)
        if isinstance(body, DrsLit):
            return DrsLit(Drs((), (Not(body.box),)))
        return Neg(body)
    if isinstance(t, Lam):
        return Lam(t.var, _flatten(t.body))
    if isinstance(t, App):
        return App(_flatten(t.fun), _flatten(t.arg))
    return t


def resolve_presuppositions(t: Term) -> Drs:
    """Reduce, then hoist every presupposed box into the outermost box."""
    reduced = beta_reduce(t)
    presups, core = _collect(reduced)
    out = EMPTY
    for p in presups:
        out = merge(out, p)
    return merge(out, core)


def _collect(t: Term) -> tuple[list[Drs], Drs]:
    if isinstance(t, DrsLit):
        return [], t.box
    if isinstance(t, Merge):
        pl, cl = _collect(t.left)
        pr, cr = _collect(t.right)
        return pl + pr, merge(cl, cr)
    if isinstance(t, Presup):
        pp, cp = _collect(t.presupposed)
        pb, cb = _collect(t.body)
        return pp + [cp] + pb, cb
    if isinstance(t, Neg):
        pb, cb = _collect(t.body)
        return pb, Drs((), (Not(cb),))
    if isinstance(t, Lam):
        raise ComposeError("composition incomplete: unresolved abstraction")
    raise ComposeError(f"composition incomplete: {type(t).__name__} remains")


# --- kind checking ----------------------------------------------------------

def synth_kind(t: Term, env: dict[str, Kind]) -> Kind:
    if isinstance(t, Var):
        if t.name not in env:
            raise KindError(f"unbound variable {t.name}")
        return env[t.name]
    if isinstance(t, Lam):
        if t.var.kind is None:
            raise KindError("cannot synthesize kind of unannotated abstraction")
        body = synth_kind(t.body, {**env, t.var.name: t.var.kind})
        return Fun(t.var.kind, body)
    if isinstance(t, RefTerm):
        return REF
    if isinstance(t, (DrsLit, Merge, Presup, Neg)):
        check_kind(t, BOX, env)
        return BOX
    if isinstance(t, App):
        fk = synth_kind(t.fun, env)
        if not isinstance(fk, Fun):
            raise KindError(f"applied a non-function of kind {fk}")
        check_kind(t.arg, fk.arg, env)
        return fk.res
    raise KindError(f"cannot synthesize kind of {type(t).__name__}")


def check_kind(t: Term, kind: Kind, env: dict[str, Kind]) -> None:
    """Bidirectional kind check; raises KindError on mismatch."""
    if isinstance(t, Lam):
        if not isinstance(kind, Fun):
            raise KindError(f"abstraction where {kind} expected")
        check_kind(t.body, kind.res, {**env, t.var.name: kind.arg})
        return
    if isinstance(t, DrsLit):
        if kind != BOX:
            raise KindError(f"box literal where {kind} expected")
        for cond in _all_conds(t.box):
            for a in condition_args(cond):
                if isinstance(a, str) and env.get(a, REF) != REF:
                    raise KindError(f"condition argument {a} is not a referent")
        return
    if isinstance(t, Merge) or isinstance(t, Presup):
        if kind != BOX:
            raise KindError(f"merge where {kind} expected")
        parts = (t.left, t.right) if isinstance(t, Merge) else (t.presupposed, t.body)
        for p in parts:
            check_kind(p, BOX, env)
        return
    if isinstance(t, Neg):
        if kind != BOX:
            raise KindError(f"negation where {kind} expected")
        check_kind(t.body, BOX, env)
        return
    got = synth_kind(t, env)
    if got != kind:
        raise KindError(f"kind mismatch: expected {kind}, got {got}")


def annotate_kinds(t: Term, kind: Kind, env: dict[str, Kind]) -> Term:
    """Return a copy with Var kinds filled in, checking against ``kind``."""
    if isinstance(t, Lam):
        if not isinstance(kind, Fun):
            raise KindError(f"abstraction where {kind} expected")
        newvar = Var(t.var.name, kind.arg)
        body = annotate_kinds(t.body, kind.res, {**env, t.var.name: kind.arg})
        return Lam(newvar, body)
    if isinstance(t, Var):
        if t.name not in env:
            raise KindError(f"unbound variable {t.name}")
        if env[t.name] != kind:
            raise KindError(f"kind mismatch on {t.name}: expected {kind}, got {env[t.name]}")
        return Var(t.name, kind)
    if isinstance(t, App):
        fk = _synth_shape(t.fun, env)
        if not isinstance(fk, Fun):
            raise KindError("applied a non-function in template")
        fun = annotate_kinds(t.fun, fk, env)
        arg = annotate_kinds(t.arg, fk.arg, env)
        if fk.res != kind:
            raise KindError(f"kind mismatch: expected {kind}, got {fk.res}")
        return App(fun, arg)
    if isinstance(t, Merge):
        _want_box(kind, "merge")
        return Merge(annotate_kinds(t.left, BOX, env), annotate_kinds(t.right, BOX, env))
    if isinstance(t, Presup):
        _want_box(kind, "presupposition")
        return Presup(annotate_kinds(t.presupposed, BOX, env),
                      annotate_kinds(t.body, BOX, env))
    if isinstance(t, Neg):
        _want_box(kind, "negation")
        return Neg(annotate_kinds(t.body, BOX, env))
    if isinstance(t, DrsLit):
        check_kind(t, kind, env)
        return t
    if isinstance(t, RefTerm):
        if kind != REF:
            raise KindError(f"referent where {kind} expected")
        return t
    raise TypeError(t)


def _want_box(kind: Kind, what: str) -> None:
    if kind != BOX:
        raise KindError(f"{what} where {kind} expected")


def _synth_shape(t: Term, env: dict[str, Kind]) -> Kind:
    if isinstance(t, Var):
        if t.name not in env:
            raise KindError(f"unbound variable {t.name}")
        return env[t.name]
    if isinstance(t, App):
        fk = _synth_shape(t.fun, env)
        if not isinstance(fk, Fun):
            raise KindError("applied a non-function in template")
        return fk.res
    if isinstance(t, (DrsLit, Merge, Presup, Neg)):
        return BOX
    if isinstance(t, RefTerm):
        return REF
    raise KindError(f"cannot synthesize kind of {type(t).__name__}")


def identity_term(kind: Kind) -> Term:
    v = Var("v", kind)
    return Lam(v, v)


def term_str(t: Term) -> str:
    """Compact printable form, mainly for diagnostics and demos."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Lam):
        return f"\\{t.var.name}. {term_str(t.body)}"
    if isinstance(t, App):
        fun = term_str(t.fun)
        if isinstance(t.fun, Lam):
            fun = f"({fun})"
        arg = term_str(t.arg)
        if not isinstance(t.arg, (Var, RefTerm, DrsLit)):
            arg = f"({arg})"
        return f"{fun} {arg}"
    if isinstance(t, DrsLit):
        return _box_str(t.box)
    if isinstance(t, Merge):
        return f"({term_str(t.left)} ; {term_str(t.right)})"
    if isinstance(t, Presup):
        return f"(presup({term_str(t.presupposed)}) ; {term_str(t.body)})"
    if isinstance(t, Neg):
        return f"not({term_str(t.body)})"
    if isinstance(t, RefTerm):
        return t.ref.name
    raise TypeError(t)


def _box_str(box: Drs) -> str:
    refs = " ".join(r.name for r in box.refs)
    conds = ", ".join(_cond_str(c) for c in box.conds)
    return f"[{refs} : {conds}]" if refs else f"[: {conds}]"


def _cond_str(c) -> str:
    name = lambda a: a.name if isinstance(a, Ref) else str(a)
    if isinstance(c, Pred1):
        return f"{c.symbol}({name(c.arg)})"
    if isinstance(c, Pred2):
        return f"{c.symbol}({name(c.arg1)}, {name(c.arg2)})"
    if isinstance(c, Role):
        return f"{c.role}({name(c.arg1)}, {name(c.arg2)})"
    if isinstance(c, Before):
        return f"{name(c.arg1)} < {name(c.arg2)}"
    if isinstance(c, TimeEq):
        return f"{name(c.arg1)} = {name(c.arg2)}"
    if isinstance(c, Value):
        return f"value({name(c.arg)}, {c.literal})"
    if isinstance(c, Now):
        return f"now({name(c.arg)})"
    if isinstance(c, Not):
        return f"not {_box_str(c.inner)}"
    raise TypeError(c)
