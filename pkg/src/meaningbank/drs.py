"""Discourse representation structures: referents, conditions, boxes.

A box binds an ordered row of discourse referents and lists conditions over
them.  Conditions may reference referents bound in the box itself or in an
ancestor box (negation nests boxes).  Condition arguments are either concrete
referents or, transiently during composition, still-unsubstituted variable
names (plain strings); a finished sentence box contains referents only.

Equality of boxes is alpha-equality: a sort-preserving bijection of bound
referents under which the referent rows and the condition multisets coincide
recursively.  Condition lists are compared as multisets because composition
order must not affect the meaning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

INDIVIDUAL = "x"
EVENT = "e"
STATE = "s"
TIME = "t"

SORTS = (INDIVIDUAL, EVENT, STATE, TIME)

# Display letters accepted for each sort in referent names.
_SORT_OF_LETTER = {
    "x": INDIVIDUAL, "y": INDIVIDUAL, "z": INDIVIDUAL,
    "u": INDIVIDUAL, "v": INDIVIDUAL, "w": INDIVIDUAL,
    "e": EVENT, "f": EVENT,
    "s": STATE,
    "t": TIME,
}


@dataclass(frozen=True, slots=True)
class Ref:
    """A discourse referent: a sort and a positive index, printed e.g. x1."""

    sort: str
    index: int

    def __post_init__(self):
        if self.sort not in SORTS:
            raise ValueError(f"unknown referent sort {self.sort!r}")
        if self.index < 1:
            raise ValueError("referent index must be positive")

    @property
    def name(self) -> str:
        return f"{self.sort}{self.index}"

    def __str__(self) -> str:
        return self.name


def sort_of_letter(letter: str) -> str:
    try:
        return _SORT_OF_LETTER[letter]
    except KeyError:
        raise ValueError(f"no referent sort for letter {letter!r}") from None


# A condition argument: a bound referent, or a variable name not yet
# substituted by beta reduction.
Arg = Union[Ref, str]


@dataclass(frozen=True, slots=True)
class Pred1:
    symbol: str
    arg: Arg


@dataclass(frozen=True, slots=True)
class Pred2:
    symbol: str
    arg1: Arg
    arg2: Arg


@dataclass(frozen=True, slots=True)
class Role:
    role: str
    arg1: Arg
    arg2: Arg


@dataclass(frozen=True, slots=True)
class Before:
    arg1: Arg
    arg2: Arg


@dataclass(frozen=True, slots=True)
class TimeEq:
    arg1: Arg
    arg2: Arg


@dataclass(frozen=True, slots=True)
class Value:
    arg: Arg
    literal: str


@dataclass(frozen=True, slots=True)
class Now:
    arg: Arg


@dataclass(frozen=True, slots=True)
class Not:
    inner: "Drs"


Condition = Union[Pred1, Pred2, Role, Before, TimeEq, Value, Now, Not]


@dataclass(frozen=True)
class Drs:
    refs: tuple[Ref, ...] = ()
    conds: tuple[Condition, ...] = ()

    def __post_init__(self):
        if len(set(self.refs)) != len(self.refs):
            raise ValueError("duplicate referents in one box")

    def is_empty(self) -> bool:
        return not self.refs and not self.conds


EMPTY = Drs()


def drs(refs: Iterable[Ref], conds: Iterable[Condition]) -> Drs:
    return Drs(tuple(refs), tuple(conds))


def condition_args(cond: Condition) -> tuple[Arg, ...]:
    if isinstance(cond, Pred1):
        return (cond.arg,)
    if isinstance(cond, (Pred2, Role, Before, TimeEq)):
        return (cond.arg1, cond.arg2)
    if isinstance(cond, Value):
        return (cond.arg,)
    if isinstance(cond, Now):
        return (cond.arg,)
    return ()


def _replace_args(cond: Condition, mapping: dict) -> Condition:
    def rep(a: Arg) -> Arg:
        return mapping.get(a, a)

    if isinstance(cond, Pred1):
        return Pred1(cond.symbol, rep(cond.arg))
    if isinstance(cond, Pred2):
        return Pred2(cond.symbol, rep(cond.arg1), rep(cond.arg2))
    if isinstance(cond, Role):
        return Role(cond.role, rep(cond.arg1), rep(cond.arg2))
    if isinstance(cond, Before):
        return Before(rep(cond.arg1), rep(cond.arg2))
    if isinstance(cond, TimeEq):
        return TimeEq(rep(cond.arg1), rep(cond.arg2))
    if isinstance(cond, Value):
        return Value(rep(cond.arg), cond.literal)
    if isinstance(cond, Now):
        return Now(rep(cond.arg))
    if isinstance(cond, Not):
        return Not(replace_args(cond.inner, mapping))
    raise TypeError(f"unknown condition {cond!r}")


def replace_args(box: Drs, mapping: dict) -> Drs:
    """Rewrite condition arguments (and bound referents) per the mapping."""
    refs = tuple(mapping.get(r, r) for r in box.refs)
    conds = tuple(_replace_args(c, mapping) for c in box.conds)
    return Drs(refs, conds)


def bound_refs(box: Drs) -> set[Ref]:
    """All referents bound anywhere in the box, including nested boxes."""
    out = set(box.refs)
    for cond in box.conds:
        if isinstance(cond, Not):
            out |= bound_refs(cond.inner)
    return out


def free_args(box: Drs, bound: frozenset = frozenset()) -> set[Arg]:
    """Arguments not bound by this box or an ancestor (refs and var names)."""
    here = bound | set(box.refs)
    out: set[Arg] = set()
    for cond in box.conds:
        if isinstance(cond, Not):
            out |= free_args(cond.inner, frozenset(here))
        else:
            for a in condition_args(cond):
                if a not in here:
                    out.add(a)
    return out


def merge(a: Drs, b: Drs) -> Drs:
    """Assertive merge: referent union plus condition concatenation.

    Referents bound by ``b`` (at any depth) that clash with referents bound
    by ``a`` are renamed to fresh indices.  Arguments free in ``b`` are left
    alone: they may intentionally reference referents bound by ``a`` (the
    dynamic-binding reading of the merge).
    """
    bound_a = bound_refs(a)
    bound_b = bound_refs(b)
    clashes = bound_a & bound_b
    if clashes:
        taken = {(r.sort, r.index) for r in bound_a | bound_b | free_args_refs(b)}
        mapping: dict[Ref, Ref] = {}
        for r in sorted(clashes, key=lambda r: (r.sort, r.index)):
            i = r.index + 1
            while (r.sort, i) in taken:
                i += 1
            taken.add((r.sort, i))
            mapping[r] = Ref(r.sort, i)
        b = replace_args(b, mapping)
    return Drs(a.refs + b.refs, a.conds + b.conds)


def free_args_refs(box: Drs) -> set[Ref]:
    return {a for a in free_args(box) if isinstance(a, Ref)}


def validate(box: Drs, bound: frozenset = frozenset()) -> None:
    """Check referent uniqueness along the scope chain and full boundness."""
    for r in box.refs:
        if r in bound:
            raise ValueError(f"referent {r} rebound in nested box")
    here = bound | set(box.refs)
    for cond in box.conds:
        if isinstance(cond, Not):
            validate(cond.inner, frozenset(here))
            continue
        for a in condition_args(cond):
            if isinstance(a, str):
                raise ValueError(f"unsubstituted variable {a!r} in condition")
            if a not in here:
                raise ValueError(f"unbound referent {a} in condition")


# --- alpha equality ---------------------------------------------------------

def _cond_shape(cond: Condition):
    if isinstance(cond, Pred1):
        return ("pred1", cond.symbol)
    if isinstance(cond, Pred2):
        return ("pred2", cond.symbol)
    if isinstance(cond, Role):
        return ("role", cond.role)
    if isinstance(cond, Before):
        return ("before",)
    if isinstance(cond, TimeEq):
        return ("timeeq",)
    if isinstance(cond, Value):
        return ("value", cond.literal)
    if isinstance(cond, Now):
        return ("now",)
    if isinstance(cond, Not):
        return ("not", len(cond.inner.refs), len(cond.inner.conds))
    raise TypeError(cond)


def alpha_equal(a: Drs, b: Drs) -> bool:
    """True iff some sort-preserving referent bijection equates the boxes.

    Implemented as a backtracking search over condition pairings; candidate
    pairings are pruned by condition shape, so the brute-force fallback only
    explores genuinely ambiguous matchings (boxes here are small).
    """
    return _match_box(a, b, {}, set()) is not None


def _match_box(a: Drs, b: Drs, env: dict, used: set):
    if len(a.refs) != len(b.refs) or len(a.conds) != len(b.conds):
        return None
    for sort in SORTS:
        if sum(r.sort == sort for r in a.refs) != sum(r.sort == sort for r in b.refs):
            return None
    return _match_conds(list(a.conds), list(b.conds), env, used,
                        set(a.refs), set(b.refs))


def _match_conds(acs, bcs, env, used, arefs, brefs):
    if not acs:
        return env
    head, rest = acs[0], acs[1:]
    shape = _cond_shape(head)
    for i, cand in enumerate(bcs):
        if _cond_shape(cand) != shape:
            continue
        ext = _match_one(head, cand, env, used, arefs, brefs)
        if ext is None:
            continue
        env2, used2 = ext
        out = _match_conds(rest, bcs[:i] + bcs[i + 1:], env2, used2, arefs, brefs)
        if out is not None:
            return out
    return None


def _match_one(a: Condition, b: Condition, env, used, arefs, brefs):
    env = dict(env)
    used = set(used)
    for aa, ba in zip(condition_args(a), condition_args(b)):
        if isinstance(aa, str) or isinstance(ba, str):
            # Unsubstituted variables must match verbatim.
            if aa != ba:
                return None
            continue
        if aa.sort != ba.sort:
            return None
        if aa in env:
            if env[aa] != ba:
                return None
            continue
        # New pairing: both must be bound in the boxes currently matched.
        if aa not in arefs or ba not in brefs or ba in used:
            return None
        env[aa] = ba
        used.add(ba)
    if isinstance(a, Not):
        inner = _match_box(a.inner, b.inner, env, used)
        if inner is None:
            return None
        return inner, used | set(inner.values())
    return env, used


# --- canonical renaming and clausal export ----------------------------------

def canonical(box: Drs) -> Drs:
    """Rename bound referents per sort in first-appearance order.

    The traversal is the printed order: referent row, then conditions left to
    right (recursing into negated boxes pre-order).  Used to make exported
    output stable; equality remains alpha_equal.
    """
    mapping: dict[Ref, Ref] = {}
    counters = {s: 0 for s in SORTS}

    def visit_ref(r: Ref):
        if r not in mapping:
            counters[r.sort] += 1
            mapping[r] = Ref(r.sort, counters[r.sort])

    def walk(d: Drs):
        for r in d.refs:
            visit_ref(r)
        for cond in d.conds:
            for a in condition_args(cond):
                if isinstance(a, Ref):
                    visit_ref(a)
            if isinstance(cond, Not):
                walk(cond.inner)

    walk(box)
    return replace_args(box, mapping)


def clausal(box: Drs) -> str:
    """Export in the line-per-clause format, box ids assigned in pre-order."""
    lines: list[str] = []
    counter = [0]

    def emit(d: Drs):
        counter[0] += 1
        bid = f"b{counter[0]}"
        for r in d.refs:
            lines.append(f"{bid} REF {r.name}")
        pending: list[Drs] = []
        for cond in d.conds:
            if isinstance(cond, Pred1):
                lines.append(f"{bid} {cond.symbol} {_argname(cond.arg)}")
            elif isinstance(cond, Pred2):
                lines.append(f"{bid} {cond.symbol} {_argname(cond.arg1)} {_argname(cond.arg2)}")
            elif isinstance(cond, Role):
                lines.append(f"{bid} Role {cond.role} {_argname(cond.arg1)} {_argname(cond.arg2)}")
            elif isinstance(cond, Before):
                lines.append(f"{bid} LT {_argname(cond.arg1)} {_argname(cond.arg2)}")
            elif isinstance(cond, TimeEq):
                lines.append(f"{bid} EQ {_argname(cond.arg1)} {_argname(cond.arg2)}")
            elif isinstance(cond, Value):
                lines.append(f'{bid} Value {_argname(cond.arg)} "{cond.literal}"')
            elif isinstance(cond, Now):
                lines.append(f"{bid} now {_argname(cond.arg)}")
            elif isinstance(cond, Not):
                lines.append(f"{bid} NOT b{counter[0] + 1 + _boxes_in(pending)}")
                pending.append(cond.inner)
            else:
                raise TypeError(cond)
        for sub in pending:
            emit(sub)

    emit(box)
    return "\n".join(lines) + "\n"


def _boxes_in(boxes: list[Drs]) -> int:
    total = 0
    for b in boxes:
        total += 1 + sum(_count_boxes(c.inner) for c in b.conds if isinstance(c, Not))
    return total


def _count_boxes(d: Drs) -> int:
    return 1 + sum(_count_boxes(c.inner) for c in d.conds if isinstance(c, Not))


def _argname(a: Arg) -> str:
    if isinstance(a, Ref):
        return a.name
    raise ValueError(f"cannot export open box: variable {a!r}")
