"""Seeded random generators for property suites."""

from __future__ import annotations

import random

from meaningbank import drs as D
from meaningbank import terms as T

VAR_NAMES = ["a", "b", "c", "p", "q", "r"]
SIMPLE_KINDS = [T.REF, T.BOX, T.RB]


class TermGen:
    """Generates closed, well-kinded terms of bounded depth.

    Box referents are drawn from a global counter so sibling boxes never
    clash; variable names reuse a small pool so shadowing and potential
    capture situations occur regularly.
    """

    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.ref_count = 0

    def fresh_ref(self, sort=None) -> D.Ref:
        self.ref_count += 1
        sort = sort or self.rng.choice(["x", "e", "s", "t"])
        return D.Ref(sort, self.ref_count)

    def box(self, env: dict) -> D.Drs:
        rng = self.rng
        refs = [self.fresh_ref() for _ in range(rng.randrange(0, 3))]
        ref_vars = [n for n, k in env.items() if k == T.REF]
        pool: list = list(refs) + ref_vars
        conds = []
        if pool:
            for _ in range(rng.randrange(0, 3)):
                a = rng.choice(pool)
                b = rng.choice(pool)
                pick = rng.randrange(5)
                if pick == 0:
                    conds.append(D.Pred1(rng.choice(["male", "time", "come"]), a))
                elif pick == 1:
                    conds.append(D.Pred2(rng.choice(["at", "see"]), a, b))
                elif pick == 2:
                    conds.append(D.Role(rng.choice(["Agent", "Theme"]), a, b))
                elif pick == 3:
                    conds.append(D.Value(a, "17:00"))
                else:
                    conds.append(D.Now(a))
            if rng.random() < 0.2:
                inner_ref = self.fresh_ref()
                conds.append(D.Not(D.drs([inner_ref], [D.Pred1("p", inner_ref)])))
        return D.drs(refs, conds)

    def term(self, kind, env: dict, depth: int) -> T.Term:
        rng = self.rng
        usable = [n for n, k in env.items() if k == kind]
        if depth <= 0:
            if usable and rng.random() < 0.7:
                return T.Var(rng.choice(usable), kind)
            return self._leaf(kind, env)
        if usable and rng.random() < 0.25:
            return T.Var(rng.choice(usable), kind)
        if kind == T.REF:
            return self._leaf(kind, env)
        if isinstance(kind, T.Fun):
            if rng.random() < 0.8:
                name = rng.choice(VAR_NAMES)
                var = T.Var(name, kind.arg)
                body = self.term(kind.res, {**env, name: kind.arg}, depth - 1)
                return T.Lam(var, body)
            return self._redex(kind, env, depth)
        # kind == BOX
        pick = rng.randrange(6)
        if pick == 0:
            return T.DrsLit(self.box(env))
        if pick == 1:
            return T.Merge(self.term(T.BOX, env, depth - 1),
                           self.term(T.BOX, env, depth - 1))
        if pick == 2:
            return T.Presup(self.term(T.BOX, env, depth - 1),
                            self.term(T.BOX, env, depth - 1))
        if pick == 3:
            return T.Neg(self.term(T.BOX, env, depth - 1))
        return self._redex(T.BOX, env, depth)

    def _redex(self, kind, env, depth) -> T.Term:
        argk = self.rng.choice(SIMPLE_KINDS)
        fun = self.term(T.Fun(argk, kind), env, depth - 1)
        arg = self.term(argk, env, depth - 1)
        return T.App(fun, arg)

    def _leaf(self, kind, env) -> T.Term:
        if kind == T.REF:
            return T.RefTerm(self.fresh_ref())
        if kind == T.BOX:
            return T.DrsLit(self.box(env))
        assert isinstance(kind, T.Fun)
        name = self.rng.choice(VAR_NAMES)
        var = T.Var(name, kind.arg)
        return T.Lam(var, self._leaf(kind.res, {**env, name: kind.arg}))


def closed_terms(seed: int, count: int, depth: int = 6):
    """Yield ``count`` closed well-kinded terms of box-producing kinds."""
    gen = TermGen(seed)
    kinds = [T.BOX, T.RB, T.Fun(T.RB, T.BOX)]
    for i in range(count):
        kind = kinds[i % len(kinds)]
        t = gen.term(kind, {}, depth)
        yield kind, t


# --- synthetic segmentation corpus -------------------------------------------

VOCAB = [
    "he", "she", "it", "we", "they", "came", "went", "saw", "ran", "sat",
    "back", "here", "there", "now", "then", "at", "in", "on", "home", "away",
    "the", "a", "man", "woman", "dog", "bird", "table", "wheel", "boxer",
    "quickly", "slowly", "again", "today", "around", "outside",
]

IMPERATIVES = ["Go.", "Run.", "Stop.", "Wait."]

TIME_WORDS = ["o'clock", "pm", "am"]

SPLIT_WORDS = [("im", "possible"), ("un", "happy"), ("re", "done")]


def _label_word(word: str, first_of_sentence: bool) -> str:
    head = "S" if first_of_sentence else "T"
    return head + "I" * (len(word) - 1)


def synth_sentence(rng) -> tuple[str, str]:
    """One sentence with labels; period attaches to the last token."""
    if rng.random() < 0.08:
        text = rng.choice(IMPERATIVES)
        return text, "S" + "I" * (len(text) - 1)
    n = rng.randrange(3, 8)
    words = [rng.choice(VOCAB) for _ in range(n)]
    words[0] = words[0].capitalize()
    parts_text: list[str] = []
    parts_labels: list[str] = []
    for i, w in enumerate(words):
        first = i == 0
        roll = rng.random()
        if roll < 0.18 and not first:
            # Glued time expression: "5 o'clock" or "2 pm" style.
            hour = str(rng.randrange(1, 13))
            tail = rng.choice(TIME_WORDS)
            parts_text.append(hour + " " + tail)
            parts_labels.append(_label_word(hour, False) + "O" + "I" * len(tail))
            continue
        if roll < 0.24 and not first:
            prefix, stem = rng.choice(SPLIT_WORDS)
            parts_text.append(prefix + stem)
            parts_labels.append(_label_word(prefix, False) + "T" + "I" * (len(stem) - 1))
            continue
        parts_text.append(w)
        parts_labels.append(_label_word(w, first))
    text = " ".join(parts_text) + "."
    labels = "O".join(parts_labels) + "I"
    return text, labels


def synth_corpus(seed: int, count: int) -> list[tuple[str, str]]:
    import random as _random
    rng = _random.Random(seed)
    docs = []
    for _ in range(count):
        text, labels = synth_sentence(rng)
        if rng.random() < 0.25:
            t2, l2 = synth_sentence(rng)
            text = text + " " + t2
            labels = labels + "O" + l2
        docs.append((text, labels))
    return docs


def random_box(rng, max_refs=6):
    """Random box with up to max_refs referents for algebra property suites."""
    sorts = ["x", "e", "s", "t"]
    n = rng.randrange(0, max_refs + 1)
    refs = []
    used = set()
    while len(refs) < n:
        r = D.Ref(rng.choice(sorts), rng.randrange(1, 7))
        if r not in used:
            used.add(r)
            refs.append(r)
    pool = refs or [D.Ref("x", 9)]
    conds = []
    for _ in range(rng.randrange(0, 6)):
        a = rng.choice(pool)
        b = rng.choice(pool)
        pick = rng.randrange(6)
        if pick == 0:
            conds.append(D.Pred1(rng.choice(["male", "time", "come", "p"]), a))
        elif pick == 1:
            conds.append(D.Pred2(rng.choice(["at", "see"]), a, b))
        elif pick == 2:
            conds.append(D.Role(rng.choice(["Agent", "Theme", "Time"]), a, b))
        elif pick == 3:
            conds.append(D.Before(a, b))
        elif pick == 4:
            conds.append(D.Value(a, rng.choice(["17:00", "3"])))
        else:
            conds.append(D.Now(a))
    if not refs and conds:
        refs = [D.Ref("x", 9)]
    if rng.random() < 0.25:
        inner = D.Ref("e", 8)
        conds.append(D.Not(D.drs([inner], [D.Pred1("q", inner)])))
    return D.drs(refs, conds)


def perturb_box(rng, box):
    """Alpha-equal variant: rename referents and shuffle conditions."""
    taken = {(r.sort, r.index) for r in D.bound_refs(box)}
    mapping = {}
    for r in D.bound_refs(box):
        i = rng.randrange(10, 30)
        while (r.sort, i) in taken:
            i += 1
        taken.add((r.sort, i))
        mapping[r] = D.Ref(r.sort, i)
    renamed = D.replace_args(box, mapping)
    conds = list(renamed.conds)
    rng.shuffle(conds)
    refs = list(renamed.refs)
    rng.shuffle(refs)
    return D.drs(refs, conds)
