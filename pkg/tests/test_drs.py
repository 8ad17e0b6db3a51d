import random

import pytest
from hypothesis import given, settings, strategies as st

from meaningbank.drs import (
    EMPTY, Before, Drs, Not, Now, Pred1, Pred2, Ref, Role, TimeEq, Value,
    alpha_equal, bound_refs, canonical, clausal, drs, merge, validate,
)
from oracles import bruteforce_alpha_equal
from sentence_fixtures import FINAL_BOX

X1 = Ref("x", 1)
X7 = Ref("x", 7)


def test_alpha_renaming():
    a = drs([X1], [Pred1("male", X1)])
    b = drs([X7], [Pred1("male", X7)])
    assert alpha_equal(a, b)


def test_alpha_different_predicate():
    a = drs([X1], [Pred1("male", X1)])
    b = drs([X1], [Pred1("time", X1)])
    assert not alpha_equal(a, b)


def test_alpha_sort_preserving():
    a = drs([Ref("x", 1)], [])
    b = drs([Ref("e", 1)], [])
    assert not alpha_equal(a, b)


def test_final_box_shuffled_and_reversed():
    rng = random.Random(7)
    # Reverse the referent row under a renaming and shuffle conditions.
    renames = {r: Ref(r.sort, r.index + 10) for r in FINAL_BOX.refs}
    from meaningbank.drs import replace_args
    shuffled = replace_args(FINAL_BOX, renames)
    conds = list(shuffled.conds)
    rng.shuffle(conds)
    shuffled = Drs(tuple(reversed(shuffled.refs)), tuple(conds))
    assert bruteforce_alpha_equal(FINAL_BOX, shuffled)
    assert alpha_equal(FINAL_BOX, shuffled)


def test_merge_empty_identity():
    a = drs([X1], [Pred1("male", X1)])
    assert merge(a, EMPTY) == a
    assert alpha_equal(merge(EMPTY, a), a)


def test_merge_clash_renaming():
    # Oracle: the right box must keep one referent, renamed apart, with its
    # condition following it.
    out = merge(drs([X1], []), drs([X1], [Pred1("time", X1)]))
    assert len(out.refs) == 2
    assert len({r for r in out.refs}) == 2
    expected = drs([Ref("x", 1), Ref("x", 2)], [Pred1("time", Ref("x", 2))])
    assert alpha_equal(out, expected)
    validate(out)


def test_merge_preserves_free_references():
    # Free args in the right operand intentionally bind to the left row.
    right = drs([], [Pred1("time", X1)])
    out = merge(drs([X1], []), right)
    assert out == drs([X1], [Pred1("time", X1)])


def refs_strategy():
    return st.lists(
        st.builds(Ref, st.sampled_from(["x", "e", "s", "t"]), st.integers(1, 6)),
        max_size=6, unique=True,
    )


def boxes(depth=1):
    def build(refs, seed):
        rng = random.Random(seed)
        pool = list(refs) or [Ref("x", 9)]
        conds = []
        for _ in range(rng.randrange(0, 5)):
            kind = rng.randrange(6)
            a = rng.choice(pool)
            b = rng.choice(pool)
            if kind == 0:
                conds.append(Pred1(rng.choice("pq"), a))
            elif kind == 1:
                conds.append(Pred2(rng.choice("rv"), a, b))
            elif kind == 2:
                conds.append(Role(rng.choice(["Agent", "Theme"]), a, b))
            elif kind == 3:
                conds.append(Before(a, b))
            elif kind == 4:
                conds.append(Value(a, rng.choice(["17:00", "3"])))
            else:
                conds.append(Now(a))
        refs = [r for r in refs]
        if not refs and conds:
            refs = [Ref("x", 9)]
        return drs(refs, conds)

    return st.builds(build, refs_strategy(), st.integers(0, 10 ** 6))


@settings(max_examples=150, deadline=None)
@given(boxes(), boxes())
def test_alpha_matches_bruteforce(a, b):
    assert alpha_equal(a, b) == bruteforce_alpha_equal(a, b)


@settings(max_examples=100, deadline=None)
@given(boxes())
def test_alpha_reflexive(a):
    assert alpha_equal(a, a)


@settings(max_examples=100, deadline=None)
@given(boxes(), boxes(), boxes())
def test_merge_associative_up_to_alpha(a, b, c):
    assert alpha_equal(merge(merge(a, b), c), merge(a, merge(b, c)))


@settings(max_examples=100, deadline=None)
@given(boxes())
def test_merge_no_duplicate_referents(a):
    out = merge(a, a)
    assert len(set(out.refs)) == len(out.refs)


def test_alpha_nested_negation():
    inner_a = drs([Ref("e", 1)], [Pred1("come", Ref("e", 1)), Pred2("see", Ref("e", 1), X1)])
    inner_b = drs([Ref("e", 3)], [Pred1("come", Ref("e", 3)), Pred2("see", Ref("e", 3), X7)])
    a = drs([X1], [Pred1("male", X1), Not(inner_a)])
    b = drs([X7], [Pred1("male", X7), Not(inner_b)])
    assert alpha_equal(a, b)
    assert bruteforce_alpha_equal(a, b)
    # Cross-box consistency: the pairing picked inside the negation must agree
    # with the outer row, so swapping who is "male" breaks equality.
    two_a = drs([X1, Ref("x", 2)],
                [Pred1("male", X1), Not(drs([], [Pred1("seen", Ref("x", 2))]))])
    two_b = drs([X1, Ref("x", 2)],
                [Pred1("male", X1), Not(drs([], [Pred1("seen", X1)]))])
    assert alpha_equal(two_a, two_b) == bruteforce_alpha_equal(two_a, two_b)
    assert not alpha_equal(two_a, two_b)


def test_duplicate_referents_rejected():
    with pytest.raises(ValueError):
        Drs((X1, X1), ())


def test_canonical_first_appearance_order():
    box = drs([Ref("t", 5), Ref("x", 4)], [Pred1("male", Ref("x", 4)), Now(Ref("t", 5))])
    out = canonical(box)
    assert out.refs == (Ref("t", 1), Ref("x", 1))
    assert out.conds == (Pred1("male", Ref("x", 1)), Now(Ref("t", 1)))


def test_clausal_export():
    inner = drs([Ref("e", 1)], [Pred1("come", Ref("e", 1))])
    box = drs([X1, Ref("t", 1)],
              [Pred1("male", X1), Now(Ref("t", 1)), Value(X1, "17:00"), Not(inner)])
    text = clausal(box)
    assert text.splitlines() == [
        "b1 REF x1",
        "b1 REF t1",
        "b1 male x1",
        "b1 now t1",
        'b1 Value x1 "17:00"',
        "b1 NOT b2",
        "b2 REF e1",
        "b2 come e1",
    ]


def test_clausal_sibling_negations_preorder():
    n1 = drs([], [Pred1("p", X1)])
    n2 = drs([Ref("e", 1)], [Not(drs([], [Pred1("q", Ref("e", 1))]))])
    box = drs([X1], [Not(n1), Not(n2)])
    lines = clausal(box).splitlines()
    assert lines == [
        "b1 REF x1",
        "b1 NOT b2",
        "b1 NOT b3",
        "b2 p x1",
        "b3 REF e1",
        "b3 NOT b4",
        "b4 q e1",
    ]


def test_bound_refs_nested():
    inner = drs([Ref("e", 1)], [])
    assert bound_refs(drs([X1], [Not(inner)])) == {X1, Ref("e", 1)}
