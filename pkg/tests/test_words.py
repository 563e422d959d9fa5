"""Words in the doubled quiver and trace-product canonical forms."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtl.errors import DuplicateSymbol, EmptyWord
from qtl.quiver import Letter, double_quiver, loop_quiver, pair_quiver, validate
from qtl.words import (canonical_word, enumerate_closed_words, format_word,
                       format_trace_product, is_admissible, is_linked,
                       parse_word, right_record, trace_product, transpose_word,
                       word, word_content)


def pair_dq(loops=0, dim=2):
    Q, t = pair_quiver(loops, dim)
    return double_quiver(Q, t)


def test_is_linked_examples():
    dq = pair_dq()
    c, b = Letter("c", False), Letter("b", False)
    assert is_linked(dq, c, b)          # end(b) = 2 = origin(c)
    assert not is_linked(dq, b, b)
    Ql, tl = loop_quiver(1, 2, ids=["a"])
    dql = double_quiver(Ql, tl)
    a = Letter("a", False)
    assert is_linked(dql, a, a)


def test_admissibility_examples():
    dq = pair_dq()
    assert is_admissible(dq, word("c", "b"))
    assert not is_admissible(dq, word("b"))
    assert is_admissible(dq, word("c", "b'"))
    with pytest.raises(EmptyWord):
        is_admissible(dq, ())


def test_transpose_examples():
    assert transpose_word(word("c", "b")) == word("b'", "c'")
    assert transpose_word(word("a")) == word("a'")


@given(st.lists(st.tuples(st.sampled_from(["a", "b", "c"]), st.booleans()),
                min_size=1, max_size=6))
def test_transpose_is_involution(letters):
    w = word(*letters)
    assert transpose_word(transpose_word(w)) == w


def test_transpose_preserves_admissibility():
    dq = pair_dq(loops=1)
    for w in enumerate_closed_words(dq, 3, dedupe="rotation"):
        assert is_admissible(dq, transpose_word(w))


def brute_force_rotation_classes(dq, max_len):
    """Independent necklace count: filter all sequences, group by rotation."""
    letters = dq.letters()
    classes = set()
    for length in range(1, max_len + 1):
        for seq in product(letters, repeat=length):
            ok = all(dq.end(seq[(i + 1) % length]) == dq.origin(seq[i])
                     for i in range(length))
            if ok:
                classes.add(frozenset(seq[i:] + seq[:i] for i in range(length)))
    return len(classes)


def test_enumeration_matches_brute_force_necklaces():
    quivers = [
        loop_quiver(1, 2, ids=["a"]),
        loop_quiver(2, 2),
        pair_quiver(0, 2),
        pair_quiver(1, 2),
        validate(2, [1, 2], [], [("u", 1, 2), ("v", 2, 1)], [(2, False), (2, False)]),
    ]
    for Q, t in quivers:
        dq = double_quiver(Q, t)
        for L in (1, 2, 3, 4):
            got = enumerate_closed_words(dq, L, dedupe="rotation")
            assert len(got) == brute_force_rotation_classes(dq, L)
            assert len(set(got)) == len(got)
            for w in got:
                assert is_admissible(dq, w)
                assert canonical_word(w, "rotation") == w


def test_enumeration_one_loop():
    Q, t = loop_quiver(1, 2, ids=["a"])
    dq = double_quiver(Q, t)
    ws = enumerate_closed_words(dq, 2)
    assert [format_word(w) for w in ws] == ["a", "a,a"]


def test_enumeration_pair_m0():
    dq = pair_dq()
    ws = enumerate_closed_words(dq, 2)
    assert len(ws) == 2
    # the two classes: {cb ~ (cb)^T} and {c b-bar ~ transpose}
    reps = {format_word(w) for w in ws}
    assert reps == {"b,c", "b,c'"}


def test_enumeration_empty_for_zero_length():
    dq = pair_dq()
    assert enumerate_closed_words(dq, 0) == []


def test_rotation_only_dedupe_is_finer():
    dq = pair_dq()
    rot = enumerate_closed_words(dq, 2, dedupe="rotation")
    both = enumerate_closed_words(dq, 2, dedupe="rotation+transpose")
    assert len(rot) == 4 and len(both) == 2


def test_word_roundtrip_serialization():
    w = word("c", "b'")
    assert parse_word(format_word(w)) == w
    assert format_word(w) == "c,b'"
    assert word_content(w) == {"c": 1, "b": 1}


def test_right_record_paper_shape():
    tp = trace_product("1 6' 3' 5", "2 7' 4")
    rr = right_record(tp)
    assert format_trace_product(rr) == "(6 1' 5' 3)(7 2' 4')"


def test_right_record_already_right():
    tp = trace_product("4 2' 1")
    assert right_record(tp) == tp


def test_right_record_sorts_factors():
    tp = trace_product("2", "1")
    assert format_trace_product(right_record(tp)) == "(1)(2)"


def test_right_record_duplicate_symbol():
    with pytest.raises(DuplicateSymbol):
        right_record(trace_product("1 2", "2"))


@settings(max_examples=60)
@given(st.data())
def test_right_record_idempotent_and_stable(data):
    # random multilinear trace product on 1..r
    r = data.draw(st.integers(min_value=1, max_value=7))
    syms = list(range(1, r + 1))
    perm = data.draw(st.permutations(syms))
    nfac = data.draw(st.integers(min_value=1, max_value=r))
    cuts = sorted(data.draw(
        st.lists(st.integers(min_value=1, max_value=r - 1), max_size=nfac - 1,
                 unique=True))) if r > 1 else []
    bars = data.draw(st.lists(st.booleans(), min_size=r, max_size=r))
    pieces = []
    prev = 0
    for cut in cuts + [r]:
        pieces.append(tuple((perm[i], bars[i]) for i in range(prev, cut)))
        prev = cut
    tp = tuple(pieces)
    rr = right_record(tp)
    assert right_record(rr) == rr
    # invariant under factor permutation, factor rotation, factor transposition
    shuffled = data.draw(st.permutations(list(tp)))
    mangled = []
    for f in shuffled:
        k = data.draw(st.integers(min_value=0, max_value=len(f) - 1))
        f = f[k:] + f[:k]
        if data.draw(st.booleans()):
            f = tuple((n, not b) for (n, b) in reversed(f))
        mangled.append(f)
    assert right_record(tuple(mangled)) == rr
