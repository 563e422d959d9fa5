"""Quiver validation, case analysis, and doubling."""

import pytest

from qtl.errors import (DanglingArrow, FourthCasePresent, IncompatibleDimension,
                        PartitionViolation)
from qtl.quiver import (ArrowCase, Letter, classify_arrow, double_quiver,
                        eliminate_fourth_case, loop_quiver, pair_quiver,
                        validate)


def test_pair_quiver_is_valid():
    Q, t = pair_quiver(3, 2)
    assert Q.nvertices == 2
    assert Q.pairs == ((1, 2),)
    assert [a.id for a in Q.arrows] == ["a1", "a2", "a3", "b", "c"]
    assert t.size(1) == t.size(2) == 2
    assert not t.is_starred(1) and t.is_starred(2)


def test_empty_quiver_is_valid():
    Q, t = validate(0, [], [], [], [])
    assert Q.nvertices == 0
    assert Q.arrows == ()


def test_singleton_pair_rejected():
    with pytest.raises(PartitionViolation):
        validate(1, [], [[1]], [], [(2, True)])


def test_overlapping_blocks_rejected():
    with pytest.raises(PartitionViolation):
        validate(2, [1], [[1, 2]], [], [(2, False), (2, True)])
    with pytest.raises(PartitionViolation):
        validate(3, [3], [[1, 2], [2, 3]], [], [(2, False), (2, True), (2, False)])


def test_uncovered_vertex_rejected():
    with pytest.raises(PartitionViolation):
        validate(2, [1], [], [], [(2, False), (2, False)])


def test_incompatible_pair_sizes_rejected():
    with pytest.raises(IncompatibleDimension):
        validate(2, [], [[1, 2]], [], [(2, False), (3, True)])


def test_star_pattern_enforced():
    # the starred member must be the second one
    with pytest.raises(IncompatibleDimension):
        validate(2, [], [[1, 2]], [], [(2, True), (2, False)])
    with pytest.raises(IncompatibleDimension):
        validate(1, [1], [], [], [(2, True)])


def test_dangling_arrow_rejected():
    with pytest.raises(DanglingArrow):
        validate(1, [1], [], [("a", 1, 2)], [(2, False)])
    with pytest.raises(DanglingArrow):
        validate(1, [1], [], [("a", 1, 1), ("a", 1, 1)], [(2, False)])


def test_classification_of_pair_quiver():
    Q, t = pair_quiver(1, 2)
    cases = {a.id: classify_arrow(Q, t, a) for a in Q.arrows}
    assert cases == {"a1": ArrowCase.CASE1, "b": ArrowCase.CASE2,
                     "c": ArrowCase.CASE3}


def test_fourth_case_detection_and_elimination():
    # two pairs, one arrow between the starred members
    Q, t = validate(4, [], [[1, 2], [3, 4]], [("x", 2, 4)],
                    [(2, False), (2, True), (2, False), (2, True)])
    a = Q.arrows[0]
    assert classify_arrow(Q, t, a) is ArrowCase.CASE4
    Q2, relabel = eliminate_fourth_case(Q, t)
    a2 = Q2.arrows[0]
    assert (a2.origin, a2.end) == (3, 1)
    assert relabel == {"x": True}
    assert classify_arrow(Q2, t, a2) is ArrowCase.CASE1
    # idempotent
    Q3, relabel3 = eliminate_fourth_case(Q2, t)
    assert Q3 == Q2
    assert relabel3 == {"x": False}


def test_fourth_case_loop_at_starred_vertex():
    Q, t = validate(2, [], [[1, 2]], [("x", 2, 2)], [(2, False), (2, True)])
    Q2, relabel = eliminate_fourth_case(Q, t)
    assert (Q2.arrows[0].origin, Q2.arrows[0].end) == (1, 1)
    assert relabel["x"]


def test_eliminate_noop_without_fourth_case():
    Q, t = pair_quiver(1, 2)
    Q2, relabel = eliminate_fourth_case(Q, t)
    assert Q2 == Q
    assert not any(relabel.values())


def test_double_quiver_pair_example():
    Q, t = pair_quiver(1, 2)
    dq = double_quiver(Q, t)
    bar = lambda x: Letter(x, True)
    assert dq.origin(bar("a1")) == (2, False) and dq.end(bar("a1")) == (2, False)
    assert dq.origin(bar("b")) == (1, False) and dq.end(bar("b")) == (2, False)
    assert dq.origin(bar("c")) == (2, False) and dq.end(bar("c")) == (1, False)


def test_double_quiver_ordinary_arrows():
    Q, t = validate(2, [1, 2], [], [("a", 1, 2)], [(2, False), (3, False)])
    dq = double_quiver(Q, t)
    assert dq.origin(Letter("a", True)) == (2, True)
    assert dq.end(Letter("a", True)) == (1, True)
    Ql, tl = loop_quiver(1, 2, ids=["a"])
    dql = double_quiver(Ql, tl)
    assert dql.origin(Letter("a", True)) == (1, True)
    assert dql.end(Letter("a", True)) == (1, True)


def test_double_quiver_counts_and_involution():
    Q, t = pair_quiver(2, 3)
    dq = double_quiver(Q, t)
    assert len(dq.endpoints) == 2 * len(Q.arrows)
    verts = {v for ends in dq.endpoints.values() for v in ends}
    # no ordinary vertices here, so no starred copies appear
    assert len(verts) == Q.nvertices
    for letter in dq.letters():
        assert letter.bar().bar() == letter
        assert letter.bar() in dq.endpoints

    Qo, to = loop_quiver(2, 2)
    dqo = double_quiver(Qo, to)
    verts = {v for ends in dqo.endpoints.values() for v in ends}
    assert len(verts) == Qo.nvertices + len(Qo.ordinary)

    def star(v):
        if Qo.partner(v) is not None:
            return (Qo.partner(v), False)
        return (v, True)

    # bar exchanges origin/end through the star map
    for a in Qo.arrows:
        plain = Letter(a.id, False)
        barred = Letter(a.id, True)
        assert dqo.origin(barred) == star(dqo.end(plain)[0])
        assert dqo.end(barred) == star(dqo.origin(plain)[0])


def test_double_requires_normalized_quiver():
    Q, t = validate(2, [], [[1, 2]], [("x", 2, 2)], [(2, False), (2, True)])
    with pytest.raises(FourthCasePresent):
        double_quiver(Q, t)


def test_factor_keys():
    Q, t = validate(3, [3], [[1, 2]], [], [(2, False), (2, True), (4, False)])
    assert Q.factor_keys() == [("v", 3), ("q", 0)]
    assert Q.factor_key(1) == ("q", 0)
    assert Q.factor_key(3) == ("v", 3)
    assert Q.partner(1) == 2 and Q.partner(3) is None
