"""Mixed quivers: vertex partitions, star patterns, case analysis, doubling.

A mixed quiver is a quiver whose vertex set splits into ordinary
vertices and two-element pairs; the second member of each pair carries
the dual space, marked by a star in the mixed dimension vector.  Arrows
fall into four classes by the star pattern at their endpoints; the
fourth class (both ends starred) can always be rewritten away by
reversing the arrow inside its pairs and transposing its generic
matrix.  The doubled quiver adjoins a formal transpose of every arrow.

All values here are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (DanglingArrow, FourthCasePresent, IncompatibleDimension,
                     PartitionViolation)


class ArrowCase(Enum):
    """Star pattern at an arrow's (origin, end): E means plain, S starred."""

    CASE1 = 1   # origin E,  end E
    CASE2 = 2   # origin E,  end E*
    CASE3 = 3   # origin E*, end E
    CASE4 = 4   # origin E*, end E*


@dataclass(frozen=True)
class Arrow:
    id: str
    origin: int
    end: int


@dataclass(frozen=True)
class MixedQuiver:
    nvertices: int
    ordinary: frozenset
    pairs: tuple          # ((i_q, j_q), ...) with j_q the starred member
    arrows: tuple         # Arrow records, order fixed by the input

    def vertices(self):
        return range(1, self.nvertices + 1)

    def pair_of(self, v: int):
        """Index of the pair containing v, or None for ordinary vertices."""
        for q, (i, j) in enumerate(self.pairs):
            if v == i or v == j:
                return q
        return None

    def partner(self, v: int):
        for i, j in self.pairs:
            if v == i:
                return j
            if v == j:
                return i
        return None

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(f"no arrow named {arrow_id!r}")

    def factor_key(self, v: int):
        """Group factor acting at v: ordinary vertices own one, pairs share one."""
        q = self.pair_of(v)
        return ("v", v) if q is None else ("q", q)

    def factor_keys(self):
        keys = [("v", v) for v in sorted(self.ordinary)]
        keys += [("q", q) for q in range(len(self.pairs))]
        return keys


@dataclass(frozen=True)
class MixedDimVector:
    sizes: tuple     # underlying d, per vertex
    starred: tuple   # True where the vertex carries the dual space

    def size(self, v: int) -> int:
        return self.sizes[v - 1]

    def is_starred(self, v: int) -> bool:
        return self.starred[v - 1]

    def underlying(self) -> tuple:
        return self.sizes

    def max_size(self) -> int:
        return max(self.sizes, default=0)

    def dominates(self, other: "MixedDimVector") -> bool:
        return (len(self.sizes) == len(other.sizes)
                and self.starred == other.starred
                and all(a >= b for a, b in zip(self.sizes, other.sizes)))


def validate(nvertices: int, ordinary, pairs, arrows, dims) -> tuple:
    """Check a raw quiver description and build (MixedQuiver, MixedDimVector).

    ``arrows`` is a sequence of (id, origin, end); ``dims`` a sequence of
    (size, starred) per vertex.  The starred member of each pair must be
    the second one listed; ordinary vertices are never starred, and both
    members of a pair share one size.
    """
    if nvertices < 0:
        raise PartitionViolation("negative vertex count")
    verts = set(range(1, nvertices + 1))
    ordinary = frozenset(ordinary)
    if not ordinary <= verts:
        raise PartitionViolation(f"ordinary vertices {sorted(ordinary - verts)} out of range")
    covered = set(ordinary)
    norm_pairs = []
    for pair in pairs:
        members = tuple(pair)
        if len(members) != 2 or len(set(members)) != 2:
            raise PartitionViolation(f"pair {pair!r} must contain two distinct vertices")
        i, j = members
        if i not in verts or j not in verts:
            raise PartitionViolation(f"pair {pair!r} uses unknown vertices")
        if i in covered or j in covered:
            raise PartitionViolation(f"pair {pair!r} overlaps another block")
        covered |= {i, j}
        norm_pairs.append((i, j))
    if covered != verts:
        raise PartitionViolation(f"vertices {sorted(verts - covered)} belong to no block")

    if len(dims) != nvertices:
        raise IncompatibleDimension(f"need {nvertices} dimension entries, got {len(dims)}")
    sizes = []
    stars = []
    for v, (size, star) in enumerate(dims, start=1):
        if not isinstance(size, int) or size < 1:
            raise IncompatibleDimension(f"vertex {v}: size must be a positive integer")
        sizes.append(size)
        stars.append(bool(star))
    for i, j in norm_pairs:
        if sizes[i - 1] != sizes[j - 1]:
            raise IncompatibleDimension(
                f"pair ({i},{j}): sizes {sizes[i-1]} and {sizes[j-1]} differ")
        if stars[i - 1] or not stars[j - 1]:
            raise IncompatibleDimension(
                f"pair ({i},{j}): exactly the second member must be starred")
    for v in ordinary:
        if stars[v - 1]:
            raise IncompatibleDimension(f"ordinary vertex {v} cannot be starred")

    seen_ids = set()
    norm_arrows = []
    for aid, origin, end in arrows:
        aid = str(aid)
        if aid in seen_ids:
            raise DanglingArrow(f"duplicate arrow id {aid!r}")
        seen_ids.add(aid)
        if origin not in verts or end not in verts:
            raise DanglingArrow(f"arrow {aid!r} endpoints ({origin},{end}) out of range")
        norm_arrows.append(Arrow(aid, origin, end))

    quiver = MixedQuiver(nvertices, ordinary, tuple(norm_pairs), tuple(norm_arrows))
    return quiver, MixedDimVector(tuple(sizes), tuple(stars))


def classify_arrow(quiver: MixedQuiver, t: MixedDimVector, arrow: Arrow) -> ArrowCase:
    o_star = t.is_starred(arrow.origin)
    e_star = t.is_starred(arrow.end)
    if not o_star and not e_star:
        return ArrowCase.CASE1
    if not o_star and e_star:
        return ArrowCase.CASE2
    if o_star and not e_star:
        return ArrowCase.CASE3
    return ArrowCase.CASE4


def arrow_classes(quiver: MixedQuiver, t: MixedDimVector) -> dict:
    return {a.id: classify_arrow(quiver, t, a) for a in quiver.arrows}


def eliminate_fourth_case(quiver: MixedQuiver, t: MixedDimVector):
    """Reverse every doubly-starred arrow inside its pairs.

    An arrow j_q -> j_{q'} becomes i_{q'} -> i_q and its generic matrix
    is transposed.  Returns (new quiver, relabeling) where the
    relabeling maps arrow id -> True iff that matrix was transposed;
    applying the operation twice changes nothing further.
    """
    new_arrows = []
    transposed = {}
    for a in quiver.arrows:
        if classify_arrow(quiver, t, a) is ArrowCase.CASE4:
            new_arrows.append(Arrow(a.id, quiver.partner(a.end), quiver.partner(a.origin)))
            transposed[a.id] = True
        else:
            new_arrows.append(a)
            transposed[a.id] = False
    q2 = MixedQuiver(quiver.nvertices, quiver.ordinary, quiver.pairs, tuple(new_arrows))
    return q2, transposed


# -- doubled quiver ------------------------------------------------------------

Vertex = tuple  # (vertex label, starred copy?)


@dataclass(frozen=True)
class Letter:
    """One arrow of the doubled quiver: a base arrow, possibly barred."""

    base: str
    barred: bool

    @property
    def id(self) -> str:
        return self.base + "_bar" if self.barred else self.base

    def bar(self) -> "Letter":
        return Letter(self.base, not self.barred)

    def key(self):
        # canonical letter order: arrow id string, unbarred before barred
        return (self.base, self.barred)

    def __repr__(self):
        return self.base + ("'" if self.barred else "")


@dataclass(frozen=True)
class DoubledQuiver:
    base: MixedQuiver
    t: MixedDimVector
    endpoints: dict          # Letter -> (origin Vertex, end Vertex)

    def letters(self):
        return sorted(self.endpoints, key=Letter.key)

    def origin(self, letter: Letter) -> Vertex:
        return self.endpoints[letter][0]

    def end(self, letter: Letter) -> Vertex:
        return self.endpoints[letter][1]

    def size_at(self, vertex: Vertex) -> int:
        return self.t.size(vertex[0])


def double_quiver(quiver: MixedQuiver, t: MixedDimVector) -> DoubledQuiver:
    """Adjoin a formal transpose of every arrow.

    Vertices are (v, False) for the originals plus (v, True) for each
    ordinary v.  The barred copy of an arrow with an ordinary endpoint
    lands on the starred copy; at a pair it swaps the two members.
    Fails if any arrow still has both endpoints starred.
    """
    endpoints = {}
    for a in quiver.arrows:
        if classify_arrow(quiver, t, a) is ArrowCase.CASE4:
            raise FourthCasePresent(
                f"arrow {a.id!r} has both endpoints starred; normalize first")
        endpoints[Letter(a.id, False)] = ((a.origin, False), (a.end, False))

        if a.end in quiver.ordinary:
            bar_origin = (a.end, True)
        else:
            bar_origin = (quiver.partner(a.end), False)
        if a.origin in quiver.ordinary:
            bar_end = (a.origin, True)
        else:
            bar_end = (quiver.partner(a.origin), False)
        endpoints[Letter(a.id, True)] = (bar_origin, bar_end)
    return DoubledQuiver(quiver, t, endpoints)


# -- convenient builders -------------------------------------------------------

def loop_quiver(nloops: int, dim: int, ids=None):
    """One ordinary vertex with ``nloops`` loops of size ``dim``."""
    ids = ids or [f"a{k}" for k in range(1, nloops + 1)]
    return validate(1, [1], [], [(i, 1, 1) for i in ids], [(dim, False)])


def pair_quiver(nloops: int, dim: int, loop_ids=None):
    """The two-vertex pair quiver: loops at vertex 1, b: 1->2, c: 2->1."""
    loop_ids = loop_ids or [f"a{k}" for k in range(1, nloops + 1)]
    arrows = [(i, 1, 1) for i in loop_ids] + [("b", 1, 2), ("c", 2, 1)]
    return validate(2, [], [(1, 2)], arrows, [(dim, False), (dim, True)])
