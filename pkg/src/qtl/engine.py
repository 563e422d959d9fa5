"""Invariant construction and verification for mixed quiver representations.

The generating invariants are the characteristic-polynomial coefficients
s_j of products of generic arrow matrices along closed words of the
doubled quiver.  The multilinear layer works on a *hat* quiver: every
arrow is split into numbered copies (multidegree many), arranged so the
plain copies come first, then the starred-head copies, then the
starred-tail copies ([1,t], [t+1,t+s], [t+s+1,r]).  A permutation of
[1,r] satisfying the balance equations encodes one multilinear
invariant; contracting its formal pair product into cycles renders it as
a product of traces, and an explicit tensor-index sum provides an
independent polynomial for the same permutation.  The two constructions
are compared term by term in the tests.

Group elements act per arrow according to the star pattern (point
action, with one shared factor per pair):

    plain -> plain      Y |-> G_end Y G_origin^-1
    plain -> starred    Y |-> (G_end^T)^-1 Y G_origin^-1
    starred -> plain    Y |-> G_end Y G_origin^T

Invariance of every constructed polynomial is checked by randomized
exact evaluation over GF(p) and QQ.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import perms
from .errors import (LayoutMismatch, MissingAssignment, NotAdmissible,
                     NotDominating, NotInHom, ShapeMismatch,
                     UnbalancedMultidegree)
from .fields import QQ
from .matrices import (char_poly_sigma, identity, mat_inv, mat_mul,
                       random_invertible, random_matrix, trace, transpose)
from .poly import Polynomial, PolyRing
from .quiver import (Arrow, ArrowCase, DoubledQuiver, MixedDimVector,
                     MixedQuiver, classify_arrow, double_quiver)
from .words import Word, format_word, is_admissible, word_content


# -- coordinate ring ---------------------------------------------------------

class CoordinateContext:
    """Coordinate ring of a mixed representation space plus generic matrices.

    Variables are y[a][i][j] with 1 <= i <= d_end(a), 1 <= j <= d_origin(a),
    grouped per arrow, ordered arrow-by-arrow row-major.
    """

    def __init__(self, quiver: MixedQuiver, t: MixedDimVector, field=QQ):
        self.quiver = quiver
        self.t = t
        self.field = field
        names = []
        meta = []
        groups = []
        for a in quiver.arrows:
            rows = t.size(a.end)
            cols = t.size(a.origin)
            for i in range(1, rows + 1):
                for j in range(1, cols + 1):
                    names.append(f"y[{a.id}][{i}][{j}]")
                    meta.append((a.id, i, j))
                    groups.append(a.id)
        self.ring = PolyRing(field, names, groups)
        self.varmeta = tuple(meta)
        self.var_index = {m: i for i, m in enumerate(meta)}
        self.generic = {}
        for a in quiver.arrows:
            rows = t.size(a.end)
            cols = t.size(a.origin)
            self.generic[a.id] = [
                [self.ring.var(f"y[{a.id}][{i}][{j}]") for j in range(1, cols + 1)]
                for i in range(1, rows + 1)]
        self.doubled = double_quiver(quiver, t)

    def arrow_shape(self, arrow_id: str):
        a = self.quiver.arrow(arrow_id)
        return (self.t.size(a.end), self.t.size(a.origin))

    def point_values(self, point: dict):
        """Flatten a point (arrow -> numeric matrix) into a value vector."""
        vals = []
        for (aid, i, j) in self.varmeta:
            try:
                vals.append(point[aid][i - 1][j - 1])
            except KeyError:
                raise MissingAssignment(f"no matrix for arrow {aid!r}")
        return vals


@dataclass(frozen=True)
class Invariant:
    poly: Polynomial
    provenance: dict


def _as_poly(inv):
    return inv.poly if isinstance(inv, Invariant) else inv


# -- word evaluation and generators -------------------------------------------

def eval_word(w: Word, assignment: dict, dims: MixedDimVector | None = None,
              quiver: MixedQuiver | None = None):
    """Product Z(x1) ... Z(xk) of assigned matrices, bars transposing.

    With ``dims`` and ``quiver`` given, each assigned matrix must have
    the declared shape d_end x d_origin of its arrow.
    """
    if not w:
        raise NotAdmissible("empty word")
    mats = []
    for letter in w:
        if letter.base not in assignment:
            raise MissingAssignment(f"no matrix for arrow {letter.base!r}")
        m = assignment[letter.base]
        if dims is not None and quiver is not None:
            a = quiver.arrow(letter.base)
            want = (dims.size(a.end), dims.size(a.origin))
            got = (len(m), len(m[0]) if m else 0)
            if got != want:
                raise ShapeMismatch(
                    f"arrow {letter.base!r}: matrix is {got[0]}x{got[1]}, "
                    f"dimension vector wants {want[0]}x{want[1]}")
        mats.append(transpose(m) if letter.barred else m)
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


def generator(quiver: MixedQuiver, t: MixedDimVector, w: Word, j: int,
              field=QQ, context: CoordinateContext | None = None) -> Invariant:
    """The invariant s_j(Z(x1) ... Z(xk)) of an admissible closed word.

    Returns the zero polynomial when j exceeds the size of the square
    matrix at the word's base vertex (s_j truncates there).
    """
    ctx = context or CoordinateContext(quiver, t, field)
    if not is_admissible(ctx.doubled, w):
        raise NotAdmissible(format_word(w))
    if j < 1:
        raise ValueError("j must be at least 1")
    m = eval_word(w, ctx.generic)
    size = len(m)
    prov = {"kind": "word", "word": format_word(w), "j": j}
    if j > size:
        return Invariant(ctx.ring.zero(), prov)
    sigma = char_poly_sigma(m)
    return Invariant(sigma[j - 1], prov)


# -- multidegrees and the hat quiver ------------------------------------------

def multidegree_balanced(quiver: MixedQuiver, rbar: dict) -> bool:
    """Degree balance conditions for a nonzero multilinear component.

    At every ordinary vertex the in- and out-degrees (weighted by the
    multidegree) agree; at every pair the two mixed sums agree.
    """
    deg = {a.id: int(rbar.get(a.id, 0)) for a in quiver.arrows}
    if any(v < 0 for v in deg.values()):
        raise ValueError("multidegree entries must be nonnegative")
    for v in sorted(quiver.ordinary):
        into = sum(deg[a.id] for a in quiver.arrows if a.end == v)
        outof = sum(deg[a.id] for a in quiver.arrows if a.origin == v)
        if into != outof:
            return False
    for (iq, jq) in quiver.pairs:
        lhs = (sum(deg[a.id] for a in quiver.arrows if a.end == iq)
               + sum(deg[a.id] for a in quiver.arrows if a.origin == jq))
        rhs = (sum(deg[a.id] for a in quiver.arrows if a.origin == iq)
               + sum(deg[a.id] for a in quiver.arrows if a.end == jq))
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class HatLayout:
    quiver: MixedQuiver        # the original quiver
    t: MixedDimVector
    hat: MixedQuiver           # arrows named "1".."r"
    r: int
    tsize: int                 # |block 1|
    s: int                     # |block 2| = |block 3|
    intervals: dict            # base arrow id -> (lo, hi)
    f: tuple                   # position k (1-based) -> base arrow id

    def block(self, k: int) -> int:
        if 1 <= k <= self.tsize:
            return 1
        if self.tsize < k <= self.tsize + self.s:
            return 2
        if self.tsize + self.s < k <= self.r:
            return 3
        raise LayoutMismatch(f"position {k} outside [1,{self.r}]")

    def hat_arrow(self, k: int) -> Arrow:
        return self.hat.arrows[k - 1]


def hat_quiver(quiver: MixedQuiver, t: MixedDimVector, rbar: dict):
    """Split each arrow a into rbar[a] numbered copies.

    Copies of plain arrows come first, then copies of starred-head
    arrows, then starred-tail ones; within a class the base arrows keep
    their input order and each one owns a contiguous interval of
    numbers.  Returns (hat quiver, layout).  The two starred classes
    must contribute equally many copies.
    """
    deg = {a.id: int(rbar.get(a.id, 0)) for a in quiver.arrows}
    if any(v < 0 for v in deg.values()):
        raise ValueError("multidegree entries must be nonnegative")
    by_case = {1: [], 2: [], 3: []}
    for a in quiver.arrows:
        case = classify_arrow(quiver, t, a)
        if case is ArrowCase.CASE4:
            raise UnbalancedMultidegree(
                f"arrow {a.id!r} has both endpoints starred; normalize first")
        if deg[a.id]:
            by_case[case.value].append(a)
    tsize = sum(deg[a.id] for a in by_case[1])
    s2 = sum(deg[a.id] for a in by_case[2])
    s3 = sum(deg[a.id] for a in by_case[3])
    if s2 != s3:
        raise UnbalancedMultidegree(
            f"starred-head copies ({s2}) and starred-tail copies ({s3}) differ")
    arrows = []
    intervals = {}
    fmap = []
    num = 0
    for case in (1, 2, 3):
        for a in by_case[case]:
            lo = num + 1
            for _ in range(deg[a.id]):
                num += 1
                arrows.append((str(num), a.origin, a.end))
                fmap.append(a.id)
            intervals[a.id] = (lo, num)
    hat = MixedQuiver(quiver.nvertices, quiver.ordinary, quiver.pairs,
                      tuple(Arrow(i, o, e) for (i, o, e) in arrows))
    layout = HatLayout(quiver, t, hat, num, tsize, s2, intervals, tuple(fmap))
    return hat, layout


@dataclass(frozen=True)
class PermDatum:
    sigma: tuple
    layout: HatLayout


def _membership_sets(layout: HatLayout):
    """The paired (left, right) position sets, one pair per group factor."""
    hat, t = layout.hat, layout.t
    r, s = layout.r, layout.s
    in_block = layout.block
    ends = {k: hat.arrows[k - 1].end for k in range(1, r + 1)}
    origins = {k: hat.arrows[k - 1].origin for k in range(1, r + 1)}
    out = []
    for v in sorted(hat.ordinary):
        T = {k for k in range(1, r + 1) if ends[k] == v}
        I = {k for k in range(1, r + 1) if origins[k] == v}
        left = ({k for k in T if in_block(k) == 1}
                | {k - s for k in T if in_block(k) == 3})
        right = ({k for k in I if in_block(k) == 1}
                 | {k + s for k in I if in_block(k) == 2})
        out.append((("v", v), left, right))
    for q, (iq, jq) in enumerate(hat.pairs):
        T_i = {k for k in range(1, r + 1) if ends[k] == iq}
        I_i = {k for k in range(1, r + 1) if origins[k] == iq}
        T_j = {k for k in range(1, r + 1) if origins[k] == jq}
        I_j = {k for k in range(1, r + 1) if ends[k] == jq}
        left = ({k for k in T_i if in_block(k) == 1}
                | {k - s for k in T_i if in_block(k) == 3}
                | T_j)
        right = ({k for k in I_i if in_block(k) == 1}
                 | {k + s for k in I_i if in_block(k) == 2}
                 | I_j)
        out.append((("q", q), left, right))
    return out


def perm_in_hom(datum: PermDatum) -> bool:
    """Does sigma map every left position set onto its right counterpart?"""
    sigma, layout = datum.sigma, datum.layout
    if len(sigma) != layout.r:
        raise LayoutMismatch(
            f"permutation of {len(sigma)} symbols against r={layout.r}")
    for _, left, right in _membership_sets(layout):
        if {sigma[k - 1] for k in left} != right:
            return False
    return True


# -- contraction of a permutation into a trace product -------------------------

def formal_pair_product(sigma: tuple, tsize: int, s: int):
    """The ordered pair list: (k,inv(k)) | (inv(k),inv(k+s)) | (k-s,k)."""
    r = tsize + 2 * s
    if len(sigma) != r:
        raise LayoutMismatch(f"need a permutation of [1,{r}]")
    inv = perms.inverse(sigma)
    pairs = []
    for k in range(1, tsize + 1):
        pairs.append((k, inv[k - 1]))
    for k in range(tsize + 1, tsize + s + 1):
        pairs.append((inv[k - 1], inv[k + s - 1]))
    for k in range(tsize + s + 1, r + 1):
        pairs.append((k - s, k))
    return pairs


def contract(sigma: tuple, tsize: int, s: int):
    """Partition the formal pair product into cyclic trace factors.

    Each cycle starts at the lowest unused pair number with its
    coordinates in the original order; a pair entered through its second
    coordinate is flipped, which bars the corresponding matrix.  The
    result is cross-checked against the neighbor rule table.
    """
    pairs = formal_pair_product(sigma, tsize, s)
    used = [False] * len(pairs)
    factors = []
    for start in range(len(pairs)):
        if used[start]:
            continue
        used[start] = True
        first, cur = pairs[start]
        factor = [(start + 1, False)]
        while cur != first:
            for idx in range(len(pairs)):
                if used[idx]:
                    continue
                x, y = pairs[idx]
                if x == cur:
                    used[idx] = True
                    factor.append((idx + 1, False))
                    cur = y
                    break
                if y == cur:
                    used[idx] = True
                    factor.append((idx + 1, True))
                    cur = x
                    break
            else:
                raise RuntimeError("pair product did not close into cycles")
        factors.append(tuple(factor))
    tp = tuple(factors)
    _check_against_neighbor_rules(tp, sigma, tsize, s)
    return tp


def neighbor(sigma: tuple, tsize: int, s: int, symbol):
    """Right-hand neighbor of a symbol in the cyclic record.

    Symbols are (number, barred); the rule branches on the block of the
    number and on where sigma (or its inverse) sends the probe index.
    """
    r = tsize + 2 * s
    inv = perms.inverse(sigma)

    def block(k):
        return 1 if k <= tsize else (2 if k <= tsize + s else 3)

    n, barred = symbol
    if not barred:
        b = block(n)
        if b == 1:
            m = inv[n - 1]
        elif b == 2:
            m = inv[n + s - 1]
        else:
            m = sigma[n - 1]
            mb = block(m)
            return (m, True) if mb == 1 else ((m, False) if mb == 2 else (m - s, True))
        mb = block(m)
        return (m, False) if mb == 1 else ((m + s, False) if mb == 2 else (m, True))
    b = block(n)
    if b == 1:
        m = sigma[n - 1]
        mb = block(m)
        return (m, True) if mb == 1 else ((m, False) if mb == 2 else (m - s, True))
    if b == 2:
        m = inv[n - 1]
        mb = block(m)
        return (m, False) if mb == 1 else ((m + s, False) if mb == 2 else (m, True))
    m = sigma[n - s - 1]
    mb = block(m)
    return (m, True) if mb == 1 else ((m, False) if mb == 2 else (m - s, True))


def _check_against_neighbor_rules(tp, sigma, tsize, s):
    for factor in tp:
        k = len(factor)
        for i in range(k):
            expect = factor[(i + 1) % k]
            got = neighbor(sigma, tsize, s, factor[i])
            if got != expect:
                raise RuntimeError(
                    f"contraction self-check failed at {factor[i]}: "
                    f"pair product gives {expect}, neighbor table {got}")


def contract_permutation(datum: PermDatum, check_membership: bool = True):
    """Contract a member permutation; returns (raw, right-record) product."""
    from .words import right_record
    if check_membership and not perm_in_hom(datum):
        raise NotInHom(perms.format_cycles(datum.sigma, include_fixed=True))
    raw = contract(datum.sigma, datum.layout.tsize, datum.layout.s)
    return raw, right_record(raw)


# -- the tensor-index oracle ----------------------------------------------------

def hat_matrix_ring(r: int, n: int, field=QQ) -> PolyRing:
    """Ring of r generic n x n matrices y[k][i][j], grouped per number k."""
    names, groups = [], []
    for k in range(1, r + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                names.append(f"y[{k}][{i}][{j}]")
                groups.append(str(k))
    return PolyRing(field, names, groups)


def generic_hat_matrices(ring: PolyRing, r: int, n: int):
    mats = {}
    for k in range(1, r + 1):
        mats[k] = [[ring.var(f"y[{k}][{i}][{j}]") for j in range(1, n + 1)]
                   for i in range(1, n + 1)]
    return mats


def tr_star_direct(sigma: tuple, tsize: int, s: int, n: int, field=QQ,
                   ring: PolyRing | None = None) -> Polynomial:
    """The displayed tensor-index sum for a member permutation.

    Sum over all maps [1,r] -> [1,n]: block-1 positions contribute
    y[k][j_k][j_inv(k)], block-2 positions y[k][j_inv(k)][j_inv(k+s)],
    block-3 positions y[k][j_(k-s)][j_k].  This construction never looks
    at the contraction path and serves as its oracle.
    """
    r = tsize + 2 * s
    if len(sigma) != r:
        raise LayoutMismatch(f"need a permutation of [1,{r}]")
    inv = perms.inverse(sigma)
    ring = ring or hat_matrix_ring(r, n, field)
    if ring.nvars != r * n * n:
        raise LayoutMismatch("ring does not match r generic n x n matrices")

    def pos(k, i, j):
        return (k - 1) * n * n + (i - 1) * n + (j - 1)

    # per position: (k, row index source, col index source), sources 1-based
    slots = []
    for k in range(1, tsize + 1):
        slots.append((k, k, inv[k - 1]))
    for k in range(tsize + 1, tsize + s + 1):
        slots.append((k, inv[k - 1], inv[k + s - 1]))
    for k in range(tsize + s + 1, r + 1):
        slots.append((k, k - s, k))

    one = field.one()
    terms: dict = {}
    idx = [1] * r
    while True:
        exps = [0] * ring.nvars
        for (k, a, b) in slots:
            exps[pos(k, idx[a - 1], idx[b - 1])] += 1
        key = tuple(exps)
        acc = terms.get(key)
        terms[key] = one if acc is None else acc + one
        # advance the odometer
        i = r - 1
        while i >= 0 and idx[i] == n:
            idx[i] = 1
            i -= 1
        if i < 0:
            break
        idx[i] += 1
    terms = {e: c for e, c in terms.items() if not field.is_zero(c)}
    return Polynomial(ring, terms)


def trace_product_poly(tp, mats: dict, ring: PolyRing) -> Polynomial:
    """Evaluate a trace product on matrices indexed by symbol number."""
    out = ring.one()
    for factor in tp:
        prod = None
        for (num, barred) in factor:
            m = mats[num]
            m = transpose(m) if barred else m
            prod = m if prod is None else mat_mul(prod, m)
        out = out * trace(prod)
    return out


# -- group action and invariance ------------------------------------------------

def random_point(quiver: MixedQuiver, t: MixedDimVector, field, rng) -> dict:
    point = {}
    for a in quiver.arrows:
        point[a.id] = random_matrix(t.size(a.end), t.size(a.origin), field, rng)
    return point


def random_group_element(quiver: MixedQuiver, t: MixedDimVector, field, rng) -> dict:
    g = {}
    for key in quiver.factor_keys():
        if key[0] == "v":
            size = t.size(key[1])
        else:
            size = t.size(quiver.pairs[key[1]][0])
        g[key] = random_invertible(size, field, rng)
    return g


def act(point: dict, g: dict, quiver: MixedQuiver, t: MixedDimVector, field) -> dict:
    """Transform a point by a group element (right-to-left composition:
    act(act(x, g), h) == act(x, h*g) with componentwise products)."""
    inv_cache = {key: mat_inv(m, field) for key, m in g.items()}
    out = {}
    for a in quiver.arrows:
        case = classify_arrow(quiver, t, a)
        g_end = g[quiver.factor_key(a.end)]
        g_origin = g[quiver.factor_key(a.origin)]
        y = point[a.id]
        if case is ArrowCase.CASE1:
            out[a.id] = mat_mul(mat_mul(g_end, y), inv_cache[quiver.factor_key(a.origin)])
        elif case is ArrowCase.CASE2:
            left = transpose(inv_cache[quiver.factor_key(a.end)])
            out[a.id] = mat_mul(mat_mul(left, y), inv_cache[quiver.factor_key(a.origin)])
        elif case is ArrowCase.CASE3:
            out[a.id] = mat_mul(mat_mul(g_end, y), transpose(g_origin))
        else:
            raise NotAdmissible(f"arrow {a.id!r} still has both endpoints starred")
    return out


def compose_group(g: dict, h: dict) -> dict:
    """The element k with act(act(x, g), h) == act(x, k)."""
    return {key: mat_mul(h[key], g[key]) for key in g}


@dataclass
class VerifyReport:
    trials: int
    failures: list = dc_field(default_factory=list)
    field_name: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_invariance(inv, quiver: MixedQuiver, t: MixedDimVector,
                      trials: int, field, rng,
                      context: CoordinateContext | None = None) -> VerifyReport:
    """Exact randomized invariance check: inv(act(x, g)) == inv(x)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    poly = _as_poly(inv)
    ctx = context or CoordinateContext(quiver, t, field)
    if poly.ring != ctx.ring:
        raise LayoutMismatch("invariant was built over a different ring")
    report = VerifyReport(trials=trials, field_name=getattr(field, "name", str(field)))
    for trial in range(trials):
        x = random_point(quiver, t, field, rng)
        g = random_group_element(quiver, t, field, rng)
        v0 = poly.eval(ctx.point_values(x))
        v1 = poly.eval(ctx.point_values(act(x, g, quiver, t, field)))
        if v0 != v1:
            report.failures.append({"trial": trial, "before": repr(v0), "after": repr(v1)})
    return report


# -- specializations --------------------------------------------------------------

def specialize_dim(inv, src: CoordinateContext, dst: CoordinateContext):
    """Push an invariant down a componentwise-smaller dimension vector.

    Variables with a row or column index beyond the target size go to
    zero; the rest keep their names.
    """
    if src.quiver != dst.quiver:
        raise NotDominating("specialization needs the same quiver")
    if not src.t.dominates(dst.t):
        raise NotDominating("source dimension vector must dominate the target")
    poly = _as_poly(inv)
    images = []
    for (aid, i, j) in src.varmeta:
        rows, cols = dst.arrow_shape(aid)
        if i <= rows and j <= cols:
            images.append(dst.ring.var(f"y[{aid}][{i}][{j}]"))
        else:
            images.append(dst.ring.zero())
    out = poly.map_vars(dst.ring, images)
    prov = dict(inv.provenance) if isinstance(inv, Invariant) else {}
    prov["specialized_to"] = list(dst.t.sizes)
    return Invariant(out, prov)


def specialize_f(inv, layout: HatLayout, hat_ctx: CoordinateContext,
                 base_ctx: CoordinateContext):
    """Identify the numbered hat matrices along the interval map f."""
    poly = _as_poly(inv)
    images = []
    for (aid, i, j) in hat_ctx.varmeta:
        base = layout.f[int(aid) - 1]
        images.append(base_ctx.ring.var(f"y[{base}][{i}][{j}]"))
    out = poly.map_vars(base_ctx.ring, images)
    prov = dict(inv.provenance) if isinstance(inv, Invariant) else {}
    prov["specialized_f"] = True
    return Invariant(out, prov)


# -- generator enumeration helper --------------------------------------------------

def enumerate_generators(quiver: MixedQuiver, t: MixedDimVector, max_len: int,
                         max_j: int | None = None, field=QQ,
                         context: CoordinateContext | None = None,
                         dedupe: str = "rotation+transpose",
                         include_zero: bool = False):
    """All generators s_j(word) for words up to max_len, j up to max_j.

    Returns a list of (word, j, Invariant); zero polynomials (j beyond
    the base-vertex size) are skipped unless requested.
    """
    from .words import enumerate_closed_words
    ctx = context or CoordinateContext(quiver, t, field)
    top = max_j if max_j is not None else t.max_size()
    out = []
    for w in enumerate_closed_words(ctx.doubled, max_len, dedupe):
        for j in range(1, top + 1):
            inv = generator(quiver, t, w, j, field, ctx)
            if inv.poly.is_zero() and not include_zero:
                continue
            out.append((w, j, inv))
    return out
