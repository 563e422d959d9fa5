"""Supermixed representation spaces and their reduction to mixed ones.

A supermixed space restricts some group factors of a mixed
representation space to orthogonal or symplectic subgroups and
optionally cuts intra-pair matrix components down to (skew-)symmetric
subspaces.  Its invariants are reached from a plain mixed space of an
enlarged quiver: each O/Sp factor contributes a fresh dual partner (for
an ordinary vertex) or reuses the existing one (for a pair), plus a
dual pair of connecting arrows whose generic matrices are specialized
to the constant form matrices (J and -J = J^{-1} for Sp, identity twice
for O).  Substituting those constants into any invariant of the
enlarged quiver yields a polynomial on the supermixed space that is
invariant under the restricted group; the randomized verifier checks
exactly that, along with the exact form arithmetic of the substituted
constants.

Shape restrictions collapse, in the arrow's own matrix coordinates, to
symmetric or skew-symmetric constraints (checked stable under the pair
factor's congruence action), and are realized by coordinate
identification so points can be sampled directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .engine import (CoordinateContext, Invariant, act, enumerate_generators)
from .errors import (IncompatibleDimension, OddCharRequired, ShapeMismatch,
                     UnsupportedCharacteristic)
from .fields import QQ
from .linalg import IncrementalRank, nullspace, rank
from .matrices import (identity, mat_equal, mat_inv, mat_mul, mat_neg,
                       random_invertible, random_matrix, transpose)
from .oracle import Derivation, derivation_images, elementary_matrix
from .poly import Polynomial, PolyRing
from .quiver import (Arrow, MixedDimVector, MixedQuiver, classify_arrow,
                     validate)

GROUPS = ("GL", "O", "Sp")
# representation-theoretic shape names; the second entry is the sign eps
# of the coordinate constraint Y = eps * Y^T
SHAPE_SIGNS = {
    "full": None,
    "symmetric": 1,
    "skew": -1,
    "lie_sp": 1,
    "lie_sp_skew": -1,
}
_SHAPES_FOR_GROUP = {
    "GL": {"full", "symmetric", "skew"},
    "O": {"full", "symmetric", "skew"},
    "Sp": {"full", "lie_sp", "lie_sp_skew"},
}


def normalize_shape(name: str) -> str:
    s = name.strip().lower().replace("-", "_")
    aliases = {"liesp": "lie_sp", "liespskew": "lie_sp_skew",
               "lie_spskew": "lie_sp_skew", "sym": "symmetric"}
    s = aliases.get(s, s)
    if s not in SHAPE_SIGNS:
        raise ShapeMismatch(f"unknown component shape {name!r}")
    return s


@dataclass(frozen=True)
class SupermixedSpec:
    quiver: MixedQuiver
    t: MixedDimVector
    factor_groups: dict      # factor key -> "GL" | "O" | "Sp"
    component_shapes: dict   # arrow id -> shape name

    def group_of(self, key) -> str:
        return self.factor_groups.get(key, "GL")

    def shape_of(self, arrow_id: str) -> str:
        return self.component_shapes.get(arrow_id, "full")

    def shape_sign(self, arrow_id: str):
        return SHAPE_SIGNS[self.shape_of(arrow_id)]


def make_spec(quiver: MixedQuiver, t: MixedDimVector, factor_groups=None,
              component_shapes=None) -> SupermixedSpec:
    """Validate and freeze a supermixed description."""
    groups = {}
    for key, name in (factor_groups or {}).items():
        if name not in GROUPS:
            raise ShapeMismatch(f"unknown group {name!r} for factor {key}")
        if key not in quiver.factor_keys():
            raise ShapeMismatch(f"unknown factor {key}")
        d = t.size(key[1]) if key[0] == "v" else t.size(quiver.pairs[key[1]][0])
        if name == "Sp" and d % 2:
            raise IncompatibleDimension(f"Sp factor at {key} needs even size, got {d}")
        groups[key] = name
    shapes = {}
    for aid, name in (component_shapes or {}).items():
        shape = normalize_shape(name)
        if shape == "full":
            continue
        a = quiver.arrow(aid)
        qo = quiver.pair_of(a.origin)
        qe = quiver.pair_of(a.end)
        if qo is None or qo != qe or a.origin == a.end:
            raise ShapeMismatch(
                f"shape on arrow {aid!r}: both endpoints must span one pair")
        factor = ("q", qo)
        g = groups.get(factor, "GL")
        if shape not in _SHAPES_FOR_GROUP[g]:
            raise ShapeMismatch(
                f"shape {shape!r} is not available under a {g} factor")
        shapes[aid] = shape
    return SupermixedSpec(quiver, t, groups, shapes)


def standard_skew_form(d: int, field):
    """J = [[0, I], [-I, 0]]; J^T = -J and J^2 = -I."""
    if d % 2:
        raise IncompatibleDimension(f"skew form needs even size, got {d}")
    h = d // 2
    one, zero = field.one(), field.zero()
    J = [[zero for _ in range(d)] for _ in range(d)]
    for i in range(h):
        J[i][h + i] = one
        J[h + i][i] = -one
    return J


@dataclass
class ReductionResult:
    spec: SupermixedSpec
    qprime: MixedQuiver
    tprime: MixedDimVector
    constant_subs: dict      # arrow id -> int matrix (entries 0, 1, -1)
    shape_subs: dict         # arrow id -> +1 | -1
    site_of: dict            # arrow id -> (factor key, group name, role)
    notes: list = dc_field(default_factory=list)


def build_reduction(spec: SupermixedSpec) -> ReductionResult:
    """Enlarge the quiver so the restricted factors become full GL ones.

    Per O/Sp factor two arrows b, c are added between the factor's
    plain vertex and its dual partner (freshly created for an ordinary
    vertex), with the constant substitutions X(b) -> F, X(c) -> F^{-1}
    for the defining form F.  Shape restrictions stay as coordinate
    identifications.
    """
    quiver, t = spec.quiver, spec.t
    nv = quiver.nvertices
    ordinary = set(quiver.ordinary)
    pairs = list(quiver.pairs)
    arrows = [(a.id, a.origin, a.end) for a in quiver.arrows]
    dims = [(t.size(v), t.is_starred(v)) for v in quiver.vertices()]
    constant_subs = {}
    site_of = {}
    notes = []

    for key in quiver.factor_keys():
        group = spec.group_of(key)
        if group == "GL":
            continue
        if key[0] == "v":
            v = key[1]
            d = t.size(v)
            nv += 1
            partner = nv
            ordinary.discard(v)
            pairs.append((v, partner))
            dims.append((d, True))
            site = f"v{v}"
        else:
            iq, jq = quiver.pairs[key[1]]
            v, partner = iq, jq
            d = t.size(iq)
            site = f"q{key[1]}"
        b_id, c_id = f"b_{site}", f"c_{site}"
        arrows.append((b_id, v, partner))
        arrows.append((c_id, partner, v))
        if group == "Sp":
            J = standard_skew_form(d, _IntField())
            constant_subs[b_id] = J
            constant_subs[c_id] = mat_neg(J)
            notes.append(f"{site}: Sp({d}) factor; X({b_id}) -> J, X({c_id}) -> -J = J^(-1)")
        else:
            I = identity(d, 1, 0)
            constant_subs[b_id] = I
            constant_subs[c_id] = I
            notes.append(f"{site}: O({d}) factor; X({b_id}) -> I, X({c_id}) -> I "
                         "(symmetric-form analogue of the symplectic construction)")
        site_of[b_id] = (key, group, "b")
        site_of[c_id] = (key, group, "c")

    qprime, tprime = validate(nv, sorted(ordinary), pairs, arrows, dims)
    shape_subs = {aid: spec.shape_sign(aid) for aid in spec.component_shapes}
    return ReductionResult(spec, qprime, tprime, constant_subs, shape_subs,
                           site_of, notes)


class _IntField:
    """Plain ints standing in for any field; only 0 and +-1 are produced."""

    def zero(self):
        return 0

    def one(self):
        return 1


# -- the coordinate ring of the supermixed space --------------------------------

class ReducedContext:
    """Free coordinates of the supermixed space S inside R(Q, t).

    Shaped arrows keep the entries on or above the diagonal (diagonal
    dropped for skew constraints); everything else keeps its full
    matrix.  Provides evaluation vectors for points of S.
    """

    def __init__(self, spec: SupermixedSpec, field=QQ):
        self.spec = spec
        self.field = field
        names, meta, groups = [], [], []
        for a in spec.quiver.arrows:
            rows = spec.t.size(a.end)
            cols = spec.t.size(a.origin)
            sign = spec.shape_sign(a.id)
            for i in range(1, rows + 1):
                for j in range(1, cols + 1):
                    if sign is not None:
                        if i > j or (i == j and sign == -1):
                            continue
                    names.append(f"x[{a.id}][{i}][{j}]")
                    meta.append((a.id, i, j))
                    groups.append(a.id)
        self.ring = PolyRing(field, names, groups)
        self.varmeta = tuple(meta)

    def point_values(self, point: dict):
        vals = []
        for (aid, i, j) in self.varmeta:
            vals.append(point[aid][i - 1][j - 1])
        return vals

    def random_point(self, rng) -> dict:
        """A random point of S: shaped arrows respect their constraint."""
        spec = self.spec
        point = {}
        for a in spec.quiver.arrows:
            rows = spec.t.size(a.end)
            cols = spec.t.size(a.origin)
            m = random_matrix(rows, cols, self.field, rng)
            sign = spec.shape_sign(a.id)
            if sign is not None:
                for i in range(rows):
                    for j in range(i, cols):
                        if i == j:
                            m[i][i] = m[i][i] if sign == 1 else self.field.zero()
                        else:
                            m[j][i] = sign * m[i][j]
            point[a.id] = m
        return point

    def shapes_hold(self, point: dict) -> bool:
        for aid in self.spec.component_shapes:
            m = point[aid]
            sign = self.spec.shape_sign(aid)
            mt = transpose(m)
            want = mt if sign == 1 else mat_neg(mt)
            if not mat_equal(m, want):
                return False
        return True


def push_invariant(inv, result: ReductionResult,
                   prime_ctx: CoordinateContext,
                   reduced_ctx: ReducedContext) -> Polynomial:
    """Substitute the reduction constants and shape identifications.

    Takes an invariant over the enlarged quiver and returns a
    polynomial on the coordinates of the supermixed space.
    """
    poly = inv.poly if isinstance(inv, Invariant) else inv
    if poly.ring != prime_ctx.ring:
        raise ShapeMismatch("invariant was not built over the enlarged quiver")
    field = reduced_ctx.field
    tgt = reduced_ctx.ring
    images = []
    for (aid, i, j) in prime_ctx.varmeta:
        if aid in result.constant_subs:
            images.append(tgt.const(field.from_int(result.constant_subs[aid][i - 1][j - 1])))
        elif aid in result.shape_subs:
            sign = result.shape_subs[aid]
            if i < j or (i == j and sign == 1):
                images.append(tgt.var(f"x[{aid}][{i}][{j}]"))
            elif i == j:
                images.append(tgt.zero())
            else:
                img = tgt.var(f"x[{aid}][{j}][{i}]")
                images.append(img if sign == 1 else -img)
        else:
            images.append(tgt.var(f"x[{aid}][{i}][{j}]"))
    return poly.map_vars(tgt, images)


# -- sampling the restricted group ------------------------------------------------

def cayley_orthogonal(d: int, field, rng, attempts: int = 200):
    """(I-S)^(-1)(I+S) for skew S; exactly orthogonal, retried on failure."""
    I = identity(d, field.one(), field.zero())
    for _ in range(attempts):
        s = random_matrix(d, d, field, rng)
        for i in range(d):
            s[i][i] = field.zero()
            for j in range(i + 1, d):
                s[j][i] = -s[i][j]
        try:
            g = mat_mul(mat_inv([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(I, s)], field),
                        [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(I, s)])
        except Exception:
            continue
        if mat_equal(mat_mul(transpose(g), g), I):
            return g
    raise RuntimeError("orthogonal Cayley sampling kept failing")


def cayley_symplectic(d: int, field, rng, attempts: int = 200):
    """Cayley transform of a random Hamiltonian matrix; exactly symplectic."""
    J = standard_skew_form(d, field)
    I = identity(d, field.one(), field.zero())
    for _ in range(attempts):
        sym = random_matrix(d, d, field, rng)
        for i in range(d):
            for j in range(i + 1, d):
                sym[j][i] = sym[i][j]
        ham = mat_mul(mat_neg(J), sym)   # J * ham is symmetric
        try:
            g = mat_mul(mat_inv([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(I, ham)], field),
                        [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(I, ham)])
        except Exception:
            continue
        if mat_equal(mat_mul(mat_mul(transpose(g), J), g), J):
            return g
    raise RuntimeError("symplectic Cayley sampling kept failing")


def random_restricted_element(spec: SupermixedSpec, field, rng) -> dict:
    if any(g == "O" for g in spec.factor_groups.values()) and field.char == 2:
        raise OddCharRequired("orthogonal factors need odd or zero characteristic")
    g = {}
    for key in spec.quiver.factor_keys():
        d = spec.t.size(key[1]) if key[0] == "v" else spec.t.size(spec.quiver.pairs[key[1]][0])
        kind = spec.group_of(key)
        if kind == "GL":
            g[key] = random_invertible(d, field, rng)
        elif kind == "O":
            g[key] = cayley_orthogonal(d, field, rng)
        else:
            g[key] = cayley_symplectic(d, field, rng)
    return g


# -- verification ------------------------------------------------------------------

@dataclass
class SupermixedReport:
    trials: int
    failures: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_substitutions(result: ReductionResult, field) -> list:
    """Exact form arithmetic of the substituted constants.

    For every added site the two constants must be mutually inverse and
    carry the right symmetry: skew-symmetric for Sp, symmetric for O.
    Violations are returned, not raised, so corrupted reductions show up
    as ordinary failures.
    """
    problems = []
    sites = {}
    for aid, (key, group, role) in result.site_of.items():
        sites.setdefault(key, {})[role] = (aid, result.constant_subs[aid])
    for key, parts in sorted(sites.items(), key=lambda kv: str(kv[0])):
        (b_id, B), (c_id, C) = parts["b"], parts["c"]
        group = result.site_of[b_id][1]
        d = len(B)
        Bf = [[field.from_int(x) for x in row] for row in B]
        Cf = [[field.from_int(x) for x in row] for row in C]
        I = identity(d, field.one(), field.zero())
        if not mat_equal(mat_mul(Bf, Cf), I):
            problems.append({"site": str(key), "check": f"X({b_id})*X({c_id}) == I"})
        want_sign = -1 if group == "Sp" else 1
        for aid, M in ((b_id, Bf), (c_id, Cf)):
            mt = transpose(M)
            target = mat_neg(mt) if want_sign == -1 else mt
            if not mat_equal(M, target):
                kind = "skew" if want_sign == -1 else "symmetric"
                problems.append({"site": str(key), "check": f"X({aid}) is {kind}"})
    return problems


def verify_supermixed(pushed, spec: SupermixedSpec, result: ReductionResult,
                      trials: int, field, rng,
                      reduced_ctx: ReducedContext | None = None) -> SupermixedReport:
    """Exact invariance of pushed polynomials under the restricted group.

    The report first records any substitution-consistency violations
    (see check_substitutions), then runs randomized invariance trials:
    points of S, group elements of G, exact equality of values.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    polys = pushed if isinstance(pushed, (list, tuple)) else [pushed]
    rctx = reduced_ctx or ReducedContext(spec, field)
    report = SupermixedReport(trials=trials)
    for problem in check_substitutions(result, field):
        report.failures.append({"kind": "substitution", **problem})
    for trial in range(trials):
        x = rctx.random_point(rng)
        g = random_restricted_element(spec, field, rng)
        y = act(x, g, spec.quiver, spec.t, field)
        if not rctx.shapes_hold(y):
            report.failures.append({"kind": "shape", "trial": trial})
            continue
        vx = rctx.point_values(x)
        vy = rctx.point_values(y)
        for i, p in enumerate(polys):
            if p.eval(vx) != p.eval(vy):
                report.failures.append({"kind": "invariance", "trial": trial,
                                        "poly": i})
    return report


def pushed_generators(result: ReductionResult, max_len: int,
                      max_j: int | None = None, field=QQ):
    """Push every word generator of the enlarged quiver down to S."""
    prime_ctx = CoordinateContext(result.qprime, result.tprime, field)
    reduced_ctx = ReducedContext(result.spec, field)
    out = []
    for w, j, inv in enumerate_generators(result.qprime, result.tprime,
                                          max_len, max_j, field, prime_ctx):
        p = push_invariant(inv, result, prime_ctx, reduced_ctx)
        if not p.is_zero():
            out.append((w, j, p))
    return out, prime_ctx, reduced_ctx


# -- a small Lie oracle for the restricted group -----------------------------------

def lie_basis(group: str, d: int, field):
    """Basis of the factor's Lie algebra as numeric matrices."""
    if group == "GL":
        return [elementary_matrix(d, k, l, field)
                for k in range(1, d + 1) for l in range(1, d + 1)]
    if group == "O":
        out = []
        for k in range(1, d + 1):
            for l in range(k + 1, d + 1):
                X = [[field.zero() for _ in range(d)] for _ in range(d)]
                X[k - 1][l - 1] = field.one()
                X[l - 1][k - 1] = -field.one()
                out.append(X)
        return out
    if group == "Sp":
        J = standard_skew_form(d, field)
        out = []
        for k in range(1, d + 1):
            for l in range(k, d + 1):
                S = [[field.zero() for _ in range(d)] for _ in range(d)]
                S[k - 1][l - 1] = field.one()
                S[l - 1][k - 1] = field.one()
                out.append(mat_mul(mat_neg(J), S))   # J * X symmetric
        return out
    raise ShapeMismatch(f"unknown group {group!r}")


def _identification_images(spec: SupermixedSpec, full_ctx: CoordinateContext,
                           rctx: "ReducedContext"):
    """Images of the full coordinates in the free ones of S."""
    images = []
    for (aid, i, j) in full_ctx.varmeta:
        sign = spec.shape_sign(aid)
        if sign is None or i < j:
            images.append(rctx.ring.var(f"x[{aid}][{i}][{j}]"))
        elif i == j:
            images.append(rctx.ring.var(f"x[{aid}][{i}][{j}]") if sign == 1
                          else rctx.ring.zero())
        else:
            img = rctx.ring.var(f"x[{aid}][{j}][{i}]")
            images.append(img if sign == 1 else -img)
    return images


def supermixed_invariant_dim(spec: SupermixedSpec, rbar: dict,
                             budget: int = 200000):
    """Nullspace dimension of the restricted Lie action on one multidegree.

    Characteristic zero only; sound for connected factors (GL, Sp).  An
    O factor is approximated by its connected component, so the value is
    an upper bound for the O-invariant dimension there.
    """
    full_ctx = CoordinateContext(spec.quiver, spec.t, QQ)
    rctx = ReducedContext(spec, QQ)
    images = _identification_images(spec, full_ctx, rctx)
    basis = rctx.ring.monomial_basis(rbar, budget=budget)
    lookup = {e: i for i, e in enumerate(basis)}
    stacked = []
    for key in spec.quiver.factor_keys():
        d = spec.t.size(key[1]) if key[0] == "v" else spec.t.size(spec.quiver.pairs[key[1]][0])
        for X in lie_basis(spec.group_of(key), d, QQ):
            full_images = derivation_images(full_ctx, key, X)
            der_images = []
            for (aid, i, j) in rctx.varmeta:
                full_img = full_images[full_ctx.var_index[(aid, i, j)]]
                der_images.append(full_img.map_vars(rctx.ring, images))
            der = Derivation(rctx.ring, der_images, label=(key, "restricted"))
            per_out = {}
            for col, exps in enumerate(basis):
                img = der.apply(Polynomial(rctx.ring, {exps: QQ.one()}))
                for e, cval in img.terms.items():
                    per_out.setdefault(lookup[e], [QQ.zero()] * len(basis))[col] = cval
            stacked.extend(per_out.values())
    kernel = nullspace(stacked, len(basis))
    polys = [Polynomial(rctx.ring, {basis[i]: v for i, v in enumerate(vec) if v})
             for vec in kernel]
    return len(kernel), polys, rctx


def pushed_span_dim(result: ReductionResult, rbar: dict, max_len: int,
                    max_j: int | None = None, budget: int = 200000):
    """Rank of the pushed generator products at one multidegree of S."""
    gens, prime_ctx, rctx = pushed_generators(result, max_len, max_j)
    graded = []
    for _, _, p in gens:
        if p.is_constant():
            continue
        mdeg = p.multidegree()
        if all(mdeg.get(a, 0) <= rbar.get(a, 0) for a in mdeg):
            graded.append((mdeg, p))
    basis = rctx.ring.monomial_basis(rbar, budget=budget)
    target = {a.id: rbar.get(a.id, 0) for a in result.spec.quiver.arrows}
    inc = IncrementalRank()

    def descend(i, remaining, acc):
        if all(v == 0 for v in remaining.values()):
            if not acc.is_zero():
                inc.add(acc.coefficient_vector(basis))
            return
        if i == len(graded):
            return
        mdeg, p = graded[i]
        descend(i + 1, remaining, acc)
        rem = dict(remaining)
        cur = acc
        while all(rem.get(a, 0) >= deg for a, deg in mdeg.items() if deg):
            for a, deg in mdeg.items():
                if deg:
                    rem[a] -= deg
            cur = cur * p
            descend(i + 1, rem, cur)
            rem = dict(rem)

    descend(0, target, rctx.ring.one())
    return inc.rank, rctx
