"""Characteristic-zero ground truth for the invariant ring.

The acting group is a product of general linear factors, hence
connected, so a polynomial is invariant exactly when every infinitesimal
generator annihilates it.  One derivation per elementary matrix per
factor, restricted to a fixed multidegree, gives a finite exact linear
problem: the invariant subspace is a nullspace over QQ, and the span of
the generator products is a rank computation against the same monomial
basis.

The same module hosts the Young-superclass machinery for tuples of
matrices under simultaneous conjugation: the signed, layer-averaged sum
over a superclass is an integer combination of products of s_j along
primitive cycles, which is checked numerically (integrality plus span
membership).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import perms
from .engine import CoordinateContext, Invariant, enumerate_generators
from .errors import BudgetExceeded, UnsupportedCharacteristic
from .fields import QQ
from .linalg import IncrementalRank, nullspace, rank
from .matrices import char_poly_sigma, mat_mul, trace
from .poly import Polynomial, PolyRing
from .quiver import ArrowCase, MixedDimVector, MixedQuiver, classify_arrow


# -- derivations ---------------------------------------------------------------

class Derivation:
    """A K-linear derivation given by its images on the variables."""

    def __init__(self, ring: PolyRing, images: list, label=None, selfcheck_rng=None):
        if len(images) != ring.nvars:
            raise ValueError("need one image per variable")
        self.ring = ring
        self.images = images
        self.label = label
        if selfcheck_rng is not None:
            self._leibniz_selfcheck(selfcheck_rng)

    def apply(self, poly: Polynomial) -> Polynomial:
        if poly.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        out = self.ring.zero()
        field = self.ring.field
        for exps, coeff in poly.terms.items():
            for i, e in enumerate(exps):
                if not e:
                    continue
                img = self.images[i]
                if img.is_zero():
                    continue
                rest = list(exps)
                rest[i] -= 1
                mono = Polynomial(self.ring, {tuple(rest): coeff * field.from_int(e)})
                out = out + mono * img
        return out

    def _leibniz_selfcheck(self, rng, rounds: int = 3):
        for _ in range(rounds):
            m1 = self._random_monomial(rng)
            m2 = self._random_monomial(rng)
            lhs = self.apply(m1 * m2)
            rhs = self.apply(m1) * m2 + m1 * self.apply(m2)
            if lhs != rhs:
                raise RuntimeError("derivation violates the Leibniz rule")

    def _random_monomial(self, rng):
        exps = [0] * self.ring.nvars
        for _ in range(rng.randint(1, 2)):
            exps[rng.randrange(self.ring.nvars)] += 1
        return Polynomial(self.ring, {tuple(exps): self.ring.field.one()})


def derivation_images(ctx: CoordinateContext, key, X) -> list:
    """Variable images of the infinitesimal action of X at one factor.

    The arrow picks up -XY / X^T Y / -XY on its end side (cases 1/2/3)
    and +YX / +YX / -YX^T on its origin side; pair vertices share a
    factor, so loops and intra-pair arrows get both contributions.
    X is a numeric matrix over the context field.
    """
    quiver, t, ring = ctx.quiver, ctx.t, ctx.ring
    var = ring.var
    images = [ring.zero()] * ring.nvars

    def add(idx, coeff, name):
        if not ring.field.is_zero(coeff):
            images[idx] = images[idx] + ring.const(coeff) * var(name)

    for a in quiver.arrows:
        case = classify_arrow(quiver, t, a)
        rows, cols = ctx.arrow_shape(a.id)
        end_hit = quiver.factor_key(a.end) == key
        origin_hit = quiver.factor_key(a.origin) == key
        if not (end_hit or origin_hit):
            continue
        for u in range(1, rows + 1):
            for w in range(1, cols + 1):
                idx = ctx.var_index[(a.id, u, w)]
                if end_hit:
                    if case is ArrowCase.CASE1 or case is ArrowCase.CASE3:
                        for l in range(1, rows + 1):   # -(X Y)_uw
                            add(idx, -X[u - 1][l - 1], f"y[{a.id}][{l}][{w}]")
                    elif case is ArrowCase.CASE2:
                        for l in range(1, rows + 1):   # (X^T Y)_uw
                            add(idx, X[l - 1][u - 1], f"y[{a.id}][{l}][{w}]")
                if origin_hit:
                    if case is ArrowCase.CASE1 or case is ArrowCase.CASE2:
                        for l in range(1, cols + 1):   # (Y X)_uw
                            add(idx, X[l - 1][w - 1], f"y[{a.id}][{u}][{l}]")
                    elif case is ArrowCase.CASE3:
                        for l in range(1, cols + 1):   # -(Y X^T)_uw
                            add(idx, -X[w - 1][l - 1], f"y[{a.id}][{u}][{l}]")
    return images


def elementary_matrix(d: int, k: int, l: int, field):
    X = [[field.zero() for _ in range(d)] for _ in range(d)]
    X[k - 1][l - 1] = field.one()
    return X


def lie_derivations(quiver: MixedQuiver, t: MixedDimVector,
                    context: CoordinateContext | None = None,
                    selfcheck_rng=None) -> list:
    """Infinitesimal generators of the full group action, over QQ only.

    One derivation per elementary matrix E_kl per factor.
    """
    ctx = context or CoordinateContext(quiver, t, QQ)
    if ctx.field.char != 0:
        raise UnsupportedCharacteristic(
            "the derivation oracle needs characteristic zero")
    ops = []
    for key in quiver.factor_keys():
        d = t.size(key[1]) if key[0] == "v" else t.size(quiver.pairs[key[1]][0])
        for k in range(1, d + 1):
            for l in range(1, d + 1):
                X = elementary_matrix(d, k, l, ctx.field)
                ops.append(Derivation(ctx.ring, derivation_images(ctx, key, X),
                                      label=(key, k, l),
                                      selfcheck_rng=selfcheck_rng))
    return ops


@dataclass
class DerivationOperator:
    """Matrix of one derivation on the monomial basis of a multidegree."""

    label: tuple
    basis: list
    entries: dict  # (row, col) -> Fraction

    def rows(self):
        n = len(self.basis)
        index = {}
        for (r, c), v in self.entries.items():
            index.setdefault(r, [Fraction(0)] * n)[c] = v
        return list(index.values())


def derivation_operators(quiver: MixedQuiver, t: MixedDimVector, rbar: dict,
                         context: CoordinateContext | None = None,
                         budget: int = 200000) -> tuple:
    """Restrict every Lie derivation to the multidegree component.

    Returns (basis monomials, list of DerivationOperator).
    """
    ctx = context or CoordinateContext(quiver, t, QQ)
    basis = ctx.ring.monomial_basis(rbar, budget=budget)
    lookup = {e: i for i, e in enumerate(basis)}
    ops = []
    for der in lie_derivations(quiver, t, ctx):
        entries = {}
        for col, exps in enumerate(basis):
            mono = Polynomial(ctx.ring, {exps: ctx.ring.field.one()})
            img = der.apply(mono)
            for e, cval in img.terms.items():
                entries[(lookup[e], col)] = cval
        ops.append(DerivationOperator(der.label, basis, entries))
    return basis, ops


def invariant_dim(quiver: MixedQuiver, t: MixedDimVector, rbar: dict,
                  context: CoordinateContext | None = None,
                  budget: int = 200000):
    """Exact dimension and basis of the invariants of one multidegree."""
    ctx = context or CoordinateContext(quiver, t, QQ)
    basis, ops = derivation_operators(quiver, t, rbar, ctx, budget)
    stacked = []
    for op in ops:
        stacked.extend(op.rows())
    kernel = nullspace(stacked, len(basis))
    polys = []
    for vec in kernel:
        terms = {basis[i]: v for i, v in enumerate(vec) if v}
        polys.append(Polynomial(ctx.ring, terms))
    return len(kernel), polys


# -- spanning checks ------------------------------------------------------------

@dataclass
class SpanReport:
    multidegree: dict
    oracle_dim: int
    span_dim: int
    word_len_bound: int
    witness: list
    raised_bound: int | None = None
    raised_span_dim: int | None = None

    @property
    def passed(self) -> bool:
        return self.span_dim == self.oracle_dim

    @property
    def deficit_persists(self) -> bool | None:
        """On a deficit: did raising the word-length bound leave it in place?"""
        if self.passed or self.raised_bound is None:
            return None
        return self.raised_span_dim < self.oracle_dim

    def to_dict(self) -> dict:
        return {
            "multidegree": dict(sorted(self.multidegree.items())),
            "oracle_dim": self.oracle_dim,
            "span_dim": self.span_dim,
            "pass": self.passed,
            "word_len_bound": self.word_len_bound,
            "witness_monomials": list(self.witness),
            "raised_bound": self.raised_bound,
            "raised_span_dim": self.raised_span_dim,
        }


def _generator_products(quiver, t, rbar, max_word_len, max_j, ctx, budget):
    """All products of word generators with multidegree exactly rbar."""
    gens = []
    for w, j, inv in enumerate_generators(quiver, t, max_word_len, max_j,
                                          QQ, ctx):
        if inv.poly.is_constant():
            continue
        mdeg = inv.poly.multidegree()
        if all(mdeg.get(a, 0) <= rbar.get(a, 0) for a in mdeg):
            gens.append((mdeg, inv.poly))
    target = {a.id: rbar.get(a.id, 0) for a in quiver.arrows}
    products = []

    def descend(i, remaining, acc):
        if all(v == 0 for v in remaining.values()):
            products.append(acc)
            if len(products) > budget:
                raise BudgetExceeded("too many generator products")
            return
        if i == len(gens):
            return
        mdeg, poly = gens[i]
        # try every multiplicity of generator i, including zero
        descend(i + 1, remaining, acc)
        rem = dict(remaining)
        cur = acc
        while all(rem.get(a, 0) >= deg for a, deg in mdeg.items() if deg):
            for a, deg in mdeg.items():
                if deg:
                    rem[a] -= deg
            cur = cur * poly
            descend(i + 1, rem, cur)
            rem = dict(rem)

    descend(0, target, ctx.ring.one())
    return products


def span_check(quiver: MixedQuiver, t: MixedDimVector, rbar: dict,
               max_word_len: int | None = None, max_j: int | None = None,
               context: CoordinateContext | None = None,
               budget: int = 200000,
               probe_raised_bound: bool = True) -> SpanReport:
    """Compare the generator-product span with the invariant dimension.

    The word length bound defaults to the total degree of the
    multidegree.  On a deficit, the check is repeated once with the
    bound raised by two so the report can distinguish a bound artifact
    from a genuine gap.
    """
    ctx = context or CoordinateContext(quiver, t, QQ)
    total = sum(rbar.values())
    bound = max_word_len if max_word_len is not None else max(total, 1)
    oracle_n, oracle_basis = invariant_dim(quiver, t, rbar, ctx, budget)
    basis = ctx.ring.monomial_basis(rbar, budget=budget)

    def span_rows(b):
        prods = _generator_products(quiver, t, rbar, b, max_j, ctx, budget)
        return [p.coefficient_vector(basis) for p in prods if not p.is_zero()]

    rows = span_rows(bound)
    span_dim = rank(rows)

    oracle_rows = [p.coefficient_vector(basis) for p in oracle_basis]
    if rank(oracle_rows + rows) != oracle_n:
        raise RuntimeError("a generator product escaped the invariant space")

    witness = []
    raised_bound = None
    raised_span_dim = None
    if span_dim < oracle_n:
        inc = IncrementalRank()
        for r_ in rows:
            inc.add(r_)
        for vec, poly in zip(oracle_rows, oracle_basis):
            if inc.add(vec):
                witness.append(poly.leading_monomial())
        if probe_raised_bound:
            raised_bound = bound + 2
            raised_span_dim = rank(span_rows(raised_bound))
    return SpanReport(dict(rbar), oracle_n, span_dim, bound, witness,
                      raised_bound=raised_bound, raised_span_dim=raised_span_dim)


# -- Young superclasses -----------------------------------------------------------

@dataclass(frozen=True)
class YoungLayers:
    """An ordered set partition of [1, r]; block l feeds matrix l."""

    blocks: tuple  # tuple of frozensets

    @staticmethod
    def from_blocks(blocks) -> "YoungLayers":
        blocks = tuple(frozenset(b) for b in blocks)
        seen = set()
        for b in blocks:
            if not b or (seen & b):
                raise ValueError("layers must be disjoint and nonempty")
            seen |= b
        if seen != set(range(1, len(seen) + 1)):
            raise ValueError("layers must cover an initial interval [1, r]")
        return YoungLayers(blocks)

    @property
    def r(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def g(self, symbol: int) -> int:
        for l, b in enumerate(self.blocks, start=1):
            if symbol in b:
                return l
        raise KeyError(symbol)

    def order(self) -> int:
        n = 1
        for b in self.blocks:
            n *= factorial(len(b))
        return n


def _primitive_root(wordseq: tuple) -> tuple:
    n = len(wordseq)
    for length in range(1, n + 1):
        if n % length:
            continue
        if wordseq == wordseq[:length] * (n // length):
            return wordseq[:length]
    return wordseq


def _canonical_cycle(wordseq: tuple) -> tuple:
    return min(wordseq[i:] + wordseq[:i] for i in range(len(wordseq)))


def _cycle_from(sigma: tuple, start: int) -> tuple:
    cyc = [start]
    nxt = sigma[start - 1]
    while nxt != start:
        cyc.append(nxt)
        nxt = sigma[nxt - 1]
    return tuple(cyc)


def _merge_legal(sigma: tuple, layers: YoungLayers, a: int, c: int) -> bool:
    """May (a c) merge the two sigma-cycles through a and c?

    Both cycles, written from a and from c, must read as powers of one
    and the same primitive layer word.
    """
    ca = _cycle_from(sigma, a)
    cc = _cycle_from(sigma, c)
    wa = tuple(layers.g(x) for x in ca)
    wc = tuple(layers.g(x) for x in cc)
    pa = _primitive_root(wa)
    pc = _primitive_root(wc)
    return pa == pc


def young_superclass(sigma: tuple, layers: YoungLayers,
                     budget: int = 100000) -> set:
    """BFS closure under layer conjugation and primitive-power split/merge."""
    r = layers.r
    if len(sigma) != r:
        raise ValueError(f"permutation degree {len(sigma)} != layer span {r}")
    conj_gens = []
    for b in layers.blocks:
        items = sorted(b)
        for i in range(len(items) - 1):
            conj_gens.append(perms.transposition(items[i], items[i + 1], r))
    seen = {sigma}
    frontier = [sigma]
    while frontier:
        cur = frontier.pop()
        nxt = []
        for x in conj_gens:
            nxt.append(perms.compose(perms.compose(x, cur), perms.inverse(x)))
        for a in range(1, r + 1):
            for c in range(a + 1, r + 1):
                same = c in _cycle_from(cur, a)
                cand = perms.compose(perms.transposition(a, c, r), cur)
                probe = cand if same else cur
                if _merge_legal(probe, layers, a, c):
                    nxt.append(cand)
        for y in nxt:
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded("Young superclass exceeded the budget")
                frontier.append(y)
    return seen


def matrix_tuple_ring(m: int, d: int, field=QQ) -> PolyRing:
    names, groups = [], []
    for l in range(1, m + 1):
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                names.append(f"u[{l}][{i}][{j}]")
                groups.append(str(l))
    return PolyRing(field, names, groups)


def generic_matrix_tuple(ring: PolyRing, m: int, d: int):
    return {l: [[ring.var(f"u[{l}][{i}][{j}]") for j in range(1, d + 1)]
                for i in range(1, d + 1)]
            for l in range(1, m + 1)}


def trace_of_perm(x: tuple, layers: YoungLayers, mats: dict, ring: PolyRing):
    """tr(x, g): product over cycles of x^{-1} of traces of layer words."""
    out = ring.one()
    for cyc in perms.cycles(perms.inverse(x)):
        prod = None
        for sym in cyc:
            m = mats[layers.g(sym)]
            prod = m if prod is None else mat_mul(prod, m)
        out = out * trace(prod)
    return out


def primitive_cycles(D: set, layers: YoungLayers) -> list:
    """Primitive layer words appearing in the trace records of a superclass."""
    prims = set()
    for x in D:
        for cyc in perms.cycles(perms.inverse(x)):
            w = tuple(layers.g(s) for s in cyc)
            prims.add(_canonical_cycle(_primitive_root(w)))
    return sorted(prims)


def young_superclass_sum(sigma: tuple, layers: YoungLayers, d: int,
                         field=QQ, budget: int = 100000):
    """The layer-averaged signed trace sum over one Young superclass.

    Returns (polynomial, membership) where membership reports whether
    the sum lies in the span of products of s_j along the superclass's
    primitive cycles, at the same multidegree.  The division by the
    layer-group order must be exact over the integers; a failure raises.
    """
    if field.char != 0:
        raise UnsupportedCharacteristic("superclass sums need characteristic zero")
    D = young_superclass(sigma, layers, budget)
    m = layers.m
    ring = matrix_tuple_ring(m, d, field)
    mats = generic_matrix_tuple(ring, m, d)
    total = ring.zero()
    for x in sorted(D):
        term = trace_of_perm(x, layers, mats, ring)
        total = total + (term if perms.sign(x) == 1 else -term)
    order = layers.order()
    divided = {}
    for exps, c in total.terms.items():
        q = c / order
        if q.denominator != 1:
            raise RuntimeError(
                f"superclass sum not divisible by |S_g| = {order}")
        divided[exps] = q
    summed = Polynomial(ring, divided)

    member = _sigma_membership(summed, D, layers, d, ring, mats, budget)
    return summed, member


def _sigma_membership(poly, D, layers, d, ring, mats, budget):
    if poly.is_zero():
        return True
    target = poly.multidegree()
    prims = primitive_cycles(D, layers)
    gens = []
    for p in prims:
        prod = None
        for sym in p:
            mm = mats[sym]
            prod = mm if prod is None else mat_mul(prod, mm)
        sigmas = char_poly_sigma(prod)
        for j, sj in enumerate(sigmas, start=1):
            if sj.is_zero():
                continue
            mdeg = sj.multidegree()
            if all(mdeg.get(g, 0) <= target.get(g, 0) for g in mdeg):
                gens.append((mdeg, sj))
    basis = ring.monomial_basis(target, budget=budget)
    inc = IncrementalRank()

    found = []

    def descend(i, remaining, acc):
        if all(v == 0 for v in remaining.values()):
            found.append(acc)
            return
        if i == len(gens):
            return
        mdeg, g = gens[i]
        descend(i + 1, remaining, acc)
        rem = dict(remaining)
        cur = acc
        while all(rem.get(a, 0) >= deg for a, deg in mdeg.items() if deg):
            for a, deg in mdeg.items():
                if deg:
                    rem[a] -= deg
            cur = cur * g
            descend(i + 1, rem, cur)
            rem = dict(rem)

    descend(0, dict(target), ring.one())
    for prod in found:
        if not prod.is_zero():
            inc.add(prod.coefficient_vector(basis))
    return inc.contains(poly.coefficient_vector(basis))
