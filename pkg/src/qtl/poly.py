"""Sparse multivariate polynomials over an exact field.

A ``PolyRing`` fixes the coefficient field and an ordered tuple of
variable names (each optionally tagged with a *group*, here the arrow id
it belongs to).  A ``Polynomial`` maps exponent tuples to nonzero field
elements.  Terms are kept normalized: no zero coefficients are stored,
and printing uses a fixed graded-lexicographic order so output is
deterministic.

Integers mix freely with polynomials and scalars; anything else must
come from the same ring or field, otherwise ``FieldMismatch`` is raised.
"""

from __future__ import annotations

from itertools import product as _cartesian

from .errors import BudgetExceeded, FieldMismatch


class PolyRing:
    """Polynomial ring K[v_1, ..., v_n] with named, group-tagged variables."""

    def __init__(self, field, var_names, var_groups=None):
        self.field = field
        self.var_names = tuple(var_names)
        if len(set(self.var_names)) != len(self.var_names):
            raise ValueError("duplicate variable names")
        self.var_groups = tuple(var_groups) if var_groups is not None else ("",) * len(self.var_names)
        if len(self.var_groups) != len(self.var_names):
            raise ValueError("var_groups must match var_names")
        self.index = {name: i for i, name in enumerate(self.var_names)}
        self.nvars = len(self.var_names)
        self._zero_exp = (0,) * self.nvars

    # -- element constructors -------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_exp: self.field.one()})

    def const(self, c) -> "Polynomial":
        c = self.field.element(c) if isinstance(c, int) else c
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {self._zero_exp: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field.one()})

    def gens(self):
        return [self.var(name) for name in self.var_names]

    # -- structure ------------------------------------------------------------

    def group_of(self, i: int) -> str:
        return self.var_groups[i]

    def group_indices(self, group: str):
        return [i for i, g in enumerate(self.var_groups) if g == group]

    def groups(self):
        seen = []
        for g in self.var_groups:
            if g not in seen:
                seen.append(g)
        return seen

    def multidegree(self, exps: tuple) -> dict:
        """Total degree per variable group of one exponent tuple."""
        out = {g: 0 for g in self.groups()}
        for i, e in enumerate(exps):
            if e:
                out[self.var_groups[i]] += e
        return out

    def monomial_basis(self, multidegree: dict, budget: int | None = None):
        """All exponent tuples with the given degree in each group.

        Groups absent from ``multidegree`` get degree 0.  The basis is
        returned in a deterministic order.  ``budget`` caps the count.
        """
        groups = self.groups()
        per_group = []
        size = 1
        for g in groups:
            idxs = self.group_indices(g)
            deg = multidegree.get(g, 0)
            combos = list(_compositions(deg, len(idxs)))
            per_group.append((idxs, combos))
            size *= len(combos)
            if budget is not None and size > budget:
                raise BudgetExceeded(
                    f"monomial basis needs more than {budget} monomials")
        basis = []
        for pick in _cartesian(*(combos for _, combos in per_group)):
            exp = [0] * self.nvars
            for (idxs, _), combo in zip(per_group, pick):
                for i, e in zip(idxs, combo):
                    exp[i] = e
            basis.append(tuple(exp))
        return basis

    def __eq__(self, other):
        return (isinstance(other, PolyRing)
                and self.field == other.field
                and self.var_names == other.var_names
                and self.var_groups == other.var_groups)

    def __hash__(self):
        return hash((self.field, self.var_names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.nvars} vars)"


def _compositions(total: int, parts: int):
    """Weak compositions of `total` into `parts` slots, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _term_key(exps: tuple):
    # graded lex: compare by total degree first, then the exponent tuple
    return (sum(exps), exps)


class Polynomial:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- ring compatibility ----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise FieldMismatch("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        try:
            return self.ring.const(self.ring.field.element(other))
        except FieldMismatch:
            return None

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        field = self.ring.field
        out = dict(self.terms)
        for exps, c in o.terms.items():
            acc = out.get(exps)
            s = c if acc is None else acc + c
            if field.is_zero(s):
                out.pop(exps, None)
            else:
                out[exps] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        field = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                c = c1 * c2
                if field.is_zero(c):
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                acc = out.get(e)
                s = c if acc is None else acc + c
                if field.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.ring.var_names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero()
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def multidegree(self) -> dict:
        """Degree per variable group; raises if the terms disagree."""
        it = iter(self.terms)
        try:
            first = self.ring.multidegree(next(it))
        except StopIteration:
            return {g: 0 for g in self.ring.groups()}
        for exps in it:
            if self.ring.multidegree(exps) != first:
                raise ValueError("polynomial is not multihomogeneous")
        return first

    def leading_monomial(self) -> str:
        if not self.terms:
            return "0"
        exps = max(self.terms, key=_term_key)
        return _format_monomial(self.ring, exps)

    def coefficient_vector(self, basis):
        """Coefficients on a monomial basis; raises if a term is missing."""
        lookup = {e: i for i, e in enumerate(basis)}
        vec = [self.ring.field.zero()] * len(basis)
        for e, c in self.terms.items():
            if e not in lookup:
                raise ValueError("term outside the given monomial basis")
            vec[lookup[e]] = c
        return vec

    # -- evaluation and substitution --------------------------------------------

    def eval(self, values):
        """Evaluate at a full vector of field values (one per variable)."""
        if len(values) != self.ring.nvars:
            raise ValueError("value vector length mismatch")
        field = self.ring.field
        acc = field.zero()
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * values[i] ** e
            acc = acc + term
        return acc

    def map_vars(self, target: PolyRing, images):
        """Ring map sending variable i to images[i] (a target polynomial).

        Entries of ``images`` may be Polynomials over ``target``, field
        elements, or ints.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        imgs = []
        for im in images:
            if isinstance(im, Polynomial):
                if im.ring != target:
                    raise FieldMismatch("image outside the target ring")
                imgs.append(im)
            else:
                imgs.append(target.const(target.field.element(im) if isinstance(im, int) else im))
        out = target.zero()
        for exps, c in self.terms.items():
            term = target.const(target.field.element(c) if target.field != self.ring.field else c)
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * imgs[i]
            out = out + term
        return out

    # -- printing ----------------------------------------------------------------

    def __repr__(self):
        return self.render()

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=_term_key, reverse=True):
            c = self.terms[exps]
            mono = _format_monomial(self.ring, exps)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def _format_monomial(ring: PolyRing, exps: tuple) -> str:
    factors = []
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(ring.var_names[i])
        elif e > 1:
            factors.append(f"{ring.var_names[i]}^{e}")
    return "*".join(factors) if factors else "1"


def poly_equal(p: Polynomial, q: Polynomial) -> bool:
    """Exact structural equality; FieldMismatch on incompatible rings."""
    if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
        raise TypeError("poly_equal expects two polynomials")
    if p.ring != q.ring:
        raise FieldMismatch("polynomials live in different rings")
    return p.terms == q.terms
