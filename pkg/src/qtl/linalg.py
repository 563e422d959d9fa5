"""Exact linear algebra over the rationals.

Rank and echelon forms run fraction-free (Bareiss) on integerized rows,
which keeps intermediate entries polynomially bounded; back substitution
for nullspaces switches to Fractions only on the small echelon result.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def integerize(row):
    """Scale a row of Fractions/ints to a primitive integer row."""
    lcm = 1
    for x in row:
        d = x.denominator if isinstance(x, Fraction) else 1
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(x * lcm) if isinstance(x, Fraction) else int(x) * lcm for x in row]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def bareiss_echelon(rows):
    """Fraction-free row echelon form of integer rows.

    Returns (echelon, pivot_cols); input is not modified.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    prev = 1
    rpiv = 0
    for col in range(ncols):
        if rpiv >= nrows:
            break
        sel = None
        for i in range(rpiv, nrows):
            if m[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        m[rpiv], m[sel] = m[sel], m[rpiv]
        p = m[rpiv][col]
        for i in range(rpiv + 1, nrows):
            mi = m[i]
            mc = mi[col]
            row_p = m[rpiv]
            for j in range(col, ncols):
                mi[j] = (p * mi[j] - mc * row_p[j]) // prev
        prev = p
        pivots.append(col)
        rpiv += 1
    return m[:rpiv], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(bareiss_echelon([integerize(r) for r in rows])[1])


def nullspace(rows, ncols: int):
    """Basis of the right nullspace of the matrix with the given rows.

    Rows may contain Fractions or ints.  One basis vector (Fractions)
    per free column, deterministic order.
    """
    if not rows:
        return [_unit(ncols, j) for j in range(ncols)]
    ech, pivots = bareiss_echelon([integerize(r) for r in rows])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            s = Fraction(0)
            for j in range(c + 1, ncols):
                if ech[i][j] and v[j]:
                    s += Fraction(ech[i][j]) * v[j]
            v[c] = -s / ech[i][c]
        basis.append(v)
    return basis


def _unit(n, j):
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v


class IncrementalRank:
    """Grow a row space one vector at a time, over Fractions."""

    def __init__(self):
        self.rows = []  # (pivot index, reduced row)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec):
        v = [Fraction(x) for x in vec]
        for piv, row in self.rows:
            if v[piv]:
                f = v[piv]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; True iff it enlarged the span."""
        v = self._reduce(vec)
        for piv, x in enumerate(v):
            if x:
                inv = 1 / x
                row = [a * inv for a in v]
                self.rows.append((piv, row))
                self.rows.sort(key=lambda t: t[0])
                return True
        return False
