"""Matrix helpers over exact scalars or polynomials.

Matrices are plain lists of lists.  The entries only need ``+ - *`` (and
int literals 0/1 lift into every ring used here), so the same routines
serve numeric matrices over QQ/GF(p) and symbolic matrices of
polynomials.  Inversion additionally needs division, so it takes the
field explicitly.

``char_poly_sigma`` implements the Berkowitz division-free algorithm,
hence works verbatim over GF(2) and polynomial rings.  Sign convention:

    det(t*I - M) = t^d - s_1 t^(d-1) + s_2 t^(d-2) - ... + (-1)^d s_d

so s_1 is the trace and s_d the determinant.
"""

from __future__ import annotations

from .errors import NotSquare, ShapeMismatch, Singular


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat_mul(a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = a[i][0] * b[0][j]
            for k in range(1, ca):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(a, b):
    if shape(a) != shape(b):
        raise ShapeMismatch("matrix addition needs equal shapes")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    if shape(a) != shape(b):
        raise ShapeMismatch("matrix subtraction needs equal shapes")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def transpose(a):
    r, c = shape(a)
    return [[a[i][j] for i in range(r)] for j in range(c)]


def trace(a):
    r, c = shape(a)
    if r != c:
        raise NotSquare(f"trace of a {r}x{c} matrix")
    acc = a[0][0]
    for i in range(1, r):
        acc = acc + a[i][i]
    return acc


def identity(n: int, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_equal(a, b) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def char_poly_sigma(m):
    """[s_1, ..., s_d] for a square matrix, computed division-free.

    Berkowitz recursion on the leading principal split: if
    M = [[a, R], [C, B]] then the coefficient vector of M is T times the
    coefficient vector of B, with T lower-triangular Toeplitz built from
    a, R*C, R*B*C, R*B^2*C, ...
    """
    r, c = shape(m)
    if r != c:
        raise NotSquare(f"char poly of a {r}x{c} matrix")
    # coefficient vectors (c_0=1, c_1, ..., c_k) of det(tI - leading block)
    coeffs = [1, -m[r - 1][r - 1]]
    for k in range(r - 2, -1, -1):
        a = m[k][k]
        row = [m[k][j] for j in range(k + 1, r)]
        col = [m[i][k] for i in range(k + 1, r)]
        block = [[m[i][j] for j in range(k + 1, r)] for i in range(k + 1, r)]
        n = r - k - 1
        # first column of the Toeplitz matrix: 1, -a, -R C, -R B C, ...
        t_col = [1, -a]
        vec = col
        for _ in range(n - 1):
            t_col.append(-_dot(row, vec))
            vec = _mat_vec(block, vec)
        t_col.append(-_dot(row, vec))
        new = []
        for i in range(n + 2):
            acc = 0
            for j in range(n + 1):
                ti = i - j
                if 0 <= ti < len(t_col):
                    acc = acc + t_col[ti] * coeffs[j]
            new.append(acc)
        coeffs = new
    # det(tI - M) = sum coeffs[j] t^(d-j); s_j = (-1)^j coeffs[j]
    out = []
    for j in range(1, r + 1):
        cj = coeffs[j]
        out.append(-cj if j % 2 else cj)
    return out


def _dot(u, v):
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def _mat_vec(m, v):
    return [_dot(row, v) for row in m]


def det(m):
    r, c = shape(m)
    if r != c:
        raise NotSquare("determinant of a non-square matrix")
    if r == 0:
        return 1
    return char_poly_sigma(m)[-1]


def mat_inv(m, field):
    """Inverse over a field by Gauss-Jordan; raises Singular."""
    r, c = shape(m)
    if r != c:
        raise NotSquare("inverse of a non-square matrix")
    aug = [list(row) + [field.one() if i == j else field.zero() for j in range(r)]
           for i, row in enumerate(m)]
    for col in range(r):
        piv = None
        for i in range(col, r):
            if not field.is_zero(aug[i][col]):
                piv = i
                break
        if piv is None:
            raise Singular("matrix is not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = field.one() / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for i in range(r):
            if i == col:
                continue
            f = aug[i][col]
            if field.is_zero(f):
                continue
            aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[r:] for row in aug]


def is_invertible(m, field) -> bool:
    try:
        mat_inv(m, field)
        return True
    except Singular:
        return False


def random_matrix(rows: int, cols: int, field, rng):
    return [[field.random(rng) for _ in range(cols)] for _ in range(rows)]


def random_invertible(n: int, field, rng, attempts: int = 200):
    for _ in range(attempts):
        m = random_matrix(n, n, field, rng)
        if is_invertible(m, field):
            return m
    raise Singular(f"no invertible {n}x{n} matrix found in {attempts} draws")
