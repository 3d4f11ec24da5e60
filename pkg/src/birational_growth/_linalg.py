"""Exact linear algebra over any of the coefficient fields."""
from ._poly import UPoly


def rref(rows, ncols, field):
    """
    Reduced row echelon form.

    Parameters
    ----------
    rows : list of list
        Matrix rows of field elements (copied, not modified).
    ncols : int
    field : NumberField or PrimeField

    Returns
    -------
    reduced : list of list
        The nonzero rows of the reduced matrix.
    pivots : list of int
        Pivot column of each returned row.
    """
    matrix = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(matrix)) if matrix[i][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = 1 / matrix[rank][col]
        matrix[rank] = [v * inv for v in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[1])


def nullspace(rows, ncols, field):
    """Basis of ``{v : M v = 0}``; each vector has a one in its free coordinate."""
    reduced, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vector = [field.zero] * ncols
        vector[f] = field.one
        for row, p in zip(reduced, pivots):
            vector[p] = -row[f]
        basis.append(vector)
    return basis


def solve(matrix, rhs, field):
    """Unique solution of ``matrix x = rhs``, or None when singular or inconsistent."""
    n = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented, n + 1, field)
    if n in pivots or len(pivots) < n:
        return None
    return [row[n] for row in reduced[:n]]


def mat_vec(matrix, vector, field):
    out = []
    for row in matrix:
        acc = field.zero
        for a, b in zip(row, vector):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def charpoly(matrix, field):
    """
    Characteristic polynomial ``det(x I - M)`` by reduction to Hessenberg form.

    Works over any field; cost is cubic in the dimension.
    """
    n = len(matrix)
    h = [list(row) for row in matrix]
    for m in range(1, n - 1):
        pivot = next((i for i in range(m, n) if h[i][m - 1]), None)
        if pivot is None:
            continue
        if pivot != m:
            h[pivot], h[m] = h[m], h[pivot]
            for row in h:
                row[pivot], row[m] = row[m], row[pivot]
        t = h[m][m - 1]
        for i in range(m + 1, n):
            if not h[i][m - 1]:
                continue
            u = h[i][m - 1] / t
            h[i] = [a - u * b for a, b in zip(h[i], h[m])]
            for row in h:
                row[m] = row[m] + u * row[i]
    x = UPoly.x(field)
    polys = [UPoly(field, [field.one])]
    for m in range(1, n + 1):
        p = (x - h[m - 1][m - 1]) * polys[m - 1]
        t = field.one
        for i in range(1, m):
            t = t * h[m - i][m - i - 1]
            p = p - polys[m - i - 1] * (t * h[m - i - 1][m - 1])
        polys.append(p)
    return polys[n]


def span_contains(basis, vector, field):
    """Whether ``vector`` lies in the span of ``basis`` (all of one length)."""
    if not basis:
        return not any(vector)
    ncols = len(vector)
    return rank(basis + [vector], ncols, field) == rank(basis, ncols, field)
