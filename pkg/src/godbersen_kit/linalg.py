"""Small dense linear algebra over either arithmetic mode.

Everything here works on plain tuples/lists of scalars and is generic over
exact rationals and floats; float callers pass a nonzero pivot tolerance.
Sizes are tiny (d <= 7), so the routines favour clarity over asymptotics.
"""

from __future__ import annotations

from .errors import DegenerateInput
from .scalars import rational


def dot(u, v):
    acc = u[0] * v[0]
    for i in range(1, len(u)):
        acc += u[i] * v[i]
    return acc


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vscale(u, s):
    return tuple(a * s for a in u)


def det(matrix, eps=0):
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign_flips = 0
    for col in range(n):
        pivot_row = None
        best = eps
        for r in range(col, n):
            mag = abs(m[r][col])
            if mag > best:
                best = mag
                pivot_row = r
                if eps == 0:
                    break  # exact mode: first nonzero pivot is fine
        if pivot_row is None:
            return 0 * m[0][0]
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign_flips ^= 1
        pivot = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] / pivot
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    result = m[0][0]
    for i in range(1, n):
        result = result * m[i][i]
    return -result if sign_flips else result


def solve(matrix, rhs, eps=0):
    """Solve a square system; raises DegenerateInput on (near-)singularity."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = None
        best = eps
        for r in range(col, n):
            mag = abs(aug[r][col])
            if mag > best:
                best = mag
                pivot_row = r
                if eps == 0:
                    break
        if pivot_row is None:
            raise DegenerateInput("singular linear system")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for r in range(n):
            if r == col or aug[r][col] == 0:
                continue
            factor = aug[r][col] / pivot
            for c in range(col, n + 1):
                aug[r][c] = aug[r][c] - factor * aug[col][c]
    return tuple(aug[i][n] / aug[i][i] for i in range(n))


def inverse(matrix, eps=0):
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(solve(matrix, e, eps))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_vec(matrix, v):
    return tuple(dot(row, v) for row in matrix)


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


class RankTracker:
    """Incremental rank of a growing set of vectors (Gaussian elimination)."""

    def __init__(self, dim, eps=0):
        self.dim = dim
        self.eps = eps
        self.rows = []  # reduced, each with a leading pivot column
        self.pivot_cols = []

    @property
    def rank(self):
        return len(self.rows)

    def would_grow(self, vector):
        return self._reduce(vector) is not None

    def add(self, vector):
        """Add a vector; True if it increased the rank."""
        reduced = self._reduce(vector)
        if reduced is None:
            return False
        row, pivot_col = reduced
        self.rows.append(row)
        self.pivot_cols.append(pivot_col)
        return True

    def _reduce(self, vector):
        v = list(vector)
        for row, pc in zip(self.rows, self.pivot_cols):
            if v[pc] != 0:
                factor = v[pc] / row[pc]
                for c in range(self.dim):
                    v[c] = v[c] - factor * row[c]
        pivot_col = None
        best = self.eps
        for c in range(self.dim):
            if abs(v[c]) > best:
                pivot_col = c
                best = abs(v[c])
                if self.eps == 0:
                    break
        if pivot_col is None:
            return None
        return v, pivot_col


def matrix_rank(vectors, dim, eps=0):
    tracker = RankTracker(dim, eps)
    for v in vectors:
        tracker.add(v)
    return tracker.rank


def hyperplane_through(points, eps=0):
    """Normal and offset of the hyperplane spanned by d affinely independent
    points in R^d, via cofactor expansion of the edge matrix.

    Returns (normal, offset) with <p, normal> = offset for each input point.
    Raises DegenerateInput when the points do not span a hyperplane.
    """
    d = len(points[0])
    base = points[0]
    edges = [vsub(p, base) for p in points[1:]]  # (d-1) x d
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in edges]
        cof = det(minor, eps)
        normal.append(cof if j % 2 == 0 else -cof)
    if all(abs(c) <= eps for c in normal):
        raise DegenerateInput("points do not span a hyperplane")
    normal = tuple(normal)
    return normal, dot(normal, base)


def binomial(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def exact_binomial(n, k):
    return rational(binomial(n, k))
