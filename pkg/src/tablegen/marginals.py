"""Validated marginal and degree-sequence inputs.

Zero entries are legal in user input but carry no mass, so validation
strips them and keeps the index maps needed to re-inflate outputs to
the original shape.  All downstream code works on the stripped vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Empty, UnequalSums


def _strip_zeros(values, label):
    stripped = []
    positions = []
    for i, v in enumerate(values):
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{label} entries must be ints, got {v!r}")
        if v < 0:
            raise ValueError(f"{label} entries must be nonnegative, got {v}")
        if v > 0:
            stripped.append(v)
            positions.append(i)
    return tuple(stripped), tuple(positions)


@dataclass(frozen=True)
class Marginals:
    """Stripped row/column sums plus the maps back to the input shape."""

    rows: tuple
    cols: tuple
    row_positions: tuple
    col_positions: tuple
    shape: tuple  # original (n_rows, n_cols) before stripping

    @property
    def total(self) -> int:
        return sum(self.rows)

    @property
    def delta(self) -> int:
        return max(max(self.rows), max(self.cols))

    def inflate(self, matrix):
        """Embed a stripped matrix back into the original shape."""
        n_rows, n_cols = self.shape
        out = [[0] * n_cols for _ in range(n_rows)]
        for i, pos_i in enumerate(self.row_positions):
            row = matrix[i]
            for j, pos_j in enumerate(self.col_positions):
                out[pos_i][pos_j] = row[j]
        return out


def validate(rows, cols) -> Marginals:
    """Check and normalize a pair of marginal vectors.

    Raises UnequalSums when the two sides disagree on the total, and
    Empty when either side is empty or all mass is zero.
    """
    if len(rows) == 0 or len(cols) == 0:
        raise Empty("marginal vectors must be nonempty")
    r, rpos = _strip_zeros(rows, "row")
    c, cpos = _strip_zeros(cols, "column")
    if sum(r) != sum(c):
        raise UnequalSums(f"row sum {sum(r)} != column sum {sum(c)}")
    if not r:
        raise Empty("marginals carry no mass")
    return Marginals(r, c, rpos, cpos, (len(rows), len(cols)))


@dataclass(frozen=True)
class DegreeSequence:
    """Stripped degree vector for the one-sided (multigraph) problem."""

    degrees: tuple
    positions: tuple
    size: int  # original vertex count before stripping

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def delta(self) -> int:
        return max(self.degrees)


def validate_degrees(degrees) -> DegreeSequence:
    """Normalize a degree sequence; isolated vertices are stripped."""
    if len(degrees) == 0:
        raise Empty("degree sequence must be nonempty")
    d, pos = _strip_zeros(degrees, "degree")
    if not d:
        raise Empty("degree sequence carries no mass")
    return DegreeSequence(d, pos, len(degrees))


def falling_factorial(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1), the number of ordered k-subsets of n items."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def factorial_moments(degrees, delta: int) -> list:
    """moments[k] = sum over d of (d)_k for k = 0..delta.

    moments[1] is the total mass; moments[k] counts ordered k-stars by
    center, which is what the switching rates are stated in terms of.
    """
    moments = [0] * (delta + 1)
    for d in degrees:
        prod = 1
        for k in range(1, delta + 1):
            prod *= d - (k - 1)
            if prod <= 0:
                break
            moments[k] += prod
    moments[0] = len(degrees)
    return moments


def is_bigraphical(rows, cols) -> bool:
    """Gale-Ryser test: does a 0/1 matrix with these marginals exist?"""
    r = sorted((v for v in rows if v > 0), reverse=True)
    c = sorted((v for v in cols if v > 0), reverse=True)
    if sum(r) != sum(c):
        return False
    if not r:
        return True
    if r[0] > len(c) or (c and c[0] > len(r)):
        return False
    # prefix sums of r against column capacities min(c_j, k)
    prefix = 0
    for k in range(1, len(r) + 1):
        prefix += r[k - 1]
        cap = sum(min(cj, k) for cj in c)
        if prefix > cap:
            return False
    return True


def is_graphical(degrees) -> bool:
    """Erdos-Gallai test: does a simple graph with these degrees exist?"""
    d = sorted((v for v in degrees if v > 0), reverse=True)
    if not d:
        return True
    if sum(d) % 2 == 1:
        return False
    n = len(d)
    if d[0] > n - 1:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(di, k) for di in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def multigraph_feasible(degrees) -> bool:
    """Does any loopless multigraph realize the degrees?

    Needs an even total and no vertex demanding more than half of it:
    a vertex of degree d needs d edge endpoints on other vertices.
    """
    d = [v for v in degrees if v > 0]
    if not d:
        return True
    total = sum(d)
    return total % 2 == 0 and 2 * max(d) <= total
