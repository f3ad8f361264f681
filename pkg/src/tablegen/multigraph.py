"""Mutable multigraph state for the switching chain.

Two variants share one design: a bipartite multigraph whose cells are
matrix entries, and a loopless multigraph on one vertex set.  Both keep

  * cells: a dict from cell id to multiplicity >= 1,
  * per-vertex point lists: neighbor ids with repetition, so a vertex of
    degree d always holds exactly d entries and ordered distinct-point
    selections realize falling-factorial star counts,
  * running multiplicity counters per value >= 2 (the stratum), the
    total weight S = sum of value * count, and the simple cell count.

A switching replaces one end of two stars by a single high-multiplicity
cell.  The anchor records the star centers u1, v1 and the leaf pairs;
validate_anchor checks the structural side conditions on the current
graph, apply_switching mutates, and reverse_factors counts, on the
mutated graph, how many anchored ways each prefix of the inverse
switching could have been chosen.  Those counts are what the acceptance
probabilities are stated in terms of.

audit() recomputes every derived field from the cells and raises
InvariantViolation on any disagreement; tests call it after every
mutation pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation


@dataclass(frozen=True)
class Anchor:
    """An s-switching site: two star centers and s leaf pairs.

    In the bipartite case u1 is a row, v1 is a column, the us are
    columns (leaves of u1's star) and the vs are rows (leaves of v1's).
    In the one-sided case all entries are plain vertices.
    """

    s: int
    u1: int
    v1: int
    us: tuple
    vs: tuple


class _StratumMixin:
    """Shared multiplicity bookkeeping; subclasses own the cells."""

    def _init_strata(self, delta):
        self.delta = delta
        self.mult_counts = [0] * (delta + 1)  # index by multiplicity, 0/1 unused
        self.weight = 0  # sum of multiplicity * count over cells >= 2
        self.simple_count = 0

    def _cell_created(self, value):
        if value == 1:
            self.simple_count += 1
        else:
            self.mult_counts[value] += 1
            self.weight += value

    def _cell_removed(self, value):
        if value == 1:
            self.simple_count -= 1
        else:
            self.mult_counts[value] -= 1
            self.weight -= value

    @property
    def profile(self):
        """Multiplicity counts for values 2..delta, the stratum key."""
        return tuple(self.mult_counts[2:])

    @property
    def level(self):
        """Smallest multiplicity present, or None if simple."""
        for s in range(2, self.delta + 1):
            if self.mult_counts[s]:
                return s
        return None


class BipartiteMultigraph(_StratumMixin):
    """Bipartite multigraph, i.e. a nonnegative integer matrix."""

    def __init__(self, row_degrees, col_degrees):
        self.row_degrees = tuple(row_degrees)
        self.col_degrees = tuple(col_degrees)
        self._init_strata(max(max(self.row_degrees), max(self.col_degrees)))
        self.cells = {}
        self.row_points = [[] for _ in self.row_degrees]
        self.col_points = [[] for _ in self.col_degrees]

    @classmethod
    def from_matrix(cls, matrix, check_degrees=None):
        rows = [sum(r) for r in matrix]
        cols = [sum(matrix[i][j] for i in range(len(matrix))) for j in range(len(matrix[0]))]
        if check_degrees is not None and (tuple(rows), tuple(cols)) != check_degrees:
            raise InvariantViolation("matrix does not match expected marginals")
        g = cls(rows, cols)
        for i, row in enumerate(matrix):
            for j, v in enumerate(row):
                if v:
                    g._create_cell(i, j, v)
        return g

    @classmethod
    def from_simple_pairs(cls, row_degrees, col_degrees, pairs):
        """Build a simple seed graph from (row, col) pairs, all distinct."""
        g = cls(row_degrees, col_degrees)
        for i, j in pairs:
            g._create_cell(i, j, 1)
        return g

    def cell(self, i, j):
        return self.cells.get((i, j), 0)

    def _create_cell(self, i, j, value):
        key = (i, j)
        if key in self.cells:
            raise InvariantViolation(f"cell {key} already present")
        self.cells[key] = value
        self.row_points[i].extend([j] * value)
        self.col_points[j].extend([i] * value)
        self._cell_created(value)

    def _remove_simple(self, i, j):
        if self.cells.get((i, j)) != 1:
            raise InvariantViolation(f"cell ({i},{j}) is not a simple edge")
        del self.cells[(i, j)]
        self.row_points[i].remove(j)
        self.col_points[j].remove(i)
        self._cell_removed(1)

    def validate_anchor(self, a: Anchor) -> bool:
        """Do the two sampled stars form a legal switching site here?

        Legal means: leaves distinct on each side, all the star edges
        simple, and both the future high cell (u1, v1) and the future
        leaf cells (v_i, u_i) currently empty.
        """
        if len(set(a.us)) != a.s or len(set(a.vs)) != a.s:
            return False
        if a.v1 in a.us or a.u1 in a.vs:
            return False
        if (a.u1, a.v1) in self.cells:
            return False
        for c in a.us:
            if self.cells.get((a.u1, c)) != 1:
                return False
        for r in a.vs:
            if self.cells.get((r, a.v1)) != 1:
                return False
        for r, c in zip(a.vs, a.us):
            if (r, c) in self.cells:
                return False
        return True

    def apply_switching(self, a: Anchor):
        """Collapse the two stars into a multiplicity-s cell at (u1, v1)
        and reconnect each leaf pair with a new simple cell."""
        for c in a.us:
            self._remove_simple(a.u1, c)
        for r in a.vs:
            self._remove_simple(r, a.v1)
        self._create_cell(a.u1, a.v1, a.s)
        for r, c in zip(a.vs, a.us):
            self._create_cell(r, c, 1)

    def _simple_edges_at_row(self, i):
        seen = set()
        for j in self.row_points[i]:
            if j not in seen:
                seen.add(j)
                if self.cells[(i, j)] == 1:
                    yield (i, j)

    def _simple_edges_at_col(self, j):
        seen = set()
        for i in self.col_points[j]:
            if i not in seen:
                seen.add(i)
                if self.cells[(i, j)] == 1:
                    yield (i, j)

    def reverse_factors(self, a: Anchor):
        """Anchored counts for inverting an s-switching just applied.

        Returns [c_0, c_1, ..., c_s].  c_0 is the number of ways to pick
        the high cell (the current multiplicity-s census).  c_i for
        i >= 1 is the number of simple edges available as the (i+1)-th
        leaf pair once u1, v1 and the first i-1 leaf pairs are spoken
        for: an edge (r, c) qualifies unless c touches u1's neighborhood
        or an already-used column, or r touches v1's neighborhood or an
        already-used row.
        """
        excluded = set()
        # columns adjacent to u1 block the edge via its column end;
        # rows adjacent to v1 block via the row end
        for c in set(self.row_points[a.u1]):
            excluded.update(self._simple_edges_at_col(c))
        for r in set(self.col_points[a.v1]):
            excluded.update(self._simple_edges_at_row(r))
        factors = [self.mult_counts[a.s], self.simple_count - len(excluded)]
        for r, c in list(zip(a.vs, a.us))[: a.s - 1]:
            excluded.update(self._simple_edges_at_col(c))
            excluded.update(self._simple_edges_at_row(r))
            factors.append(self.simple_count - len(excluded))
        return factors

    def to_matrix(self):
        out = [[0] * len(self.col_degrees) for _ in self.row_degrees]
        for (i, j), v in self.cells.items():
            out[i][j] = v
        return out

    def audit(self):
        """Recompute all derived state from the cells; raise on mismatch."""
        if any(v < 1 for v in self.cells.values()):
            raise InvariantViolation("cell with multiplicity < 1")
        rows = [0] * len(self.row_degrees)
        cols = [0] * len(self.col_degrees)
        counts = [0] * (self.delta + 1)
        simple = 0
        for (i, j), v in self.cells.items():
            rows[i] += v
            cols[j] += v
            if v == 1:
                simple += 1
            else:
                if v > self.delta:
                    raise InvariantViolation("multiplicity above delta")
                counts[v] += 1
        if tuple(rows) != self.row_degrees or tuple(cols) != self.col_degrees:
            raise InvariantViolation("degrees drifted from marginals")
        if counts != self.mult_counts or simple != self.simple_count:
            raise InvariantViolation("stratum counters drifted")
        if self.weight != sum(v * c for v, c in enumerate(counts)):
            raise InvariantViolation("weight counter drifted")
        for i, pts in enumerate(self.row_points):
            expect = sorted(
                j for (r, j), v in self.cells.items() if r == i for _ in range(v)
            )
            if sorted(pts) != expect or len(pts) != self.row_degrees[i]:
                raise InvariantViolation(f"row point list {i} inconsistent")
        for j, pts in enumerate(self.col_points):
            expect = sorted(
                i for (i, c), v in self.cells.items() if c == j for _ in range(v)
            )
            if sorted(pts) != expect or len(pts) != self.col_degrees[j]:
                raise InvariantViolation(f"col point list {j} inconsistent")


class LooplessMultigraph(_StratumMixin):
    """Multigraph on one vertex set, with multi-edges but no loops."""

    def __init__(self, degrees):
        self.degrees = tuple(degrees)
        self._init_strata(max(self.degrees))
        self.cells = {}
        self.points = [[] for _ in self.degrees]

    @staticmethod
    def _key(u, v):
        return (u, v) if u < v else (v, u)

    @classmethod
    def from_matrix(cls, matrix):
        degrees = [sum(r) for r in matrix]
        g = cls(degrees)
        n = len(matrix)
        for u in range(n):
            if matrix[u][u]:
                raise InvariantViolation("loop in multigraph matrix")
            for v in range(u + 1, n):
                if matrix[u][v] != matrix[v][u]:
                    raise InvariantViolation("asymmetric multigraph matrix")
                if matrix[u][v]:
                    g._create_cell(u, v, matrix[u][v])
        return g

    @classmethod
    def from_simple_pairs(cls, degrees, pairs):
        g = cls(degrees)
        for u, v in pairs:
            g._create_cell(u, v, 1)
        return g

    def cell(self, u, v):
        return self.cells.get(self._key(u, v), 0)

    def _create_cell(self, u, v, value):
        if u == v:
            raise InvariantViolation("loop")
        key = self._key(u, v)
        if key in self.cells:
            raise InvariantViolation(f"cell {key} already present")
        self.cells[key] = value
        self.points[u].extend([v] * value)
        self.points[v].extend([u] * value)
        self._cell_created(value)

    def _remove_simple(self, u, v):
        key = self._key(u, v)
        if self.cells.get(key) != 1:
            raise InvariantViolation(f"cell {key} is not a simple edge")
        del self.cells[key]
        self.points[u].remove(v)
        self.points[v].remove(u)
        self._cell_removed(1)

    def validate_anchor(self, a: Anchor) -> bool:
        """As the bipartite check, plus full distinctness: with one
        vertex set the centers and all leaves must be pairwise
        different vertices."""
        names = (a.u1, a.v1) + a.us + a.vs
        if len(set(names)) != 2 * (a.s + 1):
            return False
        if self._key(a.u1, a.v1) in self.cells:
            return False
        for x in a.us:
            if self.cells.get(self._key(a.u1, x)) != 1:
                return False
        for x in a.vs:
            if self.cells.get(self._key(a.v1, x)) != 1:
                return False
        for x, y in zip(a.vs, a.us):
            if self._key(x, y) in self.cells:
                return False
        return True

    def apply_switching(self, a: Anchor):
        for x in a.us:
            self._remove_simple(a.u1, x)
        for x in a.vs:
            self._remove_simple(a.v1, x)
        self._create_cell(a.u1, a.v1, a.s)
        for x, y in zip(a.vs, a.us):
            self._create_cell(x, y, 1)

    def _simple_edges_at(self, w):
        seen = set()
        for x in self.points[w]:
            if x not in seen:
                seen.add(x)
                if self.cells[self._key(w, x)] == 1:
                    yield (w, x)

    def reverse_factors(self, a: Anchor):
        """Anchored counts for the inverse switching, over oriented
        simple edges (two orientations per edge).  c_0 is twice the
        multiplicity-s census because the high cell is entered at
        either end."""
        u_bad = {a.u1} | set(self.points[a.u1])
        v_bad = {a.v1} | set(self.points[a.v1])
        excluded = set()
        for w in u_bad | v_bad:
            for _, x in self._simple_edges_at(w):
                if w in u_bad:
                    excluded.add((w, x))
                if w in v_bad:
                    excluded.add((x, w))
        factors = [2 * self.mult_counts[a.s], 2 * self.simple_count - len(excluded)]
        for x, y in list(zip(a.us, a.vs))[: a.s - 1]:
            for w in (x, y):
                u_bad.add(w)
                v_bad.add(w)
                for _, z in self._simple_edges_at(w):
                    excluded.add((w, z))
                    excluded.add((z, w))
            factors.append(2 * self.simple_count - len(excluded))
        return factors

    def to_matrix(self):
        n = len(self.degrees)
        out = [[0] * n for _ in range(n)]
        for (u, v), c in self.cells.items():
            out[u][v] = c
            out[v][u] = c
        return out

    def edge_list(self):
        return sorted((u, v, c) for (u, v), c in self.cells.items())

    def audit(self):
        if any(v < 1 for v in self.cells.values()):
            raise InvariantViolation("cell with multiplicity < 1")
        deg = [0] * len(self.degrees)
        counts = [0] * (self.delta + 1)
        simple = 0
        for (u, v), c in self.cells.items():
            if u == v:
                raise InvariantViolation("loop")
            deg[u] += c
            deg[v] += c
            if c == 1:
                simple += 1
            else:
                if c > self.delta:
                    raise InvariantViolation("multiplicity above delta")
                counts[c] += 1
        if tuple(deg) != self.degrees:
            raise InvariantViolation("degrees drifted")
        if counts != self.mult_counts or simple != self.simple_count:
            raise InvariantViolation("stratum counters drifted")
        if self.weight != sum(v * c for v, c in enumerate(counts)):
            raise InvariantViolation("weight counter drifted")
        for w, pts in enumerate(self.points):
            expect = []
            for (u, v), c in self.cells.items():
                if u == w:
                    expect.extend([v] * c)
                elif v == w:
                    expect.extend([u] * c)
            if sorted(pts) != sorted(expect) or len(pts) != self.degrees[w]:
                raise InvariantViolation(f"point list {w} inconsistent")
