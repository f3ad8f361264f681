"""Uniform simple seed graphs via rejected random point pairings.

Every vertex contributes degree-many points; a uniform pairing of the
points projects to a multigraph, and each SIMPLE graph is the image of
the same number of pairings (the product of the degree factorials).
Conditioning on simplicity by redrawing therefore keeps the output
exactly uniform.  The price is a geometric number of redraws, which
stays O(1) while squared degrees are small next to the total mass.
"""

from __future__ import annotations

from .exactprob import BitSource
from .marginals import DegreeSequence, Marginals
from .multigraph import BipartiteMultigraph, LooplessMultigraph

__all__ = ["sample_simple_bipartite", "sample_simple_graph"]


def _shuffle(items: list, src: BitSource) -> None:
    for i in range(len(items) - 1, 0, -1):
        j = src.uniform_below(i + 1)
        items[i], items[j] = items[j], items[i]


def sample_simple_bipartite(
    marginals: Marginals, src: BitSource
) -> BipartiteMultigraph:
    """Uniform simple bipartite graph with the given marginals.

    Row points are kept in a fixed order and matched against a freshly
    shuffled list of column points; any pairing that lands two points
    in one cell is thrown away.  Callers must know a simple realization
    exists (Gale-Ryser), otherwise the loop cannot terminate.
    """
    row_of = [i for i, d in enumerate(marginals.rows) for _ in range(d)]
    col_of = [j for j, d in enumerate(marginals.cols) for _ in range(d)]
    while True:
        _shuffle(col_of, src)
        seen: set = set()
        ok = True
        for pair in zip(row_of, col_of):
            if pair in seen:
                ok = False
                break
            seen.add(pair)
        if ok:
            return BipartiteMultigraph.from_simple_pairs(
                marginals.rows, marginals.cols, seen
            )


def sample_simple_graph(
    degrees: DegreeSequence, src: BitSource
) -> LooplessMultigraph:
    """Uniform simple graph on one degree sequence.

    A single shuffled point list is read off two points at a time; a
    pair within one vertex or a repeated vertex pair forces a redraw.
    Callers must know a simple realization exists (Erdos-Gallai).
    """
    points = [v for v, d in enumerate(degrees.degrees) for _ in range(d)]
    if len(points) % 2:
        raise ValueError("point count must be even to pair off")
    while True:
        _shuffle(points, src)
        seen: set = set()
        ok = True
        for p in range(0, len(points), 2):
            a, b = points[p], points[p + 1]
            if a == b:
                ok = False
                break
            edge = (a, b) if a < b else (b, a)
            if edge in seen:
                ok = False
                break
            seen.add(edge)
        if ok:
            return LooplessMultigraph.from_simple_pairs(degrees.degrees, seen)
