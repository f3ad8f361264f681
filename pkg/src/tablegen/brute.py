"""Exact counting and stratified sampling of tables and multigraphs.

The counting statistic throughout is the total multiplicity t: the sum
of all entries that are at least two.  Tables (or loopless multigraphs)
with t below the switching threshold are handled by the chain sampler;
everything at or above it is sampled here by counting.

The counter is a divide-and-conquer recursion.  For tables, split the
row set in half and classify columns by how much mass they send to the
top half; columns with equal (total, top-mass) are interchangeable, so
a multinomial coefficient collapses them and the two halves recurse
independently.  Multiplicity is additive across the split because each
cell lives entirely in one half.  Multigraphs add a third term, the
bipartite crossing between the two vertex halves, and classify vertices
by (degree, degree spent inside their own half).

Sampling inverts the same recursions one row (or vertex) at a time: the
candidate assignments for the first row are weighted by the exact count
of completions, and a single uniform draw picks one.  The weight sums
are asserted to telescope exactly; a mismatch means a counting bug and
raises InvariantViolation rather than returning a biased sample.
"""

from __future__ import annotations

import math

from .errors import Infeasible, InvariantViolation


class CountCache:
    """Bounded memo store shared across counting calls.

    Entries are never evicted; once the capacity is reached new results
    are simply not retained.  The per-call transient memo keeps single
    computations fast regardless, so the cap only limits reuse across
    calls.
    """

    def __init__(self, capacity=1_000_000):
        self.capacity = capacity
        self.store = {}
        self.hits = 0
        self.misses = 0

    def get(self, key):
        v = self.store.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key, value):
        if len(self.store) < self.capacity:
            self.store[key] = value


def _split_classes(values):
    """Group a sorted tuple into (value, count) pairs."""
    out = []
    for v in values:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return out


def _strip_sorted(values):
    """Drop zeros and sort descending, the canonical form for memo keys."""
    return tuple(sorted((v for v in values if v > 0), reverse=True))


def _tau_single_row(row):
    return sum(v for v in row if v >= 2)


# ---------------------------------------------------------------------------
# Tables


def count_tables(rows, cols, t, cache=None):
    """Number of nonnegative integer matrices with the given marginals
    whose total multiplicity (sum of entries >= 2) is exactly t."""
    g = _strip_sorted(rows)
    h = _strip_sorted(cols)
    if sum(g) != sum(h):
        return 0
    if t < 0 or t == 1:
        return 0
    memo = {}
    return _count_tables(g, h, t, memo, cache)


def count_tables_all_t(rows, cols, cache=None):
    """Counts for every achievable t, as a dict t -> count."""
    out = {}
    for t in range(sum(v for v in rows if v > 0) + 1):
        c = count_tables(rows, cols, t, cache)
        if c:
            out[t] = c
    return out


def _count_tables(g, h, t, memo, cache):
    # g, h sorted descending, zero-free; transpose symmetry canonicalizes
    if not g:
        return 1 if (not h and t == 0) else 0
    if len(g) == 1:
        # single row: the table is h itself
        return 1 if t == sum(v for v in h if v >= 2) else 0
    if len(h) == 1:
        return 1 if t == sum(v for v in g if v >= 2) else 0
    key = (g, h, t) if g <= h else (h, g, t)
    if key in memo:
        return memo[key]
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            memo[key] = hit
            return hit

    mid = len(g) // 2
    g_top, g_bot = g[:mid], g[mid:]
    top_total = sum(g_top)
    bot_total = sum(g_bot)
    classes = _split_classes(h)  # (value, how many columns)

    total = 0
    # Enumerate the ways columns split their mass between the halves.
    # state: per class, a composition over top-mass j = 0..value.
    plan = []  # list of (j, count) chosen per class, flattened later

    def per_class(ci, top_left):
        nonlocal total
        if ci == len(classes):
            if top_left != 0:
                return
            # assemble half marginals and the multinomial coefficient
            coeff = 1
            top_cols = []
            bot_cols = []
            for (value, n_cols), comp in zip(classes, plan):
                coeff *= math.factorial(n_cols)
                for j, cnt in comp:
                    coeff //= math.factorial(cnt)
                    top_cols.extend([j] * cnt)
                    bot_cols.extend([value - j] * cnt)
            a = _strip_sorted(top_cols)
            b = _strip_sorted(bot_cols)
            if sum(b) != bot_total:
                return
            # convolve multiplicity between the halves; t1 = 1 impossible
            sub = 0
            for t1 in range(min(t, top_total) + 1):
                t2 = t - t1
                if t1 == 1 or t2 == 1 or t2 > bot_total:
                    continue
                n1 = _count_tables(g_top, a, t1, memo, cache)
                if n1 == 0:
                    continue
                n2 = _count_tables(g_bot, b, t2, memo, cache)
                if n2:
                    sub += n1 * n2
            total += coeff * sub
            return
        value, n_cols = classes[ci]
        comp = []

        def compose(j, cols_left, mass_used):
            # choose how many of the class's columns send j to the top
            if j == value:
                comp.append((value, cols_left))
                per_class_mass = mass_used + value * cols_left
                if per_class_mass <= top_left:
                    plan.append(tuple(comp))
                    per_class(ci + 1, top_left - per_class_mass)
                    plan.pop()
                comp.pop()
                return
            for cnt in range(cols_left + 1):
                if mass_used + j * cnt > top_left:
                    break
                comp.append((j, cnt))
                compose(j + 1, cols_left - cnt, mass_used + j * cnt)
                comp.pop()

        compose(0, n_cols, 0)

    per_class(0, top_total)
    memo[key] = total
    if cache is not None:
        cache.put(key, total)
    return total


def tail_weights(rows, cols, t0, cache=None):
    """Counts N(t) for t >= t0 and their sum R, the mass the counting
    sampler is responsible for."""
    total = sum(v for v in rows if v > 0)
    weights = {}
    r = 0
    for t in range(t0, total + 1):
        if t == 1:
            continue
        c = count_tables(rows, cols, t, cache)
        if c:
            weights[t] = c
            r += c
    return r, weights


def sample_table(rows, cols, t, src, cache=None):
    """Uniform table with the given marginals and total multiplicity t.

    Operates on the stripped vectors in input order; the caller maps
    positions back.  Raises Infeasible when no such table exists.
    """
    rows = list(rows)
    cols = list(cols)
    parent = count_tables(rows, cols, t, cache)
    if parent == 0:
        raise Infeasible(f"no table with t={t}")
    out = []
    t_left = t
    for i in range(len(rows)):
        if i == len(rows) - 1:
            row = tuple(cols)
            if _tau_single_row(row) != t_left:
                raise InvariantViolation("final row multiplicity mismatch")
            out.append(row)
            cols = [0] * len(cols)
            break
        u = src.uniform_below(parent)
        acc = 0
        chosen = None
        rest = rows[i + 1 :]
        for row in _row_candidates(rows[i], cols):
            tau = _tau_single_row(row)
            if tau > t_left:
                continue
            w = count_tables(rest, [c - a for c, a in zip(cols, row)], t_left - tau, cache)
            if w == 0:
                continue
            acc += w
            if u < acc:
                chosen = (row, w)
                break
        if chosen is None:
            raise InvariantViolation(
                f"row weights for row {i} summed to {acc}, expected {parent}"
            )
        row, w = chosen
        out.append(row)
        cols = [c - a for c, a in zip(cols, row)]
        t_left -= _tau_single_row(row)
        parent = w
    return [list(r) for r in out]


def _row_candidates(row_sum, cols):
    """All ways to spread row_sum over the columns, lexicographic order."""
    m = len(cols)
    row = [0] * m

    def rec(j, left):
        if j == m - 1:
            if left <= cols[j]:
                row[j] = left
                yield tuple(row)
                row[j] = 0
            return
        for v in range(min(left, cols[j]) + 1):
            row[j] = v
            yield from rec(j + 1, left - v)
        row[j] = 0

    yield from rec(0, row_sum)


# ---------------------------------------------------------------------------
# Loopless multigraphs


def count_multigraphs(degrees, t, cache=None):
    """Number of loopless multigraphs with the given degrees whose total
    multiplicity is exactly t."""
    d = _strip_sorted(degrees)
    if sum(d) % 2 == 1:
        return 0
    if t < 0 or t == 1:
        return 0
    memo = {}
    bip_memo = {}
    return _count_multigraphs(d, t, memo, bip_memo, cache)


def count_multigraphs_all_t(degrees, cache=None):
    out = {}
    total = sum(v for v in degrees if v > 0)
    for t in range(total // 2 + 1):
        c = count_multigraphs(degrees, t, cache)
        if c:
            out[t] = c
    return out


def _count_multigraphs(d, t, memo, bip_memo, cache):
    if not d:
        return 1 if t == 0 else 0
    if len(d) == 1:
        return 0  # a single vertex with positive degree has no loopless graph
    if len(d) == 2:
        if d[0] != d[1]:
            return 0
        c = d[0]
        return 1 if t == (c if c >= 2 else 0) else 0
    key = ("mg", d, t)
    if key in memo:
        return memo[key]
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            memo[key] = hit
            return hit

    mid = len(d) // 2
    left, right = d[:mid], d[mid:]
    total = 0
    # classify each half's vertices by degree spent inside that half
    left_splits = _inner_splits(left)
    right_splits = _inner_splits(right)
    for l_inner, l_coeff, l_cross in left_splits:
        if sum(l_inner) % 2:
            continue
        for r_inner, r_coeff, r_cross in right_splits:
            if sum(r_inner) % 2:
                continue
            if sum(l_cross) != sum(r_cross):
                continue
            coeff = l_coeff * r_coeff
            sub = 0
            cross_total = sum(l_cross)
            for t1 in range(min(t, sum(l_inner) // 2) + 1):
                if t1 == 1:
                    continue
                n1 = _count_multigraphs(_strip_sorted(l_inner), t1, memo, bip_memo, cache)
                if n1 == 0:
                    continue
                for t2 in range(min(t - t1, sum(r_inner) // 2) + 1):
                    if t2 == 1:
                        continue
                    n2 = _count_multigraphs(_strip_sorted(r_inner), t2, memo, bip_memo, cache)
                    if n2 == 0:
                        continue
                    t3 = t - t1 - t2
                    if t3 == 1 or t3 > cross_total:
                        continue
                    n3 = _count_tables(
                        _strip_sorted(l_cross), _strip_sorted(r_cross), t3, bip_memo, cache
                    )
                    if n3:
                        sub += n1 * n2 * n3
            total += coeff * sub
    memo[key] = total
    if cache is not None:
        cache.put(key, total)
    return total


def _inner_splits(half):
    """Ways the vertices of one half spend degree inside the half.

    Yields (inner_degrees, coefficient, cross_degrees) where vertices of
    equal degree are collapsed by a multinomial coefficient.
    """
    classes = _split_classes(tuple(sorted(half, reverse=True)))
    results = []
    plan = []

    def per_class(ci):
        if ci == len(classes):
            coeff = 1
            inner = []
            cross = []
            for (value, n), comp in zip(classes, plan):
                coeff *= math.factorial(n)
                for j, cnt in comp:
                    coeff //= math.factorial(cnt)
                    inner.extend([j] * cnt)
                    cross.extend([value - j] * cnt)
            results.append((tuple(inner), coeff, tuple(cross)))
            return
        value, n = classes[ci]
        comp = []

        def compose(j, left):
            if j == value:
                comp.append((value, left))
                plan.append(tuple(comp))
                per_class(ci + 1)
                plan.pop()
                comp.pop()
                return
            for cnt in range(left + 1):
                comp.append((j, cnt))
                compose(j + 1, left - cnt)
                comp.pop()

        compose(0, n)

    per_class(0)
    return results


def tail_weights_multigraph(degrees, t0, cache=None):
    total = sum(v for v in degrees if v > 0)
    weights = {}
    r = 0
    for t in range(t0, total // 2 + 1):
        if t == 1:
            continue
        c = count_multigraphs(degrees, t, cache)
        if c:
            weights[t] = c
            r += c
    return r, weights


def sample_multigraph(degrees, t, src, cache=None):
    """Uniform loopless multigraph with the given degrees and total
    multiplicity t, as a symmetric matrix (list of lists)."""
    d = list(degrees)
    n = len(d)
    parent = count_multigraphs(d, t, cache)
    if parent == 0:
        raise Infeasible(f"no multigraph with t={t}")
    mat = [[0] * n for _ in range(n)]
    t_left = t
    active = list(range(n))
    while len(active) > 2:
        v = active[0]
        rest = active[1:]
        u = src.uniform_below(parent)
        acc = 0
        chosen = None
        for vec in _edge_candidates(d[v], [d[w] for w in rest]):
            tau = _tau_single_row(vec)
            if tau > t_left:
                continue
            w = count_multigraphs(
                [d[x] - a for x, a in zip(rest, vec)], t_left - tau, cache
            )
            if w == 0:
                continue
            acc += w
            if u < acc:
                chosen = (vec, w)
                break
        if chosen is None:
            raise InvariantViolation(
                f"edge weights at vertex {v} summed to {acc}, expected {parent}"
            )
        vec, w = chosen
        for x, a in zip(rest, vec):
            mat[v][x] = a
            mat[x][v] = a
            d[x] -= a
        t_left -= _tau_single_row(vec)
        d[v] = 0
        parent = w
        active = [x for x in active[1:] if d[x] > 0]
    if len(active) == 2:
        a, b = active
        if d[a] != d[b]:
            raise InvariantViolation("final pair degree mismatch")
        c = d[a]
        mat[a][b] = c
        mat[b][a] = c
        expect = c if c >= 2 else 0
        if expect != t_left:
            raise InvariantViolation("final pair multiplicity mismatch")
    elif len(active) == 1 and d[active[0]] != 0:
        raise InvariantViolation("single vertex left with positive degree")
    elif t_left != 0 and len(active) < 2:
        raise InvariantViolation("multiplicity left over")
    return mat


def _edge_candidates(degree, partner_caps):
    """Edge vectors from one vertex to the later ones, lexicographic."""
    m = len(partner_caps)
    vec = [0] * m

    def rec(j, left):
        if j == m - 1:
            if left <= partner_caps[j]:
                vec[j] = left
                yield tuple(vec)
                vec[j] = 0
            return
        for v in range(min(left, partner_caps[j]) + 1):
            vec[j] = v
            yield from rec(j + 1, left - v)
        vec[j] = 0

    yield from rec(0, degree)
