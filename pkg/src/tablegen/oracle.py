"""Brute-force enumeration and statistical harnesses used to audit the
samplers.

Everything in this module is deliberately slow and simple: exhaustive
recursion over tables or multigraphs, straight chi-square arithmetic,
and small-instance fixtures with every probability recomputed from
first principles.  The samplers are never trusted to check themselves;
these are the independent referees.

Floats appear here only in reported statistics (p-values, distances).
All enumeration and probability bookkeeping is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientSamples, TooLarge


# ---------------------------------------------------------------------------
# Exhaustive enumeration


def enumerate_tables(rows, cols, max_cell=None, cap=2_000_000):
    """All nonnegative integer matrices with the given marginals.

    Returned as tuples of row tuples, in lexicographic order.  max_cell
    bounds the entries (None means no bound beyond the marginals), and
    cap aborts runaway enumerations with TooLarge.
    """
    rows = tuple(rows)
    cols = tuple(cols)
    if sum(rows) != sum(cols):
        return []
    out = []
    n, m = len(rows), len(cols)

    def rec(i, rem):
        if len(out) > cap:
            raise TooLarge(f"more than {cap} tables")
        if i == n:
            if all(v == 0 for v in rem):
                yield ()
            return
        row = [0] * m

        def cells(j, left):
            if j == m:
                if left == 0:
                    frozen = tuple(row)
                    new_rem = tuple(rem[k] - row[k] for k in range(m))
                    for tail in rec(i + 1, new_rem):
                        yield (frozen,) + tail
                return
            hi = min(left, rem[j])
            if max_cell is not None:
                hi = min(hi, max_cell)
            for v in range(hi + 1):
                row[j] = v
                yield from cells(j + 1, left - v)
            row[j] = 0

        yield from cells(0, rows[i])

    for t in rec(0, cols):
        out.append(t)
        if len(out) > cap:
            raise TooLarge(f"more than {cap} tables")
    return out


def enumerate_multigraphs(degrees, cap=2_000_000):
    """All loopless multigraphs with the given degrees.

    Each multigraph is returned as a full symmetric matrix (tuple of
    tuples) with zero diagonal; entry (u, v) is the edge multiplicity.
    """
    degrees = tuple(degrees)
    n = len(degrees)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    out = []

    def rec(idx, deg_left, acc):
        if len(out) > cap:
            raise TooLarge(f"more than {cap} multigraphs")
        if idx == len(pairs):
            if all(d == 0 for d in deg_left):
                mat = [[0] * n for _ in range(n)]
                for (u, v), c in zip(pairs, acc):
                    mat[u][v] = c
                    mat[v][u] = c
                out.append(tuple(tuple(r) for r in mat))
            return
        u, v = pairs[idx]
        # all later pairs involving u: check u can still be satisfied
        hi = min(deg_left[u], deg_left[v])
        for c in range(hi + 1):
            deg_left[u] -= c
            deg_left[v] -= c
            # prune: if u has no later pair, its degree must be spent
            if all(p[0] != u and p[1] != u for p in pairs[idx + 1 :]) and deg_left[u] != 0:
                pass
            else:
                acc.append(c)
                rec(idx + 1, deg_left, acc)
                acc.pop()
            deg_left[u] += c
            deg_left[v] += c

    rec(0, list(degrees), [])
    return out


# ---------------------------------------------------------------------------
# Multiplicity profiles and strata


def table_profile(table, delta):
    """Multiplicity profile of a table: counts of cells equal to k, k >= 2."""
    counts = [0] * (delta + 1)
    for row in table:
        for v in row:
            if v >= 2:
                counts[v] += 1
    return tuple(counts[2:])


def multigraph_profile(matrix, delta):
    """Multiplicity profile of a symmetric multigraph matrix."""
    counts = [0] * (delta + 1)
    n = len(matrix)
    for u in range(n):
        for v in range(u + 1, n):
            if matrix[u][v] >= 2:
                counts[matrix[u][v]] += 1
    return tuple(counts[2:])


def profile_weight(profile):
    """Total multiplicity carried by a profile: sum of k * count_k."""
    return sum((k + 2) * c for k, c in enumerate(profile))


def profile_level(profile):
    """Largest multiplicity present, or None for the simple profile."""
    for k in range(len(profile) - 1, -1, -1):
        if profile[k]:
            return k + 2
    return None


def stratum_census(objects, delta, profile_fn):
    """Count objects per multiplicity profile."""
    census = {}
    for obj in objects:
        key = profile_fn(obj, delta)
        census[key] = census.get(key, 0) + 1
    return census


def total_multiplicity(table):
    """Sum of entries that are at least two (the Brute split statistic)."""
    return sum(v for row in table for v in row if v >= 2)


def multigraph_total_multiplicity(matrix):
    n = len(matrix)
    return sum(
        matrix[u][v] for u in range(n) for v in range(u + 1, n) if matrix[u][v] >= 2
    )


# ---------------------------------------------------------------------------
# Statistics


@dataclass
class UniformityReport:
    n_samples: int
    n_outcomes: int
    statistic: float
    p_value: float
    tv_distance: float
    min_count: int
    max_count: int

    def line(self, label, significance=0.001):
        verdict = "PASS" if self.p_value > significance else "FAIL"
        return (
            f"{verdict} {label}: chi2={self.statistic:.2f} over "
            f"{self.n_outcomes} outcomes, n={self.n_samples}, "
            f"p={self.p_value:.4g}, tv={self.tv_distance:.4f}"
        )


def chi_square_uniform(counts, n_outcomes, min_expected=5):
    """Pearson chi-square test of uniformity over n_outcomes categories.

    counts maps outcome -> observed count; outcomes never seen are
    counted as zero.  Raises InsufficientSamples when the expected count
    per cell is below min_expected, where the chi-square approximation
    is not trustworthy.
    """
    from scipy.stats import chi2

    n = sum(counts.values())
    if n_outcomes < 2:
        raise ValueError("need at least two outcomes")
    if len(counts) > n_outcomes:
        raise ValueError("observed more outcomes than the space allows")
    expected = n / n_outcomes
    if expected < min_expected:
        raise InsufficientSamples(
            f"{n} samples over {n_outcomes} outcomes gives expected "
            f"count {expected:.1f} < {min_expected}"
        )
    stat = 0.0
    tv = 0.0
    observed = list(counts.values()) + [0] * (n_outcomes - len(counts))
    for c in observed:
        stat += (c - expected) ** 2 / expected
        tv += abs(c / n - 1 / n_outcomes)
    return UniformityReport(
        n_samples=n,
        n_outcomes=n_outcomes,
        statistic=stat,
        p_value=float(chi2.sf(stat, n_outcomes - 1)),
        tv_distance=tv / 2,
        min_count=min(observed),
        max_count=max(observed),
    )


def chi_square_fit(counts, probabilities, min_expected=5):
    """Chi-square goodness of fit against given outcome probabilities."""
    from scipy.stats import chi2

    n = sum(counts.values())
    outcomes = list(probabilities)
    stat = 0.0
    tv = 0.0
    for o in outcomes:
        p = float(probabilities[o])
        expected = n * p
        if expected < min_expected:
            raise InsufficientSamples(f"expected count {expected:.1f} < {min_expected}")
        c = counts.get(o, 0)
        stat += (c - expected) ** 2 / expected
        tv += abs(c / n - p)
    extra = sum(c for o, c in counts.items() if o not in probabilities)
    if extra:
        raise ValueError(f"{extra} samples fell outside the outcome space")
    return UniformityReport(
        n_samples=n,
        n_outcomes=len(outcomes),
        statistic=stat,
        p_value=float(chi2.sf(stat, len(outcomes) - 1)),
        tv_distance=tv / 2,
        min_count=min(counts.get(o, 0) for o in outcomes),
        max_count=max(counts.get(o, 0) for o in outcomes),
    )
