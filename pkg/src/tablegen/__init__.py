"""Exact-uniform samplers for contingency tables and loopless multigraphs.

The public surface is small: matrixgen draws a uniformly random
nonnegative integer matrix with prescribed row and column sums, and
multigraphgen draws a uniformly random loopless multigraph with a
prescribed degree sequence.  Uniformity is exact, not asymptotic: every
admissible outcome has identical probability, for every input, under a
deterministic seeded bit stream.
"""

__version__ = "0.1.0"
