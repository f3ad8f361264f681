"""Exact rational parameters steering the switching chain.

Everything here is computed with integers and ``Fraction`` so the chain's
coin flips stay exactly representable.  The one deliberately inflated
quantity is the fallback budget ``b_hat``: it upper-bounds an irrational
expression by rounding the exponent up and replacing Euler's constant
with a slightly larger rational, which only shifts work between the two
sampling routes and never biases the output.

A stratum is described by its multiplicity profile: a tuple ``m`` of
length ``delta - 1`` where ``m[k - 2]`` counts cells of multiplicity
``k``.  The weight of a profile is ``sum(k * m[k - 2])``, the number of
edges tied up in multiple edges.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .errors import Infeasible, InvariantViolation
from .marginals import factorial_moments

# Rational upper bound on Euler's number, good to 9 digits.
EULER_UPPER = Fraction(2_718_281_829, 10**9)

DEFAULT_EPS_MIN = Fraction(1, 8)


def _check_eps_min(eps_min: Fraction) -> Fraction:
    eps_min = Fraction(eps_min)
    if not 0 < eps_min < 1:
        raise ValueError("eps_min must lie strictly between 0 and 1")
    return eps_min


def choose_threshold(
    total: int,
    delta: int,
    eps_min: Fraction = DEFAULT_EPS_MIN,
    *,
    one_sided: bool = False,
) -> int:
    """Largest usable switching threshold, or 0 when none exists.

    ``total`` is the number of edges and ``delta`` the maximum degree.
    With ``one_sided`` the bound is for loopless multigraphs on a single
    vertex set, whose simple-edge slack shrinks twice as fast.

    A threshold t is usable when t > 7 and the slack fraction
    ``eps = slack / total`` (slack being ``total - t - 4 delta^2``, or
    ``total - 2 t - 6 delta^2`` one-sided) satisfies ``eps >= eps_min``,
    a cubic margin keeping eps**3 above the star-pair density, and a
    quadratic guard keeping the chain's continuation mass below 1.  The
    slack conditions only get harder as t grows and the quadratic guard
    only gets easier, so the answer is the largest t passing the slack
    conditions, accepted if the guard holds there.
    """
    eps_min = _check_eps_min(eps_min)
    if total <= 0 or delta <= 0:
        return 0
    p, q = eps_min.numerator, eps_min.denominator
    d2 = delta * delta
    d4 = d2 * d2

    if one_sided:
        def slack(t: int) -> int:
            return total - 2 * t - 6 * d2

        def cube_ok(s: int) -> bool:
            return s**3 > 2 * d4 * total**2

        def guard_ok(t: int) -> bool:
            return 8 * t * (t - d2 - d2 * delta) >= (2 * t + 6 * d2) ** 2
    else:
        def slack(t: int) -> int:
            return total - t - 4 * d2

        def cube_ok(s: int) -> bool:
            return s**3 > 4 * d4 * total**2

        def guard_ok(t: int) -> bool:
            return 2 * t * (t - d2 - d2 * delta) >= (t + 4 * d2) ** 2

    def slack_ok(t: int) -> bool:
        s = slack(t)
        return s > 0 and q * s >= p * total and cube_ok(s)

    if not slack_ok(8):
        return 0
    lo, hi = 8, total  # slack_ok(lo) holds, slack_ok(total) never does
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if slack_ok(mid):
            lo = mid
        else:
            hi = mid
    return lo if guard_ok(lo) else 0


class ChainParameters:
    """Shared machinery for both chain variants.

    Subclasses fix the star-pair ceiling ``f_bar``, the per-relaxation
    floors ``bound_factors``, the closed-form tail coefficient, and the
    fallback budget.  Forcing ``t0`` (instead of letting
    ``choose_threshold`` pick it) is how the test fixtures drive the
    chain through regimes the production thresholds would rule out.
    """

    _closed_coeff = 4

    def __init__(
        self,
        total: int,
        delta: int,
        t0: Optional[int],
        eps_min: Fraction,
        b_hat_override: Optional[Fraction],
    ) -> None:
        self.total = total
        self.delta = delta
        self.eps_min = _check_eps_min(eps_min)
        if t0 is None:
            t0 = choose_threshold(
                total, delta, self.eps_min, one_sided=self._one_sided
            )
        elif t0 < 0:
            raise ValueError("threshold must be nonnegative")
        self.t0 = t0
        self.slack = self._slack()
        self.eps = Fraction(self.slack, total) if total else Fraction(0)
        self._b_hat_override = (
            None if b_hat_override is None else Fraction(b_hat_override)
        )
        self._beta: dict[tuple[int, ...], Fraction] = {}

    _one_sided = False

    def _slack(self) -> int:
        return self.total - self.t0 - 4 * self.delta**2

    # -- profile helpers ------------------------------------------------

    @property
    def zero_profile(self) -> tuple[int, ...]:
        return (0,) * (self.delta - 1)

    def profile_weight(self, profile: Sequence[int]) -> int:
        return sum(k * c for k, c in enumerate(profile, start=2))

    @staticmethod
    def _level(profile: Sequence[int]) -> Optional[int]:
        for k in range(len(profile) + 1, 1, -1):
            if profile[k - 2]:
                return k
        return None

    def _check_profile(self, profile: Sequence[int]) -> tuple[int, ...]:
        m = tuple(profile)
        if len(m) != self.delta - 1:
            raise ValueError(
                f"profile length {len(m)} does not match delta {self.delta}"
            )
        return m

    # -- bounds ---------------------------------------------------------

    def f_bar(self, k: int) -> int:
        raise NotImplementedError

    def _head(self, count: int) -> int:
        return count

    def bound_factors(self, k: int, target: Sequence[int]) -> list[int]:
        """Floors for the relaxation count at each step of a k-switching
        landing in the ``target`` stratum, index 0 being the exact count
        of multiplicity-k cells there."""
        m = self._check_profile(target)
        if not 2 <= k <= self.delta:
            raise ValueError(f"switching size {k} out of range")
        weight = self.profile_weight(m)
        factors = [self._head(m[k - 2])]
        if k == 2:
            factors += [self._pair_floor(weight, i) for i in (1, 2)]
        else:
            factors += [self.slack] * k
        return factors

    def _pair_floor(self, weight: int, i: int) -> int:
        return self.total - weight - 2 * i * self.delta - 2 * self.delta**2

    def bound_product(self, k: int, target: Sequence[int]) -> int:
        return prod(self.bound_factors(k, target))

    # -- the beta table -------------------------------------------------

    def _closed_beta(self, level: int) -> Fraction:
        if self.slack <= 0:
            raise InvariantViolation(
                "closed-form tail coefficient needs positive slack"
            )
        num = self._closed_coeff * self.delta ** (2 * level - 2) * self.total**2
        return Fraction(num, self.slack**level)

    def beta(self, profile: Sequence[int]) -> Optional[Fraction]:
        """Continuation weight of a stratum; None for strata past the
        threshold, where the chain may never land."""
        m = self._check_profile(profile)
        if self.profile_weight(m) >= self.t0:
            return None
        return self._beta_value(m)

    def _beta_value(self, m: tuple[int, ...]) -> Fraction:
        memo = self._beta
        if m in memo:
            return memo[m]
        # Levels 2 and below recurse on every heavier stratum reachable
        # by one switching, so evaluate with an explicit stack: the
        # chain of pending strata can be thousands deep.
        stack = [m]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            level = self._level(cur)
            if level is not None and level >= 3:
                memo[cur] = self._closed_beta(level)
                stack.pop()
                continue
            weight = self.profile_weight(cur)
            targets = []
            for k in range(2, self.delta + 1):
                if weight + k >= self.t0 or self.f_bar(k) == 0:
                    continue
                bumped = list(cur)
                bumped[k - 2] += 1
                targets.append((k, tuple(bumped)))
            missing = [t for _, t in targets if t not in memo]
            if missing:
                stack.extend(missing)
                continue
            total = Fraction(0)
            for k, target in targets:
                denom = self.bound_product(k, target)
                if denom == 0:
                    raise InvariantViolation(
                        f"vanishing relaxation floor at stratum {target}"
                    )
                total += Fraction(self.f_bar(k), denom) * (1 + memo[target])
            if total < 0:
                raise InvariantViolation(
                    f"negative continuation weight at stratum {cur}"
                )
            memo[cur] = total
            stack.pop()
        return memo[m]

    # -- chain step distribution ----------------------------------------

    def selection_weights(
        self, profile: Sequence[int], t_min: int
    ) -> list[tuple[int, Fraction]]:
        """Switching sizes available from a stratum, with their exact
        probabilities.  Residual mass up to 1 is the restart coin."""
        m = self._check_profile(profile)
        beta_here = self.beta(m)
        if beta_here is None:
            raise InvariantViolation("no switchings start past the threshold")
        if beta_here == 0:
            return []
        weight = self.profile_weight(m)
        pairs: list[tuple[int, Fraction]] = []
        for k in range(max(2, t_min), self.delta + 1):
            if weight + k >= self.t0 or self.f_bar(k) == 0:
                continue
            target = list(m)
            target[k - 2] += 1
            beta_next = self._beta_value(tuple(target))
            w = (
                Fraction(self.f_bar(k), self.bound_product(k, target))
                * (1 + beta_next)
                / beta_here
            )
            if w < 0:
                raise InvariantViolation(
                    f"negative selection weight for size {k} at {m}"
                )
            if w:
                pairs.append((k, w))
        if sum(w for _, w in pairs) > 1:
            raise InvariantViolation(
                f"selection weights exceed 1 at stratum {m}"
            )
        return pairs

    # -- fallback budget ------------------------------------------------

    @property
    def beta0(self) -> Fraction:
        if self.t0 == 0:
            return Fraction(0)
        value = self.beta(self.zero_profile)
        assert value is not None
        return value

    def b_hat(self) -> Fraction:
        if self._b_hat_override is not None:
            return self._b_hat_override
        if self.t0 <= 7:
            raise Infeasible(
                "fallback budget is defined only for thresholds above 7"
            )
        if self.slack <= 0 or self.slack >= self.total:
            raise Infeasible("fallback budget needs slack strictly inside (0, total)")
        co = 1 - self.eps
        first = Fraction(3, 2) / co**2 + Fraction(3, 4) / co**4
        exponent = (self.slack + 1) // 2  # ceil of slack/2; first > 1
        tail_base = (
            self.delta**2
            * EULER_UPPER
            / (self._tail_scale * self.eps**2 * co * (self.t0 - 7))
        )
        return 4 * first**exponent * tail_base ** (self.t0 - 7)

    _tail_scale = 1

    def rho_hat(self) -> Fraction:
        """Probability of taking the enumeration fallback in a round."""
        if self.t0 == 0:
            return Fraction(1)
        x = self.b_hat() / (1 + self.beta0)
        return x / (1 + x)


class TableChainParameters(ChainParameters):
    """Parameters for bipartite multigraphs with fixed degree lists."""

    def __init__(
        self,
        row_degrees: Sequence[int],
        col_degrees: Sequence[int],
        *,
        t0: Optional[int] = None,
        eps_min: Fraction = DEFAULT_EPS_MIN,
        b_hat_override: Optional[Fraction] = None,
    ) -> None:
        total = sum(row_degrees)
        if total != sum(col_degrees):
            raise ValueError("degree lists must have equal totals")
        delta = max(max(row_degrees, default=0), max(col_degrees, default=0))
        self._row_moments = factorial_moments(row_degrees, delta)
        self._col_moments = factorial_moments(col_degrees, delta)
        super().__init__(total, delta, t0, eps_min, b_hat_override)

    def f_bar(self, k: int) -> int:
        return self._row_moments[k] * self._col_moments[k]


class GraphChainParameters(ChainParameters):
    """Parameters for loopless multigraphs on one degree sequence."""

    _closed_coeff = 2
    _tail_scale = 2
    _one_sided = True

    def __init__(
        self,
        degrees: Sequence[int],
        *,
        t0: Optional[int] = None,
        eps_min: Fraction = DEFAULT_EPS_MIN,
        b_hat_override: Optional[Fraction] = None,
    ) -> None:
        total = sum(degrees)
        delta = max(degrees, default=0)
        self._moments = factorial_moments(degrees, delta)
        super().__init__(total, delta, t0, eps_min, b_hat_override)

    def _slack(self) -> int:
        return self.total - 2 * self.t0 - 6 * self.delta**2

    def f_bar(self, k: int) -> int:
        return self._moments[k] ** 2

    def _head(self, count: int) -> int:
        return 2 * count

    def _pair_floor(self, weight: int, i: int) -> int:
        return (
            self.total
            - 2 * weight
            - 4 * i * self.delta
            - 2 * self.delta**2
        )
