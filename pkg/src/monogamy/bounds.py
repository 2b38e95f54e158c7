"""Weighted monogamy lower bounds for a focus qubit against its partners.

For a pure state on qubits {A, B_1, ..., B_{N-1}} and a measure M with
exponent alpha, the cut value M(A | B_1...B_{N-1})^alpha is bounded from
below by a weighted sum over the two-qubit pair values M(A, B_i)^alpha.
The weights form a geometric ladder in the per-step factor
h = 2^(alpha/gamma) - 1 (gamma is 2 for concurrence and its negativity
twin, sqrt(2) for entanglement of formation, 1 for tsallis), and the
ladder's shape is controlled by a split position m: the first m weights
ascend h^0..h^{m-1}, the trailing pairs take h^{m+1} except for the very
last, which takes h^m.  m = N-2 degenerates to the fully ascending
ladder h^0..h^{N-2}.

The bound with split m is certified only under an ordering hypothesis on
the chain: the first m pair concurrences must dominate the concurrence
of the matching remainder cut, and the later ones must be dominated by
it.  Remainder cuts live on mixed states, where the concurrence has no
closed form, so the hypothesis is checked against a certified bracket:

* lower bound: root of the summed squared pair concurrences further down
  the chain (squared-concurrence monogamy),
* upper bound: sqrt(2 (1 - Tr rho_A^2)), which dominates the convex roof
  because the pure-state concurrence is concave in the reduced state.

Each comparison gets a verdict: Holds (certified >=), Fails (certified
<), or Undetermined (the bracket straddles the pair value).  Only the
final two-body comparison is always exact; for N = 3 every comparison is
exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .measures import MeasureKind, concurrence_pure, concurrence_two_qubit, pair_value, pure_cut_value
from .qstate import DensityMatrix, Ket, PartitionSpec, partial_trace

ALPHA_ATOL = 1e-12
PRECONDITION_ATOL = 1e-12

# gamma in the per-step factor 2^(alpha/gamma) - 1
_STEP_GAMMA = {
    "concurrence": 2.0,
    "cren": 2.0,
    "eof": math.sqrt(2.0),
    "tsallis": 1.0,
}


def step_factor(kind: MeasureKind, alpha: float) -> float:
    """Per-step ladder factor 2^(alpha/gamma) - 1.

    Equals 1 at the measure's floor exponent and grows from there; it
    always dominates the prior linear factor returned by prior_factor.
    """
    alpha = float(alpha)
    if alpha < kind.alpha_floor - ALPHA_ATOL:
        raise ValueError(
            f"alpha={alpha!r} below the {kind.label} floor {kind.alpha_floor!r}"
        )
    return 2.0 ** (alpha / _STEP_GAMMA[kind.name]) - 1.0


def prior_factor(kind: MeasureKind, alpha: float) -> float:
    """Earlier linear per-step factor: alpha/2, alpha/sqrt(2), or 1."""
    alpha = float(alpha)
    if alpha < kind.alpha_floor - ALPHA_ATOL:
        raise ValueError(
            f"alpha={alpha!r} below the {kind.label} floor {kind.alpha_floor!r}"
        )
    if kind.name == "tsallis":
        return 1.0
    return alpha / _STEP_GAMMA[kind.name]


def power_split_margin(t: float, x: float) -> float:
    """Margin of (1 + t)^x >= 1 + (2^x - 1) t^x for t in [0, 1], x >= 1.

    This inequality justifies the ladder factor: splitting a power of a
    two-term sum loses at most nothing against the weighted pieces.  The
    margin vanishes exactly at t = 0 and t = 1.
    """
    t = float(t)
    x = float(x)
    if not (-ALPHA_ATOL <= t <= 1.0 + ALPHA_ATOL):
        raise ValueError(f"t={t!r} outside [0, 1]")
    if x < 1.0 - ALPHA_ATOL:
        raise ValueError(f"x={x!r} below 1")
    t = min(max(t, 0.0), 1.0)
    return (1.0 + t) ** x - 1.0 - (2.0**x - 1.0) * t**x


@dataclass(frozen=True)
class WeightLadder:
    """Geometric weight ladder with a split position.

    weights()[i] = base^p_i with powers
    p = [0, 1, ..., split-1] + [split+1] * (count-1-split) + [split];
    split = count - 1 yields the fully ascending ladder 0..count-1.
    """

    base: float
    count: int
    split: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"need at least two pair terms, got {self.count}")
        if not (1 <= self.split <= self.count - 1):
            raise ValueError(
                f"split {self.split} outside [1, {self.count - 1}] for {self.count} terms"
            )
        if self.base < 1.0 - ALPHA_ATOL:
            raise ValueError(f"ladder base must be >= 1, got {self.base!r}")

    @classmethod
    def unit(cls, count: int) -> "WeightLadder":
        return cls(1.0, count, 1)

    def powers(self) -> np.ndarray:
        p = list(range(self.split))
        p += [self.split + 1] * (self.count - 1 - self.split)
        p.append(self.split)
        return np.array(p, dtype=np.int64)

    def weights(self) -> np.ndarray:
        return np.asarray(self.base, dtype=np.float64) ** self.powers()


class Verdict(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class PreconditionVerdict:
    """Certified chain-ordering comparisons for one pair order.

    Comparison i (0-based, one per pair except the last) weighs the pair
    concurrence ``pair_concurrences[i]`` against the concurrence of the
    cut A | remaining pairs, bracketed by ``certified_lower[i]`` and
    ``certified_upper[i]``.  ``exact[i]`` marks comparisons where the
    bracket collapses to the exact two-qubit value.
    """

    pair_concurrences: tuple[float, ...]
    certified_lower: tuple[float, ...]
    certified_upper: tuple[float, ...]
    verdicts: tuple[Verdict, ...]
    exact: tuple[bool, ...]

    def ge_certified(self, i: int) -> bool:
        """Pair i certifiably dominates its remainder cut (ties count)."""
        return self.pair_concurrences[i] >= self.certified_upper[i] - PRECONDITION_ATOL

    def le_certified(self, i: int) -> bool:
        """Pair i is certifiably dominated by its remainder cut (ties count)."""
        return self.pair_concurrences[i] <= self.certified_lower[i] + PRECONDITION_ATOL

    def certifies_split(self, m: int) -> bool:
        """Whether the ordering hypothesis for split position m is certified."""
        n_cmp = len(self.verdicts)
        if not (1 <= m <= n_cmp + 1):
            raise ValueError(f"split {m} outside [1, {n_cmp + 1}]")
        head = all(self.ge_certified(i) for i in range(min(m, n_cmp)))
        tail = all(self.le_certified(i) for i in range(m, n_cmp))
        return head and tail

    @property
    def any_undetermined(self) -> bool:
        return any(v is Verdict.UNDETERMINED for v in self.verdicts)

    @property
    def all_hold(self) -> bool:
        return all(v is Verdict.HOLDS for v in self.verdicts)


def _chain_preconditions(pair_conc: Sequence[float], cut_cap: float) -> PreconditionVerdict:
    n_pairs = len(pair_conc)
    lowers: list[float] = []
    uppers: list[float] = []
    verdicts: list[Verdict] = []
    exact: list[bool] = []
    for i in range(n_pairs - 1):
        if i == n_pairs - 2:
            # remainder is a single partner: the cut is an exact two-qubit value
            lo = hi = pair_conc[-1]
            exact.append(True)
        else:
            tail = pair_conc[i + 1 :]
            lo = math.sqrt(sum(c * c for c in tail))
            hi = cut_cap
            exact.append(False)
        c = pair_conc[i]
        if c >= hi - PRECONDITION_ATOL:
            verdicts.append(Verdict.HOLDS)
        elif c < lo - PRECONDITION_ATOL:
            verdicts.append(Verdict.FAILS)
        else:
            verdicts.append(Verdict.UNDETERMINED)
        lowers.append(lo)
        uppers.append(hi)
    return PreconditionVerdict(
        tuple(pair_conc[:-1]), tuple(lowers), tuple(uppers), tuple(verdicts), tuple(exact)
    )


def precondition_check(psi: Ket, focus: int, order: Sequence[int] | None = None) -> PreconditionVerdict:
    """Check the chain-ordering hypothesis for a focus qubit and pair order."""
    n = psi.n_qubits
    order = _resolve_order(n, focus, order)
    proj = psi.to_density_matrix()
    pair_conc = [
        concurrence_two_qubit(partial_trace(proj, (focus, b))) for b in order
    ]
    cut_cap = concurrence_pure(psi, PartitionSpec.focus_vs_rest(focus, n))
    return _chain_preconditions(pair_conc, cut_cap)


@dataclass(frozen=True)
class BoundReport:
    """One evaluation of the weighted bound against its baselines.

    ``lhs`` is the cut value raised to alpha; ``new_bound``,
    ``baseline_weighted`` and ``baseline_sum`` are weighted sums of the
    pair values raised to alpha (ladder, prior linear-factor ladder, and
    unweighted).  ``order`` is the pair order actually used, which for
    the fully ascending ladder is sorted by descending pair concurrence.
    ``asserted`` reports whether the ordering hypothesis for ``m`` was
    certified, i.e. whether residual_new >= 0 is guaranteed.
    """

    measure: MeasureKind
    alpha: float
    m: int
    focus: int
    order: tuple[int, ...]
    lhs: float
    pair_values: tuple[float, ...]
    weights: tuple[float, ...]
    new_bound: float
    baseline_weighted: float
    baseline_sum: float
    residual_new: float
    residual_gap: float
    preconditions: PreconditionVerdict

    @property
    def asserted(self) -> bool:
        return self.preconditions.certifies_split(self.m)


def _resolve_order(n: int, focus: int, order: Sequence[int] | None) -> tuple[int, ...]:
    if not (0 <= focus < n):
        raise ValueError(f"focus {focus} out of range for {n} qubits")
    rest = [i for i in range(n) if i != focus]
    if order is None:
        return tuple(rest)
    order = tuple(int(i) for i in order)
    if sorted(order) != rest:
        raise ValueError(
            f"order {order} is not a permutation of the non-focus qubits {rest}"
        )
    return order


def _descending(values: Sequence[float], items: Sequence) -> list:
    idx = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return [items[i] for i in idx]


def monogamy_report(
    psi: Ket,
    focus: int,
    measure: MeasureKind,
    alpha: float,
    order: Sequence[int] | None = None,
    m: int | None = None,
) -> BoundReport:
    """Evaluate the weighted bound for one pure state, measure and exponent.

    ``m`` selects the ladder split; ``None`` scans for the largest
    certified split, preferring the fully ascending ladder (m = N-2).
    When the ascending ladder is used the pairs are reordered by
    descending pair concurrence (ties keep their original position); the
    split ladders use the caller's order as given.  If no split is
    certified, the report falls back to the ascending ladder with the
    verdicts attached and ``asserted`` False.
    """
    n = psi.n_qubits
    if n < 3:
        raise ValueError(f"need at least three qubits, got {n}")
    given = _resolve_order(n, focus, order)
    h = step_factor(measure, alpha)  # also validates alpha against the floor
    proj = psi.to_density_matrix()

    pair_rhos = {b: partial_trace(proj, (focus, b)) for b in given}
    pair_conc = {b: concurrence_two_qubit(pair_rhos[b]) for b in given}
    cut_cap = concurrence_pure(psi, PartitionSpec.focus_vs_rest(focus, n))

    sorted_order = tuple(_descending([pair_conc[b] for b in given], list(given)))
    pre_sorted = _chain_preconditions([pair_conc[b] for b in sorted_order], cut_cap)

    n_pairs = n - 1
    if m is None:
        if pre_sorted.certifies_split(n_pairs - 1):
            m, eff_order, pre = n_pairs - 1, sorted_order, pre_sorted
        else:
            pre_given = _chain_preconditions([pair_conc[b] for b in given], cut_cap)
            for cand in range(n_pairs - 2, 0, -1):
                if pre_given.certifies_split(cand):
                    m, eff_order, pre = cand, given, pre_given
                    break
            else:
                m, eff_order, pre = n_pairs - 1, sorted_order, pre_sorted
    else:
        m = int(m)
        if not (1 <= m <= n_pairs - 1):
            raise ValueError(f"m={m} outside [1, {n_pairs - 1}] for {n_pairs} pairs")
        if m == n_pairs - 1:
            eff_order, pre = sorted_order, pre_sorted
        else:
            eff_order = given
            pre = _chain_preconditions([pair_conc[b] for b in given], cut_cap)

    cut = PartitionSpec.focus_vs_rest(focus, n)
    lhs = pure_cut_value(measure, psi, cut) ** alpha
    pvals = np.array([pair_value(measure, pair_rhos[b]) for b in eff_order])
    powered = pvals**alpha

    ladder = WeightLadder(h, n_pairs, m)
    prior = WeightLadder(prior_factor(measure, alpha), n_pairs, m)
    weights = ladder.weights()
    new_bound = float(weights @ powered)
    baseline_weighted = float(prior.weights() @ powered)
    baseline_sum = float(powered.sum())

    return BoundReport(
        measure=measure,
        alpha=float(alpha),
        m=m,
        focus=focus,
        order=eff_order,
        lhs=lhs,
        pair_values=tuple(float(v) for v in pvals),
        weights=tuple(float(w) for w in weights),
        new_bound=new_bound,
        baseline_weighted=baseline_weighted,
        baseline_sum=baseline_sum,
        residual_new=lhs - new_bound,
        residual_gap=new_bound - max(baseline_weighted, baseline_sum),
        preconditions=pre,
    )


def alpha_grid(lo: float, hi: float, step: float) -> np.ndarray:
    """Inclusive grid lo, lo+step, ... capped at hi (within rounding)."""
    lo, hi, step = float(lo), float(hi), float(step)
    if step <= 0.0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo - ALPHA_ATOL:
        raise ValueError(f"empty range [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def alpha_sweep(
    psi: Ket,
    focus: int,
    measure: MeasureKind,
    alphas: Sequence[float],
    order: Sequence[int] | None = None,
    m: int | None = None,
) -> list[BoundReport]:
    """monogamy_report across an exponent grid."""
    return [monogamy_report(psi, focus, measure, a, order=order, m=m) for a in alphas]
