"""Monte-Carlo identification over a binary symmetric channel.

Every attribute answer flips independently with probability epsilon.  The
simulated observer walks the adaptive tree and repeats each node's query
an odd number of times, taking the majority; the repetition count is the
smallest odd r whose exact binomial majority-error is at most delta/depth,
so a union bound over the path keeps the end-to-end error within delta.
A nominal tag is modeled as a noise-free side channel: one query, no error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .barrier import collisions
from .errors import BarrierError, ConfigError
from .scheme import Scheme
from .trees import adaptive_tree

RNG_NAME = "numpy-philox"
MAX_REPETITIONS = 10_000_001


@dataclass(frozen=True)
class NoiseConfig:
    epsilon: float
    delta: float
    trials: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ConfigError(f"epsilon must be in [0, 0.5), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError(f"delta must be in (0, 1), got {self.delta}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class NoiseResult:
    mean_queries: float
    empirical_error: float
    reference_bound: float
    tagged_queries: int
    repetitions: int
    tree_depth: int
    seed: int
    rng: str


def majority_error(r: int, epsilon: float) -> float:
    """P[majority of r independent BSC(epsilon) samples is wrong], r odd.

    Exact binomial tail, summed in log space so large r stays finite.
    """
    if epsilon == 0.0:
        return 0.0
    log_eps = math.log(epsilon)
    log_one = math.log(1.0 - epsilon)
    total = 0.0
    for i in range(r // 2 + 1, r + 1):
        log_term = (
            math.lgamma(r + 1)
            - math.lgamma(i + 1)
            - math.lgamma(r - i + 1)
            + i * log_eps
            + (r - i) * log_one
        )
        total += math.exp(log_term)
    return min(total, 1.0)


def repetitions_for(epsilon: float, target: float) -> int:
    """Smallest odd r with majority_error(r, epsilon) <= target."""
    if majority_error(1, epsilon) <= target:
        return 1
    low, high = 1, 3
    while majority_error(high, epsilon) > target:
        low, high = high, high * 2 + 1
        if high > MAX_REPETITIONS:
            raise ConfigError(
                f"no feasible repetition count below {MAX_REPETITIONS} for "
                f"epsilon={epsilon}, per-node target={target}"
            )
    # Invariant: low fails, high succeeds; both odd.
    while high - low > 2:
        mid = (low + high) // 2
        if mid % 2 == 0:
            mid += 1
        if majority_error(mid, epsilon) <= target:
            high = mid
        else:
            low = mid
    return high


def reference_bound(cfg: NoiseConfig) -> float:
    """ln(1/delta) / (1 - 2 epsilon)^2 — the conjectured scaling, shown as
    an envelope, not asserted."""
    return math.log(1.0 / cfg.delta) / (1.0 - 2.0 * cfg.epsilon) ** 2


def simulate_noisy_identification(scheme: Scheme, cfg: NoiseConfig) -> NoiseResult:
    """Repeat-and-majority identification over the adaptive tree.

    Deterministic for a fixed (scheme, cfg): the seed drives a Philox
    counter-based generator and trials run in a fixed order.
    """
    if not collisions(scheme).injective:
        raise BarrierError("noisy identification needs profile-injective classes")
    tree = adaptive_tree(scheme)
    depth = tree.depth
    reps = repetitions_for(cfg.epsilon, cfg.delta / depth) if depth else 1
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    masses = np.asarray(scheme.masses)
    masses = masses / masses.sum()

    total_queries = 0
    errors = 0
    for _ in range(cfg.trials):
        true_class = int(rng.choice(scheme.k, p=masses))
        profile = scheme.classes[true_class].profile.bits
        node = tree.root
        while not node.is_leaf:
            flips = int(np.count_nonzero(rng.random(reps) < cfg.epsilon))
            true_bit = profile[node.attribute]
            wrong = flips > reps // 2
            observed = true_bit ^ wrong
            total_queries += reps
            node = node.one if observed else node.zero
        if node.candidates[0] != true_class:
            errors += 1
    return NoiseResult(
        mean_queries=total_queries / cfg.trials,
        empirical_error=errors / cfg.trials,
        reference_bound=reference_bound(cfg),
        tagged_queries=1,
        repetitions=reps,
        tree_depth=depth,
        seed=cfg.seed,
        rng=RNG_NAME,
    )


def simulate_tagged(scheme: Scheme, cfg: NoiseConfig) -> NoiseResult:
    """Tag reads bypass the noisy channel entirely: one query, zero error,
    for any scheme and any epsilon."""
    return NoiseResult(
        mean_queries=1.0,
        empirical_error=0.0,
        reference_bound=reference_bound(cfg),
        tagged_queries=1,
        repetitions=0,
        tree_depth=0,
        seed=cfg.seed,
        rng=RNG_NAME,
    )
