"""Observer strategies and their witness costs.

Four observer kinds: ``nominal`` reads a class tag in one query;
``exhaustive`` queries every attribute; ``adaptive`` walks a decision
tree; ``hybrid`` reads an L-bit group tag and then resolves within the
group adaptively.  Tag-free observers see only the attribute profile, so
colliding classes produce identical transcripts by construction.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import matroid
from .barrier import quotient
from .scheme import Scheme
from .trees import adaptive_tree, walk

TAG_READ = "TAG_READ"

KINDS = ("nominal", "exhaustive", "adaptive", "hybrid")
TAG_FREE_KINDS = ("exhaustive", "adaptive")

MAX_PARTITION_MOVES = 1000


def tag_bits_for(k: int) -> int:
    """ceil(log2 k): bits needed to name k classes."""
    return (k - 1).bit_length()


@dataclass(frozen=True)
class StrategyDescriptor:
    kind: str
    tag_bits: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.tag_bits < 0:
            raise ValueError("tag_bits must be >= 0")
        if self.kind in TAG_FREE_KINDS and self.tag_bits != 0:
            raise ValueError(f"{self.kind} strategy is tag-free")

    @classmethod
    def nominal_for(cls, scheme: Scheme) -> "StrategyDescriptor":
        return cls("nominal", tag_bits_for(scheme.k))

    @classmethod
    def exhaustive(cls) -> "StrategyDescriptor":
        return cls("exhaustive")

    @classmethod
    def adaptive(cls) -> "StrategyDescriptor":
        return cls("adaptive")

    @classmethod
    def hybrid(cls, tag_bits: int) -> "StrategyDescriptor":
        return cls("hybrid", tag_bits)


@dataclass(frozen=True)
class Transcript:
    """Query sequence and decoded class for one identification run.

    ``undecided`` marks an ambiguous decode that was resolved to the
    lexicographically least candidate.
    """

    queries: tuple
    output: int
    query_count: int
    undecided: bool = False

    def __post_init__(self):
        if self.query_count != len(self.queries):
            raise ValueError("query_count must equal len(queries)")


def _profile_units(scheme: Scheme) -> list[tuple[int, ...]]:
    """Profile-quotient blocks ordered by profile bits (ties by index)."""
    blocks = quotient(scheme)
    return sorted(blocks, key=lambda b: (scheme.classes[b[0]].profile.bits, b[0]))


def subscheme(scheme: Scheme, members) -> tuple[Scheme, list[int]]:
    """Scheme restricted to ``members``; returns it plus the global indices.

    Masses are renormalized over the group (uniform if the group carries
    no mass), which is irrelevant for worst-case tree building.
    """
    order = sorted(members)
    total = sum(scheme.masses[c] for c in order)
    if total > 0:
        masses = tuple(scheme.masses[c] / total for c in order)
    else:
        masses = tuple(1.0 / len(order) for _ in order)
    sub = Scheme(scheme.attributes, tuple(scheme.classes[c] for c in order), masses)
    return sub, order


def tag_partition(scheme: Scheme, tag_bits: int) -> tuple[tuple[int, ...], ...]:
    """Deterministic partition of classes into at most 2**tag_bits groups.

    With enough bits to name every class the groups are singletons.  With
    fewer, colliding classes stay in one group (splitting them would fake
    a zero-distortion point below the converse bound), and a move-based
    local search balances the per-group distinguishing dimension.
    """
    k = scheme.k
    if tag_bits >= tag_bits_for(k):
        return tuple((c,) for c in range(k))
    units = _profile_units(scheme)
    block_count = min(1 << tag_bits, len(units))

    groups: list[list[tuple[int, ...]]] = [[] for _ in range(block_count)]
    filled = 0
    for unit in units:
        # Contiguous fill, switching blocks once the even share is reached.
        target = (filled + 1) * k // block_count if filled < block_count - 1 else k
        groups[filled].append(unit)
        if sum(len(u) for u in groups[filled]) >= target and filled < block_count - 1:
            filled += 1

    dim_cache: dict[frozenset, int] = {}

    def group_dim(group: list[tuple[int, ...]]) -> int:
        members = frozenset(c for unit in group for c in unit)
        if members not in dim_cache:
            dim_cache[members] = matroid.block_dimension(scheme, members) if members else 0
        return dim_cache[members]

    moves = 0
    improved = True
    while improved and moves < MAX_PARTITION_MOVES:
        improved = False
        objective = max(group_dim(g) for g in groups)
        for src in range(block_count):
            for unit in list(groups[src]):
                for dst in range(block_count):
                    if dst == src:
                        continue
                    groups[src].remove(unit)
                    groups[dst].append(unit)
                    if max(group_dim(g) for g in groups) < objective:
                        moves += 1
                        improved = True
                        objective = max(group_dim(g) for g in groups)
                        break
                    groups[dst].remove(unit)
                    groups[src].append(unit)
                if improved:
                    break
            if improved:
                break

    final = [sorted(c for unit in g for c in unit) for g in groups if g]
    return tuple(tuple(g) for g in sorted(final, key=lambda g: g[0]))


def _decode(candidates) -> tuple[int, bool]:
    ordered = sorted(candidates)
    return ordered[0], len(ordered) > 1


def identify(scheme: Scheme, strat: StrategyDescriptor, class_index: int) -> Transcript:
    """Run one identification of ``class_index`` and record the transcript."""
    if not 0 <= class_index < scheme.k:
        raise IndexError(f"class index {class_index} out of range for k={scheme.k}")

    if strat.kind == "nominal":
        if strat.tag_bits != tag_bits_for(scheme.k):
            raise ValueError(
                f"nominal tag_bits must be ceil(log2 k) = {tag_bits_for(scheme.k)}"
            )
        return Transcript((TAG_READ,), class_index, 1)

    profile = scheme.classes[class_index].profile.bits

    if strat.kind == "exhaustive":
        observed = scheme.profile_ints[class_index]
        matches = [c for c, p in enumerate(scheme.profile_ints) if p == observed]
        output, undecided = _decode(matches)
        return Transcript(tuple(range(scheme.n)), output, scheme.n, undecided)

    if strat.kind == "adaptive":
        queried, leaf = walk(adaptive_tree(scheme), profile)
        output, undecided = _decode(leaf.candidates)
        return Transcript(tuple(queried), output, len(queried), undecided)

    # hybrid: one tag read for the group id, then adaptive within the group
    groups = tag_partition(scheme, strat.tag_bits)
    group = next(g for g in groups if class_index in g)
    if len(group) == 1:
        return Transcript((TAG_READ,), class_index, 1)
    sub, order = subscheme(scheme, group)
    queried, leaf = walk(adaptive_tree(sub), profile)
    output, undecided = _decode(order[c] for c in leaf.candidates)
    return Transcript((TAG_READ, *queried), output, 1 + len(queried), undecided)


def witness_id_cost(scheme: Scheme, strat: StrategyDescriptor) -> int:
    """Worst-case query count to identify a single entity's class."""
    return max(identify(scheme, strat, c).query_count for c in range(scheme.k))


def witness_eq_cost(scheme: Scheme, strat: StrategyDescriptor) -> tuple[int, int]:
    """(lower, upper) bounds on pairwise type-identity cost.

    Tag readers compare two tags: (2, 2).  Tag-free observers are bounded
    below by the distinguishing dimension and above by running a full
    identification on both sides; no exact pair protocol is fixed, so an
    interval is reported rather than a single number.
    """
    if scheme.k == 1:
        return (0, 0)
    if strat.kind == "nominal":
        return (2, 2)
    if strat.kind == "hybrid":
        if strat.tag_bits >= tag_bits_for(scheme.k):
            return (2, 2)
        return (2, 2 * witness_id_cost(scheme, strat))
    d = matroid.distinguishing_dimension(scheme).dimension
    return (d, 2 * witness_id_cost(scheme, strat))


def decode_distortion(scheme: Scheme) -> float:
    """Misclassification probability of the best profile-only decoder.

    The optimal decoder maps each profile to its heaviest class (ties to
    the least index, which does not change the value).  Summing each
    block's residual mass rather than subtracting from 1 keeps the value
    exactly 0.0 on injective schemes.
    """
    return sum(
        sum(scheme.masses[c] for c in block) - max(scheme.masses[c] for c in block)
        for block in quotient(scheme)
    )
