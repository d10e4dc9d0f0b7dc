"""
Explicit model of H(n,r,q|sigma).

Edges are materialised here and only here. check_explicit is the slow ground
truth every fast path in the package is tested against.
"""

from itertools import combinations, permutations, product
from math import comb, factorial, perm
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from core.constants import SearchDefaults
from core.errors import ColouringError, EdgeCapExceeded, EdgeSizeError
from core.logger import get_logger
from core.models import (
    Colouring,
    ColourBounds,
    EdgeWitness,
    Partition,
    SigmaInstance,
    Verdict,
    VerdictStatus,
    VertexRef,
)
from core.partition import normalize_partition

logger = get_logger(__name__)

Edge = Tuple[VertexRef, ...]


def count_edges(inst: SigmaInstance) -> int:
    """
    Closed-form edge count.

    Ordered choice of s classes, divided by the orderings of equal parts, times
    the per-class choice of slots.
    """
    if inst.degenerate:
        return 0
    sigma = inst.sigma
    total = perm(inst.n, sigma.s)
    for mult in sigma.multiplicities().values():
        total //= factorial(mult)
    for part in sigma.parts:
        total *= comb(inst.q, part)
    return total


def _part_assignments(parts: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return sorted(set(permutations(parts)), reverse=True)


def iter_edges(inst: SigmaInstance) -> Iterator[Edge]:
    """
    Yield every edge in a fixed order.

    Class sets ascending, then part assignments (largest part to the lowest
    class first), then slot choices ascending.
    """
    if inst.degenerate:
        return
    sigma = inst.sigma
    assignments = _part_assignments(sigma.parts)
    for classes in combinations(range(inst.n), sigma.s):
        for assignment in assignments:
            slot_choices = [combinations(range(inst.q), a) for a in assignment]
            for slots in product(*slot_choices):
                yield tuple(
                    VertexRef(c, slot)
                    for c, chosen in zip(classes, slots)
                    for slot in chosen
                )


def enumerate_edges(inst: SigmaInstance, cap: int = SearchDefaults.EDGE_CAP) -> List[Edge]:
    """
    Materialise all edges.

    Raises:
        EdgeCapExceeded: when the instance has more than cap edges
    """
    total = count_edges(inst)
    if total > cap:
        raise EdgeCapExceeded(total, cap)
    return list(iter_edges(inst))


def raw_profile(inst: SigmaInstance, subset: Iterable[VertexRef]) -> Partition:
    """Partition formed by the nonzero class-intersection sizes of subset."""
    vertices = set(subset)
    if len(vertices) != inst.r:
        raise EdgeSizeError(
            f"edge_profile needs exactly r={inst.r} distinct vertices, got {len(vertices)}",
            [("subset size = r", f"{len(vertices)} != {inst.r}")],
        )
    sizes: Dict[int, int] = {}
    for v in vertices:
        if not (0 <= v.class_index < inst.n and 0 <= v.slot < inst.q):
            raise EdgeSizeError(f"vertex {v.to_dict()} is outside the instance",
                                [("vertex in range", str(v.to_dict()))])
        sizes[v.class_index] = sizes.get(v.class_index, 0) + 1
    return normalize_partition(sizes.values())


def edge_profile(inst: SigmaInstance, subset: Iterable[VertexRef]) -> Optional[Partition]:
    """Return the profile of subset when it equals sigma; None means NOT_AN_EDGE."""
    profile = raw_profile(inst, subset)
    return profile if profile == inst.sigma else None


def is_edge(inst: SigmaInstance, subset: FrozenSet[VertexRef]) -> bool:
    return edge_profile(inst, subset) is not None


def violation_side(min_distinct: int, max_distinct: int, bounds: ColourBounds) -> Optional[str]:
    """
    Which bound a colouring violates, judged from its distinct-colour range alone.

    Returns "min" or "max", or None when valid. The lower bound wins when both fail.
    """
    if min_distinct < bounds.alpha:
        return "min"
    if max_distinct > bounds.beta:
        return "max"
    return None


def violation_status(side: str, distinct: int, bounds: ColourBounds, r: int) -> VerdictStatus:
    """Status reported for a violating edge carrying the given number of colours."""
    if side == "min":
        return VerdictStatus.MONOCHROMATIC_EDGE if distinct == 1 else VerdictStatus.BOUNDS_VIOLATION
    if distinct == r and bounds.beta == r - 1:
        return VerdictStatus.RAINBOW_EDGE
    return VerdictStatus.BOUNDS_VIOLATION


def _witness(col: Colouring, edge: Edge) -> EdgeWitness:
    return EdgeWitness(vertices=edge, colours=tuple(col.colour_of(v) for v in edge))


def check_explicit(
    inst: SigmaInstance,
    col: Colouring,
    bounds: ColourBounds,
    cap: int = SearchDefaults.EDGE_CAP,
) -> Verdict:
    """
    Check a colouring by scanning every edge.

    Edges are visited in iter_edges order. The witness is the first edge in
    that order whose distinct-colour count equals the extreme on the violated
    side: the overall minimum when alpha is broken, otherwise the overall
    maximum. The scan stops at the first monochromatic edge when alpha >= 2.

    Raises:
        EdgeCapExceeded: instance too large for explicit enumeration
        ColouringError: colouring does not fit the instance
        BoundsError: beta > r
    """
    col.check_shape(inst)
    bounds.validate_for(inst.r)
    if inst.degenerate:
        return Verdict(status=VerdictStatus.VALID, degenerate=True)

    total = count_edges(inst)
    if total > cap:
        raise EdgeCapExceeded(total, cap)

    lowest: Optional[Tuple[int, Edge]] = None
    highest: Optional[Tuple[int, Edge]] = None
    for edge in iter_edges(inst):
        distinct = len({col.colour_of(v) for v in edge})
        if highest is None or distinct > highest[0]:
            highest = (distinct, edge)
        if lowest is None or distinct < lowest[0]:
            lowest = (distinct, edge)
            if distinct == 1 and bounds.alpha >= 2:
                break

    side = violation_side(lowest[0], highest[0], bounds)
    if side is None:
        return Verdict(status=VerdictStatus.VALID)
    distinct, edge = lowest if side == "min" else highest
    status = violation_status(side, distinct, bounds, inst.r)
    logger.debug(f"Explicit check of {inst.label()}: {status.value} with {distinct} colours")
    return Verdict(status=status, witness=_witness(col, edge))


def random_colouring(inst: SigmaInstance, k: int, rng: np.random.Generator) -> Colouring:
    """
    Random surjective colouring with exactly k colours.

    Every colour is pinned to one distinct random vertex; the remaining
    vertices draw colours uniformly.
    """
    total = inst.vertex_count
    if not 1 <= k <= total:
        raise ColouringError(f"k={k} outside 1..nq={total}", [("1 <= k <= nq", f"k={k}, nq={total}")])
    flat = rng.integers(1, k + 1, size=total)
    pinned = rng.permutation(total)[:k]
    flat[pinned] = np.arange(1, k + 1)
    rows = flat.reshape(inst.n, inst.q)
    return Colouring(tuple(tuple(int(c) for c in row) for row in rows))
