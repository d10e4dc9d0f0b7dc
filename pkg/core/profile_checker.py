"""
Fast colouring validation on class colour-count tables.

No edge is materialised. The fewest colours an edge can carry is found by a
branch and bound over part-to-class placements that grows the set of colours
in use; the most colours by a depth-first search over part-to-class assignments
scored with a bipartite matching between the chosen classes and their colour supports.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.hypergraph import violation_status
from core.logger import get_logger
from core.models import (
    ClassProfile,
    Colouring,
    ColourBounds,
    DistinctRange,
    EdgeWitness,
    Partition,
    SigmaInstance,
    Verdict,
    VerdictStatus,
    VertexRef,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class MonochromaticWitness:
    """Colour c and the classes that take each part of sigma, largest part first."""
    colour: int
    classes: Tuple[int, ...]


@dataclass(frozen=True)
class MaxDistinct:
    """Best edge found by the rainbow search: (class, part) pairs and matched colours."""
    value: int
    assignment: Tuple[Tuple[int, int], ...]
    matched: Dict[int, int]


class _StopSearch(Exception):
    pass


def build_profile(inst: SigmaInstance, col: Colouring) -> ClassProfile:
    """Tally counts[i, c-1] = vertices of class i coloured c."""
    col.check_shape(inst)
    counts = np.zeros((inst.n, col.k), dtype=np.int64)
    for i, row in enumerate(col.classes):
        for colour in row:
            counts[i, colour - 1] += 1
    return ClassProfile(counts=counts)


def _edgeless(counts: np.ndarray, parts: np.ndarray) -> bool:
    if counts.shape[0] < len(parts):
        return True
    return int(counts[0].sum()) < int(parts[0])


def _parts_array(sigma: Partition) -> np.ndarray:
    return np.asarray(sigma.parts, dtype=np.int64)


def _assign_parts(totals: np.ndarray, parts: np.ndarray) -> Optional[np.ndarray]:
    """Classes taking parts a_1 >= ... >= a_s when the sorted totals dominate them."""
    order = np.argsort(-totals, kind="stable")[: len(parts)]
    if np.all(totals[order] >= parts):
        return order
    return None


def monochromatic_colours(
    counts: np.ndarray,
    parts: np.ndarray,
    colours: Optional[Sequence[int]] = None,
) -> np.ndarray:
    """
    0-based colours admitting a monochromatic edge.

    Colour c does iff the j-th largest count of c over the classes is at least
    a_j for every j <= s.
    """
    s = len(parts)
    if counts.shape[0] < s:
        return np.empty(0, dtype=np.int64)
    columns = counts if colours is None else counts[:, list(colours)]
    top = -np.sort(-columns, axis=0)[:s]
    hits = np.flatnonzero(np.all(top >= parts[:, None], axis=0))
    if colours is None:
        return hits
    return np.asarray(colours, dtype=np.int64)[hits]


def _augment(pos: int, supports: List[Tuple[int, ...]], owner: Dict[int, int], visited: set) -> bool:
    for colour in supports[pos]:
        if colour in visited or owner.get(colour) == pos:
            continue
        visited.add(colour)
        holder = owner.get(colour)
        if holder is None or _augment(holder, supports, owner, visited):
            owner[colour] = pos
            return True
    return False


def _with_class(owner: Dict[int, int], supports: List[Tuple[int, ...]], pos: int, capacity: int) -> Dict[int, int]:
    owner = dict(owner)
    for _ in range(capacity):
        if not _augment(pos, supports, owner, set()):
            break
    return owner


def max_distinct_colours(
    counts: np.ndarray,
    parts: np.ndarray,
    anchor: Optional[int] = None,
    stop: Optional[int] = None,
) -> Optional[MaxDistinct]:
    """
    Most distinct colours on one edge, optionally only edges through class anchor.

    Parts are placed largest first. Classes with equal colour support are
    interchangeable, and equal parts take non-decreasing support types. A
    branch is cut when its matching plus the remaining parts cannot beat the
    best found. The search returns as soon as stop is reached.

    Returns None when there is no edge.
    """
    if _edgeless(counts, parts):
        return None
    n = counts.shape[0]
    supports_of = [tuple(int(c) for c in np.flatnonzero(counts[i])) for i in range(n)]
    palette = int(np.count_nonzero(counts.sum(axis=0)))
    limit = min(int(parts.sum()), palette)
    target = limit if stop is None else min(stop, limit)

    type_index: Dict[Tuple[int, ...], int] = {}
    type_classes: List[List[int]] = []
    for i in range(n):
        if i == anchor:
            continue
        t = type_index.setdefault(supports_of[i], len(type_classes))
        if t == len(type_classes):
            type_classes.append([])
        type_classes[t].append(i)
    used = [0] * len(type_classes)

    best: List[Optional[MaxDistinct]] = [None]

    def descend(rest: List[int], idx: int, assignment: List[Tuple[int, int]],
                supports: List[Tuple[int, ...]], owner: Dict[int, int], min_type: int,
                suffix: List[int]) -> None:
        value = len(owner)
        incumbent = best[0].value if best[0] else -1
        if value + suffix[idx] <= incumbent:
            return
        if idx == len(rest):
            best[0] = MaxDistinct(value, tuple(assignment), dict(owner))
            if value >= target:
                raise _StopSearch()
            return
        part = rest[idx]
        start = min_type if idx > 0 and rest[idx - 1] == part else 0
        for t in range(start, len(type_classes)):
            if used[t] == len(type_classes[t]):
                continue
            cls = type_classes[t][used[t]]
            used[t] += 1
            pos = len(assignment)
            supports.append(supports_of[cls])
            assignment.append((cls, part))
            descend(rest, idx + 1, assignment, supports,
                    _with_class(owner, supports, pos, part), t, suffix)
            assignment.pop()
            supports.pop()
            used[t] -= 1

    def run(rest: List[int], seed: List[Tuple[int, int]]) -> None:
        suffix = [sum(rest[i:]) for i in range(len(rest) + 1)]
        supports = [supports_of[cls] for cls, _ in seed]
        owner: Dict[int, int] = {}
        for pos, (_, part) in enumerate(seed):
            owner = _with_class(owner, supports, pos, part)
        descend(rest, 0, list(seed), supports, owner, 0, suffix)

    parts_list = [int(p) for p in parts]
    try:
        if anchor is None:
            run(parts_list, [])
        else:
            for value in sorted(set(parts_list), reverse=True):
                rest = list(parts_list)
                rest.remove(value)
                run(rest, [(anchor, value)])
    except _StopSearch:
        pass
    return best[0]


def has_monochromatic_edge(profile: ClassProfile, sigma: Partition) -> Optional[MonochromaticWitness]:
    """Lowest colour with a monochromatic edge, and the classes taking each part."""
    parts = _parts_array(sigma)
    if _edgeless(profile.counts, parts):
        return None
    hits = monochromatic_colours(profile.counts, parts)
    if hits.size == 0:
        return None
    colour = int(hits[0])
    classes = _assign_parts(profile.counts[:, colour], parts)
    return MonochromaticWitness(colour=colour + 1, classes=tuple(int(c) for c in classes))


def _hosted_by_chosen(held: np.ndarray, rest: List[int]) -> int:
    """Most of the remaining parts that free classes can take from chosen colours alone."""
    totals = -np.sort(-held)
    ascending = sorted(rest)
    for j in range(len(rest), 0, -1):
        if len(totals) >= j and all(int(totals[t]) >= p for t, p in enumerate(reversed(ascending[:j]))):
            return j
    return 0


def _further_colours(counts: np.ndarray, held: np.ndarray, free: np.ndarray,
                     chosen: np.ndarray, rest: List[int]) -> Optional[int]:
    """
    Fewest colours that must still be added; None when the rest cannot be placed.

    Each part no free class can take from the chosen colours sits on its own
    class, which needs a new colour present in it, and a colour reaches at most
    as many free classes as contain it.
    """
    uncovered = len(rest) - _hosted_by_chosen(held[free], rest)
    if uncovered == 0:
        return 0
    reach = -np.sort(-np.count_nonzero(counts[free][:, ~chosen], axis=0))
    enough = np.flatnonzero(np.cumsum(reach) >= uncovered)
    return int(enough[0]) + 1 if enough.size else None


def _class_options(counts: np.ndarray, i: int, chosen: np.ndarray, reach: np.ndarray,
                   deficit: int, room: int) -> List[Tuple[int, ...]]:
    """
    Inclusion-minimal sets of at most room new colours giving class i deficit more vertices.

    Colours no other free class holds only matter through their count in i,
    so those are taken largest first after each subset of the shared ones.
    """
    if deficit <= 0:
        return [()]
    present = counts[i] > 0
    own = np.flatnonzero(present & ~chosen)
    elsewhere = reach - present.astype(np.int64)
    shared = [int(c) for c in own if elsewhere[c] > 0]
    private = sorted((int(c) for c in own if elsewhere[c] == 0), key=lambda c: (-int(counts[i, c]), c))

    options: List[Tuple[int, ...]] = []
    for size in range(min(len(shared), room) + 1):
        for picked in combinations(shared, size):
            need = deficit - int(counts[i, list(picked)].sum())
            fill: List[int] = []
            for c in private:
                if need <= 0:
                    break
                fill.append(c)
                need -= int(counts[i, c])
            option = picked + tuple(fill)
            if need > 0 or len(option) > room:
                continue
            if any(set(o) <= set(option) for o in options):
                continue
            options.append(option)
    return options


def min_distinct_colours(
    counts: np.ndarray,
    parts: np.ndarray,
    below: Optional[int] = None,
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """
    Fewest distinct colours on one edge and a 0-based colour set achieving it.

    Branch and bound: parts are placed largest first on unused classes, equal
    parts on increasing class indices. A class already covered by the chosen
    colours adds none; otherwise it adds an inclusion-minimal set of its other
    colours. A branch is cut when the chosen colours plus _further_colours
    cannot beat the best edge found.

    With below, the first edge using fewer than below colours is returned and
    None means every edge uses at least below. Without it the minimum is exact.
    Returns None when there is no edge.
    """
    if _edgeless(counts, parts):
        return None
    hits = monochromatic_colours(counts, parts)
    if hits.size:
        return (1, (int(hits[0]),)) if below is None or below > 1 else None

    n, k = counts.shape
    palette = int(np.count_nonzero(counts.sum(axis=0)))
    ceiling = min(int(parts.sum()), palette) + 1
    if below is not None:
        ceiling = min(ceiling, below)
    # without a monochromatic edge two colours is the floor
    if ceiling <= 2:
        return None

    parts_list = [int(p) for p in parts]
    held = np.zeros(n, dtype=np.int64)
    chosen = np.zeros(k, dtype=bool)
    free = np.ones(n, dtype=bool)
    best: Dict[str, object] = {'value': ceiling, 'colours': None}

    def record(value: int) -> None:
        best['value'] = value
        best['colours'] = tuple(int(c) for c in np.flatnonzero(chosen))
        if value <= 2 or below is not None:
            raise _StopSearch()

    def descend(idx: int, last_class: int) -> None:
        nonlocal held
        used = int(np.count_nonzero(chosen))
        rest = parts_list[idx:]
        further = _further_colours(counts, held, free, chosen, rest)
        if further is None or used + further >= best['value']:
            return
        if further == 0:
            record(used)
            return

        part = rest[0]
        first = last_class + 1 if idx > 0 and parts_list[idx - 1] == part else 0
        room = int(best['value']) - used - 1
        reach = np.count_nonzero(counts[free], axis=0)
        moves = []
        for i in range(first, n):
            if free[i]:
                for option in _class_options(counts, i, chosen, reach, part - int(held[i]), room):
                    moves.append((len(option), i, option))
        moves.sort()

        for size, i, option in moves:
            if used + size >= best['value']:
                break
            colours = list(option)
            added = counts[:, colours].sum(axis=1)
            free[i] = False
            chosen[colours] = True
            held += added
            try:
                descend(idx + 1, i)
            finally:
                held -= added
                chosen[colours] = False
                free[i] = True

    try:
        descend(0, -1)
    except _StopSearch:
        pass
    if best['colours'] is None:
        return None
    return int(best['value']), best['colours']


def distinct_colour_range(profile: ClassProfile, sigma: Partition) -> DistinctRange:
    """Exact fewest and most distinct colours over all edges; None/None when edgeless."""
    parts = _parts_array(sigma)
    counts = profile.counts
    if _edgeless(counts, parts):
        return DistinctRange(None, None)
    low = min_distinct_colours(counts, parts)
    high = max_distinct_colours(counts, parts)
    return DistinctRange(min_distinct=low[0], max_distinct=high.value)


def _slots_with(col: Colouring, cls: int, colours: set, amount: int) -> List[int]:
    return [slot for slot, c in enumerate(col.classes[cls]) if c in colours][:amount]


def _edge_from_subset(col: Colouring, counts: np.ndarray, parts: np.ndarray,
                      colours: Tuple[int, ...]) -> EdgeWitness:
    totals = counts[:, list(colours)].sum(axis=1)
    order = _assign_parts(totals, parts)
    wanted = {c + 1 for c in colours}
    vertices = []
    for cls, part in zip(order, parts):
        vertices.extend(VertexRef(int(cls), slot) for slot in _slots_with(col, int(cls), wanted, int(part)))
    vertices.sort()
    return EdgeWitness(tuple(vertices), tuple(col.colour_of(v) for v in vertices))


def _edge_from_matching(col: Colouring, best: MaxDistinct) -> EdgeWitness:
    vertices = []
    for pos, (cls, part) in enumerate(best.assignment):
        row = col.classes[cls]
        chosen = []
        for colour in sorted(c for c, holder in best.matched.items() if holder == pos):
            chosen.append(row.index(colour + 1))
        for slot in range(len(row)):
            if len(chosen) >= part:
                break
            if slot not in chosen:
                chosen.append(slot)
        vertices.extend(VertexRef(cls, slot) for slot in sorted(chosen))
    vertices.sort()
    return EdgeWitness(tuple(vertices), tuple(col.colour_of(v) for v in vertices))


def check_fast(inst: SigmaInstance, col: Colouring, bounds: ColourBounds) -> Verdict:
    """
    Decide whether every edge carries between alpha and beta distinct colours.

    Only the thresholds that matter are tested: a fewest-colours search stopped
    at the first edge under alpha for the lower bound, and a rainbow search
    stopped at beta + 1 for the upper one.
    """
    col.check_shape(inst)
    bounds.validate_for(inst.r)
    if inst.degenerate:
        return Verdict(status=VerdictStatus.VALID, degenerate=True)

    counts = build_profile(inst, col).counts
    parts = _parts_array(inst.sigma)

    if bounds.alpha >= 2:
        low = min_distinct_colours(counts, parts, below=bounds.alpha)
        if low is not None:
            witness = _edge_from_subset(col, counts, parts, low[1])
            status = violation_status("min", len(set(witness.colours)), bounds, inst.r)
            return Verdict(status=status, witness=witness)

    if bounds.beta < inst.r:
        high = max_distinct_colours(counts, parts, stop=bounds.beta + 1)
        if high is not None and high.value > bounds.beta:
            status = violation_status("max", high.value, bounds, inst.r)
            return Verdict(status=status, witness=_edge_from_matching(col, high))

    return Verdict(status=VerdictStatus.VALID)
