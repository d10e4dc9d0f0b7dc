"""
Symmetry-reduced exhaustive search for colourings with exactly k colours.

A colouring is held as one colour-count vector per class. Rows are generated
in non-increasing lexicographic order and every row introduces unseen colours
only as the next contiguous block, with non-increasing counts inside the block.
Each orbit under colour relabelling and class permutation keeps its
lexicographically greatest member, and that member obeys both rules, so an
exhausted search is a proof of NO.

A branch is cut as soon as the classes placed so far contain a violating edge
(edges among placed classes never change) or too few classes remain to bring
in the missing colours.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from core.logger import get_component_logger
from core.models import Colouring, ColourBounds, SigmaInstance
from core.profile_checker import (
    max_distinct_colours,
    min_distinct_colours,
    monochromatic_colours,
)

Row = Tuple[int, ...]


class BudgetExhausted(Exception):
    """Raised inside the search when the node budget runs out."""


@dataclass
class SearchOutcome:
    """Witness rows (None when none exists or the budget ran out) and the node count."""
    rows: Optional[List[Row]]
    nodes: int
    exhausted: bool

    def colouring(self) -> Optional[Colouring]:
        if self.rows is None:
            return None
        return Colouring(tuple(
            tuple(colour + 1 for colour, count in enumerate(row) for _ in range(count))
            for row in self.rows
        ))


def _weak_compositions(total: int, length: int) -> Iterator[Row]:
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _weak_compositions(total - head, length - 1):
            yield (head,) + tail


def _blocks(total: int, largest: int, room: int) -> Iterator[Row]:
    """Non-increasing positive tuples summing to total, at most room entries."""
    if total == 0:
        yield ()
        return
    if room == 0:
        return
    for head in range(min(total, largest), 0, -1):
        for tail in _blocks(total - head, head, room - 1):
            yield (head,) + tail


class CanonicalSearch:
    """One decide-k search over canonical class-count tables."""

    def __init__(self, inst: SigmaInstance, k: int, bounds: ColourBounds, budget: int):
        self.inst = inst
        self.k = k
        self.bounds = bounds
        self.budget = budget
        self.parts = np.asarray(inst.sigma.parts, dtype=np.int64)
        self.counts = np.zeros((inst.n, k), dtype=np.int64)
        self.rows: List[Row] = []
        self.nodes = 0
        self._candidates: Dict[Tuple[Optional[Row], int], List[Tuple[Row, int]]] = {}
        self.logger = get_component_logger(__name__, instance=inst.label(), k=k)

    def candidates(self, prev: Optional[Row], used: int) -> List[Tuple[Row, int]]:
        """Rows allowed after prev when colours 1..used are already in play, largest first."""
        key = (prev, used)
        cached = self._candidates.get(key)
        if cached is not None:
            return cached

        q, k = self.inst.q, self.k
        found: List[Tuple[Row, int]] = []
        for fresh in range(q + 1):
            for old in _weak_compositions(q - fresh, used):
                for block in _blocks(fresh, fresh, k - used):
                    row = old + block + (0,) * (k - used - len(block))
                    if prev is None or row <= prev:
                        found.append((row, used + len(block)))
        found.sort(reverse=True)
        self._candidates[key] = found
        return found

    def violates(self, i: int, row: Row) -> bool:
        """Does placing row at class i create a violating edge among classes 0..i?"""
        if i + 1 < self.inst.sigma.s:
            return False
        partial = self.counts[: i + 1]
        if self.bounds.alpha >= 2:
            support = [c for c, m in enumerate(row) if m]
            if monochromatic_colours(partial, self.parts, support).size:
                return True
            if self.bounds.alpha > 2:
                if min_distinct_colours(partial, self.parts, below=self.bounds.alpha) is not None:
                    return True
        if self.bounds.beta < self.inst.r:
            best = max_distinct_colours(partial, self.parts, anchor=i, stop=self.bounds.beta + 1)
            if best is not None and best.value > self.bounds.beta:
                return True
        return False

    def _place(self, i: int, used: int) -> bool:
        n, q = self.inst.n, self.inst.q
        if i == n:
            return used == self.k
        prev = self.rows[-1] if self.rows else None
        spare = n - i - 1
        for row, now_used in self.candidates(prev, used):
            if self.k - now_used > spare * q:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted()
            self.counts[i] = row
            if not self.violates(i, row):
                self.rows.append(row)
                if self._place(i + 1, now_used):
                    return True
                self.rows.pop()
            self.counts[i] = 0
        return False

    def run(self) -> SearchOutcome:
        """Search until the first witness, exhaustion, or the budget."""
        self.logger.debug("Canonical search started")
        try:
            found = self._place(0, 0)
        except BudgetExhausted:
            self.logger.warning(f"Node budget {self.budget} exhausted")
            return SearchOutcome(rows=None, nodes=self.budget, exhausted=True)
        self.logger.debug(f"Canonical search finished after {self.nodes} nodes, found={found}")
        return SearchOutcome(rows=list(self.rows) if found else None, nodes=self.nodes, exhausted=False)
