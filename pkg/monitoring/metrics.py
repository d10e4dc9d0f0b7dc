"""
Search metrics for sigma-spectra.
Tracks per-k node counts, wall time and the source of each answer.
"""

import time
from collections import Counter, deque
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Deque, Dict, Iterator, List, Optional

from core.logger import get_logger, log_with_context

logger = get_logger(__name__)


@dataclass
class SearchRecord:
    """One answered k."""
    instance: str
    k: int
    status: str
    source: str
    nodes: int
    seconds: float


class SearchMetrics:
    """
    Collects per-k search records.

    Wall times are kept here and in logs only; reports carry the deterministic
    node counts.
    """

    def __init__(self, max_history: int = 10_000):
        self.records: Deque[SearchRecord] = deque(maxlen=max_history)

    def record(self, instance: str, k: int, status: str, source: str, nodes: int, seconds: float) -> None:
        entry = SearchRecord(instance, k, status, source, nodes, seconds)
        self.records.append(entry)
        log_with_context(logger, "debug", "k answered", **entry.__dict__)

    @contextmanager
    def timer(self) -> Iterator[Dict[str, float]]:
        """Yield a dict whose 'seconds' entry is filled when the block exits."""
        box = {'seconds': 0.0}
        started = time.perf_counter()
        try:
            yield box
        finally:
            box['seconds'] = time.perf_counter() - started

    def for_instance(self, instance: str) -> List[SearchRecord]:
        return [r for r in self.records if r.instance == instance]

    def get_summary(self, instance: Optional[str] = None) -> Dict[str, Any]:
        """
        Summarise the records, optionally for one instance.

        Returns:
            Totals of nodes and seconds plus counts per status and source
        """
        records = self.for_instance(instance) if instance else list(self.records)
        return {
            'answered': len(records),
            'total_nodes': sum(r.nodes for r in records),
            'total_seconds': round(sum(r.seconds for r in records), 6),
            'slowest_k': max(records, key=lambda r: r.seconds).k if records else None,
            'by_status': dict(Counter(r.status for r in records)),
            'by_source': dict(Counter(r.source for r in records)),
        }

    def reset(self) -> None:
        self.records.clear()
