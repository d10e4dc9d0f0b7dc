"""Integer-partition arithmetic and instance validation."""

from typing import Generator, Iterable, Tuple

from core.constants import ConditionNames
from core.errors import PartitionError
from core.logger import get_logger
from core.models import Partition, ValidationResult

logger = get_logger(__name__)


def normalize_partition(raw_parts: Iterable[int]) -> Partition:
    """
    Canonicalise raw parts into a Partition (non-increasing storage order).

    Args:
        raw_parts: Parts in any order

    Returns:
        Partition with the same multiset of parts

    Raises:
        PartitionError: on an empty list or a non-positive entry
    """
    parts = list(raw_parts)
    if not parts:
        raise PartitionError("partition has no parts", [(ConditionNames.NON_EMPTY, "empty list")])
    bad = [p for p in parts if isinstance(p, bool) or not isinstance(p, int) or p < 1]
    if bad:
        raise PartitionError(
            f"partition parts must be positive integers, got {bad}",
            [(ConditionNames.PARTS_POSITIVE, f"offending entries {bad}")],
        )
    return Partition(tuple(sorted(parts, reverse=True)))


def parse_partition(text: str) -> Partition:
    """Parse a comma-separated list such as '1,2' or '2,1,1'."""
    try:
        parts = [int(chunk) for chunk in text.replace(" ", "").split(",") if chunk]
    except ValueError as exc:
        raise PartitionError(f"cannot parse partition '{text}'",
                             [(ConditionNames.PARTS_POSITIVE, str(exc))]) from exc
    return normalize_partition(parts)


def partition_stats(sigma: Partition) -> Tuple[int, int, int]:
    """Return (delta_max, delta_min, s) of sigma."""
    return sigma.delta_max, sigma.delta_min, sigma.s


def validate_instance(n: int, r: int, q: int, sigma: Partition) -> ValidationResult:
    """
    Gatekeeper for H(n,r,q|sigma).

    Every violated condition is reported on its own. A valid instance on which
    no r-subset can realise sigma (delta_max > q or s > n) is accepted and
    flagged degenerate.
    """
    violations = []
    if n < 1:
        violations.append((ConditionNames.N_POSITIVE, f"n={n}"))
    if q < 1:
        violations.append((ConditionNames.Q_POSITIVE, f"q={q}"))
    if r < 3:
        violations.append((ConditionNames.R_AT_LEAST_3, f"r={r}"))
    if sigma.r != r:
        violations.append((ConditionNames.SIGMA_SUMS_TO_R, f"sum{list(sigma.parts)}={sigma.r}, r={r}"))
    if sigma.s < 2:
        violations.append((ConditionNames.TWO_PARTS, f"s(sigma)={sigma.s}"))

    if violations:
        logger.debug(f"Instance rejected: {violations}")
        return ValidationResult(valid=False, violations=violations)

    degenerate = sigma.delta_max > q or sigma.s > n
    return ValidationResult(valid=True, degenerate=degenerate)


def _ascending_partitions(n: int, pivot: int = 1) -> Generator[Tuple[int, ...], None, None]:
    yield (n,)
    for i in range(pivot, n // 2 + 1):
        for rest in _ascending_partitions(n - i, pivot=i):
            yield (i,) + rest


def enumerate_partitions(r: int, min_parts: int = 1) -> Generator[Partition, None, None]:
    """
    Yield every partition of r with at least min_parts parts.

    Order: by number of parts, then lexicographically descending.
    """
    if r < 1:
        raise PartitionError(f"cannot partition r={r}", [(ConditionNames.PARTS_POSITIVE, f"r={r}")])
    found = [tuple(reversed(p)) for p in _ascending_partitions(r)]
    found.sort(key=lambda parts: (len(parts), [-p for p in parts]))
    for parts in found:
        if len(parts) >= min_parts:
            yield Partition(parts)
