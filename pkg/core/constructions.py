"""
Explicit colourings with known validity.

Every scheme checks its own output with check_fast under the scheme's bounds
before returning it; a failure is a ConstructionError, never a silent result.
"""

from math import ceil
from typing import List, Optional, Tuple

from core.errors import ConstructionError, PreconditionError
from core.logger import get_logger
from core.models import Colouring, ColourBounds, SchemeId, SigmaInstance
from core.profile_checker import check_fast

logger = get_logger(__name__)

SMALL_R_SCHEMES = {
    SchemeId.SMALL_R4_K3: (4, 3),
    SchemeId.SMALL_R5_K3: (5, 3),
    SchemeId.SMALL_R5_K4: (5, 4),
}
TWO_TWO_SCHEMES = (SchemeId.TWO_TWO_LOW, SchemeId.TWO_TWO_HIGH)


def zone_range(inst: SigmaInstance) -> Optional[Tuple[int, int]]:
    """[ceil(n/(s-1)), n] when delta_max > 1, else None."""
    sigma = inst.sigma
    if sigma.delta_max <= 1 or sigma.s < 2:
        return None
    return ceil(inst.n / (sigma.s - 1)), inst.n


def is_sigma_2n(inst: SigmaInstance) -> bool:
    """H(2n,r) = H(n,r,2|(2,1^{r-2}))."""
    return inst.q == 2 and inst.sigma.parts == (2,) + (1,) * (inst.r - 2)


def is_all_ones(inst: SigmaInstance) -> bool:
    """H(n,r,q|(1^r)): every edge takes one vertex from each of r classes."""
    return inst.sigma.delta_max == 1


def is_two_two(inst: SigmaInstance) -> bool:
    """H(n,4,2|(2,2))."""
    return inst.q == 2 and inst.sigma.parts == (2, 2)


def small_r_threshold(r: int) -> int:
    """Smallest n for which the H(2n,r) statements are made: 2(r-2)(r-1)+1."""
    return 2 * (r - 2) * (r - 1) + 1


def scheme_bounds(scheme: SchemeId, inst: SigmaInstance) -> ColourBounds:
    if scheme in TWO_TWO_SCHEMES:
        return ColourBounds(2, 2)
    return ColourBounds.nmnr(inst.r)


def _checked(inst: SigmaInstance, classes, scheme: SchemeId, expected_k: int) -> Colouring:
    col = Colouring(tuple(tuple(row) for row in classes))
    if col.k != expected_k:
        raise ConstructionError(f"{scheme.value} on {inst.label()} used {col.k} colours, expected {expected_k}")
    verdict = check_fast(inst, col, scheme_bounds(scheme, inst))
    if not verdict.valid:
        logger.error(f"{scheme.value} on {inst.label()} failed its check: {verdict.status.value}")
        raise ConstructionError(
            f"{scheme.value} colouring of {inst.label()} is not valid: {verdict.status.value}"
        )
    return col


def zone_colouring(inst: SigmaInstance, k: int) -> Colouring:
    """
    Monochromatic classes, colour i on a block of consecutive classes.

    Blocks are balanced: the first n mod k colours take one class more. No
    block exceeds s-1 classes, so no edge is monochromatic, and the class that
    takes the largest part repeats a colour, so no edge is rainbow.
    """
    zone = zone_range(inst)
    if zone is None:
        raise PreconditionError(f"{inst.label()} has delta_max(sigma) = 1, no monochromatic zone",
                                condition="delta_max(sigma) > 1")
    lo, hi = zone
    if not lo <= k <= hi:
        raise PreconditionError(f"k={k} outside the monochromatic zone [{lo},{hi}]",
                                condition="k in monochromatic zone")
    base, extra = divmod(inst.n, k)
    classes = []
    for colour in range(1, k + 1):
        size = base + (1 if colour <= extra else 0)
        classes.extend([(colour,) * inst.q] * size)
    return _checked(inst, classes, SchemeId.ZONE, k)


def block_colouring(inst: SigmaInstance) -> Colouring:
    """Each class holds colours 1..r-1, each delta_max-1 times, ascending."""
    sigma = inst.sigma
    if not sigma.delta_min == 1 < sigma.delta_max:
        raise PreconditionError(f"{inst.label()} needs delta_min = 1 < delta_max",
                                condition="delta_min(sigma) = 1 < delta_max(sigma)")
    repeat = sigma.delta_max - 1
    if inst.q != (inst.r - 1) * repeat:
        raise PreconditionError(f"{inst.label()} needs q = (r-1)(delta_max-1) = {(inst.r - 1) * repeat}",
                                condition="q = (r-1)(delta_max-1)")
    row = tuple(colour for colour in range(1, inst.r) for _ in range(repeat))
    return _checked(inst, [row] * inst.n, SchemeId.BLOCK, inst.r - 1)


def two_zone_colouring(inst: SigmaInstance, t: int) -> Colouring:
    """
    H(2n,r), r >= 6: classes 0..t-1 get fresh pairs, the rest {1,2}.

    Uses 2+2t colours for 0 <= t <= r-4.
    """
    if not is_sigma_2n(inst) or inst.r < 6:
        raise PreconditionError(f"{inst.label()} is not H(2n,r) with r >= 6", condition="H(2n,r), r >= 6")
    if not 0 <= t <= inst.r - 4:
        raise PreconditionError(f"t={t} outside [0, r-4={inst.r - 4}]", condition="0 <= t <= r-4")
    if inst.n <= t:
        raise PreconditionError(f"t={t} needs n > t, got n={inst.n}", condition="n > t")
    classes = [(3 + 2 * i, 4 + 2 * i) for i in range(t)]
    classes += [(1, 2)] * (inst.n - t)
    return _checked(inst, classes, SchemeId.TWO_ZONE, 2 + 2 * t)


def small_r_colouring(inst: SigmaInstance, scheme: SchemeId) -> Colouring:
    """All classes {1,2} except the last one (or two) made monochromatic in 3 (and 4)."""
    if scheme not in SMALL_R_SCHEMES:
        raise PreconditionError(f"{scheme.value} is not a small-r scheme", condition="small-r scheme")
    r, k = SMALL_R_SCHEMES[scheme]
    if inst.r != r or not is_sigma_2n(inst):
        raise PreconditionError(f"{scheme.value} needs H(2n,{r}), got {inst.label()}",
                                condition=f"H(2n,{r})")
    if inst.n < small_r_threshold(r):
        raise PreconditionError(f"{scheme.value} needs n >= {small_r_threshold(r)}, got n={inst.n}",
                                condition=f"n >= {small_r_threshold(r)}")
    special = [(c, c) for c in range(3, k + 1)]
    classes = [(1, 2)] * (inst.n - len(special)) + special
    return _checked(inst, classes, scheme, k)


def two_two_colouring(inst: SigmaInstance, scheme: SchemeId) -> Colouring:
    """H(n,4,2|(2,2)): LOW colours every class {1,2}; HIGH gives class i colour i+1."""
    if scheme not in TWO_TWO_SCHEMES:
        raise PreconditionError(f"{scheme.value} is not a (2,2) scheme", condition="(2,2) scheme")
    if not is_two_two(inst) or inst.n < 4:
        raise PreconditionError(f"{scheme.value} needs H(n,4,2|(2,2)) with n >= 4, got {inst.label()}",
                                condition="H(n,4,2|(2,2)), n >= 4")
    if scheme is SchemeId.TWO_TWO_LOW:
        return _checked(inst, [(1, 2)] * inst.n, scheme, 2)
    return _checked(inst, [(i + 1, i + 1) for i in range(inst.n)], scheme, inst.n)


def construct(inst: SigmaInstance, scheme: SchemeId, param: Optional[int] = None) -> Colouring:
    """Dispatch by scheme; param is k for ZONE and t for TWO_ZONE."""
    if scheme is SchemeId.ZONE:
        if param is None:
            raise PreconditionError("ZONE needs k", condition="k given")
        return zone_colouring(inst, param)
    if scheme is SchemeId.BLOCK:
        return block_colouring(inst)
    if scheme is SchemeId.TWO_ZONE:
        if param is None:
            raise PreconditionError("TWO_ZONE needs t", condition="t given")
        return two_zone_colouring(inst, param)
    if scheme in SMALL_R_SCHEMES:
        return small_r_colouring(inst, scheme)
    return two_two_colouring(inst, scheme)


def applicable_constructions(inst: SigmaInstance) -> List[Tuple[SchemeId, Optional[int], Colouring]]:
    """Every (scheme, parameter, colouring) whose hypotheses hold for inst."""
    attempts: List[Tuple[SchemeId, Optional[int]]] = []
    zone = zone_range(inst)
    if zone is not None:
        attempts.extend((SchemeId.ZONE, k) for k in range(zone[0], zone[1] + 1))
    attempts.append((SchemeId.BLOCK, None))
    if is_sigma_2n(inst) and inst.r >= 6:
        attempts.extend((SchemeId.TWO_ZONE, t) for t in range(0, inst.r - 3))
    if is_sigma_2n(inst):
        attempts.extend((scheme, None) for scheme in SMALL_R_SCHEMES)
    if is_two_two(inst):
        attempts.extend((scheme, None) for scheme in TWO_TWO_SCHEMES)

    built = []
    for scheme, param in attempts:
        try:
            built.append((scheme, param, construct(inst, scheme, param)))
        except PreconditionError:
            continue
    return built
