"""
Re-colouring moves that keep an NMNR colouring valid when delta_min(sigma) >= 2,
and a greedy walk through the spectrum built from them.

Both moves give some vertices a fresh colour (largest colour + 1) and then
relabel to 1..k. The walk is a heuristic explorer: where it stops says
nothing about colourability.
"""

from typing import List, Optional, Tuple

from core.constants import ConditionNames, SearchDefaults
from core.errors import PreconditionError, SearchInvariantError
from core.logger import get_logger
from core.models import (
    Colouring,
    ColourBounds,
    SigmaInstance,
    WalkDirection,
    WalkRule,
    WalkStep,
    WalkTerminal,
    WalkTrace,
)
from core.profile_checker import check_fast

logger = get_logger(__name__)


def _require_lemma_hypotheses(inst: SigmaInstance, col: Colouring) -> None:
    col.check_shape(inst)
    if inst.sigma.delta_min < 2:
        raise PreconditionError(
            f"re-colouring needs delta_min(sigma) >= 2, {inst.label()} has {inst.sigma.delta_min}",
            condition=ConditionNames.DELTA_MIN_2,
        )
    if inst.sigma.s < 2:
        raise PreconditionError("re-colouring needs s(sigma) >= 2", condition=ConditionNames.TWO_PARTS)
    verdict = check_fast(inst, col, ColourBounds.nmnr(inst.r))
    if not verdict.valid:
        raise PreconditionError(
            f"start colouring is not NMNR-valid: {verdict.status.value}",
            condition=ConditionNames.VALID_START,
        )


def _require_class(inst: SigmaInstance, class_index: int) -> None:
    if not 0 <= class_index < inst.n:
        raise PreconditionError(f"class index {class_index} outside 0..{inst.n - 1}",
                                condition="class index in range")


def private_colours(col: Colouring, class_index: int) -> List[int]:
    """Colours of the class that appear in no other class, ascending."""
    elsewhere = {c for i, row in enumerate(col.classes) if i != class_index for c in row}
    return sorted(set(col.classes[class_index]) - elsewhere)


def _collapse(col: Colouring, class_index: int) -> Colouring:
    fresh = col.k + 1
    rows = list(col.classes)
    rows[class_index] = (fresh,) * col.q
    return Colouring.from_raw(rows)


def _merge(col: Colouring, class_index: int, x: int, y: int) -> Colouring:
    fresh = col.k + 1
    rows = list(col.classes)
    rows[class_index] = tuple(fresh if c in (x, y) else c for c in rows[class_index])
    return Colouring.from_raw(rows)


def collapse_class(inst: SigmaInstance, col: Colouring, class_index: int) -> Colouring:
    """
    Recolour every vertex of one class with a single fresh colour.

    The result uses k - p + 1 colours where p is the number of colours
    private to the class.
    """
    _require_lemma_hypotheses(inst, col)
    _require_class(inst, class_index)
    return _collapse(col, class_index)


def merge_private_colours(inst: SigmaInstance, col: Colouring, class_index: int, x: int, y: int) -> Colouring:
    """Replace two colours private to one class by one fresh colour (k-1 colours after)."""
    _require_lemma_hypotheses(inst, col)
    _require_class(inst, class_index)
    if x == y:
        raise PreconditionError(f"merge needs two different colours, got x=y={x}",
                                condition=ConditionNames.DISTINCT_COLOURS)
    row = col.classes[class_index]
    missing = [c for c in (x, y) if c not in row]
    if missing:
        raise PreconditionError(f"colours {missing} do not occur in class {class_index}",
                                condition=ConditionNames.PRIVATE_COLOURS, offending=[class_index])
    offending = [i for i, other in enumerate(col.classes)
                 if i != class_index and (x in other or y in other)]
    if offending:
        raise PreconditionError(
            f"colours {x},{y} are not private to class {class_index}; also used by classes {offending}",
            condition=ConditionNames.PRIVATE_COLOURS,
            offending=offending,
        )
    return _merge(col, class_index, x, y)


def _next_move(col: Colouring, direction: WalkDirection) -> Optional[Tuple[WalkRule, int, Tuple[int, ...]]]:
    """
    Pick the move for one walk step.

    DOWN merges the two smallest private colours of a class holding two or
    more; UP collapses a class whose colours all occur elsewhere. Both fall
    back to collapsing a class with exactly one private colour, which keeps k.
    """
    # Each rule takes the lowest-index class that satisfies it, which need not
    # be the lowest-index class that is not monochromatic.
    mixed = [i for i, row in enumerate(col.classes) if len(set(row)) > 1]
    private = {i: private_colours(col, i) for i in mixed}

    if direction is WalkDirection.DOWN:
        for i in mixed:
            if len(private[i]) >= 2:
                return WalkRule.MERGE, i, tuple(private[i][:2])
    else:
        for i in mixed:
            if not private[i]:
                return WalkRule.COLLAPSE, i, tuple(sorted(set(col.classes[i])))

    for i in mixed:
        if len(private[i]) == 1:
            return WalkRule.COLLAPSE, i, tuple(sorted(set(col.classes[i])))
    return None


def spectrum_walk(
    inst: SigmaInstance,
    col: Colouring,
    direction: WalkDirection,
    target_k: int,
    step_limit: int = SearchDefaults.WALK_STEP_LIMIT,
) -> WalkTrace:
    """
    Apply re-colouring moves greedily toward target_k.

    Stops at the target, when no move applies, or after step_limit steps.
    Every colouring in the trace is checked NMNR-valid.
    """
    _require_lemma_hypotheses(inst, col)
    nmnr = ColourBounds.nmnr(inst.r)
    trace = WalkTrace(start=col, direction=direction, target_k=target_k)
    current = col

    while True:
        if current.k == target_k:
            trace.terminal = WalkTerminal.TARGET_REACHED
            break
        wrong_side = current.k < target_k if direction is WalkDirection.DOWN else current.k > target_k
        move = None if wrong_side else _next_move(current, direction)
        if move is None:
            trace.terminal = WalkTerminal.NO_RULE_APPLIES
            break
        if len(trace.steps) >= step_limit:
            trace.terminal = WalkTerminal.LIMIT
            break

        rule, class_index, colours = move
        if rule is WalkRule.MERGE:
            current = _merge(current, class_index, colours[0], colours[1])
        else:
            current = _collapse(current, class_index)

        verdict = check_fast(inst, current, nmnr)
        if not verdict.valid:
            raise SearchInvariantError(
                f"{rule.value} on class {class_index} of {inst.label()} gave {verdict.status.value}"
            )
        trace.steps.append(WalkStep(
            index=len(trace.steps) + 1,
            rule=rule,
            class_index=class_index,
            colours=colours,
            k=current.k,
            colouring=current,
        ))

    logger.debug(f"Walk {direction.value} on {inst.label()}: {len(trace.steps)} steps, {trace.terminal.value}")
    return trace
