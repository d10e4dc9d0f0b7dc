"""Spectrum engine: decide k-colourability and assemble full spectra."""

import asyncio
from typing import Dict, Iterable, List, Optional, Tuple

from core.config import SearchConfig, get_config
from core.constructions import applicable_constructions, zone_range
from core.errors import SearchInvariantError, ValidationError
from core.logger import get_logger, log_with_context
from core.models import (
    Colouring,
    ColourBounds,
    KStatus,
    KVerdict,
    SigmaInstance,
    SpectrumReport,
    VerdictSource,
    WalkDirection,
)
from core.profile_checker import check_fast
from core.recolour import spectrum_walk
from execution.canonical_search import CanonicalSearch
from monitoring.metrics import SearchMetrics

logger = get_logger(__name__)


def monochromatic_zone(inst: SigmaInstance) -> Optional[Tuple[int, int]]:
    """[ceil(n/(s-1)), n] when delta_max(sigma) > 1; None otherwise."""
    return zone_range(inst)


def degenerate_witness(inst: SigmaInstance, k: int) -> Colouring:
    """Vertex v (class-major) gets colour min(v+1, k): surjective onto 1..k."""
    flat = [min(v + 1, k) for v in range(inst.vertex_count)]
    return Colouring(tuple(tuple(flat[i * inst.q:(i + 1) * inst.q]) for i in range(inst.n)))


class SpectrumEngine:
    """Engine for per-k decisions and spectra."""

    def __init__(self, config: Optional[SearchConfig] = None, metrics: Optional[SearchMetrics] = None):
        """
        Initialize spectrum engine.

        Args:
            config: Search settings; defaults to the global configuration
            metrics: Collector for per-k records
        """
        self.config = config or get_config().search
        self.metrics = metrics or SearchMetrics()

    def monochromatic_zone(self, inst: SigmaInstance) -> Optional[Tuple[int, int]]:
        return monochromatic_zone(inst)

    def _check_k(self, inst: SigmaInstance, k: int, bounds: ColourBounds) -> None:
        bounds.validate_for(inst.r)
        if not 1 <= k <= inst.vertex_count:
            raise ValidationError(f"k={k} outside 1..nq={inst.vertex_count}",
                                  [("1 <= k <= nq", f"k={k}, nq={inst.vertex_count}")])

    def decide_k(
        self,
        inst: SigmaInstance,
        k: int,
        bounds: ColourBounds,
        budget: Optional[int] = None,
    ) -> KVerdict:
        """
        Is there a valid colouring of inst using exactly k colours?

        Args:
            inst: Instance
            k: Number of colours, 1 <= k <= nq
            bounds: (alpha, beta) with beta <= r
            budget: Search-node limit; defaults to search.node_budget

        Returns:
            YES with a witness, NO after exhausting the canonical search, or
            UNKNOWN when the budget ran out
        """
        self._check_k(inst, k, bounds)
        budget = self.config.node_budget if budget is None else budget
        if budget < 1:
            raise ValidationError(f"budget must be positive, got {budget}", [("budget > 0", str(budget))])

        with self.metrics.timer() as clock:
            if inst.degenerate:
                verdict = KVerdict(k=k, status=KStatus.YES, witness=degenerate_witness(inst, k),
                                   source=VerdictSource.DEGENERATE)
            else:
                outcome = CanonicalSearch(inst, k, bounds, budget).run()
                witness = outcome.colouring()
                if witness is not None and not check_fast(inst, witness, bounds).valid:
                    raise SearchInvariantError(f"search witness for k={k} on {inst.label()} does not check")
                if outcome.exhausted:
                    status = KStatus.UNKNOWN
                else:
                    status = KStatus.YES if witness is not None else KStatus.NO
                verdict = KVerdict(k=k, status=status, witness=witness, nodes_explored=outcome.nodes,
                                   budget_exhausted=outcome.exhausted)

        self.metrics.record(inst.label(), k, verdict.status.value, verdict.source.value,
                            verdict.nodes_explored, clock['seconds'])
        return verdict

    async def decide_k_async(self, inst: SigmaInstance, k: int, bounds: ColourBounds,
                             budget: Optional[int] = None) -> KVerdict:
        return await asyncio.to_thread(self.decide_k, inst, k, bounds, budget)

    def fast_verdicts(self, inst: SigmaInstance, bounds: ColourBounds, ks: Iterable[int]) -> Dict[int, KVerdict]:
        """
        YES answers available without search.

        Constructions whose hypotheses hold are re-checked under the requested
        bounds. For NMNR bounds with delta_min >= 2, every witness also seeds
        walks up and down and each colouring they pass through is kept.
        """
        wanted = set(ks)
        found: Dict[int, KVerdict] = {}
        if not wanted or inst.degenerate:
            return found

        if self.config.use_constructions:
            for scheme, _, col in applicable_constructions(inst):
                if col.k in wanted and col.k not in found and check_fast(inst, col, bounds).valid:
                    found[col.k] = KVerdict(k=col.k, status=KStatus.YES, witness=col,
                                            source=VerdictSource.CONSTRUCTION, scheme=scheme.value)

        if self.config.use_walks and inst.sigma.delta_min >= 2 and bounds.is_nmnr(inst.r):
            seeds = [v.witness for _, v in sorted(found.items())]
            for seed in seeds:
                for direction, target in ((WalkDirection.DOWN, min(wanted)), (WalkDirection.UP, max(wanted))):
                    trace = spectrum_walk(inst, seed, direction, target, self.config.walk_step_limit)
                    for step in trace.steps:
                        if step.k in wanted and step.k not in found:
                            found[step.k] = KVerdict(k=step.k, status=KStatus.YES, witness=step.colouring,
                                                     source=VerdictSource.WALK)
        return found

    def _resolve_range(self, inst: SigmaInstance, bounds: ColourBounds,
                       k_min: int, k_max: Optional[int]) -> Tuple[int, int]:
        bounds.validate_for(inst.r)
        k_max = inst.vertex_count if k_max is None else k_max
        if not 1 <= k_min <= k_max <= inst.vertex_count:
            raise ValidationError(
                f"k range [{k_min},{k_max}] must lie inside [1,{inst.vertex_count}]",
                [("1 <= k_min <= k_max <= nq", f"[{k_min},{k_max}], nq={inst.vertex_count}")],
            )
        return k_min, k_max

    def _report(self, inst: SigmaInstance, bounds: ColourBounds, k_min: int, k_max: int,
                verdicts: Dict[int, KVerdict]) -> SpectrumReport:
        report = SpectrumReport(instance=inst, bounds=bounds,
                                verdicts=[verdicts[k] for k in range(k_min, k_max + 1)],
                                k_min=k_min, k_max=k_max)
        log_with_context(
            logger, "info", "Spectrum computed",
            instance=inst.label(), bounds=bounds.label(), spectrum=report.spectrum,
            gaps=report.gaps, complete=report.complete, nodes=report.total_nodes,
        )
        return report

    def compute_spectrum(
        self,
        inst: SigmaInstance,
        bounds: ColourBounds,
        k_max: Optional[int] = None,
        budget: Optional[int] = None,
        k_min: int = 1,
    ) -> SpectrumReport:
        """
        Decide every k in [k_min, k_max] (default [1, nq]), ascending.

        Constructions and walks answer what they can; the rest is searched.
        """
        k_min, k_max = self._resolve_range(inst, bounds, k_min, k_max)
        ks = range(k_min, k_max + 1)
        verdicts = self.fast_verdicts(inst, bounds, ks)
        for k, verdict in verdicts.items():
            self.metrics.record(inst.label(), k, verdict.status.value, verdict.source.value, 0, 0.0)
        for k in ks:
            if k not in verdicts:
                verdicts[k] = self.decide_k(inst, k, bounds, budget)
        return self._report(inst, bounds, k_min, k_max, verdicts)

    async def compute_spectrum_async(
        self,
        inst: SigmaInstance,
        bounds: ColourBounds,
        k_max: Optional[int] = None,
        budget: Optional[int] = None,
        k_min: int = 1,
    ) -> SpectrumReport:
        """Same report as compute_spectrum, with searches for different k run concurrently."""
        k_min, k_max = self._resolve_range(inst, bounds, k_min, k_max)
        ks = range(k_min, k_max + 1)
        verdicts = self.fast_verdicts(inst, bounds, ks)
        semaphore = asyncio.Semaphore(self.config.max_concurrent_searches)

        async def bounded(k: int) -> KVerdict:
            async with semaphore:
                return await self.decide_k_async(inst, k, bounds, budget)

        pending: List[int] = [k for k in ks if k not in verdicts]
        for verdict in await asyncio.gather(*(bounded(k) for k in pending)):
            verdicts[verdict.k] = verdict
        return self._report(inst, bounds, k_min, k_max, verdicts)
