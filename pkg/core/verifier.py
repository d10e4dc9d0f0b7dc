"""
Claims about sigma-hypergraph spectra, checked against computation.

predict_claims turns each known statement into a Claim with its hypotheses
evaluated on the instance; verify_instance computes the spectrum and grades
every active claim. A claim is only ever confirmed or refuted by computed
verdicts, never by its own statement.
"""

from math import ceil
from typing import List, Optional, Tuple

from core.constructions import is_all_ones, is_sigma_2n, is_two_two, small_r_threshold, zone_range
from core.logger import get_logger, log_with_context
from core.models import (
    Claim,
    ClaimKind,
    ClaimResult,
    ClaimStatus,
    ColourBounds,
    KSet,
    KStatus,
    SigmaInstance,
    SpectrumReport,
    SweepReport,
    VerificationReport,
)
from core.partition import enumerate_partitions
from execution.spectrum_engine import SpectrumEngine

logger = get_logger(__name__)

Preconditions = Tuple[Tuple[str, bool], ...]


class ClaimSource:
    """Tags naming the statement a claim comes from"""
    ALL_ONES = "all-ones-empty"
    ZONE = "monochromatic-zone"
    ONE_PART_GAP = "one-part-gap"
    SIGMA_2N = "sigma-2n"
    SIGMA_2N_SMALL_R = "sigma-2n-small-r"
    NO_GAP = "no-gap"
    TWO_TWO = "two-two-gap"


def _add(claims: List[Claim], source: str, kind: ClaimKind, k_set: KSet,
         preconditions: Preconditions, statement: str) -> None:
    if k_set.empty:
        return
    claims.append(Claim(source=source, kind=kind, k_set=k_set,
                        preconditions=preconditions, statement=statement))


def _one_part_gap_preconditions(inst: SigmaInstance) -> Preconditions:
    sigma, r = inst.sigma, inst.r
    return (
        ("n > r(s-1)+s", inst.n > r * (sigma.s - 1) + sigma.s),
        ("q = (r-1)(delta_max-1)", inst.q == (r - 1) * (sigma.delta_max - 1)),
    )


def _one_part_gap_applies(inst: SigmaInstance) -> bool:
    return inst.sigma.delta_min == 1 < inst.sigma.delta_max


def _nmnr_claims(inst: SigmaInstance) -> List[Claim]:
    claims: List[Claim] = []
    n, r, q, sigma = inst.n, inst.r, inst.q, inst.sigma
    nq = inst.vertex_count

    if is_all_ones(inst):
        _add(claims, ClaimSource.ALL_ONES, ClaimKind.EMPTY_SPECTRUM, KSet.interval(1, nq),
             (("n >= (r-1)^2+1", n >= (r - 1) ** 2 + 1),),
             "no NMNR colouring for any k")

    zone = zone_range(inst)
    if zone is not None:
        _add(claims, ClaimSource.ZONE, ClaimKind.COLOURABLE, KSet.interval(*zone),
             (("delta_max(sigma) > 1", True),),
             "k-colourable for every k in [ceil(n/(s-1)), n]")

    if _one_part_gap_applies(inst):
        pre = _one_part_gap_preconditions(inst)
        _add(claims, ClaimSource.ONE_PART_GAP, ClaimKind.NOT_COLOURABLE, KSet.interval(1, r - 2), pre,
             "not k-colourable for k <= r-2")
        _add(claims, ClaimSource.ONE_PART_GAP, ClaimKind.COLOURABLE, KSet.of(r - 1), pre,
             "(r-1)-colourable")
        _add(claims, ClaimSource.ONE_PART_GAP, ClaimKind.NOT_COLOURABLE, KSet.of(r), pre,
             "not r-colourable")

    if is_sigma_2n(inst):
        pre = (("n >= 2(r-2)(r-1)+1", n >= small_r_threshold(r)),)
        upper = KSet.interval(n + 1, 2 * n)
        zone_lo = ceil(n / (r - 2))
        if r >= 6:
            source = ClaimSource.SIGMA_2N
            _add(claims, source, ClaimKind.NOT_COLOURABLE, upper, pre, "not k-colourable for k > n")
            _add(claims, source, ClaimKind.NOT_COLOURABLE, KSet.interval(2 * r - 5, zone_lo - 1), pre,
                 "not k-colourable for 2r-5 <= k < ceil(n/(r-2))")
            _add(claims, source, ClaimKind.COLOURABLE, KSet.interval(zone_lo, n), pre,
                 "k-colourable for ceil(n/(r-2)) <= k <= n")
            _add(claims, source, ClaimKind.COLOURABLE, KSet.interval(2, 2 * r - 6), pre,
                 "k-colourable for 2 <= k <= 2r-6")
        else:
            source = ClaimSource.SIGMA_2N_SMALL_R
            _add(claims, source, ClaimKind.COLOURABLE, KSet.of(*range(2, r)), pre,
                 f"k-colourable for 2 <= k <= {r - 1}")
            _add(claims, source, ClaimKind.COLOURABLE, KSet.interval(zone_lo, n), pre,
                 "k-colourable in the monochromatic zone")
            _add(claims, source, ClaimKind.NOT_COLOURABLE, KSet.of(1), pre, "not 1-colourable")
            _add(claims, source, ClaimKind.NOT_COLOURABLE, KSet.interval(r, zone_lo - 1), pre,
                 "colourable only for the listed k and the zone")
            _add(claims, source, ClaimKind.NOT_COLOURABLE, upper, pre, "not k-colourable for k > n")

    if sigma.delta_min >= 2:
        _add(claims, ClaimSource.NO_GAP, ClaimKind.NO_GAP, KSet.interval(1, nq),
             (("delta_min(sigma) >= 2", True),),
             "the NMNR spectrum has no gap")
    return claims


def _two_two_claims(inst: SigmaInstance) -> List[Claim]:
    claims: List[Claim] = []
    if not is_two_two(inst):
        return claims
    n = inst.n
    pre = (("n >= 4", n >= 4),)
    _add(claims, ClaimSource.TWO_TWO, ClaimKind.COLOURABLE, KSet.of(2, n), pre,
         "(2,2)-colourable with 2 and with n colours")
    _add(claims, ClaimSource.TWO_TWO, ClaimKind.NOT_COLOURABLE, KSet.interval(3, n - 1), pre,
         "no k-(2,2)-colouring for 3 <= k <= n-1")
    return claims


def predict_claims(inst: SigmaInstance, bounds: ColourBounds) -> List[Claim]:
    """
    Every claim whose family matches inst, hypotheses evaluated.

    NMNR claims are made only under (2, r-1) and the (2,2) claims only under
    (2,2). Claims over an empty set of k are dropped.
    """
    claims: List[Claim] = []
    if bounds.is_nmnr(inst.r):
        claims.extend(_nmnr_claims(inst))
    if bounds.alpha == 2 and bounds.beta == 2:
        claims.extend(_two_two_claims(inst))
    return claims


def silent_range(inst: SigmaInstance, bounds: ColourBounds) -> Optional[KSet]:
    """[r+1, ceil(n/(s-1))-1] for an active one-part-gap instance: no claim is made there."""
    if not bounds.is_nmnr(inst.r) or not _one_part_gap_applies(inst):
        return None
    if not all(ok for _, ok in _one_part_gap_preconditions(inst)):
        return None
    zone = zone_range(inst)
    k_set = KSet.interval(inst.r + 1, zone[0] - 1)
    return None if k_set.empty else k_set


def evaluate_claim(claim: Claim, report: SpectrumReport) -> ClaimResult:
    """Grade one claim against computed verdicts."""
    if not claim.active:
        return ClaimResult(claim, ClaimStatus.INACTIVE,
                           detail="failed: " + ", ".join(claim.failed_preconditions))

    ks = claim.k_set.values()
    statuses = {}
    for k in ks:
        verdict = report.verdict(k)
        statuses[k] = verdict.status if verdict is not None else None
    yes = tuple(k for k in ks if statuses[k] is KStatus.YES)
    no = tuple(k for k in ks if statuses[k] is KStatus.NO)
    open_ks = [k for k in ks if statuses[k] not in (KStatus.YES, KStatus.NO)]

    if claim.kind is ClaimKind.COLOURABLE:
        if no:
            return ClaimResult(claim, ClaimStatus.REFUTED, no, "exhausted search found no colouring")
        if not open_ks:
            return ClaimResult(claim, ClaimStatus.CONFIRMED, yes, "witness for every k")
    elif claim.kind in (ClaimKind.NOT_COLOURABLE, ClaimKind.EMPTY_SPECTRUM):
        if yes:
            return ClaimResult(claim, ClaimStatus.REFUTED, yes, "valid witness colouring found")
        if not open_ks:
            return ClaimResult(claim, ClaimStatus.CONFIRMED, no, "exhausted search for every k")
    else:
        gaps = report.gaps
        if gaps:
            gap_ks = tuple(k for lo, hi in gaps for k in range(lo, hi + 1))
            return ClaimResult(claim, ClaimStatus.REFUTED, gap_ks, "spectrum has a gap")
        if not open_ks:
            return ClaimResult(claim, ClaimStatus.CONFIRMED, tuple(report.spectrum),
                               "complete contiguous spectrum")

    unexamined = [k for k in open_ks if statuses[k] is None]
    unknown = [k for k in open_ks if statuses[k] is KStatus.UNKNOWN]
    detail = []
    if unknown:
        detail.append(f"budget exhausted at k={unknown}")
    if unexamined:
        detail.append(f"{len(unexamined)} k outside the examined range")
    return ClaimResult(claim, ClaimStatus.UNDECIDED, tuple(open_ks), "; ".join(detail))


def assemble_report(inst: SigmaInstance, bounds: ColourBounds, spectrum: SpectrumReport) -> VerificationReport:
    results = [evaluate_claim(claim, spectrum) for claim in predict_claims(inst, bounds)]
    report = VerificationReport(instance=inst, bounds=bounds, results=results, spectrum=spectrum,
                                silent_range=silent_range(inst, bounds))
    for result in results:
        if result.status is ClaimStatus.REFUTED:
            log_with_context(logger, "warning", "Claim refuted",
                             instance=inst.label(), source=result.claim.source,
                             k_set=result.claim.k_set.label(), evidence=list(result.evidence))
    logger.info(
        f"Verified {inst.label()} under {bounds.label()}: "
        f"{report.count(ClaimStatus.CONFIRMED)} confirmed, {report.count(ClaimStatus.REFUTED)} refuted, "
        f"{report.count(ClaimStatus.UNDECIDED)} undecided, {report.count(ClaimStatus.INACTIVE)} inactive"
    )
    return report


def _engine(engine: Optional[SpectrumEngine]) -> SpectrumEngine:
    return engine or SpectrumEngine()


def verify_instance(
    inst: SigmaInstance,
    bounds: ColourBounds,
    budget: Optional[int] = None,
    k_max: Optional[int] = None,
    engine: Optional[SpectrumEngine] = None,
) -> VerificationReport:
    """
    Compute the spectrum of inst and grade every predicted claim.

    Args:
        inst: Instance
        bounds: Colour bounds
        budget: Per-k node budget
        k_max: Top of the examined range; defaults to nq
        engine: SpectrumEngine to use; a default one is built otherwise

    Returns:
        VerificationReport holding the spectrum and one result per claim
    """
    spectrum = _engine(engine).compute_spectrum(inst, bounds, k_max=k_max, budget=budget)
    return assemble_report(inst, bounds, spectrum)


async def verify_instance_async(
    inst: SigmaInstance,
    bounds: ColourBounds,
    budget: Optional[int] = None,
    k_max: Optional[int] = None,
    engine: Optional[SpectrumEngine] = None,
) -> VerificationReport:
    """verify_instance with the per-k searches run concurrently."""
    spectrum = await _engine(engine).compute_spectrum_async(inst, bounds, k_max=k_max, budget=budget)
    return assemble_report(inst, bounds, spectrum)


def sweep(
    r: int,
    n: int,
    q: int,
    bounds: Optional[ColourBounds] = None,
    min_delta: int = 1,
    budget: Optional[int] = None,
    engine: Optional[SpectrumEngine] = None,
) -> SweepReport:
    """
    Verify H(n,r,q|sigma) for every sigma of r with at least two parts.

    Args:
        r: Edge size
        n: Number of classes
        q: Class size
        bounds: Colour bounds; NMNR for r by default
        min_delta: Keep only sigma with delta_min(sigma) >= min_delta
        budget: Per-k node budget
        engine: SpectrumEngine shared by every instance

    Returns:
        SweepReport with one VerificationReport per sigma, in partition order
    """
    bounds = bounds or ColourBounds.nmnr(r)
    engine = _engine(engine)
    result = SweepReport(r=r, n=n, q=q, bounds=bounds, min_delta=min_delta)
    for sigma in enumerate_partitions(r, min_parts=2):
        if sigma.delta_min < min_delta:
            continue
        inst = SigmaInstance(n=n, r=r, q=q, sigma=sigma)
        result.reports.append(verify_instance(inst, bounds, budget=budget, engine=engine))
    logger.info(f"Sweep r={r} n={n} q={q}: {len(result.reports)} instances, refuted={result.refuted}")
    return result
