"""Tests for the spectrum engine."""

import pytest

from core.config import SearchConfig
from core.errors import BoundsError, ValidationError
from core.hypergraph import check_explicit
from core.models import ColourBounds, KStatus, SigmaInstance, VerdictSource
from core.partition import enumerate_partitions
from execution.spectrum_engine import SpectrumEngine, degenerate_witness, monochromatic_zone
from monitoring.metrics import SearchMetrics
from tests.instances import all_colourings, instance, small_instances


def brute_force_spectrum(inst, bounds):
    found = set()
    for col in all_colourings(inst):
        k = col.k
        if k in found:
            continue
        if check_explicit(inst, col, bounds).valid:
            found.add(k)
    return sorted(found)


def oracle_bounds(r):
    found = []
    for bounds in (ColourBounds.nmnr(r), ColourBounds(2, 2), ColourBounds(3, r)):
        if bounds not in found:
            found.append(bounds)
    return found


def assert_spectra_match(engine, max_vertices, min_vertices=3):
    for inst in small_instances(max_vertices):
        if inst.vertex_count < min_vertices:
            continue
        for bounds in oracle_bounds(inst.r):
            report = engine.compute_spectrum(inst, bounds)
            assert report.complete, (inst.label(), bounds.label())
            assert report.spectrum == brute_force_spectrum(inst, bounds), (inst.label(), bounds.label())


def no_gap_family(max_vertices):
    """Every non-degenerate instance with delta_min >= 2, s >= 2 and nq <= max_vertices."""
    for r in range(4, max_vertices + 1):
        for sigma in enumerate_partitions(r, min_parts=2):
            if sigma.delta_min < 2:
                continue
            for q in range(sigma.delta_max, max_vertices + 1):
                for n in range(sigma.s, max_vertices // q + 1):
                    yield SigmaInstance(n=n, r=r, q=q, sigma=sigma)


@pytest.fixture
def engine():
    return SpectrumEngine(config=SearchConfig(), metrics=SearchMetrics())


@pytest.fixture
def h2n3():
    return instance(5, 3, 2, 2, 1)


@pytest.fixture
def two_two():
    return instance(4, 4, 2, 2, 2)


class TestDecideK:

    def test_yes_carries_checked_witness(self, engine, h2n3):
        verdict = engine.decide_k(h2n3, 2, ColourBounds.nmnr(3))
        assert verdict.status is KStatus.YES
        assert check_explicit(h2n3, verdict.witness, ColourBounds.nmnr(3)).valid

    def test_no(self, engine, h2n3):
        verdict = engine.decide_k(h2n3, 3, ColourBounds.nmnr(3))
        assert verdict.status is KStatus.NO
        assert verdict.witness is None
        assert not verdict.budget_exhausted

    def test_budget_gives_unknown(self, engine):
        inst = instance(13, 4, 2, 2, 1, 1)
        verdict = engine.decide_k(inst, 5, ColourBounds.nmnr(4), budget=5)
        assert verdict.status is KStatus.UNKNOWN
        assert verdict.budget_exhausted
        assert verdict.nodes_explored == 5

    @pytest.mark.parametrize("k", [0, 11])
    def test_k_out_of_range(self, engine, h2n3, k):
        with pytest.raises(ValidationError):
            engine.decide_k(h2n3, k, ColourBounds.nmnr(3))

    def test_bad_budget(self, engine, h2n3):
        with pytest.raises(ValidationError):
            engine.decide_k(h2n3, 2, ColourBounds.nmnr(3), budget=0)

    def test_beta_above_r(self, engine, h2n3):
        with pytest.raises(BoundsError):
            engine.decide_k(h2n3, 2, ColourBounds(2, 4))

    def test_degenerate(self, engine):
        inst = instance(2, 4, 2, 2, 1, 1)
        verdict = engine.decide_k(inst, 3, ColourBounds.nmnr(4))
        assert verdict.status is KStatus.YES
        assert verdict.source is VerdictSource.DEGENERATE

    @pytest.mark.parametrize("k", [2, 3, 5])
    async def test_async_matches_sync(self, engine, h2n3, k):
        bounds = ColourBounds.nmnr(3)
        sync = engine.decide_k(h2n3, k, bounds)
        concurrent = await engine.decide_k_async(h2n3, k, bounds)
        assert concurrent.status is sync.status
        assert concurrent.witness == sync.witness
        assert concurrent.source is sync.source
        assert concurrent.to_dict() == sync.to_dict()

    async def test_async_budget(self, engine):
        inst = instance(13, 4, 2, 2, 1, 1)
        verdict = await engine.decide_k_async(inst, 5, ColourBounds.nmnr(4), budget=5)
        assert verdict.status is KStatus.UNKNOWN
        assert verdict.budget_exhausted

    def test_metrics_recorded(self, engine, h2n3):
        engine.decide_k(h2n3, 3, ColourBounds.nmnr(3))
        summary = engine.metrics.get_summary(h2n3.label())
        assert summary['answered'] == 1
        assert summary['by_status'] == {'no': 1}


def test_degenerate_witness():
    inst = instance(2, 4, 2, 2, 1, 1)
    assert degenerate_witness(inst, 3).classes == ((1, 2), (3, 3))
    assert degenerate_witness(inst, 1).classes == ((1, 1), (1, 1))


def test_monochromatic_zone():
    assert monochromatic_zone(instance(13, 4, 2, 2, 1, 1)) == (7, 13)
    assert monochromatic_zone(instance(5, 3, 2, 2, 1)) == (5, 5)
    assert monochromatic_zone(instance(5, 3, 1, 1, 1, 1)) is None


class TestFastVerdicts:
    """Answers that need no search"""

    def test_constructions(self, engine):
        inst = instance(13, 4, 2, 2, 1, 1)
        found = engine.fast_verdicts(inst, ColourBounds.nmnr(4), range(1, 27))
        assert sorted(found) == [3] + list(range(7, 14))
        assert all(v.source is VerdictSource.CONSTRUCTION for v in found.values())
        assert found[3].scheme == "SMALL_R4_K3"

    def test_walks_fill_in(self, engine, two_two):
        found = engine.fast_verdicts(two_two, ColourBounds.nmnr(4), range(1, 9))
        assert sorted(found) == [2, 3, 4, 5]
        assert found[3].source is VerdictSource.WALK
        assert found[5].source is VerdictSource.WALK

    def test_no_walks_when_disabled(self, two_two):
        engine = SpectrumEngine(config=SearchConfig(use_walks=False))
        found = engine.fast_verdicts(two_two, ColourBounds.nmnr(4), range(1, 9))
        assert sorted(found) == [2, 4]

    def test_construction_rechecked_under_bounds(self, engine, two_two):
        found = engine.fast_verdicts(two_two, ColourBounds(2, 2), range(1, 9))
        assert sorted(found) == [2, 4]


class TestComputeSpectrum:

    def test_h2n3_has_gap(self, engine, h2n3):
        report = engine.compute_spectrum(h2n3, ColourBounds.nmnr(3), k_max=10)
        assert report.spectrum == [2, 5]
        assert report.gaps == [(3, 4)]
        assert report.complete
        assert engine.metrics.get_summary()['answered'] == 10

    def test_all_ones_empty(self, engine):
        report = engine.compute_spectrum(instance(5, 3, 1, 1, 1, 1), ColourBounds.nmnr(3), k_max=5)
        assert report.spectrum == []
        assert report.complete

    def test_colour_bounded_gap(self, engine, two_two):
        report = engine.compute_spectrum(two_two, ColourBounds(2, 2), k_max=8)
        assert report.spectrum == [2, 4]
        assert report.verdict(3).status is KStatus.NO
        assert all(report.verdict(k).status is KStatus.NO for k in range(5, 9))
        assert report.complete

    def test_two_two_nmnr_contiguous(self, engine, two_two):
        report = engine.compute_spectrum(two_two, ColourBounds.nmnr(4))
        assert report.spectrum == [2, 3, 4, 5]
        assert report.gaps == []

    def test_k_window(self, engine, h2n3):
        report = engine.compute_spectrum(h2n3, ColourBounds.nmnr(3), k_min=3, k_max=5)
        assert [v.k for v in report.verdicts] == [3, 4, 5]
        assert report.spectrum == [5]

    def test_degenerate_everything_colourable(self, engine):
        inst = instance(2, 4, 2, 2, 1, 1)
        report = engine.compute_spectrum(inst, ColourBounds.nmnr(4))
        assert report.spectrum == [1, 2, 3, 4]

    @pytest.mark.parametrize("k_min,k_max", [(0, 3), (4, 3), (1, 11)])
    def test_bad_range(self, engine, h2n3, k_min, k_max):
        with pytest.raises(ValidationError):
            engine.compute_spectrum(h2n3, ColourBounds.nmnr(3), k_max=k_max, k_min=k_min)

    async def test_async_matches_sync(self, engine, h2n3):
        sync = engine.compute_spectrum(h2n3, ColourBounds.nmnr(3))
        concurrent = await engine.compute_spectrum_async(h2n3, ColourBounds.nmnr(3))
        assert concurrent.spectrum == sync.spectrum
        assert [v.status for v in concurrent.verdicts] == [v.status for v in sync.verdicts]
        assert concurrent.to_dict() == sync.to_dict()


class TestAgainstBruteForce:
    """Engine spectra equal the spectra found by trying every colouring"""

    @pytest.mark.parametrize("inst,bounds", [
        (instance(4, 4, 2, 2, 2), ColourBounds(2, 3)),
        (instance(4, 4, 2, 2, 2), ColourBounds(2, 2)),
        (instance(4, 4, 2, 2, 2), ColourBounds(2, 4)),
        (instance(4, 3, 2, 2, 1), ColourBounds(2, 2)),
        (instance(3, 3, 2, 1, 1, 1), ColourBounds(2, 2)),
        (instance(3, 4, 2, 2, 1, 1), ColourBounds(2, 3)),
        (instance(3, 4, 2, 2, 1, 1), ColourBounds(3, 4)),
        (instance(2, 4, 3, 2, 2), ColourBounds(2, 3)),
        (instance(2, 5, 4, 3, 2), ColourBounds(2, 4)),
        (instance(2, 5, 4, 3, 2), ColourBounds(3, 3)),
    ])
    def test_matches(self, engine, inst, bounds):
        report = engine.compute_spectrum(inst, bounds)
        assert report.complete
        assert report.spectrum == brute_force_spectrum(inst, bounds)

    def test_generated_instances(self, engine):
        assert_spectra_match(engine, 6)


@pytest.mark.slow
class TestLongRuns:
    """Full spectra that take minutes"""

    def test_h2n4_spectrum(self, engine):
        inst = instance(13, 4, 2, 2, 1, 1)
        report = engine.compute_spectrum(inst, ColourBounds.nmnr(4), k_max=26)
        assert report.complete
        assert report.spectrum == [2, 3] + list(range(7, 14))
        assert all(report.verdict(k).status is KStatus.NO for k in range(4, 7))
        assert all(report.verdict(k).status is KStatus.NO for k in range(14, 27))

    def test_one_part_gap_instance(self, engine):
        inst = instance(12, 4, 3, 2, 1, 1)
        report = engine.compute_spectrum(inst, ColourBounds.nmnr(4))
        for k in (1, 2, 4):
            verdict = report.verdict(k)
            assert verdict.status is KStatus.NO
            assert not verdict.budget_exhausted
        assert report.verdict(3).status is KStatus.YES
        assert report.verdict(3).scheme == "BLOCK"
        assert all(report.verdict(k).status is KStatus.YES for k in range(6, 13))

    def test_generated_instances_up_to_nine_vertices(self, engine):
        assert_spectra_match(engine, 9, min_vertices=7)

    def test_no_gap_family(self, engine):
        for inst in no_gap_family(14):
            report = engine.compute_spectrum(inst, ColourBounds.nmnr(inst.r))
            assert report.complete, inst.label()
            assert report.gaps == [], inst.label()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
