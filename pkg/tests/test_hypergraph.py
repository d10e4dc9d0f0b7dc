"""Tests for the explicit hypergraph model and its checker."""

from itertools import combinations

import numpy as np
import pytest

from core.errors import ColouringError, EdgeCapExceeded, EdgeSizeError
from core.hypergraph import (
    check_explicit,
    count_edges,
    edge_profile,
    enumerate_edges,
    is_edge,
    iter_edges,
    random_colouring,
    violation_side,
)
from core.models import (
    Colouring,
    ColourBounds,
    Partition,
    VerdictStatus,
    VertexRef,
)
from tests.instances import instance, small_instances


@pytest.fixture
def h2n3():
    return instance(5, 3, 2, 2, 1)


@pytest.fixture
def two_two():
    return instance(4, 4, 2, 2, 2)


class TestEdges:

    @pytest.mark.parametrize("inst,expected", [
        (instance(5, 3, 2, 2, 1), 40),
        (instance(4, 4, 2, 2, 2), 6),
        (instance(3, 3, 1, 1, 1, 1), 1),
        (instance(4, 4, 2, 2, 1, 1), 48),
        (instance(3, 5, 3, 3, 2), 18),
        (instance(2, 4, 2, 2, 1, 1), 0),
    ])
    def test_count_matches_enumeration(self, inst, expected):
        assert count_edges(inst) == expected
        edges = enumerate_edges(inst)
        assert len(edges) == expected
        assert len({frozenset(e) for e in edges}) == expected

    def test_every_enumerated_edge_has_profile_sigma(self, h2n3):
        for edge in enumerate_edges(h2n3):
            assert edge_profile(h2n3, edge) == h2n3.sigma

    def test_enumeration_equals_r_subsets_with_profile_sigma(self):
        for inst in small_instances(10):
            vertices = [VertexRef(c, s) for c in range(inst.n) for s in range(inst.q)]
            expected = {
                frozenset(subset) for subset in combinations(vertices, inst.r)
                if edge_profile(inst, subset) is not None
            }
            edges = enumerate_edges(inst)
            assert {frozenset(e) for e in edges} == expected, inst.label()
            assert len(edges) == len(expected) == count_edges(inst)

    def test_cap(self, h2n3):
        with pytest.raises(EdgeCapExceeded) as info:
            enumerate_edges(h2n3, cap=10)
        assert info.value.edge_count == 40
        assert info.value.cap == 10

    def test_edge_profile(self, h2n3):
        edge = [VertexRef(0, 0), VertexRef(0, 1), VertexRef(3, 1)]
        assert edge_profile(h2n3, edge) == Partition((2, 1))
        assert is_edge(h2n3, frozenset(edge))

    def test_not_an_edge(self, h2n3):
        assert edge_profile(h2n3, [VertexRef(0, 0), VertexRef(1, 0), VertexRef(2, 0)]) is None

    def test_wrong_size(self, h2n3):
        with pytest.raises(EdgeSizeError):
            edge_profile(h2n3, [VertexRef(0, 0), VertexRef(1, 0)])

    def test_vertex_outside(self, h2n3):
        with pytest.raises(EdgeSizeError):
            edge_profile(h2n3, [VertexRef(0, 0), VertexRef(0, 1), VertexRef(9, 0)])


class TestCheckExplicit:
    """Ground-truth checker on hand-made colourings"""

    def test_constant_colouring(self, h2n3):
        verdict = check_explicit(h2n3, Colouring(((1, 1),) * 5), ColourBounds.nmnr(3))
        assert verdict.status is VerdictStatus.MONOCHROMATIC_EDGE
        assert verdict.witness.distinct == 1

    def test_low_colouring_valid(self, h2n3):
        assert check_explicit(h2n3, Colouring(((1, 2),) * 5), ColourBounds.nmnr(3)).valid

    def test_zone_colouring_valid(self, h2n3):
        col = Colouring(tuple((i + 1, i + 1) for i in range(5)))
        assert check_explicit(h2n3, col, ColourBounds.nmnr(3)).valid

    def test_rainbow(self, h2n3):
        col = Colouring(((1, 1), (2, 2), (3, 3), (4, 4), (5, 6)))
        verdict = check_explicit(h2n3, col, ColourBounds.nmnr(3))
        assert verdict.status is VerdictStatus.RAINBOW_EDGE
        assert verdict.witness.distinct == 3

    def test_monochromatic_wins_over_rainbow(self, h2n3):
        col = Colouring(((1, 1), (1, 1), (2, 2), (2, 2), (1, 3)))
        verdict = check_explicit(h2n3, col, ColourBounds.nmnr(3))
        assert verdict.status is VerdictStatus.MONOCHROMATIC_EDGE

    def test_bounds_violation_above(self, two_two):
        col = Colouring(((1, 2), (1, 3), (1, 2), (1, 2)))
        assert check_explicit(two_two, col, ColourBounds(2, 2)).status is VerdictStatus.BOUNDS_VIOLATION
        assert check_explicit(two_two, col, ColourBounds.nmnr(4)).valid

    def test_bounds_violation_below(self, two_two):
        col = Colouring(((1, 2),) * 4)
        verdict = check_explicit(two_two, col, ColourBounds(3, 4))
        assert verdict.status is VerdictStatus.BOUNDS_VIOLATION
        assert verdict.witness.distinct == 2

    def test_classical_allows_rainbow(self, two_two):
        col = Colouring(((1, 2), (3, 4), (1, 2), (1, 2)))
        assert check_explicit(two_two, col, ColourBounds.nmnr(4)).status is VerdictStatus.RAINBOW_EDGE
        assert check_explicit(two_two, col, ColourBounds.classical(4)).valid

    def test_degenerate(self):
        inst = instance(2, 4, 2, 2, 1, 1)
        verdict = check_explicit(inst, Colouring(((1, 1), (1, 1))), ColourBounds.nmnr(4))
        assert verdict.valid
        assert verdict.degenerate

    def test_witness_is_an_edge(self, h2n3):
        col = Colouring(((1, 1), (2, 2), (3, 3), (4, 4), (5, 6)))
        verdict = check_explicit(h2n3, col, ColourBounds.nmnr(3))
        assert is_edge(h2n3, frozenset(verdict.witness.vertices))
        assert verdict.witness.colours == tuple(col.colour_of(v) for v in verdict.witness.vertices)

    def test_witness_is_first_edge_at_the_extreme(self):
        rng = np.random.default_rng(7)
        for inst in small_instances(7, max_edges=300):
            edges = list(iter_edges(inst))
            for _ in range(3):
                col = random_colouring(inst, int(rng.integers(1, inst.vertex_count + 1)), rng)
                counts = [len({col.colour_of(v) for v in e}) for e in edges]
                for bounds in (ColourBounds.nmnr(inst.r), ColourBounds(3, inst.r)):
                    verdict = check_explicit(inst, col, bounds)
                    if verdict.valid:
                        continue
                    extreme = min(counts) if min(counts) < bounds.alpha else max(counts)
                    assert verdict.witness.vertices == edges[counts.index(extreme)], inst.label()

    def test_wrong_shape(self, h2n3):
        with pytest.raises(ColouringError):
            check_explicit(h2n3, Colouring(((1, 2),) * 3), ColourBounds.nmnr(3))


def test_violation_side():
    bounds = ColourBounds(2, 3)
    assert violation_side(1, 4, bounds) == "min"
    assert violation_side(2, 4, bounds) == "max"
    assert violation_side(2, 3, bounds) is None


class TestRandomColouring:

    def test_surjective_and_seeded(self, h2n3):
        for k in range(1, 11):
            col = random_colouring(h2n3, k, np.random.default_rng(7))
            assert col.k == k
            assert col.n == 5 and col.q == 2
        first = random_colouring(h2n3, 4, np.random.default_rng(11))
        again = random_colouring(h2n3, 4, np.random.default_rng(11))
        assert first == again

    def test_k_out_of_range(self, h2n3):
        with pytest.raises(ColouringError):
            random_colouring(h2n3, 11, np.random.default_rng(0))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
