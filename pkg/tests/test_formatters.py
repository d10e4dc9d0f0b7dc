"""
Unit tests for report formatters.
Tests the Strategy pattern implementation for text-mode reports.
"""

import pytest

from core.formatters import (
    CheckFormatter,
    ConstructionFormatter,
    FormatterFactory,
    SpectrumFormatter,
    SweepFormatter,
    VerificationFormatter,
    WalkFormatter,
    format_k_values,
)
from core.formatters.base_formatter import instance_label
from core.formatters.formatter_factory import DefaultFormatter
from core.formatters.verification_formatter import k_set_label
from core.models import (
    Colouring,
    ColourBounds,
    KStatus,
    KVerdict,
    Partition,
    SigmaInstance,
    SpectrumReport,
    VerdictSource,
)

INSTANCE = {'n': 5, 'r': 3, 'q': 2, 'sigma': [2, 1]}


@pytest.fixture
def spectrum_data():
    inst = SigmaInstance(n=5, r=3, q=2, sigma=Partition((2, 1)))
    verdicts = [
        KVerdict(k=1, status=KStatus.NO, nodes_explored=4),
        KVerdict(k=2, status=KStatus.YES, witness=Colouring(((1, 2),) * 5), nodes_explored=7),
        KVerdict(k=3, status=KStatus.NO, nodes_explored=40),
        KVerdict(k=4, status=KStatus.NO, nodes_explored=90),
        KVerdict(k=5, status=KStatus.YES, witness=Colouring(tuple((i + 1, i + 1) for i in range(5))),
                 source=VerdictSource.CONSTRUCTION, scheme="ZONE"),
    ]
    return SpectrumReport(instance=inst, bounds=ColourBounds.nmnr(3), verdicts=verdicts,
                          k_min=1, k_max=5).to_dict()


@pytest.fixture
def verification_data(spectrum_data):
    return {
        'schema': "sigma-spectra/1",
        'instance': INSTANCE,
        'bounds': {'alpha': 2, 'beta': 2},
        'claims': [
            {'source': 'sigma-2n-small-r', 'kind': 'NOT_COLOURABLE', 'k_set': {'interval': [3, 4]},
             'status': 'CONFIRMED', 'detail': 'exhausted search for every k'},
            {'source': 'one-part-gap', 'kind': 'COLOURABLE', 'k_set': {'members': [2]},
             'status': 'INACTIVE', 'detail': 'failed: n > r(s-1)+s'},
        ],
        'silent_range': None,
        'silent_label': None,
        'refuted': False,
        'spectrum': spectrum_data,
    }


class TestNotation:
    """Spectrum notation helpers"""

    @pytest.mark.parametrize("values,expected", [
        ([2, 5], "{2} ∪ {5}"),
        ([2, 3, 7, 8, 9, 10], "{2,3} ∪ [7,10]"),
        ([], "∅"),
        ([4], "{4}"),
    ])
    def test_format_k_values(self, values, expected):
        assert format_k_values(values) == expected

    def test_instance_label(self):
        assert instance_label(INSTANCE) == "H(5,3,2|(2,1))"

    def test_k_set_label(self):
        assert k_set_label({'members': [2, 4]}) == "{2,4}"
        assert k_set_label({'interval': [3, 9]}) == "[3,9]"


class TestFormatterFactory:
    """Test cases for FormatterFactory"""

    @pytest.fixture
    def factory(self):
        return FormatterFactory()

    def test_factory_initialization(self, factory):
        assert set(factory.formatters) == {
            'spectrum', 'verification', 'sweep', 'check', 'construction', 'walk', 'default'
        }

    def test_get_formatter(self, factory):
        assert isinstance(factory.get_formatter('spectrum'), SpectrumFormatter)
        assert isinstance(factory.get_formatter('VERIFICATION'), VerificationFormatter)

    def test_get_formatter_fallback(self, factory):
        assert isinstance(factory.get_formatter('unknown_type'), DefaultFormatter)

    def test_format_data_falls_back_on_bad_input(self, factory):
        text = factory.format_data({'unexpected': 'shape'}, 'spectrum')
        assert "Report" in text
        assert "unexpected" in text


class TestSpectrumFormatter:

    def test_summary_and_rows(self, spectrum_data):
        text = SpectrumFormatter().format(spectrum_data)
        assert "Spectrum of H(5,3,2|(2,1)) under (2,2)" in text
        assert "{2} ∪ {5}" in text
        assert "{3,4}" in text
        assert "ZONE" in text
        assert "construction" in text
        assert "yes" in text

    def test_incomplete(self, spectrum_data):
        spectrum_data['complete'] = False
        spectrum_data['k_results'][2]['budget_exhausted'] = True
        text = SpectrumFormatter().format(spectrum_data)
        assert "no (budget exhausted)" in text
        assert "budget exhausted" in text


class TestVerificationFormatters:

    def test_claims_table(self, verification_data):
        text = VerificationFormatter().format(verification_data)
        assert "Verification of H(5,3,2|(2,1)) under (2,2)" in text
        assert "CONFIRMED" in text
        assert "[3,4]" in text
        assert "failed: n > r(s-1)+s" in text
        assert "no claim refuted" in text

    def test_silent_range(self, verification_data):
        verification_data['silent_range'] = {'interval': [5, 5]}
        verification_data['silent_label'] = "theorem-silent, computed only"
        text = VerificationFormatter().format(verification_data)
        assert "[5,5] theorem-silent, computed only" in text

    def test_sweep(self):
        data = {
            'r': 4, 'n': 3, 'q': 2, 'bounds': {'alpha': 2, 'beta': 3}, 'min_delta': 2, 'refuted': False,
            'instances': [{
                'label': "H(3,4,2|(2^2))", 'spectrum': [2, 3],
                'claims': {'confirmed': 2, 'refuted': 0, 'undecided': 0, 'inactive': 0},
            }],
        }
        text = SweepFormatter().format(data)
        assert "delta_min >= 2" in text
        assert "H(3,4,2|(2^2))" in text
        assert "1 instances, no claim refuted" in text


class TestColouringFormatters:

    def test_check(self):
        data = {
            'instance': INSTANCE, 'bounds': {'alpha': 2, 'beta': 2}, 'k': 1,
            'colouring': {'classes': [[1, 1]] * 5},
            'verdict': {'status': 'MONOCHROMATIC_EDGE', 'degenerate': False,
                        'witness': {'vertices': [[0, 0], [0, 1], [1, 0]], 'colours': [1, 1, 1]}},
            'distinct_range': {'min_distinct': 1, 'max_distinct': 1},
            'explicit': None,
        }
        text = CheckFormatter().format(data)
        assert "MONOCHROMATIC_EDGE  edge (0,0) (0,1) (1,0) colours 1,1,1" in text
        assert "class   4: 1 1" in text

    def test_construction(self):
        data = {
            'instance': INSTANCE, 'scheme': 'ZONE', 'param': 5, 'k': 5, 'bounds': {'alpha': 2, 'beta': 2},
            'colouring': {'classes': [[i, i] for i in range(1, 6)]},
            'verdict': {'status': 'VALID', 'witness': None, 'degenerate': False},
        }
        text = ConstructionFormatter().format(data)
        assert "ZONE(5) on H(5,3,2|(2,1))" in text
        assert "VALID" in text

    def test_walk(self):
        data = {
            'direction': 'up', 'start_k': 2, 'target_k': 5, 'terminal': 'TARGET_REACHED', 'final_k': 3,
            'steps': [{'step': 1, 'rule': 'collapse', 'class_index': 0, 'colours': [1, 2], 'k': 3}],
        }
        text = WalkFormatter().format(data)
        assert "Walk up from k=2 toward k=5" in text
        assert "-> k=3" in text
        assert "terminal TARGET_REACHED" in text


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
