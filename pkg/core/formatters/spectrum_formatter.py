"""
Spectrum report formatter.
Renders the spectrum in interval notation and one row per examined k.
"""

from typing import Any, Dict

from jinja2 import Template

from .base_formatter import ReportFormatter, bounds_label, format_k_values, instance_label

K_TABLE = Template(
    "{% for row in rows %}"
    "  {{ '%4d' | format(row.k) }}  {{ '%-7s' | format(row.status) }}  {{ '%-12s' | format(row.source) }}"
    "  {{ '%12d' | format(row.nodes_explored) }}{% if row.scheme %}  {{ row.scheme }}{% endif %}"
    "{% if row.budget_exhausted %}  budget exhausted{% endif %}\n"
    "{% endfor %}"
)


class SpectrumFormatter(ReportFormatter):
    """Format SpectrumReport dictionaries"""

    def format(self, data: Dict[str, Any]) -> str:
        title = f"Spectrum of {instance_label(data['instance'])} under {bounds_label(data['bounds'])}"
        text = self.add_header(title)
        text += self.format_key_value_pairs(self.summary(data))
        text += self.add_section("Per-k results")
        text += "     k  status   source               nodes\n"
        text += K_TABLE.render(rows=data['k_results'])
        text += self.add_footer()
        return text

    def summary(self, data: Dict[str, Any]) -> Dict[str, Any]:
        lo, hi = data['k_range']
        gaps = [format_k_values(range(g[0], g[1] + 1)) for g in data['gaps']]
        return {
            'spectrum': format_k_values(data['spectrum']),
            'chi': data['chi'] if data['chi'] is not None else "-",
            'chi_bar': data['chi_bar'] if data['chi_bar'] is not None else "-",
            'gaps': ", ".join(gaps) if gaps else "none",
            'examined': f"[{lo},{hi}]",
            'complete': "yes" if data['complete'] else "no (budget exhausted)",
            'degenerate': "yes" if data['degenerate'] else "no",
            'total_nodes': data['total_nodes'],
        }
