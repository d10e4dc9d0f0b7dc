"""
Verification and sweep formatters.
Claims are rendered as a table next to the spectrum they were graded on.
"""

from typing import Any, Dict

from jinja2 import Template

from .base_formatter import ReportFormatter, bounds_label, format_k_values, instance_label

CLAIM_TABLE = Template(
    "{% for c in claims %}"
    "  {{ '%-10s' | format(c.status) }}  {{ '%-15s' | format(c.kind) }}  {{ '%-18s' | format(c.k_label) }}"
    "  {{ c.source }}{% if c.detail %} ({{ c.detail }}){% endif %}\n"
    "{% endfor %}"
)

SWEEP_TABLE = Template(
    "{% for row in rows %}"
    "  {{ '%-28s' | format(row.label) }}  {{ '%-30s' | format(row.spectrum) }}"
    "  {{ '%3d' | format(row.claims.confirmed) }} {{ '%3d' | format(row.claims.refuted) }}"
    " {{ '%3d' | format(row.claims.undecided) }} {{ '%3d' | format(row.claims.inactive) }}\n"
    "{% endfor %}"
)


def k_set_label(k_set: Dict[str, Any]) -> str:
    if 'members' in k_set:
        return "{" + ",".join(str(k) for k in k_set['members']) + "}"
    lo, hi = k_set['interval']
    return f"[{lo},{hi}]"


class VerificationFormatter(ReportFormatter):
    """Format VerificationReport dictionaries"""

    def format(self, data: Dict[str, Any]) -> str:
        title = f"Verification of {instance_label(data['instance'])} under {bounds_label(data['bounds'])}"
        text = self.add_header(title)
        spectrum = data['spectrum']
        lo, hi = spectrum['k_range']
        summary = {
            'spectrum': format_k_values(spectrum['spectrum']),
            'examined': f"[{lo},{hi}]",
            'complete': "yes" if spectrum['complete'] else "no",
        }
        if data.get('silent_range'):
            summary['silent'] = f"{k_set_label(data['silent_range'])} {data['silent_label']}"
        text += self.format_key_value_pairs(summary)

        text += self.add_section("Claims")
        if data['claims']:
            rows = [dict(c, k_label=k_set_label(c['k_set'])) for c in data['claims']]
            text += CLAIM_TABLE.render(claims=rows)
        else:
            text += "  no claim applies to this instance\n"

        verdict = "REFUTED claims present" if data['refuted'] else "no claim refuted"
        text += self.add_footer(verdict)
        return text


class SweepFormatter(ReportFormatter):
    """Format SweepReport dictionaries"""

    def format(self, data: Dict[str, Any]) -> str:
        title = (f"Sweep r={data['r']} n={data['n']} q={data['q']} under {bounds_label(data['bounds'])}"
                 f", delta_min >= {data['min_delta']}")
        text = self.add_header(title)
        rows = [dict(row, spectrum=format_k_values(row['spectrum'])) for row in data['instances']]
        text += f"  {'instance':<28}  {'spectrum':<30}  con ref und ina\n"
        text += SWEEP_TABLE.render(rows=rows)
        verdict = "REFUTED claims present" if data['refuted'] else "no claim refuted"
        text += self.add_footer(f"{len(rows)} instances, {verdict}")
        return text
