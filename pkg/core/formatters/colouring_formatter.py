"""
Formatters for single colourings: checks, constructions and walks.
"""

from typing import Any, Dict, Optional

from .base_formatter import ReportFormatter, bounds_label, instance_label


def _verdict_line(verdict: Dict[str, Any]) -> str:
    line = verdict['status']
    witness: Optional[Dict[str, Any]] = verdict.get('witness')
    if witness:
        vertices = " ".join(f"({c},{s})" for c, s in witness['vertices'])
        colours = ",".join(str(c) for c in witness['colours'])
        line += f"  edge {vertices} colours {colours}"
    if verdict.get('degenerate'):
        line += "  (edgeless instance)"
    return line


class CheckFormatter(ReportFormatter):
    """Format a colouring check"""

    def format(self, data: Dict[str, Any]) -> str:
        text = self.add_header(
            f"Check of a {data['k']}-colouring of {instance_label(data['instance'])}"
            f" under {bounds_label(data['bounds'])}"
        )
        distinct = data['distinct_range']
        pairs = {
            'verdict': _verdict_line(data['verdict']),
            'min_distinct': distinct['min_distinct'] if distinct['min_distinct'] is not None else "-",
            'max_distinct': distinct['max_distinct'] if distinct['max_distinct'] is not None else "-",
        }
        if data.get('explicit') is not None:
            pairs['explicit'] = _verdict_line(data['explicit'])
            pairs['agree'] = "yes" if data['agree'] else "NO"
        text += self.format_key_value_pairs(pairs)
        text += self.add_section("Colouring")
        text += self.format_colouring(data['colouring'])
        text += self.add_footer()
        return text


class ConstructionFormatter(ReportFormatter):
    """Format the output of an explicit construction"""

    def format(self, data: Dict[str, Any]) -> str:
        scheme = data['scheme'] if data.get('param') is None else f"{data['scheme']}({data['param']})"
        text = self.add_header(f"{scheme} on {instance_label(data['instance'])}")
        text += self.format_key_value_pairs({
            'colours': data['k'],
            'bounds': bounds_label(data['bounds']),
            'verdict': _verdict_line(data['verdict']),
        })
        text += self.add_section("Colouring")
        text += self.format_colouring(data['colouring'])
        text += self.add_footer()
        return text


class WalkFormatter(ReportFormatter):
    """Format a spectrum walk trace"""

    def format(self, data: Dict[str, Any]) -> str:
        title = f"Walk {data['direction']} from k={data['start_k']} toward k={data['target_k']}"
        if data.get('instance'):
            title += f" on {instance_label(data['instance'])}"
        text = self.add_header(title)
        text += self.add_section("Steps")
        if not data['steps']:
            text += "  (no step taken)\n"
        for step in data['steps']:
            colours = ",".join(str(c) for c in step['colours'])
            text += f"  {step['step']:>3}. {step['rule']:<8} class {step['class_index']:>3}  colours {colours:<12} -> k={step['k']}\n"
        text += self.add_footer(
            f"terminal {data['terminal']}, final k={data['final_k']} (heuristic: stopping is not a NO answer)"
        )
        return text
