"""Canonical report serialization.

JSON is the machine format: keys sorted, compact separators, and all term
lists already emitted in descending monomial order by the polynomial
serializers, so identical inputs produce byte-identical output.  The text
renderer is lossy and for humans.
"""

from __future__ import annotations

import json


def canonical_json(report):
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def render_text(report, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key in sorted(report):
            value = report[key]
            if isinstance(value, (dict, list)):
                lines.append("%s%s:" % (pad, key))
                lines.append(render_text(value, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, key, value))
    elif isinstance(report, list):
        for value in report:
            if isinstance(value, (dict, list)):
                lines.append("%s-" % pad)
                lines.append(render_text(value, indent + 1))
            else:
                lines.append("%s- %s" % (pad, value))
    else:
        lines.append("%s%s" % (pad, report))
    return "\n".join(lines)


def emit(report, output="json"):
    if output == "text":
        return render_text(report) + "\n"
    return canonical_json(report)
