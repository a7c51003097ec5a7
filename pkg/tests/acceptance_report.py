"""Collects one verdict line per acceptance criterion for the terminal summary."""

_RESULTS = {}


def record(number, title, passed, detail=""):
    line = f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}"
    if detail:
        line += f"  ({detail})"
    _RESULTS[number] = line
    print(line)


def lines():
    return [_RESULTS[k] for k in sorted(_RESULTS)]
