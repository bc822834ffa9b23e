"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

LINES: list = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    LINES.append(f"{'PASS' if ok else 'FAIL'} AC{number} {title}{tail}")
    print(LINES[-1])
