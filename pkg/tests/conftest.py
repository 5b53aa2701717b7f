import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> list of (check name, passed, detail)
ACCEPTANCE: dict[int, list] = {}


def record(criterion: int, name: str, passed: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((name, bool(passed), detail))
    line = f"[criterion {criterion}] {'PASS' if passed else 'FAIL'} {name}"
    print(line + (f" ({detail})" if detail else ""))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[c]
        failed = [(name, detail) for name, ok, detail in checks if not ok]
        verdict = "FAIL" if failed else "PASS"
        tr.write_line(f"criterion {c}: {verdict} ({len(checks) - len(failed)}/{len(checks)} checks)")
        for name, detail in failed:
            tr.write_line(f"    failed: {name}" + (f" ({detail})" if detail else ""))
