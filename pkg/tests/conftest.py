"""Terminal reporting hook: one summary line per acceptance check."""

from __future__ import annotations


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[str, bool] = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            # passed only counts at the call phase; any failure or error flips the line
            if key == "passed" and getattr(rep, "when", "call") != "call":
                continue
            name = nodeid.split("::")[-1].removeprefix("test_")
            verdicts[name] = verdicts.get(name, True) and key == "passed"
    if not verdicts:
        return
    terminalreporter.section("acceptance")
    for name in sorted(verdicts):
        status = "PASS" if verdicts[name] else "FAIL"
        terminalreporter.write_line(f"[acceptance] {name}: {status}")
