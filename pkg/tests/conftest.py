from __future__ import annotations

# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
CRITERIA = 10


def pytest_terminal_summary(terminalreporter):
    ran = {rep.nodeid for key in ("passed", "failed", "error")
           for rep in terminalreporter.stats.get(key, []) if "test_acceptance" in rep.nodeid}
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, CRITERIA + 1):
        if k not in ACCEPTANCE and not any(f"criterion_{k:02d}" in node for node in ran):
            continue  # deselected
        passed, detail = ACCEPTANCE.get(k, (False, "errored before producing a result"))
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {k}: {detail}")
