def pytest_terminal_summary(terminalreporter):
    reports = []
    for key in ("passed", "failed"):
        reports += [r for r in terminalreporter.stats.get(key, [])
                    if "test_acceptance.py" in r.nodeid
                    and getattr(r, "when", None) == "call"]
    if not reports:
        return
    terminalreporter.section("acceptance")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(
            f"{name}: {'PASS' if r.passed else 'FAIL'}")
