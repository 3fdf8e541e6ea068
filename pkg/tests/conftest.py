"""Print one PASS/FAIL line per acceptance criterion at the end of the run."""


def pytest_terminal_summary(terminalreporter):
    results: dict = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" not in props or (outcome == "passed" and rep.when != "call"):
                continue
            entry = results.setdefault(props["criterion"], [props["title"], 0, 0])
            entry[1 if outcome == "passed" else 2] += 1
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, failed = results[number]
        status = "FAIL" if failed else "PASS"
        terminalreporter.write_line(
            f"{status} criterion {number:>2}: {title} ({passed}/{passed + failed} cases)"
        )
