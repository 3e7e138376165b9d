import re


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome != "error":
                continue
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m:
                props = dict(rep.user_properties)
                rows.append((int(m.group(1)), m.group(2), outcome == "passed", props))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok, props in sorted(rows):
        timing = ""
        if "elapsed" in props:
            timing = f"  {props['elapsed']:.2f}s / {props['budget']:g}s"
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}{timing}")
