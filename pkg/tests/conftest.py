import time
from contextlib import contextmanager

ACCEPTANCE = {}


@contextmanager
def criterion(number, title, limit=None):
    """Record one acceptance line; failures (including overtime) are recorded and re-raised."""
    t0 = time.perf_counter()
    notes = []
    try:
        yield notes
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - t0
        line = f"criterion {number} FAIL  {title} [{elapsed:.2f}s] {type(exc).__name__}: {exc}".splitlines()[0]
        ACCEPTANCE[number] = line
        print(line)
        raise
    detail = "; ".join(notes)
    line = f"criterion {number} PASS  {title} [{elapsed:.2f}s]" + (f" {detail}" if detail else "")
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
