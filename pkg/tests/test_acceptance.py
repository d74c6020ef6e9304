"""Acceptance gate: the eight criteria, one verdict line each."""

import time

import pytest

from soficovers.verification import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "number,title", [(n, t) for n, t, _ in CRITERIA], ids=[t for _, t, _ in CRITERIA]
)
def test_criterion(number, title, capsys):
    started = time.perf_counter()
    result = run_criterion(number)
    elapsed = time.perf_counter() - started
    verdict = "PASS" if result.ok else "FAIL"
    with capsys.disabled():
        print(
            f"criterion {number} ({title}): {verdict}"
            f" [{len(result.checks)} checks, {elapsed:.2f}s]"
        )
    failures = "; ".join(
        f"{c.name}: {c.detail}" if c.detail else c.name for c in result.failures()
    )
    assert result.ok, failures
