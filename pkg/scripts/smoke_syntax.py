#!/usr/bin/env python3
"""Lightweight syntax smoke test runner.

Runs compileall for the repository, imports every module and classifies two
fixtures end to end.
"""
from __future__ import annotations

import subprocess
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))


def _run(cmd: list[str], *, cwd: Path) -> None:
    print("Running:", " ".join(cmd))
    result = subprocess.run(cmd, cwd=cwd)
    if result.returncode != 0:
        sys.exit(result.returncode)


def _smoke_imports() -> None:
    """Ensure every module imports without side effects."""

    import ksync.cli  # noqa: F401
    import ksync.lts  # noqa: F401
    import ksync.membership  # noqa: F401
    import ksync.p2p  # noqa: F401
    import ksync.testkit  # noqa: F401


def _smoke_msc_fixtures() -> None:
    from ksync.cli import analyze_msc_report
    from ksync.testkit import load_fixture

    report = analyze_msc_report(load_fixture("five_cycle_scc").msc(), 5)
    assert report["causal"] is True
    assert report["maxScc"] == 5 and report["minK"] == 5

    report = analyze_msc_report(load_fixture("unmatched_then_matched").msc(), 3)
    assert report["causal"] is False
    assert report["minK"] is None


def _smoke_step() -> None:
    from ksync.errors import CausalDeliveryViolation
    from ksync.exchange import AbstractConfig, CausalBookkeeping, run_exchanges
    from ksync.testkit import load_fixture

    fx = load_fixture("summary_violation_run")
    start = AbstractConfig((), CausalBookkeeping.empty(fx.processes()))
    try:
        run_exchanges(start, fx.run(), fx.k)
    except CausalDeliveryViolation as exc:
        assert exc.process == "r", exc.process
    else:
        raise AssertionError("summary_violation_run was accepted")


def main() -> None:
    _run([sys.executable, "-m", "compileall", "-q", str(REPO_ROOT / "ksync"), str(REPO_ROOT / "main.py")], cwd=REPO_ROOT)
    _smoke_imports()
    _smoke_msc_fixtures()
    _smoke_step()
    print("ok")


if __name__ == "__main__":
    main()
