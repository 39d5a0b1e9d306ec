#!/usr/bin/env python3
"""Run the brute-force oracle suite at full scale (or the scale given on the command line)."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from dotenv import load_dotenv  # noqa: E402

from ksync.config import load_verifier_config, setup_logging  # noqa: E402
from ksync.storage import dumps  # noqa: E402
from ksync.testkit.oracles import SuiteConfig, run_oracle_suite  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description="Check graph and incremental procedures against brute-force oracles")
    parser.add_argument("--seed", type=int, default=0, help="first seed")
    parser.add_argument("--msc-cases", type=int, default=1000, help="random MSCs for the graph equivalences")
    parser.add_argument("--run-cases", type=int, default=500, help="random runs for step/feasibility/badness")
    parser.add_argument("--system-cases", type=int, default=30, help="random systems for the reachability check")
    parser.add_argument("--p2p-systems", type=int, default=30, help="single-sender systems decided in both modes")
    parser.add_argument("--no-fixtures", action="store_true", help="skip the hand-written fixtures")
    parser.add_argument("--output", type=Path, default=None, help="reproducer directory; default KSYNC_OUTPUT_DIR")
    args = parser.parse_args()

    load_dotenv()
    setup_logging()
    settings = load_verifier_config()
    cfg = SuiteConfig(
        seed=args.seed,
        fixtures=not args.no_fixtures,
        msc_cases=args.msc_cases,
        run_cases=args.run_cases,
        system_cases=args.system_cases,
        p2p_systems=args.p2p_systems,
        output_dir=args.output or settings.output_dir,
    )
    report = run_oracle_suite(cfg)
    sys.stdout.write(dumps(report.to_dict()))
    sys.exit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
