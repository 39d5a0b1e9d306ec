"""Random generators, hand-written fixtures and the brute-force oracle suite."""

from ksync.testkit.fixtures import Fixture, fixture_names, load_fixture, load_fixtures
from ksync.testkit.generators import gen_deviated_run, gen_msc, gen_run, gen_system
from ksync.testkit.oracles import SuiteConfig, SuiteReport, check_fixture, run_oracle_suite

__all__ = [
    "Fixture",
    "SuiteConfig",
    "SuiteReport",
    "check_fixture",
    "fixture_names",
    "gen_deviated_run",
    "gen_msc",
    "gen_run",
    "gen_system",
    "load_fixture",
    "load_fixtures",
    "run_oracle_suite",
]
