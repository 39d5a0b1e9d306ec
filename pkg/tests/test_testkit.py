import dataclasses
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from hypothesis import given, settings, strategies as st

from ksync import conflict_graph
from ksync.errors import SchemaError
from ksync.model.system import PI
from ksync.msc import canonical_form
from ksync.schemas import SystemDoc, parse_document
from ksync.testkit import (
    SuiteConfig,
    check_fixture,
    fixture_names,
    gen_deviated_run,
    gen_msc,
    gen_run,
    gen_system,
    load_fixture,
    load_fixtures,
    run_oracle_suite,
)
from ksync.testkit import oracles
from ksync.testkit.fixtures import FixtureDoc

seeds = st.integers(min_value=0, max_value=100_000)


class FixturesTest(unittest.TestCase):
    def test_every_fixture_holds(self):
        self.assertGreaterEqual(len(fixture_names()), 16)
        for fx in load_fixtures():
            with self.subTest(fx.name):
                self.assertEqual(check_fixture(fx), [])

    def test_unknown_fixture(self):
        with self.assertRaises(SchemaError):
            load_fixture("no_such_fixture")

    def test_kinds(self):
        self.assertEqual({fx.kind for fx in load_fixtures("system")}, {"system"})
        self.assertIn(PI, load_fixture("deviation_feasible_run").processes())


class GeneratorsTest(unittest.TestCase):
    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_msc_is_seeded_and_acyclic(self, seed):
        msc = gen_msc(seed)
        self.assertTrue(msc.is_acyclic())
        self.assertEqual(canonical_form(msc), canonical_form(gen_msc(seed)))

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_run_exchanges_respect_k(self, seed):
        run = gen_run(seed, k=2)
        self.assertTrue(run)
        self.assertTrue(all(1 <= len(e.sends) <= 2 for e in run))

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_deviated_run_has_one_interception(self, seed):
        run = gen_deviated_run(seed, k=2)
        to_pi = [a for e in run for a in e.sends if a.receiver == PI]
        self.assertEqual(len(to_pi), 1)
        self.assertEqual(run[-1].sends[0].sender, PI)
        self.assertTrue(all(a.sender != PI for e in run[:-1] for a in e.actions))

    @given(seeds)
    @settings(max_examples=20, deadline=None)
    def test_system_is_valid_document(self, seed):
        system = gen_system(seed, single_sender=True)
        self.assertEqual(SystemDoc.from_system(system).to_system(), system)

    def test_match_rate(self):
        matched = total = 0
        for seed in range(200):
            for v in gen_msc(seed).exchanges():
                total += 1
                matched += v.matched
        self.assertGreater(matched / total, 0.45)
        self.assertLess(matched / total, 0.75)


class SuiteTest(unittest.TestCase):
    def test_empty_suite_passes(self):
        report = run_oracle_suite(SuiteConfig.empty())
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, {})

    def test_small_suite(self):
        cfg = SuiteConfig(
            fixtures=False,
            msc_cases=30,
            max_msgs=5,
            run_cases=30,
            system_cases=2,
            system_ks=(1,),
            max_length=5,
            p2p_systems=2,
            system_procs=2,
            system_states=2,
            max_states=2_000,
        )
        report = run_oracle_suite(cfg)
        self.assertTrue(report.ok, report.to_dict())
        self.assertEqual(report.checked["causal-graph"], 30)
        self.assertEqual(report.checked["badness"], 30)
        self.assertIn("decision", {**report.checked, **report.skipped})

    def test_missing_rule_is_caught(self):
        cfg = dataclasses.replace(SuiteConfig.empty(), fixtures=True)
        with mock.patch.object(conflict_graph, "_rule4_edges", return_value=()):
            self.assertTrue(check_fixture(load_fixture("unmatched_then_matched")))
            report = run_oracle_suite(cfg)
        self.assertFalse(report.ok)
        self.assertEqual(report.failure.prop, "fixtures")

    def test_failure_writes_reproducer(self):
        with tempfile.TemporaryDirectory() as tmp:
            cfg = dataclasses.replace(SuiteConfig.empty(), msc_cases=1, output_dir=Path(tmp))
            with mock.patch.object(oracles, "check_causal_msc", side_effect=lambda m: "forced"):
                report = run_oracle_suite(cfg)
            self.assertFalse(report.ok)
            self.assertEqual(report.failure.prop, "causal-graph")
            path = Path(report.failure.reproducer)
            doc = parse_document(FixtureDoc, path.read_text(encoding="utf-8"))
            self.assertEqual(doc.kind, "msc")
            self.assertEqual(len(doc.msc.to_msc().exchanges()), 1)

    def test_shrink_msc(self):
        msc = load_fixture("five_cycle_scc").msc()
        small = oracles.shrink_msc(msc, lambda m: len(m.exchanges()) >= 2)
        self.assertEqual(len(small.exchanges()), 2)


if __name__ == "__main__":
    unittest.main()
