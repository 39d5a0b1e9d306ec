import unittest

from ksync.errors import ExplosionLimit, FeasibilityViolation, PiSendsEarly, SecondDeviation, UnmatchedDeviation
from ksync.exchange import AbstractConfig, CausalBookkeeping, KExchange
from ksync.membership import (
    FeasState,
    bad_run,
    decide_k_synchronizability,
    feas_accept,
    feas_step,
    q_guesses,
)
from ksync.model.system import MAILBOX, P2P, PI, send
from ksync.msc import k_synchronous_oracle, msc_of
from ksync.testkit import gen_system, load_fixture
from ksync.testkit.oracles import borderline_executions, check_counterexample, check_decision


def start_state(fx):
    return FeasState(AbstractConfig((), CausalBookkeeping.empty(fx.processes())))


class FeasibilityTest(unittest.TestCase):
    def test_feasible_run_is_accepted(self):
        fx = load_fixture("deviation_feasible_run")
        run = fx.run()
        fs = start_state(fx)
        for e in run[:-1]:
            fs = feas_step(fs, e, fx.k)
        self.assertEqual(fs.dest, "q")
        self.assertTrue(feas_accept(fs, run[-1]))

    def test_rejected_where_the_overtaking_happens(self):
        for name in ("deviation_infeasible_run", "deviation_overtake_run"):
            with self.subTest(name):
                fx = load_fixture(name)
                fs = start_state(fx)
                rejected = None
                for i, e in enumerate(fx.run()[:-1]):
                    try:
                        fs = feas_step(fs, e, fx.k)
                    except FeasibilityViolation as exc:
                        rejected = i
                        self.assertEqual(exc.dest, fs.dest)
                        break
                self.assertEqual(rejected, fx.expect["rejectedAt"])

    def test_single_deviation_and_late_forward(self):
        fx = load_fixture("deviation_feasible_run")
        run = fx.run()
        fs = feas_step(start_state(fx), run[0], fx.k)
        with self.assertRaises(SecondDeviation):
            feas_step(fs, run[0], fx.k)
        with self.assertRaises(PiSendsEarly):
            feas_step(start_state(fx), run[-1], fx.k)

    def test_accept_needs_a_deviation(self):
        fx = load_fixture("deviation_feasible_run")
        self.assertFalse(feas_accept(start_state(fx), fx.run()[-1]))

    def test_unmatched_send_to_pi_is_rejected(self):
        fx = load_fixture("deviation_feasible_run")
        e = KExchange.from_actions([send("p", PI, "q:m1")])
        with self.assertRaises(UnmatchedDeviation):
            feas_step(start_state(fx), e, fx.k)


class BadRunTest(unittest.TestCase):
    def test_shared_vertices_are_counted(self):
        fx = load_fixture("reach_coreach_run")
        state = bad_run(fx.run(), fx.k)
        self.assertEqual(state.count, fx.expect["count"])
        self.assertTrue(state.is_bad(fx.k))

    def test_rs_edge_only_counts_inside_the_run(self):
        self.assertFalse(bad_run(load_fixture("deviation_no_rs_run").run(), 3).is_bad(3))
        self.assertTrue(bad_run(load_fixture("deviation_rs_unmatched_run").run(), 3).is_bad(3))

    def test_guesses_keep_pi(self):
        guesses = list(q_guesses({PI, "p", "q"}))
        self.assertEqual(len(guesses), 4)
        self.assertTrue(all(PI in g for g in guesses))


class DecideTest(unittest.TestCase):
    def test_rs_cycle_system_is_not_synchronizable(self):
        system = load_fixture("rs_cycle_system").system()
        verdict = decide_k_synchronizability(system, 1, max_states=100_000)
        self.assertFalse(verdict.synchronizable)
        self.assertIsNotNone(verdict.counterexample)
        self.assertFalse(k_synchronous_oracle(verdict.counterexample, 1))
        final = verdict.deviated_run[-1]
        self.assertEqual(final.sends[0].sender, PI)
        doc = verdict.to_dict()
        self.assertEqual(doc["k"], 1)
        self.assertIsNotNone(doc["counterexample"])

    def test_late_delivery_system_is_synchronizable(self):
        system = load_fixture("late_delivery_system").system()
        verdict = decide_k_synchronizability(system, 1, max_states=100_000)
        self.assertTrue(verdict.synchronizable)
        self.assertIsNone(verdict.counterexample)
        self.assertGreater(verdict.states_explored, 0)

    def test_rs_cycle_system_for_every_small_k(self):
        system = load_fixture("rs_cycle_system").system()
        for k in range(1, 6):
            with self.subTest(k=k):
                verdict = decide_k_synchronizability(system, k, max_states=200_000)
                self.assertFalse(verdict.synchronizable)
                self.assertIsNone(check_counterexample(verdict, MAILBOX))

    def test_counterexample_is_borderline(self):
        system = load_fixture("rs_cycle_system").system()
        verdict = decide_k_synchronizability(system, 1, max_states=100_000)
        prefix, full = borderline_executions(verdict.deviated_run)
        self.assertEqual(len(full), len(prefix) + 1)
        self.assertTrue(full.actions[-1].is_recv)
        self.assertTrue(k_synchronous_oracle(msc_of(prefix), 1))
        self.assertFalse(k_synchronous_oracle(msc_of(full), 1))

    def test_late_delivery_system_for_larger_k(self):
        system = load_fixture("late_delivery_system").system()
        for k in (2, 3):
            with self.subTest(k=k):
                self.assertTrue(decide_k_synchronizability(system, k, max_states=100_000).synchronizable)


class DirectMethodTest(unittest.TestCase):
    """Decisions against "every bounded execution has a k-synchronous MSC"."""

    def test_random_systems_agree_with_bounded_search(self):
        for seed in range(8):
            for comm in (MAILBOX, P2P):
                with self.subTest(seed=seed, comm=comm):
                    system = gen_system(seed, 2, 3, comm=comm)
                    try:
                        detail = check_decision(system, 1, 6, None, 20_000)
                    except ExplosionLimit:
                        continue
                    self.assertIsNone(detail)


if __name__ == "__main__":
    unittest.main()
