import unittest

from ksync.errors import ExplosionLimit, P2pCausalDeliveryViolation, P2pFeasibilityViolation, UnmatchedDeviation
from ksync.exchange import KExchange
from ksync.lts import decide_reachability, explore
from ksync.model.system import PI, recv, send
from ksync.p2p import (
    P2pConfig,
    P2pFeasState,
    p2p_decide_k_synchronizability,
    p2p_decide_reachability,
    p2p_explore,
    p2p_feas_step,
    p2p_run,
    p2p_step,
)
from ksync.testkit import gen_system, load_fixture
from ksync.testkit.oracles import check_mailbox_vs_p2p, incremental_causal


def exchange(*actions):
    return KExchange.from_actions(actions, comm="p2p")


class P2pStepTest(unittest.TestCase):
    def test_unmatched_message_blocks_its_channel(self):
        cfg = p2p_step(P2pConfig(()), exchange(send("p", "r", "m1")), 1)
        self.assertEqual(cfg.senders_blocked("r"), frozenset({"p"}))
        with self.assertRaises(P2pCausalDeliveryViolation):
            p2p_step(cfg, exchange(send("p", "r", "m2"), recv("p", "r", "m2")), 1)

    def test_relay_through_another_channel(self):
        run = [
            exchange(send("p", "r", "m1")),
            exchange(send("p", "q", "m2"), recv("p", "q", "m2")),
            exchange(send("q", "r", "m3"), recv("q", "r", "m3")),
        ]
        cfg = p2p_run(P2pConfig(()), run, 1)
        self.assertEqual(cfg.book_document(), {"r": ["p"]})
        # one mailbox per receiver makes the same run overtake m1
        mailbox = [KExchange.from_actions(e.actions) for e in run]
        self.assertFalse(incremental_causal(mailbox, 1))


class P2pFeasibilityTest(unittest.TestCase):
    def setUp(self):
        deviation = exchange(send("p", PI, "q:m1"), recv("p", PI, "q:m1"))
        self.fs = p2p_feas_step(P2pFeasState(P2pConfig(())), deviation, 1)

    def test_deviation_is_remembered(self):
        self.assertEqual((self.fs.exp, self.fs.dest), ("p", "q"))

    def test_same_channel_after_deviation(self):
        with self.assertRaises(P2pFeasibilityViolation):
            p2p_feas_step(self.fs, exchange(send("p", "q", "m2"), recv("p", "q", "m2")), 1)

    def test_other_channel_after_deviation(self):
        fs = p2p_feas_step(self.fs, exchange(send("r", "q", "m2"), recv("r", "q", "m2")), 1)
        self.assertEqual(fs.dest, "q")

    def test_unmatched_send_to_pi_is_rejected(self):
        fs = P2pFeasState(P2pConfig(()))
        with self.assertRaises(UnmatchedDeviation):
            p2p_feas_step(fs, exchange(send("p", PI, "q:m1")), 1)


class P2pReachabilityTest(unittest.TestCase):
    def setUp(self):
        self.system = load_fixture("relayed_goal_system").system()
        self.goal = self.system.global_state({"p": "p2", "q": "q2", "r": "r1"})

    def test_separate_channels_reach_the_relayed_goal(self):
        found = p2p_decide_reachability(self.system, 1, self.goal, max_states=10_000)
        self.assertTrue(found.reachable)
        self.assertEqual(len(found.witness), 3)
        self.assertEqual(found.witness[-1].target, self.goal)

    def test_one_mailbox_does_not(self):
        found = decide_reachability(self.system, 1, self.goal, max_states=10_000)
        self.assertFalse(found.reachable)
        self.assertIsNone(found.witness)

    def test_explored_states(self):
        self.assertIn(self.goal, p2p_explore(self.system, 1).global_states())
        mailbox = explore(self.system, 1)
        self.assertNotIn(self.goal, mailbox.global_states())
        self.assertTrue(mailbox.violations)

    def test_initial_goal_has_empty_witness(self):
        found = p2p_decide_reachability(self.system, 1, self.system.initial_state)
        self.assertTrue(found.reachable)
        self.assertEqual(found.witness, [])
        self.assertEqual(found.states_explored, 1)

    def test_single_sender_systems_reach_the_same_states(self):
        for seed in range(5):
            with self.subTest(seed=seed):
                system = gen_system(seed, 2, 3, single_sender=True)
                try:
                    mailbox = explore(system, 1, max_states=20_000)
                    p2p = p2p_explore(system, 1, max_states=20_000)
                except ExplosionLimit:
                    continue
                self.assertEqual(mailbox.global_states(), p2p.global_states())


class P2pDecideTest(unittest.TestCase):
    def test_rs_cycle_system(self):
        system = load_fixture("rs_cycle_system").system()
        verdict = p2p_decide_k_synchronizability(system, 1, max_states=100_000)
        self.assertFalse(verdict.synchronizable)
        self.assertEqual(verdict.comm, "p2p")

    def test_single_sender_systems_agree_with_mailbox(self):
        for seed in range(3):
            with self.subTest(seed=seed):
                system = gen_system(seed, 2, 2, single_sender=True)
                try:
                    self.assertIsNone(check_mailbox_vs_p2p(system, 1, 20_000))
                except ExplosionLimit:
                    self.skipTest("state limit")


if __name__ == "__main__":
    unittest.main()
