import unittest

from ksync.errors import ExplosionLimit
from ksync.lts import decide_reachability, explore, to_dot
from ksync.testkit import load_fixture


class LtsTest(unittest.TestCase):
    def setUp(self):
        self.system = load_fixture("late_delivery_system").system()

    def test_explore_from_initial_state(self):
        lts = explore(self.system, 1)
        self.assertEqual(lts.states[0].global_state, self.system.initial_state)
        self.assertIn(("p2", "q2", "r1"), lts.global_states())
        doc = lts.to_document(self.system)
        self.assertEqual(doc["states"][0]["global"], {"p": "p0", "q": "q0", "r": "r0"})
        self.assertIn("digraph", to_dot(lts, self.system))

    def test_witness_leads_to_goal(self):
        goal = self.system.global_state({"p": "p2", "q": "q2", "r": "r1"})
        found = decide_reachability(self.system, 1, goal)
        self.assertTrue(found.reachable)
        self.assertEqual(found.witness[-1].target, goal)
        self.assertEqual(found.witness[0].source, self.system.initial_state)

    def test_receive_before_send_is_unreachable(self):
        goal = self.system.global_state({"p": "p2", "q": "q0", "r": "r0"})
        found = decide_reachability(self.system, 1, goal)
        self.assertFalse(found.reachable)
        self.assertIsNone(found.to_dict(self.system)["witness"])

    def test_state_limit(self):
        with self.assertRaises(ExplosionLimit):
            explore(self.system, 1, max_states=1)


if __name__ == "__main__":
    unittest.main()
