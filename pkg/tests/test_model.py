import unittest

from ksync.errors import (
    BufferHeadMismatch,
    InputError,
    LastActionNotReceive,
    NotEnabled,
    ReservedName,
    SchemaError,
)
from ksync.model import (
    PI,
    Automaton,
    Execution,
    System,
    Transition,
    bounded_executions,
    compute_matching,
    deviate,
    instrument,
    pack_payload,
    project,
    recv,
    run,
    send,
    undeviate,
    unpack_payload,
)
from ksync.testkit import load_fixture


class ActionTest(unittest.TestCase):
    def test_counterpart_flips_kind(self):
        a = send("p", "q", "m")
        self.assertEqual(a.counterpart(), recv("p", "q", "m"))
        self.assertEqual(a.actor, "p")
        self.assertEqual(a.counterpart().actor, "q")

    def test_payload_roundtrip_and_garbage(self):
        self.assertEqual(unpack_payload(pack_payload("q", "m1")), ("q", "m1"))
        with self.assertRaises(InputError):
            unpack_payload("m1")

    def test_matching_pairs_nth_send_with_nth_receive(self):
        actions = [send("p", "q", "a"), send("p", "q", "a"), recv("p", "q", "a"), recv("p", "q", "a")]
        self.assertEqual(compute_matching(actions), {0: 2, 1: 3})
        with self.assertRaises(InputError):
            compute_matching([recv("p", "q", "a")])


class SystemValidationTest(unittest.TestCase):
    def test_pi_is_reserved(self):
        with self.assertRaises(ReservedName):
            System({"pi": Automaton.build("x", [])})

    def test_unknown_peer_is_rejected(self):
        p = Automaton.build("p0", [Transition("p0", send("p", "z", "m"), "p1")])
        with self.assertRaises(SchemaError):
            System({"p": p})

    def test_global_state_requires_every_process(self):
        system = load_fixture("late_delivery_system").system()
        self.assertEqual(system.global_state({"p": "p2", "q": "q2", "r": "r1"}), ("p2", "q2", "r1"))
        with self.assertRaises(InputError):
            system.global_state({"p": "p2"})


class SemanticsTest(unittest.TestCase):
    def setUp(self):
        fx = load_fixture("late_delivery_system")
        self.system = fx.system()
        self.execution = fx.execution()

    def test_execution_needs_two_buffered_messages(self):
        result = run(self.system, self.execution)
        self.assertEqual(result.peak_buffer, 2)
        self.assertEqual(result.final.global_state, ("p2", "q2", "r1"))
        self.assertEqual(result.final.buffer("q"), (("p", "m1"),))

    def test_receive_checks_buffer_head(self):
        actions = [
            send("q", "p", "m2"),
            send("p", "q", "m1"),
            send("r", "q", "m3"),
            recv("r", "q", "m3"),
        ]
        with self.assertRaises(BufferHeadMismatch) as ctx:
            run(self.system, actions)
        self.assertEqual(ctx.exception.index, 3)

    def test_disabled_action(self):
        with self.assertRaises(NotEnabled) as ctx:
            run(self.system, [recv("q", "p", "m2")])
        self.assertEqual(ctx.exception.index, 0)

    def test_bounded_executions_include_empty_one(self):
        found = list(bounded_executions(self.system, 0))
        self.assertEqual(len(found), 1)
        self.assertEqual(len(found[0][0]), 0)


class InstrumentTest(unittest.TestCase):
    def test_instrument_then_project(self):
        system = load_fixture("late_delivery_system").system()
        instrumented = instrument(system)
        self.assertIn(PI, instrumented.processes)
        self.assertTrue(instrumented.instrumented)
        # one receive per send type and one forward out of each holding state
        self.assertEqual(len(instrumented.automaton(PI).transitions), 6)
        self.assertEqual(project(instrumented), system)

    def test_deviate_routes_final_message_through_pi(self):
        actions = [send("p", "q", "m1"), send("q", "p", "m2"), recv("q", "p", "m2"), recv("p", "q", "m1")]
        deviated = deviate(actions)
        self.assertEqual(deviated.actions[0], send("p", PI, "q:m1"))
        self.assertEqual(deviated.actions[-2:], (send(PI, "q", "m1"), recv(PI, "q", "m1")))

        restored = undeviate(deviated)
        self.assertEqual(restored, Execution(tuple(actions), compute_matching(actions)))

    def test_deviate_needs_final_receive(self):
        with self.assertRaises(LastActionNotReceive):
            deviate([send("p", "q", "m1")])


if __name__ == "__main__":
    unittest.main()
