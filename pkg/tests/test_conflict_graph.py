import unittest
from unittest import mock

from ksync import conflict_graph
from ksync.conflict_graph import (
    badness_by_graph,
    build,
    causal_delivery_by_graph,
    deviation_vertices,
    extend,
    feasibility_by_graph,
    k_synchronous_by_graph,
    scc_report,
    succ_pred_sets,
    to_dot,
)
from ksync.errors import MissingDeviationVertices, NotCausalDelivery
from ksync.testkit import load_fixture
from ksync.testkit.oracles import run_graph


def graph_of(name):
    return extend(build(load_fixture(name).msc()))


class BaseEdgesTest(unittest.TestCase):
    def test_one_edge_of_each_shape(self):
        cg = graph_of("conflict_edges_demo")
        m1, m2, m3 = (cg.by_message(m) for m in ("m1", "m2", "m3"))
        self.assertTrue(cg.has_base(m1, "RS", m2))
        self.assertTrue(cg.has_base(m1, "SR", m2))
        self.assertTrue(cg.has_base(m1, "SS", m3))
        self.assertTrue(cg.has_base(m3, "SR", m2))
        self.assertFalse(cg.has_base(m2, "SS", m1))


class CausalDeliveryTest(unittest.TestCase):
    def test_verdicts_on_fixtures(self):
        self.assertFalse(causal_delivery_by_graph(graph_of("unmatched_then_matched")))
        self.assertFalse(causal_delivery_by_graph(graph_of("relayed_overtake")))
        self.assertFalse(causal_delivery_by_graph(graph_of("mailbox_order_violation_msc")))
        self.assertTrue(causal_delivery_by_graph(graph_of("five_cycle_scc")))

    def test_matched_before_unmatched_rule_is_needed(self):
        cg = build(load_fixture("unmatched_then_matched").msc())
        with mock.patch.object(conflict_graph, "_rule4_edges", return_value=()):
            self.assertTrue(causal_delivery_by_graph(extend(cg)))
        self.assertFalse(causal_delivery_by_graph(extend(cg)))

    def test_k_synchronous_requires_causal_delivery(self):
        with self.assertRaises(NotCausalDelivery):
            k_synchronous_by_graph(load_fixture("unmatched_then_matched").msc(), 1)


class SccTest(unittest.TestCase):
    def test_five_cycle(self):
        report = scc_report(graph_of("five_cycle_scc"))
        self.assertEqual(report.max_size, 5)
        self.assertFalse(report.rs_on_cycle)
        msc = load_fixture("five_cycle_scc").msc()
        self.assertFalse(k_synchronous_by_graph(msc, 4)[0])
        self.assertTrue(k_synchronous_by_graph(msc, 5)[0])

    def test_rs_cycle(self):
        report = scc_report(graph_of("rs_cycle_three_party"))
        self.assertTrue(report.rs_on_cycle)
        self.assertFalse(k_synchronous_by_graph(load_fixture("rs_cycle_three_party").msc(), 5)[0])

    def test_dot_marks_deduced_edges(self):
        dot = to_dot(graph_of("unmatched_then_matched"))
        self.assertIn("digraph", dot)
        self.assertIn("dashed", dot)


class DeviatedRunGraphTest(unittest.TestCase):
    def test_feasibility(self):
        self.assertTrue(feasibility_by_graph(run_graph(load_fixture("deviation_feasible_run").run())))
        self.assertFalse(feasibility_by_graph(run_graph(load_fixture("deviation_infeasible_run").run())))
        self.assertFalse(feasibility_by_graph(run_graph(load_fixture("deviation_overtake_run").run())))

    def test_reachable_and_coreachable_sets(self):
        fx = load_fixture("reach_coreach_run")
        succ, pred = succ_pred_sets(run_graph(fx.run()))
        self.assertEqual({v.message for v in succ}, set(fx.expect["succ"]))
        self.assertEqual({v.message for v in pred}, set(fx.expect["pred"]))
        self.assertTrue(badness_by_graph(run_graph(fx.run()), fx.k))

    def test_badness_needs_rs_on_the_path(self):
        self.assertFalse(badness_by_graph(run_graph(load_fixture("deviation_no_rs_run").run()), 3))
        self.assertTrue(badness_by_graph(run_graph(load_fixture("deviation_rs_unmatched_run").run()), 3))

    def test_graph_without_deviation(self):
        with self.assertRaises(MissingDeviationVertices):
            deviation_vertices(graph_of("five_cycle_scc"))


if __name__ == "__main__":
    unittest.main()
