import dataclasses
import unittest
from unittest import mock

from fastapi.testclient import TestClient

import main
from ksync.testkit import load_fixture


def msc_body(name):
    return load_fixture(name).doc.msc.model_dump(mode="json")


def system_body(name):
    return load_fixture(name).doc.system.model_dump(mode="json", by_alias=True)


class ServiceTest(unittest.TestCase):
    def setUp(self):
        self.client = TestClient(main.app)

    def test_root_and_health(self):
        self.assertEqual(self.client.get("/").json()["status"], "ok")
        self.assertEqual(self.client.head("/").status_code, 200)
        self.assertEqual(self.client.get("/health").json(), {"ok": True})

    def test_analyze_msc(self):
        resp = self.client.post("/analyze-msc", json={"msc": msc_body("five_cycle_scc"), "k": 5})
        self.assertEqual(resp.status_code, 200)
        body = resp.json()
        self.assertEqual(body["command"], "analyze-msc")
        self.assertEqual(body["result"]["minK"], 5)
        self.assertIn("elapsedMs", body)

    def test_decide_returns_deviated_run(self):
        resp = self.client.post("/decide", json={"system": system_body("rs_cycle_system"), "k": 1})
        self.assertEqual(resp.status_code, 200)
        result = resp.json()["result"]
        self.assertFalse(result["synchronizable"])
        self.assertTrue(result["deviatedRun"])

    def test_reach(self):
        goal = {"p": "p2", "q": "q2", "r": "r1"}
        resp = self.client.post("/reach", json={"system": system_body("late_delivery_system"), "k": 1, "goal": goal})
        self.assertEqual(resp.status_code, 200)
        self.assertTrue(resp.json()["result"]["reachable"])

    def test_bad_goal_is_422(self):
        resp = self.client.post("/reach", json={"system": system_body("late_delivery_system"), "k": 1, "goal": {"p": "p2"}})
        self.assertEqual(resp.status_code, 422)
        self.assertIn("goal", resp.json()["detail"])

    def test_invalid_body_is_422(self):
        resp = self.client.post("/decide", json={"system": system_body("rs_cycle_system"), "k": 0})
        self.assertEqual(resp.status_code, 422)

    def test_state_limit_is_413(self):
        small = dataclasses.replace(main.CONFIG, max_states=1)
        with mock.patch.object(main, "CONFIG", small):
            resp = self.client.post("/decide", json={"system": system_body("rs_cycle_system"), "k": 1})
        self.assertEqual(resp.status_code, 413)
        self.assertIn("states", resp.json()["stats"])


if __name__ == "__main__":
    unittest.main()
