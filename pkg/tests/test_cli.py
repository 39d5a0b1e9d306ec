import contextlib
import io
import json
import tempfile
import unittest
from pathlib import Path

from ksync.cli import EXIT_FAILS, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main, parse_goal, system_from_text
from ksync.errors import SchemaError
from ksync.schemas import LtsDoc, parse_document
from ksync.testkit import load_fixture


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp_dir.name)

    def tearDown(self):
        self.tmp_dir.cleanup()

    def _write(self, name, data):
        path = self.root / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    def _msc_file(self, fixture):
        return self._write(f"{fixture}.json", load_fixture(fixture).doc.msc.model_dump(mode="json"))

    def _system_file(self, fixture):
        return self._write(f"{fixture}.json", load_fixture(fixture).doc.system.model_dump(mode="json", by_alias=True))

    def _main(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def _json(self, *argv):
        code, out, _ = self._main(*argv, "--json", "--no-timing")
        return code, json.loads(out)

    def test_analyze_msc(self):
        path = self._msc_file("five_cycle_scc")
        code, payload = self._json("analyze-msc", path, "--k", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(payload["result"]["minK"], 5)
        self.assertNotIn("elapsedMs", payload)
        self.assertEqual(len(payload["input"]["sha256"]), 64)

        code, payload = self._json("analyze-msc", path, "--k", "4")
        self.assertEqual(code, EXIT_FAILS)
        self.assertIsNone(payload["result"]["minK"])

    def test_analyze_msc_writes_dot(self):
        dot = self.root / "graph.dot"
        code, _ = self._json("analyze-msc", self._msc_file("unmatched_then_matched"), "--k", "2", "--dot", str(dot))
        self.assertEqual(code, EXIT_FAILS)
        self.assertIn("digraph", dot.read_text(encoding="utf-8"))

    def test_output_is_byte_stable(self):
        argv = ("analyze-msc", self._msc_file("rs_cycle_three_party"), "--k", "3", "--json", "--no-timing")
        self.assertEqual(self._main(*argv)[1], self._main(*argv)[1])

    def test_decide_writes_counterexample(self):
        path = self._system_file("rs_cycle_system")
        code, payload = self._json("decide", path, "--k", "1", "--out", str(self.root / "out"))
        self.assertEqual(code, EXIT_FAILS)
        result = payload["result"]
        self.assertFalse(result["synchronizable"])
        written = json.loads(Path(result["counterexampleFile"]).read_text(encoding="utf-8"))
        self.assertEqual(written, result["counterexample"])
        self.assertEqual(result["deviatedRun"][-1][0]["sender"], "pi")

    def test_decide_limit(self):
        path = self._system_file("rs_cycle_system")
        code, out, err = self._main("decide", path, "--k", "1", "--limit-states", "1")
        self.assertEqual(code, EXIT_LIMIT)
        self.assertEqual(out, "")
        self.assertIn("limit", err)

    def test_reach(self):
        path = self._system_file("late_delivery_system")
        code, payload = self._json("reach", path, "--k", "1", "--goal", "p=p2,q=q2,r=r1")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(payload["result"]["reachable"])
        self.assertTrue(payload["result"]["witness"])

    def test_explore_and_min_k(self):
        path = self._system_file("late_delivery_system")
        out = self.root / "lts.json"
        code, payload = self._json("explore", path, "--k", "1", "--out", str(out))
        self.assertEqual(code, EXIT_OK)
        lts = parse_document(LtsDoc, out.read_text(encoding="utf-8"))
        self.assertEqual(len(lts.states), payload["result"]["states"])

        code, payload = self._json("min-k", path, "--k", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(payload["result"]["minK"], 1)

    def test_input_errors(self):
        path = self._system_file("late_delivery_system")
        self.assertEqual(self._main("reach", path, "--k", "1", "--goal", "p")[0], EXIT_INPUT)
        self.assertEqual(self._main("decide", path, "--k", "0")[0], EXIT_INPUT)
        self.assertEqual(self._main("decide", str(self.root / "missing.json"), "--k", "1")[0], EXIT_INPUT)
        broken = self._write("broken.json", {"processes": {"p": {"initial": "p0", "bogus": True}}})
        code, _, err = self._main("decide", broken, "--k", "1")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("processes.p.bogus", err)

    def test_text_output(self):
        code, out, _ = self._main("analyze-msc", self._msc_file("five_cycle_scc"), "--k", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("minK: 5", out)
        self.assertIn("elapsedMs", out)


class HelpersTest(unittest.TestCase):
    def test_parse_goal(self):
        self.assertEqual(parse_goal("p=p2, q=q0"), {"p": "p2", "q": "q0"})
        with self.assertRaises(SchemaError) as ctx:
            parse_goal("p=")
        self.assertEqual(ctx.exception.location, "goal")

    def test_comm_field_wins_over_flag(self):
        doc = load_fixture("late_delivery_system").doc.system
        with_field = json.dumps(doc.model_dump(mode="json", by_alias=True))
        self.assertEqual(system_from_text(with_field, "p2p").comm, "mailbox")
        without = doc.model_dump(mode="json", by_alias=True)
        del without["comm"]
        self.assertEqual(system_from_text(json.dumps(without), "p2p").comm, "p2p")


if __name__ == "__main__":
    unittest.main()
