import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from ksync.config import DEFAULT_MAX_STATES, load_verifier_config
from ksync.storage import dumps, read_json, write_json_atomic


class VerifierConfigTest(unittest.TestCase):
    def test_limits_from_env(self):
        with mock.patch.dict(os.environ, {"KSYNC_MAX_STATES": "1_000", "KSYNC_ORACLE_MAX_EVENTS": "8"}):
            cfg = load_verifier_config()
        self.assertEqual(cfg.max_states, 1000)
        self.assertEqual(cfg.oracle_max_events, 8)

    def test_bad_values_fall_back(self):
        for raw in ("many", "-5", "0"):
            with self.subTest(raw=raw), mock.patch.dict(os.environ, {"KSYNC_MAX_STATES": raw}):
                with self.assertLogs("ksync.config", level="WARNING"):
                    cfg = load_verifier_config()
                self.assertEqual(cfg.max_states, DEFAULT_MAX_STATES)

    def test_output_dir_alias(self):
        with mock.patch.dict(os.environ, {"KSYNC_OUTPUT_DIR": "", "STORAGE_DIR": "/tmp/ksync-out"}):
            self.assertEqual(load_verifier_config().output_dir, Path("/tmp/ksync-out"))


class StorageTest(unittest.TestCase):
    def setUp(self):
        self.tmp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp_dir.name)

    def tearDown(self):
        self.tmp_dir.cleanup()

    def test_atomic_write_creates_parents(self):
        path = write_json_atomic(self.root / "a" / "b.json", {"z": 1, "a": [1, 2]})
        self.assertEqual(read_json(path), {"z": 1, "a": [1, 2]})
        self.assertEqual(path.read_text(encoding="utf-8"), dumps({"a": [1, 2], "z": 1}))

    def test_missing_and_malformed(self):
        self.assertEqual(read_json(self.root / "none.json", default={}), {})
        bad = self.root / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with self.assertLogs("ksync.storage", level="WARNING"):
            self.assertIsNone(read_json(bad))


if __name__ == "__main__":
    unittest.main()
