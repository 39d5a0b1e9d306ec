# ksync/cli.py
"""Command line: analyze-msc, decide, reach, explore, min-k.

Exit codes: 0 property holds, 1 property fails, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from dotenv import load_dotenv

from ksync import __version__
from ksync.config import VerifierConfig, load_verifier_config, setup_logging
from ksync.conflict_graph import build, causal_delivery_by_graph, extend, scc_report, to_dot
from ksync.errors import ExplosionLimit, InputError, SchemaError
from ksync.lts import decide_reachability, explore
from ksync.lts import to_dot as lts_to_dot
from ksync.membership import Verdict, decide_k_synchronizability
from ksync.model.system import COMM_MODES, MAILBOX, P2P, System
from ksync.msc import Msc, causal_delivery_oracle
from ksync.p2p import p2p_decide_k_synchronizability, p2p_decide_reachability, p2p_explore
from ksync.schemas import SystemDoc, parse_document, parse_msc, read_text
from ksync.storage import dumps, write_json_atomic, write_text_atomic

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


# --- reports shared with the HTTP service ------------------------------------


def analyze_msc_report(msc: Msc, k: int, comm: str = MAILBOX, *, oracle_max_events: int | None = None) -> dict[str, Any]:
    """Causal delivery (oracle and graph), SCC facts and the smallest k' <= k."""
    cg = extend(build(msc))
    report = scc_report(cg)
    by_graph = causal_delivery_by_graph(cg) if comm == MAILBOX else None
    by_oracle = None
    if oracle_max_events is None or len(msc) <= oracle_max_events:
        by_oracle = causal_delivery_oracle(msc, comm)
    causal = by_graph if by_graph is not None else by_oracle
    if by_graph is not None and by_oracle is not None and by_graph != by_oracle:
        logger.error("causal delivery verdicts disagree: graph=%s oracle=%s", by_graph, by_oracle)
    min_k = None
    if causal and not report.rs_on_cycle:
        min_k = max(report.max_size, 1)
        if min_k > k:
            min_k = None
    return {
        "causal": causal,
        "causalGraph": by_graph,
        "causalOracle": by_oracle,
        "minK": min_k,
        "maxScc": report.max_size,
        "rsCycle": report.rs_on_cycle,
        "components": report.to_dict()["components"],
    }


def decide_verdict(system: System, k: int, *, max_states: int | None = None, max_exchanges: int | None = None) -> Verdict:
    decide = p2p_decide_k_synchronizability if system.comm == P2P else decide_k_synchronizability
    return decide(system, k, max_states=max_states, max_exchanges=max_exchanges)


def reach_report(
    system: System,
    k: int,
    goal: dict[str, str],
    *,
    max_states: int | None = None,
    max_exchanges: int | None = None,
) -> dict[str, Any]:
    target = system.global_state(goal)
    decide = p2p_decide_reachability if system.comm == P2P else decide_reachability
    result = decide(system, k, target, max_states=max_states, max_exchanges=max_exchanges)
    return result.to_dict(system)


def system_from_doc(doc: SystemDoc, comm: str | None = None) -> System:
    """The document's ``comm`` wins; ``comm`` only fills in when the document has none."""
    if "comm" not in doc.model_fields_set and comm is not None:
        doc = doc.model_copy(update={"comm": comm})
    return doc.to_system()


def system_from_text(text: str, comm: str | None = None) -> System:
    return system_from_doc(parse_document(SystemDoc, text), comm)


def parse_goal(raw: str) -> dict[str, str]:
    """``p=l1,q=l0`` or a path to a JSON object."""
    candidate = Path(raw)
    if raw.endswith(".json") or candidate.is_file():
        data = json.loads(read_text(candidate))
        if not isinstance(data, dict):
            raise SchemaError("goal file must hold an object", location="goal")
        return {str(p): str(s) for p, s in data.items()}
    goal: dict[str, str] = {}
    for part in filter(None, (chunk.strip() for chunk in raw.split(","))):
        proc, sep, state = part.partition("=")
        if not sep or not proc or not state:
            raise SchemaError(f"cannot read {part!r}, expected proc=state", location="goal")
        goal[proc.strip()] = state.strip()
    return goal


# --- commands -------------------------------------------------------------------


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _limits(args: argparse.Namespace, cfg: VerifierConfig) -> dict[str, int]:
    return {
        "max_states": args.limit_states or cfg.max_states,
        "max_exchanges": cfg.max_exchanges,
    }


def cmd_analyze_msc(args: argparse.Namespace, cfg: VerifierConfig) -> tuple[int, dict[str, Any]]:
    text = read_text(args.file)
    msc = parse_msc(text)
    result = analyze_msc_report(msc, args.k, args.comm or MAILBOX, oracle_max_events=cfg.oracle_max_events)
    if args.dot:
        result["dot"] = str(write_text_atomic(Path(args.dot), to_dot(extend(build(msc)))))
    ok = bool(result["causal"]) and result["minK"] is not None
    return (EXIT_OK if ok else EXIT_FAILS), {"sha256": _digest(text), "comm": args.comm or MAILBOX, "result": result}


def cmd_decide(args: argparse.Namespace, cfg: VerifierConfig) -> tuple[int, dict[str, Any]]:
    text = read_text(args.file)
    system = system_from_text(text, args.comm)
    digest = _digest(text)
    verdict = decide_verdict(system, args.k, **_limits(args, cfg))
    result = verdict.to_dict()
    if not verdict.synchronizable:
        out_dir = Path(args.out) if args.out else cfg.output_dir
        path = out_dir / f"counterexample-{digest[:12]}-k{args.k}.json"
        result["counterexampleFile"] = str(write_json_atomic(path, result["counterexample"]))
        result["deviatedRun"] = verdict.run_document()
    return (EXIT_OK if verdict.synchronizable else EXIT_FAILS), {"sha256": digest, "comm": system.comm, "result": result}


def cmd_reach(args: argparse.Namespace, cfg: VerifierConfig) -> tuple[int, dict[str, Any]]:
    text = read_text(args.file)
    system = system_from_text(text, args.comm)
    result = reach_report(system, args.k, parse_goal(args.goal), **_limits(args, cfg))
    return (EXIT_OK if result["reachable"] else EXIT_FAILS), {"sha256": _digest(text), "comm": system.comm, "result": result}


def cmd_explore(args: argparse.Namespace, cfg: VerifierConfig) -> tuple[int, dict[str, Any]]:
    text = read_text(args.file)
    system = system_from_text(text, args.comm)
    runner = p2p_explore if system.comm == P2P else explore
    lts = runner(system, args.k, **_limits(args, cfg))
    out = Path(args.out) if args.out else cfg.output_dir / f"lts-{_digest(text)[:12]}-k{args.k}.json"
    write_json_atomic(out, lts.to_document(system))
    result: dict[str, Any] = {
        "states": len(lts.states),
        "transitions": len(lts.transitions),
        "violations": len(lts.violations),
        "out": str(out),
    }
    if args.dot:
        result["dot"] = str(write_text_atomic(Path(args.dot), lts_to_dot(lts, system)))
    return EXIT_OK, {"sha256": _digest(text), "comm": system.comm, "result": result}


def cmd_min_k(args: argparse.Namespace, cfg: VerifierConfig) -> tuple[int, dict[str, Any]]:
    """Successive decisions for k = 1..k_max."""
    text = read_text(args.file)
    system = system_from_text(text, args.comm)
    verdicts = []
    found = None
    for k in range(1, args.k + 1):
        verdict = decide_verdict(system, k, **_limits(args, cfg))
        verdicts.append({"k": k, "synchronizable": verdict.synchronizable, "statesExplored": verdict.states_explored})
        if verdict.synchronizable:
            found = k
            break
    result = {"minK": found, "verdicts": verdicts}
    return (EXIT_OK if found is not None else EXIT_FAILS), {"sha256": _digest(text), "comm": system.comm, "result": result}


COMMANDS: dict[str, Callable[[argparse.Namespace, VerifierConfig], tuple[int, dict[str, Any]]]] = {
    "analyze-msc": cmd_analyze_msc,
    "decide": cmd_decide,
    "reach": cmd_reach,
    "explore": cmd_explore,
    "min-k": cmd_min_k,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksync", description="k-synchronizability of communicating automata")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", type=Path, help="input JSON (system or MSC)")
    common.add_argument("--k", type=int, required=True, help="exchange bound (k >= 1)")
    common.add_argument("--comm", choices=COMM_MODES, default=None, help="mailbox | p2p (a 'comm' field in the file wins)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--no-timing", action="store_true", help="omit elapsedMs for byte-stable output")
    common.add_argument("--limit-states", type=int, default=None, help="state cap (default KSYNC_MAX_STATES)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze-msc", parents=[common], help="causal delivery / SCC report for one MSC")
    p.add_argument("--dot", default=None, help="write the extended conflict graph as DOT")
    p = sub.add_parser("decide", parents=[common], help="is the system k-synchronizable?")
    p.add_argument("--out", default=None, help="directory for the counterexample MSC")
    p = sub.add_parser("reach", parents=[common], help="reachability of a global control state")
    p.add_argument("--goal", required=True, help="p=l1,q=l0 or a JSON file")
    p = sub.add_parser("explore", parents=[common], help="dump the k-exchange LTS")
    p.add_argument("--out", default=None, help="LTS JSON path")
    p.add_argument("--dot", default=None, help="write the LTS as DOT")
    sub.add_parser("min-k", parents=[common], help="smallest k <= --k for which the system is synchronizable")
    return parser


def _render_text(payload: dict[str, Any]) -> str:
    lines = [f"{payload['command']}: {payload['input']['path']} (k={payload['k']}, comm={payload['comm']})"]
    for key, value in payload["result"].items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, ensure_ascii=False, sort_keys=True)
        lines.append(f"  {key}: {value}")
    if "elapsedMs" in payload:
        lines.append(f"  elapsedMs: {payload['elapsedMs']}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    setup_logging()
    args = build_parser().parse_args(argv)
    cfg = load_verifier_config()
    if args.k < 1:
        print("error: --k must be >= 1", file=sys.stderr)
        return EXIT_INPUT

    started = time.perf_counter()
    try:
        code, body = COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExplosionLimit as exc:
        print(f"limit: {exc} {dumps(exc.stats).strip()}", file=sys.stderr)
        return EXIT_LIMIT

    payload: dict[str, Any] = {
        "command": args.command,
        "input": {"path": str(args.file), "sha256": body["sha256"]},
        "k": args.k,
        "comm": body["comm"],
        "result": body["result"],
    }
    if not args.no_timing:
        payload["elapsedMs"] = round((time.perf_counter() - started) * 1000, 3)
    print(dumps(payload) if args.json else _render_text(payload), end="" if args.json else "\n")
    return code


__all__ = [
    "analyze_msc_report",
    "build_parser",
    "decide_verdict",
    "main",
    "parse_goal",
    "reach_report",
    "system_from_doc",
    "system_from_text",
]
