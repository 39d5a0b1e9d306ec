# ksync/testkit/oracles.py
"""Graph/incremental procedures checked against the brute-force oracles.

``run_oracle_suite`` stops at the first disagreement, shrinks the case and
writes it as a reproducer in the fixture JSON formats.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from ksync.conflict_graph import (
    ConflictGraph,
    badness_by_graph,
    build,
    causal_delivery_by_graph,
    extend,
    feasibility_by_graph,
    k_synchronous_by_graph,
    scc_report,
    succ_pred_sets,
)
from ksync.errors import CausalDeliveryViolation, ExplosionLimit, NotCausalDelivery, TransitionRejected
from ksync.exchange import AbstractConfig, CausalBookkeeping, KExchange, concatenate, run_exchanges
from ksync.lts import decide_reachability, explore
from ksync.membership import FeasState, Verdict, bad_run, decide_k_synchronizability, feas_accept, feas_step
from ksync.model.instrument import undeviate
from ksync.model.semantics import bounded_executions, run
from ksync.model.system import MAILBOX, P2P, PI, Execution, System
from ksync.msc import (
    Msc,
    canonical_form,
    causal_delivery_oracle,
    k_synchronous_oracle,
    msc_equal,
    msc_from_sequence,
    msc_of,
)
from ksync.p2p import P2pConfig, p2p_decide_k_synchronizability, p2p_decide_reachability, p2p_run
from ksync.schemas import MscDoc, SystemDoc, action_to_doc
from ksync.storage import write_json_atomic
from ksync.testkit.fixtures import Fixture, load_fixtures
from ksync.testkit.generators import gen_deviated_run, gen_msc, gen_run, gen_system, run_processes

logger = logging.getLogger(__name__)


# --- helpers over free-standing runs --------------------------------------------


def run_graph(run_: Sequence[KExchange]) -> ConflictGraph:
    actions, matching = concatenate(run_)
    return extend(build(msc_from_sequence(actions, matching)))


def run_msc(run_: Sequence[KExchange]) -> Msc:
    actions, matching = concatenate(run_)
    return msc_from_sequence(actions, matching)


def _free_config(processes: Iterable[str]) -> AbstractConfig:
    return AbstractConfig((), CausalBookkeeping.empty(processes))


def incremental_causal(run_: Sequence[KExchange], k: int) -> bool:
    """Mailbox step_k accepts every exchange."""
    try:
        run_exchanges(_free_config(run_processes(list(run_))), run_, k)
    except CausalDeliveryViolation:
        return False
    return True


def incremental_p2p_causal(run_: Sequence[KExchange], k: int) -> bool:
    try:
        p2p_run(P2pConfig(()), run_, k)
    except TransitionRejected:
        return False
    return True


def incremental_feasible(run_: Sequence[KExchange], k: int) -> bool:
    """Feasibility automaton over all but the last exchange, then the acceptance check."""
    procs = set(run_processes(list(run_))) | {PI}
    fs = FeasState(_free_config(procs))
    try:
        for e in run_[:-1]:
            fs = feas_step(fs, e, k)
    except TransitionRejected:
        return False
    return feas_accept(fs, run_[-1])


def incremental_bad(run_: Sequence[KExchange], k: int) -> bool:
    return bad_run(list(run_), k).is_bad(k)


# --- property checks --------------------------------------------------------------
#
# Each returns None when the property holds (or does not apply) and a short
# description of the disagreement otherwise.


def check_k_sync_msc(msc: Msc, ks: Sequence[int]) -> str | None:
    if not causal_delivery_oracle(msc):
        return None
    for k in ks:
        try:
            by_graph, _ = k_synchronous_by_graph(msc, k)
        except NotCausalDelivery:
            return "graph reports a causal-delivery violation the oracle does not see"
        by_oracle = k_synchronous_oracle(msc, k)
        if by_graph != by_oracle:
            return f"k={k}: graph={by_graph} oracle={by_oracle}"
    return None


def check_causal_msc(msc: Msc) -> str | None:
    by_graph = causal_delivery_by_graph(extend(build(msc)))
    by_oracle = causal_delivery_oracle(msc)
    return None if by_graph == by_oracle else f"graph={by_graph} oracle={by_oracle}"


def check_run_causal(run_: Sequence[KExchange], k: int, comm: str) -> str | None:
    msc = run_msc(run_)
    by_oracle = causal_delivery_oracle(msc, comm)
    accepted = incremental_p2p_causal(run_, k) if comm == P2P else incremental_causal(run_, k)
    return None if accepted == by_oracle else f"{comm}: step={accepted} oracle={by_oracle}"


def check_feasibility(run_: Sequence[KExchange], k: int) -> str | None:
    cg = run_graph(run_)
    if not causal_delivery_by_graph(cg) or not incremental_causal(run_[:-1], k):
        return None
    incremental = incremental_feasible(run_, k)
    by_graph = feasibility_by_graph(cg)
    return None if incremental == by_graph else f"incremental={incremental} graph={by_graph}"


def check_badness(run_: Sequence[KExchange], k: int) -> str | None:
    cg = run_graph(run_)
    if not causal_delivery_by_graph(cg) or not incremental_causal(run_[:-1], k):
        return None
    if not (incremental_feasible(run_, k) and feasibility_by_graph(cg)):
        return None
    incremental = incremental_bad(run_, k)
    by_graph = badness_by_graph(cg, k)
    return None if incremental == by_graph else f"incremental={incremental} graph={by_graph}"


def oracle_reachable(system: System, k: int, max_length: int, buffer_cap: int | None = None) -> set[tuple[str, ...]]:
    """Global states at the end of bounded executions whose MSC is k-synchronous."""
    reached: set[tuple[str, ...]] = set()
    verdicts: dict[tuple, bool] = {}
    for execution, config in bounded_executions(system, max_length, buffer_cap):
        if config.global_state in reached:
            continue
        msc = msc_of(execution)
        key = canonical_form(msc)
        if key not in verdicts:
            verdicts[key] = k_synchronous_oracle(msc, k, system.comm)
        if verdicts[key]:
            reached.add(config.global_state)
    return reached


def check_reachability(system: System, k: int, max_length: int, buffer_cap: int | None, max_states: int) -> str | None:
    """Both directions, restricted to witnesses the bounded search can see."""
    lts = explore(system, k, max_states=max_states)
    by_oracle = oracle_reachable(system, k, max_length, buffer_cap)
    by_lts = lts.global_states()
    missing = by_oracle - by_lts
    if missing:
        return f"k={k}: oracle reaches {sorted(missing)} that step_k does not"
    for sid, state in enumerate(lts.states):
        if state.global_state in by_oracle:
            continue
        if sum(len(e) for e in lts.path_to(sid)) <= max_length:
            return f"k={k}: step_k reaches {state.global_state} that no short k-synchronous execution reaches"
    return None


def oracle_violation(system: System, k: int, max_length: int, buffer_cap: int | None = None) -> Execution | None:
    """First bounded execution whose MSC is not k-synchronous."""
    verdicts: dict[tuple, bool] = {}
    for execution, _ in bounded_executions(system, max_length, buffer_cap):
        msc = msc_of(execution)
        key = canonical_form(msc)
        if key not in verdicts:
            verdicts[key] = k_synchronous_oracle(msc, k, system.comm)
        if not verdicts[key]:
            return execution
    return None


def borderline_executions(run_: Sequence[KExchange]) -> tuple[Execution, Execution]:
    """(e, e.r) behind a deviated run: the un-deviated execution and its prefix without the final receive."""
    actions, matching = concatenate(run_)
    full = undeviate(Execution(actions, matching))
    last = len(full) - 1
    prefix = Execution(full.actions[:last], {s: r for s, r in full.matching.items() if r != last})
    return prefix, full


def check_counterexample(verdict: Verdict, comm: str) -> str | None:
    """e.r is an execution that is not k-synchronous while e is."""
    k = verdict.k
    prefix, full = borderline_executions(verdict.deviated_run)
    msc = msc_of(full)
    if not msc_equal(msc, verdict.counterexample):
        return f"k={k}: counterexample differs from the un-deviated run"
    if not causal_delivery_oracle(msc, comm):
        return f"k={k}: counterexample is not the MSC of an execution"
    if k_synchronous_oracle(msc, k, comm):
        return f"k={k}: counterexample is k-synchronous"
    if not k_synchronous_oracle(msc_of(prefix), k, comm):
        return f"k={k}: counterexample without its last receive is not k-synchronous"
    return None


def check_decision(system: System, k: int, max_length: int, buffer_cap: int | None, max_states: int) -> str | None:
    """Decision procedure against "every bounded execution has a k-synchronous MSC"."""
    decide = p2p_decide_k_synchronizability if system.comm == P2P else decide_k_synchronizability
    verdict = decide(system, k, max_states=max_states)
    witness = oracle_violation(system, k, max_length, buffer_cap)
    if verdict.synchronizable:
        if witness is None:
            return None
        return f"k={k}: synchronizable, yet {' '.join(map(str, witness.actions))} is not k-synchronous"
    problem = check_counterexample(verdict, system.comm)
    if problem is not None:
        return problem
    if witness is None and buffer_cap is None and len(verdict.counterexample) <= max_length:
        return f"k={k}: counterexample of {len(verdict.counterexample)} actions, none found by bounded search"
    return None


def check_mailbox_vs_p2p(system: System, k: int, max_states: int) -> str | None:
    mailbox = decide_k_synchronizability(system, k, max_states=max_states)
    p2p = p2p_decide_k_synchronizability(system, k, max_states=max_states)
    if mailbox.synchronizable == p2p.synchronizable:
        return None
    return f"k={k}: mailbox={mailbox.synchronizable} p2p={p2p.synchronizable}"


# --- fixtures -------------------------------------------------------------------


def _check_msc_fixture(fx: Fixture) -> list[str]:
    msc, expect, problems = fx.msc(), fx.expect, []
    if "acyclic" in expect and msc.is_acyclic() != expect["acyclic"]:
        problems.append(f"acyclic={msc.is_acyclic()}")
    if "causalOracle" in expect and causal_delivery_oracle(msc) != expect["causalOracle"]:
        problems.append("causal delivery oracle")
    if not msc.is_acyclic():
        return problems
    cg = extend(build(msc))
    if "causal" in expect:
        if causal_delivery_by_graph(cg) != expect["causal"]:
            problems.append("causal delivery by graph")
        if causal_delivery_oracle(msc) != expect["causal"]:
            problems.append("causal delivery oracle")
    if "p2pCausal" in expect and causal_delivery_oracle(msc, P2P) != expect["p2pCausal"]:
        problems.append("p2p causal delivery oracle")
    report = scc_report(cg)
    if "rsCycle" in expect and report.rs_on_cycle != expect["rsCycle"]:
        problems.append(f"rsCycle={report.rs_on_cycle}")
    if "maxScc" in expect and report.max_size != expect["maxScc"]:
        problems.append(f"maxScc={report.max_size}")
    for k, value in expect.get("kSync", {}).items():
        by_graph, _ = k_synchronous_by_graph(msc, int(k))
        if by_graph != value or k_synchronous_oracle(msc, int(k)) != value:
            problems.append(f"kSync[{k}]")
    for u, label, v in expect.get("edges", []):
        if not cg.has_base(cg.by_message(u), label, cg.by_message(v)):
            problems.append(f"missing edge {u} {label} {v}")
    return problems


def _check_system_fixture(fx: Fixture, max_states: int) -> list[str]:
    system, expect, problems = fx.system(), fx.expect, []
    execution = fx.execution()
    if execution:
        result = run(system, execution)
        if "peakBuffer" in expect and result.peak_buffer != expect["peakBuffer"]:
            problems.append(f"peakBuffer={result.peak_buffer}")
        msc = msc_of(result.execution)
        if "causal" in expect and causal_delivery_oracle(msc, system.comm) != expect["causal"]:
            problems.append("execution causal delivery")
        for k, value in expect.get("kSync", {}).items():
            if k_synchronous_oracle(msc, int(k), system.comm) != value:
                problems.append(f"execution kSync[{k}]")
    for k, value in expect.get("synchronizable", {}).items():
        verdict = decide_k_synchronizability(system, int(k), max_states=max_states)
        if verdict.synchronizable != value:
            problems.append(f"synchronizable[{k}]={verdict.synchronizable}")
        elif not value and k_synchronous_oracle(verdict.counterexample, int(k)):
            problems.append(f"counterexample for k={k} is k-synchronous")
    if "reachable" in expect:
        goal = expect["reachable"]
        found = decide_reachability(system, goal["k"], system.global_state(goal["goal"]), max_states=max_states)
        if found.reachable != goal["value"]:
            problems.append(f"reachable={found.reachable}")
    if "p2pReachable" in expect:
        goal = expect["p2pReachable"]
        found = p2p_decide_reachability(system, goal["k"], system.global_state(goal["goal"]), max_states=max_states)
        if found.reachable != goal["value"]:
            problems.append(f"p2pReachable={found.reachable}")
    for k, value in expect.get("p2pSynchronizable", {}).items():
        verdict = p2p_decide_k_synchronizability(system, int(k), max_states=max_states)
        if verdict.synchronizable != value:
            problems.append(f"p2pSynchronizable[{k}]={verdict.synchronizable}")
    return problems


def _check_run_fixture(fx: Fixture) -> list[str]:
    run_, expect, k, problems = fx.run(), fx.expect, fx.k, []
    if "causal" in expect and incremental_causal(run_, k) != expect["causal"]:
        problems.append("step_k causal delivery")
    if "feasible" in expect:
        if incremental_feasible(run_, k) != expect["feasible"]:
            problems.append("incremental feasibility")
        if feasibility_by_graph(run_graph(run_)) != expect["feasible"]:
            problems.append("graph feasibility")
    if "bad" in expect:
        if incremental_bad(run_, k) != expect["bad"]:
            problems.append("incremental badness")
        if badness_by_graph(run_graph(run_), k) != expect["bad"]:
            problems.append("graph badness")
    if "succ" in expect:
        succ, pred = succ_pred_sets(run_graph(run_))
        if {v.message for v in succ} != set(expect["succ"]):
            problems.append("succ")
        if {v.message for v in pred} != set(expect["pred"]):
            problems.append("pred")
    if "count" in expect and bad_run(run_, k).count != expect["count"]:
        problems.append("count")
    return problems


def check_fixture(fx: Fixture, *, max_states: int = 100_000) -> list[str]:
    """Expectations of one fixture that do not hold (empty when all do)."""
    if fx.kind == "msc":
        return _check_msc_fixture(fx)
    if fx.kind == "system":
        return _check_system_fixture(fx, max_states)
    return _check_run_fixture(fx)


# --- shrinking --------------------------------------------------------------------


def drop_message(msc: Msc, send_id: int) -> Msc:
    receive_id = msc.src.get(send_id)
    events = tuple(ev for ev in msc.events if ev.id not in (send_id, receive_id))
    return Msc(events, {s: r for s, r in msc.src.items() if s != send_id})


def shrink_msc(msc: Msc, fails: Callable[[Msc], bool]) -> Msc:
    """Greedily drop messages while the failure persists."""
    changed = True
    while changed:
        changed = False
        for v in msc.exchanges():
            smaller = drop_message(msc, v.send)
            if smaller.events and fails(smaller):
                msc, changed = smaller, True
                break
    return msc


def _without(e: KExchange, position: int, comm: str) -> KExchange | None:
    a = e.actions[position]
    partner = dict(e.matching).get(position)
    kept = [b for i, b in enumerate(e.actions) if i not in (position, partner)]
    if not kept or PI in (a.sender, a.receiver):
        return None
    return KExchange.from_actions(kept, comm=comm)


def shrink_run(run_: list[KExchange], fails: Callable[[list[KExchange]], bool], comm: str = MAILBOX) -> list[KExchange]:
    """Drop whole exchanges, then single messages, keeping the deviation and the final exchange."""
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(run_):
            if any(PI in (a.sender, a.receiver) for a in e.actions) or len(run_) == 1:
                continue
            candidate = run_[:i] + run_[i + 1 :]
            if fails(candidate):
                run_, changed = candidate, True
                break
        if changed:
            continue
        for i, e in enumerate(run_):
            for pos, a in enumerate(e.actions):
                if not a.is_send:
                    continue
                smaller = _without(e, pos, comm)
                if smaller is None:
                    continue
                candidate = run_[:i] + [smaller] + run_[i + 1 :]
                if fails(candidate):
                    run_, changed = candidate, True
                    break
            if changed:
                break
    return run_


# --- suite ------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    fixtures: bool = True
    msc_cases: int = 1000
    max_msgs: int = 6
    max_procs: int = 4
    ks: tuple[int, ...] = (1, 2, 3)
    system_cases: int = 30
    system_procs: int = 3
    system_states: int = 4
    system_ks: tuple[int, ...] = (1, 2)
    max_length: int = 8
    buffer_cap: int | None = None
    run_cases: int = 500
    run_procs: int = 3
    run_exchanges: int = 4
    run_k: int = 2
    p2p_systems: int = 30
    decide_k: int = 1
    max_states: int = 50_000
    output_dir: Path | None = None

    @classmethod
    def empty(cls) -> "SuiteConfig":
        return cls(fixtures=False, msc_cases=0, system_cases=0, run_cases=0, p2p_systems=0)


@dataclass
class Failure:
    prop: str
    seed: int | str
    detail: str
    reproducer: str | None = None


@dataclass
class SuiteReport:
    checked: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    failure: Failure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def count(self, prop: str) -> None:
        self.checked[prop] = self.checked.get(prop, 0) + 1

    def skip(self, prop: str) -> None:
        self.skipped[prop] = self.skipped.get(prop, 0) + 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "failure": None if self.failure is None else asdict(self.failure),
        }


def _write_reproducer(cfg: SuiteConfig, name: str, document: dict[str, Any]) -> str | None:
    if cfg.output_dir is None:
        return None
    return str(write_json_atomic(Path(cfg.output_dir) / "reproducers" / f"{name}.json", document))


def _run_document(run_: Sequence[KExchange], k: int, comm: str, detail: str) -> dict[str, Any]:
    return {
        "kind": "run",
        "description": detail,
        "k": k,
        "comm": comm,
        "run": {
            "processes": [p for p in run_processes(list(run_)) if p != PI],
            "exchanges": [[action_to_doc(a) for a in e.actions] for e in run_],
        },
    }


def _msc_document(msc: Msc, detail: str) -> dict[str, Any]:
    return {"kind": "msc", "description": detail, "msc": MscDoc.from_msc(msc).model_dump(mode="json")}


def _system_document(system: System, detail: str) -> dict[str, Any]:
    return {
        "kind": "system",
        "description": detail,
        "system": SystemDoc.from_system(system).model_dump(mode="json", by_alias=True),
    }


def _fail_msc(report: SuiteReport, cfg: SuiteConfig, prop: str, seed: int, msc: Msc, check: Callable[[Msc], str | None]) -> None:
    small = shrink_msc(msc, lambda m: check(m) is not None)
    detail = check(small) or "disagreement"
    path = _write_reproducer(cfg, f"{prop}-{seed}", _msc_document(small, f"{prop}: {detail}"))
    report.failure = Failure(prop, seed, detail, path)


def _fail_run(
    report: SuiteReport,
    cfg: SuiteConfig,
    prop: str,
    seed: int,
    run_: list[KExchange],
    comm: str,
    check: Callable[[list[KExchange]], str | None],
) -> None:
    small = shrink_run(run_, lambda r: check(r) is not None, comm)
    detail = check(small) or "disagreement"
    path = _write_reproducer(cfg, f"{prop}-{seed}", _run_document(small, cfg.run_k, comm, f"{prop}: {detail}"))
    report.failure = Failure(prop, seed, detail, path)


def _fixture_phase(cfg: SuiteConfig, report: SuiteReport) -> None:
    for fx in load_fixtures():
        problems = check_fixture(fx, max_states=cfg.max_states)
        report.count("fixtures")
        if problems:
            report.failure = Failure("fixtures", fx.name, "; ".join(problems))
            return


def _msc_phase(cfg: SuiteConfig, report: SuiteReport) -> None:
    for i in range(cfg.msc_cases):
        seed = cfg.seed + i
        msc = gen_msc(seed, cfg.max_msgs, cfg.max_procs)
        for prop, check in (
            ("causal-graph", check_causal_msc),
            ("k-sync-graph", lambda m: check_k_sync_msc(m, cfg.ks)),
        ):
            report.count(prop)
            if check(msc) is not None:
                _fail_msc(report, cfg, prop, seed, msc, check)
                return


def _run_phase(cfg: SuiteConfig, report: SuiteReport) -> None:
    k = cfg.run_k
    for i in range(cfg.run_cases):
        seed = cfg.seed + i
        for comm in (MAILBOX, P2P):
            run_ = gen_run(seed, cfg.run_procs, cfg.run_exchanges, k, comm)
            prop = f"{comm}-run"
            check = lambda r, comm=comm: check_run_causal(r, k, comm)
            report.count(prop)
            if check(run_) is not None:
                _fail_run(report, cfg, prop, seed, run_, comm, check)
                return
        run_ = gen_deviated_run(seed, cfg.run_procs, cfg.run_exchanges, k)
        for prop, check in (
            ("feasibility", lambda r: check_feasibility(r, k)),
            ("badness", lambda r: check_badness(r, k)),
        ):
            report.count(prop)
            if check(run_) is not None:
                _fail_run(report, cfg, prop, seed, run_, MAILBOX, check)
                return


def _system_phase(cfg: SuiteConfig, report: SuiteReport) -> None:
    for i in range(cfg.system_cases):
        seed = cfg.seed + i
        system = gen_system(seed, cfg.system_procs, cfg.system_states)
        for k in cfg.system_ks:
            try:
                detail = check_reachability(system, k, cfg.max_length, cfg.buffer_cap, cfg.max_states)
            except ExplosionLimit:
                report.skip("reachability")
                continue
            report.count("reachability")
            if detail is not None:
                path = _write_reproducer(cfg, f"reachability-{seed}", _system_document(system, detail))
                report.failure = Failure("reachability", seed, detail, path)
                return
            for comm in (MAILBOX, P2P):
                variant = system.with_comm(comm)
                try:
                    detail = check_decision(variant, k, cfg.max_length, cfg.buffer_cap, cfg.max_states)
                except ExplosionLimit:
                    report.skip("decision")
                    continue
                report.count("decision")
                if detail is not None:
                    path = _write_reproducer(cfg, f"decision-{comm}-{seed}", _system_document(variant, detail))
                    report.failure = Failure("decision", seed, f"{comm}: {detail}", path)
                    return
    for i in range(cfg.p2p_systems):
        seed = cfg.seed + i
        system = gen_system(seed, cfg.system_procs, cfg.system_states, single_sender=True)
        try:
            detail = check_mailbox_vs_p2p(system, cfg.decide_k, cfg.max_states)
        except ExplosionLimit:
            report.skip("mailbox-vs-p2p")
            continue
        report.count("mailbox-vs-p2p")
        if detail is not None:
            path = _write_reproducer(cfg, f"mailbox-vs-p2p-{seed}", _system_document(system, detail))
            report.failure = Failure("mailbox-vs-p2p", seed, detail, path)
            return


def run_oracle_suite(cfg: SuiteConfig | None = None) -> SuiteReport:
    """Every equivalence at the configured scale; stops at the first disagreement."""
    cfg = cfg or SuiteConfig()
    report = SuiteReport()
    phases = [_msc_phase, _run_phase, _system_phase]
    if cfg.fixtures:
        phases.insert(0, _fixture_phase)
    for phase in phases:
        phase(cfg, report)
        if not report.ok:
            logger.error("oracle suite: %s failed on %s: %s", report.failure.prop, report.failure.seed, report.failure.detail)
            break
    else:
        logger.info("oracle suite passed: %s", report.checked)
    return report


__all__ = [
    "Failure",
    "SuiteConfig",
    "SuiteReport",
    "borderline_executions",
    "check_badness",
    "check_causal_msc",
    "check_counterexample",
    "check_decision",
    "check_feasibility",
    "check_fixture",
    "check_k_sync_msc",
    "check_mailbox_vs_p2p",
    "check_reachability",
    "check_run_causal",
    "drop_message",
    "incremental_bad",
    "incremental_causal",
    "incremental_feasible",
    "incremental_p2p_causal",
    "oracle_reachable",
    "oracle_violation",
    "run_graph",
    "run_msc",
    "run_oracle_suite",
    "shrink_msc",
    "shrink_run",
]
