"""
Marriage Campaign

Builds the translating set, then checks the marriage inequality on every
small subset of a ball, on seeded random subsets and on random pairs
(u1, u2) for the coloured condition. Every checked instance also gets a
matching that is audited independently. Records carry ball indices so any
instance can be replayed from the report alone.
"""

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from modules.marriage.subsets import FiniteSubset, TranslatingSet, TranslationTable, ball
from modules.marriage.verifier import (
    HallViolation,
    check_2marriage,
    check_egs_condition,
    extract_matching,
    recount_violation,
    validate_certificate,
)
from modules.piecewise.generators import thompson_f
from modules.piecewise.piecewise_map import PiecewiseMap
from modules.pipeline.translating_set import Construction, construct
from modules.shared.config import CampaignPlan, PipelineConfig
from modules.shared.errors import ParadoxError
from modules.shared.logger import ParadoxLogger
from modules.shared.pair_selector import GeneratorPairSelector

KINDS = ("exhaustive", "random", "egs")

# (id, kind, u1 ball indices, u2 ball indices)
Instance = Tuple[int, str, Tuple[int, ...], Tuple[int, ...]]

logger = ParadoxLogger()


def ball_generators(tset: TranslatingSet, plan: CampaignPlan) -> List[PiecewiseMap]:
    gens = list(tset.elements)
    if plan.ball_generators == "translating-set+thompson-f":
        gens.extend(thompson_f())
    return gens


def plan_instances(plan: CampaignPlan, ball_size: int) -> List[Instance]:
    """Deterministic instance list for a ball of the given size."""
    instances: List[Instance] = []
    indices = range(ball_size)
    if plan.exhaustive_max_size:
        for size in range(0, min(plan.exhaustive_max_size, ball_size) + 1):
            for subset in combinations(indices, size):
                instances.append((len(instances), "exhaustive", subset, subset))

    rng = random.Random(plan.seed)
    largest = min(plan.random_max_size, ball_size)
    if largest >= 1:
        for _ in range(plan.random_samples):
            subset = tuple(sorted(rng.sample(indices, rng.randint(1, largest))))
            instances.append((len(instances), "random", subset, subset))
    for _ in range(plan.egs_pairs):
        first = tuple(sorted(rng.sample(indices, rng.randint(0, largest))))
        second = tuple(sorted(rng.sample(indices, rng.randint(0, largest))))
        instances.append((len(instances), "egs", first, second))
    return instances


def check_instance(tset: TranslatingSet, table: TranslationTable, elements: Sequence[PiecewiseMap],
                   instance: Instance, record_timing: bool = False) -> Dict[str, Any]:
    """One record: the inequality, a matching and its audit."""
    started = time.perf_counter()
    number, kind, first, second = instance
    u1 = FiniteSubset(tuple(elements[i] for i in first))
    u2 = FiniteSubset(tuple(elements[i] for i in second))
    record: Dict[str, Any] = {"id": number, "kind": kind, "u1": list(first)}
    if kind == "egs":
        record["u2"] = list(second)
        report = check_egs_condition(tset, u1, u2, table)
    else:
        report = check_2marriage(tset, u1, table)
    # condition counts live under their own key; u1/u2 stay ball indices
    record["pass"] = report.passed
    record["report"] = report.to_json()

    outcome = extract_matching(tset, u1, u2, table)
    if isinstance(outcome, HallViolation):
        audit = recount_violation(outcome)
        record["matching"] = "violation"
        record["violation"] = outcome.to_json()
    else:
        audit = validate_certificate(outcome)
        record["matching"] = "certificate"
        record["matching_size"] = outcome.size
    record["audit_ok"] = audit.ok
    if not audit.ok:
        record["audit"] = audit.violations
    if record_timing:
        record["seconds"] = round(time.perf_counter() - started, 6)
    return record


# per-process state: one translation table shared by every chunk a worker runs
_worker: Dict[str, Any] = {}


def _init_worker(tset: TranslatingSet, elements: Sequence[PiecewiseMap]) -> None:
    table = TranslationTable(tset.translators)
    table.intern_all(elements)
    _worker.update(tset=tset, elements=elements, table=table)


def _check_chunk(instances: Sequence[Instance], record_timing: bool) -> List[Dict[str, Any]]:
    return [check_instance(_worker["tset"], _worker["table"], _worker["elements"], inst, record_timing)
            for inst in instances]


def _chunks(items: Sequence, count: int) -> List[Sequence]:
    size = max(1, -(-len(items) // count))
    return [items[start:start + size] for start in range(0, len(items), size)]


def record_passed(record: Dict[str, Any]) -> bool:
    return record["pass"] and record["matching"] == "certificate" and record["audit_ok"]


def recompute_aggregates(records: Sequence[Dict[str, Any]]) -> Dict[str, int]:
    """Aggregate counts, derived from the per-instance records alone."""
    aggregates = {"checked": len(records), "passed": 0, "failed": 0,
                  "certificates_validated": 0, "violations": 0}
    for kind in KINDS:
        aggregates[f"{kind}_checked"] = 0
        aggregates[f"{kind}_passed"] = 0
    for record in records:
        aggregates[f"{record['kind']}_checked"] += 1
        if record_passed(record):
            aggregates["passed"] += 1
            aggregates[f"{record['kind']}_passed"] += 1
        else:
            aggregates["failed"] += 1
        if record["matching"] == "certificate" and record["audit_ok"]:
            aggregates["certificates_validated"] += 1
        if record["matching"] == "violation":
            aggregates["violations"] += 1
    return aggregates


@dataclass
class CampaignReport:
    config: PipelineConfig
    construction: Optional[Construction] = None
    ball_labels: List[str] = field(default_factory=list)
    records: List[Dict[str, Any]] = field(default_factory=list)
    aggregates: Dict[str, int] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    error: Optional[str] = None
    seconds: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures

    def aggregates_consistent(self) -> bool:
        return self.aggregates == recompute_aggregates(self.records)

    def to_json(self) -> dict:
        data = {
            "config": self.config.to_json(),
            "construction": None if self.construction is None else self.construction.to_json(),
            "seed": self.config.plan.seed,
            "ball": {"size": len(self.ball_labels), "labels": self.ball_labels},
            "records": self.records,
            "aggregates": self.aggregates,
            "failures": self.failures,
            "pass": self.passed,
        }
        if self.error is not None:
            data["error"] = self.error
        if self.seconds is not None:
            data["seconds"] = self.seconds
        return data


def run_campaign(cfg: PipelineConfig, selector: Optional[GeneratorPairSelector] = None,
                 progress: bool = False) -> CampaignReport:
    """Construction, then the planned checks; a failing stage raises with the partial report attached."""
    started = time.perf_counter()
    report = CampaignReport(cfg)
    try:
        report.construction = construct(cfg, selector, progress)
    except ParadoxError as error:
        report.error = f"construction: {error}"
        error.partial_report = report
        raise
    plan = cfg.plan
    if plan.is_empty():
        report.aggregates = recompute_aggregates([])
        logger.log_info("📭 empty campaign plan: construction artifacts only")
        return report

    tset = report.construction.translating_set
    region = ball(ball_generators(tset, plan), plan.radius)
    report.ball_labels = list(region.labels)
    instances = plan_instances(plan, len(region))
    logger.log_info(f"🔍 checking {len(instances)} instances over a ball of {len(region)} elements "
                    f"(radius {plan.radius}, seed {plan.seed}, jobs {cfg.jobs})")

    try:
        if cfg.jobs > 1 and len(instances) > 1:
            chunks = _chunks(instances, cfg.jobs * 4)
            with ProcessPoolExecutor(max_workers=cfg.jobs, initializer=_init_worker,
                                     initargs=(tset, region.elements)) as pool:
                futures = [pool.submit(_check_chunk, chunk, plan.record_timing)
                           for chunk in chunks]
                for future in tqdm(futures, desc="campaign", disable=not progress):
                    report.records.extend(future.result())
        else:
            table = TranslationTable(tset.translators)
            table.intern_all(region.elements)
            for instance in tqdm(instances, desc="campaign", disable=not progress):
                report.records.append(
                    check_instance(tset, table, region.elements, instance, plan.record_timing))
    except ParadoxError as error:
        report.error = f"campaign: {error}"
        report.aggregates = recompute_aggregates(report.records)
        error.partial_report = report
        raise

    report.records.sort(key=lambda record: record["id"])
    report.aggregates = recompute_aggregates(report.records)
    report.failures = [record for record in report.records if not record_passed(record)]
    if plan.record_timing:
        report.seconds = round(time.perf_counter() - started, 3)
    if report.failures:
        logger.log_warning(f"{len(report.failures)} of {len(report.records)} instances failed")
    else:
        logger.log_success(f"all {len(report.records)} instances passed")
    return report
