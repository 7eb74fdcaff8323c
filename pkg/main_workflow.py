#!/usr/bin/env python3
"""
Main Workflow Script

Command-line entry point for the paradoxical decomposition toolkit: delta
certificates, translating-word search, translating-set construction,
marriage checks, matchings, pigeonhole witnesses, relation self-checks,
freeness certificates and full campaigns.

Exit status: 0 when every check passes, 1 on a verified negative finding,
2 on a usage, configuration or input error.
"""

import argparse
import json
import os
import sys
from typing import Optional

# Load environment variables
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    print("⚠️  python-dotenv not installed. Install with: pip install python-dotenv")

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from modules.marriage import (
    HallViolation,
    ball,
    check_2marriage,
    extract_matching,
    recount_violation,
    validate_certificate,
)
from modules.measure import IntervalSet, delta_is_certified, distortion_delta, parse_interval_set
from modules.piecewise import (
    GENERATOR_LIBRARIES,
    builtin_generators,
    check_relations,
    format_map,
    pw_validate,
)
from modules.pipeline import ReportWriter, construct, pigeonhole_case, run_campaign
from modules.shared import ParadoxLogger
from modules.shared.config import PipelineConfig, apply_overrides, load_config, progress_enabled
from modules.shared.errors import (
    ConstructionError,
    LiftPreconditionError,
    ParadoxError,
    PigeonholeFailure,
    WordSearchExhausted,
)
from modules.shared.pair_selector import GeneratorPairSelector
from modules.shared.serialization import load_artifact
from modules.words import certify_no_relation, find_translating_words

EXIT_PASS = 0
EXIT_FINDING = 1
EXIT_USAGE = 2

# errors that report something true about the inputs rather than a bad invocation
FINDINGS = (WordSearchExhausted, ConstructionError, LiftPreconditionError, PigeonholeFailure)

# entry ring and breakpoint rule checked for each builtin family
GROUP_RINGS = {
    "thompson-f": ("integers", "rational"),
    "translation": ("zsqrt2-with-halves", "rational"),
    "gamma-conjugators": ("zsqrt2-with-halves", "rational"),
    "affine-extension": ("zsqrt2-with-halves", "rational"),
}


def exit_code(result: dict) -> int:
    if result.get("success", False):
        return EXIT_PASS
    return EXIT_FINDING if result.get("finding", False) else EXIT_USAGE


class ParadoxWorkflow:
    """Runs one subcommand and reports a result dictionary."""

    def __init__(self, out: Optional[str] = None, pairs_path: Optional[str] = None):
        self.logger = ParadoxLogger()
        self.out = out
        self.pairs_path = pairs_path
        self.progress = progress_enabled()
        self._writer = None
        self._selector = None

    @property
    def writer(self) -> ReportWriter:
        if self._writer is None:
            self._writer = ReportWriter(self.out)
        return self._writer

    @property
    def selector(self) -> GeneratorPairSelector:
        if self._selector is None:
            self._selector = GeneratorPairSelector(self.pairs_path)
        return self._selector

    def _failure(self, stage: str, error: Exception) -> dict:
        finding = isinstance(error, FINDINGS)
        details = getattr(error, "statistics", None) or getattr(error, "failures", None)
        if finding:
            self.logger.log_warning(f"{stage}: {error}")
        else:
            self.logger.log_error(f"{stage}: {error}")
        if details:
            self.logger.log_info(f"   details: {json.dumps(details, ensure_ascii=False, sort_keys=True)}")
        return {"success": False, "finding": finding, "error": f"{stage}: {error}", "details": details}

    def run_distortion(self, config: PipelineConfig, delta: Optional[str] = None) -> dict:
        """Certified delta for the interval and epsilon, or a check of a given delta."""
        try:
            cert = distortion_delta(config.interval, config.epsilon)
            path = self.writer.save_artifact("cert", "distortion", cert)
            self.logger.log_info(f"📐 delta = {cert.delta} (derivative {cert.delta_derivative}, "
                                 f"containment {cert.delta_containment}, R = {cert.radius})")
            self.logger.log_info(f"   derivative window [{cert.derivative_lower}, {cert.derivative_upper}], "
                                 f"displacement {cert.displacement}")
            data = {"certificate": cert.to_json(), "path": str(path)}
            if delta is not None:
                certified = delta_is_certified(config.interval, config.epsilon, delta)
                data["checked_delta"] = {"delta": delta, "certified": certified}
                if not certified:
                    self.logger.log_warning(f"delta {delta} is not certified for epsilon {config.epsilon}")
                    return {"success": False, "finding": True, "error": f"delta {delta} not certified",
                            "data": data}
            return {"success": True, "data": data}
        except (ParadoxError, ValueError) as e:
            return self._failure("distortion", e)

    def run_find_words(self, config: PipelineConfig, delta: Optional[str] = None) -> dict:
        try:
            gens = self.selector.get_pair(config.pair)
            if delta is None:
                delta = distortion_delta(config.interval, config.epsilon).delta
            words = find_translating_words(gens, delta, config.interval, config.max_core_len,
                                           progress=self.progress)
            path = self.writer.save_artifact("words", "translating_words", words)
            for word in words.words:
                self.logger.log_info(f"   {word}")
            self.logger.log_success(f"twelve translating words saved: {path}")
            return {"success": True, "data": words.to_json()}
        except WordSearchExhausted as e:
            self.writer.save_json("words", "search_failure", {"error": str(e), "statistics": e.statistics})
            return self._failure("find-words", e)
        except (ParadoxError, ValueError) as e:
            return self._failure("find-words", e)

    def run_build_set(self, config: PipelineConfig) -> dict:
        try:
            construction = construct(config, self.selector, self.progress)
            paths = self.writer.save_construction(construction)
            for element, word in zip(construction.translating_set.elements,
                                     construction.translating_set.source_words):
                self.logger.log_debug(f"{word}: {format_map(element)}")
            return {"success": True, "data": {name: str(p) for name, p in paths.items()}}
        except (ParadoxError, ValueError) as e:
            return self._failure("build-set", e)

    def _translating_set(self, config: PipelineConfig, tset_path: Optional[str]):
        if tset_path is not None:
            return load_artifact(tset_path, "translating-set")
        return construct(config, self.selector, self.progress).translating_set

    def run_check_marriage(self, config: PipelineConfig, tset_path: Optional[str] = None,
                           subset_path: Optional[str] = None, radius: int = 1, quad: bool = False) -> dict:
        """|(T u {1}).u| >= 2|u| for a subset file, or for the ball of T of the given radius."""
        try:
            tset = self._translating_set(config, tset_path)
            if subset_path is not None:
                subset = load_artifact(subset_path, "finite-subset")
            else:
                subset = ball(tset.elements, radius)
            report = check_2marriage(tset, subset, quad=quad)
            path = self.writer.save_json("reports", "marriage", report.to_json())
            self.logger.log_info(f"💍 |u| = {report.size}: lhs {report.lhs} vs rhs {report.rhs}"
                                 + (f", quad {report.quad_lhs}" if report.quad_lhs is not None else ""))
            if not report.passed:
                self.logger.log_warning(f"marriage inequality fails; witness table in {path}")
                return {"success": False, "finding": True, "error": "marriage inequality fails",
                        "data": report.to_json()}
            self.logger.log_success(f"marriage inequality holds ({path})")
            return {"success": True, "data": report.to_json()}
        except (ParadoxError, ValueError) as e:
            return self._failure("check-marriage", e)

    def run_extract_matching(self, config: PipelineConfig, tset_path: Optional[str] = None,
                             u1_path: Optional[str] = None, u2_path: Optional[str] = None,
                             radius: int = 1) -> dict:
        try:
            tset = self._translating_set(config, tset_path)
            default = None
            if u1_path is None or u2_path is None:
                default = ball(tset.elements, radius)
            u1 = load_artifact(u1_path, "finite-subset") if u1_path else default
            u2 = load_artifact(u2_path, "finite-subset") if u2_path else default
            outcome = extract_matching(tset, u1, u2)
            if isinstance(outcome, HallViolation):
                audit = recount_violation(outcome)
                path = self.writer.save_artifact("cert", "hall_violation", outcome)
                self.logger.log_warning(f"Hall violation: |V| = {len(outcome.vertices)}, "
                                        f"|N(V)| = {len(outcome.neighbours)}, deficiency {outcome.deficiency}; "
                                        f"recount {'confirms' if audit.ok else 'disagrees'} ({path})")
                return {"success": False, "finding": True, "error": "no evenly coloured matching",
                        "data": {"deficiency": outcome.deficiency, "audit": audit.violations}}
            audit = validate_certificate(outcome)
            path = self.writer.save_artifact("cert", "matching", outcome)
            if not audit.ok:
                for violation in audit.violations:
                    self.logger.log_error(violation)
                return {"success": False, "finding": True, "error": "certificate failed its audit",
                        "data": {"audit": audit.violations}}
            self.logger.log_success(f"matching of size {outcome.size} validated ({path})")
            return {"success": True, "data": {"size": outcome.size, "path": str(path)}}
        except (ParadoxError, ValueError) as e:
            return self._failure("extract-matching", e)

    def run_pigeonhole(self, config: PipelineConfig, j_text: Optional[str] = None,
                       sides=("g", "h")) -> dict:
        try:
            construction = construct(config, self.selector, self.progress)
            interval = config.interval
            if j_text is None:
                j = IntervalSet.of((interval.lo, interval.midpoint))
            else:
                j = parse_interval_set(j_text)
            witnesses = {}
            for side in sides:
                witness = pigeonhole_case(construction, j, side)
                self.writer.save_artifact("cert", f"pigeonhole_{side}", witness)
                self.logger.log_info(f"🕊️ side {side}: indices {list(witness.indices)}, "
                                     f"mu(L) = {witness.region_measure}, "
                                     f"sum mu(L_i) = {witness.total_measure} > {3 * witness.interval_measure}")
                witnesses[side] = witness.to_json()
            return {"success": True, "data": witnesses}
        except (ParadoxError, ValueError) as e:
            return self._failure("pigeonhole", e)

    def run_verify_relations(self, group: str, shift: Optional[str] = None,
                             scale_root: Optional[str] = None) -> dict:
        """Ring validation of a builtin generator family, plus the defining relations of F."""
        try:
            gens = builtin_generators(group, shift=shift, scale_root=scale_root)
            ring, rule = GROUP_RINGS[group]
            problems = []
            for index, g in enumerate(gens):
                report = pw_validate(g, ring, rule)
                problems.extend(f"x{index}: {v}" for v in report.violations)
            relations = check_relations(gens) if group == "thompson-f" else {}
            problems.extend(f"relator {r} is not the identity" for r, ok in relations.items() if not ok)
            data = {"group": group, "generators": [format_map(g) for g in gens],
                    "relations": relations, "problems": problems}
            if problems:
                for problem in problems:
                    self.logger.log_warning(problem)
                return {"success": False, "finding": True, "error": f"{len(problems)} check(s) failed",
                        "data": data}
            self.logger.log_success(f"{group}: {len(gens)} generators valid, "
                                    f"{len(relations)} relation(s) hold")
            return {"success": True, "data": data}
        except (ParadoxError, ValueError) as e:
            return self._failure("verify-relations", e)

    def run_no_relation(self, config: PipelineConfig, max_length: int) -> dict:
        try:
            gens = self.selector.get_pair(config.pair)
            cert = certify_no_relation(gens, max_length, jobs=config.jobs, progress=self.progress)
            path = self.writer.save_artifact("cert", f"no_relation_{gens.name}", cert)
            if not cert.holds:
                return {"success": False, "finding": True,
                        "error": f"relation {cert.counterexample} found", "data": cert.to_json()}
            self.logger.log_success(f"no relation of length <= {max_length} among "
                                    f"{cert.words_checked} words ({path})")
            return {"success": True, "data": cert.to_json()}
        except (ParadoxError, ValueError) as e:
            return self._failure("no-relation", e)

    def run_campaign(self, config: PipelineConfig) -> dict:
        try:
            report = run_campaign(config, self.selector, self.progress)
        except (ParadoxError, ValueError) as e:
            partial = getattr(e, "partial_report", None)
            if partial is not None:
                self.writer.save_campaign(partial)
            return self._failure("campaign", e)
        self.writer.save_campaign(report)
        self._print_campaign_summary(report)
        if not report.passed:
            return {"success": False, "finding": True, "error": f"{len(report.failures)} instance(s) failed",
                    "data": report.aggregates}
        return {"success": True, "data": report.aggregates}

    def _print_campaign_summary(self, report):
        self.logger.log_info("\n📋 Campaign Summary:")
        self.logger.log_info("=" * 50)
        for key in sorted(report.aggregates):
            self.logger.log_info(f"  {key}: {report.aggregates[key]}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON pipeline configuration file")
    common.add_argument("--seed", type=int, help="campaign seed (default PARADOX_SEED or 7)")
    common.add_argument("--jobs", type=int, help="worker processes (default PARADOX_JOBS or 1)")
    common.add_argument("--out", help="artifact directory (default PARADOX_OUT_DIR or artifacts)")
    common.add_argument("--pairs", help="generator pairs file (default PARADOX_PAIRS_FILE)")
    common.add_argument("--debug", action="store_true", help="Enable debug mode")

    construction = argparse.ArgumentParser(add_help=False)
    construction.add_argument("--interval", help="compact interval 'lo,hi' (default 0,1)")
    construction.add_argument("--epsilon", help="distortion bound in (0, 1) (default 1/48)")
    construction.add_argument("--pair", help="generator pair name")
    construction.add_argument("--max-core-len", type=int, help="longest core tried by the word search")

    parser = argparse.ArgumentParser(
        description="Exact translating sets and marriage certificates for piecewise projective groups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Certified delta for [0, 1] and epsilon 1/48
  python main_workflow.py distortion --interval 0,1 --epsilon 1/48

  # Build the translating set with the default pair
  python main_workflow.py build-set --out artifacts

  # Self-check Thompson's group F
  python main_workflow.py verify-relations --group thompson-f

  # Full campaign on four workers
  python main_workflow.py campaign --jobs 4 --seed 7
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distortion", parents=[common, construction], help="certified delta for I and epsilon")
    p.add_argument("--delta", help="also check whether this delta is certified")
    p = sub.add_parser("find-words", parents=[common, construction], help="search the twelve translating words")
    p.add_argument("--delta", help="ball radius to search in (default: the certified delta)")
    sub.add_parser("build-set", parents=[common, construction], help="build and verify the translating set")

    p = sub.add_parser("check-marriage", parents=[common, construction], help="check |(T u {1}).u| >= 2|u|")
    p.add_argument("--tset", help="translating set file (built from the config when omitted)")
    p.add_argument("--subset", help="finite subset file (ball of T when omitted)")
    p.add_argument("--radius", type=int, default=1, help="ball radius when no subset file is given")
    p.add_argument("--quad", action="store_true", help="also report the best four-translator count")

    p = sub.add_parser("extract-matching", parents=[common, construction], help="evenly coloured matching")
    p.add_argument("--tset", help="translating set file (built from the config when omitted)")
    p.add_argument("--u1", help="finite subset file for colour 1")
    p.add_argument("--u2", help="finite subset file for colour 2")
    p.add_argument("--radius", type=int, default=1, help="ball radius for a missing subset")

    p = sub.add_parser("pigeonhole", parents=[common, construction], help="pigeonhole witnesses")
    p.add_argument("--j", help="subset J of I as 'lo,hi;lo,hi' (default: first half of I)")
    p.add_argument("--side", choices=["g", "h", "both"], default="both")

    p = sub.add_parser("verify-relations", parents=[common], help="builtin generator self-checks")
    p.add_argument("--group", choices=GENERATOR_LIBRARIES, default="thompson-f")
    p.add_argument("--shift", help="translation or affine shift")
    p.add_argument("--scale-root", help="square root of the affine scale (default sqrt2)")

    p = sub.add_parser("no-relation", parents=[common, construction], help="bounded-length freeness certificate")
    p.add_argument("--max-length", type=int, default=10)

    sub.add_parser("campaign", parents=[common, construction], help="construction plus marriage campaign")
    return parser


def main(argv=None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.debug:
        os.environ["DEBUG_MODE"] = "true"
    workflow = ParadoxWorkflow(out=args.out, pairs_path=args.pairs)
    if args.debug:
        workflow.logger.set_debug(True)
        workflow.logger.log_debug("Debug mode enabled")

    try:
        config = load_config(args.config)
        config = apply_overrides(
            config,
            interval=getattr(args, "interval", None),
            epsilon=getattr(args, "epsilon", None),
            pair=getattr(args, "pair", None),
            max_core_len=getattr(args, "max_core_len", None),
            seed=args.seed,
            jobs=args.jobs,
        )
    except ParadoxError as e:
        workflow.logger.log_error(str(e))
        return EXIT_USAGE

    workflow.logger.log_info(f"🚀 {args.command}")
    workflow.logger.log_info("resolved config: " + json.dumps(
        {"command": args.command, "config": config.to_json(),
         "out": str(workflow.writer.root), "pairs": args.pairs},
        ensure_ascii=False, sort_keys=True))

    try:
        if args.command == "distortion":
            result = workflow.run_distortion(config, args.delta)
        elif args.command == "find-words":
            result = workflow.run_find_words(config, args.delta)
        elif args.command == "build-set":
            result = workflow.run_build_set(config)
        elif args.command == "check-marriage":
            result = workflow.run_check_marriage(config, args.tset, args.subset, args.radius, args.quad)
        elif args.command == "extract-matching":
            result = workflow.run_extract_matching(config, args.tset, args.u1, args.u2, args.radius)
        elif args.command == "pigeonhole":
            sides = ("g", "h") if args.side == "both" else (args.side,)
            result = workflow.run_pigeonhole(config, args.j, sides)
        elif args.command == "verify-relations":
            result = workflow.run_verify_relations(args.group, args.shift, args.scale_root)
        elif args.command == "no-relation":
            result = workflow.run_no_relation(config, args.max_length)
        else:
            result = workflow.run_campaign(config)
    except KeyboardInterrupt:
        workflow.logger.log_warning("interrupted by user")
        return EXIT_USAGE
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
