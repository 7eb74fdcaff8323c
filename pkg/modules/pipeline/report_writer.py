"""
Report Writer

Writes construction artifacts and campaign reports into the artifact bundle:

    cert/      distortion and relation certificates, matchings
    words/     translating words
    tset/      translating sets
    reports/   campaign reports (JSON and a markdown summary)
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union

from modules.pipeline.campaign import CampaignReport
from modules.pipeline.translating_set import Construction
from modules.shared.config import out_dir
from modules.shared.logger import ParadoxLogger
from modules.shared.serialization import encode, write_json

ARTIFACT_DIRS = ("cert", "words", "tset", "reports")


class ReportWriter:
    """Writes artifacts under one bundle directory with fixed file names."""

    def __init__(self, root: Optional[Union[str, Path]] = None):
        self.logger = ParadoxLogger()
        self.root = Path(root) if root is not None else out_dir()
        for name in ARTIFACT_DIRS:
            (self.root / name).mkdir(parents=True, exist_ok=True)

    def save_artifact(self, folder: str, name: str, artifact) -> Path:
        """Tagged JSON envelope for any exported artifact."""
        if folder not in ARTIFACT_DIRS:
            raise ValueError(f"unknown artifact folder {folder!r}")
        path = write_json(self.root / folder / f"{name}.json", encode(artifact))
        self.logger.log_debug(f"wrote {path}")
        return path

    def save_json(self, folder: str, name: str, data: Dict[str, Any]) -> Path:
        if folder not in ARTIFACT_DIRS:
            raise ValueError(f"unknown artifact folder {folder!r}")
        return write_json(self.root / folder / f"{name}.json", data)

    def save_construction(self, construction: Construction) -> Dict[str, Path]:
        paths = {
            "distortion": self.save_artifact("cert", "distortion", construction.distortion),
            "words": self.save_artifact("words", "translating_words", construction.words),
            "tset": self.save_artifact("tset", "translating_set", construction.translating_set),
        }
        self.logger.log_info(f"📁 construction artifacts saved under {self.root}")
        return paths

    def save_campaign(self, report: CampaignReport) -> Dict[str, Path]:
        """Campaign JSON, markdown summary and, when present, the construction artifacts."""
        paths: Dict[str, Path] = {}
        if report.construction is not None:
            paths.update(self.save_construction(report.construction))
        paths["report"] = self.save_json("reports", "campaign", report.to_json())
        md_file = self.root / "reports" / "campaign.md"
        self._create_markdown_summary(report, md_file)
        paths["summary"] = md_file
        self.logger.log_info(f"   📄 JSON: {paths['report']}")
        self.logger.log_info(f"   📝 Markdown: {md_file}")
        return paths

    def _create_markdown_summary(self, report: CampaignReport, output_file: Path):
        """Create a markdown summary of the campaign."""
        aggregates = report.aggregates
        construction = report.construction
        lines = ["# Marriage Campaign", ""]
        if construction is not None:
            tset = construction.translating_set
            lines += [
                "## Construction",
                f"- **Interval**: {tset.interval}",
                f"- **Epsilon**: {tset.epsilon}",
                f"- **Delta**: {tset.delta}",
                f"- **Generator pair**: {tset.pair.name}",
                f"- **Cores**: w = `{construction.words.g_core}`, w' = `{construction.words.h_core}`",
                f"- **Translators**: {len(tset.translators)} (pieces: {tset.piece_count})",
                "",
            ]
        if report.error is not None:
            lines += ["## Error", "```", report.error, "```", ""]
        lines += [
            "## Results",
            f"- **Seed**: {report.config.plan.seed}",
            f"- **Ball**: radius {report.config.plan.radius}, {len(report.ball_labels)} elements",
            "",
            "| kind | checked | passed |",
            "|------|---------|--------|",
        ]
        for kind in ("exhaustive", "random", "egs"):
            lines.append(f"| {kind} | {aggregates.get(f'{kind}_checked', 0)} | "
                         f"{aggregates.get(f'{kind}_passed', 0)} |")
        lines += [
            "",
            f"- **Certificates validated**: {aggregates.get('certificates_validated', 0)}",
            f"- **Hall violations**: {aggregates.get('violations', 0)}",
            f"- **Status**: {'✅ all instances passed' if report.passed else '❌ failures recorded'}",
            "",
        ]
        with open(output_file, 'w', encoding='utf-8') as f:
            f.write("\n".join(lines))
