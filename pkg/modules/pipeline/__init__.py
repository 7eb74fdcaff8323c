"""
Paradox Pipeline

Translating-set construction, the marriage campaign and artifact output.
"""

from modules.pipeline.translating_set import (
    Construction,
    build_translating_set,
    construct,
    pigeonhole_case,
    translating_set_failures,
    verify_agreement,
)
from modules.pipeline.campaign import (
    CampaignReport,
    plan_instances,
    recompute_aggregates,
    run_campaign,
)
from modules.pipeline.report_writer import ARTIFACT_DIRS, ReportWriter

__all__ = [
    'Construction', 'build_translating_set', 'construct', 'pigeonhole_case',
    'translating_set_failures', 'verify_agreement', 'CampaignReport', 'plan_instances',
    'recompute_aggregates', 'run_campaign', 'ARTIFACT_DIRS', 'ReportWriter',
]
