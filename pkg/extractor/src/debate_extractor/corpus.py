"""Corpus extraction: one record line per claim, resumable and fault-tolerant."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .claims import ClaimItem
from .errors import ExtractorError
from .probe import Probe
from .similarity import SimilarityScorer

logger = logging.getLogger(__name__)


@dataclass
class ExtractionSummary:
    extracted: int = 0
    skipped_existing: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return len(self.failures)


def _existing_claims(path: Path) -> set[str]:
    claims: set[str] = set()
    if not path.exists():
        return claims
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            claims.add(json.loads(line)["claim"])
        except (json.JSONDecodeError, KeyError, TypeError):
            logger.warning("ignoring malformed existing line in %s", path)
    return claims


def extract_corpus(
    probe: Probe,
    claims: Sequence[ClaimItem],
    out_path: str | Path,
    scorer: SimilarityScorer | None = None,
    resume: bool = True,
) -> ExtractionSummary:
    """Append one record per claim to `out_path`, preserving claim order.

    With `resume`, claims whose text already appears in the output are
    skipped, so an interrupted run picks up where it stopped.  Per-claim
    extraction errors are logged and skipped; the summary counts them.
    """
    out_path = Path(out_path)
    done = _existing_claims(out_path) if resume else set()
    summary = ExtractionSummary()
    mode = "a" if resume and out_path.exists() else "w"
    with out_path.open(mode, encoding="utf-8") as handle:
        for claim in claims:
            if claim.claim in done:
                summary.skipped_existing += 1
                continue
            try:
                record = probe.extract_record(claim, scorer)
            except ExtractorError as exc:
                logger.warning("skipping %r: %s", claim.claim, exc)
                summary.failures.append((claim.claim, str(exc)))
                continue
            handle.write(json.dumps(record) + "\n")
            handle.flush()
            done.add(claim.claim)
            summary.extracted += 1
    logger.info(
        "extracted %d records (%d already present, %d failed) -> %s",
        summary.extracted,
        summary.skipped_existing,
        summary.failed,
        out_path,
    )
    return summary
