"""Run manifest utilities for audit trails.

Report payloads are deterministic; everything run-specific (ids, clock time,
input hashes) lives in the manifest written next to them.
"""

from __future__ import annotations

import json
import os
import re
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from hashlib import sha256
from typing import Any, Dict, List

MANIFEST_VERSION = "1.0"


@dataclass
class RunManifest:
    """Audit manifest for one CLI run."""

    manifest_version: str
    run_id: str
    created_utc: str
    command: str
    input_files: List[str]
    input_sha256: Dict[str, str]
    report_files: List[str]
    exit_status: int
    settings: Dict[str, Any]
    notes: List[str] = field(default_factory=list)


def sha256_text(text: str) -> str:
    """Return SHA-256 hex digest for the provided text."""
    if text is None:
        raise ValueError("text must be provided")
    return sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str) -> str:
    """Return SHA-256 hex digest of a file's bytes."""
    digest = sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def new_manifest(
    command: str,
    input_files: List[str],
    settings: Dict[str, Any],
) -> RunManifest:
    """Start a manifest for a run; report files and status are filled in later."""
    return RunManifest(
        manifest_version=MANIFEST_VERSION,
        run_id=str(uuid.uuid4()),
        created_utc=datetime.now(timezone.utc).isoformat(),
        command=command,
        input_files=list(input_files),
        input_sha256={path: sha256_file(path) for path in input_files if os.path.exists(path)},
        report_files=[],
        exit_status=0,
        settings=settings,
    )


def _safe_filename(value: str) -> str:
    value = value.strip().replace(" ", "_")
    return re.sub(r"[^A-Za-z0-9_.-]", "_", value) or "run"


def write_manifest(manifest: RunManifest, out_dir: str) -> str:
    """Write manifest JSON to the output directory and return its path."""
    if not out_dir:
        raise ValueError("out_dir must be provided")

    os.makedirs(out_dir, exist_ok=True)
    filename = f"{_safe_filename(manifest.command)}_{manifest.run_id}.manifest.json"
    path = os.path.join(out_dir, filename)

    with open(path, "w", encoding="utf-8") as handle:
        json.dump(asdict(manifest), handle, indent=2, ensure_ascii=False)
    return path
