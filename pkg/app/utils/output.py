"""
Output helpers: canonical JSON, tidy CSV and run manifests.
"""
import json
import os
from datetime import datetime, timezone
from importlib import metadata
from typing import Any, Dict, Iterable, Optional

import pandas as pd

_VERSIONED = ("numpy", "scipy", "pandas", "pydantic", "pydantic-settings", "python-dotenv")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def write_text(path: str, text: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")


def write_csv(frame: pd.DataFrame, path: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    frame.to_csv(path, index=False, float_format="%.10g")


def package_versions() -> Dict[str, Optional[str]]:
    versions = {}
    for name in _VERSIONED:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def build_manifest(kind: str, config: Dict[str, Any], seeds: Iterable[int], extra: Dict[str, Any] = None) -> Dict[str, Any]:
    seeds = [int(s) for s in seeds]
    manifest = {
        "kind": kind,
        "config": config,
        "seeds": seeds,
        "seeds_unique": len(set(seeds)) == len(seeds),
        "versions": package_versions(),
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    manifest.update(extra or {})
    return manifest


def write_manifest(out_dir: str, manifest: Dict[str, Any]) -> str:
    path = os.path.join(out_dir, "manifest.json")
    write_text(path, canonical_json(manifest))
    return path
