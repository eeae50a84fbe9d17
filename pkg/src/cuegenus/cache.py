"""Write-once JSON disk cache for computed coefficient tables.

One document per (family, parameter block), schema versioned.  Loading a
file that exists but cannot be validated raises CacheError rather than
silently recomputing, so corruption is always surfaced.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

SCHEMA_VERSION = 1


class CacheError(Exception):
    """A cache file exists but is unreadable or inconsistent."""


def _param_token(value) -> str:
    return str(value).replace("-", "m")


class DiskCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, family: str, params: dict) -> Path:
        tokens = "_".join(f"{k}{_param_token(v)}" for k, v in sorted(params.items()))
        name = f"{family}__{tokens}.json" if tokens else f"{family}.json"
        return self.root / name

    def load(self, family: str, params: dict):
        """Return the stored payload, or None when absent.

        Raises CacheError when the file exists but is corrupt or records a
        different schema, family, or parameter block.
        """
        path = self.path_for(family, params)
        if not path.exists():
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheError(f"unreadable cache file {path}: {exc}") from exc
        if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
            raise CacheError(f"cache file {path} has an unsupported schema")
        if doc.get("family") != family or doc.get("params") != {
            k: str(v) for k, v in params.items()
        }:
            raise CacheError(f"cache file {path} does not match its key")
        if "payload" not in doc:
            raise CacheError(f"cache file {path} is missing its payload")
        return doc["payload"]

    def store(self, family: str, params: dict, payload) -> Path:
        """Persist a payload; existing files are kept (write-once per key)."""
        path = self.path_for(family, params)
        if path.exists():
            return path
        doc = {
            "schema": SCHEMA_VERSION,
            "family": family,
            "params": {k: str(v) for k, v in params.items()},
            "payload": payload,
        }
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, path)
        return path

    def entries(self) -> list[dict]:
        """Describe every cache file (without loading payloads)."""
        out = []
        for path in sorted(self.root.glob("*.json")):
            info = {"file": path.name, "bytes": path.stat().st_size}
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    doc = json.load(fh)
                info["family"] = doc.get("family")
                info["params"] = doc.get("params")
                info["schema"] = doc.get("schema")
            except (OSError, json.JSONDecodeError):
                info["family"] = None
                info["params"] = None
                info["schema"] = None
            out.append(info)
        return out

    def verify(self) -> list[str]:
        """Check integrity of every entry; return the list of bad files."""
        bad = []
        for path in sorted(self.root.glob("*.json")):
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    doc = json.load(fh)
                if (
                    not isinstance(doc, dict)
                    or doc.get("schema") != SCHEMA_VERSION
                    or "family" not in doc
                    or "payload" not in doc
                ):
                    bad.append(path.name)
            except (OSError, json.JSONDecodeError):
                bad.append(path.name)
        return bad

    def gc(self, remove_all: bool = False) -> list[str]:
        """Remove stale-schema or unreadable files; everything when asked."""
        removed = []
        for path in sorted(self.root.glob("*.json")):
            stale = remove_all
            if not stale:
                try:
                    with open(path, "r", encoding="utf-8") as fh:
                        doc = json.load(fh)
                    stale = not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION
                except (OSError, json.JSONDecodeError):
                    stale = True
            if stale:
                path.unlink()
                removed.append(path.name)
        return removed
