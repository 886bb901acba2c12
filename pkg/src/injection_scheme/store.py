"""On-disk cache of character tables: versioned JSON with integers as decimal strings."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .combinatorics import Partition
from .injections import CyclePathType, class_distance
from .scheme import CharacterTable, IrrepLabel

FORMAT_VERSION = 1
CACHE_ENV = "INJECTION_SCHEME_CACHE_DIR"
DEFAULT_CACHE_DIR = Path.home() / ".cache" / "injection-scheme"


class CacheError(RuntimeError):
    """A cache file exists but cannot be trusted."""

    def __init__(self, path, reason: str):
        super().__init__(f"corrupt table cache {path}: {reason}")
        self.path = Path(path)


def _payload(ct: CharacterTable) -> dict:
    return {
        "k": ct.k,
        "n": ct.n,
        "classes": [
            {
                "cycles": list(c.cycles),
                "paths": list(c.paths),
                "zero_paths": c.zero_paths,
                "valency": str(v),
                "distance": class_distance(c, ct.k),
            }
            for c, v in zip(ct.classes, ct.valencies)
        ],
        "irreps": [
            {"mu": list(lab.mu), "lambda": list(lab.lam), "multiplicity": str(m)}
            for lab, m in zip(ct.irreps, ct.multiplicities)
        ],
        "P": [[str(x) for x in row] for row in ct.P],
    }


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(payload: dict) -> str:
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


def serialize(ct: CharacterTable) -> str:
    payload = _payload(ct)
    doc = {"version": FORMAT_VERSION, "table": payload, "sha256": checksum(payload)}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def parse(text: str, path="<string>") -> CharacterTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(path, f"not JSON ({exc})") from None
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise CacheError(path, f"unsupported format version {doc.get('version') if isinstance(doc, dict) else None!r}")
    payload = doc.get("table")
    if not isinstance(payload, dict) or doc.get("sha256") != checksum(payload):
        raise CacheError(path, "checksum mismatch")
    try:
        k, n = int(payload["k"]), int(payload["n"])
        classes = [CyclePathType(Partition(c["cycles"]), Partition(c["paths"]), int(c["zero_paths"])) for c in payload["classes"]]
        valencies = [int(c["valency"]) for c in payload["classes"]]
        irreps = [IrrepLabel(Partition(r["mu"]), Partition(r["lambda"])) for r in payload["irreps"]]
        multiplicities = [int(r["multiplicity"]) for r in payload["irreps"]]
        P = [[int(x) for x in row] for row in payload["P"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheError(path, f"malformed field ({exc})") from None
    d = len(classes)
    if len(irreps) != d or len(P) != d or any(len(row) != d for row in P):
        raise CacheError(path, f"dimension mismatch: {d} classes, {len(irreps)} irreps, {len(P)} rows")
    for c in classes:
        if c.k != k or c.n != n:
            raise CacheError(path, f"class {c} does not belong to ({k}, {n})")
    return CharacterTable(k, n, classes, irreps, P, valencies, multiplicities)


def resolve_cache_dir(flag: str | None = None) -> Path:
    """Flag beats environment beats the built-in default."""
    if flag:
        return Path(flag)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return DEFAULT_CACHE_DIR


def cache_path(cache_dir: Path, k: int, n: int) -> Path:
    return Path(cache_dir) / f"table-k{k}-n{n}.json"


def load(cache_dir: Path, k: int, n: int) -> CharacterTable | None:
    """The cached table, None when absent; CacheError when present but bad."""
    path = cache_path(cache_dir, k, n)
    if not path.exists():
        return None
    ct = parse(path.read_text(), path)
    if (ct.k, ct.n) != (k, n):
        raise CacheError(path, f"holds ({ct.k}, {ct.n}), expected ({k}, {n})")
    return ct


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(cache_dir: Path, ct: CharacterTable) -> Path:
    path = cache_path(cache_dir, ct.k, ct.n)
    write_atomic(path, serialize(ct))
    return path
