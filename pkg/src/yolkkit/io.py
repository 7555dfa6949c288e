"""Points files and result documents.

Points files are UTF-8 text, one point per line, comma-separated decimals;
lines starting with ``#`` and blank lines are skipped.  The first data line
fixes the dimension.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from .errors import ParseError
from .median import Electorate

SIG_DIGITS = 12


def parse_points(text: str) -> Electorate:
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            raise ParseError(f"cannot parse {line!r} as comma-separated numbers", lineno) from None
        if not all(math.isfinite(v) for v in vals):
            raise ParseError("non-finite coordinate", lineno)
        if dim is None:
            if len(vals) < 2:
                raise ParseError(f"points need at least 2 coordinates, got {len(vals)}", lineno)
            dim = len(vals)
        elif len(vals) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(vals)}", lineno)
        rows.append(vals)
    if not rows:
        raise ParseError("no points found")
    return Electorate(rows)


def load_points(path: Union[str, Path]) -> Electorate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    return parse_points(text)


def format_points(E: Electorate, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    for p in E.points:
        out.append(",".join(repr(float(x)) for x in p))
    return "\n".join(out) + "\n"


def instance_digest(E: Electorate) -> str:
    """SHA-256 of the points as little-endian float64, prefixed by the shape."""
    arr = np.ascontiguousarray(E.array, dtype="<f8")
    h = hashlib.sha256(f"{arr.shape[0]}x{arr.shape[1]}:".encode())
    h.update(arr.tobytes())
    return h.hexdigest()


def round_sig(x: float, digits: int = SIG_DIGITS) -> Optional[float]:
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.{digits}g}") + 0.0  # folds -0.0


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    return obj


def dumps(doc: dict) -> str:
    """JSON with insertion-ordered keys and 12 significant digits."""
    return json.dumps(_clean(doc), indent=2) + "\n"
