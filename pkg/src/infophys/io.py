"""Reading and writing distributions, joint tables and experiment records."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable

import numpy as np

from .classical_info import Distribution, JointDistribution
from .errors import ValidationError


def _open_text(path):
    if str(path) == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def distribution_from_dict(obj: dict, renormalize: bool = False):
    if "x_labels" in obj:
        return JointDistribution(obj["x_labels"], obj["y_labels"], obj["probs"], renormalize=renormalize)
    if "labels" in obj:
        return Distribution(obj["labels"], obj["probs"], renormalize=renormalize)
    raise ValidationError("expected keys 'labels'/'probs' or 'x_labels'/'y_labels'/'probs'")


def load_distribution(path, renormalize: bool = False):
    """Load a Distribution or JointDistribution from ``.json`` or ``.csv``.

    CSV files hold ``label,prob`` rows (one distribution) or ``x,y,prob``
    rows (a joint table); a header row is optional.
    """
    text = _open_text(path)
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return distribution_from_dict(json.loads(text), renormalize)
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and not _is_number(rows[0][-1]):
        rows = rows[1:]
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    width = len(rows[0])
    if width == 2:
        return Distribution([r[0] for r in rows], [float(r[1]) for r in rows], renormalize=renormalize)
    if width == 3:
        xs = list(dict.fromkeys(r[0] for r in rows))
        ys = list(dict.fromkeys(r[1] for r in rows))
        table = np.zeros((len(xs), len(ys)))
        for x, y, p in rows:
            table[xs.index(x), ys.index(y)] += float(p)
        return JointDistribution(xs, ys, table, renormalize=renormalize)
    raise ValidationError(f"{path}: expected 2 or 3 columns, got {width}")


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def dump_distribution(d, path, fmt: str | None = None) -> None:
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    if fmt == "json":
        Path(path).write_text(json.dumps(d.as_dict(), indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(d, JointDistribution):
        w.writerow(["x", "y", "prob"])
        for i, x in enumerate(d.x_labels):
            for j, y in enumerate(d.y_labels):
                w.writerow([x, y, repr(float(d.probs[i, j]))])
    else:
        w.writerow(["label", "prob"])
        for lab, p in zip(d.labels, d.probs):
            w.writerow([lab, repr(float(p))])
    Path(path).write_text(buf.getvalue())


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return repr(v) if math.isfinite(v) else str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if v is None:
        return ""
    return str(v)


def _jsonable(v):
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None  # strict JSON has no NaN or infinity
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def columns_of(rows: Iterable[dict]) -> list[str]:
    cols: dict[str, None] = {}
    for r in rows:
        for k in r:
            cols.setdefault(k, None)
    return list(cols)


def records_to_csv(rows: list[dict]) -> str:
    """RFC 4180 CSV with a header row; missing cells are left empty."""
    cols = columns_of(rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def records_to_json(rows: list[dict]) -> str:
    return json.dumps([{k: _jsonable(v) for k, v in r.items()} for r in rows], indent=2, allow_nan=False) + "\n"


def emit(rows: list[dict], fmt: str = "csv", path=None) -> str:
    """Serialize ``rows`` and write them to ``path`` (stdout when None or ``-``)."""
    if fmt == "csv":
        text = records_to_csv(rows)
    elif fmt == "json":
        text = records_to_json(rows)
    else:
        raise ValidationError(f"format must be 'csv' or 'json', got {fmt!r}")
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return text
