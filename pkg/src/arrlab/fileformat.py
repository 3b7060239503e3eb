"""
Reading and writing arrangement files.

An arrangement file is a UTF-8 JSON object in one of two modes.

Coordinates mode::

    {"format": "arrlab-arrangement", "version": 1, "name": "hessian",
     "mode": "coordinates", "cyclotomic_order": 3,
     "lines": [[["1"], ["0"], ["0"]], ...]}

Every line is a triple (a, b, c) for ``a x + b y + c z = 0``; each coefficient
is a list of rational strings, the i-th entry being the coefficient of
zeta_n^i.

Incidence mode::

    {"format": "arrlab-arrangement", "version": 1, "name": "sec24_block",
     "mode": "incidence", "degree": 8, "points": [[0, 1, 7], ...]}

``points`` lists every point where three or more lines meet, by 0-based
line indices.  ``format`` and ``version`` are optional on input.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import Incidence, validate
from .cyclo import MAX_ORDER, CycRat, totient
from .exceptions import ArrangementError, ArrangementFileError
from .geometry import ProjLine, compute_incidence

FORMAT_TAG = "arrlab-arrangement"
FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")

_COMMON_KEYS = {"format", "version", "name", "mode"}
_MODE_KEYS = {
    "coordinates": {"cyclotomic_order", "lines"},
    "incidence": {"degree", "points"},
}


def parse_rational(text: Any, where: str = "$", path: str | None = None) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ArrangementFileError(
            f"{where}: expected a rational string like \"-3/4\", got {text!r}", path=path)
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def _fail(msg: str, path: str | None) -> ArrangementFileError:
    return ArrangementFileError(msg, path=path)


def _int(value: Any, where: str, path: str | None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(f"{where}: expected an integer, got {value!r}", path)
    return value


def arrangement_from_dict(obj: Any, path: str | None = None) -> Incidence:
    """Build an Incidence from a decoded arrangement object."""
    if not isinstance(obj, dict):
        raise _fail("$: expected a JSON object", path)
    if "format" in obj and obj["format"] != FORMAT_TAG:
        raise _fail(f"$.format: expected {FORMAT_TAG!r}, got {obj['format']!r}", path)
    if "version" in obj and obj["version"] != FORMAT_VERSION:
        raise _fail(f"$.version: unsupported version {obj['version']!r}", path)
    mode = obj.get("mode")
    if mode not in _MODE_KEYS:
        raise _fail(f"$.mode: expected 'coordinates' or 'incidence', got {mode!r}", path)
    other = "incidence" if mode == "coordinates" else "coordinates"
    mixed = sorted(set(obj) & _MODE_KEYS[other])
    if mixed:
        raise _fail(f"$: field(s) {', '.join(mixed)} belong to {other} mode, not {mode}", path)
    unknown = sorted(set(obj) - _COMMON_KEYS - _MODE_KEYS[mode])
    if unknown:
        raise _fail(f"$: unknown field(s) {', '.join(unknown)}", path)
    missing = sorted(_MODE_KEYS[mode] - set(obj))
    if missing:
        raise _fail(f"$: missing field(s) {', '.join(missing)}", path)
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise _fail("$.name: expected a string", path)
    if mode == "coordinates":
        return _coordinates(obj, name, path)
    return _incidence(obj, name, path)


def _coordinates(obj: dict, name: str | None, path: str | None) -> Incidence:
    order = _int(obj["cyclotomic_order"], "$.cyclotomic_order", path)
    if not 1 <= order <= MAX_ORDER:
        raise _fail(f"$.cyclotomic_order: must be between 1 and {MAX_ORDER}", path)
    rows = obj["lines"]
    if not isinstance(rows, list):
        raise _fail("$.lines: expected a list", path)
    lines = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise _fail(f"$.lines[{i}]: expected a triple of coefficients", path)
        coeffs = []
        for j, entry in enumerate(row):
            where = f"$.lines[{i}][{j}]"
            if not isinstance(entry, list) or not entry:
                raise _fail(f"{where}: expected a nonempty list of rational strings", path)
            vals = [parse_rational(t, f"{where}[{k}]", path) for k, t in enumerate(entry)]
            coeffs.append(CycRat(order, vals))
        try:
            lines.append(ProjLine(*coeffs))
        except ArrangementError as exc:
            raise _fail(f"$.lines[{i}]: {exc}", path) from None
    try:
        return compute_incidence(lines, name=name)
    except ArrangementError as exc:
        raise _fail(f"$.lines: {exc}", path) from None


def _incidence(obj: dict, name: str | None, path: str | None) -> Incidence:
    degree = _int(obj["degree"], "$.degree", path)
    if degree < 1:
        raise _fail("$.degree: must be positive", path)
    rows = obj["points"]
    if not isinstance(rows, list):
        raise _fail("$.points: expected a list", path)
    pts = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise _fail(f"$.points[{i}]: expected a list of line indices", path)
        idx = [_int(v, f"$.points[{i}][{k}]", path) for k, v in enumerate(row)]
        if len(set(idx)) != len(idx):
            raise _fail(f"$.points[{i}]: repeated line index", path)
        pts.append(idx)
    for i, idx in enumerate(pts):
        bad = [v for v in idx if not 0 <= v < degree]
        if bad:
            raise _fail(f"$.points[{i}]: line index {bad[0]} out of range 0..{degree - 1}", path)
    inc = Incidence.from_points(degree, pts, name=name)
    problems = validate(inc)
    if problems:
        raise _fail("invalid incidence: " + "; ".join(problems), path)
    return inc


def loads_arrangement(text: str, path: str | None = None) -> Incidence:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementFileError(exc.msg, line=exc.lineno, column=exc.colno, path=path) from None
    return arrangement_from_dict(obj, path)


def parse_arrangement(path: str | Path) -> Incidence:
    """Read an arrangement file (coordinates or incidence mode)."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ArrangementFileError(f"cannot read file: {exc}", path=str(p)) from None
    return loads_arrangement(text, str(p))


def arrangement_to_dict(inc: Incidence, mode: str | None = None) -> dict:
    """Canonical object for ``inc``; coordinates mode whenever coordinates
    are known, unless ``mode="incidence"`` is asked for."""
    if mode is None:
        mode = "coordinates" if inc.lines is not None else "incidence"
    out: dict[str, Any] = {"format": FORMAT_TAG, "version": FORMAT_VERSION}
    if inc.name is not None:
        out["name"] = inc.name
    out["mode"] = mode
    if mode == "coordinates":
        if inc.lines is None:
            raise ValueError("this arrangement has no coordinates")
        order = inc.lines[0].order
        phi = totient(order)
        out["cyclotomic_order"] = order
        out["lines"] = [
            [[format_rational(c) for c in (list(co.coeffs) + [Fraction(0)] * phi)[:phi]]
             for co in l.coeffs]
            for l in inc.lines
        ]
    elif mode == "incidence":
        out["degree"] = inc.degree
        out["points"] = inc.point_lists()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out


def dumps_arrangement(inc: Incidence, mode: str | None = None) -> str:
    obj = arrangement_to_dict(inc, mode)
    # one line or point per row keeps files diff-able
    key = "lines" if obj["mode"] == "coordinates" else "points"
    rows = obj.pop(key)
    head = json.dumps(obj, indent=2)[:-2]
    if not rows:
        return f'{head},\n  "{key}": []\n}}\n'
    body = ",\n".join("    " + json.dumps(r) for r in rows)
    return f'{head},\n  "{key}": [\n{body}\n  ]\n}}\n'


def write_arrangement(inc: Incidence, path: str | Path, mode: str | None = None) -> None:
    Path(path).write_text(dumps_arrangement(inc, mode), encoding="utf-8")
