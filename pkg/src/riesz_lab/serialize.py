"""Deterministic JSON/CSV emission and reconstruction of reports."""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .errors import InputError
from .experiments import DiskReport, PigeonholeResult, ScanReport, Theorem2Report, TranslationReport
from .geometry import Disk, Interval, IntervalSet, PaperSetStages, build_paper_set, normalize_intervals
from .harmonic import ExponentialSystem, GramMatrix
from .riesz import ExpansionResult, RieszBounds


def _float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def to_jsonable(obj):
    """Reduce reports, arrays and geometry objects to JSON-native values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, np.bool_):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": obj.real.tolist(), "im": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, IntervalSet):
        return [[iv.lo, iv.hi] for iv in obj.intervals]
    if isinstance(obj, Interval):
        return [obj.lo, obj.hi]
    if isinstance(obj, ExponentialSystem):
        return {"freqs": obj.to_list()}
    if isinstance(obj, Disk):
        return {"radius": obj.radius, "center": list(obj.center)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return to_jsonable({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(v, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _float(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, list):
        if not v:
            return "[]"
        if all(not isinstance(x, (list, dict)) for x in v):
            return "[" + ", ".join(_emit(x, indent, level + 1) for x in v) + "]"
        return "[\n" + ",\n".join(pad + _emit(x, indent, level + 1) for x in v) + "\n" + end + "]"
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [pad + json.dumps(k, ensure_ascii=False) + ": " + _emit(v[k], indent, level + 1) for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    raise TypeError(f"not JSON-native: {type(v).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Sorted keys, floats at 17 significant digits, non-finite as
    Infinity/NaN tokens (accepted by :func:`json.loads`)."""
    return _emit(to_jsonable(obj), indent, 0) + "\n"


def loads(text: str):
    return json.loads(text)


def fingerprint(obj) -> str:
    return hashlib.sha256(_emit(to_jsonable(obj), 0, 0).encode()).hexdigest()


# -- per-type dictionaries --------------------------------------------------------


def interval_set_to_dict(S: IntervalSet) -> dict:
    return {"intervals": to_jsonable(S), "measure": S.measure}


def interval_set_from_dict(d) -> IntervalSet:
    return normalize_intervals(d["intervals"] if isinstance(d, dict) else d)


def paper_set_to_dict(P: PaperSetStages) -> dict:
    return {
        "stages": P.stages,
        "split_counts": list(P.split_counts),
        "intervals": to_jsonable(P.final),
        "measure": P.final.measure,
        "eps": P.eps if P.steps else None,
        "stage_meta": [
            {
                "k": st.k,
                "splits": st.splits,
                "parent": to_jsonable(st.parent),
                "eps": st.eps,
                "gap": st.gap if len(st.kept) > 1 else None,
                "usable": to_jsonable(list(st.usable)),
                "continuation": to_jsonable(st.continuation),
            }
            for st in P.steps
        ],
    }


def paper_set_from_dict(d) -> PaperSetStages:
    P = build_paper_set(d["stages"], d["split_counts"])
    if to_jsonable(P.final) != d["intervals"]:
        raise InputError("serialised intervals do not match the construction parameters")
    return P


def gram_to_dict(G: GramMatrix) -> dict:
    A = G.entries
    return {"n": G.n, "domain_tag": G.domain_tag, "re": A.real.tolist(), "im": A.imag.tolist()}


def gram_from_dict(d) -> GramMatrix:
    return GramMatrix(np.array(d["re"]) + 1j * np.array(d["im"]), domain_tag=d["domain_tag"])


def gram_csv_rows(G: GramMatrix):
    """Header and rows with interleaved real/imaginary columns."""
    header = [f"{p}_{j}" for j in range(G.n) for p in ("re", "im")]
    A = G.entries
    rows = []
    for i in range(G.n):
        row = np.empty(2 * G.n)
        row[0::2] = A[i].real
        row[1::2] = A[i].imag
        rows.append(row.tolist())
    return header, rows


def bounds_to_dict(b: RieszBounds) -> dict:
    d = dataclasses.asdict(b)
    d["outcome"] = b.outcome
    d["condition"] = b.condition
    return d


def bounds_from_dict(d) -> RieszBounds:
    names = {f.name for f in dataclasses.fields(RieszBounds)}
    return RieszBounds(**{k: v for k, v in d.items() if k in names})


def expansion_to_dict(e: ExpansionResult) -> dict:
    d = {f.name: getattr(e, f.name) for f in dataclasses.fields(e)}
    return to_jsonable(d)


def expansion_from_dict(d) -> ExpansionResult:
    d = dict(d)
    c = d.pop("coefficients")
    return ExpansionResult(coefficients=np.array(c["re"]) + 1j * np.array(c["im"]), **d)


REPORT_TYPES = {
    "translation": TranslationReport,
    "scan": ScanReport,
    "pigeonhole": PigeonholeResult,
    "theorem2": Theorem2Report,
    "disk": DiskReport,
}
_KIND = {cls: kind for kind, cls in REPORT_TYPES.items()}


def report_to_dict(report) -> dict:
    if isinstance(report, RieszBounds):
        return {"kind": "bounds", **to_jsonable(bounds_to_dict(report))}
    kind = _KIND.get(type(report))
    if kind is None:
        raise TypeError(f"unknown report type {type(report).__name__}")
    return {"kind": kind, **to_jsonable(report.to_dict())}


def report_from_dict(d):
    d = dict(d)
    kind = d.pop("kind")
    if kind == "bounds":
        return bounds_from_dict(d)
    if kind not in REPORT_TYPES:
        raise InputError(f"unknown report kind {kind!r}")
    return REPORT_TYPES[kind](**d)


# -- files ---------------------------------------------------------------------


def write_text(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_csv(path, header, rows):
    """CSV with a header row; floats at 17 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return _float(float(v))
    if v is None:
        return ""
    return v


def read_csv(path):
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]
