"""JSON/CSV encoding of reports and trial records, plus atomic file output.

CSV trial schema (one row per record)::

    trial_id,n,sides,L,A,Lhat,P,phi,phi0,tau,nu,zeta,classic_deficit,
    zhang_deficit,theorem1_case,verdict_c1a,verdict_c1b,verdict_c2,verdict_c3

``sides`` is the side list joined by ';' with 17 significant digits.  A
record whose evaluation failed has empty numeric cells and ``Error`` as its
theorem1_case.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import tempfile
from collections.abc import Iterable
from dataclasses import asdict, is_dataclass
from pathlib import Path

from .functionals import FunctionalReport
from .lab import CONJECTURES, Theorem1Case, TrialRecord, Verdict, conjecture_margins

CSV_FIELDS = (
    "trial_id",
    "n",
    "sides",
    "L",
    "A",
    "Lhat",
    "P",
    "phi",
    "phi0",
    "tau",
    "nu",
    "zeta",
    "classic_deficit",
    "zhang_deficit",
    "theorem1_case",
    "verdict_c1a",
    "verdict_c1b",
    "verdict_c2",
    "verdict_c3",
)
_REPORT_COLS = CSV_FIELDS[3:14]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def plain(obj):
    """Convert dataclasses/enums/tuples into JSON-ready values (non-finite -> None)."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if hasattr(obj, "item"):  # numpy scalar
        return plain(obj.item())
    return obj


def dumps(obj) -> str:
    return json.dumps(plain(obj), indent=2, allow_nan=False) + "\n"


def record_dict(rec: TrialRecord) -> dict:
    return {
        "trial_id": rec.trial_id,
        "source": rec.source,
        "n": rec.n,
        "sides": list(rec.sides),
        "center": rec.center,
        "report": rec.report.as_dict() if rec.report else None,
        "theorem1_case": rec.theorem1_case.value if rec.theorem1_case else None,
        "verdicts": {k: v.value for k, v in rec.verdicts.items()},
        "margins": dict(rec.margins),
        "error": rec.error,
    }


def record_from_dict(d: dict) -> TrialRecord:
    rep = FunctionalReport(**d["report"]) if d.get("report") else None
    margins = d.get("margins") or (conjecture_margins(rep) if rep else {})
    return TrialRecord(
        trial_id=int(d["trial_id"]),
        source=d.get("source", ""),
        sides=tuple(d.get("sides") or ()),
        report=rep,
        theorem1_case=Theorem1Case(d["theorem1_case"]) if d.get("theorem1_case") else None,
        verdicts={k: Verdict(v) for k, v in (d.get("verdicts") or {}).items()},
        margins=margins,
        center=d.get("center"),
        error=d.get("error"),
    )


def records_to_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for rec in records:
        sides = ";".join(fmt(a) for a in rec.sides)
        if rec.report is None:
            w.writerow([rec.trial_id, rec.n, sides] + [""] * len(_REPORT_COLS) + ["Error", "", "", "", ""])
            continue
        r = rec.report
        w.writerow(
            [rec.trial_id, r.n, sides]
            + [fmt(getattr(r, c)) for c in _REPORT_COLS]
            + [rec.theorem1_case.value]
            + [rec.verdicts[c].value for c in CONJECTURES]
        )
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        missing = set(CSV_FIELDS) - set(row)
        if missing:
            raise ValueError(f"CSV is missing columns: {sorted(missing)}")
        sides = tuple(float(x) for x in row["sides"].split(";") if x)
        tid = int(row["trial_id"])
        if row["theorem1_case"] == "Error":
            out.append(TrialRecord(tid, "", sides, None, None, error="Error"))
            continue
        vals = {c: float(row[c]) for c in _REPORT_COLS}
        rep = FunctionalReport(
            n=int(row["n"]),
            corollary2_rhs=vals["Lhat"] ** 2 * (1.0 - vals["tau"]),
            **vals,
        )
        out.append(
            TrialRecord(
                trial_id=tid,
                source="",
                sides=sides,
                report=rep,
                theorem1_case=Theorem1Case(row["theorem1_case"]),
                verdicts={c: Verdict(row[f"verdict_{c}"]) for c in CONJECTURES},
                margins=conjecture_margins(rep),
            )
        )
    return out


def load_records(path: str | os.PathLike) -> list[TrialRecord]:
    text = Path(path).read_text()
    if text.lstrip().startswith(("{", "[")):
        data = json.loads(text)
        if isinstance(data, dict):
            data = data.get("records", [])
        return [record_from_dict(d) for d in data]
    return records_from_csv(text)


def rows_to_csv(columns: Iterable[str], rows: Iterable[dict]) -> str:
    columns = list(columns)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, enum.Enum):
        return v.value
    return str(v)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
