"""CSV / JSON emission for sample batches, boundary curves, and reports."""
from __future__ import annotations

import csv
import io
import json

from .bounds import BoundaryCurve, RegionReport, SampleBatch
from .states import state_from_json_obj, state_to_json_obj

CSV_HEADER = [
    "state_id",
    "provenance",
    "family",
    "param1",
    "param2",
    "seed",
    "S_L",
    "mutual_info",
    "classical_corr",
    "discord",
    "concurrence",
    "eof",
    "theta_opt",
    "phi_opt",
]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def batch_rows(batch):
    for i, (seed, rec) in enumerate(zip(batch.seeds, batch.records)):
        fam = batch.families[i] if batch.families else None
        yield [
            i,
            batch.provenance,
            fam.kind if fam else "",
            fam.p1 if fam else None,
            fam.p2 if fam else None,
            seed,
            rec.linear_entropy,
            rec.mutual_info,
            rec.classical_corr,
            rec.discord,
            rec.concurrence,
            rec.eof,
            rec.theta_opt,
            rec.phi_opt,
        ]


def curve_rows(curve):
    # curve points reuse the batch schema: x/y land in the columns of the
    # plane's measures, everything else non-applicable stays empty
    xcol = "eof" if curve.plane == "eof-q" else "S_L"
    for i, (p, x, y) in enumerate(zip(curve.params, curve.xs, curve.ys)):
        row = dict.fromkeys(CSV_HEADER, None)
        row.update(
            state_id=i,
            provenance=f"curve:{curve.plane}",
            family=curve.family_tag,
            param1=float(p),
            discord=float(y),
        )
        row[xcol] = float(x)
        yield [row[k] for k in CSV_HEADER]


def csv_text(obj):
    """RFC-4180 CSV for a SampleBatch or BoundaryCurve, 17 significant digits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_HEADER)
    if isinstance(obj, SampleBatch):
        rows = batch_rows(obj)
    elif isinstance(obj, BoundaryCurve):
        rows = curve_rows(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} as CSV")
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(obj, path):
    text = csv_text(obj)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def report_json_text(report):
    return json.dumps(report.to_json_obj(), indent=2) + "\n"


def read_state_file(path):
    """Parse the JSON state-file format and validate the matrix."""
    with open(path) as fh:
        obj = json.load(fh)
    return state_from_json_obj(obj)


def write_state_file(rho, path):
    with open(path, "w") as fh:
        json.dump(state_to_json_obj(rho), fh, indent=2)
        fh.write("\n")
