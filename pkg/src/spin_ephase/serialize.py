"""JSON and CSV emitters shared by the CLI."""
from __future__ import annotations

import csv
import io
import json

SCHEMA_VERSION = "1"


def to_json(doc: dict) -> str:
    # repr-based float output is the shortest exact round-trip form
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def csv_rows(doc: dict) -> list[list]:
    if "values" in doc and "axes" in doc:
        axes = doc["axes"]
        rows = [[f"s{j}" for j in axes] + ["probability"]]
        for signs, p in doc["values"].items():
            rows.append(list(signs) + [repr(p)])
        return rows
    if "cells" in doc:
        rows = [["cell", "count"]]
        rows.extend([k, v] for k, v in doc["cells"].items())
        return rows
    rows = [["key", "value"]]
    for k, v in doc.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        elif isinstance(v, float):
            v = repr(v)
        rows.append([k, v])
    return rows


def to_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(csv_rows(doc))
    return buf.getvalue()
