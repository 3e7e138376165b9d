"""Reference data shipped with the package and the list of known printing deviations.

Every file under ``data/`` is a literal transcription.  Where a printed
value cannot be right, ``deviations.json`` records the printed value, the
value used instead and why; nothing is patched silently.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load(name):
    text = resources.files("poncelet9").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def deviations():
    return load("deviations")["deviations"]


def _entry_index(location):
    m = re.fullmatch(r"(?:entry|column) (\d+)", location)
    return int(m.group(1)) - 1 if m else None


def resolved_listing(oval_id):
    """Printed point listing of a named oval with documented corrections applied."""
    printed = list(load("ovals")[oval_id]["printed"])
    used = list(printed)
    for d in deviations():
        if d["object"] == f"oval {oval_id}":
            i = _entry_index(d["location"])
            if printed[i] != d["printed"]:
                raise ValueError(f"deviation {d['id']} does not match the transcription")
            used[i] = d["used"]
    return used


def resolved_columns(table_id):
    tab = load("tangent_tables")[table_id]
    cols = list(tab["columns"])
    for d in deviations():
        if d["object"] == table_id and d["location"].startswith("column "):
            i = _entry_index(d["location"])
            if cols[i] != d["printed"]:
                raise ValueError(f"deviation {d['id']} does not match the transcription")
            cols[i] = d["used"]
    return cols


def cell_deviations(table_id):
    """{(row label, column label): deviation} for documented cell corrections."""
    out = {}
    for d in deviations():
        if d["object"] == table_id and " x " in d["location"]:
            r, c = d["location"].split(" x ")
            out[(r, c)] = d
    return out


def resolved_value(obj, location, printed):
    """The value to use for a printed item, after any documented correction."""
    for d in deviations():
        if d["object"] == obj and d["location"] == location:
            if d["printed"] != printed:
                raise ValueError(f"deviation {d['id']} does not match the transcription")
            return d["used"]
    return printed
