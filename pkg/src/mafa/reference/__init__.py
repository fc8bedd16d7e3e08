"""Static literature reference data."""

import csv
from importlib import resources


def load_aosca():
    """Rows of ``aosca.csv`` as dicts, comment lines skipped."""
    text = resources.files(__name__).joinpath("aosca.csv").read_text()
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(lines))


def lookup(figure, quantity, **match):
    for row in load_aosca():
        if int(row["figure"]) != figure or row["quantity"] != quantity:
            continue
        if all(row[k] != "" and float(row[k]) == float(v) for k, v in match.items()):
            return float(row["value"])
    raise KeyError((figure, quantity, match))
