"""Report documents and their JSON / CSV / dat renderings.

Rationals are always serialised as ``"num/den"`` strings and integers above
2^53 as decimal strings, so JSON readers never round anything.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__

_JSON_SAFE = 2**53


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


def json_int(n: int):
    n = int(n)
    return str(n) if abs(n) > _JSON_SAFE else n


def decimal17(x) -> str:
    """17 significant digits, for plotting only."""
    x = Fraction(x)
    return f"{x.numerator / x.denominator:.17g}"


@dataclass
class ReportDoc:
    command: str
    metadata: dict = field(default_factory=dict)
    tables: list = field(default_factory=list)
    estimates: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    brackets: list = field(default_factory=list)
    pair: list = field(default_factory=list)
    oracle: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    bench: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDoc":
        return cls(**json.loads(text))


def metadata(command: str, f: str | None, p: int | None, nvars: int | None,
             e_range: tuple[int, int] | None, capacity: int) -> dict:
    return {
        "command": command,
        "f": f,
        "p": p,
        "nvars": nvars,
        "e_range": list(e_range) if e_range else None,
        "coefficient_field": f"F_{p}" if p else None,
        "engine_version": __version__,
        "capacity": json_int(capacity),
    }


# ---------------------------------------------------------------------------
# CSV: one fixed column layout per command


def csv_rows(doc: ReportDoc) -> tuple[list[str], list[list[str]]]:
    cmd = doc.command
    if cmd == "table":
        header = ["e", "t", "length", "c_num", "c_den"]
        rows = []
        for tab in doc.tables:
            for t, (length, c) in enumerate(zip(tab["lengths"], tab["c"])):
                num, den = c.split("/")
                rows.append([str(tab["e"]), str(t), str(length), num, den])
        return header, rows
    if cmd == "xi":
        header = ["e", "x_exact", "y_exact"]
        rows = [[str(s["e"]), x, y] for s in doc.steps for x, y in s["breakpoints"]]
        return header, rows
    if cmd == "estimates":
        header = ["kind", "e", "value_num", "value_den"]
        rows = []
        for seq in doc.estimates:
            for e, v in seq["values"]:
                num, den = v.split("/")
                rows.append([seq["kind"], str(e), num, den])
        return header, rows
    if cmd == "pair":
        header = ["e", "t", "exponent", "estimate", "one_minus_phi"]
        rows = [[str(r["e"]), r["t"], str(r["exponent"]), r["estimate"], r["one_minus_phi"]]
                for r in doc.pair]
        return header, rows
    if cmd == "monomial":
        header = ["key", "value"]
        rows = [[k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)]
                for k, v in sorted(doc.oracle.items())]
        return header, rows
    if cmd == "verify":
        header = ["check_id", "subject", "passed", "skipped", "witness"]
        rows = [[c["check_id"], c["subject"], str(c["passed"]).lower(), str(c["skipped"]).lower(),
                 json.dumps(c["witness"], sort_keys=True) if c["witness"] else ""]
                for c in doc.checks]
        return header, rows
    if cmd == "bench":
        header = ["strategy", "e", "seconds", "agrees"]
        rows = [[b["strategy"], str(b["e"]), f"{b['seconds']:.6f}", str(b["agrees"]).lower()]
                for b in doc.bench]
        return header, rows
    raise ValueError(f"no CSV layout for command {cmd!r}")


def to_csv(doc: ReportDoc) -> str:
    header, rows = csv_rows(doc)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def dat_lines(points) -> str:
    """Three columns: exact x, exact y, decimal y."""
    out = ["# x_exact y_exact y_decimal"]
    for x, y in points:
        out.append(f"{frac_str(x)} {frac_str(y)} {decimal17(y)}")
    return "\n".join(out) + "\n"
