"""Versioned on-disk formats.

States, moment tables and witness reports are JSON documents carrying a
``schema`` name and ``version``; complex numbers are ``[re, im]`` pairs.
Region grids and blind-pair lists are CSV with a header row.  Output is
byte-for-byte reproducible: keys are sorted and floats use ``repr``.
"""

import csv
import io
import json
import math

import numpy as np

from .errors import ParameterError, SerializationError
from .fock_core import FockState, MomentTable
from .operators import LadderMonomial
from .states import BSN, TMSN
from .survey import Cell, RegionGrid

VERSION = 1

STATE_SCHEMA = "ngent.state"
MOMENTS_SCHEMA = "ngent.moments"
REPORT_SCHEMA = "ngent.report"
CONFIG_SCHEMA = "ngent.config"


def dumps(doc):
    return json.dumps(doc, sort_keys=True, separators=(", ", ": "), allow_nan=False) + "\n"


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def _complex(value, field):
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise SerializationError(f"expected a [re, im] pair of numbers, got {value!r}", field=field)


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _int(value, field, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise SerializationError(f"expected an integer >= {minimum}, got {value!r}", field=field)
    return value


def _float(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise SerializationError(f"expected a finite number, got {value!r}", field=field)
    return float(value)


def _header(doc, schema):
    if not isinstance(doc, dict):
        raise SerializationError("top level must be an object")
    if doc.get("schema") != schema:
        raise SerializationError(f"expected schema {schema!r}, got {doc.get('schema')!r}", field="schema")
    if doc.get("version") != VERSION:
        raise SerializationError(
            f"unsupported schema version {doc.get('version')!r} (this build reads {VERSION})",
            field="version",
        )


def _require(doc, key, where=""):
    if key not in doc:
        raise SerializationError("missing field", field=where + key)
    return doc[key]


# -- state specs -------------------------------------------------------------


def spec_to_dict(spec):
    if isinstance(spec, TMSN):
        return {"family": "tmsn", "M": spec.M, "N": spec.N, "xi": _pair(spec.xi)}
    if isinstance(spec, BSN):
        return {"family": "bsn", "n": spec.n, "m": spec.m, "r": _pair(spec.r)}
    raise TypeError(f"unknown spec {spec!r}")


def spec_from_dict(d, where="spec."):
    if not isinstance(d, dict):
        raise SerializationError("expected an object", field=where.rstrip("."))
    family = _require(d, "family", where)
    try:
        if family == "tmsn":
            return TMSN(
                _int(_require(d, "M", where), where + "M"),
                _int(_require(d, "N", where), where + "N"),
                _complex(_require(d, "xi", where), where + "xi"),
            )
        if family == "bsn":
            return BSN(
                _int(_require(d, "n", where), where + "n"),
                _int(_require(d, "m", where), where + "m"),
                _complex(_require(d, "r", where), where + "r"),
            )
    except ParameterError as exc:
        raise SerializationError(str(exc), field=where.rstrip(".")) from None
    raise SerializationError(f"unknown family {family!r}", field=where + "family")


# -- states ------------------------------------------------------------------


def state_to_dict(state, spec=None):
    amps = state.amplitudes
    nz = np.argwhere(amps != 0)
    return {
        "schema": STATE_SCHEMA,
        "version": VERSION,
        "cutoff": state.cutoff,
        "tail_bound": state.tail_bound,
        "spec": spec_to_dict(spec) if spec is not None else None,
        "amplitudes": [[int(i), int(j), *_pair(amps[i, j])] for i, j in nz],
    }


def dump_state(state, spec=None):
    return dumps(state_to_dict(state, spec))


def load_state(text):
    """Return ``(state, spec_or_None)``."""
    doc = _loads(text)
    _header(doc, STATE_SCHEMA)
    cutoff = _int(_require(doc, "cutoff"), "cutoff")
    tail = _float(_require(doc, "tail_bound"), "tail_bound")
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    rows = _require(doc, "amplitudes")
    if not isinstance(rows, list):
        raise SerializationError("expected a list", field="amplitudes")
    for idx, row in enumerate(rows):
        field = f"amplitudes[{idx}]"
        if not isinstance(row, list) or len(row) != 4:
            raise SerializationError("expected [n_a, n_b, re, im]", field=field)
        i, j = _int(row[0], field + "[0]"), _int(row[1], field + "[1]")
        if i > cutoff or j > cutoff:
            raise SerializationError(f"index ({i}, {j}) beyond cutoff {cutoff}", field=field)
        amps[i, j] = _complex(row[2:], field + "[2:]")
    spec = doc.get("spec")
    return FockState(amps, tail), (spec_from_dict(spec) if spec is not None else None)


# -- moment tables -----------------------------------------------------------


def table_to_dict(table):
    return {
        "schema": MOMENTS_SCHEMA,
        "version": VERSION,
        "source": table.source,
        "moments": [
            {"k": m.k, "l": m.l, "p": m.p, "q": m.q, "value": _pair(table[m])} for m in table
        ],
    }


def dump_table(table):
    return dumps(table_to_dict(table))


def load_table(text):
    doc = _loads(text)
    _header(doc, MOMENTS_SCHEMA)
    rows = _require(doc, "moments")
    if not isinstance(rows, list):
        raise SerializationError("expected a list", field="moments")
    entries = {}
    for idx, row in enumerate(rows):
        where = f"moments[{idx}]."
        if not isinstance(row, dict):
            raise SerializationError("expected an object", field=where.rstrip("."))
        mono = LadderMonomial(*(_int(_require(row, key, where), where + key) for key in "klpq"))
        if mono in entries:
            raise SerializationError(f"duplicate monomial {tuple(mono)}", field=where.rstrip("."))
        entries[mono] = _complex(_require(row, "value", where), where + "value")
    source = doc.get("source", "external")
    if not isinstance(source, str):
        raise SerializationError("expected a string", field="source")
    return MomentTable(entries, source)


# -- reports -----------------------------------------------------------------


def _detail(v):
    if isinstance(v, complex):
        return _pair(v)
    if isinstance(v, (bool, int, str)):
        return v
    return float(v)


def report_to_dict(reports, spec=None, cross_checks=(), meta=None):
    doc = {
        "schema": REPORT_SCHEMA,
        "version": VERSION,
        "spec": spec_to_dict(spec) if spec is not None else None,
        "reports": [
            {
                "criterion": r.criterion,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "margin": r.margin,
                "verdict": r.verdict,
                "inputs_hash": r.inputs_hash,
                "details": {k: _detail(v) for k, v in r.details.items()},
            }
            for r in reports
        ],
        "cross_checks": [
            {
                "quantity": c.quantity,
                "closed_form": _pair(c.closed_form),
                "numeric": _pair(c.numeric),
                "delta": c.delta,
                "tolerance": c.tolerance,
                "ok": c.ok,
            }
            for c in cross_checks
        ],
    }
    if meta:
        doc["meta"] = meta
    return doc


def dump_report(reports, spec=None, cross_checks=(), meta=None):
    return dumps(report_to_dict(reports, spec, cross_checks, meta))


def load_report(text):
    """Return ``(reports, spec_or_None)`` with reports rebuilt as WitnessReport."""
    from .witnesses import WitnessReport

    doc = _loads(text)
    _header(doc, REPORT_SCHEMA)
    out = []
    for idx, row in enumerate(_require(doc, "reports")):
        where = f"reports[{idx}]."
        details = {}
        for k, v in row.get("details", {}).items():
            details[k] = _complex(v, where + "details." + k) if isinstance(v, list) else v
        out.append(
            WitnessReport(
                _require(row, "criterion", where),
                _float(_require(row, "lhs", where), where + "lhs"),
                _float(_require(row, "rhs", where), where + "rhs"),
                _float(_require(row, "margin", where), where + "margin"),
                _require(row, "verdict", where),
                _require(row, "inputs_hash", where),
                details,
            )
        )
    spec = doc.get("spec")
    return out, (spec_from_dict(spec) if spec is not None else None)


# -- grids and blind pairs (CSV) ---------------------------------------------

GRID_COLUMNS = ("kind", "criterion", "param_re", "param_im", "row", "col", "detectable", "margin")


def dump_grid(grid):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS + ("row_axis", "col_axis"))
    z = complex(grid.parameter)
    for c in grid.cells:
        w.writerow(
            [grid.kind, grid.criterion, repr(z.real), repr(z.imag), c.i, c.j,
             int(c.detectable), repr(float(c.margin)), *grid.axes]
        )
    return buf.getvalue()


def load_grid(text):
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SerializationError("empty grid file", line=1) from None
    expected = list(GRID_COLUMNS + ("row_axis", "col_axis"))
    if header != expected:
        raise SerializationError(f"unexpected header {header!r}", field="header", line=1)
    cells, meta = [], None
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(expected):
            raise SerializationError(f"expected {len(expected)} columns, got {len(row)}", line=lineno)
        rec = dict(zip(expected, row))
        try:
            param = complex(float(rec["param_re"]), float(rec["param_im"]))
        except ValueError:
            raise SerializationError("malformed complex parameter", field="param_re/param_im", line=lineno) from None
        key = (rec["kind"], rec["criterion"], param, rec["row_axis"], rec["col_axis"])
        if meta is None:
            meta = key
        elif key != meta:
            raise SerializationError("grid metadata changes between rows", line=lineno)
        try:
            i, j, det = int(rec["row"]), int(rec["col"]), int(rec["detectable"])
        except ValueError:
            raise SerializationError("malformed integer", field="row/col/detectable", line=lineno) from None
        try:
            margin = float(rec["margin"])
        except ValueError:
            raise SerializationError(f"malformed number {rec['margin']!r}", field="margin", line=lineno) from None
        cells.append(Cell(i, j, bool(det), margin))
    if meta is None:
        raise SerializationError("grid has no data rows", line=2)
    rows = max(c.i for c in cells) + 1
    cols = max(c.j for c in cells) + 1
    cells.sort(key=lambda c: (c.i, c.j))
    try:
        return RegionGrid(meta[0], meta[1], meta[2], (rows, cols), tuple(cells), (meta[3], meta[4]))
    except ValueError as exc:
        raise SerializationError(str(exc)) from None


BLIND_COLUMNS = ("index", "m", "n", "listed_m", "listed_n", "listing_matches")


def dump_blind_pairs(pairs, comparisons=()):
    by_index = {c.index: c for c in comparisons}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BLIND_COLUMNS)
    for idx, p in enumerate(pairs):
        c = by_index.get(idx)
        listed = c.listed if c else ("", "")
        match = int(c.matches) if c else ""
        w.writerow([idx, p.m, p.n, *listed, match])
    return buf.getvalue()


def load_blind_pairs(text):
    from .survey import BlindPair

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != list(BLIND_COLUMNS):
        raise SerializationError(f"unexpected header {header!r}", field="header", line=1)
    out = []
    for lineno, row in enumerate(reader, start=2):
        try:
            out.append(BlindPair(int(row[1]), int(row[2])))
        except (ValueError, IndexError):
            raise SerializationError("malformed pair", field="m/n", line=lineno) from None
    return out


# -- config ------------------------------------------------------------------


def load_config(text):
    """A flat object of CLI option defaults, e.g. ``{"xi": "0.7", "max": 10}``."""
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise SerializationError("config must be an object")
    if "schema" in doc:
        _header(doc, CONFIG_SCHEMA)
    return {k: v for k, v in doc.items() if k not in ("schema", "version")}
