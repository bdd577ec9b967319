"""File formats: CSV decision matrices and flow tables, JSON criteria and
portfolio configs, and deterministic report rendering (table/csv/json).

Writers produce byte-identical output for identical inputs; flow values,
gaps and other report numerics are printed with 6 decimal places using
round-half-even. File writes go through a temp file and an atomic rename.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from functools import singledispatch
from math import inf
from pathlib import Path
from typing import Iterable, Sequence

from .core import (
    Alternative,
    Condition,
    Criterion,
    DecisionMatrix,
    Direction,
    PreferenceFunctionSpec,
    PreferenceKind,
)
from .errors import ParseError, ValidationError
from .ga import GAReport
from .objectives import PortfolioSpec
from .promethee import (
    FlowEntry,
    FlowTable,
    PartialPreorder,
    PreferenceIndexMatrix,
    RankedOrder,
    rank_promethee_ii,
)
from .electre import OutrankingRelationTable
from .screening import ScreeningReport

__all__ = [
    "FORMATS",
    "fixture_path",
    "load_criteria",
    "load_matrix",
    "load_pi_matrix",
    "load_flow_table",
    "load_portfolio",
    "write_matrix",
    "write_report",
    "flow_delta_report",
    "write_text_atomic",
]

FORMATS = ("table", "csv", "json")

_FIXTURE_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    """Path of a bundled data file (the ten-country case study)."""
    path = _FIXTURE_DIR / name
    if not path.is_file():
        available = sorted(p.name for p in _FIXTURE_DIR.iterdir())
        raise ValidationError(f"no bundled fixture {name!r}; available: {available}")
    return path


# ---------------------------------------------------------------------------
# number formatting


def _f6(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _g(x: float) -> str:
    return f"{x:g}"


def _round6(x: float) -> float:
    return round(x, 6) + 0.0


# ---------------------------------------------------------------------------
# loaders


def _read_csv_rows(path: str | Path) -> list[list[str]]:
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return [row for row in csv.reader(fh)]
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc


def _parse_number(cell: str, path: Path, line: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(
            f"{path}, row {line}, column {column!r}: not a number: {cell!r}"
        ) from None
    if math.isnan(value):
        raise ParseError(f"{path}, row {line}, column {column!r}: missing value (NaN)")
    return value


def load_criteria(path: str | Path) -> tuple[Criterion, ...]:
    """Read a JSON criteria config into Criterion objects.

    Directions are the strings "max"/"min"; preference functions use the
    kind names usual / u-shape / v-shape / level / linear-with-indifference
    / gaussian with their q/p/s parameters; conditions are objects with
    keys {lo, hi}, {min} or {max}. Weights default to 1 (equal importance).
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    items = payload.get("criteria") if isinstance(payload, dict) else payload
    if not isinstance(items, list) or not items:
        raise ParseError(f"{path}: expected a non-empty 'criteria' list")
    criteria = []
    for position, item in enumerate(items, start=1):
        where = f"{path}, criteria[{position}]"
        if not isinstance(item, dict) or "id" not in item:
            raise ParseError(f"{where}: each criterion needs an 'id'")
        try:
            pref = item.get("pref_fn") or {}
            spec = PreferenceFunctionSpec(
                kind=PreferenceKind.parse(pref.get("kind", "usual")),
                q=pref.get("q"),
                p=pref.get("p"),
                s=pref.get("s"),
            )
            criteria.append(
                Criterion(
                    id=str(item["id"]),
                    name=str(item.get("name", "")),
                    direction=Direction.parse(item.get("direction", "max")),
                    weight=float(item.get("weight", 1.0)),
                    pref_fn=spec,
                    condition=_parse_condition(item.get("condition"), where),
                )
            )
        except ValidationError as exc:
            raise ParseError(f"{where}: {exc}") from exc
    ids = [c.id for c in criteria]
    if len(set(ids)) != len(ids):
        raise ParseError(f"{path}: duplicate criterion ids")
    return tuple(criteria)


def _parse_condition(raw: object, where: str) -> Condition | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: condition must be an object")
    allowed = {"lo", "hi", "min", "max"}
    unknown = set(raw) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown condition keys {sorted(unknown)}")
    lo = raw.get("lo", raw.get("min", -inf))
    hi = raw.get("hi", raw.get("max", inf))
    return Condition(float(lo), float(hi))


def load_matrix(path: str | Path, criteria: Sequence[Criterion]) -> DecisionMatrix:
    """Read an alternatives-by-criteria CSV against a criteria config.

    The first column holds alternative names; the remaining header cells
    must be exactly the config's criterion ids (any order).
    """
    path = Path(path)
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 2:
        raise ParseError(f"{path}: header needs an alternative column plus criterion ids")
    wanted = [c.id for c in criteria]
    present = header[1:]
    missing = [cid for cid in wanted if cid not in present]
    if missing:
        raise ParseError(f"{path}: missing criterion columns {missing}")
    extra = [cid for cid in present if cid not in wanted]
    if extra:
        raise ParseError(f"{path}: unexpected columns {extra}")
    if len(set(present)) != len(present):
        raise ParseError(f"{path}: duplicate criterion columns")
    order = [present.index(cid) + 1 for cid in wanted]

    alternatives = []
    seen: set[str] = set()
    for line, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ParseError(
                f"{path}, row {line}: expected {len(header)} cells, got {len(row)}"
            )
        name = row[0].strip()
        if not name:
            raise ParseError(f"{path}, row {line}: empty alternative name")
        if name in seen:
            raise ParseError(f"{path}, row {line}: duplicate alternative name {name!r}")
        seen.add(name)
        values = tuple(
            _parse_number(row[k].strip(), path, line, header[k]) for k in order
        )
        alternatives.append(Alternative(name, values))
    if not alternatives:
        raise ParseError(f"{path}: no alternatives")
    return DecisionMatrix(tuple(criteria), tuple(alternatives))


def load_pi_matrix(path: str | Path) -> PreferenceIndexMatrix:
    """Read a labeled square grid of pairwise preference intensities.

    Row labels must match the header labels in the same order; diagonal
    cells may be blank or "-" (read as 0).
    """
    path = Path(path)
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [cell.strip() for cell in rows[0]]
    ids = header[1:]
    if not ids:
        raise ParseError(f"{path}: header has no alternative labels")
    data_rows = [row for row in rows[1:] if any(cell.strip() for cell in row)]
    if len(data_rows) != len(ids):
        raise ParseError(
            f"{path}: grid is not square ({len(data_rows)} rows vs {len(ids)} columns)"
        )
    values = []
    for line, row in enumerate(data_rows, start=2):
        if len(row) != len(ids) + 1:
            raise ParseError(
                f"{path}, row {line}: expected {len(ids) + 1} cells, got {len(row)}"
            )
        label = row[0].strip()
        if not label:
            raise ParseError(f"{path}, row {line}: missing row label")
        i = line - 2
        if label != ids[i]:
            raise ParseError(
                f"{path}, row {line}: row label {label!r} does not match column "
                f"label {ids[i]!r}"
            )
        entries = []
        for k, cell in enumerate(row[1:]):
            cell = cell.strip()
            if i == k and cell in ("", "-", "–"):
                entries.append(0.0)
                continue
            value = _parse_number(cell, path, line, ids[k])
            if i == k:
                if value != 0.0:
                    raise ParseError(f"{path}, row {line}: diagonal entry must be 0 or blank")
            elif not (0.0 <= value <= 1.0):
                raise ParseError(
                    f"{path}, row {line}, column {ids[k]!r}: value {value} outside [0, 1]"
                )
            entries.append(value)
        values.append(tuple(entries))
    return PreferenceIndexMatrix(tuple(ids), tuple(values))


def load_flow_table(path: str | Path) -> FlowTable:
    """Read an alternative,phi_plus,phi_minus,phi_net CSV (extra columns
    such as a rank are ignored). Values are kept exactly as printed."""
    path = Path(path)
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [cell.strip() for cell in rows[0]]
    needed = ("alternative", "phi_plus", "phi_minus", "phi_net")
    try:
        pos = [header.index(name) for name in needed]
    except ValueError:
        raise ParseError(f"{path}: header must contain columns {needed}") from None
    entries = []
    for line, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        name = row[pos[0]].strip()
        plus, minus, net = (
            _parse_number(row[p].strip(), path, line, header[p]) for p in pos[1:]
        )
        entries.append(FlowEntry(name, plus, minus, net))
    if not entries:
        raise ParseError(f"{path}: no alternatives")
    return FlowTable(tuple(entries))


def load_portfolio(path: str | Path) -> PortfolioSpec:
    """Read a JSON portfolio: mu, cov, optional target_return and
    variance_budget."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(payload, dict) or "mu" not in payload or "cov" not in payload:
        raise ParseError(f"{path}: expected an object with 'mu' and 'cov'")
    try:
        return PortfolioSpec(
            mu=tuple(payload["mu"]),
            cov=tuple(tuple(row) for row in payload["cov"]),
            target_return=payload.get("target_return"),
            variance_budget=payload.get("variance_budget"),
        )
    except (TypeError, ValidationError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# writers


def _csv_text(rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _table_text(header: Sequence[str], rows: Sequence[Sequence[str]], *, right: set[int]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for k, cell in enumerate(row):
            widths[k] = max(widths[k], len(cell))
    lines = []
    for cells in [header, *rows]:
        parts = []
        for k, cell in enumerate(cells):
            parts.append(cell.rjust(widths[k]) if k in right else cell.ljust(widths[k]))
        lines.append("  ".join(parts).rstrip())
    return "\n".join(lines) + "\n"


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise ValidationError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


@singledispatch
def write_report(result: object, fmt: str = "table") -> str:
    raise ValidationError(f"no report writer for {type(result).__name__}")


@write_report.register
def _(result: FlowTable, fmt: str = "table") -> str:
    _check_format(fmt)
    ranks = {e.alternative: e.rank for e in rank_promethee_ii(result).entries}
    rows = [
        (e.alternative, _f6(e.phi_plus), _f6(e.phi_minus), _f6(e.phi_net), str(ranks[e.alternative]))
        for e in result.entries
    ]
    header = ("alternative", "phi_plus", "phi_minus", "phi_net", "rank")
    if fmt == "csv":
        return _csv_text([header, *rows])
    if fmt == "json":
        return _json_text(
            {
                "flows": [
                    {
                        "alternative": e.alternative,
                        "phi_plus": _round6(e.phi_plus),
                        "phi_minus": _round6(e.phi_minus),
                        "phi_net": _round6(e.phi_net),
                        "rank": ranks[e.alternative],
                    }
                    for e in result.entries
                ]
            }
        )
    return _table_text(header, rows, right={1, 2, 3, 4})


@write_report.register
def _(result: RankedOrder, fmt: str = "table") -> str:
    _check_format(fmt)
    rows = [(str(e.rank), e.alternative) for e in result.entries]
    header = ("rank", "alternative")
    if fmt == "csv":
        return _csv_text([header, *rows])
    if fmt == "json":
        return _json_text(
            {"ranking": [{"alternative": e.alternative, "rank": e.rank} for e in result.entries]}
        )
    return _table_text(header, rows, right={0})


@write_report.register
def _(result: OutrankingRelationTable, fmt: str = "table") -> str:
    _check_format(fmt)
    ids = result.ids
    pairs = [(a, b) for i, a in enumerate(ids) for b in ids[i + 1 :]]
    rows = [(a, b, result.relation(a, b).value) for a, b in pairs]
    header = ("a", "b", "relation")
    if fmt == "csv":
        return _csv_text([header, *rows])
    if fmt == "json":
        return _json_text(
            {"relations": [{"a": a, "b": b, "relation": rel} for a, b, rel in rows]}
        )
    return _table_text(header, rows, right=set())


@write_report.register
def _(result: ScreeningReport, fmt: str = "table") -> str:
    _check_format(fmt)
    header = ("alternative", "feasible", "criterion", "value", "condition", "gap")
    rows: list[tuple[str, ...]] = []
    for entry in result.entries:
        if entry.feasible:
            rows.append((entry.alternative, "yes", "-", "-", "-", "-"))
        else:
            for v in entry.violations:
                rows.append(
                    (
                        entry.alternative,
                        "no",
                        v.criterion_id,
                        _g(v.value),
                        v.condition.describe(),
                        _f6(v.gap),
                    )
                )
    if fmt == "csv":
        return _csv_text([header, *rows])
    if fmt == "json":
        return _json_text(
            {
                "screening": [
                    {
                        "alternative": e.alternative,
                        "feasible": e.feasible,
                        "violations": [
                            {
                                "criterion": v.criterion_id,
                                "value": v.value,
                                "condition": v.condition.describe(),
                                "gap": _round6(v.gap),
                            }
                            for v in e.violations
                        ],
                    }
                    for e in result.entries
                ]
            }
        )
    return _table_text(header, rows, right={5})


@write_report.register
def _(result: PartialPreorder, fmt: str = "table") -> str:
    _check_format(fmt)
    pairs = [(a, b) for i, a in enumerate(result.ids) for b in result.ids[i + 1 :]]
    rows = [(a, b, result.relation(a, b).value) for a, b in pairs]
    header = ("a", "b", "relation")
    if fmt == "csv":
        return _csv_text([header, *rows])
    if fmt == "json":
        return _json_text(
            {"partial_preorder": [{"a": a, "b": b, "relation": rel} for a, b, rel in rows]}
        )
    return _table_text(header, rows, right=set())


@write_report.register
def _(result: GAReport, fmt: str = "table") -> str:
    _check_format(fmt)
    hits, misses = result.cache_stats
    if fmt == "json":
        return _json_text(
            {
                "best_fitness": _round6(result.best_fitness),
                "best_profile": {
                    cid: _round6(v) for cid, v in result.best_profile_by_criterion.items()
                },
                "history": [
                    {"generation": g, "best": _round6(b), "mean": _round6(m)}
                    for g, (b, m) in enumerate(result.history)
                ],
                "final_ranking": [
                    {
                        "alternative": e.alternative,
                        "net_flow": _round6(result.final_net_flows[e.alternative]),
                        "rank": e.rank,
                    }
                    for e in result.final_ranking.entries
                ],
                "cache": {"hits": hits, "misses": misses},
            }
        )
    profile_rows = [(cid, _f6(v)) for cid, v in result.best_profile_by_criterion.items()]
    history_rows = [
        (str(g), _f6(b), _f6(m)) for g, (b, m) in enumerate(result.history)
    ]
    ranking_rows = [
        (e.alternative, _f6(result.final_net_flows[e.alternative]), str(e.rank))
        for e in result.final_ranking.entries
    ]
    if fmt == "csv":
        sections = [
            _csv_text(
                [
                    ("metric", "value"),
                    ("best_fitness", _f6(result.best_fitness)),
                    ("cache_hits", str(hits)),
                    ("cache_misses", str(misses)),
                ]
            ),
            _csv_text([("criterion", "value"), *profile_rows]),
            _csv_text([("generation", "best", "mean"), *history_rows]),
            _csv_text([("alternative", "net_flow", "rank"), *ranking_rows]),
        ]
        return "\n".join(sections)
    parts = [
        f"best_fitness: {_f6(result.best_fitness)}",
        f"cache: {hits} hits, {misses} misses",
        "",
        "best profile",
        _table_text(("criterion", "value"), profile_rows, right={1}).rstrip("\n"),
        "",
        "history",
        _table_text(("generation", "best", "mean"), history_rows, right={0, 1, 2}).rstrip("\n"),
        "",
        "final ranking",
        _table_text(("alternative", "net_flow", "rank"), ranking_rows, right={1, 2}).rstrip("\n"),
    ]
    return "\n".join(parts) + "\n"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_matrix(matrix: DecisionMatrix) -> str:
    """CSV text of a decision matrix at full float precision, so loading
    it back yields an equal matrix."""
    rows: list[list[object]] = [["alternative", *matrix.criterion_ids]]
    for alt in matrix.alternatives:
        rows.append([alt.id, *(repr(v) for v in alt.values)])
    return _csv_text(rows)


def flow_delta_report(
    computed: FlowTable, printed: FlowTable, *, tol: float = 1e-5
) -> str:
    """CSV of alternatives whose printed phi+ disagrees with the computed
    one beyond ``tol``; delta is printed minus computed."""
    rows = [("alternative", "phi_plus_computed", "phi_plus_printed", "delta")]
    printed_by_id = {e.alternative: e for e in printed.entries}
    for entry in computed.entries:
        try:
            ref = printed_by_id[entry.alternative]
        except KeyError:
            raise ValidationError(
                f"printed flow table is missing alternative {entry.alternative!r}"
            ) from None
        delta = ref.phi_plus - entry.phi_plus
        if abs(delta) > tol:
            rows.append(
                (entry.alternative, _f6(entry.phi_plus), _f6(ref.phi_plus), _f6(delta))
            )
    return _csv_text(rows)


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and an atomic rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)
