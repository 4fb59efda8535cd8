"""Embedded tablet transliterations, table generators, and the verifier
that diffs generated tables against them.

Corpus files are UTF-8 TSV, one record per line, ``#`` comments, columns
text_id / face / column / line / role / context / transliteration / flags
/ corrected / note.  The environment variable EDST_CORPUS_DIR points the
loaders at an alternative directory.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import CorpusError
from .metrology import MetrologicalContext, context_lookup, unit
from .procedures import (
    CutPasteScheme,
    bordering_sequence,
    cutpaste_derive,
    rect_area,
    scale_seed,
    seed_square,
    square_area,
)
from .quantity import CompoundValue, Piece, Quantity, decompose_canonical
from .translit import normalize, parse_measure, render_value

ROLES = (
    "heading",
    "entry-side",
    "entry-front",
    "entry-ground",
    "entry-surface",
    "total",
    "subscript",
    "scheme",
)

FLAGS = ("restored", "sic", "reversed", "defective", "nonstandard", "omitted-entry")

TABLE_IDS = ("T1", "T2", "T3A", "T3B", "T4", "T5A", "T5B", "T5C", "T5D", "T5E")

_FILES = {
    "T1": "t1.tsv",
    "T2": "t2.tsv",
    "T3A": "t3.tsv",
    "T3B": "t3.tsv",
    "T4": "t4.tsv",
    "T5A": "t5.tsv",
    "T5B": "t5.tsv",
    "T5C": "t5.tsv",
    "T5D": "t5.tsv",
    "T5E": "t5.tsv",
}

_VALUE_ROLES = ("entry-side", "entry-front", "entry-ground", "entry-surface", "total")


@dataclass(frozen=True)
class CorpusRecord:
    text_id: str
    face: str
    column: str
    line: int
    role: str
    context_id: str
    transliteration: str
    flags: tuple[str, ...] = ()
    corrected: str = ""
    note: str = ""

    def flagged(self, *names: str) -> bool:
        if not names:
            return bool(self.flags)
        return any(f in self.flags for f in names)

    def context(self) -> MetrologicalContext:
        return context_lookup(self.context_id)

    def value(self) -> Quantity:
        """Evaluated quantity; sic or misordered rows use their corrected
        reading, everything else the literal text (leniently if flagged)."""
        text = self.corrected or self.transliteration
        lenient = bool(self.flags) and not self.corrected
        return parse_measure(text, self.context(), lenient=lenient).quantity()

    def normalized(self) -> str:
        return normalize(
            self.transliteration, self.context(), lenient=bool(self.flags)
        )


def corpus_dir() -> Path:
    env = os.environ.get("EDST_CORPUS_DIR")
    if env:
        return Path(env)
    return Path(resources.files("edst") / "data")


def load(path) -> list[CorpusRecord]:
    """Read one corpus TSV; malformed rows report their line number."""
    records: list[CorpusRecord] = []
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) < 7 or len(fields) > 10:
                raise CorpusError(
                    f"expected 10 tab-separated fields, found {len(fields)}",
                    lineno,
                    str(path),
                )
            fields += [""] * (10 - len(fields))  # trailing empties may be trimmed
            text_id, face, column, line_no, role, ctx_id, translit, flags, corrected, note = fields
            if role not in ROLES:
                raise CorpusError(f"unknown role {role!r}", lineno, str(path))
            flag_tuple = tuple(f for f in flags.split(",") if f)
            for f in flag_tuple:
                if f not in FLAGS:
                    raise CorpusError(f"unknown flag {f!r}", lineno, str(path))
            try:
                context_lookup(ctx_id)
            except Exception:
                raise CorpusError(f"unknown context {ctx_id!r}", lineno, str(path)) from None
            if "sic" in flag_tuple and not corrected:
                raise CorpusError("sic row without a corrected reading", lineno, str(path))
            try:
                line_int = int(line_no)
            except ValueError:
                raise CorpusError(f"bad line number {line_no!r}", lineno, str(path)) from None
            records.append(
                CorpusRecord(
                    text_id,
                    face,
                    column,
                    line_int,
                    role,
                    ctx_id,
                    translit,
                    flag_tuple,
                    corrected,
                    note,
                )
            )
    _check_alternation(records, str(path))
    return records


def _check_alternation(records: list[CorpusRecord], path: str) -> None:
    open_sides: dict[str, bool] = {}
    for rec in records:
        if rec.role in ("entry-side", "entry-front", "entry-ground"):
            if rec.transliteration:
                open_sides[rec.text_id] = True
        elif rec.role == "entry-surface":
            if not open_sides.get(rec.text_id):
                raise CorpusError(
                    f"{rec.text_id} surface row without a preceding side", rec.line, path
                )
            open_sides[rec.text_id] = False


def load_table(text_id: str, directory=None) -> list[CorpusRecord]:
    if text_id not in _FILES:
        raise CorpusError(f"unknown table id {text_id!r}")
    directory = Path(directory) if directory else corpus_dir()
    records = load(directory / _FILES[text_id])
    return [r for r in records if r.text_id == text_id]


# ---------------------------------------------------------------------------
# table generation


@dataclass(frozen=True)
class Cell:
    role: str
    context_id: str
    text: str
    quantity: Quantity


@dataclass(frozen=True)
class TableRow:
    cells: tuple[Cell, ...]
    note: str = ""


@dataclass(frozen=True)
class TableSpec:
    text_id: str
    rows: tuple[TableRow, ...]

    def cells(self):
        for row in self.rows:
            yield from row.cells


_ED3A = "CTX-ED3A"
_ZAB = "CTX-ZAB"
_ADAB = "CTX-ADAB"
_G = "CTX-G"
_SARZ = "CTX-SAR-ZAB"
_SARA = "CTX-SAR-ADAB"


def _len_cell(role, ctx_id, count, *, unit_name=None, show_unit=False, qualifier=None,
              qual_before=False) -> Cell:
    ctx = context_lookup(ctx_id)
    u = unit(unit_name) if unit_name else ctx.base_unit
    cv = CompoundValue.additive([Piece(u, Fraction(count))])
    show = show_unit or u.name != ctx.base_unit.name
    body = render_value(cv, ctx, show_units=show)
    if qualifier:
        text = f"{qualifier} {body}" if qual_before else f"{body} {qualifier}"
    else:
        text = body
    return Cell(role, ctx_id, text, Quantity.of(count, u))


def _g_cell(q: Quantity, *, show_gan2: bool, role="entry-surface") -> Cell:
    cv = CompoundValue.additive([Piece(unit("GAN2"), q.magnitude / 100)])
    text = render_value(cv, context_lookup(_G), show_gan2=show_gan2)
    return Cell(role, _G, text, q)


def _sar_cell(q: Quantity, ctx_id: str, value: CompoundValue | None = None) -> Cell:
    ctx = context_lookup(ctx_id)
    cv = value if value is not None else decompose_canonical(q, ctx)
    return Cell("entry-surface", ctx_id, render_value(cv, ctx), q)


_T1_SIDES = [600, 540, 480, 420, 360, 300, 240, 180, 120, 60, 50, 40, 30, 20, 10, 5]


def _generate_squares_tabular(text_id: str) -> TableSpec:
    """T1 and its duplicate T3A: front, equal side, surface."""
    rows = []
    for i, s in enumerate(_T1_SIDES):
        first = i == 0
        if text_id == "T1":
            front = _len_cell(
                "entry-front", _ED3A, s, show_unit=first, qualifier="sag" if first else None
            )
            surf = _g_cell(square_area(Quantity.of(s, unit("ninda-DU"))), show_gan2=first)
        else:
            front = _len_cell(
                "entry-front", _ED3A, s, qualifier="sag" if first else None
            )
            surf = _g_cell(square_area(Quantity.of(s, unit("ninda-DU"))), show_gan2=False)
        side = _len_cell("entry-side", _ED3A, s, qualifier="sa2")
        rows.append(TableRow((front, side, surf)))
    return TableSpec(text_id, tuple(rows))


_T2_FRONTS = [5, 10, 20, 30, 40, 50]


def _generate_t2() -> TableSpec:
    rows = []
    total = Quantity.of(0, unit("sar"))
    for i, f in enumerate(_T2_FRONTS):
        first = i == 0
        g = 60 * f
        front = _len_cell("entry-front", _ED3A, f, show_unit=first)
        ground = _len_cell("entry-ground", _ED3A, g, qualifier="ki")
        area = rect_area(Quantity.of(f, unit("ninda-DU")), Quantity.of(g, unit("ninda-DU")))
        surf = _g_cell(area, show_gan2=first)
        total = total + area
        rows.append(TableRow((front, ground, surf)))
    rows.append(TableRow((_g_cell(total, show_gan2=False, role="total"),), note="an-se3-gu2"))
    return TableSpec("T2", tuple(rows))


_T3B_FRONTS = [
    (10, None),
    (9, None),
    (8, None),
    (7, None),
    (6, None),
    (5, None),
    (4, None),
    (3, None),
    (2, None),
    (1, None),
    (3, "ur2-hal-la"),
    (2, "ur2-hal-la"),
    (1, "ur2-hal-la"),
    (1, "kusz3-numun"),
]


def _generate_t3b() -> TableSpec:
    rows = []
    ground_q = Quantity.of(600, unit("ninda-DU"))
    for i, (count, unit_name) in enumerate(_T3B_FRONTS):
        first = i == 0
        front = _len_cell(
            "entry-front",
            _ED3A,
            count,
            unit_name=unit_name,
            show_unit=first,
            qualifier="sag" if first else None,
            qual_before=first,
        )
        # the published edition has sa2 in the ground column of this table
        ground = _len_cell("entry-ground", _ED3A, 600, qualifier="sa2")
        area = rect_area(front.quantity, ground_q)
        rows.append(TableRow((front, ground, _g_cell(area, show_gan2=False))))
    return TableSpec("T3B", tuple(rows))


_T4_SIDES = [
    (1, "kusz3"),
    (2, "kusz3"),
    (3, "kusz3"),
    (4, "kusz3"),
    (5, "kusz3"),
    (6, "kusz3"),
    (7, "kusz3"),
    (8, "kusz3"),
    (9, "kusz3"),
    (10, "kusz3"),
    (11, "kusz3"),
    (3, "gi"),
]


def parse_scheme(text: str, side: Quantity) -> CutPasteScheme:
    """Parse the ``+WxH -WxH`` scheme notation, sides in kusz3."""
    pieces = []
    for token in text.split():
        sign = 1 if token.startswith("+") else -1
        if token[0] not in "+-":
            raise CorpusError(f"scheme piece {token!r} lacks a sign")
        w_text, _, h_text = token[1:].partition("x")
        pieces.append((sign, Fraction(w_text), Fraction(h_text)))
    return CutPasteScheme(side, tuple(pieces))


def t4_schemes(directory=None) -> list[CorpusRecord]:
    directory = Path(directory) if directory else corpus_dir()
    return [r for r in load(directory / "schemes.tsv") if r.role == "scheme"]


def _generate_t4(directory=None) -> TableSpec:
    schemes = t4_schemes(directory)
    if len(schemes) != len(_T4_SIDES):
        raise CorpusError(f"expected {len(_T4_SIDES)} schemes, found {len(schemes)}")
    rows = []
    for (count, unit_name), scheme_rec in zip(_T4_SIDES, schemes):
        side_cell = _len_cell(
            "entry-side", _ADAB, count, unit_name=unit_name, show_unit=True, qualifier="sa2"
        )
        side_q = side_cell.quantity
        if count == 11 and unit_name == "kusz3":
            # the tablet jumps from here straight to 3 gi
            omitted = TableRow((), note="1 ninda entry omitted (flag omitted-entry)")
        else:
            omitted = None
        scheme = parse_scheme(scheme_rec.transliteration, side_q)
        value = cutpaste_derive(side_q, scheme)
        surf = _sar_cell(square_area(side_q), _SARA, value)
        rows.append(TableRow((side_cell, surf)))
        if omitted is not None:
            rows.append(omitted)
    return TableSpec("T4", tuple(rows))


_T5A_SIDES = (
    list(range(1, 11))
    + list(range(20, 51, 10))
    + list(range(60, 541, 60))
    + list(range(600, 3001, 600))
    + list(range(3600, 32401, 3600))
    + [36000]
)

_T5_SUBUNITS = {"T5B": "nig2-kas7", "T5C": "kusz3-numun", "T5D": "gisz-bad", "T5E": "szu-bad"}


def _generate_t5a() -> TableSpec:
    rows = []
    for i, s in enumerate(_T5A_SIDES):
        side = _len_cell(
            "entry-side", _ZAB, s, show_unit=(i == 0), qualifier="sa2"
        )
        area = square_area(side.quantity)
        if s < 10:
            surf = _sar_cell(area, _SARZ)
        else:
            surf = _g_cell(area, show_gan2=True)
        rows.append(TableRow((side, surf)))
    return TableSpec("T5A", tuple(rows))


def _generate_t5_subtable(text_id: str) -> TableSpec:
    subunit = unit(_T5_SUBUNITS[text_id])
    seed = seed_square(subunit)
    rows = []
    for k in range(1, 11):
        side = _len_cell(
            "entry-side", _ZAB, k, unit_name=subunit.name, show_unit=True, qualifier="sa2"
        )
        value = scale_seed(seed, k)
        surf = _sar_cell(square_area(side.quantity), _SARZ, value)
        rows.append(TableRow((side, surf)))
    return TableSpec(text_id, tuple(rows))


def generate(text_id: str, directory=None) -> TableSpec:
    """Regenerate one table from its sides alone (plus the T4 schemes)."""
    if text_id in ("T1", "T3A"):
        return _generate_squares_tabular(text_id)
    if text_id == "T2":
        return _generate_t2()
    if text_id == "T3B":
        return _generate_t3b()
    if text_id == "T4":
        return _generate_t4(directory)
    if text_id == "T5A":
        return _generate_t5a()
    if text_id in _T5_SUBUNITS:
        return _generate_t5_subtable(text_id)
    raise CorpusError(f"unknown table id {text_id!r}")


def sum_column(text_id: str = "T2", directory=None) -> Quantity:
    """Exact sum of the generated surface column (the T2 total row)."""
    spec = generate(text_id, directory)
    total = Quantity.of(0, unit("sar"))
    for cell in spec.cells():
        if cell.role == "entry-surface":
            total = total + cell.quantity
    return total


# ---------------------------------------------------------------------------
# verification

_STRING_SKIP_FLAGS = ("defective", "reversed", "sic", "nonstandard")


@dataclass(frozen=True)
class DiffRow:
    text_id: str
    face: str
    column: str
    line: int
    role: str
    status: str  # exact | value-equal | mismatch | missing | extra | skipped
    corpus_text: str = ""
    generated_text: str = ""
    corpus_value: str = ""
    generated_value: str = ""


@dataclass(frozen=True)
class DiffReport:
    text_id: str
    level: str
    rows: tuple[DiffRow, ...]

    @property
    def counts(self) -> dict:
        out = {"exact": 0, "value-equal": 0, "mismatch": 0, "missing": 0, "extra": 0, "skipped": 0}
        for row in self.rows:
            out[row.status] += 1
        return out

    @property
    def passed(self) -> bool:
        c = self.counts
        return c["mismatch"] == 0 and c["missing"] == 0 and c["extra"] == 0

    def render(self, *, verbose: bool = False) -> str:
        c = self.counts
        lines = [
            f"{self.text_id} [{self.level}] compared {len(self.rows)} cells: "
            f"{c['exact']} exact, {c['value-equal']} value-equal, {c['skipped']} skipped, "
            f"{c['mismatch']} mismatch, {c['missing']} missing, {c['extra']} extra "
            f"-> {'PASS' if self.passed else 'FAIL'}"
        ]
        for row in self.rows:
            if row.status in ("mismatch", "missing", "extra") or verbose:
                lines.append(
                    f"  {row.face} {row.column} {row.line} {row.role}: {row.status}: "
                    f"corpus {row.corpus_text!r} (= {row.corpus_value}) vs "
                    f"generated {row.generated_text!r} (= {row.generated_value})"
                )
        return "\n".join(lines)


def _comparable(records: list[CorpusRecord]) -> list[CorpusRecord]:
    return [
        r
        for r in records
        if r.role in _VALUE_ROLES and (r.transliteration or not r.flagged("omitted-entry"))
    ]


def verify(text_id: str, records: list[CorpusRecord], level: str = "value",
           directory=None) -> DiffReport:
    """Diff the regenerated table against corpus records.

    value level compares evaluated quantities on every cell; string level
    compares normalized transliterations and skips rows whose notation is
    flagged defective, reversed, sic or nonstandard.
    """
    if level not in ("value", "string"):
        raise ValueError(f"unknown level {level!r}")
    spec = generate(text_id, directory)
    corpus_cells = _comparable([r for r in records if r.text_id == text_id])
    generated = list(spec.cells())
    rows: list[DiffRow] = []
    for i in range(max(len(corpus_cells), len(generated))):
        rec = corpus_cells[i] if i < len(corpus_cells) else None
        cell = generated[i] if i < len(generated) else None
        if rec is None:
            rows.append(
                DiffRow(text_id, "-", "-", 0, cell.role, "extra",
                        generated_text=cell.text,
                        generated_value=_fmt_quantity(cell.quantity))
            )
            continue
        if cell is None:
            rows.append(
                DiffRow(rec.text_id, rec.face, rec.column, rec.line, rec.role, "missing",
                        corpus_text=rec.transliteration,
                        corpus_value=_fmt_quantity(rec.value()))
            )
            continue
        if level == "string" and rec.flagged(*_STRING_SKIP_FLAGS):
            rows.append(
                DiffRow(rec.text_id, rec.face, rec.column, rec.line, rec.role, "skipped",
                        corpus_text=rec.transliteration, generated_text=cell.text)
            )
            continue
        corpus_q = rec.value()
        same_value = corpus_q == cell.quantity
        same_text = rec.normalized() == cell.text
        if level == "value":
            status = "mismatch" if not same_value else ("exact" if same_text else "value-equal")
        else:
            status = "exact" if same_text and same_value else "mismatch"
        rows.append(
            DiffRow(
                rec.text_id,
                rec.face,
                rec.column,
                rec.line,
                rec.role,
                status,
                corpus_text=rec.transliteration,
                generated_text=cell.text,
                corpus_value=_fmt_quantity(corpus_q),
                generated_value=_fmt_quantity(cell.quantity),
            )
        )
    return DiffReport(text_id, level, tuple(rows))


def _fmt_quantity(q: Quantity) -> str:
    base = "ninda" if q.dimension.value == "length" else "sar"
    return f"{q.magnitude} {base}"


def verify_all(level: str = "value", directory=None) -> list[DiffReport]:
    reports = []
    for text_id in TABLE_IDS:
        records = load_table(text_id, directory)
        reports.append(verify(text_id, records, level, directory))
    return reports
