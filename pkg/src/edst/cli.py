"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or context error,
3 verification failure.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import corpus as corpus_mod
from .errors import EdstError
from .metrology import CONTEXTS, Dimension, context_lookup, unit_ratio
from .numerals import NumeralSystem
from .procedures import (
    bordering_sequence,
    cutpaste_derive,
    fraction_of_sar,
    rect_area,
    scale_seed,
    seed_square,
    square_area,
)
from .quantity import CompoundValue, Piece, Quantity, decompose_canonical
from .translit import parse_measure, render_measure, render_value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edst",
        description="Early Dynastic surface-table toolkit: exact metrology, "
        "transliteration, table generation and corpus verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("units", help="list the units and ratios of a context")
    p.add_argument("ctx")

    p = sub.add_parser("eval", help="evaluate a transliterated measurement")
    p.add_argument("expr")
    p.add_argument("--ctx", required=True)
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("convert", help="re-express a value in another context")
    p.add_argument("expr")
    p.add_argument("--ctx", required=True, help="context the expression is written in")
    p.add_argument("--to", required=True, help="context to decompose into")
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("square", help="surface of a square from its side")
    p.add_argument("side")
    p.add_argument("--len-ctx", required=True)
    p.add_argument("--surf-ctx", required=True)
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("rect", help="surface of a rectangle from front and ground")
    p.add_argument("front")
    p.add_argument("ground")
    p.add_argument("--len-ctx", required=True)
    p.add_argument("--surf-ctx", required=True)
    p.add_argument("--unicode", action="store_true")

    p = sub.add_parser("frac", help="sexagesimal form of a fraction of one sar")
    p.add_argument("fraction", help="p/q")

    p = sub.add_parser("table", help="print a regenerated table")
    p.add_argument("id", choices=corpus_mod.TABLE_IDS)
    p.add_argument("--format", choices=("translit", "tsv"), default="translit")
    p.add_argument("--corpus", default=None)

    p = sub.add_parser("derive", help="show how one table row is built")
    p.add_argument("id", choices=corpus_mod.TABLE_IDS)
    p.add_argument("row", type=int, help="1-based row number")
    p.add_argument("--corpus", default=None)

    p = sub.add_parser("verify", help="diff regenerated tables against the corpus")
    p.add_argument("id", help="a table id or 'all'")
    p.add_argument("--level", choices=("value", "string"), default="value")
    p.add_argument("--corpus", default=None)
    p.add_argument("--verbose", action="store_true")
    return parser


def _surface_text(q: Quantity, ctx_id: str, unicode: bool) -> str:
    ctx = context_lookup(ctx_id)
    if ctx.numeral_system is NumeralSystem.G:
        from .metrology import unit

        cv = CompoundValue.additive([Piece(unit("GAN2"), q.magnitude / 100)])
        return render_value(cv, ctx, unicode=unicode)
    cv = decompose_canonical(q, ctx)
    return render_value(cv, ctx, unicode=unicode)


def _cmd_units(args) -> int:
    ctx = context_lookup(args.ctx)
    base = ctx.base_unit
    print(f"{ctx.id}: {ctx.dimension.value}, numerals {ctx.numeral_system.value}")
    for u in ctx.units:
        per_base = unit_ratio(base, u)
        fractions = ctx.allowed_fractions(u)
        extra = f"  fractions: {', '.join(fractions)}" if fractions else ""
        print(f"  {u.name:<14} = {u.ratio} {base.name}  ({per_base} per {base.name}){extra}")
    if ctx.surface_partner:
        print(f"  surface partner: {ctx.surface_partner}")
    return 0


def _cmd_eval(args) -> int:
    ctx = context_lookup(args.ctx)
    expr = parse_measure(args.expr, ctx)
    q = expr.quantity()
    print(f"normalized: {render_measure(expr, unicode=args.unicode)}")
    print(f"canonical:  {_surface_text(q, ctx.id, args.unicode)}"
          if ctx.dimension is Dimension.SURFACE
          else f"canonical:  {render_value(decompose_canonical(q, ctx), ctx, unicode=args.unicode)}")
    base = "ninda" if ctx.dimension is Dimension.LENGTH else "sar"
    print(f"value:      {q.magnitude} {base}")
    return 0


def _cmd_convert(args) -> int:
    src = context_lookup(args.ctx)
    dst = context_lookup(args.to)
    q = parse_measure(args.expr, src).quantity()
    if src.dimension is not dst.dimension:
        raise EdstError(f"{src.id} and {dst.id} measure different dimensions")
    if dst.dimension is Dimension.SURFACE:
        print(_surface_text(q, dst.id, args.unicode))
    else:
        print(render_value(decompose_canonical(q, dst), dst, unicode=args.unicode))
    return 0


def _cmd_square(args) -> int:
    len_ctx = context_lookup(args.len_ctx)
    side = parse_measure(args.side, len_ctx).quantity()
    print(_surface_text(square_area(side), args.surf_ctx, args.unicode))
    return 0


def _cmd_rect(args) -> int:
    len_ctx = context_lookup(args.len_ctx)
    front = parse_measure(args.front, len_ctx).quantity()
    ground = parse_measure(args.ground, len_ctx).quantity()
    print(_surface_text(rect_area(front, ground), args.surf_ctx, args.unicode))
    return 0


def _cmd_frac(args) -> int:
    p_text, sep, q_text = args.fraction.partition("/")
    if not sep or not p_text.isdigit() or not q_text.isdigit():
        raise EdstError(f"expected p/q, got {args.fraction!r}")
    ctx = context_lookup("CTX-SAR-ZAB")
    value = fraction_of_sar(int(p_text), int(q_text))
    print(render_value(value, ctx, style="plain"))
    return 0


def _cmd_table(args) -> int:
    spec = corpus_mod.generate(args.id, args.corpus)
    if args.format == "translit":
        for row in spec.rows:
            if not row.cells:
                print(f"# {row.note}")
                continue
            print("\t".join(cell.text for cell in row.cells))
        return 0
    n = 0
    for row in spec.rows:
        for cell in row.cells:
            n += 1
            print(
                "\t".join(
                    (spec.text_id, "-", "-", str(n), cell.role, cell.context_id,
                     cell.text, "", "", row.note)
                )
            )
    return 0


def _cmd_derive(args) -> int:
    text_id = args.id
    spec = corpus_mod.generate(text_id, args.corpus)
    rows = [r for r in spec.rows if r.cells]
    if not 1 <= args.row <= len(rows):
        raise EdstError(f"{text_id} has rows 1..{len(rows)}")
    row = rows[args.row - 1]
    side_cell = row.cells[0]
    surf_cell = row.cells[-1]
    print(f"{text_id} row {args.row}: {side_cell.text}  ->  {surf_cell.text}")
    if text_id == "T5A":
        s = side_cell.quantity.magnitude
        print(f"  direct: {s} x {s} = {s * s} sar")
        return 0
    if text_id in ("T1", "T3A"):
        return _derive_square(side_cell.quantity, surf_cell)
    if text_id in ("T2", "T3B"):
        front, ground = row.cells[0].quantity, row.cells[1].quantity
        area = rect_area(front, ground)
        print(f"  front {front.magnitude} ninda x ground {ground.magnitude} ninda "
              f"= {area.magnitude} sar = {area.magnitude / 100} iku")
        return 0
    if text_id == "T4":
        return _derive_cutpaste(args, side_cell.quantity)
    seed_unit = corpus_mod._T5_SUBUNITS[text_id]
    return _derive_seed(seed_unit, args.row)


def _derive_square(side: Quantity, surf_cell) -> int:
    s = side.magnitude
    if s < 10:
        print("  seed row: the square on half the 10-ninda band, a quarter iku")
        print(f"  direct: {s} x {s} = {s * s} sar")
        return 0
    band_mag = Fraction(10) if s <= 50 else Fraction(60)
    if s % band_mag:
        print(f"  direct: {s} x {s} = {s * s} sar")
        return 0
    from .metrology import unit as _unit

    band = Quantity.of(band_mag, _unit("ninda-DU"))
    sides = [Quantity.of(band_mag * k, _unit("ninda-DU")) for k in range(1, int(s // band_mag) + 1)]
    steps = bordering_sequence(sides, band)
    for step in steps:
        pieces = ", ".join(
            f"{p.label} {p.width.magnitude}x{p.length.magnitude} ninda = "
            f"{_iku_term(p.area)} ({p.area.magnitude} sar)"
            for p in step.pieces
        )
        print(f"  side {step.side.magnitude} ninda: add {pieces}; "
              f"total {_iku_term(step.cumulative)} ({step.cumulative.magnitude} sar)")
    return 0


def _iku_term(q: Quantity) -> str:
    return _surface_text(q, "CTX-G", False)


def _cmd_verify(args) -> int:
    ids = corpus_mod.TABLE_IDS if args.id == "all" else (args.id,)
    for text_id in ids:
        if text_id not in corpus_mod.TABLE_IDS:
            raise EdstError(f"unknown table id {text_id!r}")
    failed = False
    for text_id in ids:
        records = corpus_mod.load_table(text_id, args.corpus)
        report = corpus_mod.verify(text_id, records, args.level, args.corpus)
        print(report.render(verbose=args.verbose))
        failed = failed or not report.passed
    return 3 if failed else 0


def _derive_cutpaste(args, side: Quantity) -> int:
    schemes = corpus_mod.t4_schemes(args.corpus)
    scheme_rec = schemes[args.row - 1]
    scheme = corpus_mod.parse_scheme(scheme_rec.transliteration, side)
    ctx = context_lookup("CTX-SAR-ADAB")
    for sign, w, h in scheme.pieces:
        area = Quantity(Dimension.SURFACE, w * h * Fraction(1, 144))
        word = "paste" if sign > 0 else "cut"
        print(f"  {word} {w} x {h} kusz3 = "
              f"{render_value(decompose_canonical(area, ctx), ctx, style='plain')} "
              f"({area.magnitude} sar)")
    value = cutpaste_derive(side, scheme)
    print(f"  written: {render_value(value, ctx)}")
    print(f"  plain:   {render_value(value, ctx, style='plain')}")
    return 0


def _derive_seed(unit_name: str, k: int) -> int:
    from .metrology import unit as _unit

    seed = seed_square(_unit(unit_name))
    ctx = context_lookup("CTX-SAR-ZAB")
    print(f"  seed: square on 1 {unit_name} = "
          f"{render_value(seed.seed_surface, ctx)} ({seed.quantity.magnitude} sar)")
    value = scale_seed(seed, k)
    print(f"  {k}x{k} = {k * k} additions of the seed -> {render_value(value, ctx)}")
    return 0


_HANDLERS = {
    "units": _cmd_units,
    "eval": _cmd_eval,
    "convert": _cmd_convert,
    "square": _cmd_square,
    "rect": _cmd_rect,
    "frac": _cmd_frac,
    "table": _cmd_table,
    "derive": _cmd_derive,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return _HANDLERS[args.command](args)
    except EdstError as exc:
        print(f"edst: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"edst: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
