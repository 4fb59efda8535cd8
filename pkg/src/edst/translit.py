"""Parsing and rendering of measurement expressions in ASCII transliteration.

The token grammar is ``count(sign)`` numerals, fraction signs, unit names
and the qualifiers sag / sa2 / ki, with ``la2`` opening a subtracted
segment and ``+`` an added-back one.  Editorial brackets are accepted and
recorded: ``[...]`` restored, ``<...>`` inserted, ``{...}`` erased or
intrusive, trailing ``#`` damaged.  Unicode input (szubscripts, wedges
like s-hacek) is normalized to the ASCII orthography.

Two notation habits of the tablets are part of the grammar rather than
errors: a fraction or short count written after its unit ("sar 1/3" for
"1/3 sar"), and the almost positional small-surface notation in which
units are partly implicit ("3(as) 2/3 5 gin2" reads 3 2/3 gin2 5 gin2-bi:
the first unnamed group is gin2 and each following bare count steps down
one sexagesimal unit).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MeasureParseError, UnknownUnitError
from .metrology import Dimension, MetrologicalContext, Unit, unit
from .numerals import (
    FRACTION_SIGNS,
    FractionSign,
    NumeralExpr,
    NumeralSystem,
    Tier,
    encode_canonical,
    render_numeral,
)
from .numerals import _match_sign_token  # shared token grammar
from .quantity import MINUS, PLUS, CompoundValue, Piece, Quantity, evaluate

_DAMAGE_MARKS = set("#*!¹⌈⌉⌊⌋⌜⌝⌞⌟⸢⸣")

_UNICODE_MAP = {
    "š": "sz",  # s with hacek
    "Š": "SZ",
    "’": "'",
    "ʾ": "'",
    "ʼ": "'",
    "⁄": "/",
    "½": "1/2",
    "⅓": "1/3",
    "⅔": "2/3",
    "¼": "1/4",
}

_LENIENT_UNIT_FIXES = {
    "ba-gin2-gin2": "gin2-ba-gin2",
    "gin2-TA-bi": "gin2-bi",
}

QUALIFIERS = ("sag", "sa2", "ki")


def ascii_token(text: str) -> str:
    """Normalize one raw token to the ASCII orthography."""
    out = []
    for ch in text:
        if ch in _UNICODE_MAP:
            out.append(_UNICODE_MAP[ch])
        else:
            out.append(unicodedata.normalize("NFKC", ch))
    return "".join(out)


@dataclass
class Token:
    text: str
    start: int
    restored: bool = False
    inserted: bool = False
    erased: bool = False
    damaged: bool = False


def tokenize(text: str) -> list[Token]:
    """Split on whitespace; brackets and damage marks set flags, the
    bracket characters themselves never reach the token text."""
    tokens: list[Token] = []
    cur: list[str] = []
    flags = {"restored": False, "inserted": False, "erased": False}
    damaged = False
    start = 0

    def close(end_pos: int) -> None:
        nonlocal cur, damaged
        if cur:
            tokens.append(
                Token(
                    ascii_token("".join(cur)),
                    start,
                    restored=flags["restored"],
                    inserted=flags["inserted"],
                    erased=flags["erased"],
                    damaged=damaged,
                )
            )
        cur = []
        damaged = False

    for i, ch in enumerate(text):
        if ch.isspace():
            close(i)
            continue
        if ch == "[":
            flags["restored"] = True
        elif ch == "]":
            if not cur:
                flags["restored"] = False
            else:
                close(i)
                flags["restored"] = False
        elif ch == "<":
            flags["inserted"] = True
        elif ch == ">":
            if not cur:
                flags["inserted"] = False
            else:
                close(i)
                flags["inserted"] = False
        elif ch == "{":
            flags["erased"] = True
        elif ch == "}":
            close(i)
            flags["erased"] = False
        elif ch in _DAMAGE_MARKS:
            damaged = True
        else:
            if not cur:
                start = i
            cur.append(ch)
    close(len(text))
    return [t for t in tokens if t.text]


@dataclass(frozen=True)
class MeasureExpression:
    value: CompoundValue
    context: MetrologicalContext
    qualifier: str | None = None
    qualifier_position: str = "after"
    raw: str = ""
    units_shown: bool = True
    gan2_shown: bool = False
    reversed_order: bool = False
    defective: bool = False
    restored: bool = False
    damaged: bool = False
    inserted: bool = False
    erased: bool = False
    notes: tuple[str, ...] = ()

    def quantity(self) -> Quantity:
        return evaluate(self.value)


@dataclass
class _Group:
    """One number group during assembly: count and/or fraction, maybe a unit."""

    count: Fraction = Fraction(0)
    count_expr: NumeralExpr | None = None
    fraction: FractionSign | None = None
    unit: Unit | None = None
    single_disz2: bool = False

    def empty(self) -> bool:
        return self.count == 0 and self.fraction is None

    def to_piece(self) -> Piece:
        return Piece(self.unit, self.count, self.fraction)


class _Parser:
    def __init__(self, text: str, ctx: MetrologicalContext, lenient: bool):
        self.text = text
        self.ctx = ctx
        self.lenient = lenient
        self.tokens = tokenize(text)
        self.notes: list[str] = []
        self.reversed_order = False
        self.defective = False
        self.units_shown = False
        self.gan2_shown = False
        self.qualifier: str | None = None
        self.qualifier_position = "after"
        self.segments: list[tuple[int, list[_Group]]] = [(PLUS, [])]
        self.dangling_units: list[Unit] = []

    # -- token classification -------------------------------------------

    def _unit_for(self, token: Token) -> Unit | None:
        name = token.text
        if self.lenient:
            name = _LENIENT_UNIT_FIXES.get(name, name)
            while name.endswith("-TA"):
                name = name[: -len("-TA")]
            name = _LENIENT_UNIT_FIXES.get(name, name)
        try:
            return unit(name)
        except UnknownUnitError:
            return None

    def _fraction_for(self, token: Token):
        text = token.text
        if text.startswith("igi-4"):
            return FRACTION_SIGNS["igi-4"]
        return FRACTION_SIGNS.get(text)

    def error(self, message: str, token: Token | None = None):
        offset = token.start if token is not None else 0
        raise MeasureParseError(message, offset, self.text)

    # -- run collection --------------------------------------------------

    def _collect_run(self, i: int):
        """Collect a numeral run starting at token i.

        Returns (count, expr, next_index, single_disz2) or None.  System S
        runs stop before a sign that would break the strictly decreasing
        order, so a reversed "unit count" pair only captures its own count.
        """
        tok = self.tokens[i]
        if tok.text.isdigit():
            n = int(tok.text)
            if n == 0:
                self.error("count 0 has no written form", tok)
            return Fraction(n), None, i + 1, False
        system = self.ctx.numeral_system
        parts: list[tuple] = []
        j = i
        last_value = None
        while j < len(self.tokens):
            t = self.tokens[j]
            if t.erased:
                j += 1
                continue
            if t.text in ("gal", "KID") and system is NumeralSystem.G:
                parts.append(("tier", t.text))
                j += 1
                continue
            matched = _match_sign_token(t.text, system)
            if matched is None:
                break
            sign, rep = matched
            if rep < 1:
                self.error(f"repetition 0 in {t.text!r}", t)
            if (
                system is NumeralSystem.S
                and last_value is not None
                and sign.value >= last_value
            ):
                break  # a larger sign starts a new run
            last_value = sign.value if system is NumeralSystem.S else None
            parts.append(("sign", sign, rep))
            j += 1
        if not parts:
            return None
        run, pending = [], []
        for part in parts:
            if part[0] == "tier":
                tier = Tier.GAL if part[1] == "gal" else Tier.KID
                if not pending and not self.lenient:
                    self.error(f"{part[1]} with no preceding sign group")
                run.extend((s.with_tier(tier), r) for s, r in pending)
                pending = []
            else:
                pending.append((part[1], part[2]))
        run.extend(pending)
        expr = NumeralExpr(tuple(run))
        if system is NumeralSystem.G and not self.lenient:
            expr.validate(system)
        single_disz2 = (
            len(run) == 1 and run[0][0].name == "disz" and run[0][1] == 2
        )
        return expr.decode(), expr, j, single_disz2

    # -- assembly ---------------------------------------------------------

    def parse(self) -> MeasureExpression:
        if not self.tokens:
            raise MeasureParseError("empty expression", 0, self.text)
        pending = _Group()
        i = 0
        saw_any_piece = False

        def groups() -> list[_Group]:
            return self.segments[-1][1]

        def close_pending():
            nonlocal pending
            if not pending.empty():
                groups().append(pending)
            pending = _Group()

        while i < len(self.tokens):
            tok = self.tokens[i]
            if tok.erased:
                self.defective = True
                i += 1
                continue
            text = tok.text
            if text in ("?", "[?]", "x"):
                if not self.lenient:
                    self.error(f"unknown token {text!r}", tok)
                i += 1
                continue
            if text == "la2":
                if not pending.empty() and pending.unit is None:
                    # numeral-level subtraction: 1(u) la2 1(as)
                    run = (
                        self._collect_run(i + 1)
                        if i + 1 < len(self.tokens)
                        else None
                    )
                    if run is None:
                        self.error("la2 must be followed by a numeral", tok)
                    count, expr, i, _ = run
                    if pending.count_expr is None:
                        self.error("la2 after a bare decimal count", tok)
                    whole = NumeralExpr(
                        pending.count_expr.positive,
                        expr.positive if expr is not None else (),
                    )
                    pending.count = whole.decode()
                    pending.count_expr = whole
                    if pending.count <= 0 and not self.lenient:
                        self.error("numeral is not positive", tok)
                    continue
                close_pending()
                if not groups() and len(self.segments) == 1 and not self.lenient:
                    self.error("la2 before any measurement piece", tok)
                self.segments.append((MINUS, []))
                i += 1
                continue
            if text == "+":
                close_pending()
                self.segments.append((PLUS, []))
                i += 1
                continue
            if text in QUALIFIERS:
                if self.qualifier is not None and not self.lenient:
                    self.error(f"second qualifier {text!r}", tok)
                if self.qualifier is None:
                    self.qualifier = text
                    self.qualifier_position = (
                        "before" if not saw_any_piece and pending.empty() else "after"
                    )
                i += 1
                continue

            run = self._collect_run(i)
            if run is not None:
                count, expr, j, disz2 = run
                if not pending.empty():
                    close_pending()
                pending.count = count
                pending.count_expr = expr
                pending.single_disz2 = disz2
                i = j
                continue

            frac = self._fraction_for(tok)
            if frac is not None:
                if pending.empty():
                    attached = self._attach_trailing_fraction(frac, i)
                    if attached:
                        i += 1
                        continue
                    pending.fraction = frac
                elif pending.fraction is None:
                    pending.fraction = frac
                else:
                    close_pending()
                    pending.fraction = frac
                i += 1
                continue

            u = self._unit_for(tok)
            if u is not None:
                i = self._handle_unit(u, tok, pending, i, close_pending)
                if self.segments[-1][1] and self.segments[-1][1][-1].unit is not None:
                    saw_any_piece = True
                continue

            if self.lenient:
                self.notes.append(f"skipped token {text!r}")
                i += 1
                continue
            self.error(f"unknown token {text!r}", tok)

        close_pending()
        return self._finish()

    def _attach_trailing_fraction(self, frac, i: int) -> bool:
        """A fraction written after its unit ("sar 1/3"); attach it to the
        immediately preceding closed piece unless a unit token follows."""
        groups = self.segments[-1][1]
        if not groups or groups[-1].unit is None or groups[-1].fraction is not None:
            return False
        nxt = self.tokens[i + 1] if i + 1 < len(self.tokens) else None
        if nxt is not None and self._unit_for(nxt) is not None:
            return False  # the fraction opens a new piece of that unit
        target = groups[-1]
        if frac.label not in self.ctx.allowed_fractions(target.unit):
            return False
        target.fraction = frac
        self.reversed_order = True
        return True

    def _handle_unit(self, u: Unit, tok: Token, pending: _Group, i: int, close_pending) -> int:
        ctx = self.ctx
        if u.dimension is not ctx.dimension:
            if self.lenient:
                self.notes.append(f"ignored {u.name!r}: wrong dimension for {ctx.id}")
                return i + 1
            self.error(f"unit {u.name!r} does not measure {ctx.dimension.value}s", tok)
        if not ctx.has_unit(u):
            if self.lenient:
                self.notes.append(f"ignored {u.name!r}: not part of {ctx.id}")
                return i + 1
            self.error(f"unit {u.name!r} is not part of {ctx.id}", tok)
        self.units_shown = True
        if u.name == "GAN2":
            self.gan2_shown = True
        if pending.empty():
            # unit written before its number: "sar 2(as)" or "gin2 1/3"
            nxt_i = i + 1
            if nxt_i < len(self.tokens):
                nxt = self.tokens[nxt_i]
                frac = self._fraction_for(nxt)
                if frac is not None and frac.label in ctx.allowed_fractions(u):
                    g = _Group(fraction=frac, unit=u)
                    self.segments[-1][1].append(g)
                    self.reversed_order = True
                    return nxt_i + 1
                run = self._collect_run(nxt_i) if not nxt.text.isdigit() else None
                if run is not None:
                    count, expr, j, _ = run
                    g = _Group(count=count, count_expr=expr, unit=u)
                    self.segments[-1][1].append(g)
                    self.reversed_order = True
                    return j
            self.dangling_units.append(u)
            return i + 1
        if (
            ctx.twothirds_disz
            and pending.single_disz2
            and pending.fraction is None
            and "2/3" in ctx.allowed_fractions(u)
        ):
            pending.count = Fraction(0)
            pending.count_expr = None
            pending.fraction = FRACTION_SIGNS["2/3"]
            self.notes.append("count sign 2(disz) read as the fraction 2/3")
        pending.unit = u
        close_pending()
        return i + 1

    # -- unit resolution ---------------------------------------------------

    def _finish(self) -> MeasureExpression:
        ctx = self.ctx
        for _, groups in self.segments:
            self._resolve_units(groups)
        if self.dangling_units:
            assigned = {
                g.unit.name for _, gs in self.segments for g in gs if g.unit is not None
            }
            for u in self.dangling_units:
                if u.name not in assigned:
                    if self.lenient:
                        self.notes.append(f"unit {u.name!r} labels no number group")
                    else:
                        self.error(f"unit {u.name!r} labels no number group")
        segs = []
        for sign, groups in self.segments:
            pieces = tuple(g.to_piece() for g in groups)
            if pieces:
                segs.append((sign, pieces))
        if not segs:
            raise MeasureParseError("expression carries no measurement", 0, self.text)
        value = CompoundValue(tuple(segs))
        if not self.lenient:
            value.validate(ctx)
            if value.magnitude() < 0:
                raise MeasureParseError("value evaluates negative", 0, self.text)
        toks = self.tokens
        return MeasureExpression(
            value=value,
            context=ctx,
            qualifier=self.qualifier,
            qualifier_position=self.qualifier_position,
            raw=self.text,
            units_shown=self.units_shown,
            gan2_shown=self.gan2_shown,
            reversed_order=self.reversed_order,
            defective=self.defective,
            restored=any(t.restored for t in toks),
            damaged=any(t.damaged for t in toks),
            inserted=any(t.inserted for t in toks),
            erased=any(t.erased for t in toks),
            notes=tuple(self.notes),
        )

    def _resolve_units(self, groups: list[_Group]) -> None:
        ctx = self.ctx
        unitless = [g for g in groups if g.unit is None]
        if not unitless and not self.dangling_units:
            return
        if ctx.dimension is Dimension.LENGTH:
            for g in unitless:
                g.unit = ctx.base_unit
            return
        if ctx.numeral_system is NumeralSystem.G:
            for g in unitless:
                g.unit = unit("GAN2")
            return
        if not unitless:
            return
        if ctx.id == "CTX-SAR-ADAB":
            # only igi-4 goes unitless there, and it always means gin2
            for g in unitless:
                if g.fraction is not None and g.fraction.label == "igi-4":
                    g.unit = unit("gin2")
                elif self.lenient:
                    g.unit = ctx.base_unit
                    self.notes.append("bare number read against the sar unit")
                else:
                    self.error("number without a unit")
            return
        if not ctx.positional_subunits and not self.lenient:
            self.error("number without a unit")
        # positional small-surface notation
        self.defective = True
        gin2 = unit("gin2")
        prev: Unit | None = None
        for g in groups:
            if g.unit is not None and prev is not None and g.unit.ratio >= prev.ratio:
                # the explicit label belongs to an earlier group; re-derive
                self.dangling_units.append(g.unit)
                g.unit = None
            if g.unit is None:
                if prev is None:
                    g.unit = gin2
                else:
                    smaller = ctx.next_smaller(prev)
                    if smaller is None:
                        self.error("ran out of sub-units resolving implicit units")
                    g.unit = smaller
            prev = g.unit


def parse_measure(
    text: str, ctx: MetrologicalContext, *, lenient: bool = False
) -> MeasureExpression:
    """Parse one transliterated measurement in the given context."""
    return _Parser(text, ctx, lenient).parse()


# ---------------------------------------------------------------------------
# rendering


_PLAIN_UNIT = {"sa10-ma-na": "samana"}

_UNICODE_TOKEN = {
    "gesz2": "geš₂",
    "gesz'u": "geš'u",
    "szar2": "šar₂",
    "szar'u": "šar'u",
    "bur3": "bur₃",
    "bur'u": "bur'u",
    "esze3": "eše₃",
    "as": "aš",
    "disz": "diš",
    "la2": "la₂",
    "sa2": "sa₂",
    "GAN2": "GAN₂",
    "gin2": "gin₂",
    "gin2-bi": "gin₂-bi",
    "gin2-ba-gin2": "gin₂-ba-gin₂",
    "sa10-ma-na": "sa₁₀-ma-na",
    "sze": "še",
    "kusz3": "kuš₃",
    "kusz3-numun": "kuš₃-numun",
    "ur2-hal-la": "ur₂-hal-la",
    "nig2-kas7": "nig₂-kas₇",
    "gisz-bad": "giš-bad",
    "szu-bad": "šu-bad",
}


def _unicodize(text: str) -> str:
    out = []
    for token in text.split(" "):
        if token in _UNICODE_TOKEN:
            out.append(_UNICODE_TOKEN[token])
            continue
        if "(" in token and token.endswith(")"):
            head, _, name = token[:-1].partition("(")
            out.append(f"{head}({_UNICODE_TOKEN.get(name, name)})")
            continue
        out.append(token)
    return " ".join(out)


def _format_count(n: Fraction) -> str:
    return str(n.numerator) if n.denominator == 1 else f"{n.numerator}/{n.denominator}"


def render_value(
    value: CompoundValue,
    ctx: MetrologicalContext,
    *,
    style: str = "translit",
    show_units: bool = True,
    show_gan2: bool = False,
    unicode: bool = False,
) -> str:
    """Deterministic canonical text for a compound value.

    ``translit`` writes counts as numerals ("1(u) 5(disz) gin2");
    ``plain`` writes them as decimal numbers ("15 gin2", samana for
    sa10-ma-na), the form used in running translations.
    """
    parts: list[str] = []
    prev_last_unit: Unit | None = None
    for index, (sign, pieces) in enumerate(value.segments):
        if index:
            parts.append("la2" if sign == MINUS else "+")
        for p_index, piece in enumerate(pieces):
            parts.extend(
                _render_piece(
                    piece,
                    ctx,
                    style=style,
                    show_units=show_units,
                    show_gan2=show_gan2,
                    omit_unit=(
                        sign == MINUS
                        and len(pieces) == 1
                        and p_index == 0
                        and piece.count == 0
                        and piece.fraction is not None
                        and piece.fraction.label == "igi-4"
                        and prev_last_unit is not None
                        and prev_last_unit.name == piece.unit.name
                    ),
                )
            )
        if pieces:
            prev_last_unit = pieces[-1].unit
    text = " ".join(parts)
    return _unicodize(text) if unicode else text


def _render_piece(
    piece: Piece,
    ctx: MetrologicalContext,
    *,
    style: str,
    show_units: bool,
    show_gan2: bool,
    omit_unit: bool,
) -> list[str]:
    parts: list[str] = []
    if piece.unit.name == "GAN2":
        expr = encode_canonical(piece.count, NumeralSystem.G)
        if style == "plain":
            parts.append(f"{_format_count(piece.count)} iku")
        else:
            parts.append(render_numeral(expr))
            if show_gan2:
                parts.append("GAN2")
        return parts
    if piece.count:
        if style == "plain":
            parts.append(_format_count(piece.count))
        else:
            expr = encode_canonical(
                piece.count,
                NumeralSystem.S,
                subtractive_nine=ctx.subtractive_nine,
                ones=ctx.ones_sign(piece.unit),
            )
            parts.append(render_numeral(expr))
    if piece.fraction is not None:
        parts.append(piece.fraction.label)
    if not omit_unit:
        hide_base = not show_units and piece.unit.name == ctx.base_unit.name
        if not hide_base:
            name = piece.unit.name
            if style == "plain":
                name = _PLAIN_UNIT.get(name, name)
            parts.append(name)
    return parts


def render_measure(
    expr: MeasureExpression,
    *,
    style: str = "translit",
    unicode: bool = False,
) -> str:
    """Re-render a parsed expression canonically, keeping its qualifier
    and whether unit names were written out."""
    body = render_value(
        expr.value,
        expr.context,
        style=style,
        show_units=expr.units_shown,
        show_gan2=expr.gan2_shown,
        unicode=unicode,
    )
    if expr.qualifier is None:
        return body
    qual = _UNICODE_TOKEN.get(expr.qualifier, expr.qualifier) if unicode else expr.qualifier
    if expr.qualifier_position == "before":
        return f"{qual} {body}"
    return f"{body} {qual}"


def normalize(text: str, ctx: MetrologicalContext, *, lenient: bool = False) -> str:
    """Canonical spelling of a transliterated measurement; idempotent."""
    return render_measure(parse_measure(text, ctx, lenient=lenient))
