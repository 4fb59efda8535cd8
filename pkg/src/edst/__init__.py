"""Exact-arithmetic toolkit for Early Dynastic Sumerian length and
surface metrology: numeral systems S and G, unit contexts, CDLI-style
transliteration, surface-computation procedures, and the embedded tablet
corpus with its verifier."""

from .metrology import (
    ATTESTED_BRIDGES,
    CONTEXTS,
    Dimension,
    MetrologicalContext,
    Unit,
    bridge_surface,
    context_lookup,
    unit,
    unit_ratio,
)
from .numerals import (
    FRACTION_SIGNS,
    NumeralExpr,
    NumeralSystem,
    decode_numeral,
    encode_canonical,
    parse_numeral,
    render_numeral,
)
from .procedures import (
    BorderStep,
    CutPasteScheme,
    SexagesimalSeed,
    bordering_sequence,
    cutpaste_derive,
    fraction_of_sar,
    rect_area,
    scale_seed,
    seed_square,
    square_area,
)
from .quantity import CompoundValue, Piece, Quantity, decompose_canonical, evaluate
from .translit import MeasureExpression, normalize, parse_measure, render_measure, render_value
from .corpus import (
    CorpusRecord,
    DiffReport,
    TableSpec,
    generate,
    load,
    load_table,
    sum_column,
    verify,
    verify_all,
)

__version__ = "0.1.0"
