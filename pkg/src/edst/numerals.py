"""Additive numeral systems for counts (system S) and field surfaces (system G).

System S counts in ones with signs valued 1, 10, 60, 600, 3600, 36000.
System G counts in iku with signs from a quarter-iku up to 10800 iku; the
words ``gal`` and ``KID`` after a sign group multiply it by 60 and 3600.
Both systems are purely additive (a sign is repeated as often as needed),
optionally minus a trailing run introduced by ``la2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import EncodingError, MalformedNumeralError


class NumeralSystem(Enum):
    S = "S"
    G = "G"


class Tier(Enum):
    """Multiplier words attached to the largest G signs."""

    PLAIN = 1
    GAL = 60
    KID = 3600


@dataclass(frozen=True)
class NumeralSign:
    system: NumeralSystem
    name: str
    value: Fraction
    tier: Tier = Tier.PLAIN

    @property
    def effective_value(self) -> Fraction:
        return self.value * self.tier.value

    def with_tier(self, tier: Tier) -> "NumeralSign":
        return NumeralSign(self.system, self.name, self.value, tier)


@dataclass(frozen=True)
class FractionSign:
    label: str
    value: Fraction


FRACTION_SIGNS = {
    "1/3": FractionSign("1/3", Fraction(1, 3)),
    "1/2": FractionSign("1/2", Fraction(1, 2)),
    "2/3": FractionSign("2/3", Fraction(2, 3)),
    "igi-4": FractionSign("igi-4", Fraction(1, 4)),
}


def _sign(system: NumeralSystem, name: str, value) -> NumeralSign:
    return NumeralSign(system, name, Fraction(value))


S_SIGNS = {
    s.name: s
    for s in (
        _sign(NumeralSystem.S, "szar'u", 36000),
        _sign(NumeralSystem.S, "szar2", 3600),
        _sign(NumeralSystem.S, "gesz'u", 600),
        _sign(NumeralSystem.S, "gesz2", 60),
        _sign(NumeralSystem.S, "u", 10),
        _sign(NumeralSystem.S, "as", 1),
        _sign(NumeralSystem.S, "disz", 1),
    )
}

G_SIGNS = {
    s.name: s
    for s in (
        _sign(NumeralSystem.G, "szar'u", 10800),
        _sign(NumeralSystem.G, "szar2", 1080),
        _sign(NumeralSystem.G, "bur'u", 180),
        _sign(NumeralSystem.G, "bur3", 18),
        _sign(NumeralSystem.G, "esze3", 6),
        _sign(NumeralSystem.G, "iku", 1),
        _sign(NumeralSystem.G, "ubu", Fraction(1, 2)),
        _sign(NumeralSystem.G, "quarter-iku", Fraction(1, 4)),
    )
}

_SIGN_ALIASES = {
    "asz": "as",
    "as2": "as",
    "dis": "disz",
    "1/4-iku": "quarter-iku",
}

# Signs that may carry a gal/KID multiplier; anything else is unattested.
_TIERABLE = ("szar2", "szar'u")

# Greedy encoding ladder for system G, largest effective value first.
G_LADDER = tuple(
    G_SIGNS[name].with_tier(tier)
    for tier, names in (
        (Tier.KID, ("szar'u", "szar2")),
        (Tier.GAL, ("szar'u", "szar2")),
        (Tier.PLAIN, ("szar'u", "szar2", "bur'u", "bur3", "esze3", "iku", "ubu", "quarter-iku")),
    )
    for name in names
)

S_LADDER = tuple(S_SIGNS[n] for n in ("szar'u", "szar2", "gesz'u", "gesz2", "u", "as"))


def signs_for(system: NumeralSystem) -> dict:
    return S_SIGNS if system is NumeralSystem.S else G_SIGNS


def lookup_sign(system: NumeralSystem, name: str) -> NumeralSign | None:
    name = _SIGN_ALIASES.get(name, name)
    return signs_for(system).get(name)


@dataclass(frozen=True)
class NumeralExpr:
    """An additive run of (sign, repetition) pairs, minus an optional run."""

    positive: tuple[tuple[NumeralSign, int], ...]
    subtrahend: tuple[tuple[NumeralSign, int], ...] = ()

    def decode(self) -> Fraction:
        total = _run_value(self.positive) - _run_value(self.subtrahend)
        return total

    def validate(self, system: NumeralSystem) -> None:
        if not self.positive:
            raise MalformedNumeralError("empty numeral")
        for run in (self.positive, self.subtrahend):
            last = None
            for sign, rep in run:
                if sign.system is not system:
                    raise MalformedNumeralError(
                        f"sign {sign.name!r} does not belong to system {system.value}"
                    )
                if rep < 1:
                    raise MalformedNumeralError("sign repetition must be at least 1")
                if sign.tier is not Tier.PLAIN and sign.name not in _TIERABLE:
                    raise MalformedNumeralError(
                        f"{sign.tier.name.lower()} cannot qualify {sign.name!r}"
                    )
                if last is not None and sign.effective_value >= last:
                    raise MalformedNumeralError("signs must strictly decrease in value")
                last = sign.effective_value
        if self.decode() <= 0:
            raise MalformedNumeralError("numeral value must be positive")


def _run_value(run) -> Fraction:
    return sum((sign.effective_value * rep for sign, rep in run), Fraction(0))


def decode_numeral(expr: NumeralExpr, system: NumeralSystem) -> Fraction:
    """Value of a well-formed expression, in ones (S) or iku (G)."""
    expr.validate(system)
    return expr.decode()


def encode_canonical(
    n,
    system: NumeralSystem,
    *,
    subtractive_nine: bool = False,
    ones: str = "as",
) -> NumeralExpr:
    """Greedy largest-sign-first encoding of a positive count.

    ``ones`` picks the unit sign used for system S (``as`` or ``disz``);
    ``subtractive_nine`` rewrites counts ending in 9 as ``(n+1) la2 1``.
    """
    n = Fraction(n)
    if n <= 0:
        raise EncodingError("no numeral exists for zero or negative counts")
    if system is NumeralSystem.S:
        if n.denominator != 1:
            raise EncodingError(f"system S encodes whole counts only, got {n}")
        if subtractive_nine and n % 10 == 9:
            positive = _encode_s_runs(n + 1, ones)
            return NumeralExpr(positive, ((S_SIGNS[ones], 1),))
        return NumeralExpr(_encode_s_runs(n, ones))
    if n.denominator not in (1, 2, 4):
        raise EncodingError(f"system G encodes quarter-iku multiples only, got {n}")
    run = []
    rem = n
    for sign in G_LADDER:
        rep = int(rem // sign.effective_value)
        if rep:
            run.append((sign, rep))
            rem -= sign.effective_value * rep
    if rem:
        raise EncodingError(f"cannot encode remainder {rem} iku")
    return NumeralExpr(tuple(run))


def _encode_s_runs(n: Fraction, ones: str) -> tuple:
    run = []
    rem = int(n)
    for sign in S_LADDER:
        if sign.name == "as" and ones != "as":
            sign = S_SIGNS[ones]
        rep = rem // int(sign.value)
        if rep:
            run.append((sign, rep))
            rem -= int(sign.value) * rep
    return tuple(run)


def _match_sign_token(token: str, system: NumeralSystem):
    """Parse one ``count(sign)`` token; returns (sign, repetition) or None."""
    if system is NumeralSystem.G:
        if token == "1/2(iku)" or token == "1(ubu)":
            return G_SIGNS["ubu"], 1
        if token == "1/4(iku)":
            return G_SIGNS["quarter-iku"], 1
    if "(" not in token or not token.endswith(")"):
        return None
    head, _, name = token[:-1].partition("(")
    if not head.isdigit():
        return None
    sign = lookup_sign(system, name)
    if sign is None:
        return None
    return sign, int(head)


def parse_numeral(text: str, system: NumeralSystem, *, lenient: bool = False) -> NumeralExpr:
    """Parse a whitespace-separated numeral in the ``count(sign)`` grammar."""
    tokens = text.split()
    if not tokens:
        raise MalformedNumeralError("empty numeral")
    offset = 0
    runs: list[list] = [[]]
    pending: list = []  # signs awaiting a tier word (G only)
    for token in tokens:
        pos = text.index(token, offset)
        offset = pos + len(token)
        if token == "la2":
            if len(runs) > 1:
                raise MalformedNumeralError("more than one la2 in a numeral")
            runs[0].extend(pending)
            pending = []
            runs.append([])
            continue
        if token in ("gal", "KID") and system is NumeralSystem.G:
            tier = Tier.GAL if token == "gal" else Tier.KID
            if not pending:
                raise MalformedNumeralError(f"{token} with no preceding sign group")
            runs[-1].extend((sign.with_tier(tier), rep) for sign, rep in pending)
            pending = []
            continue
        matched = _match_sign_token(token, system)
        if matched is None:
            raise MalformedNumeralError(
                f"unknown {system.value}-system sign token {token!r} at offset {pos}"
            )
        sign, rep = matched
        if rep < 1:
            raise MalformedNumeralError(f"repetition 0 in token {token!r} at offset {pos}")
        if system is NumeralSystem.G:
            pending.append((sign, rep))
        else:
            runs[-1].append((sign, rep))
    runs[-1].extend(pending)
    expr = NumeralExpr(tuple(runs[0]), tuple(runs[1]) if len(runs) > 1 else ())
    if not lenient:
        expr.validate(system)
    return expr


def render_numeral(expr: NumeralExpr) -> str:
    """Canonical token text; tier words follow the group they qualify."""
    parts = _render_run(expr.positive)
    if expr.subtrahend:
        parts.append("la2")
        parts.extend(_render_run(expr.subtrahend))
    return " ".join(parts)


def _render_run(run) -> list[str]:
    parts: list[str] = []
    open_tier: Tier | None = None
    for sign, rep in run:
        if open_tier is not None and sign.tier is not open_tier:
            parts.append("KID" if open_tier is Tier.KID else "gal")
            open_tier = None
        if sign.tier is not Tier.PLAIN:
            open_tier = sign.tier
        parts.append(_sign_token(sign, rep))
    if open_tier is not None:
        parts.append("KID" if open_tier is Tier.KID else "gal")
    return parts


def _sign_token(sign: NumeralSign, rep: int) -> str:
    if sign.name == "ubu" and rep == 1:
        return "1/2(iku)"
    if sign.name == "quarter-iku":
        return "1/4(iku)" if rep == 1 else f"{rep}(1/4-iku)"
    return f"{rep}({sign.name})"
