"""Multiplicative formulas: signed atoms, units, tensor and par.

Text syntax: atoms `X+` / `X-`, units `1` / `bot`, `(F * G)` for tensor,
`(F | G)` for par.
"""

from __future__ import annotations

from dataclasses import dataclass


class FormulaError(ValueError):
    pass


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    positive: bool

    def __str__(self) -> str:
        return f"{self.name}{'+' if self.positive else '-'}"


@dataclass(frozen=True)
class One(Formula):
    def __str__(self) -> str:
        return "1"


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Tensor(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Par(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


ONE = One()
BOT = Bot()


def pos(name: str) -> Atom:
    return Atom(name, True)


def neg(name: str) -> Atom:
    return Atom(name, False)


def negate(f: Formula) -> Formula:
    """De Morgan dual; involutive."""
    if isinstance(f, Atom):
        return Atom(f.name, not f.positive)
    if isinstance(f, One):
        return BOT
    if isinstance(f, Bot):
        return ONE
    if isinstance(f, Tensor):
        return Par(negate(f.left), negate(f.right))
    if isinstance(f, Par):
        return Tensor(negate(f.left), negate(f.right))
    raise FormulaError(f"unknown formula {f!r}")


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


def atoms(f: Formula) -> list[Atom]:
    """Atomic subformulas in left-to-right order."""
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, (One, Bot)):
        return []
    if isinstance(f, (Tensor, Par)):
        return atoms(f.left) + atoms(f.right)
    raise FormulaError(f"unknown formula {f!r}")


def names(f: Formula) -> set[str]:
    return {a.name for a in atoms(f)}


def format_formula(f: Formula) -> str:
    return str(f)


def parse_formula(text: str) -> Formula:
    toks = _tokenize(text)
    f, rest = _parse(toks)
    if rest:
        raise FormulaError(f"trailing tokens {rest!r} in {text!r}")
    return f


def _tokenize(text: str) -> list[str]:
    toks: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()*|":
            toks.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in "()*| \t":
                j += 1
            toks.append(text[i:j])
            i = j
    return toks


def _parse(toks: list[str]) -> tuple[Formula, list[str]]:
    if not toks:
        raise FormulaError("unexpected end of formula")
    head, rest = toks[0], toks[1:]
    if head == "(":
        left, rest = _parse(rest)
        if not rest or rest[0] not in "*|":
            raise FormulaError("expected '*' or '|' in compound formula")
        op, rest = rest[0], rest[1:]
        right, rest = _parse(rest)
        if not rest or rest[0] != ")":
            raise FormulaError("expected ')'")
        cls = Tensor if op == "*" else Par
        return cls(left, right), rest[1:]
    if head == "1":
        return ONE, rest
    if head == "bot":
        return BOT, rest
    if head.endswith("+") and len(head) > 1:
        return Atom(head[:-1], True), rest
    if head.endswith("-") and len(head) > 1:
        return Atom(head[:-1], False), rest
    raise FormulaError(f"bad token {head!r}")
