"""Clan combinatorics.

A clan of signature (a, b) is a string whose entries are '+', '-' or a
natural number, every number occurring exactly twice, with #plus - #minus
= a - b.  Only the positions of matching numbers matter, so clans are
stored canonically: pair labels are renumbered 1, 2, ... in order of
first occurrence.  On top of the type itself the module provides
enumeration, the counting invariants gamma(i;+), gamma(i;-), gamma(i;j),
the symmetry predicates used outside type A, per-pair validity filters,
and the position involution attached to a clan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ContractViolation, UsageError
from .pairs import (
    A_GLPQ,
    B_OO,
    C_GL,
    C_SPSP,
    D_GL,
    D_OO,
    D_OO_ODD,
    SymmetricPair,
)
from .weyl import SignedPermutation

Symbol = Union[str, int]

PLUS = "+"
MINUS = "-"


def _canonical(symbols: Sequence[Symbol]) -> tuple[Symbol, ...]:
    rename: dict[int, int] = {}
    out: list[Symbol] = []
    for sym in symbols:
        if sym in (PLUS, MINUS):
            out.append(sym)
        else:
            if sym not in rename:
                rename[sym] = len(rename) + 1
            out.append(rename[sym])
    return tuple(out)


@dataclass(frozen=True)
class Clan:
    symbols: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        counts: dict[int, int] = {}
        for sym in self.symbols:
            if sym in (PLUS, MINUS):
                continue
            if not isinstance(sym, int) or sym < 1:
                raise ContractViolation(f"bad clan symbol {sym!r}")
            counts[sym] = counts.get(sym, 0) + 1
        for label, count in counts.items():
            if count != 2:
                raise ContractViolation(f"number {label} appears {count} times")
        if self.symbols != _canonical(self.symbols):
            raise ContractViolation("clan symbols are not in canonical form")

    # -- construction -----------------------------------------------------

    @classmethod
    def of(cls, symbols: Sequence[Symbol]) -> "Clan":
        return cls(_canonical(tuple(symbols)))

    @classmethod
    def parse(cls, text: str) -> "Clan":
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        symbols: list[Symbol] = []
        for token in body.replace(",", " ").split():
            if token == PLUS:
                symbols.append(PLUS)
            elif token == MINUS:
                symbols.append(MINUS)
            elif token.isdigit():
                symbols.append(int(token))
            else:
                raise UsageError(f"bad clan symbol {token!r}")
        if not symbols:
            raise UsageError("empty clan")
        try:
            return cls.of(symbols)
        except ContractViolation as exc:
            raise UsageError(str(exc)) from None

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.symbols) + ")"

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.symbols)

    def sort_key(self):
        order = {PLUS: (0, 0), MINUS: (1, 0)}
        return tuple(order.get(s, (2, s)) for s in self.symbols)

    def signature(self) -> tuple[int, int]:
        """(a, b) with a - b = #plus - #minus and a + b = length."""
        plus = self.symbols.count(PLUS)
        minus = self.symbols.count(MINUS)
        pairs = (len(self.symbols) - plus - minus) // 2
        return (plus + pairs, minus + pairs)

    def is_sign(self, i: int) -> bool:
        return self.symbols[i - 1] in (PLUS, MINUS)

    def all_signs(self) -> bool:
        return all(s in (PLUS, MINUS) for s in self.symbols)

    def mate(self, i: int) -> int:
        """Position of the partner of the number at position i (1-based)."""
        sym = self.symbols[i - 1]
        if sym in (PLUS, MINUS):
            raise ContractViolation(f"position {i} holds a sign")
        for j, other in enumerate(self.symbols, start=1):
            if j != i and other == sym:
                return j
        raise ContractViolation("unpaired number")  # pragma: no cover

    def replace(self, updates: dict[int, Symbol]) -> "Clan":
        symbols = list(self.symbols)
        for pos, sym in updates.items():
            symbols[pos - 1] = sym
        return Clan.of(symbols)

    def swap(self, i: int, j: int) -> "Clan":
        symbols = list(self.symbols)
        symbols[i - 1], symbols[j - 1] = symbols[j - 1], symbols[i - 1]
        return Clan.of(symbols)

    def fresh_label(self) -> int:
        numbers = [s for s in self.symbols if isinstance(s, int)]
        return max(numbers, default=0) + 1

    # -- counting invariants -------------------------------------------------

    def gamma_plus(self, i: int) -> int:
        """Plus signs plus complete number pairs among the first i symbols."""
        self._check_index(i)
        prefix = self.symbols[:i]
        pairs = sum(
            1 for label in set(s for s in prefix if isinstance(s, int))
            if prefix.count(label) == 2
        )
        return prefix.count(PLUS) + pairs

    def gamma_minus(self, i: int) -> int:
        self._check_index(i)
        prefix = self.symbols[:i]
        pairs = sum(
            1 for label in set(s for s in prefix if isinstance(s, int))
            if prefix.count(label) == 2
        )
        return prefix.count(MINUS) + pairs

    def gamma_pair(self, i: int, j: int) -> int:
        """Number pairs c_s = c_t with s <= i < j < t."""
        if not 1 <= i < j <= len(self.symbols):
            raise ContractViolation("need 1 <= i < j <= n")
        count = 0
        for s in range(1, i + 1):
            if isinstance(self.symbols[s - 1], int):
                t = self.mate(s)
                if t > j:
                    count += 1
        return count

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= len(self.symbols):
            raise ContractViolation(f"index {i} out of range")

    # -- symmetry -------------------------------------------------------------

    def reverse(self) -> "Clan":
        return Clan.of(tuple(reversed(self.symbols)))

    def negate(self) -> "Clan":
        flipped = tuple(
            MINUS if s == PLUS else PLUS if s == MINUS else s for s in self.symbols
        )
        return Clan.of(flipped)

    def is_symmetric(self) -> bool:
        return self.reverse() == self

    def is_skew_symmetric(self) -> bool:
        return self.reverse().negate() == self

    def is_anti_reflexive(self) -> bool:
        """No number sits at a pair of mirrored positions (i, L+1-i)."""
        size = len(self.symbols)
        for i in range(1, size + 1):
            if not self.is_sign(i) and self.mate(i) == size + 1 - i:
                return False
        return True

    def front_parity_even(self) -> bool:
        """Minus signs plus complete pairs among the first half, mod 2."""
        half = len(self.symbols) // 2
        return (self.gamma_minus(half) % 2) == 0

    # -- the position involution ------------------------------------------------

    def position_involution(self) -> SignedPermutation:
        """The involution whose 2-cycles are the mate-position pairs."""
        size = len(self.symbols)
        images = list(range(1, size + 1))
        for i in range(1, size + 1):
            if not self.is_sign(i):
                images[i - 1] = self.mate(i)
        return SignedPermutation("A", tuple(images))


def canonicalize(raw: Sequence[Symbol]) -> Clan:
    return Clan.of(raw)


def enumerate_clans(a: int, b: int) -> list[Clan]:
    """All clans of signature (a, b), canonical, sorted."""
    if a < 0 or b < 0:
        raise ContractViolation("signature parts must be nonnegative")
    size = a + b
    results: list[Clan] = []
    symbols: list[Symbol] = [None] * size  # type: ignore[list-item]

    def fill(pos: int, plus_left: int, minus_left: int, next_label: int) -> None:
        if pos == size:
            if plus_left == 0 and minus_left == 0:
                results.append(Clan(tuple(symbols)))
            return
        if symbols[pos] is not None:
            fill(pos + 1, plus_left, minus_left, next_label)
            return
        if plus_left:
            symbols[pos] = PLUS
            fill(pos + 1, plus_left - 1, minus_left, next_label)
            symbols[pos] = None
        if minus_left:
            symbols[pos] = MINUS
            fill(pos + 1, plus_left, minus_left - 1, next_label)
            symbols[pos] = None
        for mate_pos in range(pos + 1, size):
            if symbols[mate_pos] is None:
                symbols[pos] = symbols[mate_pos] = next_label
                fill(pos + 1, plus_left, minus_left, next_label + 1)
                symbols[pos] = symbols[mate_pos] = None

    # Each pair uses one slot on each side of the signature, so the pair
    # count fixes the sign budgets exactly.
    for pairs in range(min(a, b) + 1):
        fill(0, a - pairs, b - pairs, 1)
    return sorted(set(results), key=Clan.sort_key)


def pair_validity(clan: Clan, pair: SymmetricPair) -> bool:
    """True when the clan labels an orbit of the given symmetric pair."""
    if not pair.is_clan_case():
        raise ContractViolation(f"{pair.case} is not clan-parametrized")
    if clan.signature() != pair.clan_signature():
        raise ContractViolation(
            f"clan {clan} has signature {clan.signature()}, "
            f"pair needs {pair.clan_signature()}"
        )
    if pair.case == A_GLPQ:
        return True
    if pair.case in (B_OO, D_OO, D_OO_ODD):
        return clan.is_symmetric()
    if pair.case == C_SPSP:
        return clan.is_symmetric() and clan.is_anti_reflexive()
    if pair.case == C_GL:
        return clan.is_skew_symmetric()
    if pair.case == D_GL:
        return (
            clan.is_skew_symmetric()
            and clan.is_anti_reflexive()
            and clan.front_parity_even()
        )
    raise ContractViolation(f"unhandled case {pair.case}")


def clan_to_signed_involution(clan: Clan) -> SignedPermutation:
    """Position involution of a symmetric or skew-symmetric clan.

    For those clans the result is a signed element of the ambient
    symmetric group (it commutes with position reversal).
    """
    if not (clan.is_symmetric() or clan.is_skew_symmetric()):
        raise ContractViolation("clan is neither symmetric nor skew-symmetric")
    return clan.position_involution()
