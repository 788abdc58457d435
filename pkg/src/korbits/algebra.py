"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials live in a fixed :class:`VariableSpace` with two banks of
variables, ``x1..xr`` and ``y1..ym``.  A polynomial is stored as a dict
mapping exponent tuples (one entry per variable, x-bank first) to nonzero
``Fraction`` coefficients.  This representation is canonical: two
polynomials are equal exactly when their term dicts are equal, regardless
of how they were built.

Monomials are ordered graded-lexicographically (total degree first, then
lexicographic comparison of the exponent tuple with x1 strongest).  The
same order drives printing, leading-term extraction and exact division.

On top of the ring operations the module provides elementary symmetric
polynomials, determinants of polynomial matrices (cofactor expansion for
small sizes, fraction-free Bareiss elimination above), divided difference
operators for the classical root systems, and a text grammar used by
fixtures and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import ContractViolation, InternalError, UsageError

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

#: Substitution target for a y-variable: None kills the variable (maps it
#: to zero); otherwise (sign, bank, index) with bank "x" or "y", sign +-1.
Target = Optional[tuple[int, str, int]]

# Matrices up to this size use cofactor expansion; larger ones Bareiss.
_COFACTOR_LIMIT = 6


@dataclass(frozen=True)
class VariableSpace:
    """A fixed set of variables x1..xr, y1..ym (indices are 1-based)."""

    x_count: int
    y_count: int

    def __post_init__(self) -> None:
        if self.x_count < 0 or self.y_count < 0:
            raise ContractViolation("variable counts must be nonnegative")

    @property
    def nvars(self) -> int:
        return self.x_count + self.y_count

    def x_slot(self, i: int) -> int:
        if not 1 <= i <= self.x_count:
            raise ContractViolation(f"x{i} outside space with r={self.x_count}")
        return i - 1

    def y_slot(self, j: int) -> int:
        if not 1 <= j <= self.y_count:
            raise ContractViolation(f"y{j} outside space with m={self.y_count}")
        return self.x_count + j - 1

    def var_name(self, slot: int) -> str:
        if slot < self.x_count:
            return f"x{slot + 1}"
        return f"y{slot - self.x_count + 1}"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value: Scalar) -> "Polynomial":
        coeff = _coeff(Fraction(value))
        if coeff == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: coeff})

    def x(self, i: int) -> "Polynomial":
        return self._variable(self.x_slot(i))

    def y(self, j: int) -> "Polynomial":
        return self._variable(self.y_slot(j))

    def _variable(self, slot: int) -> "Polynomial":
        exp = [0] * self.nvars
        exp[slot] = 1
        return Polynomial(self, {tuple(exp): 1})


def _mono_key(mono: Monomial) -> tuple[int, Monomial]:
    return (sum(mono), mono)


def _coeff(value: Scalar) -> Scalar:
    """Coefficients are stored as plain ints whenever integral; int and
    Fraction mix transparently (equality, hashing and printing agree), and
    integer arithmetic is far cheaper."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Polynomial:
    """Immutable sparse polynomial over a :class:`VariableSpace`."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: Mapping[Monomial, Fraction]):
        clean = {m: _coeff(c) for m, c in terms.items() if c != 0}
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _from_clean(cls, space: VariableSpace, terms: dict) -> "Polynomial":
        """Wrap a dict already known to hold no zero coefficients."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Polynomial is immutable")

    # -- ring structure -------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.space != self.space:
                raise ContractViolation("polynomials live in different variable spaces")
            return other
        if isinstance(other, (int, Fraction)):
            return self.space.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = terms.get(mono, 0) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        return Polynomial._from_clean(self.space, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean(
            self.space, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.space.zero()
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                new = terms.get(mono, 0) + c1 * c2
                if new:
                    terms[mono] = new
                else:
                    terms.pop(mono, None)
        return Polynomial._from_clean(self.space, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Polynomial":
        if not isinstance(scalar, (int, Fraction)) or scalar == 0:
            raise ContractViolation("polynomials divide only by nonzero scalars")
        inv = Fraction(1, 1) / Fraction(scalar)
        return Polynomial._from_clean(
            self.space, {m: _coeff(c * inv) for m, c in self.terms.items()}
        )

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ContractViolation("negative powers are not polynomials")
        result = self.space.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.space.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum total degree; the zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all terms, or None if inhomogeneous/zero."""
        degrees = {sum(m) for m in self.terms}
        if len(degrees) != 1:
            return None
        return degrees.pop()

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ContractViolation("zero polynomial has no leading term")
        mono = max(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: _mono_key(mc[0]), reverse=True)

    def uses_y(self, j: int) -> bool:
        slot = self.space.y_slot(j)
        return any(m[slot] for m in self.terms)

    # -- substitution and Weyl actions ------------------------------------

    def substitute(self, assignment: Mapping[int, Target]) -> "Polynomial":
        """Replace y-variables according to ``assignment``.

        Keys are 1-based y indices; every y-variable actually appearing in
        the polynomial must be covered.  x-variables pass through.
        """
        space = self.space
        r = space.x_count
        # Per y-slot: None = unassigned, 0 = kill, else (sign, target slot).
        plan: list = [None] * space.y_count
        for j, target in assignment.items():
            space.y_slot(j)
            if target is None:
                plan[j - 1] = 0
            else:
                sign, bank, idx = target
                if sign not in (1, -1):
                    raise ContractViolation("substitution sign must be +-1")
                slot = space.x_slot(idx) if bank == "x" else space.y_slot(idx)
                plan[j - 1] = (sign, slot)
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            new = list(mono[:r]) + [0] * space.y_count
            sign = 1
            dead = False
            for offset in range(space.y_count):
                e = mono[r + offset]
                if not e:
                    continue
                target = plan[offset]
                if target is None:
                    raise ContractViolation(
                        f"y{offset + 1} appears but has no assignment"
                    )
                if target == 0:
                    dead = True
                    break
                tsign, slot = target
                new[slot] += e
                if tsign < 0 and e % 2:
                    sign = -sign
            if dead:
                continue
            key = tuple(new)
            value = terms.get(key, 0) + sign * coeff
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return Polynomial._from_clean(space, terms)

    def map_y(self, images: Sequence[tuple[int, int]]) -> "Polynomial":
        """Apply a signed permutation to the y-bank.

        ``images[j-1] = (sign, k)`` sends y_j to sign*y_k.  x-variables are
        untouched.  Used for the reflections in divided differences.
        """
        space = self.space
        r = space.x_count
        terms: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            new = list(mono[:r]) + [0] * space.y_count
            sign = 1
            for offset in range(space.y_count):
                e = mono[r + offset]
                if not e:
                    continue
                tsign, k = images[offset]
                new[r + k - 1] += e
                if tsign < 0 and e % 2:
                    sign = -sign
            key = tuple(new)
            value = terms.get(key, 0) + sign * coeff
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return Polynomial._from_clean(space, terms)

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def format_polynomial(poly: Polynomial, namer=None) -> str:
    """Canonical expanded form, terms in descending graded-lex order.

    ``namer`` overrides variable naming (slot index -> name); the Chern
    rewrite uses it to print z-generators and the euler symbol.
    """
    if namer is None:
        namer = poly.space.var_name
    if not poly.terms:
        return "0"
    parts: list[str] = []
    for mono, coeff in poly.sorted_terms():
        factors = []
        for slot, e in enumerate(mono):
            if e == 1:
                factors.append(namer(slot))
            elif e > 1:
                factors.append(f"{namer(slot)}^{e}")
        body = "*".join(factors)
        mag = abs(coeff)
        if body and mag == 1:
            text = body
        elif body:
            text = f"{mag}*{body}"
        else:
            text = str(mag)
        if not parts:
            parts.append(text if coeff > 0 else f"-{text}")
        else:
            parts.append(("+ " if coeff > 0 else "- ") + text)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# arithmetic helpers


def arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    """Dispatcher kept for symmetry with the operator methods."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ContractViolation(f"unknown operation {op!r}")


def product(space: VariableSpace, factors: Iterable[Polynomial]) -> Polynomial:
    result = space.one()
    for f in factors:
        result = result * f
        if result.is_zero:
            break
    return result


def elementary_symmetric(
    k: int, items: Sequence[Polynomial], space: Optional[VariableSpace] = None
) -> Polynomial:
    """e_k of the given polynomials (usually signed variables).

    e_0 = 1 and e_k = 0 once k exceeds the number of inputs.  ``space`` is
    only needed when ``items`` is empty.
    """
    if k < 0:
        raise ContractViolation("elementary symmetric index must be >= 0")
    if space is None:
        if not items:
            raise ContractViolation("empty input needs an explicit space")
        space = items[0].space
    if k > len(items):
        return space.zero()
    # Row DP: e[j] accumulates e_j of the prefix processed so far.
    e = [space.one()] + [space.zero()] * k
    for item in items:
        for j in range(min(k, len(e) - 1), 0, -1):
            e[j] = e[j] + item * e[j - 1]
    return e[k]


def _heap_key(mono: Monomial) -> tuple:
    # heapq pops the minimum; negate the graded-lex key to pop leaders first
    return (-sum(mono), tuple(-e for e in mono))


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return q with f = q*g, raising InternalError if g does not divide f.

    Used where divisibility is mathematically guaranteed (divided
    differences, Bareiss pivots), so a nonzero remainder is a bug.
    Leading terms are tracked with a lazy heap, so each reduction step
    costs O(|g| log T) instead of a full scan.
    """
    import heapq

    if g.is_zero:
        raise ContractViolation("division by the zero polynomial")
    space = f.space
    g_items = list(g.terms.items())
    g_mono = max(g.terms, key=_mono_key)
    g_coeff = g.terms[g_mono]
    rest = dict(f.terms)
    heap = [(_heap_key(m), m) for m in rest]
    heapq.heapify(heap)
    quotient: dict[Monomial, Fraction] = {}
    while heap:
        _, mono = heapq.heappop(heap)
        coeff = rest.get(mono)
        if not coeff:
            continue  # stale heap entry
        diff = tuple(a - b for a, b in zip(mono, g_mono))
        if any(d < 0 for d in diff):
            raise InternalError("non-exact polynomial division")
        if isinstance(coeff, int) and isinstance(g_coeff, int):
            q_coeff = _coeff(Fraction(coeff, g_coeff))
        else:
            q_coeff = _coeff(Fraction(coeff) / Fraction(g_coeff))
        quotient[diff] = quotient.get(diff, 0) + q_coeff
        for gm, gc in g_items:
            target = tuple(a + b for a, b in zip(diff, gm))
            value = rest.get(target, 0) - q_coeff * gc
            if value:
                if target not in rest:
                    heapq.heappush(heap, (_heap_key(target), target))
                rest[target] = value
            else:
                rest.pop(target, None)
    return Polynomial(space, quotient)


def poly_determinant(entries: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square grid of polynomials.

    Cofactor expansion up to 6x6; fraction-free Bareiss elimination above.
    Both give identical canonical results.
    """
    n = len(entries)
    if n == 0:
        raise ContractViolation("empty determinant needs a space; use const 1")
    for row in entries:
        if len(row) != n:
            raise ContractViolation("determinant requires a square grid")
    space = entries[0][0].space
    for row in entries:
        for entry in row:
            if entry.space != space:
                raise ContractViolation("determinant entries in different spaces")
    if n <= _COFACTOR_LIMIT:
        return _det_cofactor(space, [list(r) for r in entries])
    return _det_bareiss(space, [list(r) for r in entries])


def _det_cofactor(space: VariableSpace, m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    result = space.zero()
    for col in range(n):
        entry = m[0][col]
        if entry.is_zero:
            continue
        minor = [[row[c] for c in range(n) if c != col] for row in m[1:]]
        term = entry * _det_cofactor(space, minor)
        result = result + term if col % 2 == 0 else result - term
    return result


def _det_bareiss(space: VariableSpace, m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    sign = 1
    prev = space.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            for swap in range(k + 1, n):
                if not m[swap][k].is_zero:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return space.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# divided difference operators


@dataclass(frozen=True)
class SimpleRootAction:
    """A simple reflection on the y-bank together with its root.

    ``reflection[j-1] = (sign, k)`` gives the image of y_j; ``root`` is the
    simple root as a polynomial in the y-variables.
    """

    space: VariableSpace
    reflection: tuple[tuple[int, int], ...]
    root: Polynomial


def simple_root_action(space: VariableSpace, family: str, i: int) -> SimpleRootAction:
    """The action for simple root alpha_i of the given root-system family.

    Families use the positive-system conventions of the classical groups:
    type A has alpha_i = y_i - y_{i+1}; types B/C/D share those for i < n
    and end with alpha_n = y_n, 2*y_n, y_{n-1}+y_n respectively (type D's
    last reflection sends y_{n-1} to -y_n).  n is the y-bank size.
    """
    m = space.y_count
    identity = [(1, j) for j in range(1, m + 1)]
    if family == "A" or i < m:
        if not 1 <= i <= m - 1:
            raise ContractViolation(f"alpha_{i} out of range for type A rank {m - 1}")
        images = list(identity)
        images[i - 1], images[i] = images[i], images[i - 1]
        root = space.y(i) - space.y(i + 1)
        return SimpleRootAction(space, tuple(images), root)
    if i != m:
        raise ContractViolation(f"alpha_{i} out of range for rank {m}")
    if family == "B":
        images = list(identity)
        images[m - 1] = (-1, m)
        return SimpleRootAction(space, tuple(images), space.y(m))
    if family == "C":
        images = list(identity)
        images[m - 1] = (-1, m)
        return SimpleRootAction(space, tuple(images), 2 * space.y(m))
    if family == "D":
        if m < 2:
            raise ContractViolation("type D needs rank >= 2")
        images = list(identity)
        images[m - 2] = (-1, m)
        images[m - 1] = (-1, m - 1)
        return SimpleRootAction(space, tuple(images), space.y(m - 1) + space.y(m))
    raise ContractViolation(f"unknown family {family!r}")


def reflect(f: Polynomial, action: SimpleRootAction) -> Polynomial:
    return f.map_y(action.reflection)


def divided_difference(f: Polynomial, action: SimpleRootAction) -> Polynomial:
    """(f - s(f)) / alpha; the numerator is always divisible by alpha."""
    numerator = f - reflect(f, action)
    if numerator.is_zero:
        return f.space.zero()
    return exact_divide(numerator, action.root)


# ---------------------------------------------------------------------------
# text grammar


def parse_polynomial(text: str, space: VariableSpace) -> Polynomial:
    """Parse the fixture/CLI grammar.

    Integers and fractions ``a/b``; variables ``x1..xr``, ``y1..ym``;
    operators ``+ - * ^``; parentheses.  Implicit multiplication is a
    syntax error.
    """
    tokens = _tokenize(text)
    parser = _Parser(tokens, space)
    result = parser.parse_expression()
    parser.expect_end()
    return result


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j]))
            i = j
            continue
        if ch in "xy":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise UsageError(f"variable {ch!r} needs an index")
            tokens.append(("var", text[i:j]))
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append((ch, ch))
            i += 1
            continue
        raise UsageError(f"unexpected character {ch!r} in polynomial")
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], space: VariableSpace):
        self.tokens = tokens
        self.pos = 0
        self.space = space

    def peek(self) -> Optional[str]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def take(self) -> tuple[str, str]:
        if self.pos >= len(self.tokens):
            raise UsageError("unexpected end of polynomial")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_end(self) -> None:
        if self.pos != len(self.tokens):
            raise UsageError(f"trailing input near {self.tokens[self.pos][1]!r}")

    def parse_expression(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        result = sign * self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.peek() == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_primary()
        while self.peek() == "^":
            self.take()
            kind, text = self.take()
            if kind != "num":
                raise UsageError("exponent must be a nonnegative integer")
            base = base ** int(text)
        return base

    def parse_primary(self) -> Polynomial:
        kind, text = self.take()
        if kind == "-":
            return -self.parse_primary()
        if kind == "num":
            value = Fraction(int(text))
            if self.peek() == "/":
                self.take()
                dkind, dtext = self.take()
                if dkind != "num":
                    raise UsageError("fraction denominator must be an integer")
                value = value / int(dtext)
            return self.space.const(value)
        if kind == "var":
            index = int(text[1:])
            return self.space.x(index) if text[0] == "x" else self.space.y(index)
        if kind == "(":
            inner = self.parse_expression()
            close, _ = self.take()
            if close != ")":
                raise UsageError("unbalanced parentheses")
            return inner
        raise UsageError(f"unexpected token {text!r}")
