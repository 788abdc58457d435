"""The ten symmetric pairs (G, K) handled by the library.

Each pair fixes an ambient classical group G, a symmetric subgroup K, the
variable space for equivariant classes (r torus coordinates for K's torus,
m for G's), the ambient Weyl-group family used for fixed-point
enumeration, and the root-system family driving the divided difference
operators.  Pair descriptors are parsed from strings like ``A:glpq:2,2``
or ``D:oo-odd:1,2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import SimpleRootAction, VariableSpace, simple_root_action
from .errors import UsageError

# Case tags.  "A_*" pairs live inside SL(N); the rest inside SO/Sp.
A_GLPQ = "A_GLPQ"        # (SL(p+q), S(GL(p) x GL(q)))
A_SO_ODD = "A_SO_ODD"    # (SL(2n+1), SO(2n+1))
A_SO_EVEN = "A_SO_EVEN"  # (SL(2n), SO(2n))
A_SP = "A_SP"            # (SL(2n), Sp(2n))
B_OO = "B_OO"            # (SO(2n+1), S(O(2p) x O(2q+1)))
C_SPSP = "C_SPSP"        # (Sp(2n), Sp(2p) x Sp(2q))
C_GL = "C_GL"            # (Sp(2n), GL(n))
D_OO = "D_OO"            # (SO(2n), S(O(2p) x O(2q)))
D_GL = "D_GL"            # (SO(2n), GL(n))
D_OO_ODD = "D_OO_ODD"    # (SO(2n), S(O(2p+1) x O(2q-1)))

ALL_CASES = (
    A_GLPQ, A_SO_ODD, A_SO_EVEN, A_SP,
    B_OO, C_SPSP, C_GL, D_OO, D_GL, D_OO_ODD,
)

_CLAN_CASES = {A_GLPQ, B_OO, C_SPSP, C_GL, D_OO, D_GL, D_OO_ODD}


@dataclass(frozen=True)
class SymmetricPair:
    case: str
    n: int
    p: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.case not in ALL_CASES:
            raise UsageError(f"unknown case {self.case!r}")
        if self.n < 1:
            raise UsageError("rank must be at least 1")
        if self.case in (A_GLPQ, B_OO, C_SPSP, D_OO, D_OO_ODD):
            if self.p < 0 or self.q < 0 or self.p + self.q != self.n:
                raise UsageError("need p, q >= 0 with p + q = n")
            if self.case == A_GLPQ and self.n < 1:
                raise UsageError("need p + q >= 1")
            if self.case == D_OO_ODD and self.q < 1:
                raise UsageError("the odd orthogonal split needs q >= 1")
        if self.case.startswith("D") and self.n < 2:
            raise UsageError("type D pairs need n >= 2")

    # -- descriptive data -------------------------------------------------

    def ambient_family(self) -> tuple[str, int]:
        """(family, size): family "A" with S_N, or "BC"/"D" signed rank n."""
        if self.case == A_GLPQ:
            return ("A", self.n)
        if self.case == A_SO_ODD:
            return ("A", 2 * self.n + 1)
        if self.case in (A_SO_EVEN, A_SP):
            return ("A", 2 * self.n)
        if self.case in (B_OO, C_SPSP, C_GL):
            return ("BC", self.n)
        return ("D", self.n)

    def root_family(self) -> str:
        """Root-system family of G, for divided difference operators."""
        if self.case in (A_GLPQ, A_SO_ODD, A_SO_EVEN, A_SP):
            return "A"
        if self.case == B_OO:
            return "B"
        if self.case in (C_SPSP, C_GL):
            return "C"
        return "D"

    def num_simple_roots(self) -> int:
        family, size = self.ambient_family()
        return size - 1 if family == "A" else size

    def variable_space(self) -> VariableSpace:
        if self.case == A_GLPQ:
            return VariableSpace(self.n, self.n)
        if self.case == A_SO_ODD:
            return VariableSpace(self.n, 2 * self.n + 1)
        if self.case in (A_SO_EVEN, A_SP):
            return VariableSpace(self.n, 2 * self.n)
        if self.case == D_OO_ODD:
            return VariableSpace(self.n - 1, self.n)
        return VariableSpace(self.n, self.n)

    def root_action(self, i: int) -> SimpleRootAction:
        return simple_root_action(self.variable_space(), self.root_family(), i)

    def is_clan_case(self) -> bool:
        return self.case in _CLAN_CASES

    def clan_signature(self) -> tuple[int, int]:
        """(#plus, #minus) signature of the clans labelling the orbits."""
        if self.case == A_GLPQ:
            return (self.p, self.q)
        if self.case == B_OO:
            return (2 * self.p, 2 * self.q + 1)
        if self.case in (C_SPSP, D_OO):
            return (2 * self.p, 2 * self.q)
        if self.case in (C_GL, D_GL):
            return (self.n, self.n)
        if self.case == D_OO_ODD:
            return (2 * self.p + 1, 2 * self.q - 1)
        raise UsageError(f"{self.case} is not clan-parametrized")

    def describe(self) -> str:
        n, p, q = self.n, self.p, self.q
        return {
            A_GLPQ: f"(SL({n}), S(GL({p}) x GL({q})))",
            A_SO_ODD: f"(SL({2*n+1}), SO({2*n+1}))",
            A_SO_EVEN: f"(SL({2*n}), SO({2*n}))",
            A_SP: f"(SL({2*n}), Sp({2*n}))",
            B_OO: f"(SO({2*n+1}), S(O({2*p}) x O({2*q+1})))",
            C_SPSP: f"(Sp({2*n}), Sp({2*p}) x Sp({2*q}))",
            C_GL: f"(Sp({2*n}), GL({n}))",
            D_OO: f"(SO({2*n}), S(O({2*p}) x O({2*q})))",
            D_GL: f"(SO({2*n}), GL({n}))",
            D_OO_ODD: f"(SO({2*n}), S(O({2*p+1}) x O({2*q-1})))",
        }[self.case]

    def spec_string(self) -> str:
        n, p, q = self.n, self.p, self.q
        return {
            A_GLPQ: f"A:glpq:{p},{q}",
            A_SO_ODD: f"A:so:{2*n+1}",
            A_SO_EVEN: f"A:so-even:{2*n}",
            A_SP: f"A:sp:{2*n}",
            B_OO: f"B:oo:{p},{q}",
            C_SPSP: f"C:spsp:{p},{q}",
            C_GL: f"C:gl:{n}",
            D_OO: f"D:oo:{p},{q}",
            D_GL: f"D:gl:{n}",
            D_OO_ODD: f"D:oo-odd:{p},{q}",
        }[self.case]


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _parse_pq(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected p,q but got {text!r}")
    return _parse_int(parts[0], "p"), _parse_int(parts[1], "q")


def parse_pair_spec(text: str) -> SymmetricPair:
    """Parse descriptors like A:glpq:2,2, A:so:5, C:gl:2, D:oo-odd:1,2."""
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise UsageError(f"pair descriptor {text!r} is not TYPE:case:params")
    family, case, params = parts[0].upper(), parts[1].lower(), parts[2]
    if family == "A" and case == "glpq":
        p, q = _parse_pq(params)
        return SymmetricPair(A_GLPQ, p + q, p, q)
    if family == "A" and case == "so":
        size = _parse_int(params, "N")
        if size < 3 or size % 2 == 0:
            raise UsageError("A:so:N needs odd N >= 3; use A:so-even for even N")
        return SymmetricPair(A_SO_ODD, (size - 1) // 2)
    if family == "A" and case == "so-even":
        size = _parse_int(params, "N")
        if size < 2 or size % 2:
            raise UsageError("A:so-even:N needs even N >= 2")
        return SymmetricPair(A_SO_EVEN, size // 2)
    if family == "A" and case == "sp":
        size = _parse_int(params, "N")
        if size < 2 or size % 2:
            raise UsageError("A:sp:N needs even N >= 2")
        return SymmetricPair(A_SP, size // 2)
    if family == "B" and case == "oo":
        p, q = _parse_pq(params)
        return SymmetricPair(B_OO, p + q, p, q)
    if family == "C" and case == "spsp":
        p, q = _parse_pq(params)
        return SymmetricPair(C_SPSP, p + q, p, q)
    if family == "C" and case == "gl":
        n = _parse_int(params, "n")
        return SymmetricPair(C_GL, n)
    if family == "D" and case == "oo":
        p, q = _parse_pq(params)
        return SymmetricPair(D_OO, p + q, p, q)
    if family == "D" and case == "gl":
        n = _parse_int(params, "n")
        return SymmetricPair(D_GL, n)
    if family == "D" and case == "oo-odd":
        p, q = _parse_pq(params)
        return SymmetricPair(D_OO_ODD, p + q, p, q)
    raise UsageError(f"unknown pair descriptor {text!r}")
