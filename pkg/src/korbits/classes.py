"""Equivariant fundamental classes of orbit closures.

Closed orbits get explicit polynomial representatives (products of linear
forms, or determinants of elementary-symmetric entries for the two
general-linear subgroup cases).  Every other class is produced by divided
difference operators walking up the weak order, dividing by the cover
degree on degree-two edges.  Correctness is checked against localization:
restriction at a torus fixed point is polynomial substitution, and two
classes are equal exactly when all their restrictions agree.  A
weight-product oracle recomputes closed-orbit restrictions directly from
root data, independently of the formulas.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import (
    Polynomial,
    VariableSpace,
    divided_difference,
    elementary_symmetric,
    format_polynomial,
    parse_polynomial,
    poly_determinant,
    product,
)
from .clans import MINUS, PLUS
from .errors import ContractViolation, InternalError, UsageError
from .orbits import (
    ClanOrbit,
    InvolutionOrbit,
    NO_RAISE,
    OrbitParameter,
    RootStatus,
    SplitOrbit,
    WeakEdge,
    WeakOrderGraph,
    _involution_basis,
    _involution_status,
    _value_swap,
    build_weak_order_graph,
    closed_orbits,
    enumerate_orbits,
    parse_orbit_parameter,
)
from .pairs import (
    A_GLPQ,
    A_SO_EVEN,
    A_SO_ODD,
    A_SP,
    B_OO,
    C_GL,
    C_SPSP,
    D_GL,
    D_OO,
    D_OO_ODD,
    SymmetricPair,
)
from .weyl import (
    SignedPermutation,
    enumerate_group,
    group_order,
    l_p,
    restriction_assignment,
    restriction_map,
    sign_stats,
    unequal_rank_stats,
)


@dataclass(frozen=True)
class EquivariantClass:
    """A polynomial representative of an orbit-closure class.

    ``factors`` optionally keeps the product form the closed-orbit
    formulas are built from; restriction maps are ring homomorphisms, so
    restricting factor by factor (with early exit on zero) is exact and
    much faster for large ambient Weyl groups.
    """

    pair: SymmetricPair
    polynomial: Polynomial
    factors: Optional[tuple[Polynomial, ...]] = None

    @classmethod
    def from_factors(cls, pair: SymmetricPair, factors: Iterable[Polynomial]):
        factors = tuple(factors)
        poly = product(pair.variable_space(), factors)
        return cls(pair, poly, factors)


# ---------------------------------------------------------------------------
# closed orbit formulas


def _signed_y(space: VariableSpace, w: SignedPermutation, j: int) -> Polynomial:
    """y_{w^{-1}(j)} with the sign convention for signed permutations."""
    v = w.inverse().images[j - 1]
    return space.y(v) if v > 0 else -space.y(-v)


def closed_orbit_class(
    pair: SymmetricPair,
    param: OrbitParameter,
    rep: Optional[SignedPermutation] = None,
) -> EquivariantClass:
    """The explicit class of a closed orbit (disconnected subgroups get
    the whole-orbit formula, i.e. the sum over components).

    The stored representative is used by default; passing another fixed
    point of the same orbit must give the same polynomial, which the
    tests exercise.
    """
    found = None
    for closed_param, closed_rep in closed_orbits(pair):
        if closed_param == param:
            found = closed_rep
            break
    if found is None:
        raise ContractViolation(f"{param} is not a closed orbit of {pair.describe()}")
    if rep is None:
        rep = found
    elif not _closed_member(pair, param, rep):
        raise ContractViolation("representative does not lie in the orbit")
    space = pair.variable_space()
    n, p = pair.n, pair.p
    factors: list[Polynomial] = []
    if pair.case == A_GLPQ:
        sign = (-1) ** l_p(rep, p)
        factors.append(space.const(sign))
        inv = rep.inverse()
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                factors.append(space.x(i) - space.y(inv.images[j - 1]))
    elif pair.case == A_SO_ODD:
        factors.append(space.const((-2) ** n))
        for i in range(1, n + 1):
            factors.append(space.y(i) + space.y(n + 1))
            factors.append(space.y(n + 1) + space.y(2 * n + 2 - i))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                factors.append(space.y(i) + space.y(j))
                factors.append(space.y(i) + space.y(2 * n + 2 - j))
    elif pair.case == A_SP:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                factors.append(space.y(i) + space.y(j))
                factors.append(space.y(i) + space.y(2 * n + 1 - j))
    elif pair.case == A_SO_EVEN:
        assert isinstance(param, SplitOrbit)
        x_mono = product(space, (space.x(i) for i in range(1, n + 1)))
        y_mono = product(space, (space.y(i) for i in range(1, n + 1)))
        if param.component == PLUS:
            factors.append(space.const(2 ** (n - 1)))
            factors.append(x_mono + y_mono)
        else:
            factors.append(space.const(-(2 ** (n - 1))))
            factors.append(x_mono - y_mono)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                factors.append(space.y(i) + space.y(j))
                factors.append(space.y(i) + space.y(2 * n + 1 - j))
    elif pair.case in (B_OO, C_SPSP, D_OO):
        sign = (-1) ** l_p(rep.absolute(), p)
        factors.append(space.const(sign))
        if pair.case == B_OO:
            inv_abs = rep.absolute().inverse()
            for k in range(1, p + 1):
                factors.append(space.y(inv_abs.images[k - 1]))
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                yj = _signed_y(space, rep, j)
                factors.append(space.x(i) - yj)
                factors.append(space.x(i) + yj)
    elif pair.case in (C_GL, D_GL):
        _, count, shift = sign_stats(rep)
        if pair.case == C_GL:
            sign = (-1) ** (count + shift)
            delta = _staircase_determinant(space, n, rep, half=False)
        else:
            sign = (-1) ** shift
            delta = _staircase_determinant(space, n, rep, half=True)
        return EquivariantClass(pair, sign * delta)
    elif pair.case == D_OO_ODD:
        _, _, f = unequal_rank_stats(rep, p)
        factors.append(space.const((-1) ** f))
        for k in range(1, n):
            factors.append(space.y(k))
        inv = rep.inverse()
        for i in range(1, p + 1):
            for j in range(p + 2, n + 1):
                yj = space.y(inv.images[j - 1])
                factors.append(space.x(i) + yj)
                factors.append(space.x(i) - yj)
    else:  # pragma: no cover
        raise ContractViolation(f"unhandled case {pair.case}")
    return EquivariantClass.from_factors(pair, factors)


def _staircase_determinant(
    space: VariableSpace, n: int, w: SignedPermutation, half: bool
) -> Polynomial:
    """det(c_{n+1+j-2i}) (full) or det(c_{n+j-2i}) of size n-1 (half),
    where c_k sums the k-th elementary symmetric functions of the x's and
    of the w-permuted signed y's, halved in the second variant."""
    xs = [space.x(i) for i in range(1, n + 1)]
    ys = [_signed_y(space, w, k) for k in range(1, n + 1)]

    def c(k: int) -> Polynomial:
        if k < 0:
            return space.zero()
        value = elementary_symmetric(k, xs, space) + elementary_symmetric(k, ys, space)
        return value / 2 if half else value

    if half:
        size = n - 1
        entries = [
            [c(n + (j + 1) - 2 * (i + 1)) for j in range(size)] for i in range(size)
        ]
        if size == 0:
            return space.one()
    else:
        size = n
        entries = [
            [c(n + 1 + (j + 1) - 2 * (i + 1)) for j in range(size)] for i in range(size)
        ]
    return poly_determinant(entries)


def staircase_determinant_for(
    space: VariableSpace, n: int, w: SignedPermutation, half: bool = False
) -> Polynomial:
    """Public handle on the determinant, used by identity tests."""
    return _staircase_determinant(space, n, w, half)


# ---------------------------------------------------------------------------
# restriction and localization


def restrict_polynomial(
    pair: SymmetricPair, poly: Polynomial, w: SignedPermutation
) -> Polynomial:
    return poly.substitute(restriction_assignment(pair, w))


def restrict_at(cls: EquivariantClass, w: SignedPermutation) -> Polynomial:
    """Restriction at the fixed point of w: substitute each y by the
    image of its w-translate in the small torus."""
    assignment = restriction_assignment(cls.pair, w)
    space = cls.pair.variable_space()
    if cls.factors is None:
        return cls.polynomial.substitute(assignment)
    result = space.one()
    for factor in cls.factors:
        result = result * factor.substitute(assignment)
        if result.is_zero:
            break
    return result


def ambient_weyl(pair: SymmetricPair):
    family, size = pair.ambient_family()
    return enumerate_group(family, size)


def ambient_weyl_order(pair: SymmetricPair) -> int:
    family, size = pair.ambient_family()
    return group_order(family, size)


def equal_via_localization(c1: EquivariantClass, c2: EquivariantClass) -> bool:
    """True when all fixed-point restrictions agree (exact equality)."""
    if c1.pair != c2.pair:
        raise ContractViolation("classes belong to different pairs")
    if c1.polynomial == c2.polynomial:
        return True
    for w in ambient_weyl(c1.pair):
        if restrict_at(c1, w) != restrict_at(c2, w):
            return False
    return True


# ---------------------------------------------------------------------------
# the weight-product oracle


def _positive_roots(family: str, m: int) -> list[tuple[int, ...]]:
    roots: list[tuple[int, ...]] = []

    def form(entries: dict[int, int]) -> tuple[int, ...]:
        row = [0] * m
        for idx, coeff in entries.items():
            row[idx - 1] = coeff
        return tuple(row)

    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            roots.append(form({i: 1, j: -1}))
            if family in ("B", "C", "D"):
                roots.append(form({i: 1, j: 1}))
    if family == "B":
        roots.extend(form({i: 1}) for i in range(1, m + 1))
    if family == "C":
        roots.extend(form({i: 2}) for i in range(1, m + 1))
    return roots


def _subgroup_roots(pair: SymmetricPair) -> set[tuple[int, ...]]:
    """Root system of K in the small-torus coordinates."""
    space = pair.variable_space()
    r = space.x_count
    n, p = pair.n, pair.p

    def form(entries: dict[int, int]) -> tuple[int, ...]:
        row = [0] * r
        for idx, coeff in entries.items():
            row[idx - 1] += coeff
        return tuple(row)

    roots: set[tuple[int, ...]] = set()

    def block_pairs(block: range, short: bool, long_double: bool = False) -> None:
        for i in block:
            for j in block:
                if i < j:
                    for si in (1, -1):
                        for sj in (1, -1):
                            roots.add(form({i: si, j: sj}))
            if short:
                roots.add(form({i: 1}))
                roots.add(form({i: -1}))
            if long_double:
                roots.add(form({i: 2}))
                roots.add(form({i: -2}))

    if pair.case == A_GLPQ:
        for block in (range(1, p + 1), range(p + 1, n + 1)):
            for i in block:
                for j in block:
                    if i != j:
                        roots.add(form({i: 1, j: -1}))
    elif pair.case == A_SO_ODD:
        block_pairs(range(1, n + 1), short=True)
    elif pair.case == A_SO_EVEN:
        block_pairs(range(1, n + 1), short=False)
    elif pair.case == A_SP:
        block_pairs(range(1, n + 1), short=False, long_double=True)
    elif pair.case == B_OO:
        block_pairs(range(1, p + 1), short=False)
        block_pairs(range(p + 1, n + 1), short=True)
    elif pair.case == C_SPSP:
        block_pairs(range(1, p + 1), short=False, long_double=True)
        block_pairs(range(p + 1, n + 1), short=False, long_double=True)
    elif pair.case in (C_GL, D_GL):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    roots.add(form({i: 1, j: -1}))
    elif pair.case == D_OO:
        block_pairs(range(1, p + 1), short=False)
        block_pairs(range(p + 1, n + 1), short=False)
    elif pair.case == D_OO_ODD:
        # internal labels: block one is x_1..x_p, block two x_{p+1}..x_{n-1}
        block_pairs(range(1, p + 1), short=True)
        block_pairs(range(p + 1, n), short=True)
    else:  # pragma: no cover
        raise ContractViolation(f"unhandled case {pair.case}")
    return roots


def _closed_member(pair: SymmetricPair, param: OrbitParameter, w: SignedPermutation) -> bool:
    """Is the fixed point of w contained in the given closed orbit?"""
    n, p = pair.n, pair.p
    if pair.case == A_GLPQ:
        assert isinstance(param, ClanOrbit)
        plus_positions = {
            i for i, s in enumerate(param.clan.symbols, start=1) if s == PLUS
        }
        return {i for i in range(1, n + 1) if w.images[i - 1] <= p} == plus_positions
    if pair.case in (A_SO_ODD, A_SP, A_SO_EVEN):
        size = w.n
        signed = all(
            w.images[size - i] == size + 1 - w.images[i - 1] for i in range(1, size + 1)
        )
        if not signed:
            return False
        if pair.case == A_SO_EVEN:
            assert isinstance(param, SplitOrbit)
            crossings = sum(1 for i in range(1, n + 1) if w.images[i - 1] > n)
            wanted = 0 if param.component == PLUS else 1
            return crossings % 2 == wanted
        return True
    if pair.case in (B_OO, C_SPSP, D_OO):
        assert isinstance(param, ClanOrbit)
        plus_positions = {
            i for i, s in enumerate(param.clan.symbols[:n], start=1) if s == PLUS
        }
        low = {i for i in range(1, n + 1) if abs(w.images[i - 1]) <= p}
        return low == plus_positions
    if pair.case in (C_GL, D_GL):
        assert isinstance(param, ClanOrbit)
        signs = param.clan.symbols[:n]
        return all(
            (w.images[i - 1] > 0) == (signs[i - 1] == PLUS) for i in range(1, n + 1)
        )
    if pair.case == D_OO_ODD:
        assert isinstance(param, ClanOrbit)
        if abs(w.images[n - 1]) != p + 1:
            return False
        plus_positions = {
            i for i, s in enumerate(param.clan.symbols[: n - 1], start=1) if s == PLUS
        }
        low = {i for i in range(1, n) if abs(w.images[i - 1]) <= p}
        return low == plus_positions
    raise ContractViolation(f"unhandled case {pair.case}")  # pragma: no cover


def weight_product_oracle(
    pair: SymmetricPair, param: OrbitParameter, w: SignedPermutation
) -> Polynomial:
    """Product of the normal-space torus weights at the fixed point of w.

    Computed purely from root data: push the positive system through w,
    restrict to the small torus, and strike each subgroup root once.  Off
    the orbit the result is zero, matching the class's vanishing.
    """
    space = pair.variable_space()
    if not _closed_member(pair, param, w):
        return space.zero()
    rho = restriction_map(pair)
    family = pair.root_family()
    m = space.y_count
    restricted: dict[tuple[int, ...], int] = {}
    for root in _positive_roots(family, m):
        row = [0] * space.x_count
        for idx in range(1, m + 1):
            coeff = root[idx - 1]
            if not coeff:
                continue
            v = w.images[idx - 1]
            target = rho[abs(v) - 1]
            if target is None:
                continue
            sign, x_idx = target
            row[x_idx - 1] += coeff * (sign if v > 0 else -sign)
        key = tuple(row)
        restricted[key] = restricted.get(key, 0) + 1
    for kroot in _subgroup_roots(pair):
        if restricted.get(kroot, 0) > 0:
            restricted[kroot] -= 1
    zero = (0,) * space.x_count
    result = space.one()
    for weight, count in restricted.items():
        if count <= 0:
            continue
        if weight == zero:
            raise InternalError("zero normal weight at a supposed member point")
        linear = space.zero()
        for idx, coeff in enumerate(weight, start=1):
            if coeff:
                linear = linear + coeff * space.x(idx)
        result = result * linear ** count
    return result


# ---------------------------------------------------------------------------
# propagation up the weak order


def _propagate(
    pair: SymmetricPair,
    graph: WeakOrderGraph,
    seeds: dict[OrbitParameter, EquivariantClass],
    jobs: Optional[int] = None,
) -> dict[OrbitParameter, EquivariantClass]:
    classes = dict(seeds)
    by_level: dict[int, list[WeakEdge]] = {}
    for edge in graph.edges:
        by_level.setdefault(graph.level[edge.source], []).append(edge)

    def candidate(edge: WeakEdge) -> EquivariantClass:
        action = pair.root_action(edge.root_index)
        poly = divided_difference(classes[edge.source].polynomial, action)
        if edge.degree == 2:
            poly = poly * Fraction(1, 2)
        return EquivariantClass(pair, poly)

    for depth in sorted(by_level):
        edges = by_level[depth]
        if jobs and jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                candidates = list(pool.map(candidate, edges))
        else:
            candidates = [candidate(edge) for edge in edges]
        for edge, cand in zip(edges, candidates):
            stored = classes.get(edge.target)
            if stored is None:
                classes[edge.target] = cand
            elif not equal_via_localization(stored, cand):
                raise InternalError(
                    f"paths into {edge.target} disagree under localization"
                )
    return classes


def propagate_all(
    pair: SymmetricPair, jobs: Optional[int] = None
) -> dict[OrbitParameter, EquivariantClass]:
    """Classes for every orbit, seeded at the closed orbits.

    Nodes with several incoming edges keep the first breadth-first
    arrival; every later arrival is checked against it by localization.
    """
    if pair.case == A_SO_EVEN:
        return dict(split_orbit_data(pair).classes)
    graph = build_weak_order_graph(pair)
    seeds = {param: closed_orbit_class(pair, param) for param in graph.closed}
    return _propagate(pair, graph, seeds, jobs)


# ---------------------------------------------------------------------------
# the even orthogonal pair: component resolution by localization


@dataclass
class SplitData:
    graph: WeakOrderGraph
    classes: dict[OrbitParameter, EquivariantClass]
    status: dict[tuple[OrbitParameter, int], RootStatus]


def _component_representatives(inv: tuple[int, ...], n: int):
    """Fixed-point representatives of the two components of a split orbit."""
    size = 2 * n
    basis = _involution_basis(inv, size)
    images = []
    for row in basis:
        hot = [idx for idx, entry in enumerate(row, start=1) if entry != (0, 0)]
        assert len(hot) == 1
        images.append(hot[0])
    plus = SignedPermutation("A", tuple(images))
    return {PLUS: plus, MINUS: _value_swap(plus, n)}


@functools.lru_cache(maxsize=None)
def split_orbit_data(pair: SymmetricPair) -> SplitData:
    """Joint weak-order graph and classes for (SL(2n), SO(2n)).

    When a raise connects two split orbits the component pairing is not
    combinatorial: the propagated class is restricted at a fixed point of
    each candidate component, and the nonzero one is the target.
    """
    if pair.case != A_SO_EVEN:
        raise ContractViolation("split engine only applies to the even orthogonal pair")
    n = pair.n
    closed = closed_orbits(pair)
    classes: dict[OrbitParameter, EquivariantClass] = {}
    level: dict[OrbitParameter, int] = {}
    status: dict[tuple[OrbitParameter, int], RootStatus] = {}
    edges: list[WeakEdge] = []
    reps_cache: dict[tuple[int, ...], dict] = {}

    def reps(inv: tuple[int, ...]):
        if inv not in reps_cache:
            reps_cache[inv] = _component_representatives(inv, n)
        return reps_cache[inv]

    for param, _ in closed:
        classes[param] = closed_orbit_class(pair, param)
        level[param] = 0
    frontier = sorted((p for p, _ in closed), key=lambda p: p.sort_key())
    depth = 0
    while frontier:
        next_frontier = []
        for param in frontier:
            inv = param.involution  # type: ignore[union-attr]
            for i in range(1, pair.num_simple_roots() + 1):
                move = _involution_status(inv, i)
                if move is None:
                    status[(param, i)] = NO_RAISE
                    continue
                target_inv, degree_two = move
                action = pair.root_action(i)
                poly = divided_difference(classes[param].polynomial, action)
                if degree_two:
                    if isinstance(param, SplitOrbit):
                        # each component covers the unsplit target once
                        st = RootStatus("noncompact_I", InvolutionOrbit(target_inv))
                    else:
                        st = RootStatus("noncompact_II", InvolutionOrbit(target_inv))
                        poly = poly * Fraction(1, 2)
                else:
                    if isinstance(param, SplitOrbit):
                        chosen = None
                        for tag, rep in reps(target_inv).items():
                            value = restrict_polynomial(pair, poly, rep)
                            if not value.is_zero:
                                if chosen is not None:
                                    raise InternalError(
                                        "both candidate components have nonzero "
                                        "restriction"
                                    )
                                chosen = tag
                        if chosen is None:
                            raise InternalError("no candidate component matches")
                        st = RootStatus("complex", SplitOrbit(target_inv, chosen))
                    else:
                        st = RootStatus("complex", InvolutionOrbit(target_inv))
                status[(param, i)] = st
                target = st.target
                assert target is not None
                edges.append(WeakEdge(param, target, i, st.degree))
                cand = EquivariantClass(pair, poly)
                stored = classes.get(target)
                if stored is None:
                    classes[target] = cand
                    level[target] = depth + 1
                    next_frontier.append(target)
                else:
                    if level[target] != depth + 1:
                        raise InternalError("inconsistent level in split graph")
                    if not equal_via_localization(stored, cand):
                        raise InternalError(
                            f"paths into {target} disagree under localization"
                        )
        frontier = sorted(set(next_frontier), key=lambda p: p.sort_key())
        depth += 1
    expected = enumerate_orbits(pair)
    if sorted(level, key=lambda p: p.sort_key()) != expected:
        raise InternalError("split graph did not reach every orbit")
    sources = {edge.source for edge in edges}
    maximal = [p for p in expected if p not in sources]
    if len(maximal) != 1:
        raise InternalError(f"expected one dense orbit, found {maximal}")
    edges.sort(key=lambda e: (level[e.source], e.source.sort_key(), e.root_index))
    nodes = tuple(sorted(level, key=lambda p: (level[p], p.sort_key())))
    graph = WeakOrderGraph(
        pair, nodes, tuple(edges), tuple(p for p, _ in closed), maximal[0], level
    )
    return SplitData(graph, classes, status)


def split_graph_status(pair: SymmetricPair, param: OrbitParameter, i: int) -> RootStatus:
    data = split_orbit_data(pair)
    return data.status.get((param, i), NO_RAISE)


# ---------------------------------------------------------------------------
# rewriting into Chern generators


@dataclass(frozen=True)
class ChernExpression:
    """A class rewritten over z-generators (block elementary symmetric
    functions), the y-variables, and the euler symbol standing for the
    monomial x1*...*xn."""

    pair: SymmetricPair
    blocks: tuple[int, int]
    polynomial: Polynomial  # x-bank: z's for both blocks, then the euler slot

    def _namer(self, slot: int) -> str:
        zcount = self.blocks[0] + self.blocks[1]
        if slot < zcount:
            return f"z{slot + 1}"
        if slot == zcount:
            return "e"
        return f"y{slot - zcount - 1 + 1}"

    def __str__(self) -> str:
        return format_polynomial(self.polynomial, self._namer)

    def expand(self) -> Polynomial:
        """Substitute the generators back; inverse of the rewrite."""
        space = self.pair.variable_space()
        n = space.x_count
        p, q = self.blocks
        zpolys = [
            elementary_symmetric(k, [space.x(i) for i in range(1, p + 1)], space)
            for k in range(1, p + 1)
        ] + [
            elementary_symmetric(k, [space.x(i) for i in range(p + 1, p + q + 1)], space)
            for k in range(1, q + 1)
        ]
        euler = product(space, (space.x(i) for i in range(1, n + 1)))
        result = space.zero()
        zcount = p + q
        for mono, coeff in self.polynomial.terms.items():
            term = space.const(coeff)
            for slot in range(zcount):
                if mono[slot]:
                    term = term * zpolys[slot] ** mono[slot]
            if mono[zcount]:
                term = term * euler ** mono[zcount]
            for offset in range(space.y_count):
                e = mono[zcount + 1 + offset]
                if e:
                    term = term * space.y(offset + 1) ** e
            result = result + term
        return result


def _block_symmetric(terms: dict, start: int, width: int) -> bool:
    """Invariance under adjacent transpositions of slots [start, start+width)."""
    for k in range(width - 1):
        for mono, coeff in terms.items():
            swapped = list(mono)
            swapped[start + k], swapped[start + k + 1] = (
                swapped[start + k + 1],
                swapped[start + k],
            )
            if terms.get(tuple(swapped), 0) != coeff:
                return False
    return True


def _elementary_exponents_block(terms: dict, start: int, width: int) -> dict:
    """Rewrite the symmetric content of slots [start, start+width) into
    elementary-symmetric exponents occupying the same slots.

    Standard leading-term division: the lex-greatest monomial of a
    symmetric polynomial has weakly decreasing block exponents lambda, and
    the product over columns of the conjugate partition reproduces it with
    coefficient one.
    """
    # elementary symmetric e_k of the block variables, as bare term dicts
    total = len(next(iter(terms))) if terms else 0
    e_cache: dict[int, dict] = {}

    def e_poly(k: int) -> dict:
        if k not in e_cache:
            out: dict = {}
            import itertools as _it

            for combo in _it.combinations(range(start, start + width), k):
                mono = [0] * total
                for slot in combo:
                    mono[slot] = 1
                out[tuple(mono)] = Fraction(1)
            e_cache[k] = out
        return e_cache[k]

    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                key = tuple(x + y for x, y in zip(m1, m2))
                val = out.get(key, 0) + c1 * c2
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    work = dict(terms)
    result: dict = {}
    while work:
        mono = max(work, key=lambda m: (sum(m[start : start + width]), m))
        block = list(mono[start : start + width])
        if not block or max(block, default=0) == 0:
            # no block content left; pass the term through
            result[mono] = result.get(mono, 0) + work.pop(mono)
            if result[mono] == 0:
                del result[mono]
            continue
        if any(block[k] < block[k + 1] for k in range(width - 1)):
            raise ContractViolation("x-content is not symmetric in the block")
        coeff = work[mono]
        conjugate = [sum(1 for part in block if part > col) for col in range(block[0])]
        pieces: dict = {tuple(0 for _ in range(total)): Fraction(1)}
        for col in conjugate:
            pieces = mul(pieces, e_poly(col))
        # subtract coeff * (outside part of mono) * prod e_{conjugate}
        outside = list(mono)
        for slot in range(start, start + width):
            outside[slot] = 0
        shifted = {
            tuple(x + y for x, y in zip(m, outside)): c * coeff
            for m, c in pieces.items()
        }
        for m, c in shifted.items():
            val = work.get(m, 0) - c
            if val:
                work[m] = val
            else:
                work.pop(m, None)
        # record: z-exponents live in the same slots (z_k at start + k - 1)
        zmono = list(outside)
        for col in conjugate:
            zmono[start + col - 1] += 1
        key = tuple(zmono)
        val = result.get(key, 0) + coeff
        if val:
            result[key] = val
        else:
            result.pop(key, None)
    return result


def to_chern_basis(cls: EquivariantClass) -> ChernExpression:
    """Rewrite the x-content over Chern generators.

    For the split general-linear pair the polynomial must be symmetric in
    each x-block separately and is rewritten in block elementary symmetric
    functions z1..zp, z_{p+1}..z_{p+q}.  For the other type A pairs the
    x-content must be a multiple of x1*...*xn, which becomes the euler
    symbol.
    """
    pair = cls.pair
    space = pair.variable_space()
    n, m = space.x_count, space.y_count
    if pair.case == A_GLPQ:
        p, q = pair.p, pair.q
        terms = dict(cls.polynomial.terms)
        if not _block_symmetric(terms, 0, p) or not _block_symmetric(terms, p, q):
            raise ContractViolation("class is not symmetric in the x-blocks")
        terms = _elementary_exponents_block(terms, 0, p)
        terms = _elementary_exponents_block(terms, p, q)
        out_space = VariableSpace(p + q + 1, m)
        out_terms = {}
        for mono, coeff in terms.items():
            key = tuple(mono[:n]) + (0,) + tuple(mono[n:])
            out_terms[key] = coeff
        return ChernExpression(pair, (p, q), Polynomial(out_space, out_terms))
    if pair.case in (A_SO_ODD, A_SO_EVEN, A_SP):
        out_space = VariableSpace(1, m)
        out_terms = {}
        for mono, coeff in cls.polynomial.terms.items():
            xpart = mono[:n]
            if any(xpart) and len(set(xpart)) != 1:
                raise ContractViolation(
                    "x-content is not a multiple of the full x-monomial"
                )
            power = xpart[0] if xpart else 0
            key = (power,) + tuple(mono[n:])
            out_terms[key] = out_terms.get(key, 0) + coeff
        return ChernExpression(pair, (0, 0), Polynomial(out_space, out_terms))
    raise ContractViolation("Chern rewriting is a type A operation")


# ---------------------------------------------------------------------------
# tables, fixtures, verification


def format_table(
    pair: SymmetricPair,
    classes: dict[OrbitParameter, EquivariantClass],
    fmt: str = "table",
) -> str:
    graph = build_weak_order_graph(pair)
    rows = [(str(param), str(classes[param].polynomial)) for param in graph.nodes]
    if fmt == "machine":
        return "\n".join(f"{param} := {poly}" for param, poly in rows) + "\n"
    if fmt == "csv":
        out = ["parameter,formula"]
        for param, poly in rows:
            out.append(f'"{param}","{poly}"')
        return "\n".join(out) + "\n"
    if fmt == "table":
        width = max(len(param) for param, _ in rows)
        return "\n".join(f"{param:<{width}}  {poly}" for param, poly in rows) + "\n"
    raise UsageError(f"unknown table format {fmt!r}")


def parse_fixture(text: str) -> tuple[Optional[str], list[tuple[str, str]]]:
    """Fixture files: comment headers, then ``parameter := polynomial``
    lines.  A ``# pair:`` header names the symmetric pair."""
    pair_spec = None
    rows: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("pair:"):
                pair_spec = body[5:].strip()
            continue
        if ":=" not in line:
            raise UsageError(f"fixture line {lineno} lacks ':='")
        param_text, poly_text = line.split(":=", 1)
        rows.append((param_text.strip(), poly_text.strip()))
    return pair_spec, rows


def class_for_parameter(
    pair: SymmetricPair,
    classes: dict[OrbitParameter, EquivariantClass],
    param_text: str,
) -> EquivariantClass:
    """Look up a parameter string, treating an untagged split involution
    as the union of its two components (their classes add)."""
    param = parse_orbit_parameter(pair, param_text, allow_union=True)
    if param in classes:
        return classes[param]
    if pair.case == A_SO_EVEN and isinstance(param, InvolutionOrbit):
        plus = SplitOrbit(param.involution, PLUS)
        minus = SplitOrbit(param.involution, MINUS)
        if plus in classes and minus in classes:
            return EquivariantClass(
                pair, classes[plus].polynomial + classes[minus].polynomial
            )
    raise UsageError(f"unknown orbit parameter {param_text!r}")


def verify_rows(
    pair: SymmetricPair,
    rows: list[tuple[str, str]],
    literal: bool = False,
) -> list[tuple[str, bool]]:
    """Check fixture rows against propagated classes.

    Default comparison is localization equality; ``literal`` demands the
    exact canonical polynomial.
    """
    space = pair.variable_space()
    classes = propagate_all(pair)
    results = []
    for param_text, poly_text in rows:
        expected = parse_polynomial(poly_text, space)
        computed = class_for_parameter(pair, classes, param_text)
        if literal:
            ok = computed.polynomial == expected
        else:
            ok = equal_via_localization(
                computed, EquivariantClass(pair, expected)
            )
        results.append((param_text, ok))
    return results
