"""Fiber graphs of a Borel ideal and the fiber sink order.

A fiber point is a factorization of a multidegree mu into minimal
generators, stored as an ascending tuple of generator indices into a
:class:`~borelfiber.borel.GeneratorTable`.  Two points are adjacent in the
fiber graph when one becomes the other by a Borel move on one factor paired
with the matching reverse Borel move on another; each edge is directed
toward the point that is later (smaller) in the fiber sink order, the
graded reverse lex order on the table's variable order.

For two-Borel tables every nonempty fiber graph is a connected DAG with a
unique sink, which :func:`find_sink_direct` computes without building the
graph; :func:`build_fiber_graph` stays available as the explicit oracle.
"""

from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from borelfiber.borel import GeneratorTable, lex_last_divisor
from borelfiber.monomials import (
    Monomial,
    borel_move,
    degree,
    find_reverse_move,
    format_monomial,
    quotient,
    reverse_borel_move,
    sigma,
)

FiberPoint = tuple[int, ...]


def point_product(table: GeneratorTable, point: FiberPoint) -> Monomial:
    """Product of the point's factors; the unit monomial for the empty point."""
    out = [0] * table.context.n
    for idx in point:
        for pos, e in enumerate(table.generators[idx]):
            out[pos] += e
    return tuple(out)


def fiber_sink_key(table: GeneratorTable, point: FiberPoint) -> tuple:
    """Sort key for the fiber sink order; larger key means earlier point.

    Graded reverse lex: scanning variable positions from the last backward,
    the first difference in multiplicity decides, and the point with the
    smaller multiplicity there is the larger one.
    """
    counts = [0] * len(table.generators)
    for idx in point:
        counts[idx] += 1
    counts.reverse()
    return (len(point), tuple(-c for c in counts))


def compare_fiber_points(table: GeneratorTable, z1: FiberPoint, z2: FiberPoint) -> int:
    """1 when z1 is earlier (larger) than z2, -1 when later, 0 when equal."""
    k1, k2 = fiber_sink_key(table, z1), fiber_sink_key(table, z2)
    if k1 > k2:
        return 1
    if k1 < k2:
        return -1
    return 0


class _FiberSolver:
    """Per-table caches for factorization search."""

    def __init__(self, table: GeneratorTable):
        self.table = table
        self._can: dict[tuple[Monomial, int], bool] = {}
        self._gm: dict[Monomial, bool] = {}

    def can_factor(self, remaining: Monomial, start: int = 0) -> bool:
        """Is there a factorization of ``remaining`` using generator indices >= start?"""
        if not any(remaining):
            return True
        key = (remaining, start)
        hit = self._can.get(key)
        if hit is not None:
            return hit
        gens = self.table.generators
        ok = False
        for idx in range(start, len(gens)):
            g = gens[idx]
            if all(e <= r for e, r in zip(g, remaining)):
                rest = tuple(r - e for r, e in zip(remaining, g))
                if self.can_factor(rest, idx):
                    ok = True
                    break
        self._can[key] = ok
        return ok

    def has_gm_factorization(self, mu: Monomial) -> bool:
        """Does some factorization of mu use at least one G_M generator?"""
        hit = self._gm.get(mu)
        if hit is not None:
            return hit
        gens = self.table.generators
        ok = False
        for idx in sorted(self.table.gm_indices):
            g = gens[idx]
            if all(e <= r for e, r in zip(g, mu)):
                rest = tuple(r - e for r, e in zip(mu, g))
                if self.can_factor(rest):
                    ok = True
                    break
        self._gm[mu] = ok
        return ok

    def enumerate(self, mu: Monomial) -> list[FiberPoint]:
        gens = self.table.generators
        out: list[FiberPoint] = []
        picked: list[int] = []

        def rec(remaining: Monomial, start: int) -> None:
            if not any(remaining):
                out.append(tuple(picked))
                return
            for idx in range(start, len(gens)):
                g = gens[idx]
                if all(e <= r for e, r in zip(g, remaining)):
                    rest = tuple(r - e for r, e in zip(remaining, g))
                    if self.can_factor(rest, idx):
                        picked.append(idx)
                        rec(rest, idx)
                        picked.pop()

        rec(mu, 0)
        return out

    @cached_property
    def pair_transitions(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        """For each ordered generator pair, the paired-move replacements.

        ``(g1, g2) -> ((h1, h2), ...)`` where h1 arises from g1 by a Borel
        move and h2 from g2 by the matching reverse move, with both results
        again minimal generators.
        """
        table = self.table
        gens = table.generators
        index_of = table.index_of
        n = table.context.n
        out: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for g1, e1 in enumerate(gens):
            for g2, e2 in enumerate(gens):
                moves = []
                for j in range(1, n):
                    if e1[j] == 0:
                        continue
                    for i in range(j):
                        if e2[i] == 0:
                            continue
                        h1 = index_of.get(borel_move(e1, j, i))
                        if h1 is None:
                            continue
                        h2 = index_of.get(reverse_borel_move(e2, i, j))
                        if h2 is not None:
                            moves.append((h1, h2))
                if moves:
                    out[(g1, g2)] = tuple(moves)
        return out


_SOLVER_CACHE: "OrderedDict[GeneratorTable, _FiberSolver]" = OrderedDict()
_SOLVER_CACHE_SIZE = 8


def _solver(table: GeneratorTable) -> _FiberSolver:
    solver = _SOLVER_CACHE.get(table)
    if solver is None:
        solver = _FiberSolver(table)
        _SOLVER_CACHE[table] = solver
        while len(_SOLVER_CACHE) > _SOLVER_CACHE_SIZE:
            _SOLVER_CACHE.popitem(last=False)
    else:
        _SOLVER_CACHE.move_to_end(table)
    return solver


def enumerate_fiber(table: GeneratorTable, mu: Monomial) -> list[FiberPoint]:
    """All factorizations of mu into generators, ascending index tuples.

    Empty when the degree of mu is not a multiple of the generating degree;
    the fiber of the unit monomial is the single empty point.
    """
    if len(mu) != table.context.n:
        raise ValueError("mu lives in a different variable context")
    if degree(mu) == 0:
        return [()]
    if table.is_empty or degree(mu) % table.degree != 0:
        return []
    return _solver(table).enumerate(mu)


@dataclass(frozen=True)
class FiberGraph:
    """Directed fiber graph; vertices sorted earliest-first, edges (from, to)."""

    table: GeneratorTable
    mu: Monomial
    vertices: tuple[FiberPoint, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        out = [0] * len(self.vertices)
        for a, _ in self.edges:
            out[a] += 1
        return tuple(out)


def build_fiber_graph(table: GeneratorTable, mu: Monomial) -> FiberGraph:
    """Enumerate the fiber of mu and orient its paired-move edges.

    Vertices are sorted by descending fiber sink order, so every directed
    edge runs from a smaller vertex index to a larger one and the graph is
    acyclic by construction.
    """
    vertices = enumerate_fiber(table, mu)
    vertices.sort(key=lambda p: fiber_sink_key(table, p), reverse=True)
    vindex = {v: i for i, v in enumerate(vertices)}
    transitions = _solver(table).pair_transitions if vertices else {}
    edges: set[tuple[int, int]] = set()
    for vi, z in enumerate(vertices):
        t = len(z)
        for s1 in range(t):
            for s2 in range(t):
                if s1 == s2:
                    continue
                for h1, h2 in transitions.get((z[s1], z[s2]), ()):
                    moved = list(z)
                    moved[s1] = h1
                    moved[s2] = h2
                    moved.sort()
                    w = tuple(moved)
                    if w == z:
                        continue
                    wi = vindex[w]
                    edges.add((vi, wi) if vi < wi else (wi, vi))
    return FiberGraph(table=table, mu=mu, vertices=tuple(vertices), edges=tuple(sorted(edges)))


def sinks(graph: FiberGraph) -> list[FiberPoint]:
    """Vertices with no outgoing edge, earliest first."""
    return [v for v, d in zip(graph.vertices, graph.out_degrees) if d == 0]


def fiber_point_type(table: GeneratorTable, point: FiberPoint) -> str:
    """``"N"`` when every factor is tagged G_N, ``"M"`` otherwise.

    Since the G_M block follows the G_N block in the variable order, the tag
    of the last factor decides.
    """
    if not point:
        raise ValueError("the empty fiber point has no type")
    return "M" if table.tags[point[-1]] == "G_M" else "N"


def replacement_move(table: GeneratorTable, mu: Monomial, point: FiberPoint) -> Optional[FiberPoint]:
    """One strictly-later neighbor of ``point``, or None at the blocking factor.

    For a type M point the last factor w is pushed lex-later by the reverse
    Borel move toward the lex-last divisor M' of mu in Borel(M); the freed
    variable is absorbed by a Borel move on another factor.  Type N works the
    same way on the first factor toward N'.  No move exists once the point
    contains Y_{M'} (type M) or Y_{N'} (type N).
    """
    if not point:
        raise ValueError("the empty fiber point has no replacement")
    if len(table.roots) > 2:
        raise ValueError("replacement moves need a two-Borel or principal table")
    if point_product(table, point) != mu:
        raise ValueError("point is not in the fiber of mu")
    typ = fiber_point_type(table, point)
    if typ == "M":
        root, slot = table.roots[0], len(point) - 1
    else:
        root, slot = table.roots[-1], 0
    reduced_root = lex_last_divisor(root, mu)
    if reduced_root is None:
        raise ValueError("no generator of the relevant block divides mu")
    w = table.generators[point[slot]]
    if w == reduced_root:
        return None
    s, sp = sigma(w), sigma(reduced_root)
    j = max(idx for idx in range(len(w)) if s[idx] < sp[idx])
    i = find_reverse_move(w, reduced_root, j)
    moved = table.index_of[reverse_borel_move(w, i, j)]
    for r, pos in enumerate(point):
        if r == slot or table.generators[pos][j] == 0:
            continue
        companion = table.index_of[borel_move(table.generators[pos], j, i)]
        out = list(point)
        out[slot] = moved
        out[r] = companion
        out.sort()
        return tuple(out)
    raise AssertionError("another factor must carry the freed variable")


def find_sink_direct(table: GeneratorTable, mu: Monomial) -> Optional[FiberPoint]:
    """The unique sink of the fiber of mu, computed without the graph.

    Peels off one factor per step: the lex-last divisor M' of mu in Borel(M)
    whenever some factorization of mu touches the G_M block, else the
    lex-last divisor N' in Borel(N).  Every sink is divisible by the peeled
    factor, so recursing on the quotient reaches the sink of the whole
    fiber.  Returns None exactly when the fiber is empty.
    """
    if len(table.roots) > 2:
        raise ValueError("the direct sink algorithm needs a two-Borel or principal table")
    if degree(mu) == 0:
        return ()
    if table.is_empty or degree(mu) % table.degree != 0:
        return None
    solver = _solver(table)
    if not solver.can_factor(mu):
        return None
    picked: list[int] = []
    current = mu
    while degree(current) > 0:
        if solver.has_gm_factorization(current):
            factor = lex_last_divisor(table.roots[0], current)
        else:
            factor = lex_last_divisor(table.roots[-1], current)
        assert factor is not None, "a factorable multidegree admits a block divisor"
        picked.append(table.index_of[factor])
        current = quotient(current, factor)
        assert solver.can_factor(current), "peeling a sink factor keeps the rest factorable"
    return tuple(sorted(picked))


def vertex_label(table: GeneratorTable, point: FiberPoint) -> str:
    """Product-style label, e.g. ``Y_{b^5}Y_{ab^4}Y_{a^2c^3}``."""
    if not point:
        return "1"
    parts = []
    for idx, group in itertools.groupby(point):
        mult = len(list(group))
        name = "Y_{%s}" % format_monomial(table.generators[idx], table.context)
        parts.append(name + (f"^{mult}" if mult > 1 else ""))
    return "".join(parts)


def to_dot(graph: FiberGraph) -> str:
    """Deterministic DOT rendering with node ids v0..vk in vertex order."""
    lines = ["digraph fiber {"]
    for i, v in enumerate(graph.vertices):
        lines.append(f'  v{i} [label="{vertex_label(graph.table, v)}"];')
    for a, b in graph.edges:
        lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: FiberGraph) -> dict:
    table = graph.table
    return {
        "mu": format_monomial(graph.mu, table.context),
        "vertices": [
            {
                "factors": [
                    format_monomial(table.generators[idx], table.context) for idx in v
                ],
                "type": fiber_point_type(table, v) if v else None,
            }
            for v in graph.vertices
        ],
        "edges": [list(e) for e in graph.edges],
        "sinks": [i for i, d in enumerate(graph.out_degrees) if d == 0],
    }
