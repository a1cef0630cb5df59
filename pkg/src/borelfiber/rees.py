"""Rees ideals of Borel ideals: the lift from the toric side.

A Rees monomial is a pair of an x-part (ordinary monomial) and a Y-part
(multiset of generator indices); its image under the defining map is the
product of the x-part with the images of the Y factors, with the t-degree
tracked structurally as the number of Y factors.  The Groebner basis of the
Rees ideal is the union of the linear syzygies ``x_j Y_u - x_i Y_v`` (for
generator pairs with ``x_j u = x_i v``) and the toric quadrics, marked by
the elimination order: compare x-parts by lex first, break ties by the
fiber sink order on Y-parts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from borelfiber.borel import GeneratorTable
from borelfiber.fiber import FiberPoint, fiber_sink_key, point_product
from borelfiber.monomials import Monomial, format_monomial, multiply, unit
from borelfiber.toric import (
    GroebnerReport,
    SPairFailure,
    _contains,
    _lcm,
    _replace,
    quadric_generators,
)


@dataclass(frozen=True)
class ReesMonomial:
    xpart: Monomial
    ypart: FiberPoint


@dataclass(frozen=True)
class ReesBinomial:
    lead: ReesMonomial
    trail: ReesMonomial


def rees_key(table: GeneratorTable, m: ReesMonomial) -> tuple:
    """Elimination-order sort key; larger key means larger monomial."""
    return (m.xpart, fiber_sink_key(table, m.ypart))


def rees_compare(table: GeneratorTable, m1: ReesMonomial, m2: ReesMonomial) -> int:
    """1 when m1 is larger than m2 in the elimination order, -1/0 otherwise."""
    k1, k2 = rees_key(table, m1), rees_key(table, m2)
    if k1 > k2:
        return 1
    if k1 < k2:
        return -1
    return 0


def rees_image(table: GeneratorTable, m: ReesMonomial) -> Monomial:
    """Multidegree of the monomial: x-part times the Y factors' product."""
    return multiply(m.xpart, point_product(table, m.ypart))


def linear_syzygies(table: GeneratorTable) -> list[ReesBinomial]:
    """All binomials x_j Y_u - x_i Y_v with x_j u = x_i v, marked, one per pair."""
    n = table.context.n
    gens = table.generators
    out: list[ReesBinomial] = []
    for t in range(len(gens)):
        for u in range(t + 1, len(gens)):
            diff = [a - b for a, b in zip(gens[t], gens[u])]
            plus = [pos for pos, v in enumerate(diff) if v == 1]
            minus = [pos for pos, v in enumerate(diff) if v == -1]
            if len(plus) != 1 or len(minus) != 1 or any(abs(v) > 1 for v in diff):
                continue
            i, j = plus[0], minus[0]
            xi, xj = list(unit(n)), list(unit(n))
            xi[i] += 1
            xj[j] += 1
            first = ReesMonomial(tuple(xj), (t,))
            second = ReesMonomial(tuple(xi), (u,))
            if rees_key(table, first) > rees_key(table, second):
                out.append(ReesBinomial(lead=first, trail=second))
            else:
                out.append(ReesBinomial(lead=second, trail=first))
    return out


@dataclass(frozen=True)
class ReesBasis:
    table: GeneratorTable
    elements: tuple[ReesBinomial, ...]

    @cached_property
    def _ybuckets(self) -> dict[int, tuple[int, ...]]:
        """Element positions by every Y generator in the lead (overlap tests)."""
        buckets: dict[int, list[int]] = {}
        for pos, el in enumerate(self.elements):
            for g in set(el.lead.ypart):
                buckets.setdefault(g, []).append(pos)
        return {g: tuple(ps) for g, ps in buckets.items()}

    @cached_property
    def _min_ybuckets(self) -> dict[int, tuple[int, ...]]:
        """Element positions by the smallest lead Y generator (reducer search)."""
        buckets: dict[int, list[int]] = {}
        for pos, el in enumerate(self.elements):
            buckets.setdefault(el.lead.ypart[0], []).append(pos)
        return {g: tuple(ps) for g, ps in buckets.items()}

    @cached_property
    def _lead_shapes(self) -> tuple[tuple[tuple[tuple[int, int], ...], FiberPoint], ...]:
        """Per element: nonzero x requirements and the lead Y-part."""
        return tuple(
            (
                tuple((v, e) for v, e in enumerate(el.lead.xpart) if e),
                el.lead.ypart,
            )
            for el in self.elements
        )

    @cached_property
    def _nf_cache(self) -> dict[ReesMonomial, ReesMonomial]:
        return {}


def _divides(m: ReesMonomial, lead: ReesMonomial) -> bool:
    return all(a <= b for a, b in zip(lead.xpart, m.xpart)) and _contains(m.ypart, lead.ypart)


def _apply(m: ReesMonomial, el: ReesBinomial) -> ReesMonomial:
    xpart = tuple(
        a - b + c for a, b, c in zip(m.xpart, el.lead.xpart, el.trail.xpart)
    )
    return ReesMonomial(xpart, _replace(m.ypart, el.lead.ypart, el.trail.ypart))


def rees_normal_form(m: ReesMonomial, basis: ReesBasis) -> ReesMonomial:
    """Reduce by the lowest-index applicable lead until none applies."""
    cache = basis._nf_cache
    cached = cache.get(m)
    if cached is not None:
        return cached
    shapes = basis._lead_shapes
    elements = basis.elements
    chain = [m]
    current = m
    while True:
        xpart, ypart = current.xpart, current.ypart
        candidates = sorted(
            {p for g in set(ypart) for p in basis._min_ybuckets.get(g, ())}
        )
        nxt = None
        for pos in candidates:
            xreq, ylead = shapes[pos]
            applicable = True
            for v, e in xreq:
                if xpart[v] < e:
                    applicable = False
                    break
            if applicable and _contains(ypart, ylead):
                nxt = _apply(current, elements[pos])
                break
        if nxt is None:
            break
        current = nxt
        cached = cache.get(current)
        if cached is not None:
            current = cached
            break
        chain.append(current)
    for z in chain:
        cache[z] = current
    return current


def rees_gb(table: GeneratorTable) -> ReesBasis:
    """Linear syzygies plus the toric quadrics with unit x-parts.

    Every element has joint degree two, which is the executable form of
    Koszulness of the Rees algebra for two-Borel tables.
    """
    n = table.context.n
    elements = list(linear_syzygies(table))
    for el in quadric_generators(table).elements:
        elements.append(
            ReesBinomial(
                lead=ReesMonomial(unit(n), el.lead),
                trail=ReesMonomial(unit(n), el.trail),
            )
        )
    return ReesBasis(table, tuple(elements))


def _rees_lcm(a: ReesMonomial, b: ReesMonomial) -> ReesMonomial:
    return ReesMonomial(
        tuple(max(p, q) for p, q in zip(a.xpart, b.xpart)), _lcm(a.ypart, b.ypart)
    )


def _spair_sides(lcm: ReesMonomial, el: ReesBinomial) -> ReesMonomial:
    return _apply(lcm, el)


def rees_buchberger_verify(basis: ReesBasis, strict: bool = False) -> GroebnerReport:
    """S-pair check over mixed monomials; PASS when every pair reduces to zero."""
    table = basis.table
    for el in basis.elements:
        if rees_key(table, el.lead) <= rees_key(table, el.trail):
            raise ValueError(
                f"inconsistent marking: lead {el.lead} is not larger than trail {el.trail}"
            )
    elements = basis.elements
    if strict:
        pairs = set(itertools.combinations(range(len(elements)), 2))
    else:
        pairs = set()
        for positions in basis._ybuckets.values():
            pairs.update(itertools.combinations(positions, 2))
        xbuckets: dict[int, list[int]] = {}
        for pos, el in enumerate(elements):
            for v, e in enumerate(el.lead.xpart):
                if e > 0:
                    xbuckets.setdefault(v, []).append(pos)
        for positions in xbuckets.values():
            pairs.update(itertools.combinations(positions, 2))
    failures = []
    for p, q in sorted(pairs):
        f, g = elements[p], elements[q]
        lcm = _rees_lcm(f.lead, g.lead)
        a = _spair_sides(lcm, f)
        b = _spair_sides(lcm, g)
        if a == b:
            continue
        if rees_normal_form(a, basis) != rees_normal_form(b, basis):
            failures.append(SPairFailure(p, q, rees_image(table, lcm)))
    return GroebnerReport(
        ok=not failures,
        pairs_checked=len(pairs),
        failures=tuple(failures),
        context_names=table.context.names,
    )


def rees_basis_to_json(basis: ReesBasis) -> dict:
    table = basis.table

    def fmt_y(point: FiberPoint) -> list[str]:
        return [format_monomial(table.generators[i], table.context) for i in point]

    return {
        "elements": [
            {
                "x_lead": format_monomial(el.lead.xpart, table.context),
                "y_lead": fmt_y(el.lead.ypart),
                "x_trail": format_monomial(el.trail.xpart, table.context),
                "y_trail": fmt_y(el.trail.ypart),
            }
            for el in basis.elements
        ],
        "count": len(basis.elements),
    }
