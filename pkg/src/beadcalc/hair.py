"""The hair map: beads b^n become exp(n * leg), truncated at a total degree."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .beads import GBeadedForm, key_coords, normal_exponents
from .canon import canonicalize, decode
from .diagram import HAIR, Diagram
from .errors import CapExceeded, TruncationTooSmall, ValidationError
from .linear import LinComb
from .relations import reduce_element

DEFAULT_TRUNCATION = 7


def plant_legs(d: Diagram, counts: Sequence[int]) -> Diagram:
    """Plant ``counts[k]`` unlabeled legs along edge ``k``.

    Each new vertex is oriented (incoming segment, leg, outgoing segment)
    with respect to the stored direction of the edge.
    """
    total = sum(counts)
    t = d.trivalent
    nt = t + total
    shift = lambda v: v if v < t else v + total  # noqa: E731
    edges = [(shift(a), shift(b)) for a, b in d.edges]
    cyclic = [list(c) for c in d.cyclic] + [None] * total  # type: ignore[list-item]
    legs = list(d.legs)
    nxt = t
    for k, m in enumerate(counts):
        if not m:
            continue
        a, b = edges[k]
        chain = list(range(nxt, nxt + m))
        nxt += m
        # edge k keeps its tail half-edge and now ends at the first new vertex
        edges[k] = (a, chain[0])
        prev_in = 2 * k + 1
        for i, y in enumerate(chain):
            leg_v = nt + len(legs)
            legs.append(HAIR)
            edges.append((y, leg_v))
            leg_h = 2 * (len(edges) - 1)
            target = chain[i + 1] if i + 1 < m else b
            edges.append((y, target))
            out_h = 2 * (len(edges) - 1)
            cyclic[y] = [prev_in, leg_h, out_h]
            prev_in = out_h + 1
        # the head of the original edge now sees the last segment
        for v in range(t):
            cyclic[v] = [prev_in if h == 2 * k + 1 else h for h in cyclic[v]]
    return Diagram(
        nt,
        tuple(legs),
        tuple(edges),
        tuple(tuple(c) for c in cyclic),  # type: ignore[arg-type]
    )


def hair_expand_cocycle(d: Diagram, x: Sequence[int], truncate: int) -> LinComb:
    """Expansion of one presentation (not necessarily normalised) up to ``truncate``."""
    if d.legs:
        raise ValidationError("the hair map takes closed diagrams")
    base = d.degree
    if truncate < base:
        raise TruncationTooSmall(f"truncation {truncate} below base degree {base}")
    budget = truncate - base
    active = [k for k, n in enumerate(x) if n]
    acc: list[LinComb] = []
    for ks in itertools.product(range(budget + 1), repeat=len(active)):
        if sum(ks) > budget:
            continue
        coeff = Fraction(1)
        counts = [0] * len(d.edges)
        for k, m in zip(active, ks):
            coeff *= Fraction(x[k] ** m, math.factorial(m))
            counts[k] = m
        acc.append(LinComb.of(canonicalize(plant_legs(d, counts)), coeff))
    return LinComb.sum(acc)


def hair_expand(g: GBeadedForm, truncate: int) -> LinComb:
    """Expansion of a canonical beaded form using its normal-form exponents."""
    d = g.diagram()
    x = normal_exponents(d, g.coords)
    if truncate < d.degree:
        raise TruncationTooSmall(f"truncation {truncate} below base degree {d.degree}")
    if not g.sign:
        return LinComb()
    return hair_expand_cocycle(d, x, truncate).scale(g.sign)


def _check_truncation(truncate: int, cap: int | None) -> None:
    limit = DEFAULT_TRUNCATION if cap is None else cap
    if truncate > limit:
        raise CapExceeded(f"truncation {truncate} exceeds cap {limit}")


@dataclass
class TruncatedHairy:
    """Reduced image of the hair map in every degree up to ``truncate``."""

    truncate: int
    by_degree: dict[int, LinComb] = field(default_factory=dict)

    @property
    def total(self) -> LinComb:
        return LinComb.sum(self.by_degree.values())

    def part(self, degree: int) -> LinComb:
        return self.by_degree.get(degree, LinComb())

    def is_zero(self, degree: int) -> bool:
        return not self.part(degree)

    def restrict(self, degree: int) -> TruncatedHairy:
        return TruncatedHairy(degree, {d: v for d, v in self.by_degree.items() if d <= degree})


def reduce_hairy(raw: LinComb, truncate: int) -> TruncatedHairy:
    by_degree: dict[int, LinComb] = {}
    for (deg, _), red in reduce_element(raw, cap=max(truncate, 1)).items():
        if red:
            by_degree[deg] = by_degree.get(deg, LinComb()) + red
    return TruncatedHairy(truncate, {d: v for d, v in sorted(by_degree.items()) if v})


def hair(v: LinComb, truncate: int, cap: int | None = None) -> TruncatedHairy:
    """Hair map of a combination of beaded forms, reduced modulo AS/IHX per degree."""
    _check_truncation(truncate, cap)
    acc = []
    for key, c in v.items():
        g = GBeadedForm(key, 1)
        acc.append(hair_expand(g, truncate).scale(c))
    return reduce_hairy(LinComb.sum(acc), truncate)


def hair_of_presentation(d: Diagram, x: Sequence[int], truncate: int, cap: int | None = None) -> TruncatedHairy:
    _check_truncation(truncate, cap)
    return reduce_hairy(hair_expand_cocycle(d, x, truncate), truncate)


def kernel_check(v: LinComb, truncate: int, cap: int | None = None) -> dict[int, bool]:
    """Per degree ``1..truncate``: does the hair image vanish there?"""
    image = hair(v, truncate, cap)
    return {d: image.is_zero(d) for d in range(1, truncate + 1)}


def base_degree(key: bytes) -> int:
    key_coords(key)
    return decode(key).degree
