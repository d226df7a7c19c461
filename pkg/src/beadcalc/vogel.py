"""Vogel's algebra: totally antisymmetric elements of F_3 acting by insertion.

Degrees are half vertex counts throughout, so the tripod Y (the unit) has
degree 2 and inserting an element of degree ``m`` at a vertex of a diagram of
degree ``n`` yields degree ``n + m - 2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .canon import canonicalize, decode
from .diagram import Diagram
from .errors import CapExceeded, DegreeMismatch, NotInF3, NotTrivalent, ValidationError
from .linear import LinComb
from .relations import is_zero, quotient_basis

LAMBDA_CAP = 5
LEGS3 = ("1", "2", "3")


def planar(trivalent: int, legs: Sequence[str], edges, pos: Mapping[int, tuple], via: Mapping[int, tuple] | None = None) -> Diagram:
    """Diagram drawn in the plane with every vertex oriented counterclockwise.

    ``pos`` gives vertex coordinates; ``via`` optionally gives, per edge, a
    point the edge leaves towards (needed for parallel edges).
    """
    via = via or {}
    at: list[list[tuple[float, int]]] = [[] for _ in range(trivalent)]
    for k, (a, b) in enumerate(edges):
        for end, (x, y) in ((0, (a, b)), (1, (b, a))):
            if x < trivalent:
                tx, ty = via.get(k, pos[y])
                at[x].append((math.atan2(ty - pos[x][1], tx - pos[x][0]), 2 * k + end))
    cyclic = tuple(tuple(h for _, h in sorted(hs)) for hs in at)
    return Diagram(trivalent, tuple(legs), tuple(tuple(e) for e in edges), cyclic)  # type: ignore[arg-type]


def tripod() -> Diagram:
    """Y with legs 1, 2, 3 counterclockwise: the unit of the algebra."""
    return Diagram(1, LEGS3, ((0, 1), (0, 2), (0, 3)), ((0, 2, 4),))


def t_triangle() -> Diagram:
    """Legs 1 (top), 2 (lower left), 3 (lower right) on the corners of a triangle."""
    return planar(
        3,
        LEGS3,
        [(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 0)],
        {0: (0, 1), 1: (-1, -1), 2: (1, -1), 3: (0, 2), 4: (-2, -2), 5: (2, -2)},
    )


def t_bubble() -> Diagram:
    """Y with a bubble inserted on leg 1."""
    return planar(
        3,
        LEGS3,
        [(1, 3), (1, 2), (1, 2), (2, 0), (0, 4), (0, 5)],
        {0: (0, -1), 1: (0, 1), 2: (0, 0), 3: (0, 2), 4: (-1, -2), 5: (1, -2)},
        via={1: (-1, 0.5), 2: (1, 0.5)},
    )


def x_picture(n: int) -> Diagram:
    """Circle carrying leg 3, joined by ``n`` spokes to a path from leg 1 to leg 2.

    Drawn with leg 1 on the left, leg 2 on the right and leg 3 on top of the
    circle; ``x_picture(1)`` is Y with a bubble on leg 3.
    """
    if n < 1:
        raise ValidationError("x_n needs n >= 1")
    t = 2 * n + 1
    path = list(range(n))
    rim = list(range(n, 2 * n))
    top = 2 * n
    leg1, leg2, leg3 = t, t + 1, t + 2
    ring = [top] + rim[::-1]
    m = n + 1
    radius, cy = 1.5, 3.0

    def angle(j: float) -> float:
        return math.pi / 2 - 2 * math.pi * j / m

    pos: dict[int, tuple] = {}
    for j, v in enumerate(ring):
        pos[v] = (radius * math.cos(angle(j)), cy + radius * math.sin(angle(j)))
    for i in range(n):
        pos[path[i]] = (pos[rim[i]][0] if n > 1 else 0.0, 0.0)
    pos[leg1], pos[leg2], pos[leg3] = (-5.0, 0.0), (5.0, 0.0), (0.0, cy + 2 * radius)
    edges = [(path[0], leg1), (path[-1], leg2), (top, leg3)]
    edges += [(path[i], path[i + 1]) for i in range(n - 1)]
    edges += [(path[i], rim[i]) for i in range(n)]
    via = {}
    for j in range(m):
        via[len(edges)] = (radius * math.cos(angle(j + 0.5)), cy + radius * math.sin(angle(j + 0.5)))
        edges.append((ring[j], ring[(j + 1) % m]))
    return planar(t, LEGS3, edges, pos, via)


def _check_three_leg(v: LinComb) -> int:
    degree = None
    for key in v.keys():
        d = decode(key)
        if d.sorted_legs() != LEGS3 or not d.is_connected() or d.trivalent < 1:
            raise NotInF3(f"{key!r} is not a connected diagram on legs 1,2,3 with a trivalent vertex")
        if degree is None:
            degree = d.degree
        elif d.degree != degree:
            raise DegreeMismatch("F3 elements must be homogeneous")
    if degree is None:
        raise NotInF3("empty element has no degree; pass it explicitly")
    return degree


def relabel(v: LinComb, mapping: Mapping[str, str]) -> LinComb:
    def fn(key: bytes):
        cf = canonicalize(decode(key).relabel_legs(mapping))
        return cf.encoding, cf.sign

    return v.map_keys(fn)


def _perm_sign(p: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _three_leg_quotient(degree: int):
    if degree > LAMBDA_CAP:
        raise CapExceeded(f"Lambda degree {degree} exceeds cap {LAMBDA_CAP}")
    return quotient_basis(degree, LEGS3, connected=True, require_trivalent=True, cap=LAMBDA_CAP)


@dataclass(frozen=True)
class LambdaElement:
    """Reduced representative of an element of Vogel's algebra."""

    degree: int
    value: LinComb

    def certify(self) -> bool:
        """Every leg transposition acts by -1 modulo relations."""
        q = _three_leg_quotient(self.degree)
        for a, b in (("1", "2"), ("2", "3"), ("1", "3")):
            if q.project(relabel(self.value, {a: b, b: a}) + self.value):
                return False
        return True

    def __add__(self, other: LambdaElement) -> LambdaElement:
        if other.degree != self.degree:
            raise DegreeMismatch("Lambda elements of different degrees")
        return LambdaElement(self.degree, _three_leg_quotient(self.degree).project(self.value + other.value))

    def scale(self, c) -> LambdaElement:
        return LambdaElement(self.degree, self.value.scale(c))

    def is_zero(self) -> bool:
        return not _three_leg_quotient(self.degree).project(self.value)


def antisymmetrize(v: LinComb, degree: int | None = None) -> LambdaElement:
    """(1/6) sum over S_3 of sign(s) * s(v), certified and reduced."""
    deg = _check_three_leg(v) if v else degree
    if deg is None:
        raise NotInF3("empty element needs an explicit degree")
    acc = []
    for p in itertools.permutations(range(3)):
        mapping = {LEGS3[i]: LEGS3[p[i]] for i in range(3)}
        acc.append(relabel(v, mapping).scale(_perm_sign(p)))
    total = LinComb.sum(acc).scale(Fraction(1, 6))
    elem = LambdaElement(deg, _three_leg_quotient(deg).project(total))
    if not elem.certify():
        raise NotInF3("antisymmetrisation failed its certificate")
    return elem


def as_lambda(v: LinComb) -> LambdaElement:
    """Wrap an element already known to be antisymmetric; raises if it is not."""
    deg = _check_three_leg(v)
    elem = LambdaElement(deg, _three_leg_quotient(deg).project(v))
    if not elem.certify():
        raise NotInF3("element is not totally antisymmetric")
    return elem


def insert_diagram(piece: Diagram, d: Diagram, v: int) -> Diagram:
    """Replace trivalent vertex ``v`` of ``d`` by ``piece`` (legs 1, 2, 3).

    Leg ``i`` is glued to the ``i``-th half-edge at ``v``, counting in cyclic
    order from the least half-edge id.
    """
    if not 0 <= v < d.trivalent:
        raise NotTrivalent(f"vertex {v} is not trivalent")
    if piece.sorted_legs() != LEGS3:
        raise NotInF3("inserted diagram must have legs 1, 2, 3")
    cyc = d.cyclic[v]
    i0 = cyc.index(min(cyc))
    hs = cyc[i0:] + cyc[:i0]

    d_tri = [u for u in range(d.trivalent) if u != v]
    new_d = {u: i for i, u in enumerate(d_tri)}
    new_p = {u: len(d_tri) + u for u in range(piece.trivalent)}
    nt = len(d_tri) + piece.trivalent
    for j in range(len(d.legs)):
        new_d[d.trivalent + j] = nt + j

    edges: list[tuple[int, int]] = []
    hm_d: dict[int, int] = {}
    hm_p: dict[int, int] = {}
    for k, (a, b) in enumerate(d.edges):
        if v in (a, b):
            continue
        hm_d[2 * k], hm_d[2 * k + 1] = 2 * len(edges), 2 * len(edges) + 1
        edges.append((new_d[a], new_d[b]))
    leg_end: dict[str, int] = {}
    for k, (a, b) in enumerate(piece.edges):
        la, lb = piece.is_leg(a), piece.is_leg(b)
        if la and lb:
            raise NotInF3("inserted diagram has a strut")
        if la:
            leg_end[piece.legs[a - piece.trivalent]] = 2 * k + 1
        elif lb:
            leg_end[piece.legs[b - piece.trivalent]] = 2 * k
        else:
            hm_p[2 * k], hm_p[2 * k + 1] = 2 * len(edges), 2 * len(edges) + 1
            edges.append((new_p[a], new_p[b]))
    for i, h in enumerate(hs):
        p_h = leg_end[LEGS3[i]]
        o = h ^ 1
        if o in hs:
            j = hs.index(o)
            if i < j:
                q_h = leg_end[LEGS3[j]]
                hm_p[p_h], hm_p[q_h] = 2 * len(edges), 2 * len(edges) + 1
                edges.append((new_p[piece.vertex_of(p_h)], new_p[piece.vertex_of(q_h)]))
            continue
        hm_p[p_h], hm_d[o] = 2 * len(edges), 2 * len(edges) + 1
        edges.append((new_p[piece.vertex_of(p_h)], new_d[d.vertex_of(o)]))
    cyclic = [tuple(hm_d[h] for h in d.cyclic[u]) for u in d_tri]
    cyclic += [tuple(hm_p[h] for h in piece.cyclic[u]) for u in range(piece.trivalent)]
    return Diagram(nt, d.legs, tuple(edges), tuple(cyclic))  # type: ignore[arg-type]


def insert(lam: LambdaElement | LinComb, d: Diagram, v: int) -> LinComb:
    """Insert a combination of F_3 diagrams at trivalent vertex ``v`` of ``d``."""
    value = lam.value if isinstance(lam, LambdaElement) else lam
    acc = []
    for key, c in value.items():
        acc.append(LinComb.of(canonicalize(insert_diagram(decode(key), d, v)), c))
    return LinComb.sum(acc)


def insert_comb(lam: LambdaElement | LinComb, target: LinComb, vertex: int = 0) -> LinComb:
    """Insert at vertex ``vertex`` of the canonical representative of every term."""
    acc = []
    for key, c in target.items():
        acc.append(insert(lam, decode(key), vertex).scale(c))
    return LinComb.sum(acc)


def lambda_mult(a: LambdaElement, b: LambdaElement, vertex: int = 0) -> LambdaElement:
    """Product by insertion of ``a`` into the terms of ``b``."""
    deg = a.degree + b.degree - 2
    q = _three_leg_quotient(deg)
    return LambdaElement(deg, q.project(insert_comb(a, b.value, vertex)))


def unit() -> LambdaElement:
    return LambdaElement(2, LinComb.of(canonicalize(tripod())))


def t_pictures() -> tuple[LinComb, LinComb]:
    return LinComb.of(canonicalize(t_triangle())), LinComb.of(canonicalize(t_bubble()))


def builtin_t() -> LambdaElement:
    return as_lambda(t_pictures()[0])


def builtin_x(n: int) -> LambdaElement:
    if n < 1:
        raise ValidationError("x_n needs n >= 1")
    if n + 2 > LAMBDA_CAP:
        raise CapExceeded(f"x_{n} has degree {n + 2}, above the cap {LAMBDA_CAP}")
    return antisymmetrize(LinComb.of(canonicalize(x_picture(n))))


def verify_scalar_relation(lhs: LinComb, rhs: LinComb, degree: int, legs=LEGS3) -> bool:
    """Whether lhs = rhs modulo AS and IHX in the given degree."""
    return is_zero(lhs - rhs, degree, legs)
