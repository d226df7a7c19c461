"""Beads in Q[b, b^-1], PUSH normal forms and the bead-degree grading.

A monomial bead assignment is an integer 1-cochain on the oriented edges
(edge ``k`` oriented as stored, ``edges[k][0] -> edges[k][1]``).  PUSH adds
coboundaries, so only the class in H^1 matters.  The class is recorded by
its values on the fundamental cycles of a breadth-first spanning forest of
the canonical representative, minimised over the automorphism group.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .canon import canonical_data, canonicalize, decode, encode, half_edge_automorphisms
from .diagram import Diagram, disjoint_union
from .errors import NonzeroBeadDegree, NotDivisible, ValidationError, WrongDegree
from .linear import LinComb, as_fraction
from .relations import ihx_terms, move_half_edges


class LaurentPoly:
    """Element of Q[b, b^-1] stored as ``{exponent: coefficient}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.coeffs = {int(e): as_fraction(c) for e, c in (coeffs or {}).items() if as_fraction(c)}

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    def bar(self) -> LaurentPoly:
        """The involution b -> b^-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * as_fraction(other) for e, c in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "b" if e == 1 else f"b^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    __repr__ = __str__


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:\s*/\s*\d+)?)?\s*
        (?P<star>\*)?\s*
        (?P<b>b(?:\s*\^\s*(?:\(\s*(?P<pe>[+-]?\d+)\s*\)|(?P<e>[+-]?\d+)))?)?\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse e.g. ``"2*b^3 - b^-1 + 1/2"``."""
    s = str(text).strip()
    if not s:
        raise ValidationError("empty bead polynomial")
    pos = 0
    out = LaurentPoly()
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValidationError(f"cannot parse bead {text!r} at position {pos}")
        if not first and not m.group("sign"):
            raise ValidationError(f"missing operator in bead {text!r}")
        if not m.group("coef") and not m.group("b"):
            raise ValidationError(f"empty term in bead {text!r}")
        if m.group("star") and not (m.group("coef") and m.group("b")):
            raise ValidationError(f"misplaced '*' in bead {text!r}")
        coef = Fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("b"):
            e = m.group("pe") or m.group("e")
            exp = int(e) if e is not None else 1
        else:
            exp = 0
        out = out + LaurentPoly.monomial(exp, coef)
        pos = m.end()
        first = False
    return out


@dataclass(frozen=True)
class BeadedDiagram:
    """Closed diagram with a bead on every edge (oriented as stored)."""

    diagram: Diagram
    beads: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if self.diagram.legs:
            raise ValidationError("beaded diagrams must be closed (no legs)")
        if len(self.beads) != len(self.diagram.edges):
            raise ValidationError("one bead per edge required")

    @classmethod
    def from_mapping(cls, d: Diagram, beads: Mapping[int, LaurentPoly]) -> BeadedDiagram:
        bad = [k for k in beads if not 0 <= int(k) < len(d.edges)]
        if bad:
            raise ValidationError(f"beads on missing edges {bad}")
        return cls(d, tuple(beads.get(k, LaurentPoly.one()) for k in range(len(d.edges))))

    def bead(self, k: int, reverse: bool = False) -> LaurentPoly:
        """Bead read along edge ``k``, or against it; f(-e) is the bar of f(e)."""
        return self.beads[k].bar() if reverse else self.beads[k]

    def reverse_edge(self, k: int) -> BeadedDiagram:
        beads = list(self.beads)
        beads[k] = beads[k].bar()
        return BeadedDiagram(self.diagram.reverse_edge(k), tuple(beads))


# --- cochains and classes -------------------------------------------------

def spanning_forest(
    d: Diagram,
    vertex_order: Sequence[int] | None = None,
    edge_order: Sequence[int] | None = None,
) -> tuple[list[int], list[int]]:
    """Breadth-first spanning forest: ``(tree_edges, cotree_edges)``.

    Roots are taken in ``vertex_order`` and incident edges scanned in
    ``edge_order`` (both default to index order).  Co-tree edges come back in
    ``edge_order``.
    """
    n = d.n_vertices
    vorder = list(vertex_order) if vertex_order is not None else list(range(n))
    eorder = list(edge_order) if edge_order is not None else list(range(len(d.edges)))
    rank = {k: i for i, k in enumerate(eorder)}
    inc: list[list[int]] = [[] for _ in range(n)]
    for k in eorder:
        a, b = d.edges[k]
        inc[a].append(k)
        if b != a:
            inc[b].append(k)
    seen = [False] * n
    tree: list[int] = []
    for root in vorder:
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for k in inc[v]:
                a, b = d.edges[k]
                w = b if a == v else a
                if not seen[w]:
                    seen[w] = True
                    tree.append(k)
                    queue.append(w)
    in_tree = set(tree)
    cotree = sorted((k for k in eorder if k not in in_tree), key=rank.__getitem__)
    return tree, cotree


def potentials(d: Diagram, x: Sequence[int], tree: Sequence[int]) -> list[int]:
    """0-cochain ``f`` with ``x - δf`` vanishing on ``tree`` (``f`` = 0 at roots)."""
    n = d.n_vertices
    f: list[int | None] = [None] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for k in tree:
        a, b = d.edges[k]
        adj[a].append(k)
        adj[b].append(k)
    for root in range(n):
        if f[root] is not None:
            continue
        f[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for k in adj[v]:
                a, b = d.edges[k]
                if a == v and f[b] is None:
                    f[b] = f[v] + x[k]  # type: ignore[operator]
                    stack.append(b)
                elif b == v and f[a] is None:
                    f[a] = f[v] - x[k]  # type: ignore[operator]
                    stack.append(a)
    return f  # type: ignore[return-value]


def class_coords(
    d: Diagram,
    x: Sequence[int],
    forest: tuple[list[int], list[int]] | None = None,
) -> tuple[int, ...]:
    """Values of the cocycle on the fundamental cycles of the co-tree edges."""
    tree, cotree = forest if forest is not None else spanning_forest(d)
    f = potentials(d, x, tree)
    out = []
    for k in cotree:
        a, b = d.edges[k]
        out.append(x[k] - (f[b] - f[a]))
    return tuple(out)


def normal_exponents(d: Diagram, coords: Sequence[int]) -> list[int]:
    """Cocycle that is zero on the forest and ``coords`` on the co-tree edges."""
    _, cotree = spanning_forest(d)
    if len(cotree) != len(coords):
        raise ValidationError(f"class has {len(coords)} coordinates, diagram needs {len(cotree)}")
    x = [0] * len(d.edges)
    for k, c in zip(cotree, coords):
        x[k] = c
    return x


def push(d: Diagram, x: Sequence[int], v: int, amount: int = 1) -> list[int]:
    """PUSH at ``v``: add ``amount`` times the coboundary of the indicator of ``v``."""
    out = list(x)
    for k, (a, b) in enumerate(d.edges):
        if a != b:
            out[k] += amount * ((b == v) - (a == v))
    return out


def bead_degree(coords: Sequence[int]) -> int:
    """gcd of the coordinates; 0 for the zero class."""
    g = 0
    for c in coords:
        g = math.gcd(g, int(c))
    return g


# --- canonical beaded forms -------------------------------------------------

@dataclass(frozen=True, order=True)
class GBeadedForm:
    """Canonical (diagram, class) pair; ``sign`` as for CanonicalForm."""

    encoding: bytes
    sign: int

    @property
    def base(self) -> bytes:
        return self.encoding.split(b";X", 1)[0]

    @property
    def coords(self) -> tuple[int, ...]:
        return key_coords(self.encoding)

    @property
    def bead_degree(self) -> int:
        return bead_degree(self.coords)

    @property
    def hex(self) -> str:
        return self.encoding.hex()

    def diagram(self) -> Diagram:
        return decode(self.base)


def key_coords(key: bytes) -> tuple[int, ...]:
    try:
        tail = key.split(b";X", 1)[1]
    except IndexError:
        raise ValidationError(f"not a beaded encoding: {key!r}") from None
    return tuple(int(c) for c in tail.decode().split(",") if c)


def beaded_key(base: bytes, coords: Sequence[int]) -> bytes:
    return base + b";X" + ",".join(str(int(c)) for c in coords).encode()


def act(g: Sequence[int], x: Sequence[int]) -> list[int]:
    """Transport a cochain along a half-edge map."""
    y = [0] * len(x)
    for k, val in enumerate(x):
        h = g[2 * k]
        y[h >> 1] = val if h % 2 == 0 else -val
    return y


def _connected_form(d: Diagram, x: Sequence[int]) -> tuple[Diagram, tuple[int, ...], int]:
    cd = canonical_data(d)
    rep = cd.rep
    x_rep = act(cd.hmap, x)
    best = None
    parities: set[int] = set()
    for g, par in half_edge_automorphisms(rep):
        c = class_coords(rep, act(g, x_rep))
        if best is None or c < best:
            best, parities = c, {par}
        elif c == best:
            parities.add(par)
    if len(parities) > 1:
        return rep, best, 0  # type: ignore[return-value]
    return rep, best, cd.raw_sign * (-1 if parities.pop() else 1)  # type: ignore[return-value]


def _sub_diagram(d: Diagram, comp: list[int], x: Sequence[int]):
    idx = {v: i for i, v in enumerate(comp)}
    ks = [k for k, (a, b) in enumerate(d.edges) if a in idx]
    knew = {k: i for i, k in enumerate(ks)}
    edges = tuple((idx[d.edges[k][0]], idx[d.edges[k][1]]) for k in ks)
    cyclic = tuple(
        tuple(2 * knew[h >> 1] + (h & 1) for h in d.cyclic[v]) for v in comp if v < d.trivalent
    )
    return Diagram(len(comp), (), edges, cyclic), [x[k] for k in ks]  # type: ignore[arg-type]


def push_normal_form(d: Diagram, x: Sequence[int]) -> GBeadedForm:
    """Canonical form of the closed diagram ``d`` with bead exponents ``x``.

    Invariant under PUSH moves, edge reorientation (with ``x`` negated on
    that edge) and isomorphisms of the input.
    """
    if d.legs:
        raise ValidationError("beaded diagrams must be closed (no legs)")
    if len(x) != len(d.edges):
        raise ValidationError("one exponent per edge required")
    comps = d.components()
    if len(comps) == 1:
        rep, coords, sign = _connected_form(d, x)
        return GBeadedForm(beaded_key(encode(rep), coords), sign)
    parts = []
    for comp in comps:
        sub, sx = _sub_diagram(d, comp, x)
        rep, coords, sign = _connected_form(sub, sx)
        parts.append((encode(rep), coords, sign, rep))
    parts.sort(key=lambda p: (p[0], p[1]))
    union = parts[0][3]
    for p in parts[1:]:
        union = disjoint_union(union, p[3])
    coords = tuple(c for p in parts for c in p[1])
    sign = math.prod(p[2] for p in parts)
    return GBeadedForm(beaded_key(encode(union), coords), sign)


def expand_multilinear(bd: BeadedDiagram) -> LinComb:
    """Expand every bead into monomials; each term goes to its normal form."""
    acc: list[LinComb] = []
    per_edge = [p.terms() for p in bd.beads]
    for combo in itertools.product(*per_edge):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        form = push_normal_form(bd.diagram, [e for e, _ in combo])
        acc.append(LinComb.of(form, coeff))  # type: ignore[arg-type]
    return LinComb.sum(acc)


def split_by_bead_degree(v: LinComb) -> dict[int, LinComb]:
    parts: dict[int, dict[bytes, Fraction]] = {}
    for key, c in v.items():
        parts.setdefault(bead_degree(key_coords(key)), {})[key] = c
    return {p: LinComb(t) for p, t in sorted(parts.items())}


def embed_classical(v: LinComb) -> LinComb:
    """Classical closed diagrams as beaded ones with the zero class."""

    def fn(key: bytes):
        d = decode(key)
        form = push_normal_form(d, [0] * len(d.edges))
        return form.encoding, form.sign

    return v.map_keys(fn)


def psi(v: LinComb) -> LinComb:
    """b -> 1 on the bead-degree-zero part: forget the (zero) classes."""

    def fn(key: bytes):
        if any(key_coords(key)):
            raise NonzeroBeadDegree(f"term {key!r} has nonzero bead degree")
        cf = canonicalize(decode(key))
        return cf.encoding, cf.sign

    return v.map_keys(fn)


def phi(p: int, v: LinComb) -> LinComb:
    """b -> b^p, from bead degree 1 to bead degree ``p``."""
    if p < 1:
        raise ValidationError("phi needs p >= 1")

    def fn(key: bytes):
        coords = key_coords(key)
        if bead_degree(coords) != 1:
            raise WrongDegree(f"phi expects bead degree 1, got {bead_degree(coords)}")
        return beaded_key(key.split(b";X", 1)[0], [p * c for c in coords]), 1

    return v.map_keys(fn)


def unphi(p: int, v: LinComb) -> LinComb:
    """Inverse of :func:`phi`; H^1 of a graph has no torsion, so division is exact."""
    if p < 1:
        raise ValidationError("unphi needs p >= 1")

    def fn(key: bytes):
        coords = key_coords(key)
        if any(c % p for c in coords):
            raise NotDivisible(f"class {coords} is not divisible by {p}")
        scaled = [c // p for c in coords]
        if bead_degree(scaled) != 1:
            raise WrongDegree(f"unphi expects bead degree {p}, got {bead_degree(coords)}")
        return beaded_key(key.split(b";X", 1)[0], scaled), 1

    return v.map_keys(fn)


# --- beaded IHX ----------------------------------------------------------------

def beaded_ihx_terms(d: Diagram, x: Sequence[int], k: int) -> list[tuple[Diagram, list[int]]]:
    """IHX at edge ``k`` after pushing its bead to 1 at the tail vertex."""
    u, _ = d.edges[k]
    y = push(d, x, u, x[k])
    assert y[k] == 0
    return [(t, list(y)) for t in ihx_terms(d, k)]


def beaded_ihx_relation(d: Diagram, x: Sequence[int], k: int) -> LinComb:
    return LinComb.sum(LinComb.of(push_normal_form(t, y)) for t, y in beaded_ihx_terms(d, x, k))  # type: ignore[arg-type]


@dataclass(frozen=True)
class Collapsed:
    """Graph with edge ``e`` contracted to a 4-valent vertex, plus a cocycle on it.

    ``star`` lists the four half-edges at the merged vertex in the cyclic
    sense ``(a, b)`` from the tail and ``(c, d)`` from the head of ``e``.
    """

    source: Diagram
    edge: int
    merged: int
    star: tuple[int, int, int, int]
    cochain: tuple[int, ...]  # indexed by source edges; value on ``edge`` unused


def collapse(d: Diagram, x: Sequence[int], k: int) -> Collapsed:
    """Contract edge ``k``; the cocycle is first made zero on ``k`` by PUSH at its head."""
    u, w = d.edges[k]
    if u == w or d.is_leg(u) or d.is_leg(w):
        raise ValidationError(f"edge {k} does not join two distinct trivalent vertices")
    y = push(d, x, w, -x[k])
    assert y[k] == 0
    cu = d.cyclic[u]
    cw = d.cyclic[w]
    i, j = cu.index(2 * k), cw.index(2 * k + 1)
    a, b = cu[(i + 1) % 3], cu[(i + 2) % 3]
    c, dd = cw[(j + 1) % 3], cw[(j + 2) % 3]
    return Collapsed(d, k, u, (a, b, c, dd), tuple(y))


def pullback_ihx_relation(col: Collapsed) -> LinComb:
    """The relation (K_I, p*x) = (K_H, p*x) - (K_X, p*x), built from the collapse.

    Each expansion of the merged vertex gets the pulled-back cochain: the
    collapsed values on old edges and zero on the new edge.
    """
    d, k = col.source, col.edge
    u, w = d.edges[k]
    a, b, c, dd = col.star
    pulled = list(col.cochain)
    pulled[k] = 0
    eu, ew = 2 * k, 2 * k + 1
    terms = []
    for pu, pw in (((a, b), (c, dd)), ((b, c), (a, dd)), ((c, a), (b, dd))):
        moves = {h: u for h in pu}
        moves.update({h: w for h in pw})
        g = move_half_edges(d, moves, {u: (eu,) + pu, w: (ew,) + pw})
        terms.append(LinComb.of(push_normal_form(g, pulled)))  # type: ignore[arg-type]
    return LinComb.sum(terms)
