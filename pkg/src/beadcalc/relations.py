"""IHX relations and quotient bases of diagram spaces.

The three-term relation at an internal edge ``e = (u, w)`` is written with
the cyclic orders rotated to ``u: (e, a, b)`` and ``w: (e, c, d)``::

    D[u:(e,a,b) w:(e,c,d)] + D[u:(e,b,c) w:(e,a,d)] + D[u:(e,c,a) w:(e,b,d)] = 0

which is the Jacobi identity for the structure constants sitting at the two
vertices, hence the relation every Lie algebra weight system respects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .canon import CanonicalForm, canonicalize, decode
from .diagram import Diagram, max_degree
from .enumerate import enumerate_diagrams
from .errors import CapExceeded, DegreeMismatch, ValidationError
from .linear import LinComb, RelationSpan


def _rotate_to(cyc: tuple[int, int, int], h: int) -> tuple[int, int, int]:
    i = cyc.index(h)
    return cyc[i:] + cyc[:i]  # type: ignore[return-value]


def move_half_edges(d: Diagram, moves: dict[int, int], cyclic: dict[int, tuple]) -> Diagram:
    """Reattach half-edges (``h -> vertex``) and overwrite some cyclic orders."""
    edges = [list(e) for e in d.edges]
    for h, x in moves.items():
        edges[h >> 1][h & 1] = x
    cyc = list(d.cyclic)
    for v, c in cyclic.items():
        cyc[v] = tuple(c)
    return Diagram(d.trivalent, d.legs, tuple(tuple(e) for e in edges), tuple(cyc))  # type: ignore[arg-type]


def ihx_terms(d: Diagram, k: int) -> tuple[Diagram, Diagram, Diagram]:
    """The three diagrams of the IHX relation at internal edge ``k``; they sum to zero."""
    u, w = d.edges[k]
    if u == w or d.is_leg(u) or d.is_leg(w):
        raise ValidationError(f"edge {k} does not join two distinct trivalent vertices")
    eu, ew = 2 * k, 2 * k + 1
    _, a, b = _rotate_to(d.cyclic[u], eu)
    _, c, dd = _rotate_to(d.cyclic[w], ew)
    t1 = move_half_edges(d, {}, {u: (eu, a, b), w: (ew, c, dd)})
    t2 = move_half_edges(d, {c: u, a: w}, {u: (eu, b, c), w: (ew, a, dd)})
    t3 = move_half_edges(d, {c: u, b: w}, {u: (eu, c, a), w: (ew, b, dd)})
    return t1, t2, t3


def ihx_relation(d: Diagram, k: int) -> LinComb:
    return LinComb.sum(LinComb.of(canonicalize(t)) for t in ihx_terms(d, k))


def ihx_generators(degree: int, legs=(), connected: bool = False, cap: int | None = None) -> list[LinComb]:
    """Deduplicated nonzero IHX relations among diagrams of one degree and leg set.

    Each relation is normalised to a monic leading term; the list is in a
    deterministic order.
    """
    found: dict[frozenset, LinComb] = {}
    for cf in enumerate_diagrams(degree, legs, connected=connected, cap=cap):
        d = cf.representative()
        for k in d.internal_edges():
            rel = ihx_relation(d, k).normalized()
            if rel:
                found.setdefault(frozenset(rel.terms.items()), rel)
    return sorted(found.values(), key=lambda r: r.items())


@dataclass(frozen=True)
class QuotientBasis:
    degree: int
    legs: tuple[str, ...]
    connected: bool
    basis: tuple[CanonicalForm, ...]
    span: RelationSpan
    n_classes: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def project(self, v: LinComb) -> LinComb:
        return self.span.reduce(v)


@lru_cache(maxsize=None)
def _quotient(degree: int, legs: tuple[str, ...], connected: bool, require_trivalent: bool, cap) -> QuotientBasis:
    classes = enumerate_diagrams(degree, legs, connected=connected, require_trivalent=require_trivalent, cap=cap)
    span = RelationSpan()
    if classes:
        for rel in ihx_generators(degree, legs, connected=connected, cap=cap):
            span.add(rel)
    keep = {cf.encoding for cf in classes}
    # IHX never creates or destroys the trivalent-free strut, so relations stay inside ``keep``
    basis = tuple(cf for cf in classes if cf.encoding not in set(span.pivots))
    assert all(p in keep for p in span.pivots)
    return QuotientBasis(degree, legs, connected, basis, span, len(classes))


def quotient_basis(
    degree: int,
    legs=(),
    connected: bool = False,
    require_trivalent: bool = False,
    cap: int | None = None,
) -> QuotientBasis:
    """Basis of the quotient by AS and IHX in one degree.

    ``connected=True, require_trivalent=True`` gives the graded piece of
    F_n (connected diagrams with at least one trivalent vertex).
    """
    legs = tuple(sorted(str(x) for x in legs))
    limit = max_degree(cap)
    if degree > limit:
        raise CapExceeded(f"degree {degree} exceeds enumeration cap {limit}")
    return _quotient(degree, legs, connected, require_trivalent, limit)


def _term_shape(key: bytes) -> tuple[int, tuple[str, ...], bool]:
    d = decode(key)
    return d.degree, d.sorted_legs(), d.is_connected()


def is_zero(v: LinComb, degree: int, legs=(), cap: int | None = None) -> bool:
    """Whether ``v`` vanishes modulo AS and IHX."""
    if not v:
        return True
    legs = tuple(sorted(str(x) for x in legs))
    connected = True
    for key in v.keys():
        deg, lg, conn = _term_shape(key)
        if deg != degree or lg != legs:
            raise DegreeMismatch(f"term of degree {deg} with legs {list(lg)} in a degree-{degree} check")
        connected = connected and conn
    q = quotient_basis(degree, legs, connected=connected, cap=cap)
    return not q.project(v)


def reduce_element(v: LinComb, cap: int | None = None) -> dict[tuple[int, tuple[str, ...]], LinComb]:
    """Split ``v`` by (degree, legs) and reduce each piece to its basis coordinates."""
    pieces: dict[tuple[int, tuple[str, ...], bool], dict[bytes, object]] = {}
    for key, c in v.items():
        deg, lg, conn = _term_shape(key)
        pieces.setdefault((deg, lg, conn), {})[key] = c
    out: dict[tuple[int, tuple[str, ...]], LinComb] = {}
    for (deg, lg, conn), terms in sorted(pieces.items()):
        q = quotient_basis(deg, lg, connected=conn, cap=cap)
        red = q.project(LinComb(terms))  # type: ignore[arg-type]
        out[(deg, lg)] = out.get((deg, lg), LinComb()) + red
    return out
