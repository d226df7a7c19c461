"""Enumeration of uni-trivalent diagrams up to isomorphism.

Connected graphs are grown from a single trivalent vertex by repeatedly
resolving one open stub: join it to another stub, grow a new trivalent vertex
there, or cap it with a leg.  Every completion of a partial graph pairs the
chosen stub with something, so trying all options for one stub reaches every
graph; partial graphs are deduplicated by isomorphism.  Disconnected diagrams
are multisets of connected ones.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .canon import CanonicalForm, canonicalize, graph_key
from .diagram import Diagram, disjoint_union, max_degree
from .errors import CapExceeded

_TRI = "\x00T"
_STUB = "\x00~"


def _to_diagram(colors: list[str], pairs: list[tuple[int, int]]) -> Diagram:
    tri = [v for v, c in enumerate(colors) if c == _TRI]
    legs = [v for v, c in enumerate(colors) if c != _TRI]
    legs.sort(key=lambda v: colors[v])
    new = {v: i for i, v in enumerate(tri + legs)}
    edges = tuple((new[a], new[b]) for a, b in pairs)
    at: list[list[int]] = [[] for _ in tri]
    for k, (a, b) in enumerate(edges):
        if a < len(tri):
            at[a].append(2 * k)
        if b < len(tri):
            at[b].append(2 * k + 1)
    return Diagram(
        len(tri),
        tuple(colors[v] for v in legs),
        edges,
        tuple(tuple(x) for x in at),  # type: ignore[misc]
    )


def _drop(colors, pairs, dead: set[int]):
    keep = [v for v in range(len(colors)) if v not in dead]
    idx = {v: i for i, v in enumerate(keep)}
    return [colors[v] for v in keep], [(idx[a], idx[b]) for a, b in pairs]


def connected_graphs(trivalent: int, legs: tuple[str, ...]) -> list[Diagram]:
    """One diagram per isomorphism class of underlying connected graph.

    Orientations are arbitrary, and classes that vanish by AS are kept.
    """
    legs = tuple(sorted(legs))
    if trivalent == 0:
        return [_to_diagram(list(legs), [(0, 1)])] if len(legs) == 2 else []
    if (trivalent + len(legs)) % 2:
        return []

    seen: set = set()
    finals: list[Diagram] = []
    stack = [([_TRI, _STUB, _STUB, _STUB], [(0, 1), (0, 2), (0, 3)])]
    while stack:
        colors, pairs = stack.pop()
        key = graph_key(len(colors), colors, pairs)
        if key in seen:
            continue
        seen.add(key)
        stubs = [v for v, c in enumerate(colors) if c == _STUB]
        rem_t = trivalent - colors.count(_TRI)
        rem_l = Counter(legs) - Counter(c for c in colors if c not in (_TRI, _STUB))
        n_rem_l = sum(rem_l.values())
        if not stubs:
            if rem_t == 0 and n_rem_l == 0:
                finals.append(_to_diagram(colors, pairs))
            continue
        if len(stubs) + rem_t - n_rem_l < 0:
            continue
        s = stubs[0]
        es = next(k for k, (a, b) in enumerate(pairs) if s in (a, b))
        x = pairs[es][0] if pairs[es][1] == s else pairs[es][1]
        for s2 in stubs[1:]:
            e2 = next(k for k, (a, b) in enumerate(pairs) if s2 in (a, b))
            x2 = pairs[e2][0] if pairs[e2][1] == s2 else pairs[e2][1]
            new_pairs = [p for k, p in enumerate(pairs) if k not in (es, e2)] + [(x, x2)]
            stack.append(_drop(colors, new_pairs, {s, s2}))
        if rem_t > 0:
            c2 = list(colors)
            c2[s] = _TRI
            n = len(c2)
            stack.append((c2 + [_STUB, _STUB], pairs + [(s, n), (s, n + 1)]))
        for lab in sorted(rem_l):
            c2 = list(colors)
            c2[s] = lab
            stack.append((c2, list(pairs)))
    return finals


@lru_cache(maxsize=None)
def connected_classes(trivalent: int, legs: tuple[str, ...]) -> tuple[CanonicalForm, ...]:
    """Nonvanishing connected classes with the given trivalent count and leg multiset."""
    finals: dict[bytes, CanonicalForm] = {}
    for d in connected_graphs(trivalent, legs):
        cf = canonicalize(d)
        if cf.sign:
            finals[cf.encoding] = CanonicalForm(cf.encoding, 1)
    return tuple(finals[k] for k in sorted(finals))


def _sub_multisets(legs: tuple[str, ...]) -> list[tuple[str, ...]]:
    counts = sorted(Counter(legs).items())
    out: list[tuple[str, ...]] = [()]
    for lab, m in counts:
        out = [s + (lab,) * i for s in out for i in range(m + 1)]
    return out


@lru_cache(maxsize=None)
def _all_classes(trivalent: int, legs: tuple[str, ...]) -> tuple[CanonicalForm, ...]:
    pieces = []
    for sub in _sub_multisets(legs):
        for t in range(trivalent + 1):
            if t == 0 and not sub:
                continue
            for cf in connected_classes(t, sub):
                pieces.append((t, sub, cf))
    target = Counter(legs)
    out: dict[bytes, CanonicalForm] = {}

    def rec(start: int, t_left: int, legs_left: Counter, chosen: list[Diagram]) -> None:
        if t_left == 0 and not +legs_left:
            if chosen:
                d = chosen[0]
                for other in chosen[1:]:
                    d = disjoint_union(d, other)
                cf = canonicalize(d)
                assert cf.sign != 0
                out[cf.encoding] = CanonicalForm(cf.encoding, 1)
            return
        for i in range(start, len(pieces)):
            t, sub, cf = pieces[i]
            need = Counter(sub)
            if t > t_left or need - legs_left:
                continue
            rec(i, t_left - t, legs_left - need, chosen + [cf.representative()])

    rec(0, trivalent, target, [])
    return tuple(out[k] for k in sorted(out))


def enumerate_diagrams(
    degree: int,
    legs=(),
    connected: bool = False,
    require_trivalent: bool = False,
    cap: int | None = None,
) -> list[CanonicalForm]:
    """One representative per nonvanishing isomorphism class, in encoding order."""
    limit = max_degree(cap)
    if degree > limit:
        raise CapExceeded(f"degree {degree} exceeds enumeration cap {limit}")
    if degree < 1:
        return []
    legs = tuple(sorted(str(x) for x in legs))
    t = 2 * degree - len(legs)
    if t < 0:
        return []
    if connected:
        classes = connected_classes(t, legs)
    else:
        classes = _all_classes(t, legs)
    if require_trivalent and t == 0:
        return []
    return list(classes)
