"""Canonical forms of diagrams modulo isomorphism and AS.

Vertex-level colour refinement plus individualisation, enumerating every
leaf of the search tree.  The least leaf fixes the canonical vertex order;
all least leaves differ by automorphisms, and lifting those to half-edges
(together with permutations of parallel edges and flips of self-loops) gives
the full automorphism group whose AS parities decide vanishing.

The canonical representative numbers vertices in canonical order
(trivalent first), lists edges as sorted ``(a, b)`` pairs with ``a <= b``
and orients every trivalent vertex by its sorted half-edge ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Sequence

from .diagram import Diagram
from .errors import ValidationError

Adjacency = dict[int, list[tuple[int, int]]]


def _refine(cells: list[list[int]], nbrs: Adjacency) -> list[list[int]]:
    while True:
        cell_of = {}
        for i, c in enumerate(cells):
            for v in c:
                cell_of[v] = i
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                sig = tuple(sorted((cell_of[w], m) for w, m in nbrs[v]))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _edge_key(order: Sequence[int], nbrs: Adjacency) -> tuple:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        pv = pos[v]
        for w, m in nbrs[v]:
            pw = pos[w]
            if pv < pw:
                out.append((pv, pw, m))
    out.sort()
    return tuple(out)


def search(vertices: Sequence[int], color: dict[int, Hashable], nbrs: Adjacency):
    """Canonical labelling of a vertex-coloured multigraph.

    ``nbrs[v]`` lists ``(w, multiplicity)`` for neighbours ``w != v``; anything
    else (self-loops, leg labels) must be folded into ``color``.  Returns
    ``(key, orders)`` where ``key`` identifies the isomorphism class and
    ``orders`` holds every vertex order attaining it (the first is canonical).
    """
    by_color: dict[Hashable, list[int]] = {}
    for v in vertices:
        by_color.setdefault(color[v], []).append(v)
    palette = sorted(by_color)
    cells = _refine([by_color[c] for c in palette], nbrs)
    colors = []
    for c in palette:
        colors.extend([c] * len(by_color[c]))

    best: list = [None, []]

    def rec(cells: list[list[int]]) -> None:
        target = -1
        size = 0
        for i, c in enumerate(cells):
            if len(c) > 1 and (target < 0 or len(c) < size):
                target, size = i, len(c)
        if target < 0:
            order = [c[0] for c in cells]
            key = _edge_key(order, nbrs)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, [order]
            elif key == best[0]:
                best[1].append(order)
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            rec(_refine(cells[:target] + [[v], rest] + cells[target + 1:], nbrs))

    rec(cells)
    return (tuple(colors), best[0]), best[1]


def _vertex_graph(d: Diagram):
    color: dict[int, Hashable] = {}
    loops = [0] * d.n_vertices
    mult: dict[int, dict[int, int]] = {v: {} for v in range(d.n_vertices)}
    for a, b in d.edges:
        if a == b:
            loops[a] += 1
        else:
            mult[a][b] = mult[a].get(b, 0) + 1
            mult[b][a] = mult[b].get(a, 0) + 1
    for v in range(d.n_vertices):
        color[v] = (0, "", loops[v]) if v < d.trivalent else (1, d.legs[v - d.trivalent], 0)
    nbrs = {v: list(m.items()) for v, m in mult.items()}
    return color, nbrs


def _triple_parity(triple: Sequence[int]) -> int:
    """0 if ``triple`` is a rotation of its sorted order, else 1."""
    a, b, c = triple
    return (int(a > b) + int(a > c) + int(b > c)) & 1


def _cyclic_parity(image: Sequence[int], target: Sequence[int]) -> int:
    """0 if ``image`` is a rotation of ``target`` (same three elements), else 1."""
    i = target.index(image[0])
    return 0 if target[(i + 1) % 3] == image[1] else 1


def _lift(d: Diagram, beta: dict[int, int]) -> list[int]:
    """One half-edge map over the vertex automorphism ``beta`` (no self-loops)."""
    pools: dict[tuple[int, int], list[int]] = {}
    for k, (a, b) in enumerate(d.edges):
        pools.setdefault((min(a, b), max(a, b)), []).append(k)
    used = {p: 0 for p in pools}
    hmap = [0] * (2 * len(d.edges))
    for k, (a, b) in enumerate(d.edges):
        if a not in beta:
            continue
        ia, ib = beta[a], beta[b]
        p = (min(ia, ib), max(ia, ib))
        nk = pools[p][used[p]]
        used[p] += 1
        if d.edges[nk][0] == ia:
            hmap[2 * k], hmap[2 * k + 1] = 2 * nk, 2 * nk + 1
        else:
            hmap[2 * k], hmap[2 * k + 1] = 2 * nk + 1, 2 * nk
    return hmap


def _as_parity(d: Diagram, beta: dict[int, int], hmap: Sequence[int]) -> int:
    par = 0
    for v in beta:
        if v < d.trivalent:
            image = [hmap[h] for h in d.cyclic[v]]
            par ^= _cyclic_parity(image, d.cyclic[beta[v]])
    return par


@dataclass(frozen=True)
class CanonData:
    """Full result of canonicalising one presentation."""

    rep: Diagram
    hmap: tuple[int, ...]  # input half-edge -> representative half-edge
    raw_sign: int  # orientation of the input relative to ``rep``
    zero: bool  # an odd automorphism exists
    encoding: bytes = field(repr=False)


def encode(rep: Diagram) -> bytes:
    edges = ".".join(f"{a}-{b}" for a, b in rep.edges)
    return f"T{rep.trivalent};L{','.join(rep.legs)};E{edges}".encode()


def decode(encoding: bytes) -> Diagram:
    """Canonical representative from an encoding (any ``;X`` class suffix ignored)."""
    try:
        text = encoding.decode()
        parts = text.split(";")
        t = int(parts[0][1:])
        legs = tuple(x for x in parts[1][1:].split(",") if x)
        body = parts[2][1:]
        edges = tuple(tuple(int(x) for x in e.split("-")) for e in body.split(".") if e)
    except (UnicodeDecodeError, ValueError, IndexError):
        raise ValidationError(f"not a canonical encoding: {encoding!r}") from None
    return _with_sorted_cyclic(t, legs, edges)  # type: ignore[arg-type]


def _with_sorted_cyclic(t: int, legs, edges) -> Diagram:
    at: list[list[int]] = [[] for _ in range(t)]
    for k, (a, b) in enumerate(edges):
        if a < t:
            at[a].append(2 * k)
        if b < t:
            at[b].append(2 * k + 1)
    if any(len(x) != 3 for x in at):
        raise ValidationError("encoded graph is not uni-trivalent")
    return Diagram(t, tuple(legs), tuple(edges), tuple(tuple(sorted(x)) for x in at))


@lru_cache(maxsize=400_000)
def canonical_data(d: Diagram) -> CanonData:
    color, nbrs = _vertex_graph(d)
    comps = []
    for comp in d.components():
        key, orders = search(comp, color, nbrs)
        comps.append((key, orders))
    comps.sort(key=lambda c: c[0])

    pos = [0] * d.n_vertices
    nt = 0
    for _, orders in comps:
        for v in orders[0]:
            if v < d.trivalent:
                pos[v] = nt
                nt += 1
    nl = nt
    legs = []
    for _, orders in comps:
        for v in orders[0]:
            if v >= d.trivalent:
                pos[v] = nl
                nl += 1
                legs.append(d.legs[v - d.trivalent])

    pairs = sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in d.edges)
    rep = _with_sorted_cyclic(d.trivalent, legs, pairs)
    pool: dict[tuple[int, int], list[int]] = {}
    for k, p in enumerate(pairs):
        pool.setdefault(p, []).append(k)
    hmap = [0] * (2 * len(d.edges))
    for k, (a, b) in enumerate(d.edges):
        p = (min(pos[a], pos[b]), max(pos[a], pos[b]))
        nk = pool[p].pop(0)
        if a != b and pos[a] != rep.edges[nk][0]:
            hmap[2 * k], hmap[2 * k + 1] = 2 * nk + 1, 2 * nk
        else:
            hmap[2 * k], hmap[2 * k + 1] = 2 * nk, 2 * nk + 1
    par = 0
    for v in range(d.trivalent):
        par ^= _triple_parity([hmap[h] for h in d.cyclic[v]])

    zero = d.has_self_loop()
    if not zero:
        for _, orders in comps:
            base = orders[0]
            for other in orders[1:]:
                beta = dict(zip(base, other))
                if _as_parity(d, beta, _lift(d, beta)):
                    zero = True
                    break
            if zero:
                break
    return CanonData(rep, tuple(hmap), -1 if par else 1, zero, encode(rep))


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism class ``encoding`` with the AS sign of the presentation.

    ``sign`` is +1 or -1, or 0 when the class vanishes by AS.
    """

    encoding: bytes
    sign: int

    @property
    def hex(self) -> str:
        return self.encoding.hex()

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def representative(self) -> Diagram:
        return decode(self.encoding)


def canonicalize(d: Diagram) -> CanonicalForm:
    cd = canonical_data(d)
    return CanonicalForm(cd.encoding, 0 if cd.zero else cd.raw_sign)


@lru_cache(maxsize=50_000)
def half_edge_automorphisms(rep: Diagram) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Every half-edge automorphism of a connected diagram with its AS parity.

    Includes permutations of parallel edges and flips of self-loops; used to
    canonicalise decorations carried by the edges.
    """
    color, nbrs = _vertex_graph(rep)
    _, orders = search(list(range(rep.n_vertices)), color, nbrs)
    classes: dict[tuple[int, int], list[int]] = {}
    for k, (a, b) in enumerate(rep.edges):
        classes.setdefault((min(a, b), max(a, b)), []).append(k)
    out = []
    base = orders[0]
    for other in orders:
        beta = dict(zip(base, other))
        choices = []
        for (a, b), ks in sorted(classes.items()):
            ia, ib = beta[a], beta[b]
            targets = classes[(min(ia, ib), max(ia, ib))]
            opts = []
            for perm in itertools.permutations(targets):
                flip_sets = itertools.product((0, 1), repeat=len(ks)) if a == b else [(0,) * len(ks)]
                for flips in flip_sets:
                    part = []
                    for k, nk, f in zip(ks, perm, flips):
                        if a == b:
                            straight = not f
                        else:
                            straight = rep.edges[nk][0] == ia
                        part.append((2 * k, 2 * nk if straight else 2 * nk + 1))
                        part.append((2 * k + 1, 2 * nk + 1 if straight else 2 * nk))
                    opts.append(part)
            choices.append(opts)
        for combo in itertools.product(*choices):
            hmap = [0] * (2 * len(rep.edges))
            for part in combo:
                for h, g in part:
                    hmap[h] = g
            out.append((tuple(hmap), _as_parity(rep, beta, hmap)))
    return tuple(out)


def graph_key(n: int, colors: Sequence[Hashable], pairs: Sequence[tuple[int, int]]) -> tuple:
    """Orientation-free isomorphism key of a vertex-coloured multigraph.

    Self-loops are folded into the colours; used to deduplicate partial
    graphs during enumeration.
    """
    loops = [0] * n
    mult: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for a, b in pairs:
        if a == b:
            loops[a] += 1
        else:
            mult[a][b] = mult[a].get(b, 0) + 1
            mult[b][a] = mult[b].get(a, 0) + 1
    color = {v: (colors[v], loops[v]) for v in range(n)}
    nbrs = {v: list(m.items()) for v, m in mult.items()}
    key, _ = search(list(range(n)), color, nbrs)
    return key
