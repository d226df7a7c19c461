"""Uni-trivalent diagrams stored as half-edge structures.

Vertices ``0 .. trivalent-1`` are trivalent; vertex ``trivalent + i`` is the
univalent vertex carrying ``legs[i]``.  Edge ``k`` owns half-edges ``2k``
(at ``edges[k][0]``) and ``2k + 1`` (at ``edges[k][1]``), so self-loops and
parallel edges need no special casing.  ``cyclic[v]`` lists the three
half-edges at trivalent vertex ``v`` in their cyclic order.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    BadValence,
    DuplicateLegLabel,
    IncompleteCyclicOrder,
    ValidationError,
)

HAIR = "*"
"""Label of unlabeled hair; hair legs are interchangeable under isomorphism."""

DEFAULT_MAX_DEGREE = 6
ENV_MAX_DEGREE = "BEADCALC_MAX_DEGREE"
_LABEL_RE = re.compile(r"^[^,;.|\s]+$")


def max_degree(override: int | None = None) -> int:
    """Enumeration cap: explicit override, else ``BEADCALC_MAX_DEGREE``, else 6."""
    if override is not None:
        return override
    env = os.environ.get(ENV_MAX_DEGREE)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValidationError(f"BEADCALC_MAX_DEGREE={env!r} is not an integer")
        if value <= 0:
            raise ValidationError("BEADCALC_MAX_DEGREE must be positive")
        return value
    return DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class Diagram:
    trivalent: int
    legs: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    cyclic: tuple[tuple[int, int, int], ...]

    @property
    def n_vertices(self) -> int:
        return self.trivalent + len(self.legs)

    @property
    def degree(self) -> int:
        return self.n_vertices // 2

    def vertex_of(self, h: int) -> int:
        return self.edges[h >> 1][h & 1]

    def is_leg(self, v: int) -> bool:
        return v >= self.trivalent

    def leg_vertex(self, i: int) -> int:
        return self.trivalent + i

    def half_edges_at(self, v: int) -> list[int]:
        if v < self.trivalent:
            return list(self.cyclic[v])
        return [h for h in range(2 * len(self.edges)) if self.vertex_of(h) == v]

    def internal_edges(self) -> list[int]:
        """Edges joining two distinct trivalent vertices (the IHX sites)."""
        t = self.trivalent
        return [k for k, (a, b) in enumerate(self.edges) if a != b and a < t and b < t]

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by least vertex."""
        parent = list(range(self.n_vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return [groups[r] for r in sorted(groups)]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_self_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def sorted_legs(self) -> tuple[str, ...]:
        return tuple(sorted(self.legs))

    def reverse_edge(self, k: int) -> Diagram:
        """Same diagram with edge ``k`` stored in the opposite direction."""
        a, b = self.edges[k]
        edges = list(self.edges)
        edges[k] = (b, a)
        swap = {2 * k: 2 * k + 1, 2 * k + 1: 2 * k}
        cyclic = tuple(tuple(swap.get(h, h) for h in c) for c in self.cyclic)
        return Diagram(self.trivalent, self.legs, tuple(edges), cyclic)

    def flip_vertex(self, v: int) -> Diagram:
        """Reverse the cyclic order at trivalent vertex ``v`` (one AS move)."""
        cyclic = list(self.cyclic)
        a, b, c = cyclic[v]
        cyclic[v] = (a, c, b)
        return Diagram(self.trivalent, self.legs, self.edges, tuple(cyclic))

    def relabel_legs(self, mapping: Mapping[str, str]) -> Diagram:
        return Diagram(
            self.trivalent,
            tuple(mapping.get(x, x) for x in self.legs),
            self.edges,
            self.cyclic,
        )

    def permute(self, vperm: list[int], eperm: list[int], flips: Iterable[int] = ()) -> Diagram:
        """Isomorphic copy: vertex ``v`` becomes ``vperm[v]``, edge ``k`` becomes
        ``eperm[k]``; edges in ``flips`` have their stored direction reversed.

        ``vperm`` must keep trivalent vertices below ``trivalent``.
        """
        flips = set(flips)
        n = self.n_vertices
        edges: list[tuple[int, int] | None] = [None] * len(self.edges)
        hmap = [0] * (2 * len(self.edges))
        for k, (a, b) in enumerate(self.edges):
            nk = eperm[k]
            if k in flips:
                edges[nk] = (vperm[b], vperm[a])
                hmap[2 * k], hmap[2 * k + 1] = 2 * nk + 1, 2 * nk
            else:
                edges[nk] = (vperm[a], vperm[b])
                hmap[2 * k], hmap[2 * k + 1] = 2 * nk, 2 * nk + 1
        legs: list[str] = [""] * len(self.legs)
        cyclic: list[tuple[int, int, int] | None] = [None] * self.trivalent
        for v in range(n):
            w = vperm[v]
            if v < self.trivalent:
                cyclic[w] = tuple(hmap[h] for h in self.cyclic[v])  # type: ignore[assignment]
            else:
                legs[w - self.trivalent] = self.legs[v - self.trivalent]
        return Diagram(self.trivalent, tuple(legs), tuple(edges), tuple(cyclic))  # type: ignore[arg-type]

    def to_json(self) -> dict:
        loops = {k for k, (a, b) in enumerate(self.edges) if a == b}

        def name(h: int):
            k = h >> 1
            if k in loops:
                return f"{k}{'+' if h & 1 == 0 else '-'}"
            return k

        return {
            "trivalent": self.trivalent,
            "legs": list(self.legs),
            "edges": [list(e) for e in self.edges],
            "cyclic": {str(v): [name(h) for h in c] for v, c in enumerate(self.cyclic)},
        }


def loop_degree(d: Diagram) -> int:
    """First Betti number E - V + (number of components)."""
    return len(d.edges) - d.n_vertices + len(d.components())


def disjoint_union(a: Diagram, b: Diagram) -> Diagram:
    """``a`` followed by ``b``; trivalent vertices stay in front of legs."""
    ta, tb = a.trivalent, b.trivalent
    la = len(a.legs)

    def map_a(v: int) -> int:
        return v if v < ta else v + tb

    def map_b(v: int) -> int:
        return v + ta if v < tb else v + ta + la

    edges = [(map_a(x), map_a(y)) for x, y in a.edges]
    edges += [(map_b(x), map_b(y)) for x, y in b.edges]
    off = 2 * len(a.edges)
    cyclic = list(a.cyclic) + [tuple(h + off for h in c) for c in b.cyclic]
    return Diagram(ta + tb, a.legs + b.legs, tuple(edges), tuple(cyclic))  # type: ignore[arg-type]


def _resolve_half_edge(item, v: int, edges, used: set[int]) -> int:
    if isinstance(item, bool):
        raise IncompleteCyclicOrder(f"bad cyclic entry {item!r} at vertex {v}")
    if isinstance(item, int):
        k, end = item, None
    elif isinstance(item, str):
        m = re.fullmatch(r"\s*(\d+)\s*([+\-−]?)\s*", item)
        if not m:
            raise IncompleteCyclicOrder(f"bad cyclic entry {item!r} at vertex {v}")
        k = int(m.group(1))
        end = {"": None, "+": 0, "-": 1, "−": 1}[m.group(2)]
    else:
        raise IncompleteCyclicOrder(f"bad cyclic entry {item!r} at vertex {v}")
    if not 0 <= k < len(edges):
        raise IncompleteCyclicOrder(f"vertex {v}: edge {k} does not exist")
    a, b = edges[k]
    if end is None:
        candidates = [e for e, x in ((0, a), (1, b)) if x == v and 2 * k + e not in used]
        if not candidates:
            raise IncompleteCyclicOrder(f"vertex {v}: edge {k} is not incident")
        end = candidates[0]
    elif edges[k][end] != v:
        raise IncompleteCyclicOrder(f"vertex {v}: end {end} of edge {k} is not at v")
    return 2 * k + end


def validate(raw: Mapping) -> Diagram:
    """Build a :class:`Diagram` from the JSON-compatible description.

    Raises BadValence, IncompleteCyclicOrder or DuplicateLegLabel (all
    ValidationError) when an invariant fails.
    """
    try:
        t = int(raw["trivalent"])
        legs = tuple(str(x) for x in raw.get("legs", ()))
        edges = tuple((int(e[0]), int(e[1])) for e in raw.get("edges", ()))
        if any(len(e) != 2 for e in raw.get("edges", ())):
            raise ValidationError("edges must be [v, w] pairs")
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ValidationError(f"malformed diagram: {exc}") from None
    if t < 0:
        raise ValidationError("trivalent count must be non-negative")
    n = t + len(legs)
    for lab in legs:
        if not _LABEL_RE.match(lab):
            raise ValidationError(f"illegal leg label {lab!r}")
    seen = [x for x in legs if x != HAIR]
    if len(set(seen)) != len(seen):
        raise DuplicateLegLabel(f"duplicate leg labels in {list(legs)}")

    valence = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise ValidationError(f"edge ({a}, {b}) references a missing vertex")
        valence[a] += 1
        valence[b] += 1
    for v, val in enumerate(valence):
        want = 3 if v < t else 1
        if val != want:
            raise BadValence(f"vertex {v} has valence {val}, expected {want}")

    cyc_raw = raw.get("cyclic", {})
    if isinstance(cyc_raw, list):
        cyc_raw = {str(i): c for i, c in enumerate(cyc_raw)}
    if not isinstance(cyc_raw, Mapping):
        raise IncompleteCyclicOrder("cyclic must be an object")
    cyc_norm = {}
    for key, val in cyc_raw.items():
        try:
            cyc_norm[int(key)] = val
        except ValueError:
            raise IncompleteCyclicOrder(f"bad cyclic key {key!r}") from None
    extra = set(cyc_norm) - set(range(t))
    if extra:
        raise IncompleteCyclicOrder(f"cyclic order given for non-trivalent vertices {sorted(extra)}")
    cyclic = []
    for v in range(t):
        if v not in cyc_norm:
            raise IncompleteCyclicOrder(f"vertex {v} has no cyclic order")
        entries = cyc_norm[v]
        if not isinstance(entries, (list, tuple)) or len(entries) != 3:
            raise IncompleteCyclicOrder(f"vertex {v} needs exactly three half-edges")
        used: set[int] = set()
        hs = []
        for item in entries:
            h = _resolve_half_edge(item, v, edges, used)
            if h in used:
                raise IncompleteCyclicOrder(f"vertex {v} repeats half-edge {item!r}")
            used.add(h)
            hs.append(h)
        cyclic.append(tuple(hs))
    return Diagram(t, legs, edges, tuple(cyclic))
