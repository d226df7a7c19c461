"""Random diagram generators and a Lie algebra weight system for the tests."""

from __future__ import annotations

import random
import string

import numpy as np

from beadcalc.diagram import Diagram
from beadcalc.linear import LinComb

EPS = np.zeros((3, 3, 3), dtype=np.int64)
for (i, j, k), s in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
    EPS[i, j, k] = s


def random_diagram(rng: random.Random, trivalent: int, legs=()) -> Diagram:
    """Uniform random pairing of stubs, then random cyclic orders."""
    legs = tuple(legs)
    if (3 * trivalent + len(legs)) % 2:
        raise ValueError("odd number of stubs")
    owner = [v for v in range(trivalent) for _ in range(3)] + [trivalent + i for i in range(len(legs))]
    rng.shuffle(owner)
    edges = []
    at: list[list[int]] = [[] for _ in range(trivalent)]
    for i in range(0, len(owner), 2):
        a, b = owner[i], owner[i + 1]
        k = len(edges)
        edges.append((a, b))
        if a < trivalent:
            at[a].append(2 * k)
        if b < trivalent:
            at[b].append(2 * k + 1)
    for c in at:
        rng.shuffle(c)
    return Diagram(trivalent, legs, tuple(edges), tuple(tuple(c) for c in at))


def random_connected(rng: random.Random, trivalent: int, legs=(), tries: int = 1000) -> Diagram:
    for _ in range(tries):
        d = random_diagram(rng, trivalent, legs)
        if d.is_connected():
            return d
    raise RuntimeError("no connected sample")


def random_relabel(rng: random.Random, d: Diagram) -> Diagram:
    """Random vertex renumbering, edge renumbering and edge reversal."""
    t = d.trivalent
    vperm = list(range(t))
    rng.shuffle(vperm)
    vperm += list(range(t, t + len(d.legs)))
    lperm = list(range(len(d.legs)))
    rng.shuffle(lperm)
    for i, j in enumerate(lperm):
        vperm[t + i] = t + j
    eperm = list(range(len(d.edges)))
    rng.shuffle(eperm)
    flips = [k for k in range(len(d.edges)) if rng.random() < 0.5]
    return d.permute(vperm, eperm, flips)


def leg_labels(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:n])


def weight(d: Diagram) -> np.ndarray:
    """so(3) weight system: structure constants at trivalent vertices, free indices at legs.

    Free indices follow the legs sorted by label, so isomorphic diagrams give
    equal tensors.  Closed diagrams give a 0-dimensional array.
    """
    pool = iter(string.ascii_letters)
    # each half-edge gets the letter of its edge, except both ends of a strut
    letter = {}
    ops, subs = [], []
    for k, (a, b) in enumerate(d.edges):
        if d.is_leg(a) and d.is_leg(b):
            letter[2 * k], letter[2 * k + 1] = next(pool), next(pool)
            ops.append(np.eye(3, dtype=np.int64))
            subs.append(letter[2 * k] + letter[2 * k + 1])
        else:
            letter[2 * k] = letter[2 * k + 1] = next(pool)
    for v in range(d.trivalent):
        ops.append(EPS)
        subs.append("".join(letter[h] for h in d.cyclic[v]))
    out = []
    for i, _ in sorted(enumerate(d.legs), key=lambda p: p[1]):
        out.append(letter[d.half_edges_at(d.trivalent + i)[0]])
    if not ops:
        return np.array(1)
    return np.einsum(",".join(subs) + "->" + "".join(out), *ops)


def weight_comb(v: LinComb, decode) -> np.ndarray:
    """Weight of a combination, scaled by the lcm of denominators to stay integral."""
    den = 1
    for c in v.terms.values():
        den = den * c.denominator // np.gcd(den, c.denominator)
    total = np.array(0)
    for key, c in v.items():
        total = total + weight(decode(key)) * int(c * den)
    return total


def random_relabel_beaded(rng: random.Random, d: Diagram, x):
    """Random isomorphic copy of ``(d, x)``; reversed edges carry negated exponents."""
    t = d.trivalent
    vperm = list(range(t))
    rng.shuffle(vperm)
    eperm = list(range(len(d.edges)))
    rng.shuffle(eperm)
    flips = [k for k in range(len(d.edges)) if rng.random() < 0.5]
    y = [0] * len(x)
    for k, val in enumerate(x):
        y[eperm[k]] = -val if k in flips else val
    return d.permute(vperm, eperm, flips), y


def random_beaded(rng: random.Random, max_loops: int = 4, max_bead_degree: int = 3, spread: int = 3):
    """Random closed diagram with an exponent per edge, within the given bounds."""
    from beadcalc.beads import push_normal_form
    from beadcalc.diagram import loop_degree

    while True:
        t = rng.choice([2, 4, 6])
        d = random_diagram(rng, t, ())
        if loop_degree(d) > max_loops:
            continue
        x = [rng.randint(-spread, spread) for _ in d.edges]
        if push_normal_form(d, x).bead_degree <= max_bead_degree:
            return d, x
