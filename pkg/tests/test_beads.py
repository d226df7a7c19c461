import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from beadcalc.beads import (
    BeadedDiagram,
    GBeadedForm,
    LaurentPoly,
    bead_degree,
    beaded_ihx_relation,
    class_coords,
    collapse,
    embed_classical,
    expand_multilinear,
    normal_exponents,
    parse_laurent,
    phi,
    psi,
    pullback_ihx_relation,
    push,
    push_normal_form,
    split_by_bead_degree,
    unphi,
)
from beadcalc.canon import canonicalize
from beadcalc.diagram import loop_degree, validate
from beadcalc.errors import NonzeroBeadDegree, NotDivisible, ValidationError, WrongDegree
from beadcalc.linear import LinComb
from helpers import random_beaded, random_diagram, random_relabel_beaded
from test_canon import TETRA, THETA

laurent = st.dictionaries(st.integers(-4, 4), st.fractions(-3, 3, max_denominator=3), max_size=4).map(LaurentPoly)
seeds = st.integers(0, 2**32)


# Laurent polynomials


def test_parse_examples():
    assert parse_laurent("2*b^3 - b^-1 + 1/2") == LaurentPoly({3: 2, -1: -1, 0: "1/2"})
    assert parse_laurent("b^(-2)") == LaurentPoly.monomial(-2)
    assert parse_laurent("b") == LaurentPoly.monomial(1)
    assert parse_laurent("-3") == LaurentPoly.monomial(0, -3)
    assert parse_laurent("b + b^-1") == LaurentPoly({1: 1, -1: 1})
    assert parse_laurent("2 b") == LaurentPoly.monomial(1, 2)


@pytest.mark.parametrize("bad", ["", "b^", "x", "b**2", "*b", "1 2"])
def test_parse_errors(bad):
    with pytest.raises(ValidationError):
        parse_laurent(bad)


@given(laurent)
def test_print_parse_round_trip(p):
    assert parse_laurent(str(p)) == p if p else str(p) == "0"


@given(laurent, laurent)
def test_bar_is_ring_involution(p, q):
    assert p.bar().bar() == p
    assert (p * q).bar() == p.bar() * q.bar()
    assert (p + q).bar() == p.bar() + q.bar()


def test_monomial_arithmetic():
    b = LaurentPoly.monomial(1)
    assert b * b.bar() == LaurentPoly.one()
    assert (b + LaurentPoly.one()) * (b - LaurentPoly.one()) == LaurentPoly({2: 1, 0: -1})


# classes and PUSH


def test_cocycle_coordinates_theta():
    d = THETA
    assert loop_degree(d) == 2
    # stored edges all run 0 -> 1; the class only sees differences along cycles
    c = class_coords(d, [1, 1, 1])
    assert c == (0, 0)
    assert class_coords(d, push(d, [2, -1, 5], 0, 3)) == class_coords(d, [2, -1, 5])


def test_normal_exponents_reproduce_class():
    rng = random.Random(2)
    for _ in range(30):
        d = random_diagram(rng, rng.choice([2, 4, 6]), ())
        x = [rng.randint(-3, 3) for _ in d.edges]
        c = class_coords(d, x)
        assert class_coords(d, normal_exponents(d, c)) == c


def test_theta_plus_minus_merge():
    # b and b^-1 on one theta edge are exchanged by the (even) vertex swap
    bd = BeadedDiagram.from_mapping(THETA, {0: parse_laurent("b + b^-1")})
    raw = [e for e, _ in bd.beads[0].terms()]
    assert raw == [-1, 1]
    a = push_normal_form(THETA, [1, 0, 0])
    b = push_normal_form(THETA, [-1, 0, 0])
    assert a == b and a.sign == 1
    assert expand_multilinear(bd) == LinComb.of(a, 2)


def test_beads_need_closed_diagrams():
    d = random_diagram(random.Random(0), 1, ("1", "2", "3"))
    with pytest.raises(ValidationError):
        BeadedDiagram.from_mapping(d, {})
    with pytest.raises(ValidationError):
        BeadedDiagram.from_mapping(THETA, {5: LaurentPoly.one()})
    with pytest.raises(ValidationError):
        push_normal_form(THETA, [1, 2])


@given(seeds)
def test_push_invariance(seed):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    y = list(x)
    for _ in range(4):
        y = push(d, y, rng.randrange(d.trivalent), rng.choice([-2, -1, 1, 3]))
    assert push_normal_form(d, x) == push_normal_form(d, y)


@given(seeds)
def test_reorientation_and_relabel_invariance(seed):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    k = rng.randrange(len(d.edges))
    y = list(x)
    y[k] = -y[k]
    assert push_normal_form(d.reverse_edge(k), y) == push_normal_form(d, x)
    d2, x2 = random_relabel_beaded(rng, d, x)
    assert push_normal_form(d2, x2) == push_normal_form(d, x)


@given(seeds)
def test_as_flip_negates(seed):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    v = rng.randrange(d.trivalent)
    assert push_normal_form(d.flip_vertex(v), x).sign == -push_normal_form(d, x).sign


@given(seeds)
def test_multilinear_reorientation(seed):
    rng = random.Random(seed)
    d, _ = random_beaded(rng)
    beads = {k: LaurentPoly({rng.randint(-2, 2): rng.randint(1, 3), rng.randint(-2, 2): -1}) for k in range(len(d.edges))}
    bd = BeadedDiagram.from_mapping(d, beads)
    k = rng.randrange(len(d.edges))
    assert expand_multilinear(bd.reverse_edge(k)) == expand_multilinear(bd)


@given(seeds)
def test_beaded_ihx_preserves_bead_degree(seed):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    p = push_normal_form(d, x).bead_degree
    for k in d.internal_edges():
        rel = beaded_ihx_relation(d, x, k)
        assert set(split_by_bead_degree(rel)) <= {p}


@given(seeds)
def test_pullback_matches_direct_ihx(seed):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    for k in d.internal_edges():
        assert pullback_ihx_relation(collapse(d, x, k)) == beaded_ihx_relation(d, x, k)


def test_bead_degree_values():
    assert bead_degree((0, 0)) == 0
    assert bead_degree((2, -4)) == 2
    assert bead_degree((3,)) == 3
    g = push_normal_form(TETRA, [0, 0, 0, 2, 0, 4])
    assert g.bead_degree == 2
    assert isinstance(g, GBeadedForm) and len(g.coords) == 3


def test_split_by_bead_degree():
    v = LinComb.sum(LinComb.of(push_normal_form(TETRA, [0, 0, 0, a, 0, 0])) for a in (0, 1, 2, -2))
    parts = split_by_bead_degree(v)
    assert set(parts) == {0, 1, 2}
    assert LinComb.sum(parts.values()) == v


# psi, phi and unphi


def test_psi_round_trip():
    v = LinComb.of(canonicalize(TETRA), 3) + LinComb.of(canonicalize(THETA), -1)
    assert psi(embed_classical(v)) == v
    w = embed_classical(v)
    assert embed_classical(psi(w)) == w


def test_psi_rejects_nonzero_class():
    with pytest.raises(NonzeroBeadDegree):
        psi(LinComb.of(push_normal_form(THETA, [1, 0, 0])))


@given(seeds, st.integers(2, 4))
def test_phi_unphi(seed, p):
    rng = random.Random(seed)
    d, x = random_beaded(rng)
    g = push_normal_form(d, x)
    if g.bead_degree != 1 or not g.sign:
        return
    v = LinComb.of(g)
    image = phi(p, v)
    assert image == LinComb.of(push_normal_form(d, [p * e for e in x]))
    assert set(split_by_bead_degree(image)) == {p}
    assert unphi(p, image) == v


def test_phi_errors():
    deg2 = LinComb.of(push_normal_form(THETA, [2, 0, 0]))
    with pytest.raises(WrongDegree):
        phi(3, deg2)
    with pytest.raises(NotDivisible):
        unphi(3, deg2)
    with pytest.raises(WrongDegree):
        unphi(2, LinComb.of(push_normal_form(THETA, [4, 0, 0])))
    with pytest.raises(ValidationError):
        phi(0, deg2)


def test_beaded_json_diagram():
    d = validate({"trivalent": 2, "legs": [], "edges": [[0, 1], [1, 0], [0, 1]], "cyclic": [[0, 1, 2], [0, 1, 2]]})
    assert push_normal_form(d, [1, 1, 0]) == push_normal_form(d.reverse_edge(1), [1, -1, 0])


def test_scalar_beads_multiply():
    bd = BeadedDiagram.from_mapping(TETRA, {0: parse_laurent("2*b"), 1: parse_laurent("3*b^-1")})
    v = expand_multilinear(bd)
    assert len(v) == 1 and abs(next(iter(v.terms.values()))) == 6


def test_bead_degree_independent_of_forest():
    from beadcalc.beads import spanning_forest

    rng = random.Random(12)
    for _ in range(40):
        d, x = random_beaded(rng)
        ref = bead_degree(class_coords(d, x))
        for _ in range(3):
            vo = list(range(d.n_vertices))
            eo = list(range(len(d.edges)))
            rng.shuffle(vo)
            rng.shuffle(eo)
            assert bead_degree(class_coords(d, x, spanning_forest(d, vo, eo))) == ref


def test_phi_scales_coordinates():
    g = push_normal_form(TETRA, [0, 0, 0, 1, 0, -1])
    assert g.bead_degree == 1
    image = phi(3, LinComb.of(g))
    (key,) = image.keys()
    assert GBeadedForm(key, 1).coords == tuple(3 * c for c in g.coords)
    assert unphi(3, image) == LinComb.of(g)
