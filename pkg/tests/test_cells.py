import random
from itertools import product

import pytest

from bubble.cells import (
    MultiLinkState,
    WeightLambda,
    act,
    dim_delta,
    dim_head,
    dim_radical,
    dim_radical_two_colour,
    enumerate_delta_basis,
    enumerate_lambda,
    gram_det,
    gram_direct,
    gram_factorized,
    gram_rank,
    gram_specialized,
    inner_product,
    localize,
    radical_series,
)
from bubble.diagrams import ColouredDiagram, multiply, random_bubble, unit_diagram
from bubble.linalg import ExactMatrix, determinant
from bubble.scalars import LaurentPoly, ParameterSpec, evaluate
from bubble.tl import TLWeight, tl_form

d0 = LaurentPoly.variable(0, 2)
d1 = LaurentPoly.variable(1, 2)
W = WeightLambda.of
POINT = ParameterSpec.parse(["root:2", "root:4"])


def brute_delta_count(n, lam):
    """Count coloured half-diagrams by enumerating colour words and per-colour link states."""
    from bubble.tl import enumerate_link_states

    m = len(lam)
    total = 0
    for word in product(range(m), repeat=n):
        sub = 1
        for j in range(m):
            c = word.count(j)
            if c < lam[j] or (c - lam[j]) % 2:
                sub = 0
                break
            sub *= len(enumerate_link_states(c, (c - lam[j]) // 2))
        total += sub
    return total


def test_lambda_examples():
    assert len(enumerate_lambda(6, 2)) == 16
    assert [w.lam for w in enumerate_lambda(2, 1)] == [(2,), (0,)]
    assert [w.lam for w in enumerate_lambda(1, 2)] == [(1, 0), (0, 1)]
    with pytest.raises(ValueError):
        W(3, (1, 1))


def test_delta_basis_examples():
    assert [str(s) for s in enumerate_delta_basis(W(2, (0, 0)))] == [
        "colours=rr; 0:arcs=(1,2)",
        "colours=bb; 1:arcs=(1,2)",
    ]
    assert [str(s) for s in enumerate_delta_basis(W(2, (1, 1)))] == ["colours=rb", "colours=br"]
    assert len(enumerate_delta_basis(W(6, (0, 0)))) == 70


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_basis_count(n, m):
    for w in enumerate_lambda(n, m):
        basis = enumerate_delta_basis(w)
        assert len(basis) == dim_delta(w) == brute_delta_count(n, w.lam)
        assert all(s.lam == w.lam for s in basis)


def test_state_text_roundtrip():
    s = MultiLinkState.parse("colours=rrbrb; 0:arcs=(1,2); 1:arcs=(3,5)", 2)
    assert str(s) == "colours=rrbrb; 0:arcs=(1,2); 1:arcs=(3,5)"
    assert s.lam == (1, 0)
    t = MultiLinkState.parse("colours=0120; 0:arcs=(1,4)", 3)
    assert str(t) == "colours=0120; 0:arcs=(1,4)"
    for bad in ("colours=rb; 0:arcs=(1,2)", "colours=rrr; 0:arcs=(1,3)", "arcs=(1,2)"):
        with pytest.raises(ValueError):
            MultiLinkState.parse(bad, 2)


def test_act_examples():
    red, blue = enumerate_delta_basis(W(2, (0, 0)))
    unit = unit_diagram(red.colours, 2)
    assert act(unit, red) == (LaurentPoly.constant(1, 2), red)
    capcup = ColouredDiagram.parse("n=2 m=2; 0:{1,2}; 0:{1',2'}")
    assert act(capcup, red) == (d0, red)
    assert act(capcup, blue) is None
    # closing two defects of one colour kills the state in the quotient
    straight = MultiLinkState.parse("colours=rr", 2)
    assert act(capcup, straight) is None


def test_inner_product_examples():
    red, blue = enumerate_delta_basis(W(2, (0, 0)))
    assert inner_product(red, blue) == 0
    assert inner_product(red, red) == d0
    a = MultiLinkState.parse("colours=rrrbb; 0:arcs=(1,2); 1:arcs=(4,5)", 2)
    b = MultiLinkState.parse("colours=rrrbb; 0:arcs=(2,3); 1:arcs=(4,5)", 2)
    assert inner_product(a, b) == tl_form(a.parts[0], b.parts[0], 0, 2) * d1
    with pytest.raises(ValueError):
        inner_product(a, red)


def test_gram_examples():
    g = gram_direct(W(2, (0, 0)))
    assert g.tolist() == [[d0, 0], [0, d1]]
    assert gram_det(W(2, (0, 0))) == d0 * d1
    assert gram_direct(W(2, (1, 1))) == ExactMatrix.identity(2, LaurentPoly.constant(1, 2), LaurentPoly(None, 2))
    for n in range(1, 6):
        for w in enumerate_lambda(n, 2):
            if sum(w.lam) == n:
                assert gram_det(w) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_gram_factorization(n):
    for w in enumerate_lambda(n, 2):
        rep = gram_factorized(w)
        assert rep.dim == dim_delta(w)
        assert gram_direct(w) == rep.assemble()
        assert determinant(gram_direct(w)) == rep.determinant == gram_det(w)


@pytest.mark.parametrize("n", range(1, 5))
def test_gram_factorization_three_colours(n):
    for w in enumerate_lambda(n, 3):
        assert gram_direct(w) == gram_factorized(w).assemble()
        assert determinant(gram_direct(w)) == gram_det(w)


def test_contravariance_random():
    rng = random.Random(31)
    checked = 0
    nonzero = 0
    while checked < 400:
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        w = rng.choice(enumerate_lambda(n, m))
        d = random_bubble(n, m, rng)
        basis = enumerate_delta_basis(w)
        left = [x for x in basis if x.colours == d.bottom]
        right = [x for x in basis if x.colours == d.top]
        if not left or not right:
            continue
        a, b = rng.choice(left), rng.choice(right)

        def pair(diagram, x, y, swap):
            r = act(diagram, x)
            if r is None:
                return LaurentPoly(None, m)
            c, s = r
            return c * (inner_product(y, s) if swap else inner_product(s, y))

        lhs = pair(d, a, b, False)
        assert lhs == pair(d.reflect(), b, a, True)
        nonzero += bool(lhs)
        checked += 1
    assert nonzero > 50


def test_action_is_module_action():
    rng = random.Random(32)
    for _ in range(300):
        n, m = rng.randint(1, 4), rng.randint(1, 2)
        w = rng.choice(enumerate_lambda(n, m))
        a = rng.choice(enumerate_delta_basis(w))
        y = random_bubble(n, m, rng, top=a.colours).reflect()  # bottom row matches a
        x = random_bubble(n, m, rng, top=y.top).reflect()
        xy = multiply(x, y)
        lhs = act(xy.diagram, a)
        inner = act(y, a)
        rhs = None if inner is None else act(x, inner[1])
        if lhs is None or rhs is None:
            assert lhs is None and rhs is None
        else:
            assert lhs[1] == rhs[1] and xy.coeff * lhs[0] == inner[0] * rhs[0]


@pytest.mark.parametrize("n", range(1, 6))
def test_rank_equals_head(n):
    for w in enumerate_lambda(n, 2):
        assert gram_rank(w, POINT) == dim_head(w, POINT)
        assert gram_rank(w, ParameterSpec.of(3, 3)) == dim_delta(w)


def test_dims_examples():
    w = W(2, (0, 0))
    assert (dim_head(w, POINT), dim_radical(w, POINT)) == (1, 1)
    assert dim_head(W(4, (0, 2))) == dim_delta(W(4, (0, 2)))


@pytest.mark.parametrize("orders", [(2, 4), (3, 3), (2, 2), (4, None), (3, 5)])
def test_two_colour_radical_formula(orders):
    for n in range(1, 7):
        for w in enumerate_lambda(n, 2):
            assert dim_radical_two_colour(w, orders) == dim_radical(w, orders)


def test_radical_series_examples():
    lam = lambda layers: [[x.lam for x in L] for L in layers]
    assert lam(radical_series(W(6, (0, 2)), POINT)) == [[(0, 2)], [(2, 2), (0, 4)], [(2, 4)]]
    assert lam(radical_series(W(6, (1, 1)), POINT)) == [[(1, 1)], [(1, 5)]]
    assert lam(radical_series(W(6, (1, 3)), POINT)) == [[(1, 3)]]
    assert lam(radical_series(W(4, (0, 2)), (None, None))) == [[(0, 2)]]


@pytest.mark.parametrize("orders", [(2, 4), (3, 3), (2, 3), (4, 4)])
def test_layer_sums(orders):
    for n in range(1, 7):
        for w in enumerate_lambda(n, 2):
            layers = radical_series(w, orders)
            assert sum(dim_head(x, orders) for L in layers for x in L) == dim_delta(w)
            movable = sum(1 for x, l in zip(w.lam, orders) if l and (x + 1) % l)
            assert len(layers) <= movable + 1


def test_localize_examples():
    assert localize(W(5, (1, 0)), (3, 2)) == (TLWeight(3, 1), TLWeight(2, 1))
    assert localize(W(4, (2, 2)), (2, 2)) == (TLWeight(2, 0), TLWeight(2, 0))
    assert localize(W(5, (1, 0)), (2, 3)) is None
    with pytest.raises(ValueError):
        localize(W(5, (1, 0)), (2, 2))


def test_localized_gram_block_is_tensor():
    # the colour-word block of the sorted word equals the tensor of the localized TL Gram matrices
    from bubble.tl import gram_tl

    w = W(5, (1, 0))
    mu = (3, 2)
    factors = localize(w, mu)
    target = (0, 0, 0, 1, 1)
    basis = enumerate_delta_basis(w)
    idx = [i for i, s in enumerate(basis) if s.colours == target]
    g = gram_direct(w)
    block = [[g[i, j] for j in idx] for i in idx]
    expected = gram_tl(factors[0].n, factors[0].p, 0, 2).kron(gram_tl(factors[1].n, factors[1].p, 1, 2))
    assert block == expected.tolist()


def test_specialized_gram_is_evaluated_entrywise():
    w = W(4, (0, 0))
    g = gram_direct(w)
    s = gram_specialized(w, POINT)
    assert s.rows == g.rows
    assert all(s[i, j] == evaluate(g[i, j], POINT) for i in range(g.rows) for j in range(g.cols))
