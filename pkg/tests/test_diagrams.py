import random
from itertools import combinations, product

import pytest

from bubble.diagrams import (
    ColouredDiagram,
    FormalSum,
    conjugator,
    enumerate_bubble_basis,
    enumerate_bubble_basis_lambda,
    identity,
    identity_sum,
    is_bubble,
    iter_bubble_basis,
    multiply,
    multiply_scaled,
    parity_split,
    propagating_profile,
    random_bubble,
    random_diagram,
    ScaledDiagram,
    unit_diagram,
)
from bubble.scalars import LaurentPoly

P = ColouredDiagram.parse


def perfect_matchings(nodes):
    if not nodes:
        yield []
        return
    first, rest = nodes[0], nodes[1:]
    for i, x in enumerate(rest):
        for m in perfect_matchings(rest[:i] + rest[i + 1:]):
            yield [(first, x)] + m


def brute_bubble_count(n, m):
    """Every pairing of the 2n nodes, every block colouring, crossing test by interleaving."""
    cycle = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    pos = {x: i for i, x in enumerate(cycle)}

    def cross(p, q):
        a, b = sorted((pos[p[0]], pos[p[1]]))
        c, d = sorted((pos[q[0]], pos[q[1]]))
        return a < c < b < d or c < a < d < b

    total = 0
    for match in perfect_matchings(list(range(2 * n))):
        for cols in product(range(m), repeat=n):
            if not any(cols[i] == cols[j] and cross(match[i], match[j]) for i, j in combinations(range(n), 2)):
                total += 1
    return total


def test_text_roundtrip():
    d = P("n=2 m=2; 0:{1,1'}; 1:{2,2'}")
    assert str(d) == "n=2 m=2; 0:{1,1'}; 1:{2,2'}"
    assert P(str(d)) == d
    for bad in ("n=2; 0:{1,1'}", "n=2 m=2; 0:{1,1'}", "n=1 m=1; 3:{1,1'}", "n=1 m=1; 0:{1,2'}"):
        with pytest.raises(ValueError):
            P(bad)
    with pytest.raises(ValueError):
        ColouredDiagram.build(1, 2, (0, 1), (0, 0))  # mixed-colour block


def test_multiply_examples():
    red = P("n=1 m=2; 0:{1,1'}")
    blue = P("n=1 m=2; 1:{1,1'}")
    assert multiply(red, blue) is None
    cup = P("n=2 m=2; 0:{1,2}; 0:{1',2'}")
    prod = multiply(cup, cup)
    assert prod.diagram == cup and prod.coeff == LaurentPoly.monomial((1, 0))
    d = P("n=2 m=2; 1:{1,2'}; 0:{2,1'}")
    unit = unit_diagram(d.top, 2)
    assert multiply(unit, d) == ScaledDiagram(LaurentPoly.constant(1, 2), d)
    with pytest.raises(ValueError):
        multiply(red, cup)


def test_identity_examples():
    assert len(identity(2, 2)) == 4
    assert len(identity(1, 3)) == 3
    assert identity(1, 1) == [P("n=1 m=1; 0:{1,1'}")]
    for u in identity(3, 2):
        sq = multiply(u, u)
        assert sq.diagram == u and sq.coeff == 1


def test_is_bubble_examples():
    assert not is_bubble(P("n=2 m=2; 0:{1,2'}; 0:{2,1'}"))
    assert is_bubble(P("n=2 m=2; 0:{1,2'}; 1:{2,1'}"))
    assert not is_bubble(P("n=2 m=1; 0:{1,2,1'}; 0:{2'}"))


@pytest.mark.parametrize("n,m,expected", [(1, 2, 2), (2, 1, 2), (2, 2, 10), (2, 3, 24), (3, 2, 70), (3, 3, 285), (4, 2, 588)])
def test_basis_counts(n, m, expected):
    basis = enumerate_bubble_basis(n, m)
    assert len(basis) == expected == len(set(basis))
    assert all(is_bubble(d) for d in basis)
    if n <= 3:
        assert brute_bubble_count(n, m) == expected


def test_basis_order_and_lambda_variant():
    basis = enumerate_bubble_basis(3, 2)
    assert basis == sorted(basis, key=lambda d: d.sort_key())
    assert sorted(iter_bubble_basis(3, 2, ordered=False), key=lambda d: d.sort_key()) == basis
    only = enumerate_bubble_basis_lambda(2, 2, (2, 0))
    assert only == [P("n=2 m=2; 0:{1,1'}; 0:{2,2'}")]
    with pytest.raises(ValueError):
        enumerate_bubble_basis_lambda(2, 2, (1, 0))


def test_basis_closed_under_product():
    basis = enumerate_bubble_basis(3, 2)
    index = set(basis)
    for a in basis:
        for b in basis:
            p = multiply(a, b)
            assert p is None or (p.diagram in index and p.coeff.is_monomial())


def test_propagating_examples():
    total, per = propagating_profile(unit_diagram((1, 0, 1), 2))
    assert total == 3
    assert propagating_profile(P("n=2 m=2; 0:{1,2}; 0:{1',2'}")) == (0, (0, 0))
    d = P("n=3 m=2; 0:{1,1'}; 1:{2,3}; 1:{2',3'}")
    assert propagating_profile(d) == (1, (1, 0))
    for d in enumerate_bubble_basis(3, 3):
        assert propagating_profile(d)[0] % 2 == 1


def test_parity_examples():
    assert parity_split(unit_diagram((0, 0), 2)) == "even"
    assert parity_split(unit_diagram((1, 0, 0), 2)) == "odd"
    assert parity_split(P("n=4 m=2; 1:{1,2}; 1:{3,4}; 0:{1',2'}; 0:{3',4'}")) == "even"
    with pytest.raises(ValueError):
        parity_split(unit_diagram((0,), 3))


@pytest.mark.parametrize("n", range(1, 6))
def test_parity_split_is_algebra_splitting(n):
    basis = enumerate_bubble_basis(n, 2) if n <= 4 else list(iter_bubble_basis(n, 2, ordered=False))
    halves = {"even": [], "odd": []}
    for d in basis:
        halves[parity_split(d)].append(d)
    assert len(halves["even"]) + len(halves["odd"]) == len(basis)
    rng = random.Random(n)
    evens = rng.sample(halves["even"], min(60, len(halves["even"])))
    odds = rng.sample(halves["odd"], min(60, len(halves["odd"])))
    for a in evens:
        for b in odds:
            assert multiply(a, b) is None and multiply(b, a) is None
    for name, half in halves.items():
        unit = FormalSum.of([u for u in identity(n, 2) if parity_split(u) == name], 2)
        for d in rng.sample(half, min(80, len(half))):
            assert unit * d == d and d * unit == d


def test_associativity_random():
    rng = random.Random(21)
    one = lambda m: LaurentPoly.constant(1, m)
    for _ in range(1000):
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        w = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(4)]
        a, b, c = (random_diagram(n, m, rng, w[i], w[i + 1]) for i in range(3))
        sa, sb, sc = (ScaledDiagram(one(m), x) for x in (a, b, c))
        left = multiply_scaled(multiply_scaled(sa, sb), sc)
        right = multiply_scaled(sa, multiply_scaled(sb, sc))
        assert left == right


def test_bubble_closure_random():
    rng = random.Random(22)
    for _ in range(500):
        n, m = rng.randint(1, 5), rng.randint(1, 3)
        a = random_bubble(n, m, rng)
        b = random_bubble(n, m, rng, top=a.bottom)
        assert is_bubble(a) and is_bubble(b)
        assert is_bubble(multiply(a, b).diagram)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 2), (2, 3)])
def test_identity_is_unit(n, m):
    unit = identity_sum(n, m)
    for d in enumerate_bubble_basis(n, m):
        assert unit * d == d and d * unit == d


def test_conjugator_examples():
    D, D_inv = conjugator((0, 1), 2)
    assert D == identity_sum(2, 2)
    D, _ = conjugator((1, 0), 2)
    swap = P("n=2 m=2; 1:{1,2'}; 0:{2,1'}")
    assert swap in D.terms


@pytest.mark.parametrize("n", range(1, 5))
def test_conjugator_exhaustive(n):
    unit = identity_sum(n, 2)
    for word in product(range(2), repeat=n):
        D, D_inv = conjugator(word, 2)
        assert D * D_inv == unit
        target = tuple(sorted(word))
        assert D * unit_diagram(word, 2) * D_inv == unit_diagram(target, 2)


def test_conjugator_three_colours():
    unit = identity_sum(3, 3)
    for word in product(range(3), repeat=3):
        D, D_inv = conjugator(word, 3)
        assert D * D_inv == unit
        assert D * unit_diagram(word, 3) * D_inv == unit_diagram(tuple(sorted(word)), 3)
    with pytest.raises(ValueError):
        conjugator((0, 3), 3)
