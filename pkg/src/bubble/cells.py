"""Cell modules of the bubble algebra.

A cell module is indexed by a weight ``lam`` (one propagating count per
colour). Its basis consists of multi-colour link states: a colour word on
the ``n`` boundary nodes together with, for each colour, a TL link state on
the nodes of that colour carrying exactly ``lam[j]`` defects.

Basis order: colour words ascending, then the per-colour link states in
product order with colour 0 varying slowest. With this order the Gram
matrix is block diagonal, one block per colour word, and each block is the
Kronecker product of TL Gram matrices.
"""

from __future__ import annotations

import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import factorial, prod

from . import kernels
from .diagrams import ColouredDiagram
from .linalg import ExactMatrix, determinant, rank
from .scalars import LaurentPoly, ParameterSpec, evaluate
from .tl import LinkState, TLWeight, dim_cell, dim_head_tl, dim_radical_tl, enumerate_link_states, gram_tl

Orders = Sequence[int | None]


def compositions(total: int, m: int) -> list[tuple[int, ...]]:
    """All ``m``-tuples of naturals summing to ``total``, descending lexicographic."""
    if m == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, m - 1):
            out.append((first, *rest))
    return out


def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for x in parts:
        out //= factorial(x)
    return out


@dataclass(frozen=True)
class WeightLambda:
    n: int
    m: int
    lam: tuple[int, ...]

    def __post_init__(self):
        lam = self.lam
        if len(lam) != self.m:
            raise ValueError(f"weight {lam} has {len(lam)} entries but m = {self.m}")
        if any(x < 0 for x in lam) or sum(lam) > self.n or (self.n - sum(lam)) % 2:
            raise ValueError(
                f"weight {lam} is not in the weight set for n={self.n}: "
                "entries must be >= 0 with n - sum even and nonnegative"
            )

    @classmethod
    def of(cls, n: int, lam: Sequence[int]) -> WeightLambda:
        return cls(n, len(lam), tuple(lam))

    @property
    def v(self) -> int:
        return (self.n - sum(self.lam)) // 2

    def __str__(self):
        return "(" + ",".join(map(str, self.lam)) + ")"


def enumerate_lambda(n: int, m: int) -> list[WeightLambda]:
    """Weights ordered by number of arcs ``v`` ascending, then descending lexicographic."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return [WeightLambda(n, m, lam) for v in range(n // 2 + 1) for lam in compositions(n - 2 * v, m)]


def _colour_char(c: int, m: int) -> str:
    return "rb"[c] if m <= 2 else str(c)


@dataclass(frozen=True)
class MultiLinkState:
    """Colour word plus one TL link state per colour on that colour's nodes."""

    m: int
    colours: tuple[int, ...]
    parts: tuple[LinkState, ...]

    def __post_init__(self):
        if len(self.parts) != self.m:
            raise ValueError("need one link state per colour")
        for j, part in enumerate(self.parts):
            if part.n != self.colours.count(j):
                raise ValueError(f"colour {j} link state has {part.n} nodes, colour word has {self.colours.count(j)}")

    @property
    def n(self) -> int:
        return len(self.colours)

    @property
    def lam(self) -> tuple[int, ...]:
        return tuple(p.n - 2 * p.p for p in self.parts)

    def partners(self) -> list[int]:
        """Partner array on all ``n`` nodes (0-based, ``-1`` for defects)."""
        positions: list[list[int]] = [[] for _ in range(self.m)]
        for i, c in enumerate(self.colours):
            positions[c].append(i)
        out = [-1] * self.n
        for j, part in enumerate(self.parts):
            pos = positions[j]
            for a, b in part.arcs:
                out[pos[a - 1]] = pos[b - 1]
                out[pos[b - 1]] = pos[a - 1]
        return out

    @classmethod
    def from_partners(cls, colours: Sequence[int], partners: Sequence[int], m: int) -> MultiLinkState:
        colours = tuple(colours)
        local = [0] * len(colours)
        counts = [0] * m
        for i, c in enumerate(colours):
            counts[c] += 1
            local[i] = counts[c]
        arcs: list[list[tuple[int, int]]] = [[] for _ in range(m)]
        for i, j in enumerate(partners):
            if j > i:
                arcs[colours[i]].append((local[i], local[j]))
        return cls(m, colours, tuple(LinkState.from_arcs(counts[c], arcs[c]) for c in range(m)))

    @classmethod
    def parse(cls, text: str, m: int) -> MultiLinkState:
        """Parse ``colours=rrbrb; 0:arcs=(1,2); 1:arcs=(3,5)``.

        Arc endpoints are global node positions; a colour without an entry has no arcs.
        """
        chunks = [c.strip() for c in text.split(";") if c.strip()]
        if not chunks or not chunks[0].startswith("colours="):
            raise ValueError(f"malformed link state {text!r}; expected 'colours=<word>; <c>:arcs=...'")
        word = chunks[0][len("colours="):].strip()
        letters = {"r": 0, "b": 1} if m <= 2 else {}
        try:
            colours = tuple(letters[ch] if ch in letters else int(ch) for ch in word)
        except ValueError:
            raise ValueError(f"bad colour word {word!r}") from None
        if any(not 0 <= c < m for c in colours):
            raise ValueError(f"colour word {word!r} uses colours outside 0..{m - 1}")
        partners = [-1] * len(colours)
        for chunk in chunks[1:]:
            cm = re.fullmatch(r"(\d+)\s*:\s*arcs\s*=\s*((?:\(\s*\d+\s*,\s*\d+\s*\)\s*)*)", chunk)
            if not cm:
                raise ValueError(f"malformed arc list {chunk!r}")
            c = int(cm.group(1))
            for a, b in re.findall(r"\((\d+)\s*,\s*(\d+)\)", cm.group(2)):
                a, b = int(a) - 1, int(b) - 1
                if not (0 <= a < len(colours) and 0 <= b < len(colours)):
                    raise ValueError(f"arc ({a + 1},{b + 1}) out of range")
                if colours[a] != c or colours[b] != c:
                    raise ValueError(f"arc ({a + 1},{b + 1}) does not join two colour-{c} nodes")
                if partners[a] != -1 or partners[b] != -1:
                    raise ValueError(f"node reused in arc ({a + 1},{b + 1})")
                partners[a], partners[b] = b, a
        return cls.from_partners(colours, partners, m)

    def __str__(self):
        word = "".join(_colour_char(c, self.m) for c in self.colours)
        partners = self.partners()
        pieces = [f"colours={word}"]
        for j in range(self.m):
            arcs = [(i + 1, partners[i] + 1) for i in range(self.n) if partners[i] > i and self.colours[i] == j]
            if arcs:
                pieces.append(f"{j}:arcs=" + "".join(f"({a},{b})" for a, b in arcs))
        return "; ".join(pieces)


def _colour_words(lw: WeightLambda) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Colour words admitted by ``lw`` in ascending order, with their arc vector ``u``."""
    for word in product(range(lw.m), repeat=lw.n):
        counts = [word.count(j) for j in range(lw.m)]
        diff = [c - x for c, x in zip(counts, lw.lam)]
        if all(d >= 0 and d % 2 == 0 for d in diff):
            yield word, tuple(d // 2 for d in diff)


@lru_cache(maxsize=None)
def _delta_basis(lw: WeightLambda) -> tuple[MultiLinkState, ...]:
    out = []
    for word, u in _colour_words(lw):
        per = [enumerate_link_states(lw.lam[j] + 2 * u[j], u[j]) for j in range(lw.m)]
        for combo in product(*per):
            out.append(MultiLinkState(lw.m, word, tuple(combo)))
    return tuple(out)


def enumerate_delta_basis(lw: WeightLambda) -> list[MultiLinkState]:
    return list(_delta_basis(lw))


def dim_delta(lw: WeightLambda) -> int:
    return sum(
        multinomial([x + 2 * y for x, y in zip(lw.lam, u)])
        * prod(dim_cell(x + 2 * y, y) for x, y in zip(lw.lam, u))
        for u in compositions(lw.v, lw.m)
    )


# ---------------------------------------------------------------------------
# action and form


def _half_diagram(a: MultiLinkState) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Labels and colours of ``a`` drawn as ``n`` top nodes over its defects."""
    n = a.n
    partners = a.partners()
    labels = [0] * n
    colours = list(a.colours)
    defect_labels = []
    for i, j in enumerate(partners):
        if j == -1:
            labels[i] = i
            defect_labels.append(i)
            colours.append(a.colours[i])
        else:
            labels[i] = min(i, j)
    return tuple(labels + defect_labels), tuple(colours)


def act(d: ColouredDiagram, a: MultiLinkState) -> tuple[LaurentPoly, MultiLinkState] | None:
    """``d`` placed on top of ``a``; ``None`` for zero (colour mismatch or lost defects)."""
    if d.n != a.n or d.m != a.m:
        raise ValueError(f"diagram shape (n={d.n}, m={d.m}) does not match state (n={a.n}, m={a.m})")
    if d.bottom != a.colours:
        return None
    n = d.n
    half, _ = _half_diagram(a)
    k = len(half) - n
    labels, removed = kernels.compose(d.labels, half, n, n, k, d.bottom, d.m)
    bottom_blocks = set(labels[n:])
    if len(bottom_blocks) < k:
        return None
    members: dict[int, list[int]] = {}
    for i in range(n):
        members.setdefault(labels[i], []).append(i)
    partners = [-1] * n
    for lab, nodes in members.items():
        if lab in bottom_blocks:
            if len(nodes) != 1:
                raise ValueError("act needs a bubble diagram")
            continue
        if len(nodes) != 2:
            raise ValueError("act needs a bubble diagram")
        i, j = nodes
        partners[i], partners[j] = j, i
    state = MultiLinkState.from_partners(d.top, partners, d.m)
    return LaurentPoly.monomial(removed), state


def inner_product(a: MultiLinkState, b: MultiLinkState) -> LaurentPoly:
    """Glue ``a`` reflected onto ``b``; one loop of colour ``j`` contributes ``d_j``."""
    if a.m != b.m or a.n != b.n or a.lam != b.lam:
        raise ValueError("inner product needs two states of the same cell module")
    zero = LaurentPoly(None, a.m)
    if a.colours != b.colours:
        return zero
    loops = kernels.pair_form(a.partners(), b.partners(), a.colours, a.m)
    if loops is None:
        return zero
    return LaurentPoly.monomial(loops)


@lru_cache(maxsize=None)
def gram_direct(lw: WeightLambda) -> ExactMatrix:
    """Gram matrix of the form on the enumerated basis, entry by entry."""
    basis = _delta_basis(lw)
    zero = LaurentPoly(None, lw.m)
    rows = []
    for a in basis:
        rows.append([inner_product(a, b) if a.colours == b.colours else zero for b in basis])
    return ExactMatrix(rows, len(basis))


@dataclass(frozen=True)
class GramBlock:
    u: tuple[int, ...]
    multiplicity: int
    factors: tuple[ExactMatrix, ...]

    @property
    def size(self) -> int:
        return prod(f.rows for f in self.factors)

    def tensor(self) -> ExactMatrix:
        out = ExactMatrix([[1]], 1)
        for f in self.factors:
            out = out.kron(f)
        return out


@dataclass(frozen=True)
class GramBlockReport:
    lw: WeightLambda
    blocks: tuple[GramBlock, ...]
    determinant: LaurentPoly

    @property
    def dim(self) -> int:
        return sum(b.multiplicity * b.size for b in self.blocks)

    def assemble(self) -> ExactMatrix:
        """Block-diagonal matrix in basis order (one tensor block per colour word)."""
        by_u = {b.u: b.tensor() for b in self.blocks}
        zero = LaurentPoly(None, self.lw.m)
        pieces = [by_u[u] for _, u in _colour_words(self.lw)]
        return ExactMatrix.block_diag(pieces, zero=zero)


@lru_cache(maxsize=None)
def _tl_det(n: int, p: int, var: int, nvars: int) -> LaurentPoly:
    d = determinant(gram_tl(n, p, var, nvars))
    return d if isinstance(d, LaurentPoly) else LaurentPoly.constant(d, nvars)


def gram_det(lw: WeightLambda) -> LaurentPoly:
    """Closed product formula for the Gram determinant."""
    m = lw.m
    total = LaurentPoly.constant(1, m)
    for u in compositions(lw.v, m):
        sizes = [x + 2 * y for x, y in zip(lw.lam, u)]
        dims = [dim_cell(s, y) for s, y in zip(sizes, u)]
        whole = prod(dims)
        mult = multinomial(sizes)
        for j in range(m):
            total = total * _tl_det(sizes[j], u[j], j, m) ** (whole // dims[j] * mult)
    return total


def gram_factorized(lw: WeightLambda) -> GramBlockReport:
    m = lw.m
    blocks = []
    for u in compositions(lw.v, m):
        sizes = [x + 2 * y for x, y in zip(lw.lam, u)]
        factors = tuple(gram_tl(sizes[j], u[j], j, m) for j in range(m))
        blocks.append(GramBlock(u, multinomial(sizes), factors))
    return GramBlockReport(lw, tuple(blocks), gram_det(lw))


def gram_specialized(lw: WeightLambda, params: ParameterSpec) -> ExactMatrix:
    """Gram matrix with every parameter replaced by its exact value."""
    if params.m != lw.m:
        raise ValueError(f"{params.m} parameters given for m = {lw.m}")
    values = params.values()
    cache: dict[LaurentPoly, object] = {}

    def ev(x):
        if x not in cache:
            cache[x] = evaluate(x, params, values)
        return cache[x]

    return gram_direct(lw).map(ev)


def gram_rank(lw: WeightLambda, params: ParameterSpec) -> int:
    return rank(gram_specialized(lw, params))


# ---------------------------------------------------------------------------
# dimensions


def _orders(lw: WeightLambda, orders) -> tuple[int | None, ...]:
    if isinstance(orders, ParameterSpec):
        orders = orders.orders()
    orders = tuple(orders) if orders is not None else (None,) * lw.m
    if len(orders) != lw.m:
        raise ValueError(f"{len(orders)} orders given for m = {lw.m}")
    return orders


def dim_head(lw: WeightLambda, orders: Orders | ParameterSpec | None = None) -> int:
    """Dimension of the simple head, from the TL head dimensions of each factor."""
    ls = _orders(lw, orders)
    return sum(
        multinomial([x + 2 * y for x, y in zip(lw.lam, u)])
        * prod(dim_head_tl(x + 2 * y, y, l) for x, y, l in zip(lw.lam, u, ls))
        for u in compositions(lw.v, lw.m)
    )


def dim_radical(lw: WeightLambda, orders: Orders | ParameterSpec | None = None) -> int:
    return dim_delta(lw) - dim_head(lw, orders)


def dim_radical_two_colour(lw: WeightLambda, orders: Orders | ParameterSpec | None = None) -> int:
    """Inclusion-exclusion count of the radical for two colours."""
    if lw.m != 2:
        raise ValueError("the two-colour radical formula needs m = 2")
    (l0, l1) = _orders(lw, orders)
    total = 0
    for u0, u1 in compositions(lw.v, 2):
        n0, n1 = lw.lam[0] + 2 * u0, lw.lam[1] + 2 * u1
        r0, r1 = dim_radical_tl(n0, u0, l0), dim_radical_tl(n1, u1, l1)
        v0, v1 = dim_cell(n0, u0), dim_cell(n1, u1)
        total += multinomial((n0, n1)) * (r0 * v1 + v0 * r1 - r0 * r1)
    return total


def shift_vector(lw: WeightLambda, orders: Orders | ParameterSpec | None = None) -> tuple[int | None, ...]:
    """Per colour ``t_j`` with ``lam_j + t_j + 1 = 0 (mod l_j)``; ``None`` if generic, 0 if critical."""
    out = []
    for x, l in zip(lw.lam, _orders(lw, orders)):
        out.append(None if l is None else (l - (x + 1) % l) % l)
    return tuple(out)


def radical_series(lw: WeightLambda, orders: Orders | ParameterSpec | None = None) -> list[list[WeightLambda]]:
    """Loewy layers as lists of weights whose simple heads make up the layer.

    Layer ``k`` shifts exactly ``k`` of the non-critical root-of-unity colours
    by ``2 t_j``; weights exceeding ``n`` strands are dropped.
    """
    t = shift_vector(lw, orders)
    movable = [j for j, tj in enumerate(t) if tj]
    layers = []
    for k in range(len(movable) + 1):
        layer = []
        for chosen in combinations(movable, k):
            lam = list(lw.lam)
            for j in chosen:
                lam[j] += 2 * t[j]
            if sum(lam) <= lw.n:
                layer.append(WeightLambda(lw.n, lw.m, tuple(lam)))
        if not layer:
            break
        layers.append(layer)
    return layers


def localize(lw: WeightLambda, mu: Sequence[int], orders: Orders | ParameterSpec | None = None) -> tuple[TLWeight, ...] | None:
    """TL factors of the summand cut out by the idempotent with colour counts ``mu``.

    ``None`` when some ``mu_j - lam_j`` is negative or odd.
    """
    mu = tuple(mu)
    if len(mu) != lw.m or sum(mu) != lw.n or any(x < 0 for x in mu):
        raise ValueError(f"{mu} is not a colour distribution of {lw.n} nodes into {lw.m} colours")
    ls = _orders(lw, orders)
    out = []
    for x, y, l in zip(lw.lam, mu, ls):
        if y < x or (y - x) % 2:
            return None
        out.append(TLWeight(y, (y - x) // 2, l))
    return tuple(out)
