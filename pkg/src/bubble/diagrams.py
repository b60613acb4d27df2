"""Multi-colour partition diagrams, their product, and the bubble basis.

A ``ColouredDiagram`` on ``n`` strands stores two flat vectors over the
``2n`` nodes (top row ``0..n-1``, bottom row ``n..2n-1``): the colour of each
node and a canonical block label. Every block is monochromatic, so the
per-colour fragments are recovered by restricting the labels.

Products put the left factor on top: ``multiply(a, b)`` glues the bottom
row of ``a`` to the top row of ``b``.
"""

from __future__ import annotations

import random
import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import kernels
from .partitions import blocks_from_labels, canonical_labels, format_node, parse_node
from .scalars import LaurentPoly

COLOUR_NAMES = ("red", "blue")


@dataclass(frozen=True)
class ColouredDiagram:
    n: int
    m: int
    colours: tuple[int, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        size = 2 * self.n
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 and m >= 1")
        if len(self.colours) != size or len(self.labels) != size:
            raise ValueError(f"expected {size} node colours and labels")
        if any(not 0 <= c < self.m for c in self.colours):
            raise ValueError(f"colour out of range 0..{self.m - 1}")
        if tuple(self.labels) != canonical_labels(self.labels):
            raise ValueError("labels are not canonical; use ColouredDiagram.build")
        block_colour: dict[int, int] = {}
        for lab, c in zip(self.labels, self.colours):
            if block_colour.setdefault(lab, c) != c:
                raise ValueError("a block mixes colours")

    @classmethod
    def _trusted(cls, n: int, m: int, colours: tuple, labels: tuple) -> ColouredDiagram:
        # skips validation; callers guarantee canonical, monochromatic blocks
        d = object.__new__(cls)
        object.__setattr__(d, "n", n)
        object.__setattr__(d, "m", m)
        object.__setattr__(d, "colours", colours)
        object.__setattr__(d, "labels", labels)
        return d

    @classmethod
    def build(cls, n: int, m: int, colours: Sequence[int], labels: Sequence[int]) -> ColouredDiagram:
        return cls(n, m, tuple(colours), canonical_labels(labels))

    @classmethod
    def from_blocks(cls, n: int, m: int, blocks: Iterable[tuple[int, Iterable[int]]]) -> ColouredDiagram:
        """``blocks`` holds ``(colour, nodes)`` with nodes 1-based, primes as ``n + i``."""
        size = 2 * n
        colours = [-1] * size
        labels = [-1] * size
        for k, (c, nodes) in enumerate(blocks):
            nodes = list(nodes)
            if not nodes:
                raise ValueError("empty block")
            for x in nodes:
                if not 1 <= x <= size:
                    raise ValueError(f"node {x} out of range")
                if labels[x - 1] != -1:
                    raise ValueError(f"node {format_node(x, n)} appears in two blocks")
                colours[x - 1] = c
                labels[x - 1] = k
        missing = [format_node(i + 1, n) for i in range(size) if labels[i] == -1]
        if missing:
            raise ValueError(f"nodes not covered by any block: {', '.join(missing)}")
        return cls.build(n, m, colours, labels)

    @classmethod
    def parse(cls, text: str) -> ColouredDiagram:
        """Parse ``n=2 m=2; 0:{1,1'}; 1:{2,2'}``."""
        head, _, rest = text.strip().partition(";")
        hm = re.fullmatch(r"\s*n\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*", head)
        if not hm:
            raise ValueError(f"malformed diagram header {head!r}; expected 'n=<n> m=<m>'")
        n, m = int(hm.group(1)), int(hm.group(2))
        blocks = []
        for chunk in rest.split(";"):
            if not chunk.strip():
                continue
            bm = re.fullmatch(r"\s*(\d+)\s*:\s*\{([^}]*)\}\s*", chunk)
            if not bm:
                raise ValueError(f"malformed block {chunk.strip()!r}; expected '<colour>:{{nodes}}'")
            c = int(bm.group(1))
            if c >= m:
                raise ValueError(f"colour {c} out of range for m={m}")
            nodes = [parse_node(t, n, n) for t in bm.group(2).split(",") if t.strip()]
            blocks.append((c, nodes))
        return cls.from_blocks(n, m, blocks)

    @property
    def top(self) -> tuple[int, ...]:
        return self.colours[: self.n]

    @property
    def bottom(self) -> tuple[int, ...]:
        return self.colours[self.n:]

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted 1-based node tuples ordered by smallest node."""
        return blocks_from_labels(self.labels)

    def coloured_blocks(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        return tuple((self.colours[b[0] - 1], b) for b in self.blocks)

    def fragment(self, colour: int) -> tuple[tuple[int, ...], ...]:
        """Blocks of one colour (global node numbering)."""
        return tuple(b for c, b in self.coloured_blocks() if c == colour)

    def parts(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(self.fragment(j) for j in range(self.m))

    def reflect(self) -> ColouredDiagram:
        n = self.n
        return ColouredDiagram.build(
            n, self.m, self.colours[n:] + self.colours[:n], self.labels[n:] + self.labels[:n]
        )

    def sort_key(self):
        return (self.top, self.bottom, self.blocks)

    def __str__(self):
        body = "; ".join(
            f"{c}:{{" + ",".join(format_node(x, self.n) for x in b) + "}"
            for c, b in self.coloured_blocks()
        )
        return f"n={self.n} m={self.m}" + (f"; {body}" if body else "")


@dataclass(frozen=True)
class ColourProfile:
    top: tuple[frozenset[int], ...]
    bot: tuple[frozenset[int], ...]


def colour_profile(d: ColouredDiagram) -> ColourProfile:
    """Per colour, the top nodes ``1..n`` and bottom nodes ``1'..n'`` (as ``1..n``)."""
    n = d.n
    return ColourProfile(
        tuple(frozenset(i + 1 for i in range(n) if d.colours[i] == j) for j in range(d.m)),
        tuple(frozenset(i + 1 for i in range(n) if d.colours[n + i] == j) for j in range(d.m)),
    )


@dataclass(frozen=True)
class ScaledDiagram:
    """``coeff * diagram`` with ``coeff`` a nonzero Laurent monomial."""

    coeff: LaurentPoly
    diagram: ColouredDiagram

    def __str__(self):
        return f"({self.coeff}) * [{self.diagram}]"


def _monomial(removed: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial(tuple(removed))


def multiply(alpha: ColouredDiagram, beta: ColouredDiagram) -> ScaledDiagram | None:
    """Product with ``alpha`` on top; ``None`` stands for the zero element."""
    if alpha.n != beta.n or alpha.m != beta.m:
        raise ValueError(
            f"cannot multiply diagrams of shape (n={alpha.n}, m={alpha.m}) and (n={beta.n}, m={beta.m})"
        )
    if alpha.bottom != beta.top:
        return None
    n = alpha.n
    labels, removed = kernels.compose(alpha.labels, beta.labels, n, n, n, alpha.bottom, alpha.m)
    d = ColouredDiagram(n, alpha.m, alpha.top + beta.bottom, labels)
    return ScaledDiagram(_monomial(removed), d)


def multiply_scaled(x: ScaledDiagram | None, y: ScaledDiagram | None) -> ScaledDiagram | None:
    if x is None or y is None:
        return None
    prod = multiply(x.diagram, y.diagram)
    if prod is None:
        return None
    return ScaledDiagram(x.coeff * y.coeff * prod.coeff, prod.diagram)


def unit_diagram(word: Sequence[int], m: int) -> ColouredDiagram:
    """Straight strands ``i -- i'`` coloured by ``word``."""
    n = len(word)
    w = tuple(word)
    if any(not 0 <= c < m for c in w):
        raise ValueError(f"colour out of range 0..{m - 1}")
    return ColouredDiagram(n, m, w + w, tuple(range(n)) * 2)


def identity(n: int, m: int) -> list[ColouredDiagram]:
    """The ``m**n`` coloured identity strands; their sum is the unit."""
    if n < 1 or m < 1:
        raise ValueError("identity needs n >= 1 and m >= 1")
    return [unit_diagram(w, m) for w in product(range(m), repeat=n)]


# ---------------------------------------------------------------------------
# formal sums


class FormalSum:
    """Finite linear combination of coloured diagrams with Laurent coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[ColouredDiagram, LaurentPoly] | None = None, nvars: int = 1):
        self.nvars = nvars
        self.terms: dict[ColouredDiagram, LaurentPoly] = {}
        for d, c in (terms or {}).items():
            self._add(d, c)

    @classmethod
    def of(cls, diagrams: Iterable[ColouredDiagram], m: int) -> FormalSum:
        one = LaurentPoly.constant(1, m)
        out = cls(nvars=m)
        for d in diagrams:
            out._add(d, one)
        return out

    def _add(self, d, c):
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.constant(c, self.nvars)
        total = self.terms.get(d, LaurentPoly(None, self.nvars)) + c
        if total:
            self.terms[d] = total
        else:
            self.terms.pop(d, None)

    def __add__(self, other: FormalSum) -> FormalSum:
        out = FormalSum(self.terms, self.nvars)
        for d, c in other.terms.items():
            out._add(d, c)
        return out

    def __mul__(self, other: FormalSum | ColouredDiagram) -> FormalSum:
        if isinstance(other, ColouredDiagram):
            other = FormalSum.of([other], other.m)
        out = FormalSum(nvars=self.nvars)
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                p = multiply(a, b)
                if p is not None:
                    out._add(p.diagram, ca * cb * p.coeff)
        return out

    def __rmul__(self, other: ColouredDiagram) -> FormalSum:
        return FormalSum.of([other], other.m) * self

    def __eq__(self, other):
        if isinstance(other, ColouredDiagram):
            other = FormalSum.of([other], other.m)
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        return " + ".join(f"({c}) * [{d}]" for d, c in items)


def identity_sum(n: int, m: int) -> FormalSum:
    return FormalSum.of(identity(n, m), m)


# ---------------------------------------------------------------------------
# bubble diagrams


def is_bubble(d: ColouredDiagram) -> bool:
    """Blocks of size two with no crossing between edges of the same colour."""
    return kernels.planar_pairing(d.labels, d.n, d.n, d.colours, d.m)


def propagating_profile(d: ColouredDiagram) -> tuple[int, tuple[int, ...]]:
    per = [0] * d.m
    n = d.n
    for c, b in d.coloured_blocks():
        if b[0] <= n < b[-1]:
            per[c] += 1
    return sum(per), tuple(per)


def parity_split(d: ColouredDiagram) -> str:
    """``"even"`` or ``"odd"``: parity of the number of blue top nodes (m = 2)."""
    if d.m != 2:
        raise ValueError(f"parity split is defined for m = 2 only, got m = {d.m}")
    return "odd" if sum(d.top) % 2 else "even"


@lru_cache(maxsize=None)
def nc_matchings(k: int) -> tuple[tuple[int, ...], ...]:
    """Non-crossing perfect matchings of ``k`` points on a line as partner vectors."""
    if k % 2:
        return ()
    if k == 0:
        return ((),)
    out = []
    # point 0 pairs with an odd position j, splitting inside/outside
    for j in range(1, k, 2):
        for inner in nc_matchings(j - 1):
            for outer in nc_matchings(k - j - 1):
                part = [0] * k
                part[0], part[j] = j, 0
                for a, b in enumerate(inner):
                    part[a + 1] = b + 1
                for a, b in enumerate(outer):
                    part[a + j + 1] = b + j + 1
                out.append(tuple(part))
    return tuple(sorted(out))


def _boundary_order(n: int) -> list[int]:
    return list(range(n)) + list(range(2 * n - 1, n - 1, -1))


def _bubble_diagrams_for_words(
    top: tuple[int, ...], bot: tuple[int, ...], m: int, ordered: bool = True
) -> list[ColouredDiagram]:
    n = len(top)
    colours = top + bot
    per_colour: list[list[int]] = [[] for _ in range(m)]
    for node in _boundary_order(n):
        per_colour[colours[node]].append(node)
    if any(len(nodes) % 2 for nodes in per_colour):
        return []
    choices = [nc_matchings(len(nodes)) for nodes in per_colour]
    out = []
    for combo in product(*choices):
        labels = [0] * (2 * n)
        for nodes, match in zip(per_colour, combo):
            for a, b in enumerate(match):
                if a < b:
                    labels[nodes[a]] = labels[nodes[b]] = nodes[a]
        out.append(ColouredDiagram._trusted(n, m, colours, canonical_labels(labels)))
    if ordered:
        out.sort(key=lambda d: d.blocks)
    return out


def iter_bubble_basis(n: int, m: int, ordered: bool = True) -> Iterator[ColouredDiagram]:
    """Stream the bubble basis without materializing it.

    With ``ordered=False`` diagrams sharing colour words come out in
    matching-product order instead of block order, which is cheaper.
    """
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    words = list(product(range(m), repeat=n))
    for top in words:
        for bot in words:
            yield from _bubble_diagrams_for_words(top, bot, m, ordered)


def enumerate_bubble_basis(n: int, m: int) -> list[ColouredDiagram]:
    """All bubble diagrams sorted by (top colour word, bottom colour word, blocks)."""
    return list(iter_bubble_basis(n, m))


def enumerate_bubble_basis_lambda(n: int, m: int, lam: Sequence[int]) -> list[ColouredDiagram]:
    """Bubble diagrams whose colour-``j`` propagating number is ``lam[j]``."""
    lam = tuple(lam)
    if len(lam) != m or any(x < 0 for x in lam) or sum(lam) > n or (n - sum(lam)) % 2:
        raise ValueError(f"weight {lam} is not in the weight set for n={n}, m={m}")
    return [d for d in iter_bubble_basis(n, m) if propagating_profile(d)[1] == lam]


# ---------------------------------------------------------------------------
# conjugation of identity summands


def sorted_word(word: Sequence[int], m: int) -> tuple[int, ...]:
    counts = [0] * m
    for c in word:
        counts[c] += 1
    return tuple(j for j in range(m) for _ in range(counts[j]))


def shuffle_diagram(word: Sequence[int], m: int) -> ColouredDiagram:
    """Top coloured by ``word``, bottom by its sorted word; lines of one colour keep their order."""
    word = tuple(word)
    n = len(word)
    target = sorted_word(word, m)
    offsets = [0] * m
    start = {}
    for pos, c in enumerate(target):
        start.setdefault(c, pos)
    labels = [0] * (2 * n)
    for i, c in enumerate(word):
        dest = start[c] + offsets[c]
        offsets[c] += 1
        labels[i] = labels[n + dest] = i
    return ColouredDiagram(n, m, word + target, canonical_labels(labels))


def conjugator(word: Sequence[int], m: int) -> tuple[FormalSum, FormalSum]:
    """Invertible ``D`` with ``D * 1_word * D_inv == 1_sorted``.

    ``D`` swaps the summands ``1_word`` and ``1_sorted`` through the shuffle
    ``Y`` and its reflection ``X``, and fixes every other identity summand:
    ``D = X + Y + sum of the remaining 1_B``. It is its own inverse.
    """
    word = tuple(word)
    n = len(word)
    if n < 1 or any(not 0 <= c < m for c in word):
        raise ValueError(f"invalid colour assignment {word} for m={m}")
    target = sorted_word(word, m)
    if word == target:
        d = identity_sum(n, m)
        return d, d
    y = shuffle_diagram(word, m)
    x = y.reflect()
    rest = [u for u in identity(n, m) if u.top not in (word, target)]
    d = FormalSum.of([x, y, *rest], m)
    return d, FormalSum(d.terms, m)


# ---------------------------------------------------------------------------
# random diagrams for property tests


def _random_set_partition(nodes: Sequence[int], rng: random.Random) -> list[int]:
    labels = []
    blocks = 0
    for _ in nodes:
        k = rng.randint(0, blocks)
        if k == blocks:
            blocks += 1
        labels.append(k)
    return labels


def random_diagram(
    n: int,
    m: int,
    rng: random.Random,
    top: Sequence[int] | None = None,
    bottom: Sequence[int] | None = None,
) -> ColouredDiagram:
    """A random element of the multi-colour partition basis."""
    top = tuple(rng.randrange(m) for _ in range(n)) if top is None else tuple(top)
    bottom = tuple(rng.randrange(m) for _ in range(n)) if bottom is None else tuple(bottom)
    colours = top + bottom
    labels = [0] * (2 * n)
    for j in range(m):
        nodes = [i for i in range(2 * n) if colours[i] == j]
        for node, lab in zip(nodes, _random_set_partition(nodes, rng)):
            labels[node] = j * 2 * n + lab
    return ColouredDiagram(n, m, colours, canonical_labels(labels))


def random_bubble(
    n: int, m: int, rng: random.Random, top: Sequence[int] | None = None
) -> ColouredDiagram:
    """A random bubble diagram; the bottom word is drawn to fix colour parities."""
    top = tuple(rng.randrange(m) for _ in range(n)) if top is None else tuple(top)
    while True:
        bottom = tuple(rng.randrange(m) for _ in range(n))
        colours = top + bottom
        if all(colours.count(j) % 2 == 0 for j in range(m)):
            break
    per_colour: list[list[int]] = [[] for _ in range(m)]
    for node in _boundary_order(n):
        per_colour[colours[node]].append(node)
    labels = [0] * (2 * n)
    for nodes in per_colour:
        match = rng.choice(nc_matchings(len(nodes)))
        for a, b in enumerate(match):
            if a < b:
                labels[nodes[a]] = labels[nodes[b]] = nodes[a]
    return ColouredDiagram(n, m, colours, canonical_labels(labels))
