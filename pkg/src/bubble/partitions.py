"""Uncoloured set-partition diagrams on ``{1..n_top} u {1'..n_bot'}``.

Internally node ``i'`` of the bottom row is the integer ``n_top + i``;
all text I/O uses the primed notation, e.g. ``{1,3,2'}; {2,1'}``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from . import kernels


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Renumber block labels in order of first occurrence."""
    seen: dict[int, int] = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def blocks_from_labels(labels: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Blocks as sorted tuples of 1-based node indices, ordered by smallest node."""
    groups: dict[int, list[int]] = {}
    for node, lab in enumerate(labels, start=1):
        groups.setdefault(lab, []).append(node)
    return tuple(sorted(tuple(g) for g in groups.values()))


def format_node(node: int, n_top: int) -> str:
    return str(node) if node <= n_top else f"{node - n_top}'"


def parse_node(token: str, n_top: int, n_bot: int) -> int:
    tok = token.strip()
    m = re.fullmatch(r"(\d+)('?)", tok)
    if not m:
        raise ValueError(f"malformed node {token!r}")
    i = int(m.group(1))
    if m.group(2):
        if not 1 <= i <= n_bot:
            raise ValueError(f"bottom node {tok} out of range 1'..{n_bot}'")
        return n_top + i
    if not 1 <= i <= n_top:
        raise ValueError(f"top node {tok} out of range 1..{n_top}")
    return i


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``n_top`` top nodes and ``n_bot`` bottom nodes.

    ``blocks`` is canonical: each block sorted, blocks ordered by their
    smallest node. Use ``from_blocks`` to build one from arbitrary input.
    """

    n_top: int
    n_bot: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        nodes = sorted(x for b in self.blocks for x in b)
        if nodes != list(range(1, self.n_top + self.n_bot + 1)):
            raise ValueError("blocks must be disjoint and cover every node exactly once")
        if any(not b for b in self.blocks):
            raise ValueError("empty block")
        if self.blocks != tuple(sorted(tuple(sorted(b)) for b in self.blocks)):
            raise ValueError("blocks are not in canonical form; use SetPartition.from_blocks")

    @classmethod
    def from_blocks(cls, n_top: int, n_bot: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
        return cls(n_top, n_bot, tuple(sorted(tuple(sorted(b)) for b in blocks)))

    @classmethod
    def from_labels(cls, n_top: int, n_bot: int, labels: Sequence[int]) -> SetPartition:
        if len(labels) != n_top + n_bot:
            raise ValueError("label vector has the wrong length")
        return cls(n_top, n_bot, blocks_from_labels(labels))

    @classmethod
    def identity(cls, n: int) -> SetPartition:
        return cls(n, n, tuple((i, n + i) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str, n_top: int, n_bot: int | None = None) -> SetPartition:
        """Parse ``{1,2}; {1',2'}``."""
        if n_bot is None:
            n_bot = n_top
        blocks = []
        for chunk in re.findall(r"\{([^}]*)\}", text):
            blocks.append([parse_node(t, n_top, n_bot) for t in chunk.split(",") if t.strip()])
        return cls.from_blocks(n_top, n_bot, blocks)

    def canonicalize(self) -> SetPartition:
        return SetPartition.from_blocks(self.n_top, self.n_bot, self.blocks)

    @property
    def labels(self) -> tuple[int, ...]:
        lab = [0] * (self.n_top + self.n_bot)
        for k, b in enumerate(self.blocks):
            for x in b:
                lab[x - 1] = k
        return tuple(lab)

    def reflect(self) -> SetPartition:
        """Mirror in the horizontal axis (swap the rows)."""
        t, b = self.n_top, self.n_bot

        def flip(x):
            return x + b if x <= t else x - t

        return SetPartition.from_blocks(b, t, ([flip(x) for x in blk] for blk in self.blocks))

    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def __str__(self):
        return "; ".join(
            "{" + ",".join(format_node(x, self.n_top) for x in b) + "}" for b in self.blocks
        )


def stack(alpha: SetPartition, beta: SetPartition) -> tuple[SetPartition, int]:
    """Place ``alpha`` above ``beta`` and identify the middle row.

    Returns the composite ``(alpha.n_top, beta.n_bot)``-partition and the
    number of components left floating in the middle row.
    """
    if alpha.n_bot != beta.n_top:
        raise ValueError(
            f"cannot stack: alpha has {alpha.n_bot} bottom nodes but beta has {beta.n_top} top nodes"
        )
    mid = alpha.n_bot
    labels, removed = kernels.compose(
        alpha.labels, beta.labels, alpha.n_top, mid, beta.n_bot, (0,) * mid, 1
    )
    return SetPartition.from_labels(alpha.n_top, beta.n_bot, labels), removed[0]


def propagating_number(d: SetPartition) -> int:
    """Number of blocks meeting both rows."""
    t = d.n_top
    return sum(1 for b in d.blocks if b[0] <= t < b[-1])


def is_noncrossing(d: SetPartition) -> bool:
    """Planarity of a pair partition drawn in a rectangle."""
    if not d.is_pair_partition():
        raise ValueError("non-crossing test is defined for pair partitions only")
    size = d.n_top + d.n_bot
    return kernels.planar_pairing(d.labels, d.n_top, d.n_bot, (0,) * size, 1)
