"""Pure-Python diagram kernels.

Reference implementation of the three inner loops used throughout the
package. ``_ckernels.pyx`` mirrors these signatures exactly; the package
selects one at import time (see ``bubble.kernels``).

Diagrams are handed around as flat label sequences: node ``i`` belongs to
block ``labels[i]``. Labels returned by the kernels are canonical, meaning
blocks are numbered in order of first occurrence.
"""

from __future__ import annotations

from collections.abc import Sequence


def compose(
    upper: Sequence[int],
    lower: Sequence[int],
    n_top: int,
    n_mid: int,
    n_bot: int,
    mid_colours: Sequence[int],
    m: int,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Stack ``upper`` on ``lower`` and glue along the middle row.

    ``upper`` labels ``n_top + n_mid`` nodes (top row then its bottom row),
    ``lower`` labels ``n_mid + n_bot`` nodes. Returns the canonical labels of
    the ``n_top + n_bot`` outer nodes and, per colour, the number of
    components that live entirely in the middle row. The colour of such a
    component is read off ``mid_colours``.
    """
    size = n_top + n_mid + n_bot
    parent = list(range(size))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def join(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry

    first: dict[int, int] = {}
    for i in range(n_top + n_mid):
        lab = upper[i]
        if lab in first:
            join(first[lab], i)
        else:
            first[lab] = i
    first = {}
    for i in range(n_mid + n_bot):
        lab = lower[i]
        node = n_top + i
        if lab in first:
            join(first[lab], node)
        else:
            first[lab] = node

    outer = list(range(n_top)) + list(range(n_top + n_mid, size))
    touched = set()
    relabel: dict[int, int] = {}
    labels = []
    for node in outer:
        root = find(node)
        touched.add(root)
        if root not in relabel:
            relabel[root] = len(relabel)
        labels.append(relabel[root])

    removed = [0] * m
    seen = set()
    for i in range(n_mid):
        root = find(n_top + i)
        if root in touched or root in seen:
            continue
        seen.add(root)
        removed[mid_colours[i]] += 1
    return tuple(labels), tuple(removed)


def pair_form(
    x: Sequence[int],
    y: Sequence[int],
    colours: Sequence[int],
    m: int,
) -> tuple[int, ...] | None:
    """Glue two link states along their boundary.

    ``x`` and ``y`` are partner arrays on the same ``n`` nodes, with ``-1``
    marking a defect. Returns the number of closed loops per colour, or
    ``None`` when some defect of ``x`` runs into another defect of ``x``.
    """
    n = len(x)
    visited = [False] * n
    for start in range(n):
        if x[start] != -1:
            continue
        cur = start
        while True:
            visited[cur] = True
            nxt = y[cur]
            if nxt == -1:
                break
            visited[nxt] = True
            cur = x[nxt]
            if cur == -1:
                return None
    loops = [0] * m
    for start in range(n):
        if visited[start]:
            continue
        cur = start
        while not visited[cur]:
            visited[cur] = True
            other = x[cur]
            visited[other] = True
            cur = y[other]
            if cur == -1:
                # a y-defect path: only possible when defect counts differ
                return None
        loops[colours[start]] += 1
    return tuple(loops)


def planar_pairing(
    labels: Sequence[int],
    n_top: int,
    n_bot: int,
    colours: Sequence[int],
    m: int,
) -> bool:
    """True iff every block has two nodes and no two same-coloured blocks cross.

    Nodes are read around the boundary cycle ``1..n_top`` followed by the
    bottom row right to left; a colourwise bracket matching succeeds exactly
    when the pairing is non-crossing within each colour.
    """
    size = n_top + n_bot
    counts: dict[int, int] = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    for c in counts.values():
        if c != 2:
            return False
    stacks: list[list[int]] = [[] for _ in range(m)]
    opened: set[int] = set()
    order = list(range(n_top)) + list(range(size - 1, n_top - 1, -1))
    for node in order:
        lab = labels[node]
        stack = stacks[colours[node]]
        if lab in opened:
            if not stack or stack[-1] != lab:
                return False
            stack.pop()
        else:
            opened.add(lab)
            stack.append(lab)
    return True
