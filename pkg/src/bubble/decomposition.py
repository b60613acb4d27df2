"""Algebra-level data: decomposition and Cartan matrices, blocks, predicates."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass

from .cells import (
    WeightLambda,
    compositions,
    dim_radical,
    enumerate_lambda,
    radical_series,
    shift_vector,
)
from .scalars import ParameterSpec
from .tl import hom_exists_tl

# Block-grouped ordering of the sixteen weights of n = 6, m = 2 used by the
# reference tables (blocks at orders (2, 4) appear contiguously).
REFERENCE_6_2_ORDER = (
    (0, 0), (2, 0), (0, 6), (4, 0), (6, 0),
    (1, 1), (1, 5),
    (0, 2), (2, 2), (0, 4), (4, 2), (2, 4),
    (3, 1), (1, 3), (5, 1), (3, 3),
)

NAMED_ORDERS = {"paper-6-2": REFERENCE_6_2_ORDER}


def _check_params(m: int, params: ParameterSpec) -> None:
    if params.m != m:
        raise ValueError(f"{params.m} parameters given for m = {m}")


def lambda_zero(n: int, m: int, params: ParameterSpec) -> list[WeightLambda]:
    """Weights with a nonzero form: all of them unless ``n`` is even and every parameter is 0."""
    _check_params(m, params)
    weights = enumerate_lambda(n, m)
    if n % 2 == 0 and all(params.is_zero(j) for j in range(m)):
        return [w for w in weights if any(w.lam)]
    return weights


def weight_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Cellular order: ``a <= b`` iff ``a_j >= b_j`` for every colour."""
    return all(x >= y for x, y in zip(a, b))


def resolve_order(n: int, m: int, order, weights: list[WeightLambda]) -> list[WeightLambda]:
    """Reorder ``weights`` by a named or explicit ordering; ``None`` keeps them."""
    if order is None or order == "default":
        return weights
    if isinstance(order, str):
        if order not in NAMED_ORDERS:
            raise ValueError(f"unknown ordering {order!r}; known: default, {', '.join(NAMED_ORDERS)}")
        seq = NAMED_ORDERS[order]
    else:
        seq = tuple(tuple(x) for x in order)
    by_lam = {w.lam: w for w in weights}
    if set(seq) != set(by_lam) or len(seq) != len(by_lam):
        raise ValueError(f"ordering does not list exactly the {len(by_lam)} weights for n={n}, m={m}")
    return [by_lam[x] for x in seq]


@dataclass(frozen=True)
class DecompositionMatrix:
    """Rows are cell modules, columns simple heads, both indexed by the same weights."""

    weights: tuple[WeightLambda, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def labels(self) -> list[tuple[int, ...]]:
        return [w.lam for w in self.weights]

    def index(self, lam: Sequence[int]) -> int:
        return self.labels.index(tuple(lam))

    def transpose_product(self) -> list[list[int]]:
        """``D^T D``."""
        k = len(self.weights)
        d = self.entries
        return [[sum(d[r][i] * d[r][j] for r in range(k)) for j in range(k)] for i in range(k)]

    def blocks(self) -> list[list[int]]:
        """Linkage classes as index lists, ordered by first appearance."""
        k = len(self.weights)
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(k):
            for j in range(k):
                if i != j and self.entries[i][j]:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values(), key=lambda g: g[0])

    def submatrix(self, idx: Sequence[int]) -> list[list[int]]:
        return [[self.entries[i][j] for j in idx] for i in idx]

    def to_dict(self, with_blocks: bool = True) -> dict:
        out = {
            "rows": [list(x) for x in self.labels],
            "cols": [list(x) for x in self.labels],
            "entries": [list(r) for r in self.entries],
        }
        if with_blocks:
            out["blocks"] = [
                {
                    "rows": [list(self.labels[i]) for i in g],
                    "cols": [list(self.labels[i]) for i in g],
                    "entries": self.submatrix(g),
                }
                for g in self.blocks()
            ]
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw))


def decomposition_matrix(n: int, m: int, params: ParameterSpec, order=None) -> DecompositionMatrix:
    """Entry ``(lam, mu)`` is 1 when the simple head of ``mu`` is a composition factor of ``lam``."""
    _check_params(m, params)
    orders = params.orders()
    weights = resolve_order(n, m, order, lambda_zero(n, m, params))
    pos = {w.lam: i for i, w in enumerate(weights)}
    rows = []
    for w in weights:
        row = [0] * len(weights)
        for layer in radical_series(w, orders):
            for x in layer:
                if x.lam in pos:
                    row[pos[x.lam]] = 1
        rows.append(tuple(row))
    return DecompositionMatrix(tuple(weights), tuple(rows))


def cartan_matrix(D: DecompositionMatrix) -> list[list[int]]:
    return D.transpose_product()


@dataclass(frozen=True)
class BlockPartition:
    classes: tuple[tuple[WeightLambda, ...], ...]
    matrix: DecompositionMatrix
    params: ParameterSpec

    def as_tuples(self) -> list[list[tuple[int, ...]]]:
        return [[w.lam for w in c] for c in self.classes]

    def to_dot(self) -> str:
        """Graphviz digraph: arrows follow nonzero off-diagonal decomposition numbers.

        Weights sitting on a critical line of some colour get a ``critical``
        annotation naming those colours.
        """
        D = self.matrix
        orders = self.params.orders()
        lines = ["digraph blocks {", "  node [shape=box];"]
        for k, cls in enumerate(self.classes):
            lines.append(f"  subgraph cluster_{k} {{")
            lines.append(f'    label="block {k}";')
            for w in cls:
                crit = [
                    j for j, l in enumerate(orders)
                    if l is not None and (w.lam[j] + 1) % l == 0
                ]
                note = f"\\ncritical: {','.join(map(str, crit))}" if crit else ""
                lines.append(f'    "{w}" [label="{w}{note}"];')
            lines.append("  }")
        for i, wi in enumerate(D.weights):
            for j, wj in enumerate(D.weights):
                if i != j and D.entries[i][j]:
                    lines.append(f'  "{wi}" -> "{wj}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def blocks(n: int, m: int, params: ParameterSpec, order=None) -> BlockPartition:
    D = decomposition_matrix(n, m, params, order)
    classes = tuple(tuple(D.weights[i] for i in g) for g in D.blocks())
    return BlockPartition(classes, D, params)


def cell_hom_exists(
    lam: Sequence[int],
    lam2: Sequence[int],
    n: int,
    m: int,
    params: ParameterSpec,
    strict: bool = True,
) -> bool:
    """Whether a nonzero map from the cell module of ``lam`` to that of ``lam2`` is predicted.

    Requires ``lam2 = lam - 2t`` with ``t >= 0``, and some arc vector ``p``
    for which every colour admits a TL map ``V(lam_j + 2p_j, p_j) ->
    V(lam_j + 2p_j, p_j + t_j)``; colours with ``t_j = 0`` contribute the
    identity. The criterion assumes every parameter is invertible, so zero
    parameters raise unless ``strict=False``.
    """
    _check_params(m, params)
    a = WeightLambda(n, m, tuple(lam))
    b = WeightLambda(n, m, tuple(lam2))
    if strict and any(params.is_zero(j) for j in range(m)):
        raise ValueError("arc-preserving restriction requires every loop parameter to be invertible (nonzero)")
    orders = params.orders()
    diff = [x - y for x, y in zip(a.lam, b.lam)]
    if any(d < 0 or d % 2 for d in diff):
        return False
    t = [d // 2 for d in diff]
    if any(tj and l is None for tj, l in zip(t, orders)):
        return False
    for p in compositions(a.v, m):
        ok = True
        for j in range(m):
            if t[j] == 0:
                continue
            size = a.lam[j] + 2 * p[j]
            if 2 * (p[j] + t[j]) > size or not hom_exists_tl(size, p[j], p[j] + t[j], orders[j]):
                ok = False
                break
        if ok:
            return True
    return False


def is_semisimple(n: int, m: int, params: ParameterSpec) -> bool:
    """Every cell module has a nonzero, non-degenerate form."""
    _check_params(m, params)
    weights = enumerate_lambda(n, m)
    if len(lambda_zero(n, m, params)) != len(weights):
        return False
    orders = params.orders()
    return all(dim_radical(w, orders) == 0 for w in weights)


def is_quasi_hereditary(n: int, m: int, params: ParameterSpec) -> bool:
    _check_params(m, params)
    return n % 2 == 1 or any(not params.is_zero(j) for j in range(m))


def critical_colours(lw: WeightLambda, params: ParameterSpec) -> list[int]:
    return [j for j, t in enumerate(shift_vector(lw, params)) if t == 0]
