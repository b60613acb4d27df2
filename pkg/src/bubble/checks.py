"""Invariant suite behind ``bubble check``.

Every check returns a ``CheckResult``; the CLI exits nonzero if any fails.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass
from math import comb

from . import cells, decomposition, diagrams, partitions, tl
from .linalg import determinant, rank
from .scalars import LaurentPoly, ParameterSpec, evaluate


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _random_poly(rng: random.Random, m: int) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        terms[tuple(rng.randint(-2, 2) for _ in range(m))] = rng.randint(-3, 3)
    return LaurentPoly(terms, m)


def check_ring_axioms(rng: random.Random, cases: int = 300) -> CheckResult:
    for _ in range(cases):
        a, b, c = (_random_poly(rng, 2) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a * b != b * a:
            return CheckResult("ring axioms", False, f"failed on {a}, {b}, {c}")
    return CheckResult("ring axioms", True, f"{cases} triples")


def check_stack_associativity(rng: random.Random, max_n: int, cases: int = 300) -> CheckResult:
    for _ in range(cases):
        n = rng.randint(1, max_n)
        parts = []
        for _ in range(3):
            d = diagrams.random_diagram(n, 1, rng)
            parts.append(partitions.SetPartition.from_labels(n, n, d.labels))
        a, b, c = parts
        ab, r1 = partitions.stack(a, b)
        left, r2 = partitions.stack(ab, c)
        bc, r3 = partitions.stack(b, c)
        right, r4 = partitions.stack(a, bc)
        if left != right or r1 + r2 != r3 + r4:
            return CheckResult("stack associativity", False, f"{a} | {b} | {c}")
    return CheckResult("stack associativity", True, f"{cases} triples")


def check_multiply_associativity(rng: random.Random, max_n: int, cases: int = 300) -> CheckResult:
    for _ in range(cases):
        n = rng.randint(1, max_n)
        m = rng.randint(1, 3)
        words = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(4)]
        a = diagrams.random_diagram(n, m, rng, words[0], words[1])
        b = diagrams.random_diagram(n, m, rng, words[1], words[2])
        c = diagrams.random_diagram(n, m, rng, words[2], words[3])
        one = diagrams.ScaledDiagram
        wrap = [one(LaurentPoly.constant(1, m), x) for x in (a, b, c)]
        left = diagrams.multiply_scaled(diagrams.multiply_scaled(wrap[0], wrap[1]), wrap[2])
        right = diagrams.multiply_scaled(wrap[0], diagrams.multiply_scaled(wrap[1], wrap[2]))
        if left != right:
            return CheckResult("multiply associativity", False, f"{a} | {b} | {c}")
    return CheckResult("multiply associativity", True, f"{cases} triples")


def check_identity(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for m in (1, 2, 3):
            if m ** (2 * n) > 5000:
                continue
            unit = diagrams.identity_sum(n, m)
            for d in diagrams.iter_bubble_basis(n, m):
                if unit * d != d or d * unit != d:
                    return CheckResult("identity", False, str(d))
    return CheckResult("identity", True)


def check_bubble_closure(rng: random.Random, max_n: int, cases: int = 300) -> CheckResult:
    for _ in range(cases):
        n = rng.randint(1, max_n)
        m = rng.randint(1, 3)
        a = diagrams.random_bubble(n, m, rng)
        b = diagrams.random_bubble(n, m, rng, top=a.bottom)
        p = diagrams.multiply(a, b)
        if p is None or not diagrams.is_bubble(p.diagram):
            return CheckResult("bubble closure", False, f"{a} * {b}")
    return CheckResult("bubble closure", True, f"{cases} pairs")


def check_cellular_dimension(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for m in (1, 2, 3):
            lhs = sum(cells.dim_delta(w) ** 2 for w in cells.enumerate_lambda(n, m))
            rhs = sum(1 for _ in diagrams.iter_bubble_basis(n, m, ordered=False))
            if lhs != rhs:
                return CheckResult("cellular dimension", False, f"n={n} m={m}: {lhs} != {rhs}")
    return CheckResult("cellular dimension", True)


def check_gram_factorization(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        for w in cells.enumerate_lambda(n, 2):
            g = cells.gram_direct(w)
            rep = cells.gram_factorized(w)
            if g != rep.assemble():
                return CheckResult("gram factorization", False, f"assembly differs at {w}")
            if determinant(g) != rep.determinant:
                return CheckResult("gram factorization", False, f"determinant differs at {w}")
    return CheckResult("gram factorization", True)


def check_rank_head(max_n: int, params: ParameterSpec) -> CheckResult:
    for n in range(1, max_n + 1):
        for w in cells.enumerate_lambda(n, params.m):
            r = cells.gram_rank(w, params)
            h = cells.dim_head(w, params)
            if r != h:
                return CheckResult(f"rank = head at {params}", False, f"{w}: rank {r}, head {h}")
    return CheckResult(f"rank = head at {params}", True)


def check_tl_radical(max_n: int) -> CheckResult:
    for l in (2, 3, 4):
        values = ParameterSpec.of(f"root:{l}")
        vals = values.values()
        for n in range(1, max_n + 1):
            for p in range(n // 2 + 1):
                g = tl.gram_tl(n, p).map(lambda x: evaluate(x, values, vals))
                if tl.dim_cell(n, p) - rank(g) != tl.dim_radical_tl(n, p, l):
                    return CheckResult("TL radical", False, f"n={n} p={p} l={l}")
    return CheckResult("TL radical", True)


def check_layer_sums(max_n: int, params: ParameterSpec) -> CheckResult:
    for n in range(1, max_n + 1):
        for w in cells.enumerate_lambda(n, params.m):
            layers = cells.radical_series(w, params)
            total = sum(cells.dim_head(x, params) for layer in layers for x in layer)
            if total != cells.dim_delta(w):
                return CheckResult("radical layers", False, f"{w}: {total} != {cells.dim_delta(w)}")
    return CheckResult("radical layers", True)


def check_parity_split(max_n: int) -> CheckResult:
    for n in range(1, max_n + 1):
        basis = diagrams.enumerate_bubble_basis(n, 2)
        halves = {"even": [], "odd": []}
        for d in basis:
            halves[diagrams.parity_split(d)].append(d)
        for a in halves["even"]:
            for b in halves["odd"]:
                if diagrams.multiply(a, b) is not None or diagrams.multiply(b, a) is not None:
                    return CheckResult("parity split", False, f"{a} * {b} nonzero")
    return CheckResult("parity split", True)


def check_contravariance(rng: random.Random, max_n: int, cases: int = 200) -> CheckResult:
    done = 0
    while done < cases:
        n = rng.randint(1, max_n)
        m = rng.randint(1, 3)
        w = rng.choice(cells.enumerate_lambda(n, m))
        d = diagrams.random_bubble(n, m, rng)
        basis = cells.enumerate_delta_basis(w)
        left = [x for x in basis if x.colours == d.bottom]
        right = [x for x in basis if x.colours == d.top]
        if not left or not right:
            continue
        a, b = rng.choice(left), rng.choice(right)
        if _pair_after(d, a, b) != _pair_after(d.reflect(), b, a, swap=True):
            return CheckResult("contravariance", False, f"{d}; {a}; {b}")
        done += 1
    return CheckResult("contravariance", True, f"{cases} triples")


def _pair_after(d, a, b, swap=False) -> LaurentPoly:
    """<d a, b> (or <a, d b> with ``swap``), zero when the action vanishes."""
    acted = cells.act(d, a)
    zero = LaurentPoly(None, d.m)
    if acted is None:
        return zero
    coeff, state = acted
    return coeff * (cells.inner_product(b, state) if swap else cells.inner_product(state, b))


def run_all(max_n: int = 4, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    point = ParameterSpec.parse(["root:2", "root:4"])
    steps: list[Callable[[], CheckResult]] = [
        lambda: check_ring_axioms(rng),
        lambda: check_stack_associativity(rng, max_n),
        lambda: check_multiply_associativity(rng, max_n),
        lambda: check_identity(min(max_n, 3)),
        lambda: check_bubble_closure(rng, max_n),
        lambda: check_cellular_dimension(max_n),
        lambda: check_gram_factorization(min(max_n, 5)),
        lambda: check_rank_head(max_n, point),
        lambda: check_rank_head(max_n, ParameterSpec.of(3, 3)),
        lambda: check_tl_radical(max_n),
        lambda: check_layer_sums(max_n, point),
        lambda: check_parity_split(min(max_n, 4)),
        lambda: check_contravariance(rng, max_n),
        lambda: CheckResult(
            "TL cell count",
            all(sum(tl.dim_cell(n, p) ** 2 for p in range(n // 2 + 1)) == comb(2 * n, n) // (n + 1)
                for n in range(1, max_n + 1)),
        ),
        lambda: CheckResult(
            "decomposition unitriangular",
            all(_unitriangular(decomposition.decomposition_matrix(n, 2, point)) for n in range(1, max_n + 1)),
        ),
    ]
    out = []
    for step in steps:
        try:
            out.append(step())
        except Exception as exc:  # report, don't abort the suite
            out.append(CheckResult(f"check #{len(out) + 1}", False, f"{type(exc).__name__}: {exc}"))
    return out


def _unitriangular(D: decomposition.DecompositionMatrix) -> bool:
    for i, wi in enumerate(D.weights):
        if D.entries[i][i] != 1:
            return False
        for j, wj in enumerate(D.weights):
            if D.entries[i][j] and not decomposition.weight_leq(wj.lam, wi.lam):
                return False
    return True


__all__ = ["CheckResult", "run_all"]
