"""Single-colour Temperley-Lieb combinatorics: link states and their form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import kernels
from .linalg import ExactMatrix
from .scalars import LaurentPoly


@dataclass(frozen=True)
class LinkState:
    """``n`` boundary nodes, a set of non-crossing arcs, the rest defects.

    Arcs are stored as sorted ``(opener, closer)`` pairs, 1-based. A defect may
    not sit underneath an arc.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.arcs != tuple(sorted(self.arcs)):
            raise ValueError("arcs must be sorted by opener")
        used = [x for a in self.arcs for x in a]
        if len(set(used)) != len(used) or any(not 1 <= x <= self.n for x in used):
            raise ValueError("arcs must be disjoint pairs of nodes in 1..n")
        if any(a >= b for a, b in self.arcs):
            raise ValueError("arc endpoints must be given as (left, right)")
        partner = self.partners()
        stack: list[int] = []
        for i in range(self.n):
            j = partner[i]
            if j == -1:
                if stack:
                    raise ValueError(f"defect {i + 1} lies under an arc")
            elif j > i:
                stack.append(i)
            elif not stack or stack.pop() != j:
                raise ValueError("arcs cross")

    @classmethod
    def from_arcs(cls, n: int, arcs) -> LinkState:
        return cls(n, tuple(sorted((min(a, b), max(a, b)) for a, b in arcs)))

    @classmethod
    def parse(cls, text: str) -> LinkState:
        """Parse ``n=5; arcs=(1,2)(4,5)``."""
        m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*;\s*arcs\s*=\s*((?:\(\s*\d+\s*,\s*\d+\s*\)\s*)*)", text)
        if not m:
            raise ValueError(f"malformed link state {text!r}; expected 'n=<n>; arcs=(i,j)...'")
        arcs = [(int(a), int(b)) for a, b in re.findall(r"\((\d+),\s*(\d+)\)", m.group(2).replace(" ", ""))]
        return cls.from_arcs(int(m.group(1)), arcs)

    @property
    def p(self) -> int:
        return len(self.arcs)

    @property
    def defects(self) -> tuple[int, ...]:
        used = {x for a in self.arcs for x in a}
        return tuple(i for i in range(1, self.n + 1) if i not in used)

    def partners(self) -> list[int]:
        """0-based partner array; ``-1`` marks a defect."""
        out = [-1] * self.n
        for a, b in self.arcs:
            out[a - 1] = b - 1
            out[b - 1] = a - 1
        return out

    def arcs_str(self) -> str:
        return "".join(f"({a},{b})" for a, b in self.arcs)

    def __str__(self):
        return f"n={self.n}; arcs={self.arcs_str()}"


@dataclass(frozen=True)
class TLWeight:
    n: int
    p: int
    order: int | None = None

    def __post_init__(self):
        _check_np(self.n, self.p)

    def __str__(self):
        return f"V({self.n},{self.p})"


def _check_np(n: int, p: int) -> None:
    if n < 0 or p < 0 or 2 * p > n:
        raise ValueError(f"invalid TL weight (n={n}, p={p}): need 0 <= p <= n/2")


@lru_cache(maxsize=None)
def _link_arcs(n: int, p: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    out = []

    def rec(i, open_stack, arcs, remaining):
        # remaining: arcs still to open
        if i > n:
            if not open_stack and remaining == 0:
                out.append(tuple(sorted(arcs)))
            return
        left = n - i + 1
        if len(open_stack) + 2 * remaining > left:
            return
        if remaining:
            rec(i + 1, open_stack + [i], arcs, remaining - 1)
        if open_stack:
            rec(i + 1, open_stack[:-1], arcs + [(open_stack[-1], i)], remaining)
        else:
            rec(i + 1, open_stack, arcs, remaining)

    rec(1, [], [], p)
    return tuple(sorted(out))


def enumerate_link_states(n: int, p: int) -> list[LinkState]:
    """All ``(n,p)``-link states, sorted by their arc lists."""
    _check_np(n, p)
    return [LinkState(n, arcs) for arcs in _link_arcs(n, p)]


def dim_cell(n: int, p: int) -> int:
    _check_np(n, p)
    return comb(n, p) - (comb(n, p - 1) if p > 0 else 0)


def tl_form(x: LinkState, y: LinkState, var: int = 0, nvars: int = 1) -> LaurentPoly:
    """Glue the reflection of ``x`` onto ``y``.

    Returns ``d^loops`` in variable ``var``, or zero when a defect of ``x`` is
    joined to another defect of ``x``.
    """
    if x.n != y.n:
        raise ValueError(f"link states on {x.n} and {y.n} nodes cannot be paired")
    if x.p != y.p:
        raise ValueError(f"link states with {x.p} and {y.p} arcs cannot be paired")
    loops = kernels.pair_form(x.partners(), y.partners(), (0,) * x.n, 1)
    if loops is None:
        return LaurentPoly(None, nvars)
    exps = [0] * nvars
    exps[var] = loops[0]
    return LaurentPoly.monomial(exps)


@lru_cache(maxsize=None)
def gram_tl(n: int, p: int, var: int = 0, nvars: int = 1) -> ExactMatrix:
    states = enumerate_link_states(n, p)
    return ExactMatrix([[tl_form(a, b, var, nvars) for b in states] for a in states], len(states))


def r_value(n: int, p: int, l: int) -> int:
    """``r`` in ``1..l`` with ``n - 2p + 1 = r (mod l)``; ``r == l`` is critical."""
    _check_np(n, p)
    if l < 2:
        raise ValueError(f"order must be >= 2, got {l}")
    r = (n - 2 * p + 1) % l
    return r or l


def is_critical(n: int, p: int, l: int | None) -> bool:
    return l is not None and r_value(n, p, l) == l


def dim_radical_tl(n: int, p: int, l: int | None) -> int:
    """Dimension of the radical of the form on the cell module ``V(n,p)``.

    Zero for generic ``q`` and for critical weights; otherwise the radical is
    the simple head of ``V(n, p + r - l)`` (or zero if that index is negative).
    """
    _check_np(n, p)
    if l is None:
        return 0
    r = r_value(n, p, l)
    if r == l:
        return 0
    q = p + r - l
    return dim_head_tl(n, q, l) if q >= 0 else 0


def dim_head_tl(n: int, p: int, l: int | None) -> int:
    return dim_cell(n, p) - dim_radical_tl(n, p, l)


def hom_exists_tl(n: int, p2: int, p1: int, l: int | None) -> bool:
    """Non-trivial map ``V(n,p2) -> V(n,p1)`` at order ``l``.

    With ``l`` absent only the identity case ``p1 == p2`` holds.
    """
    _check_np(n, p1)
    _check_np(n, p2)
    if l is None:
        return p1 == p2
    return 0 <= p1 - p2 < l and (n - p1 - p2 + 1) % l == 0
