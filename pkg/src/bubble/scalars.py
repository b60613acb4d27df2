"""Exact ground rings.

Two kinds of scalar are used:

* ``LaurentPoly`` -- integer Laurent polynomials in the loop parameters
  ``d0 .. d{m-1}``. Structure constants of the diagram algebras and all
  generic Gram matrices live here.
* ``AlgebraicScalar`` -- elements of a number field ``Q[a]/(p(a))``. Loop
  parameters specialised at ``2cos(pi/l)`` land in such a field.

``ParameterSpec`` binds one value per colour and knows how to push a
Laurent polynomial into the smallest field containing all of them.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

Exponents = tuple[int, ...]


class LaurentPoly:
    """Integer Laurent polynomial in ``nvars`` variables ``d0, d1, ...``.

    Immutable. Zero coefficients are never stored. Terms are kept in a dict
    keyed by exponent vectors; printing sorts them in descending
    lexicographic exponent order.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None, nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(exps)] = int(c)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: int, nvars: int) -> LaurentPoly:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> LaurentPoly:
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        exps = [0] * nvars
        exps[index] = 1
        return cls({tuple(exps): 1}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponents, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponents, int]]:
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> tuple[Exponents, int]:
        exps = max(self._terms)
        return exps, self._terms[exps]

    def trailing(self) -> tuple[Exponents, int]:
        exps = min(self._terms)
        return exps, self._terms[exps]

    def degree_box(self) -> tuple[Exponents, Exponents]:
        """Per-variable minimum and maximum exponents."""
        keys = list(self._terms)
        lo = tuple(min(k[i] for k in keys) for i in range(self.nvars))
        hi = tuple(max(k[i] for k in keys) for i in range(self.nvars))
        return lo, hi

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"colour count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return LaurentPoly._raw({}, self.nvars)
        out: dict = {}
        get = out.get
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: c for k, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("negative powers need a unit monomial")
            (k, c), = self._terms.items()
            return LaurentPoly._raw({tuple(x * e for x in k): c ** (-e)}, self.nvars)
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other) -> LaurentPoly:
        """Quotient ``self / other`` in the Laurent ring; raises if inexact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            (k2, c2), = other._terms.items()
            out = {}
            for k1, c1 in self._terms.items():
                q, r = divmod(c1, c2)
                if r:
                    raise ArithmeticError("inexact division")
                out[tuple(a - b for a, b in zip(k1, k2))] = q
            return LaurentPoly._raw(out, self.nvars)
        # quotient exponents are confined to this box when division is exact
        flo, fhi = self.degree_box()
        glo, ghi = other.degree_box()
        qlo = tuple(a - b for a, b in zip(flo, glo))
        qhi = tuple(a - b for a, b in zip(fhi, ghi))
        gk, gc = other.leading()
        rem = dict(self._terms)
        quot = {}
        while rem:
            rk = max(rem)
            rc = rem[rk]
            tk = tuple(a - b for a, b in zip(rk, gk))
            q, r = divmod(rc, gc)
            if r or any(t < lo or t > hi for t, lo, hi in zip(tk, qlo, qhi)):
                raise ArithmeticError("inexact division")
            quot[tk] = q
            for k, c in other._terms.items():
                kk = tuple(a + b for a, b in zip(k, tk))
                s = rem.get(kk, 0) - q * c
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
        return LaurentPoly._raw(quot, self.nvars)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.nvars: other}
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # printing -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.items():
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"d{i}")
                elif e:
                    factors.append(f"d{i}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


# ---------------------------------------------------------------------------
# univariate rational polynomial helpers (coefficient lists, low degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    _trim(a)
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        a.pop()
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the k-th cyclotomic polynomial."""
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    num = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            num, r = _poly_divmod(num, cyclotomic(d))
            assert not r
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def minpoly_for_order(l: int) -> tuple[int, ...]:
    """Minimal polynomial of ``2cos(pi/l)`` over Q, low degree first.

    Obtained from the palindromic cyclotomic polynomial ``Phi_{2l}(z)`` by
    writing ``z^-d Phi_{2l}(z)`` as a polynomial in ``x = z + 1/z``.
    """
    if l < 2:
        raise ValueError(f"root-of-unity order must be >= 2, got {l}")
    phi = list(cyclotomic(2 * l))
    d = (len(phi) - 1) // 2
    # sym[k] is the coefficient of z^k + z^-k (k > 0), sym[0] of z^0
    sym = {k: phi[d + k] for k in range(0, d + 1)}
    out = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = sym[k]
        if not c:
            continue
        out[k] = c
        # (z + 1/z)^k = sum_i C(k, i) z^(k - 2i); fold the symmetric pairs
        for i in range(1, k // 2 + 1):
            sym[k - 2 * i] -= c * math.comb(k, i)
    if out[-1] != 1:
        raise AssertionError("minimal polynomial should be monic")
    return tuple(out)


def chebyshev_c(k: int) -> list[int]:
    """Coefficients of ``C_k`` with ``C_k(z + 1/z) = z^k + z^-k``."""
    prev, cur = [2], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, _trim(nxt)
    return cur


# ---------------------------------------------------------------------------


class NumberField:
    """``Q[a]/(p(a))`` for a monic irreducible integer polynomial ``p``."""

    __slots__ = ("minpoly", "degree", "_hash")

    def __init__(self, minpoly: Sequence[int]):
        poly = tuple(int(c) for c in minpoly)
        if len(poly) < 2 or poly[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minpoly = poly
        self.degree = len(poly) - 1
        self._hash = hash(poly)

    @classmethod
    def rationals(cls) -> NumberField:
        return cls((0, 1))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return self._hash

    def __call__(self, value) -> AlgebraicScalar:
        """Embed an int, Fraction or coefficient sequence."""
        if isinstance(value, AlgebraicScalar):
            if value.field != self:
                raise ValueError("scalar belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return AlgebraicScalar(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        return AlgebraicScalar(self, self.reduce(value))

    @property
    def generator(self) -> AlgebraicScalar:
        return self([0, 1])

    def reduce(self, coeffs: Sequence) -> tuple[Fraction, ...]:
        c = [Fraction(x) for x in coeffs]
        p = self.minpoly
        d = self.degree
        for top in range(len(c) - 1, d - 1, -1):
            f = c[top]
            if f:
                for i in range(d):
                    c[top - d + i] -= f * p[i]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return tuple(c)

    def minpoly_str(self) -> str:
        return _format_univariate(self.minpoly, "a")

    def __repr__(self):
        return f"NumberField({self.minpoly_str()})"


def _format_univariate(coeffs: Sequence, var: str) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if not c:
            continue
        mag = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


class AlgebraicScalar:
    """Element of a ``NumberField``; coefficients are rationals, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence[Fraction]):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector length must equal the field degree")
        self.field = field
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, AlgebraicScalar):
            if other.field != self.field:
                raise ValueError("scalars from different fields are not comparable")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.degree == 1:
            return AlgebraicScalar(self.field, (self.coeffs[0] * other.coeffs[0],))
        return AlgebraicScalar(self.field, self.field.reduce(_poly_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicScalar:
        return field_inverse(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * field_inverse(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * field_inverse(self)

    def __pow__(self, e: int):
        if e < 0:
            return field_inverse(self) ** (-e)
        result = self.field(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, AlgebraicScalar):
            if other.field != self.field:
                raise ValueError("scalars from different fields are not comparable")
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def __float__(self):
        raise TypeError("no canonical real embedding; use numeric(root)")

    def numeric(self, root: float) -> float:
        """Value under the embedding sending the generator to ``root``."""
        return float(sum(float(c) * root**k for k, c in enumerate(self.coeffs)))

    def __str__(self):
        return _format_univariate(self.coeffs, "a")

    def __repr__(self):
        return f"AlgebraicScalar({self} mod {self.field.minpoly_str()})"


def field_inverse(a: AlgebraicScalar) -> AlgebraicScalar:
    """Inverse in ``Q[x]/(p)`` by the extended Euclidean algorithm."""
    if a.is_zero():
        raise ZeroDivisionError("division by zero")
    field = a.field
    if field.degree == 1:
        return AlgebraicScalar(field, (1 / a.coeffs[0],))
    # invariant: s * a == r  (mod p)
    r0, r1 = [Fraction(c) for c in field.minpoly], _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, rem = _poly_divmod(r0, r1)
        s_next = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, rem
        s0, s1 = s1, s_next
        if not r1:
            raise ArithmeticError("minimal polynomial is reducible")
    inv = [c / r1[0] for c in s1]
    return AlgebraicScalar(field, field.reduce(inv))


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Rational:
    value: Fraction

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class RootOfUnity:
    """``delta = 2cos(pi/order)``, i.e. ``q = exp(i pi / order)``."""

    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 2:
            raise ValueError(
                f"root-of-unity order must be an integer >= 2 (order 1 means q = +-1), got {self.order}"
            )

    def __str__(self):
        return f"root:{self.order}"


@dataclass(frozen=True)
class Generic:
    def __str__(self):
        return "generic"


Param = Rational | RootOfUnity | Generic

# rational values that are q + 1/q for a root of unity q (Niven); +-2 is order 1
_RATIONAL_ORDERS = {Fraction(0): 2, Fraction(1): 3, Fraction(-1): 3}


def parse_param(token: str) -> Param:
    """Parse ``<int>``, ``<p>/<q>``, ``root:<l>`` or ``generic``."""
    tok = token.strip()
    if tok == "generic":
        return Generic()
    m = re.fullmatch(r"root:(-?\d+)", tok)
    if m:
        return RootOfUnity(int(m.group(1)))
    if re.fullmatch(r"[+-]?\d+(/\d+)?", tok):
        try:
            return Rational(Fraction(tok))
        except ZeroDivisionError:
            pass
    raise ValueError(f"cannot parse parameter {token!r}; expected <int>, <p>/<q>, root:<l> or generic")


@dataclass(frozen=True)
class ParameterSpec:
    """One loop parameter per colour."""

    entries: tuple[Param, ...]

    @classmethod
    def parse(cls, tokens: Iterable[str]) -> ParameterSpec:
        return cls(tuple(parse_param(t) for t in tokens))

    @classmethod
    def of(cls, *values) -> ParameterSpec:
        """Shorthand: ints/Fractions become rationals, strings are parsed."""
        out = []
        for v in values:
            if isinstance(v, (Rational, RootOfUnity, Generic)):
                out.append(v)
            elif isinstance(v, str):
                out.append(parse_param(v))
            else:
                out.append(Rational(Fraction(v)))
        return cls(tuple(out))

    @property
    def m(self) -> int:
        return len(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def is_generic(self, j: int) -> bool:
        return isinstance(self.entries[j], Generic)

    def is_zero(self, j: int) -> bool:
        e = self.entries[j]
        if isinstance(e, Rational):
            return e.value == 0
        if isinstance(e, RootOfUnity):
            return e.order == 2
        return False

    def order(self, j: int) -> int | None:
        """Root-of-unity order of colour ``j``; ``None`` when q is not a root of unity."""
        e = self.entries[j]
        if isinstance(e, RootOfUnity):
            return e.order
        if isinstance(e, Rational):
            if abs(e.value) == 2:
                raise ValueError(
                    f"delta_{j} = {e.value} means q = +-1 (order 1), which is not supported"
                )
            return _RATIONAL_ORDERS.get(e.value)
        return None

    def orders(self) -> tuple[int | None, ...]:
        return tuple(self.order(j) for j in range(self.m))

    def field(self) -> NumberField:
        """Smallest field in which every specialised parameter is exact.

        All values ``2cos(pi/l_j)`` lie in the real cyclotomic field of
        ``2cos(pi/L)`` with ``L = lcm(l_j)``.
        """
        self._require_specialised()
        ls = [e.order for e in self.entries if isinstance(e, RootOfUnity)]
        if not ls:
            return NumberField.rationals()
        return NumberField(minpoly_for_order(reduce(math.lcm, ls)))

    def values(self) -> tuple[AlgebraicScalar, ...]:
        """Exact value of every parameter inside ``field()``."""
        field = self.field()
        ls = [e.order for e in self.entries if isinstance(e, RootOfUnity)]
        big = reduce(math.lcm, ls) if ls else 1
        out = []
        for e in self.entries:
            if isinstance(e, Rational):
                out.append(field(e.value))
            else:
                out.append(field(chebyshev_c(big // e.order)))
        return tuple(out)

    def numeric(self) -> tuple[float, ...]:
        self._require_specialised()
        return tuple(
            float(e.value) if isinstance(e, Rational) else 2 * math.cos(math.pi / e.order)
            for e in self.entries
        )

    def _require_specialised(self):
        if any(isinstance(e, Generic) for e in self.entries):
            raise ValueError("cannot specialise: some parameters are generic")


def evaluate(p: LaurentPoly, point: ParameterSpec, values=None) -> AlgebraicScalar:
    """Image of ``p`` under ``d_j -> point[j]``.

    ``values`` may carry precomputed ``point.values()`` when evaluating many
    polynomials at the same point.
    """
    if p.nvars != point.m:
        raise ValueError(f"polynomial has {p.nvars} variables but {point.m} parameters were given")
    if values is None:
        values = point.values()
    field = values[0].field if values else NumberField.rationals()
    total = field(0)
    powers: dict[tuple[int, int], AlgebraicScalar] = {}
    for exps, c in p.items():
        term = field(c)
        for j, e in enumerate(exps):
            if not e:
                continue
            key = (j, e)
            if key not in powers:
                if e < 0 and values[j].is_zero():
                    raise ZeroDivisionError(
                        f"non-invertible specialization: d{j} = 0 appears with exponent {e}"
                    )
                powers[key] = values[j] ** e
            term = term * powers[key]
        total = total + term
    return total
