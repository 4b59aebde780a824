"""Truncated formal power series in t and a graded tuple of z-variables.

A MultiSeries holds the coefficients of a formal series

    sum_{k, d}  c_{k,d} * t**k * z1**d1 * ... * zr**dr

with c_{k,d} in Q(u), on the rectangular truncation box k <= kmax,
d <= dmax componentwise.  The z-exponents live in the free semigroup
Z+**r; a rank of 0 is allowed and means there are no z-variables at all
(series in t only).  Multiplication is full convolution into the box, so
every box cell of a product is exact; the box is closed downward, which is
what makes box truncation a quotient ring.

Besides ring operations the module provides the two compositions the
moduli computation needs, both finite inside a box because their argument
has no constant term:

    series_pow_binomial(g, alpha)  --  (1+g)**alpha = sum_k C(alpha,k) g**k
                                       with a rational-function exponent
    series_log1p(g)                --  log(1+g) = sum_k (-1)**(k+1) g**k / k

and the formal t-derivative.  Coefficients are stored sparsely; an absent
key is a zero coefficient.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .qfield import RF_ONE, RF_ZERO, RatFunc, UPoly


class Grading:
    """Rank and display names of the z-variables; rank 0 means none."""

    __slots__ = ("rank", "names")

    def __init__(self, rank: int, names=None):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        if names is None:
            names = tuple(f"z{i + 1}" for i in range(rank))
        else:
            names = tuple(str(n) for n in names)
            if len(names) != rank:
                raise ValueError("need one name per z-component")
        self.rank = rank
        self.names = names

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def __eq__(self, other):
        return isinstance(other, Grading) and self.rank == other.rank

    def __hash__(self):
        return hash(("Grading", self.rank))

    def __repr__(self):
        return f"Grading(rank={self.rank})"


def box_vectors(bound):
    """All integer vectors 0 <= v <= bound componentwise (one empty vector
    when bound itself is empty)."""
    return itertools.product(*(range(b + 1) for b in bound))


def _coerce_coeff(c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, (int, Fraction, UPoly)):
        return RatFunc(c)
    raise TypeError(f"bad series coefficient {c!r}")


class MultiSeries:
    """Box-truncated series with RatFunc coefficients.

    kmax may be -1 for the empty box that results from differentiating a
    series only known at t-order 0.
    """

    __slots__ = ("grading", "kmax", "dmax", "coeffs")

    def __init__(self, grading: Grading, kmax: int, dmax, coeffs=None):
        dmax = tuple(int(x) for x in dmax)
        if len(dmax) != grading.rank:
            raise ValueError("dmax length must equal the grading rank")
        if any(x < 0 for x in dmax):
            raise ValueError("dmax components must be >= 0")
        if kmax < -1:
            raise ValueError("kmax must be >= -1")
        self.grading = grading
        self.kmax = kmax
        self.dmax = dmax
        clean = {}
        if coeffs:
            for (k, d), c in coeffs.items():
                d = tuple(d)
                if not self._in_box(k, d):
                    raise ValueError(f"coefficient key {(k, d)} outside the truncation box")
                c = _coerce_coeff(c)
                if not c.is_zero:
                    clean[(k, d)] = c
        self.coeffs = clean

    @classmethod
    def _new(cls, grading, kmax, dmax, coeffs) -> "MultiSeries":
        # internal: coeffs already validated, nonzero RatFuncs only
        s = object.__new__(cls)
        s.grading = grading
        s.kmax = kmax
        s.dmax = dmax
        s.coeffs = coeffs
        return s

    @classmethod
    def zero(cls, grading, kmax, dmax) -> "MultiSeries":
        return cls(grading, kmax, dmax)

    @classmethod
    def const(cls, grading, kmax, dmax, value) -> "MultiSeries":
        s = cls(grading, kmax, dmax)
        value = _coerce_coeff(value)
        if kmax >= 0 and not value.is_zero:
            s.coeffs[(0, s.grading.zero)] = value
        return s

    @classmethod
    def monomial(cls, grading, kmax, dmax, k, d, value) -> "MultiSeries":
        s = cls(grading, kmax, dmax)
        d = tuple(d)
        if not s._in_box(k, d):
            raise ValueError(f"monomial {(k, d)} outside the truncation box")
        value = _coerce_coeff(value)
        if not value.is_zero:
            s.coeffs[(k, d)] = value
        return s

    def _in_box(self, k, d) -> bool:
        return 0 <= k <= self.kmax and all(0 <= di <= mi for di, mi in zip(d, self.dmax))

    def coeff(self, k: int, d=()) -> RatFunc:
        d = tuple(d)
        if not self._in_box(k, d):
            raise ValueError(f"beyond truncation: {(k, d)}")
        return self.coeffs.get((k, d), RF_ZERO)

    @property
    def constant_term(self) -> RatFunc:
        if self.kmax < 0:
            return RF_ZERO
        return self.coeffs.get((0, self.grading.zero), RF_ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _common_box(self, other) -> tuple:
        if self.grading != other.grading:
            raise ValueError("grading mismatch")
        kmax = min(self.kmax, other.kmax)
        dmax = tuple(min(a, b) for a, b in zip(self.dmax, other.dmax))
        return kmax, dmax

    def truncate(self, kmax=None, dmax=None) -> "MultiSeries":
        kmax = self.kmax if kmax is None else min(kmax, self.kmax)
        dmax = self.dmax if dmax is None else tuple(min(a, b) for a, b in zip(dmax, self.dmax))
        out = {key: c for key, c in self.coeffs.items()
               if key[0] <= kmax and all(x <= m for x, m in zip(key[1], dmax))}
        return MultiSeries._new(self.grading, kmax, dmax, out)

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.grading == other.grading and self.kmax == other.kmax
                and self.dmax == other.dmax and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.grading, self.kmax, self.dmax, frozenset(self.coeffs.items())))

    def __neg__(self):
        return MultiSeries._new(self.grading, self.kmax, self.dmax,
                                {k: -c for k, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        kmax, dmax = self._common_box(other)
        out = {}
        for key, c in self.coeffs.items():
            if key[0] <= kmax and all(x <= m for x, m in zip(key[1], dmax)):
                out[key] = c
        for key, c in other.coeffs.items():
            if key[0] <= kmax and all(x <= m for x, m in zip(key[1], dmax)):
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
        return MultiSeries._new(self.grading, kmax, dmax, out)

    def __sub__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc, UPoly)):
            return self.scale(other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        kmax, dmax = self._common_box(other)
        out = {}
        if self.coeffs and other.coeffs:
            a, b = self.coeffs, other.coeffs
            if len(a) > len(b):
                a, b = b, a
            for (k1, d1), c1 in a.items():
                if k1 > kmax or any(x > m for x, m in zip(d1, dmax)):
                    continue
                for (k2, d2), c2 in b.items():
                    k = k1 + k2
                    if k > kmax:
                        continue
                    d = tuple(x + y for x, y in zip(d1, d2))
                    if any(x > m for x, m in zip(d, dmax)):
                        continue
                    key = (k, d)
                    p = c1 * c2
                    s = out.get(key)
                    s = p if s is None else s + p
                    if s.is_zero:
                        out.pop(key, None)
                    else:
                        out[key] = s
        return MultiSeries._new(self.grading, kmax, dmax, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc, UPoly)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "MultiSeries":
        c = _coerce_coeff(c)
        if c.is_zero:
            return MultiSeries._new(self.grading, self.kmax, self.dmax, {})
        return MultiSeries._new(self.grading, self.kmax, self.dmax,
                                {k: v * c for k, v in self.coeffs.items()})

    def max_total_order(self) -> int:
        return max(self.kmax, 0) + sum(self.dmax)

    def __repr__(self):
        return f"MultiSeries(kmax={self.kmax}, dmax={self.dmax}, terms={len(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (k, d) in sorted(self.coeffs):
            c = self.coeffs[(k, d)]
            mono = []
            if k:
                mono.append("t" if k == 1 else f"t^{k}")
            for name, e in zip(self.grading.names, d):
                if e:
                    mono.append(name if e == 1 else f"{name}^{e}")
            head = "*".join(mono) if mono else "1"
            parts.append(f"({c})*{head}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        terms = [{"k": k, "d": list(d), "coeff": c.to_json()}
                 for (k, d), c in sorted(self.coeffs.items())]
        return {"kmax": self.kmax, "dmax": list(self.dmax), "terms": terms}

    @classmethod
    def from_json(cls, data, grading=None) -> "MultiSeries":
        dmax = tuple(data["dmax"])
        if grading is None:
            grading = Grading(len(dmax))
        coeffs = {(t["k"], tuple(t["d"])): RatFunc.from_json(t["coeff"])
                  for t in data["terms"]}
        return cls(grading, data["kmax"], dmax, coeffs)


def series_pow_binomial(g: MultiSeries, alpha) -> MultiSeries:
    """(1 + g)**alpha for a series g with zero constant term.

    Defined as sum_{k>=0} C(alpha, k) g**k, which terminates inside the box
    because g**k has total order at least k.  The exponent may be any
    rational function, so non-integer powers like (1+g)**u are exact.
    """
    from .qfield import binom_falling

    if not g.constant_term.is_zero:
        raise ValueError("binomial base must be 1 + nilpotent part")
    alpha = _coerce_coeff(alpha)
    result = MultiSeries.const(g.grading, g.kmax, g.dmax, RF_ONE)
    gpow = MultiSeries.const(g.grading, g.kmax, g.dmax, RF_ONE)
    bound = g.max_total_order()
    for k in range(1, bound + 1):
        gpow = gpow * g
        if gpow.is_zero:
            break
        result = result + gpow.scale(binom_falling(alpha, k))
    return result


def series_log1p(g: MultiSeries) -> MultiSeries:
    """log(1 + g) = sum_{k>=1} (-1)**(k+1) g**k / k for g with zero constant
    term; exact inside the box."""
    if not g.constant_term.is_zero:
        raise ValueError("logarithm base must be 1 + nilpotent part")
    result = MultiSeries.zero(g.grading, g.kmax, g.dmax)
    gpow = MultiSeries.const(g.grading, g.kmax, g.dmax, RF_ONE)
    bound = g.max_total_order()
    for k in range(1, bound + 1):
        gpow = gpow * g
        if gpow.is_zero:
            break
        result = result + gpow.scale(Fraction((-1) ** (k + 1), k))
    return result


def series_dt(a: MultiSeries) -> MultiSeries:
    """Formal partial derivative in t; the t-truncation drops by one."""
    kmax = a.kmax - 1
    out = {}
    for (k, d), c in a.coeffs.items():
        if k >= 1:
            out[(k - 1, d)] = c * k
    return MultiSeries._new(a.grading, kmax, a.dmax, out)
