"""Target spaces and the generating series of their map-space classes.

A target W is described by the rank r of its lattice of curve classes, its
own class [W] as a polynomial in u, and the classes [Map_beta] of the
spaces of parametrized rational maps P^1 -> W in each curve class beta.
Curve classes are presented in a basis that makes the effective cone the
positive orthant, so beta ranges over Z+**r.

Projective space is built in:

    [P^n]        = 1 + u + ... + u**n
    [Map_d]      = [P^n] * u**((n+1)(d-1)) * (u**(n+1) - u)   for d >= 1
    [Map_0]      = [P^n]      (constant maps are points of the target)

which is exactly the expansion of the rational generating function

    E(P^n, z) = [P^n] * (1 - u z) / (1 - u**(n+1) z).

Degree r >= 1 targets other than P^n load from a JSON descriptor with the
classes given explicitly per beta.  The point target has rank 0.

The builtin classes satisfy, for every d >= 0,

    sum_{k=0}^{d} [Map_{d-k}] * (u**(k+1) - 1) = u**((n+1)(d+1)) - 1,

which expresses sorting the nonzero (n+1)-tuples of degree-d binary forms
by the degree of their common factor; verify_recurrence checks it as an
exact polynomial identity, and count_maps_bruteforce re-derives the same
numbers over a small prime field by enumerating the tuples themselves.
"""

from __future__ import annotations

import itertools
import json

from .qfield import MOEBIUS_CLASS, P_ONE, RatFunc, U, UPoly
from .series import Grading, MultiSeries, box_vectors


class TargetSpace:
    """Descriptor of a target: name, grading, class [W], map-space classes."""

    __slots__ = ("name", "grading", "pw", "builtin", "n", "classes", "_cache")

    def __init__(self, name: str, grading: Grading, pw: UPoly,
                 classes=None, builtin: bool = False, n=None):
        if pw.is_zero:
            raise ValueError("target class must be nonzero")
        self.name = name
        self.grading = grading
        self.pw = pw
        self.builtin = builtin
        self.n = n
        self.classes = dict(classes) if classes else {}
        self._cache = {}

    def __getstate__(self):
        return (self.name, self.grading, self.pw, self.builtin, self.n, self.classes)

    def __setstate__(self, state):
        self.name, self.grading, self.pw, self.builtin, self.n, self.classes = state
        self._cache = {}

    def __repr__(self):
        return f"TargetSpace({self.name!r}, rank={self.grading.rank})"

    def map_class(self, beta) -> RatFunc:
        """[Map_beta], with [Map_0] = [W] itself."""
        beta = tuple(int(b) for b in beta)
        if len(beta) != self.grading.rank:
            raise ValueError(f"beta {beta} has wrong rank for {self.name}")
        if any(b < 0 for b in beta):
            raise ValueError(f"beta {beta} is not effective")
        if all(b == 0 for b in beta):
            return RatFunc(self.pw)
        key = ("map", beta)
        got = self._cache.get(key)
        if got is None:
            if self.builtin:
                got = RatFunc(_pn_map_class(self.n, beta[0]))
            else:
                got = self.classes.get(beta)
                if got is None:
                    raise ValueError(
                        f"target data incomplete: no class for beta={beta} in {self.name}")
            self._cache[key] = got
        return got


def _pn_map_class(n: int, d: int) -> UPoly:
    # [P^n] * u**((n+1)(d-1)) * (u**(n+1) - u), d >= 1
    pn = UPoly([1] * (n + 1))
    tail = UPoly.monomial(n + 1) - U
    return pn * UPoly.monomial((n + 1) * (d - 1)) * tail


def projective_space(n: int) -> TargetSpace:
    """Builtin rank-1 target P^n, n >= 1, with closed-form map classes."""
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    return TargetSpace(f"pn:{n}", Grading(1), UPoly([1] * (n + 1)), builtin=True, n=n)


def point_target() -> TargetSpace:
    """The one-point target: rank 0, [W] = 1, constant maps only."""
    return TargetSpace("point", Grading(0), P_ONE, builtin=True)


def parse_target(spec: str) -> TargetSpace:
    """Resolve a CLI-style target spec: 'point', 'pn:N' or 'file:PATH'."""
    if spec == "point":
        return point_target()
    if spec.startswith("pn:"):
        return projective_space(int(spec[3:]))
    if spec.startswith("file:"):
        return load_target(spec[5:])
    raise ValueError(f"unknown target spec {spec!r} (use point, pn:N or file:PATH)")


def eisenstein_series(w: TargetSpace, dmax) -> MultiSeries:
    """Generating series of map-space classes, sum_beta [Map_beta] z**beta,
    truncated at dmax; the z**0 coefficient is [W]."""
    dmax = tuple(int(x) for x in dmax)
    coeffs = {}
    for beta in box_vectors(dmax):
        coeffs[(0, beta)] = w.map_class(beta)
    return MultiSeries(w.grading, 0, dmax, coeffs)


def nclass(w: TargetSpace, beta) -> RatFunc:
    """Normalized map-space class [Map_beta] / ([W] * (u**3 - u)).

    For beta = 0 this is 1/(u**3 - u) for every target, since constant maps
    form a copy of the target itself.
    """
    beta = tuple(int(b) for b in beta)
    key = ("nclass", beta)
    got = w._cache.get(key)
    if got is None:
        got = w.map_class(beta) / (RatFunc(w.pw) * RatFunc(MOEBIUS_CLASS))
        w._cache[key] = got
    return got


def verify_recurrence(n: int, dmax: int) -> bool:
    """Exact polynomial identity check of the degree recurrence for P^n,
    for every d <= dmax."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w = projective_space(n)
    for d in range(dmax + 1):
        lhs = RatFunc(0)
        for k in range(d + 1):
            lhs = lhs + w.map_class(((d - k),)) * RatFunc(UPoly.monomial(k + 1) - P_ONE)
        rhs = RatFunc(UPoly.monomial((n + 1) * (d + 1)) - P_ONE)
        if lhs != rhs:
            return False
    return True


# --- finite-field brute force ------------------------------------------------
#
# A binary form of degree d over F_p is a coefficient tuple (a_0..a_d) for
# f = sum a_i * t0**(d-i) * t1**i.  Its t1-valuation is the least i with
# a_i != 0 and the rest dehomogenizes to P(x) = sum a_i x**(d-i), so the
# homogeneous gcd of a tuple of forms is a unit iff some form has t1-valuation
# zero and the dehomogenized gcd is constant.

_UNIT = "unit"


def _dehom(form, p):
    # low-to-high coefficients of P(x) = f(x, 1); () for the zero form
    cs = list(reversed(form))
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _monic_mod(poly, p):
    inv = pow(poly[-1], p - 2, p) if p > 2 else poly[-1]
    return tuple(c * inv % p for c in poly)


def _polymod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q = c * inv % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - q * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _gcd_mod(a, b, p):
    while b:
        a, b = b, _polymod(a, b, p)
    return _monic_mod(a, p)


def count_maps_bruteforce(n: int, d: int, p: int) -> int:
    """Count degree-d maps P^1 -> P^n over F_p by enumerating form tuples.

    Enumerates all (n+1)-tuples of degree-d binary forms over F_p, keeps the
    tuples that are not identically zero and whose homogeneous gcd is a unit,
    and divides by p - 1 (the free scalar action).  The running gcd over the
    processed prefix is the only state a suffix needs, so transitions are
    memoized and a prefix that already reached a unit gcd counts its
    completions in one step; the count is exactly the naive one.

    Returns the number of F_p-points of the degree-d map space, which must
    equal the closed-form class [Map_d] evaluated at u = p.
    """
    if p not in (2, 3, 5):
        raise ValueError("supported prime fields: p in {2, 3, 5}")
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    raw_size = p ** ((n + 1) * (d + 1))
    if raw_size > 10 ** 9:
        raise ValueError("too large")

    forms = list(itertools.product(range(p), repeat=d + 1))
    per_slot = len(forms)
    slots = n + 1

    step_cache = {}

    def step(state, form):
        got = step_cache.get((state, form))
        if got is not None:
            return got
        dehom = _dehom(form, p)
        if not dehom:
            out = state  # zero form never changes the gcd
        else:
            v = d - (len(dehom) - 1)
            mono = _monic_mod(dehom, p)
            if state is None:
                out = (v, mono)
            else:
                e, g = state
                out = (min(e, v), _gcd_mod(g, mono, p))
            if out[0] == 0 and len(out[1]) == 1:
                out = _UNIT
        step_cache[(state, form)] = out
        return out

    count_cache = {}

    def completions(slot, state):
        if state is _UNIT:
            return per_slot ** (slots - slot)
        if slot == slots:
            return 0
        got = count_cache.get((slot, state))
        if got is not None:
            return got
        total = 0
        for form in forms:
            total += completions(slot + 1, step(state, form))
        count_cache[(slot, state)] = total
        return total

    raw = completions(0, None)
    if raw % (p - 1):
        raise AssertionError("coprime-tuple count not divisible by p - 1")
    return raw // (p - 1)


# --- JSON target descriptors --------------------------------------------------

def target_from_json(data) -> TargetSpace:
    """Validate and build a TargetSpace from a parsed JSON descriptor.

    Schema: {"name": str, "rank": r >= 1, "pw": [coeff strings],
             "classes": [{"beta": [r ints], "value": {"num": [...], "den": [...]}}]}.

    Every supplied class must be pole-free at u = 1; the Euler-limit
    computation divides by u - 1 there and validation at load keeps that
    failure mode out of the pipeline.
    """
    if not isinstance(data, dict):
        raise ValueError("target descriptor must be a JSON object")
    for field in ("name", "rank", "pw", "classes"):
        if field not in data:
            raise ValueError(f"target descriptor missing field {field!r}")
    rank = data["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise ValueError("rank must be an integer >= 1")
    pw = UPoly.from_json(data["pw"])
    if pw.is_zero:
        raise ValueError("pw must be a nonzero polynomial")
    classes = {}
    for item in data["classes"]:
        beta = tuple(int(b) for b in item["beta"])
        if len(beta) != rank:
            raise ValueError(f"beta {beta} does not match rank {rank}")
        if any(b < 0 for b in beta):
            raise ValueError(f"beta {beta} is not effective")
        if all(b == 0 for b in beta):
            raise ValueError("beta = 0 must not be listed; it is the target class itself")
        if beta in classes:
            raise ValueError(f"duplicate class entry for beta {beta}")
        value = RatFunc.from_json(item["value"])
        if value.den.eval(1) == 0:
            raise ValueError(f"class for beta {beta} has a pole at u = 1")
        classes[beta] = value
    return TargetSpace(str(data["name"]), Grading(rank), pw, classes=classes)


def load_target(path) -> TargetSpace:
    """Load and validate a JSON target descriptor from a file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed target file {path}: {exc}") from exc
    return target_from_json(data)
