"""Closed-form route: fixed point of the functional equation, the potential,
class extraction, and the exact identity checks.

The generating series Phi(t, z) of the moduli classes, with coefficient of
t**k z**beta equal to [Mbar_{0,k}(W, beta)] / k!, is obtained from the
unique zero-constant-term root phi0 of

    E(W,z) * (1 + t + phi)**u / (u(u-1) P_W)
        = phi * u/(u-1) + t/(u-1) + 1/(u(u-1))                      (*)

by the closed form

    Phi = P_W * ( -u/(2(u+1)) * phi0**2 + phi0/(u+1) - t**2/(2(u+1)) ).

solve_phi0 finds phi0 by the rearrangement

    phi  <-  E(W,z)*(1+t+phi)**u / (u(u-1) P_W) - (phi + t)/(u-1) - 1/(u(u-1))

whose phi-derivative ((1+t+phi)**(u-1) - 1)/(u-1) vanishes at the origin,
so every pass is exact to one more total (t, z)-order and the iteration is
stationary after as many passes as the box has total orders.  (Moving the
phi u/(u-1) term to the left instead leaves a phi-linear factor 1/u on the
right, which contracts only u-adically and never becomes stationary.)

The verification operations re-check the solution against everything the
closed form implies: the universal differential equation

    (1 - u*phi0) phi0_t = (u+1) phi0 + t,      equivalently, with
    psi = phi0 + t:   (1 + u t - u psi) psi_t = 1 + psi,

the derivative identity d/dt (Phi / P_W) = phi0, the expansion of the
formal potential whose critical point phi0 is (coefficient comparison in an
auxiliary variable), and a floating-point check of the implicit closed-form
solution of the differential equation, whose integration constant must
depend on z only.  All checks except the last are exact in Q(u).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial

from .qfield import (LINE_CLASS, MOEBIUS_CLASS, P_ONE, RF_ONE, RF_U, RatFunc,
                     U, UPoly, binom_falling, format_poly)
from .series import MultiSeries, box_vectors, series_dt, series_pow_binomial
from .target import TargetSpace, eisenstein_series, nclass, point_target

_INV_UM1 = RatFunc(P_ONE, UPoly((-1, 1)))      # 1/(u-1)
_INV_UUM1 = RatFunc(P_ONE, UPoly((0, -1, 1)))  # 1/(u(u-1))


def _norm_dmax(w: TargetSpace, dmax) -> tuple:
    if dmax is None:
        return w.grading.zero
    dmax = tuple(int(x) for x in dmax)
    if len(dmax) != w.grading.rank:
        raise ValueError(f"dmax {dmax} does not match rank {w.grading.rank} of {w.name}")
    return dmax


def _lifted_eisenstein(w: TargetSpace, kmax: int, dmax) -> MultiSeries:
    e = eisenstein_series(w, dmax)
    return MultiSeries(w.grading, kmax, dmax, e.coeffs)


def _t_monomial(grading, kmax, dmax, power=1) -> MultiSeries:
    if kmax >= power:
        return MultiSeries.monomial(grading, kmax, dmax, power, grading.zero, RF_ONE)
    return MultiSeries.zero(grading, kmax, dmax)


def solve_phi0(w: TargetSpace, kmax: int, dmax=None, initial=None) -> MultiSeries:
    """Unique zero-constant-term root of the functional equation (*), exact
    within the truncation box.

    `initial` may supply any starting series with zero constant term; the
    iteration reaches the same fixed point regardless, which is how
    uniqueness is exercised in the tests.
    """
    dmax = _norm_dmax(w, dmax)
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    grading = w.grading
    prefactor = RatFunc(P_ONE, U * UPoly((-1, 1)) * w.pw)  # 1/(u(u-1)P_W)
    scaled_e = _lifted_eisenstein(w, kmax, dmax).scale(prefactor)
    t_ser = _t_monomial(grading, kmax, dmax)
    const = MultiSeries.const(grading, kmax, dmax, _INV_UUM1)

    phi = MultiSeries.zero(grading, kmax, dmax) if initial is None else initial
    if not phi.constant_term.is_zero:
        raise ValueError("initial series must have zero constant term")

    passes = kmax + sum(dmax) + 2
    for _ in range(passes + 1):
        power = series_pow_binomial(t_ser + phi, RF_U)
        nxt = scaled_e * power - (phi + t_ser).scale(_INV_UM1) - const
        if nxt == phi:
            break
        phi = nxt
    else:
        raise RuntimeError("fixed-point iteration failed to become stationary")
    if not phi.constant_term.is_zero:
        raise RuntimeError("fixed point has a nonzero constant term")
    return phi


def potential(w: TargetSpace, phi0: MultiSeries) -> MultiSeries:
    """Assemble the potential from the fixed point:
    Phi = P_W * (-u/(2(u+1)) phi0**2 + phi0/(u+1) - t**2/(2(u+1)))."""
    kmax, dmax = phi0.kmax, phi0.dmax
    two_up1 = LINE_CLASS.scale(2)
    quad = (phi0 * phi0).scale(RatFunc(UPoly((0, -1)), two_up1))
    lin = phi0.scale(RatFunc(P_ONE, LINE_CLASS))
    t2 = _t_monomial(w.grading, kmax, dmax, power=2).scale(RatFunc(P_ONE, two_up1))
    return (quad + lin - t2).scale(RatFunc(w.pw))


class SolverResult:
    """Fixed point and potential of one solver run."""

    __slots__ = ("target", "phi0", "potential", "kmax", "dmax")

    def __init__(self, target, phi0, pot):
        self.target = target
        self.phi0 = phi0
        self.potential = pot
        self.kmax = phi0.kmax
        self.dmax = phi0.dmax


def solve(w: TargetSpace, kmax: int, dmax=None) -> SolverResult:
    phi0 = solve_phi0(w, kmax, dmax)
    return SolverResult(w, phi0, potential(w, phi0))


class ClassTable:
    """Moduli classes per (k, beta) cell: exact polynomials in u."""

    __slots__ = ("target_name", "kmax", "dmax", "entries")

    def __init__(self, target_name: str, kmax: int, dmax, entries):
        self.target_name = target_name
        self.kmax = kmax
        self.dmax = tuple(dmax)
        self.entries = {(k, tuple(d)): p for (k, d), p in entries.items()}

    def entry(self, k: int, beta=()) -> UPoly:
        return self.entries[(k, tuple(beta))]

    def cells(self):
        return sorted(self.entries)

    def __eq__(self, other):
        return (isinstance(other, ClassTable)
                and self.target_name == other.target_name
                and self.kmax == other.kmax and self.dmax == other.dmax
                and self.entries == other.entries)

    def to_json_obj(self) -> dict:
        rows = []
        for (k, d) in self.cells():
            p = self.entries[(k, d)]
            rows.append({
                "k": k,
                "beta": list(d),
                "class_u": p.to_json(),
                "class_q": [str(c) for c in p.q_coeffs()],
                "chi": str(p.eval(1)),
            })
        return {"target": self.target_name, "kmax": self.kmax,
                "dmax": list(self.dmax), "entries": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    @classmethod
    def from_json_obj(cls, data) -> "ClassTable":
        entries = {}
        for row in data["entries"]:
            entries[(row["k"], tuple(row["beta"]))] = UPoly.from_json(row["class_u"])
        return cls(data["target"], data["kmax"], tuple(data["dmax"]), entries)

    @classmethod
    def from_json(cls, text: str) -> "ClassTable":
        return cls.from_json_obj(json.loads(text))

    def to_csv(self) -> str:
        lines = ['"k","beta","class_u","class_q","chi"']
        for (k, d) in self.cells():
            p = self.entries[(k, d)]
            beta = ",".join(str(x) for x in d)
            cu = ",".join(str(c) for c in p.coeffs)
            cq = ",".join(str(c) for c in p.q_coeffs())
            lines.append(f'"{k}","{beta}","{cu}","{cq}","{p.eval(1)}"')
        return "\n".join(lines) + "\n"

    def pretty(self) -> str:
        lines = []
        for (k, d) in self.cells():
            p = self.entries[(k, d)]
            beta = ",".join(str(x) for x in d) or "-"
            lines.append(f"k={k} beta={beta}: {format_poly(p.coeffs, 'u')}")
        return "\n".join(lines)


def extract_classes(pot: MultiSeries, w: TargetSpace = None) -> ClassTable:
    """Read off k! times each potential coefficient and certify it is a
    polynomial in u; a surviving denominator is an error, never silently
    accepted."""
    entries = {}
    for key in box_vectors((pot.kmax,) + pot.dmax):
        k, d = key[0], key[1:]
        value = pot.coeff(k, d) * factorial(k)
        if not value.is_polynomial:
            raise ValueError(f"non-polynomial class at (k={k}, beta={d}): {value}")
        entries[(k, d)] = value.as_upoly()
    name = w.name if w is not None else ""
    return ClassTable(name, pot.kmax, pot.dmax, entries)


def verify_ode(phi0: MultiSeries):
    """Residuals of the two forms of the universal differential equation;
    both must be the zero series on the box with kmax lowered by one."""
    grading = phi0.grading
    kmax, dmax = phi0.kmax, phi0.dmax
    one = MultiSeries.const(grading, kmax, dmax, RF_ONE)
    t_ser = _t_monomial(grading, kmax, dmax)
    dphi = series_dt(phi0)

    res_a = (one - phi0.scale(RF_U)) * dphi \
        - phi0.scale(RatFunc(LINE_CLASS)).truncate(kmax=kmax - 1) \
        - _t_monomial(grading, kmax - 1, dmax)

    psi = phi0 + t_ser
    dpsi = series_dt(psi)
    res_b = (one + t_ser.scale(RF_U) - psi.scale(RF_U)) * dpsi \
        - one.truncate(kmax=kmax - 1) - psi.truncate(kmax=kmax - 1)
    return res_a, res_b


def verify_dt(pot: MultiSeries, phi0: MultiSeries, w: TargetSpace) -> bool:
    """d/dt of the reduced potential Phi / [W] must reproduce the fixed
    point exactly."""
    lhs = series_dt(pot).scale(RatFunc(P_ONE, w.pw))
    return lhs == phi0.truncate(kmax=phi0.kmax - 1)


def _epsilon_correction(w: TargetSpace, n: int, kmax: int, dmax) -> MultiSeries:
    """Unstable-term correction subtracted from the n-th potential
    coefficient: sum_{k=0}^{2-n} N(W,0) t**k/k! C([P^1], n+k) (n+k)!;
    zero for n >= 3."""
    out = MultiSeries.zero(w.grading, kmax, dmax)
    if n >= 3:
        return out
    n0 = nclass(w, w.grading.zero)
    for k in range(0, 2 - n + 1):
        if k > kmax:
            break
        c = n0 * binom_falling(LINE_CLASS, n + k) * Fraction(factorial(n + k), factorial(k))
        out = out + MultiSeries.monomial(w.grading, kmax, dmax, k, w.grading.zero, c)
    return out


def verify_potential_expansion(w: TargetSpace, nmax: int, kmax: int, dmax=None) -> bool:
    """Compare the two expansions of the formal potential in an auxiliary
    variable phi, through phi-degree nmax.

    Route one builds each coefficient as the weighted double sum

        C_n = E/((u**3-u) P_W) * sum_k t**k/k! (n+k)! C([P^1], n+k)  -  eps_n

    (with the n = 2 coefficient also carrying the -1/2 from the quadratic
    term); route two reads the same coefficient off the closed form, where
    the phi-degree-n part of (1+t+phi)**(u+1) is C(u+1, n) (1+t)**(u+1-n)
    and the unstable corrections appear as explicit low-degree polynomials.
    Both must agree exactly, coefficient by coefficient.
    """
    if nmax < 2:
        raise ValueError("nmax must be >= 2")
    dmax = _norm_dmax(w, dmax)
    grading = w.grading
    scaled_e = _lifted_eisenstein(w, kmax, dmax).scale(
        RatFunc(P_ONE, MOEBIUS_CLASS * w.pw))
    t_ser = _t_monomial(grading, kmax, dmax)
    um1 = UPoly((-1, 1))

    for n in range(nmax + 1):
        # route one: explicit k-sum
        ksum = MultiSeries.zero(grading, kmax, dmax)
        for k in range(kmax + 1):
            c = binom_falling(LINE_CLASS, n + k) * Fraction(factorial(n + k), factorial(k))
            ksum = ksum + MultiSeries.monomial(grading, kmax, dmax, k, grading.zero, c)
        c_n = scaled_e * ksum - _epsilon_correction(w, n, kmax, dmax)
        route_one = c_n.scale(Fraction(1, factorial(n)))
        if n == 2:
            route_one = route_one - MultiSeries.const(grading, kmax, dmax, Fraction(1, 2))

        # route two: closed form
        exponent = RatFunc(UPoly((1 - n, 1)))  # u + 1 - n
        route_two = scaled_e.scale(binom_falling(LINE_CLASS, n)) \
            * series_pow_binomial(t_ser, exponent)
        if n == 2:
            route_two = route_two - MultiSeries.const(
                grading, kmax, dmax, RatFunc(U, um1.scale(2)))
        elif n == 1:
            corr = MultiSeries.const(grading, kmax, dmax, _INV_UUM1) \
                + t_ser.scale(_INV_UM1)
            route_two = route_two - corr
        elif n == 0:
            corr = MultiSeries.const(
                grading, kmax, dmax, RatFunc(P_ONE, LINE_CLASS * U * um1)) \
                + t_ser.scale(_INV_UUM1) \
                + _t_monomial(grading, kmax, dmax, 2).scale(RatFunc(P_ONE, um1.scale(2)))
            route_two = route_two - corr

        if route_one != route_two:
            return False
    return True


def verify_implicit_numeric(w: TargetSpace, u_val, z_val, t_samples,
                            kmax: int = 12, dmax=None, phi0=None) -> float:
    """Float check of the implicit solution of the differential equation.

    With x = t + (u+1)/u, y = u*phi0 - 1 and s = y/x, the combination
    (s+1)**(1/(u-1)) * (s+u)**(u/(1-u)) / x is an integration constant: it
    may depend on z but not on t.  The fixed point is evaluated exactly at
    rational (t, z) and fed through the fractional powers in double
    precision; the return value is the relative spread of the combination
    across the t-samples, which must be tiny when phi0 is correct.

    Advisory by design: the only floating-point numbers in the package are
    produced here.
    """
    u = Fraction(u_val)
    if u in (0, 1, -1):
        raise ValueError("u must avoid 0 and +-1")
    if phi0 is None:
        if dmax is None and w.grading.rank:
            dmax = (3,) * w.grading.rank
        phi0 = solve_phi0(w, kmax, dmax)
    if w.grading.rank:
        if z_val is None:
            raise ValueError("z value required for a graded target")
        zs = (tuple(Fraction(z) for z in z_val) if isinstance(z_val, (tuple, list))
              else (Fraction(z_val),) * w.grading.rank)
    else:
        zs = ()

    uf = float(u)
    exp1 = 1.0 / (uf - 1.0)
    exp2 = uf / (1.0 - uf)
    values = []
    for t_raw in t_samples:
        t = Fraction(t_raw)
        phi = Fraction(0)
        for (k, d), c in phi0.coeffs.items():
            term = c.eval_at(u) * t ** k
            for z_j, d_j in zip(zs, d):
                term *= z_j ** d_j
            phi += term
        x = t + (u + 1) / u
        if x == 0:
            raise ValueError("branch")
        s = (u * phi - 1) / x
        base1 = s + 1
        base2 = s + u
        if base1 <= 0 or base2 <= 0:
            raise ValueError("branch")
        values.append(float(base1) ** exp1 * float(base2) ** exp2 / float(x))
    lo, hi = min(values), max(values)
    mean = sum(values) / len(values)
    if mean == 0:
        raise ValueError("degenerate samples")
    return (hi - lo) / abs(mean)


def point_entry_table(kmax: int) -> ClassTable:
    """Classes for the one-point target, used by the product-structure
    checks of graded targets at beta = 0."""
    w = point_target()
    run = solve(w, kmax)
    return extract_classes(run.potential, w)
