"""The u -> 1 specialization: Euler-characteristic generating functions.

Evaluating a class at u = 1 gives its virtual Euler characteristic, but the
functional equation cannot be specialized directly (its coefficients have
poles at u = 1); the limit turns the power (1+t+phi)**u into the
logarithmic equation

    (1 + t + phi) log(1 + t + phi) = 2 phi + t - X (1 + t + phi)

over Q[[t, z]], where the z-series X collects the first-order behaviour of
the map-space classes at u = 1:

    X = sum_{beta != 0} d/du ( [Map_beta] / P_W ) |_{u=1} * z**beta.

For the builtin projective target every coefficient of X equals n, i.e.
X = n z / (1 - z).  The equation is solved order by order (each new total
order is determined linearly with an invertible constant), the chi-potential
is chi(W) * (-phi**2/4 + phi/2 - t**2/4), and crosscheck_chi confirms that
k! times its coefficients equal the exact solver classes evaluated at u = 1.

Series here have constant rational coefficients; ChiSeries is the same
MultiSeries container carrying degree-zero values only.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .qfield import RF_ONE, RatFunc
from .series import MultiSeries, box_vectors, series_log1p
from .solver import _norm_dmax, _t_monomial, extract_classes, potential, solve_phi0
from .target import TargetSpace

ChiSeries = MultiSeries


def is_constant_series(s: MultiSeries) -> bool:
    return all(c.num.degree <= 0 and c.den.degree <= 0 for c in s.coeffs.values())


def xseries(w: TargetSpace, dmax=None) -> ChiSeries:
    """The z-series X driving the Euler-limit equation.

    Each z**beta coefficient, beta != 0, is the first-order Taylor
    coefficient of [Map_beta] / P_W at u = 1 (the value there is 0, so this
    is the actual limit of ([Map_beta]/P_W) / (u - 1)); the beta = 0 term
    vanishes because constant maps contribute the target class itself.
    """
    dmax = _norm_dmax(w, dmax)
    inv_pw = RatFunc(1) / RatFunc(w.pw)
    coeffs = {}
    for beta in box_vectors(dmax):
        if all(b == 0 for b in beta):
            continue
        ratio = w.map_class(beta) * inv_pw
        c = ratio.expand_at_one(1)[1]
        coeffs[(0, beta)] = RatFunc(Fraction(c))
    return MultiSeries(w.grading, 0, dmax, coeffs)


def solve_phi0_chi(w: TargetSpace, kmax: int, dmax=None, xs=None) -> ChiSeries:
    """Unique zero-constant-term solution of the Euler-limit equation,
    exact over Q within the truncation box.

    Writing F(phi) for (1+t+phi)log(1+t+phi) - 2 phi - t + X (1+t+phi), the
    update phi <- phi + F(phi) has phi-derivative log(1+t+phi) + X, which
    vanishes at the origin, so each pass determines exactly one more total
    order; this is the order-by-order linear solve in iterated form.
    """
    dmax = _norm_dmax(w, dmax)
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    grading = w.grading
    if xs is None:
        xs = xseries(w, dmax)
    xs = MultiSeries(grading, kmax, dmax, xs.coeffs)
    one = MultiSeries.const(grading, kmax, dmax, RF_ONE)
    t_ser = _t_monomial(grading, kmax, dmax)

    def residual(phi):
        g = t_ser + phi
        return (one + g) * series_log1p(g) - phi.scale(2) - t_ser + xs * (one + g)

    phi = MultiSeries.zero(grading, kmax, dmax)
    passes = kmax + sum(dmax) + 2
    for _ in range(passes + 1):
        step = residual(phi)
        if step.is_zero:
            break
        phi = phi + step
    else:
        raise RuntimeError("order-by-order solve failed to terminate")
    if not is_constant_series(phi):
        raise RuntimeError("Euler-limit solution left the constant field")
    return phi


def chi_potential(w: TargetSpace, phi0chi: ChiSeries) -> ChiSeries:
    """chi(W) * (-phi**2/4 + phi/2 - t**2/4); k! times its coefficient of
    t**k z**beta is the Euler characteristic of the (k, beta) moduli space."""
    kmax, dmax = phi0chi.kmax, phi0chi.dmax
    chi_w = w.pw.eval(1)
    quad = (phi0chi * phi0chi).scale(Fraction(-1, 4))
    lin = phi0chi.scale(Fraction(1, 2))
    t2 = _t_monomial(w.grading, kmax, dmax, power=2).scale(Fraction(1, 4))
    return (quad + lin - t2).scale(chi_w)


def crosscheck_chi(w: TargetSpace, kmax: int, dmax=None) -> bool:
    """Run the exact solver and the Euler-limit pipeline at the same
    truncation and compare cell by cell: each polynomial class evaluated at
    u = 1 must equal k! times the chi-potential coefficient."""
    dmax = _norm_dmax(w, dmax)
    table = extract_classes(potential(w, solve_phi0(w, kmax, dmax)), w)
    chi_pot = chi_potential(w, solve_phi0_chi(w, kmax, dmax))
    for (k, d) in table.cells():
        exact = table.entry(k, d).eval(1)
        limit = chi_pot.coeff(k, d) * factorial(k)
        if RatFunc(exact) != limit:
            return False
    return True


def chi_table(w: TargetSpace, kmax: int, dmax=None) -> dict:
    """Euler characteristics per cell, as exact rationals."""
    dmax = _norm_dmax(w, dmax)
    chi_pot = chi_potential(w, solve_phi0_chi(w, kmax, dmax))
    out = {}
    for key in box_vectors((kmax,) + dmax):
        k, d = key[0], key[1:]
        value = chi_pot.coeff(k, d) * factorial(k)
        out[(k, d)] = value.eval_at(0)  # coefficients are constants
    return out
