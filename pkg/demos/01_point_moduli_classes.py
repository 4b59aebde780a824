"""Classes of the moduli spaces of marked rational curves, two ways.

The simplest target is a single point: stable maps to it are just stable
curves, so the coefficients of the potential are the classes of the
classical k-point moduli spaces.  This script computes them twice --
through the functional-equation solver and through the explicit sum over
marked trees -- and checks both routes agree coefficient by coefficient.
"""

from math import factorial

from stablemaps import (extract_classes, point_target, potential, solve_phi0,
                        tree_sum_potential)

KMAX = 8

w = point_target()
phi0 = solve_phi0(w, KMAX)
closed_form = potential(w, phi0)
tree_sum = tree_sum_potential(w, KMAX)

print(f"solver == tree sum on all cells up to k = {KMAX}:",
      closed_form == tree_sum)
print()

table = extract_classes(closed_form, w)
print("classes of the k-point moduli spaces (virtual Poincare polynomials in u):")
for k in range(3, KMAX + 1):
    print(f"  k = {k}:  {table.entry(k)}")
print()

print("the generating-series coefficients carry 1/k!:")
for k in (3, 4, 5):
    print(f"  [t^{k}] potential = {closed_form.coeff(k, ())}"
          f"   (times {k}! = {factorial(k)} gives the class)")
print()

print("Euler characteristics are the values at u = 1:")
print("  ", {k: table.entry(k).eval(1) for k in range(3, KMAX + 1)})
