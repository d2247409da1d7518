"""
Counting smooth numbers: exact Psi(x, y) against the Ennola main term
=====================================================================

When y <= sqrt(log x) the count of y-smooth integers up to x is close to
(log x)^r / prod_i (i log p_i), with r the number of primes up to y. The exact
count comes from recursive lattice counting, so x = e^200 is no problem.
"""

from smoothgaps.smooth import ennola_main_term_log, psi_exact_log

print(f"{'log x':>6} {'y':>3} {'Psi exact':>12} {'main term':>12} {'ratio':>8} regime")
for y in (3, 5, 7):
    for log_x in (30, 60, 100, 200):
        exact = psi_exact_log(log_x, y)
        est = ennola_main_term_log(log_x, y)
        print(f"{log_x:6d} {y:3d} {exact:12d} {est.value:12.1f} {exact / est.value:8.4f} {est.in_regime}")

# The relative error shrinks like y^2 / (log x log y), visible down each column.
