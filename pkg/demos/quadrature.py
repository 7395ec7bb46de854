"""Quadrature error of the example constant.

The integrand is w^2, so two Gauss points are exact, the trapezoid rule
converges at second order and the midpoint rule with half its error.
"""
from modframe.certify import optimal_bounds
from modframe.frame import build_paper_example

exact = 1 / 3
print("gauss_legendre N=2 error:", abs(optimal_bounds(build_paper_example(rule="gauss_legendre", N=2)).B_opt - exact))

for rule in ("trapezoid", "midpoint"):
    prev = None
    print(rule)
    for N in (8, 16, 32, 64, 128):
        err = abs(optimal_bounds(build_paper_example(rule=rule, N=N)).B_opt - exact)
        ratio = "" if prev is None else f"  ratio {prev / err:.4f}"
        print(f"  N = {N:4d}  error {err:.3e}{ratio}")
        prev = err
