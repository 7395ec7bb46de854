"""The 2x4 pattern module over M_2(C).

Elements are M = [[a, b, 0, 0], [0, c, 0, d]] with <M, N> = M N*.  The family
Lambda_w keeps w*b and w*c, the controllers are alpha I and beta I, and K is the
(b, c) mask.  Integrating over [0, 1] gives a tight K-frame with constant
alpha*beta/3, while no lower bound against <M, M> exists.
"""
import numpy as np

from modframe import modules as md
from modframe.certify import certify_lower_K, certify_upper, optimal_bounds
from modframe.frame import build_paper_example, integral_form_gram

alpha, beta = 2.0, 1.5
inst = build_paper_example(alpha, beta)
H, K = inst.space, inst.K

M = md.ModuleVector(H, [1, 2, 3, 4])
print("M =\n", M.matrix.real)
print("<M, M> =\n", md.inner_product(M, M).real)
KM = K(M)
print("<K*M, K*M> =\n", md.inner_product(KM, KM).real)

# the integral form is alpha*beta/3 times the K-form, entry by entry
G = integral_form_gram(inst)
kform = md.form_gram(H, [(1.0, K.H, K.H)])
print("max |integral - (alpha beta / 3) K-form| =", np.abs(G - alpha * beta / 3 * kform).max())

br = optimal_bounds(inst)
print(f"B_opt = {br.B_opt:.15f}  A_opt = {br.A_opt:.15f}  alpha*beta/3 = {alpha * beta / 3:.15f}")
print("tight:", br.tight, " class:", br.frame_class)

c = alpha * beta / 3
print("upper at alpha*beta/3:", certify_upper(inst, c).status.value)
v = certify_upper(inst, c - 1e-3)
print("upper just below:", v.status.value, "witness", np.round(v.witness.coords, 6))

# without K the lower inequality fails for every A, along b = c = 0
plain = inst.with_(K=None)
for A in (1e-3, 1e-2, 0.1, 1.0):
    v = certify_lower_K(plain, A)
    a, b, cc, d = v.witness.coords
    print(f"A = {A:g}: {v.status.value}, |b|+|c| = {abs(b) + abs(cc):.1e}, |a|+|d| = {abs(a) + abs(d):.3f}")
