"""Powers of a lambda-circular element under free multiplicative convolution.

The determining pair of nu is ((lam, 0, ...), (1, 0, ...)).  Its k-th power is
again psi of a pair of measures built from sigma_k, which we get two ways:
from a recursion on S-transforms and as a free product of explicit two-atom
measures tau_j.
"""

from fractions import Fraction

from freebool import diagonal as dg
from freebool import multconv as mc

N = 6
lam = Fraction(1, 2)

nu = dg.make_r_diagonal(mc.lambda_circular_pair(lam, N // 2), N)
zz, zsz = dg.product_r(nu, N // 2)
print("R of ZZ*:", [str(c) for c in zz.coefficients()], " R of Z*Z:", [str(c) for c in zsz.coefficients()])
print("KMS with t = lam:", dg.kms_check(nu, lam), " defects:", len(dg.kms_defects(nu, lam, N)))

for k in range(1, 5):
    via_s = mc.lambda_circular_sigma_s(lam, k, N)
    via_tau = mc.lambda_circular_sigma_product(lam, k, N)
    print(f"sigma_{k}:", [str(c) for c in via_s.coefficients()], " same both ways:", via_s == via_tau)

for k in range(1, 4):
    power = mc.lambda_circular_power(lam, k, N)
    print(f"nu^{k}: alpha =", [str(a) for a in power.alpha], " kms parameter", mc.kms_parameter(power),
          " equals psi pair:", power == mc.lambda_circular_psi_pair(lam, k, N))
