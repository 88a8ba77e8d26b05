"""The BBP map sends (d0 + d2)/2 to the law with Catalan moments.

Also shows the same image through the two convolution powers, and the
S-transform route for a free multiplicative product.
"""

from fractions import Fraction

from freebool import transforms as tf

N = 8
half = Fraction(1, 2)
halves = tf.AtomicMeasure(((0, half), (2, half)))
m = halves.moment_series(N)

print("moments of (d0+d2)/2:  ", [str(c) for c in m.coefficients()])
print("eta-series:            ", [str(c) for c in tf.eta_from_moments1(m).coefficients()])

image = tf.bbp1(m)
print("BBP image moments:     ", [str(c) for c in image.coefficients()])
print("via boxplus 2, uplus 1/2 agrees:", tf.bbp1_via_powers(m) == image)

# the image is Pi_1, whose S-transform is 1/(1+z)
print("S-transform of image:  ", [str(c) for c in tf.s_transform(image).c])

# (d0+d2)/2 boxtimes delta_3 just rescales by 3; the mixed-moment oracle
# enumerates partitions of 2n points, so keep n small here
n = 6
m, d3 = halves.moment_series(n), tf.AtomicMeasure.dirac(3).moment_series(n)
prod = tf.free_mult_convolve(m, d3, "oracle")
print("(d0+d2)/2 boxtimes d3: ", [str(c) for c in prod.coefficients()])
print("S-path agrees:", tf.free_mult_convolve(m, d3, "s") == prod)
