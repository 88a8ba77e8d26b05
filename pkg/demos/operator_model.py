"""A 2-atom pair of measures realized by a finite matrix, compared with the
exact *-moments of the eta-diagonal law the pair parametrizes."""

from fractions import Fraction

from freebool import diagonal as dg
from freebool import opmodel as om
from freebool.transforms import AtomicMeasure
from freebool.words import words_up_to

s1 = AtomicMeasure(((1, Fraction(1, 3)), (4, Fraction(2, 3))))
s2 = AtomicMeasure(((0, Fraction(1, 2)), (9, Fraction(1, 2))))

model = om.build_model(s1, s2)
print(f"H has dimension {model.dim_h}, A acts on dimension {model.A.shape[0]}")

exact = dg.phi(s1, s2, 8)
numeric = om.model_star_moments(model, 8)
worst = max(abs(numeric[w] - float(exact.moment(w))) for w in words_up_to(8))
print(f"largest error over {len(numeric)} words: {worst:.2e}")

for w in ["1*", "*1", "1**1", "*11*", "1*1*", "11"]:
    print(f"  {w:5s} model {numeric[w]:12.6f}   exact {exact.moment(w)}")

print("largest structural residual:", f"{max(om.structural_residuals(model).values()):.2e}")
