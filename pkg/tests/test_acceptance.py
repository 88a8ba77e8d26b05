"""Acceptance criteria: each one runs its check suites at the stated size and
must also finish inside its time budget.

Run with ``pytest tests/test_acceptance.py -v`` (a PASS/FAIL line per
criterion is printed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction

import pytest

from freebool import diagonal as dg
from freebool import multconv as mc
from freebool import transforms as tf
from freebool.verify import run_suite
from freebool.words import words_up_to

SEED = 20240601


def _suites(*runs):
    reports = [run_suite(name, order=order, cases=cases, seed=SEED) for name, order, cases in runs]
    bad = [(r.theorem, r.failures[:3]) for r in reports if not r.ok]
    return not bad, f"{sum(r.checks for r in reports)} checks" + (f"; failures: {bad}" if bad else "")


def eta_diagonal_characterization():
    return _suites(("thm-2.8", 8, 25))


def eta_of_products():
    return _suites(("prop-2.12", 8, 25))


def moment_cumulant_roundtrips():
    return _suites(("eq-2.3", 8, 3), ("eq-3.2", 8, 2))


def product_r_two_methods():
    return _suites(("eq-3.4a", 5, 25), ("prop-3.6", 10, 10))


def kms_defects():
    ok, detail = _suites(("prop-3.7", 8, 5), ("rem-3.8", 8, 25))
    # the symmetric case by hand: alpha = beta, t = 1
    nu = dg.make_r_diagonal(dg.DeterminingPair((1, 2, 3, 4), (1, 2, 3, 4)), 8)
    return ok and dg.kms_defects(nu, 1, 8) == [], detail


def change_of_variables():
    return _suites(("lem-4.8", 5, 5), ("lem-4.9", 5, 5))


def operator_model():
    assert len(words_up_to(8)) == 510
    return _suites(("thm-5.2/prop-5.7", 8, 10))


def catalan_and_lambda_circular():
    halves = tf.AtomicMeasure(((0, Fraction(1, 2)), (2, Fraction(1, 2))))
    catalan = tf.bbp1(halves.moment_series(5)).coefficients() == [1, 2, 5, 14, 42]
    ok, detail = _suites(("eq-6.4a", 5, 5), ("ex-6.8", 5, 0))
    return ok and catalan, detail


def psi_products_and_kms_tau():
    return _suites(("thm-6.2", 6, 10), ("prop-6.6", 6, 5))


def boxtimes_routes():
    ok, detail = _suites(("eq-7.1a-vs-7.2a", 5, 30), ("cor-7.3", 5, 30), ("rem-7.10", 5, 30))
    lam = mc.lambda_circular_pair(Fraction(1, 3), 5)
    pair, _ = mc.boxtimes_determining(lam, mc.lambda_circular_pair(3, 5), 5)
    return ok and mc.kms_parameter(pair) == 1, detail


def boxtimes_infdiv():
    ok, detail = _suites(("thm-7.8", 6, 10))
    halves = tf.AtomicMeasure(((0, Fraction(1, 2)), (2, Fraction(1, 2))))
    one = tf.AtomicMeasure.dirac(1)
    pair, _ = mc.boxtimes_determining(dg.psi(halves, one, 6).pair, dg.psi(one, one, 6).pair, 6)
    return ok and dg.is_infdiv_r_diagonal(pair).ok, detail


def lambda_circular_powers():
    return _suites(("prop-7.13", 6, 0))


CRITERIA = [
    (1, "eta-diagonal laws <=> moment rules, N=8, 25 pairs", eta_diagonal_characterization, 30),
    (2, "eta-series of ZZ* and Z*Z equal the determining series, n<=4", eta_of_products, 5),
    (3, "moment/eta/R fast paths equal partition-sum oracles, words <= 8", moment_cumulant_roundtrips, 60),
    (4, "product R-transforms by partition sum, composition and *-moments, n=5", product_r_two_methods, 30),
    (5, "KMS pairs have vanishing defects; vanishing defects force alpha = t beta", kms_defects, 60),
    (6, "change of variables intertwines M, R, eta and free convolution, N=5", change_of_variables, 10),
    (7, "operator model moments within 1e-10 of exact moments, 510 words", operator_model, 60),
    (8, "BBP of (d0+d2)/2 is Catalan; lambda-circular transforms, n<=5", catalan_and_lambda_circular, 10),
    (9, "BBP compositions = product R of psi; kms_tau = psi products, N=6", psi_products_and_kms_tau, 60),
    (10, "three product-pair routes agree, degenerate branch, KMS multiplicativity", boxtimes_routes, 120),
    (11, "products of psi laws pass the truncated positivity test at N=6", boxtimes_infdiv, 60),
    (12, "lambda-circular sigma_k two ways, k<=4; nu^k = psi(...), k<=3", lambda_circular_powers, 120),
]


def run_criterion(number, label, fn, budget):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < budget
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {label}  ({elapsed:.1f}s of {budget}s; {detail})"
    return passed, elapsed, line


@pytest.mark.parametrize("number, label, fn, budget", CRITERIA, ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_acceptance(number, label, fn, budget, request):
    passed, elapsed, line = run_criterion(number, label, fn, budget)
    print(line)
    _record(request.config, number, line)
    assert passed, line


def _record(config, number, line):
    lines = getattr(config, "_acceptance_lines", None)
    if lines is None:
        lines = config._acceptance_lines = {}
    lines[number] = line


if __name__ == "__main__":
    failed = 0
    for number, label, fn, budget in CRITERIA:
        passed, _, line = run_criterion(number, label, fn, budget)
        failed += not passed
        print(line, flush=True)
    sys.exit(1 if failed else 0)
