import json
import math
from fractions import Fraction

import mpmath
import pytest
import sympy

import qzeta

P = sympy.Symbol("p")


def ratfunc_at(rf, p):
    num = sum(int(c) * p**i for i, c in enumerate(rf["core"])) * Fraction(p) ** rf["shift"]
    den = 1
    for l, e in rf["den"]:
        den *= int(sympy.cyclotomic_poly(l, P).subs(P, p)) ** e
    return Fraction(num) / den


def test_rho_at_one_is_factorial():
    for k in range(1, 10):
        assert sum(qzeta.rho(k)) == math.factorial(k - 1)


def test_series_against_divisor_sums():
    for k in (1, 2, 3):
        got = qzeta.zeta_q_series(k, 40, "lambert")
        assert got == qzeta.zeta_q_series(k, 40, "divisor-sum")
    got = qzeta.zeta_q_series(1, 30)
    assert got[1:] == [sympy.divisor_count(n) for n in range(1, 30)]


def test_zeta_value_against_mpmath():
    q = mpmath.mpf(1) / 2
    ref = mpmath.nsum(lambda n: q**n / (1 - q**n), [1, mpmath.inf])
    r = qzeta.zeta_q_value(1, 2, 200)
    assert isinstance(r["value"], Fraction)
    assert abs(mpmath.mpf(r["value"].numerator) / r["value"].denominator - ref) < mpmath.mpf(10) ** -12


def test_cyclotomic_and_dnp():
    for l in (1, 6, 12, 30, 105):
        assert qzeta.cyclotomic(l) == [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(l, P), P).all_coeffs())]
    for n in (1, 5, 12):
        lcm = sympy.Integer(1)
        for k in range(1, n + 1):
            lcm = sympy.lcm(lcm, P**k - 1)
        coeffs = qzeta.dnp(n)
        assert sum(c * 3**i for i, c in enumerate(coeffs)) == abs(lcm.subs(P, 3))
    assert qzeta.ord_phi_factorial(3, 10) == 3


def test_linear_form_is_small():
    f = qzeta.linform([9, 9, 9, 18])
    assert f["schema"] == "qzeta.linform/1"
    a, b = ratfunc_at(f["A"], 2), ratfunc_at(f["B"], 2)
    mpmath.mp.dps = 120
    zeta = mpmath.nsum(lambda n: mpmath.mpf(2) ** -n / (1 - mpmath.mpf(2) ** -n), [1, mpmath.inf])
    form = mpmath.mpf(a.numerator) / a.denominator * zeta - mpmath.mpf(b.numerator) / b.denominator
    assert a != 0
    assert abs(form) < abs(mpmath.mpf(a.numerator) / a.denominator) * mpmath.mpf(10) ** -30
    mpmath.mp.dps = 15


def test_inadmissible_parameters_raise():
    with pytest.raises(ValueError):
        qzeta.linform([1, 2, 2, 3])


def test_groups_and_omega():
    assert [qzeta.group_order(w) for w in ("tau_sigma", "tau2_sigma", "zeta2")] == [12, 6, 120]
    assert qzeta.inclusion([9, 7, 9, 16])["ok"]
    assert qzeta.omega([9, 7, 9, 16])["degree"] >= 0


def test_bv_measure():
    m = qzeta.measure("bv", 12)
    assert m["M_coeff"] == Fraction(3, 2)
    assert abs(m["mu_bound"] - 2 * math.pi**2 / (math.pi**2 - 2)) < 1e-8


def test_apery_limits():
    for row in qzeta.apery_limits(3):
        n = row["n"]
        ref = sum(math.comb(n, k) ** 2 * math.comb(n + k, k) for k in range(n + 1))
        assert abs(row["normalized"]) == ref


def test_cli_in_process():
    code, out, _ = qzeta.run_cli(["rho", "--k", "4"])
    assert code == 0
    assert json.loads(out)["outputs"]["coefficients"] == ["1", "4", "1"]
    assert qzeta.run_cli(["nonsense"])[0] == 2
