#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>

#include "doctest.h"
#include "qzeta/parith.hpp"

using namespace qzeta;

TEST_CASE("gauss numbers and factorials")
{
    CHECK(gauss_number(1) == PPoly{1});
    CHECK(gauss_number(3) == PPoly{1, 1, 1});
    CHECK_THROWS(gauss_number(0));
    CHECK(gauss_factorial(0) == PPoly{1});
    CHECK(gauss_factorial(3) == PPoly{1, 2, 2, 1});
    CHECK(gauss_factorial(5).degree() == 10);

    // [6]_p is the product of Phi_d over d | 6, d > 1.
    CHECK(gauss_number(6) == cyclotomic(2) * cyclotomic(3) * cyclotomic(6));
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic(1) == PPoly{-1, 1});
    CHECK(cyclotomic(6) == PPoly{1, -1, 1});
    CHECK(cyclotomic(12) == PPoly{1, 0, -1, 0, 1});
    // Phi_105 is the first with a coefficient of absolute value 2.
    bool has_two = false;
    for (const auto& c : cyclotomic(105).coeffs()) has_two |= (c == -2);
    CHECK(has_two);
    for (int l = 2; l <= 120; ++l) {
        CHECK(cyclotomic(l).is_palindromic());
        CHECK(cyclotomic(l).degree() == euler_phi(l));
        // Oracle: p^l - 1 divided by the lower cyclotomics.
        PPoly rest = PPoly::binomial(static_cast<std::size_t>(l));
        for (int d : divisors(l))
            if (d < l) rest = rest.exact_div(cyclotomic(d));
        CHECK(rest == cyclotomic(l));
        CHECK(cyclotomic_value(l, Int(2)) == cyclotomic(l).eval(Int(2)));
        CHECK(cyclotomic_value(l, Int(-3)) == cyclotomic(l).eval(Int(-3)));
    }
}

TEST_CASE("q-factorial identity under q = 1/p")
{
    for (int n = 0; n <= 20; ++n) {
        // [n]_q! at q = 1/p, as a rational at p = 3, times p^(n(n-1)/2).
        Rat q(1, 3), fq = 1;
        for (int nu = 1; nu <= n; ++nu) {
            Rat qn = 1;
            for (int i = 0; i < nu; ++i) qn *= q;
            fq *= (1 - qn) / (1 - q);
        }
        Rat scale = 1;
        for (int i = 0; i < n * (n - 1) / 2; ++i) scale *= 3;
        CHECK(Rat(gauss_factorial(n).eval(Int(3))) == fq * scale);
    }
}

TEST_CASE("D_n against gcd-based lcms for n <= 40")
{
    // [nu]_p carries no Phi_1, so the lcm of the q-numbers misses exactly
    // that factor; the lcm of p^nu - 1 is the full product.
    PPoly L{1};
    for (int n = 1; n <= 40; ++n) {
        PPoly b = PPoly::binomial(static_cast<std::size_t>(n));
        L = L * b.exact_div(gcd(L, b));
        FactoredPPoly d = dnp(n);
        CHECK(static_cast<int>(d.exponents.size()) == n);
        CHECK(d.expand() == cyclotomic(1) * gauss_lcm(n));
        CHECK(d.expand() == (sgn(L.leading()) < 0 ? -L : L));
    }
    long totient = 0;
    for (int l = 1; l <= 10; ++l) totient += euler_phi(l);
    CHECK(dnp(10).degree() == totient);
    CHECK(totient == 32);
    CHECK(dnp(3).expand() == PPoly{-1, 1} * PPoly{1, 1} * PPoly{1, 1, 1});
}

TEST_CASE("cyclotomic order of q-factorials")
{
    CHECK(ord_phi_factorial(2, 5) == 2);
    CHECK(ord_phi_factorial(5, 4) == 0);
    CHECK(ord_phi_factorial(3, 9) == 3);
    CHECK(ord_phi_factorial_by_division(3, 9) == 3);
    CHECK_THROWS(ord_phi_factorial(1, 5));
    for (int n = 2; n <= 12; ++n)
        for (int l = 2; l <= n; ++l) CHECK(ord_phi_factorial_by_division(l, n) == n / l);
}

TEST_CASE("trigamma against boost and closed forms")
{
    const double pi2 = static_cast<double>(kPi * kPi);
    CHECK(std::fabs(static_cast<double>(trigamma(Rat(1)).value) - pi2 / 6) < 1e-14);
    CHECK(std::fabs(static_cast<double>(trigamma(Rat(1, 2)).value) - pi2 / 2) < 1e-14);
    CHECK(std::fabs(static_cast<double>(trigamma(Rat(2)).value) - (pi2 / 6 - 1)) < 1e-14);
    CHECK_THROWS(trigamma(Rat(0)));
    CHECK_THROWS(trigamma(Rat(-1, 2)));
    for (int i = 1; i <= 100; ++i) {
        Rat x(i, 20);
        Trigamma t = trigamma(x);
        CHECK(t.abs_err <= 1e-13L);
        long double oracle = boost::math::trigamma(static_cast<long double>(x.get_d()));
        CHECK(std::fabs(static_cast<double>(t.value - oracle)) <= 1e-13 * std::max(1.0L, oracle));
        Trigamma t1 = trigamma(x + 1);
        long double xx = static_cast<long double>(x.get_d());
        CHECK(std::fabs(static_cast<double>(t.value - t1.value - 1 / (xx * xx))) < 1e-12 * std::max(1.0L, t.value));
    }
}

TEST_CASE("Mertens ratio")
{
    CHECK(std::fabs(mertens_ratio(2, 2) - std::log(3.0) / (4 * std::log(2.0))) < 1e-12);
    CHECK(std::fabs(mertens_ratio(300, 2) - static_cast<double>(kMertens)) < 0.05);
    CHECK_THROWS(mertens_ratio(10, 1));
}

TEST_CASE("cyclotomic block density")
{
    BlockSum a = phi_block_sum(500, 2, Rat(1, 2), Rat(1));
    CHECK(std::fabs(a.rhs - 1.0) < 1e-12);
    CHECK(std::fabs(a.lhs - 1.0) < 0.1);
    BlockSum b = phi_block_sum(500, 2, Rat(1, 3), Rat(1, 2));
    CHECK(std::fabs(b.lhs - b.rhs) < 0.1 * b.rhs);
    CHECK_THROWS(phi_block_sum(500, 2, Rat(1, 2), Rat(1, 2)));
}

TEST_CASE("factored polynomials")
{
    FactoredPPoly b = FactoredPPoly::binomial(12);
    CHECK(b.expand() == PPoly::binomial(12));
    FactoredPPoly r = b / FactoredPPoly::binomial(4);
    CHECK(r.is_polynomial());
    CHECK(r.expand() * PPoly::binomial(4) == PPoly::binomial(12));
    CHECK_FALSE((FactoredPPoly::binomial(4) / b).is_polynomial());
    CHECK(gauss_factorial_factored(9).expand() == gauss_factorial(9));
}
