#include <random>

#include "doctest.h"
#include "qzeta/ppoly.hpp"

using qzeta::Int;
using qzeta::PPoly;

namespace {

PPoly random_poly(std::mt19937_64& rng, int len, int bits)
{
    std::vector<Int> c(static_cast<std::size_t>(len));
    for (auto& x : c) {
        Int v = 0;
        for (int b = 0; b < bits; b += 32) v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
        if (rng() & 1) v = -v;
        x = v;
    }
    return PPoly(c);
}

// Plain O(n^2) product, independent of the library's dispatch.
PPoly naive_mul(const PPoly& a, const PPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return PPoly(r);
}

}  // namespace

TEST_CASE("canonical form drops trailing zeros")
{
    PPoly a{1, 2, 0, 0};
    CHECK(a.degree() == 1);
    CHECK(PPoly{0, 0}.is_zero());
    CHECK((PPoly{1, 1} - PPoly{1, 1}).is_zero());
}

TEST_CASE("product degree is the sum of degrees")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        PPoly a = random_poly(rng, 1 + static_cast<int>(rng() % 60), 40);
        PPoly b = random_poly(rng, 1 + static_cast<int>(rng() % 60), 40);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK((a * b).degree() == a.degree() + b.degree());
    }
}

TEST_CASE("Kronecker multiplication matches schoolbook")
{
    std::mt19937_64 rng(11);
    for (int len : {24, 25, 40, 100, 301}) {
        for (int bits : {1, 31, 64, 200}) {
            PPoly a = random_poly(rng, len, bits);
            PPoly b = random_poly(rng, len + 3, bits);
            CHECK(a * b == naive_mul(a, b));
        }
    }
}

TEST_CASE("binomial division")
{
    PPoly f{3, -1, 4, 1, -5, 9, 2, 6};
    for (std::size_t k : {1u, 2u, 5u}) {
        PPoly m = f.times_binomial(k);
        CHECK(m == f * PPoly::binomial(k));
        auto [q, r] = m.divmod_binomial(k);
        CHECK(q == f);
        CHECK(r.is_zero());
    }
    CHECK_THROWS_AS(PPoly({1, 1}).exact_div(PPoly{1, 0, 1}), std::domain_error);
}

TEST_CASE("gcd recovers a common factor")
{
    PPoly g{1, 1, 1};
    PPoly a = g * PPoly{-1, 1};
    PPoly b = g * PPoly{1, 0, 1};
    PPoly d = qzeta::gcd(a, b);
    CHECK(d.degree() == 2);
    CHECK(a.exact_div(d) * d == a);
}

TEST_CASE("evaluation and p-content")
{
    PPoly f{0, 0, 1, 2};
    CHECK(f.valuation() == 2);
    CHECK(f.without_p_content() == PPoly{1, 2});
    CHECK(f.eval(Int(3)) == 9 + 54);
    CHECK(PPoly{1, 3, 1}.is_palindromic());
}
