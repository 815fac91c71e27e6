#include <cmath>

#include "doctest.h"
#include "qzeta/groups.hpp"
#include "qzeta/linforms.hpp"

using namespace qzeta;

namespace {

// Gamma_q(n) = prod_{k<n} (1 - q^k)/(1 - q) for integer n >= 1.
long double gamma_q(int n, long double q)
{
    long double r = 1;
    for (int k = 1; k < n; ++k) r *= (1 - std::pow(q, k)) / (1 - q);
    return r;
}

// The defining series summed directly in long double.
long double series_oracle(const Params& P, long p)
{
    const long double q = 1.0L / p;
    long double s = 0;
    if (P.kind == FormKind::Zeta1) {
        const auto& z = P.z1;
        const long double pre = gamma_q(z.b - z.a2, q) / ((1 - q) * gamma_q(z.a1, q));
        for (int t = 0; t < 400; ++t) {
            s += gamma_q(t + z.a1, q) * gamma_q(t + z.a2, q) / (gamma_q(t + 1, q) * gamma_q(t + z.b, q)) *
                 std::pow(q, static_cast<long double>(z.a0) * t);
        }
        return pre * s;
    }
    const auto& z = P.z2;
    const long double pre = gamma_q(z.b2 - z.a2, q) * gamma_q(z.b3 - z.a3, q) / ((1 - q) * (1 - q) * gamma_q(z.a1, q));
    const int e = z.b2 + z.b3 - z.a1 - z.a2 - z.a3;
    for (int t = 0; t < 400; ++t) {
        s += gamma_q(t + z.a1, q) * gamma_q(t + z.a2, q) * gamma_q(t + z.a3, q) /
             (gamma_q(t + 1, q) * gamma_q(t + z.b2, q) * gamma_q(t + z.b3, q)) * std::pow(q, static_cast<long double>(e) * t);
    }
    return pre * s;
}

long double zeta_oracle(int k, long p)
{
    const long double q = 1.0L / p;
    long double s = 0;
    for (int nu = 1; nu < 200; ++nu) s += std::pow(static_cast<long double>(nu), k - 1) * std::pow(q, nu) / (1 - std::pow(q, nu));
    return s;
}

void check_against_oracle(const Params& P, long p)
{
    LinearForm f = linform(P, {});
    const long double A = f.A.eval(p).get_d();
    const long double B = f.B.eval(p).get_d();
    const long double z = zeta_oracle(f.kind() == FormKind::Zeta1 ? 1 : 2, p);
    const long double F = series_oracle(P, p);
    CHECK(std::fabs(A * z - B - F) <= 1e-12L * (std::fabs(A * z) + 1));
}

}  // namespace

TEST_CASE("c-vectors")
{
    CVector c = cvector(ParamsZ1{9, 7, 9, 16});
    CHECK(c.values == std::vector<int>{8, 8, 6, 8, 8, 6});
    CHECK(c.m1() == 8);
    CHECK(cvector(ParamsZ1{1, 1, 1, 2}).values == std::vector<int>(6, 0));
    CHECK(cvector(ParamsZ1{1, 1, 1, 2}).m1() == 0);

    CVector d = cvector(ParamsZ2{6, 7, 8, 16, 17});
    CHECK(d.at("00") == 11);
    CHECK(std::vector<int>{d.at("11"), d.at("12"), d.at("13")} == std::vector<int>{5, 9, 10});
    CHECK(std::vector<int>{d.at("21"), d.at("22"), d.at("23")} == std::vector<int>{6, 8, 9});
    CHECK(std::vector<int>{d.at("31"), d.at("32"), d.at("33")} == std::vector<int>{7, 7, 8});
    CHECK(d.m1() == 11);
    CHECK(d.m2() == 10);

    CHECK_THROWS_AS(cvector(ParamsZ1{1, 2, 2, 3}), std::invalid_argument);  // a1 + a2 > b
    CHECK_THROWS_AS(cvector(ParamsZ1{1, 1, 1, 3}), std::invalid_argument);  // c00 < 0
    CHECK(parse_params("9,7,9,16", FormKind::Zeta1) == Params(ParamsZ1{9, 7, 9, 16}));
    CHECK_THROWS(parse_params("9,7,9", FormKind::Zeta1));
}

TEST_CASE("series terms")
{
    auto t = heine_terms(ParamsZ1{1, 1, 1, 2}, 3, 2);
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Rat(2));
    CHECK(t[1] == Rat(2, 3));
    CHECK(t[2] == Rat(2, 7));

    // Positive and eventually geometric at p = 2.
    for (const Params& P : {Params(ParamsZ1{9, 7, 9, 16}), Params(ParamsZ2{6, 7, 8, 16, 17})}) {
        auto u = heine_terms(P, 60, 2);
        for (const auto& x : u) CHECK(sgn(x) > 0);
        CHECK(u[59] / u[58] < Rat(1, 2));
    }
}

TEST_CASE("small forms")
{
    LinearForm f = linform(ParamsZ1{1, 1, 1, 2}, {2});
    CHECK(f.A == RatFunc(PPoly{0, 1}));
    CHECK(f.B.is_zero());
    CHECK(f.M == 1);
    // F = 2 zeta_{1/2}(1) at p = 2.
    CHECK(std::fabs(static_cast<double>(series_oracle(f.params, 2)) - 3.2134) < 1e-4);

    LinearForm g = linform(ParamsZ2{1, 1, 1, 2, 2}, {2});
    CHECK(g.A == RatFunc(PPoly{0, 1}));
    CHECK(g.B.is_zero());

    // Denominators divide a power of p times D_m.
    LinearForm h = linform(ParamsZ1{2, 1, 1, 2}, {2, 3});
    CHECK(h.m1 == 1);
    CHECK(verify_inclusion(h).ok);
    RatFunc cleared = RatFunc::from_factored(h.D()) * h.B;
    CHECK(cleared.is_laurent());

    LinearForm k = linform(ParamsZ2{1, 1, 2, 3, 3}, {2, 3});
    CHECK(verify_inclusion(k).ok);
    CHECK(k.certificates.size() == 2);
}

TEST_CASE("forms agree with the directly summed series")
{
    for (int b = 2; b <= 6; ++b)
        for (int a1 = 1; a1 < b; ++a1)
            for (int a2 = 1; a1 + a2 <= b; ++a2)
                for (int a0 = 1; a0 <= 6; ++a0) {
                    if (a0 + a1 + a2 - b - 1 < 0) continue;
                    check_against_oracle(ParamsZ1{a0, a1, a2, b}, 2);
                    check_against_oracle(ParamsZ1{a0, a1, a2, b}, 3);
                }
    for (int a1 = 1; a1 <= 3; ++a1)
        for (int a2 = 1; a2 <= 3; ++a2)
            for (int a3 = 1; a3 <= 3; ++a3)
                for (int b2 = 4; b2 <= 5; ++b2)
                    for (int b3 = 4; b3 <= 5; ++b3) {
                        ParamsZ2 P{a1, a2, a3, b2, b3};
                        if (!P.admissible()) continue;
                        check_against_oracle(P, 2);
                        check_against_oracle(P, -3);
                    }
}

TEST_CASE("certification on the parameter grid")
{
    int count = 0;
    for (int b = 2; b <= 12; ++b)
        for (int a1 = 1; a1 < b; ++a1)
            for (int a2 = 1; a1 + a2 <= b; ++a2)
                for (int a0 = 1; a0 <= 12; ++a0) {
                    if (a0 + a1 + a2 - b - 1 < 0) continue;
                    LinearForm f = linform(ParamsZ1{a0, a1, a2, b}, {});
                    for (long p : {2L, 3L}) {
                        Certificate c = certify(f, p);
                        CHECK(c.ok);
                    }
                    ++count;
                }
    CHECK(count > 2000);

    LinearForm t1 = linform(ParamsZ1{9, 7, 9, 16}, {2});
    CHECK(t1.certificates[0].residual < Rat(Int(1), Int("1000000000000000000000000000000")));
    LinearForm t2 = linform(ParamsZ2{6, 7, 8, 16, 17}, {2});
    CHECK(t2.certificates[0].residual < Rat(Int(1), Int("1000000000000000000000000000000")));
}

TEST_CASE("M along the BV direction")
{
    std::vector<long> M;
    Family bv = family("bv");
    for (int n = 1; n <= 12; ++n) M.push_back(linform(bv.at(n), {}).M);
    CHECK(M[0] == 5);
    for (std::size_t i = 2; i < M.size(); ++i) CHECK(M[i] - 2 * M[i - 1] + M[i - 2] == 3);
}

TEST_CASE("M is the exact common p-adic valuation")
{
    for (int n = 1; n <= 3; ++n) {
        LinearForm f = linform(family("theorem1").at(n), {});
        CHECK(f.M == std::min(f.A.valuation(), f.B.valuation()));
        // Shifting by one more power of p leaves a negative exponent.
        FactoredPPoly d = f.D();
        d.p_power -= f.M + 1;
        const RatFunc s = RatFunc::from_factored(d);
        CHECK(std::min((s * f.A).valuation(), (s * f.B).valuation()) == -1);
    }
}

TEST_CASE("inclusion with Omega, and the inflated control")
{
    auto run = [](const Family& fam, int n) {
        LinearForm f = linform(fam.at(n), {});
        CHECK(verify_inclusion(f).ok);
        OmegaResult om = omega(cvector(f.params), arithmetic_group(fam.kind));
        CHECK(verify_inclusion(f, &om.omega).ok);
        if (om.degree() == 0) return;
        int top = 0;
        for (const auto& [l, v] : om.nu)
            if (v > 0) top = l;
        FactoredPPoly inflated = om.omega;
        inflated.multiply_phi(top, 1);
        InclusionResult r = verify_inclusion(f, &inflated);
        CHECK_FALSE(r.ok);
        CHECK(r.witness_l == top);
        CHECK_FALSE(r.witness.empty());
    };
    for (int n = 1; n <= 6; ++n) run(family("theorem1"), n);
    for (int n = 1; n <= 3; ++n) run(family("theorem2"), n);
}

TEST_CASE("growth of coefficients and forms")
{
    auto rows = growth_scan(family("bv"), 12, 2);
    REQUIRE(rows.size() == 12);
    CHECK(std::fabs(rows.back().a_exponent - 3) < 0.5);
    CHECK(std::fabs(rows.back().a_exponent - 3) < std::fabs(rows[5].a_exponent - 3));
    // |log F_n| grows at most linearly.
    for (const auto& r : rows) CHECK(std::fabs(r.log_f) <= 5.0 * r.n);

    auto t = growth_scan(family("theorem1"), 5, 2);
    CHECK(std::fabs(t.back().a_exponent - 167.5) < std::fabs(t.front().a_exponent - 167.5));
    CHECK(std::fabs(t.back().a_exponent - 167.5) < 12);
}
