#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>

#include "doctest.h"
#include "qzeta/measures.hpp"

using namespace qzeta;

namespace {

const double kPiD = 3.14159265358979323846;

// nu_l from the profile, read at {n/l}.
int profile_at(const NuProfile& prof, int n, int l)
{
    Rat x(n % l, l);
    x.canonicalize();
    return prof.at(x);
}

// True when some label's offset moves c_j / l across an integer that
// eta_j n / l does not reach: the finite-n floors then differ from the
// profile's limit values.
bool offset_crossing(const Direction& dir, const Group& G, int n, int l)
{
    for (const auto& g : G.elements) {
        const auto e = g.apply(dir.eta);
        const auto o = g.apply(dir.offset);
        for (std::size_t j = 0; j < e.size(); ++j) {
            const long base = static_cast<long>(e[j]) * n;
            const long exact = (base + o[j]) >= 0 ? (base + o[j]) / l : -1;
            const long limit = base / l - ((o[j] < 0 && base % l == 0) ? 1 : 0);
            if (exact != limit) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("profiles")
{
    const Family bv = family("bv");
    NuProfile z = nu_profile(direction(bv), arithmetic_group(FormKind::Zeta1));
    for (int v : z.values) CHECK(v == 0);
    CHECK(omega_exponent(z) == 0);

    NuProfile half;
    half.breakpoints = {Rat(0), Rat(1, 2), Rat(1)};
    half.values = {0, 1};
    half.point_values = {0, 1};
    CHECK(omega_exponent(half) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(half.at(Rat(1, 2)) == 1);
    CHECK(half.at(Rat(1, 3)) == 0);
    CHECK_THROWS(half.at(Rat(1)));
}

TEST_CASE("profile against exact nu_l")
{
    struct Case {
        const char* name;
        int n;
    };
    for (const Case cs : {Case{"theorem1", 60}, Case{"theorem2", 40}}) {
        const Family fam = family(cs.name);
        const Group& G = arithmetic_group(fam.kind);
        const Direction dir = direction(fam);
        const NuProfile prof = nu_profile(dir, G);
        const CVector c = cvector(fam.at(cs.n));
        int crossings = 0;
        for (int l = 10; l <= c.m1(); ++l) {
            if (offset_crossing(dir, G, cs.n, l)) {
                ++crossings;
                continue;
            }
            CHECK_MESSAGE(profile_at(prof, cs.n, l) == nu_l(c, G, l), cs.name << " l=" << l);
        }
        CHECK(crossings <= 2);
    }
}

TEST_CASE("omega exponent matches the growth of the exact Omega")
{
    for (const char* name : {"theorem1", "theorem2"}) {
        const Family fam = family(name);
        const Group& G = arithmetic_group(fam.kind);
        const double w = omega_exponent(nu_profile(direction(fam), G));
        const int n = 300;
        const double deg = static_cast<double>(omega(cvector(fam.at(n)), G).degree()) / (double(n) * n);
        CHECK_MESSAGE(std::fabs(deg - w) < 0.1, name << " " << deg << " vs " << w);
    }
}

TEST_CASE("omega exponent against an independent trigamma")
{
    const Family fam = family("theorem1");
    const NuProfile prof = nu_profile(direction(fam), arithmetic_group(fam.kind));
    double oracle = 0;
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        if (prof.values[i] == 0) continue;
        oracle += prof.values[i] * (boost::math::trigamma(prof.breakpoints[i].get_d()) -
                                    boost::math::trigamma(prof.breakpoints[i + 1].get_d()));
    }
    oracle *= 3 / (kPiD * kPiD);
    CHECK(omega_exponent(prof) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(oracle > 0);
}

TEST_CASE("alpha and d exponents")
{
    CHECK(alpha_exponent(family("theorem1")) == Rat(335, 2));
    CHECK(alpha_exponent(family("bv")) == Rat(3));
    CHECK(alpha_exponent(family("theorem2")) == Rat(155));

    const double k = 3 / (kPiD * kPiD);
    CHECK(d_exponent(direction(family("bv"))) == doctest::Approx(k).epsilon(1e-14));
    CHECK(d_exponent(direction(family("theorem1"))) == doctest::Approx(81 * k).epsilon(1e-14));
    CHECK(d_exponent(direction(family("theorem2"))) == doctest::Approx((121 + 100) * k).epsilon(1e-14));
}

TEST_CASE("mu bound formula")
{
    const double k = 3 / (kPiD * kPiD);
    MeasureReport bv = mu_bound(Rat(3), k, 0, Rat(3, 2));
    CHECK(std::fabs(bv.mu_bound - 2 * kPiD * kPiD / (kPiD * kPiD - 2)) < 1e-8);
    CHECK(std::fabs(bv.mu_bound - 2.50828476) < 1e-8);
    CHECK(bv.lambda == doctest::Approx(-1.5 + k));
    CHECK(bv.kappa == doctest::Approx(bv.lambda + 3));

    // Scaling the direction by t multiplies every exponent by t^2.
    for (int t : {2, 3, 7}) {
        MeasureReport s = mu_bound(Rat(3 * t * t), k * t * t, 0.25 * t * t, Rat(3 * t * t, 2));
        MeasureReport u = mu_bound(Rat(3), k, 0.25, Rat(3, 2));
        CHECK(s.mu_bound == doctest::Approx(u.mu_bound).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mu_bound(Rat(3), 2.0, 0, Rat(3, 2)), std::domain_error);
}

TEST_CASE("fitting the M coefficient")
{
    MFit bv = fit_M_coeff(family("bv"), 12);
    CHECK(bv.stabilized);
    CHECK(bv.coeff == Rat(3, 2));
    CHECK(bv.period == 1);
    for (double r : bv.residuals) CHECK(std::fabs(r) < 1);

    MFit flat = fit_M_coeff(std::vector<long>(8, 4));
    CHECK(flat.coeff == Rat(0));
    CHECK(flat.stabilized);

    // n^2 + (n mod 2): second differences alternate, classes agree on 1.
    std::vector<long> alt;
    for (long n = 1; n <= 12; ++n) alt.push_back(n * n + n % 2);
    MFit a = fit_M_coeff(alt);
    CHECK(a.stabilized);
    CHECK(a.period == 2);
    CHECK(a.coeff == Rat(1));

    std::vector<long> drift;
    for (long n = 1; n <= 8; ++n) drift.push_back(n * n * n);
    MFit d = fit_M_coeff(drift);
    CHECK_FALSE(d.stabilized);
    CHECK_FALSE(d.warning.empty());

    CHECK_THROWS(fit_M_coeff(family("bv"), 5));

    MFit t1 = fit_M_coeff(family("theorem1"), 6);
    CHECK(t1.stabilized);
    CHECK(t1.coeff == Rat(80));
    CHECK(t1.M.front() == 98);
}

TEST_CASE("measure pipeline")
{
    MeasurePipeline bv = measure_family(family("bv"), 12);
    CHECK(std::fabs(bv.report.mu_bound - 2.50828476) < 1e-8);
    CHECK(bv.report.omega_exp == 0);

    // Ingredients for the (8,6,8;15) direction, each cross-checked above.
    MeasurePipeline t1 = measure_family(family("theorem1"), 6);
    CHECK(t1.report.alpha == Rat(335, 2));
    CHECK(t1.report.M_coeff == Rat(80));
    CHECK(t1.report.lambda < 0);
    CHECK(t1.report.mu_bound ==
          doctest::Approx(167.5 / (80 - t1.report.d_exp + t1.report.omega_exp)).epsilon(1e-12));
    CHECK(t1.report.mu_bound > 2);
    CHECK(t1.report.mu_bound < 3);
}

TEST_CASE("empirical exponents")
{
    auto rows = empirical_mu(family("bv"), 2, 25);
    REQUIRE(rows.size() == 25);
    CHECK(rows.front().estimate > 1);
    CHECK(std::fabs(rows.back().estimate - 2.50828476) < 0.2);
    double early = 0, late = 0;
    for (int i = 0; i < 5; ++i) {
        early += rows[static_cast<std::size_t>(i)].estimate;
        late += rows[rows.size() - 1 - static_cast<std::size_t>(i)].estimate;
    }
    CHECK(late > early);
    for (const auto& r : rows) CHECK(r.log_form < 0);

    auto t1 = empirical_mu(family("theorem1"), 2, 4);
    CHECK(t1.back().estimate < 3.0);
    CHECK(t1.front().estimate > 1);

    auto neg = empirical_mu(family("bv"), -3, 6);
    CHECK(neg.back().estimate > 1);
    CHECK_THROWS(empirical_mu(family("bv"), 1, 3));
}

TEST_CASE("q -> 1 limit of the zeta_q(2) coefficients")
{
    CHECK(apery_number(0) == 1);
    CHECK(apery_number(1) == 3);
    CHECK(apery_number(2) == 19);
    CHECK(apery_number(3) == 147);
    CHECK(apery_number(4) == 1251);

    auto rows = apery_limit_check(4);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(abs(r.normalized) == Rat(r.apery));
    }
    CHECK(rows[0].normalized == Rat(1));
    CHECK_THROWS(apery_limit_check(5));
}
