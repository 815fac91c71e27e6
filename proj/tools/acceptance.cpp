// Runs the fifteen acceptance criteria and prints one line per criterion.
// Usage: qzeta_acceptance [--known-red 10,11] [--only 3,5]
// Exit status is 0 when every criterion passes, or when every failing one is
// listed in --known-red (the failures are still printed as FAIL).

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "qzeta/groups.hpp"
#include "qzeta/measures.hpp"
#include "qzeta/qseries.hpp"

using namespace qzeta;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x, int prec = 10)
{
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

Outcome c1()
{
    for (int k = 1; k <= 12; ++k) {
        Int f = 1;
        for (int i = 2; i < k; ++i) f *= i;
        if (rho(k).eval(Int(1)) != f) return {false, "k=" + std::to_string(k)};
    }
    return {true, "k = 1..12"};
}

Outcome c2()
{
    for (int k = 1; k <= 8; ++k) {
        const QSeries d = zeta_q_series(k, 200, ZetaRepresentation::DivisorSum);
        if (!(d == zeta_q_series(k, 200, ZetaRepresentation::Lambert)) || !(d == zeta_q_series(k, 200, ZetaRepresentation::Rho)))
            return {false, "k=" + std::to_string(k)};
    }
    return {true, "k = 1..8, order 200"};
}

Outcome c3()
{
    int pairs = 0;
    for (int n = 2; n <= 60; ++n)
        for (int l = 2; l <= n; ++l) {
            const int a = ord_phi_factorial(l, n);
            if (a != n / l || ord_phi_factorial_by_division(l, n) != a)
                return {false, "l=" + std::to_string(l) + " n=" + std::to_string(n)};
            ++pairs;
        }
    return {true, std::to_string(pairs) + " pairs"};
}

Outcome c4()
{
    // lcm of p^nu - 1 through polynomial gcds, and Phi_1 times lcm([nu]_p).
    PPoly L{1};
    for (int n = 1; n <= 40; ++n) {
        const PPoly b = PPoly::binomial(static_cast<std::size_t>(n));
        L = (L * b).exact_div(gcd(L, b));
        if (L.leading() < 0) L = -L;
        const PPoly d = dnp(n).expand();
        if (!(d == L) || !(d == cyclotomic(1) * gauss_lcm(n))) return {false, "n=" + std::to_string(n)};
    }
    return {true, "n <= 40"};
}

Outcome c5() { return {jacobi_check(500), "order 500"}; }

Outcome c6()
{
    const auto a = group_tau_sigma().order(), b = group_tau2_sigma().order(), c = group_zeta2().order();
    return {a == 12 && b == 6 && c == 120, std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c)};
}

Outcome c7()
{
    struct Case {
        const char* fam;
        int n;
    };
    int checked = 0;
    double worst = 0;
    for (const Case cs : {Case{"theorem1", 1}, Case{"theorem1", 2}, Case{"theorem2", 1}}) {
        const Family f = family(cs.fam);
        for (const auto& g : full_group(f.kind).elements) {
            const StabilityResult s = stability_check(f.at(cs.n), g, 2);
            if (!s.admissible) continue;
            ++checked;
            worst = std::max(worst, s.width);
            if (!s.ok || !(s.width < 1e-20))
                return {false, std::string(cs.fam) + " n=" + std::to_string(cs.n) + " " + g.to_cycles()};
        }
    }
    return {true, std::to_string(checked) + " admissible elements, max width " + num(worst, 3)};
}

Outcome c8()
{
    auto one = [](const char* fam, int n) {
        const Family f = family(fam);
        const LinearForm lf = linform(f.at(n), {2});
        const OmegaResult om = omega(cvector(lf.params), arithmetic_group(f.kind));
        return verify_inclusion(lf, &om.omega);
    };
    for (int n = 1; n <= 6; ++n)
        if (auto r = one("theorem1", n); !r.ok) return {false, "theorem1 n=" + std::to_string(n) + " " + r.witness};
    for (int n = 1; n <= 3; ++n)
        if (auto r = one("theorem2", n); !r.ok) return {false, "theorem2 n=" + std::to_string(n) + " " + r.witness};
    return {true, "theorem1 n <= 6, theorem2 n <= 3"};
}

Outcome c9()
{
    const MeasurePipeline m = measure_family(family("bv"), 12);
    const double ref = 2 * M_PI * M_PI / (M_PI * M_PI - 2);
    const bool ok = m.fit.coeff == Rat(3, 2) && std::fabs(m.report.mu_bound - ref) < 1e-8;
    return {ok, "M_coeff " + m.fit.coeff.get_str() + ", mu " + num(m.report.mu_bound, 12)};
}

Outcome measure_vs(const char* fam, int n_max, double ref)
{
    const MeasurePipeline m = measure_family(family(fam), n_max);
    const double implied = m.report.alpha.get_d() / ref + m.report.d_exp - m.report.omega_exp;
    return {std::fabs(m.report.mu_bound - ref) < 1e-6,
            "mu " + num(m.report.mu_bound, 10) + " vs " + num(ref, 10) + " (alpha " + m.report.alpha.get_str() + ", M_coeff " +
                m.fit.coeff.get_str() + ", d " + num(m.report.d_exp, 8) + ", omega " + num(m.report.omega_exp, 8) +
                "; the reference needs M_coeff " + num(implied, 8) + ")"};
}

Outcome c10() { return measure_vs("theorem1", 8, 2.42343562); }
Outcome c11() { return measure_vs("theorem2", 6, 4.07869374); }

Outcome c12()
{
    const BlockSum a = phi_block_sum(500, 2, Rat(1, 2), Rat(1));
    const BlockSum b = phi_block_sum(500, 2, Rat(1, 3), Rat(1, 2));
    const double rb = 3 / (M_PI * M_PI) * (static_cast<double>(trigamma(Rat(1, 3)).value) - static_cast<double>(trigamma(Rat(1, 2)).value));
    const bool ok = std::fabs(a.lhs - 1) <= 0.1 && std::fabs(b.lhs - rb) <= 0.1 * rb;
    return {ok, "[1/2,1): " + num(a.lhs, 5) + " vs 1, [1/3,1/2): " + num(b.lhs, 5) + " vs " + num(rb, 5)};
}

Outcome c13()
{
    const double m = mertens_ratio(300, 2);
    return {std::fabs(m - 3 / (M_PI * M_PI)) < 0.05, num(m, 6) + " vs " + num(3 / (M_PI * M_PI), 6)};
}

Outcome c14()
{
    // Apery numbers from binomials in machine integers.
    auto binom = [](long n, long k) {
        long r = 1;
        for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    const auto rows = apery_limit_check(3);
    std::string got;
    for (const auto& r : rows) {
        long a = 0;
        for (long k = 0; k <= r.n; ++k) a += binom(r.n, k) * binom(r.n, k) * binom(r.n + k, k);
        got += (got.empty() ? "" : ", ") + Rat(abs(r.normalized)).get_str();
        if (!r.ok || abs(r.normalized) != Rat(a)) return {false, "n=" + std::to_string(r.n) + " " + r.normalized.get_str()};
    }
    return {true, got};
}

Outcome c15()
{
    const double ref = 2 * M_PI * M_PI / (M_PI * M_PI - 2);
    const auto rows = empirical_mu(family("bv"), 2, 25);
    bool decreasing = true;
    std::string tail;
    for (std::size_t i = rows.size() - 5; i < rows.size(); ++i) {
        tail += (tail.empty() ? "" : " ") + num(rows[i].estimate, 5);
        if (i > rows.size() - 5 && !(rows[i].estimate < rows[i - 1].estimate)) decreasing = false;
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < rows.size(); ++i) shrinking = shrinking && rows[i].log_form < rows[i - 1].log_form;
    const bool close = std::fabs(rows.back().estimate - ref) < 0.2;
    return {close && decreasing && shrinking,
            std::string("within 0.2: ") + (close ? "yes" : "no") + ", decreasing over last five: " + (decreasing ? "yes" : "no") +
                ", |form| decreasing: " + (shrinking ? "yes" : "no") + "; last five " + tail};
}

std::set<int> parse_list(const char* s)
{
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> known_red, only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--known-red") && i + 1 < argc)
            known_red = parse_list(argv[++i]);
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = parse_list(argv[++i]);
        else {
            std::cerr << "usage: qzeta_acceptance [--known-red LIST] [--only LIST]\n";
            return 2;
        }
    }
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"rho_k(1) = (k-1)!", c1},
        {"three zeta_q representations agree", c2},
        {"ord of Phi_l in [n]_p! is floor(n/l)", c3},
        {"D_n(p) equals the gcd-based lcm", c4},
        {"Jacobi two-squares identity", c5},
        {"group orders 12, 6, 120", c6},
        {"stability under admissible group elements", c7},
        {"inclusions with Omega", c8},
        {"BV measure 2pi^2/(pi^2-2) with M_coeff 3/2", c9},
        {"(8,6,8;15) measure 2.42343562", c10},
        {"(5,6,7;14,15) measure 4.07869374", c11},
        {"cyclotomic block density at n = 500", c12},
        {"Mertens ratio at n = 300", c13},
        {"q -> 1 limits are Apery numbers", c14},
        {"empirical BV exponent", c15},
    };
    int failed = 0, unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (id < 10 ? " " : "") << id << "  " << criteria[i].first << ": " << o.detail
                  << " [" << num(secs, 3) << " s]" << std::endl;
        if (!o.pass) {
            ++failed;
            if (!known_red.count(id)) ++unexpected;
        }
    }
    std::cout << "failed: " << failed << ", unexpected: " << unexpected << std::endl;
    return unexpected == 0 ? 0 : 1;
}
