#include "qzeta/measures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "qzeta/qseries.hpp"

namespace qzeta {

namespace {

std::vector<int> factorial_positions(FormKind kind)
{
    CVector probe;
    probe.kind = kind;
    std::vector<int> pos;
    for (const auto& s : factorial_labels(kind)) pos.push_back(probe.index(s));
    return pos;
}

Int floor_rat(const Rat& x)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

double log_abs(const Rat& x)
{
    if (sgn(x) == 0) throw std::domain_error("log of zero");
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
    return std::log(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log(2.0);
}

Rat pow2(long e)
{
    Int one = 1;
    if (e >= 0) return Rat(one << static_cast<mp_bitcnt_t>(e));
    return Rat(one, one << static_cast<mp_bitcnt_t>(-e));
}

}  // namespace

Direction direction(const Family& fam)
{
    return {fam.kind, fam.eta(), cvector_unchecked(fam.at(0)).values};
}

int NuProfile::at(const Rat& x) const
{
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (x == breakpoints[i]) return point_values[i];
        if (x > breakpoints[i] && x < breakpoints[i + 1]) return values[i];
    }
    throw std::out_of_range("NuProfile::at: x outside [0, 1)");
}

NuProfile nu_profile(const Direction& dir, const Group& G)
{
    std::set<Rat> bp{Rat(0), Rat(1)};
    for (int e : dir.eta) {
        for (int k = 1; k < e; ++k) {
            Rat r(k, e);
            r.canonicalize();
            bp.insert(r);
        }
    }
    const auto S = factorial_positions(dir.kind);
    std::vector<int> off = dir.offset;
    if (off.empty()) off.assign(dir.eta.size(), 0);
    if (off.size() != dir.eta.size()) throw std::invalid_argument("nu_profile: offset size mismatch");
    std::vector<Perm> elems = G.elements;

    // floor(eta_j x), lowered by one at integer points when the offset is negative
    auto fl = [&](int e, int o, const Rat& x, bool at_point) {
        Rat y = e * x;
        Int f = floor_rat(y);
        if (at_point && o < 0 && y.get_den() == 1) f -= 1;
        return f;
    };
    auto phi = [&](const Rat& x, bool at_point) {
        int best = 0;
        bool first = true;
        for (const auto& g : elems) {
            const auto ge = g.apply(dir.eta);
            const auto go = g.apply(off);
            Int s = 0;
            for (int j : S) {
                const auto u = static_cast<std::size_t>(j);
                s += fl(dir.eta[u], off[u], x, at_point) - fl(ge[u], go[u], x, at_point);
            }
            int v = static_cast<int>(s.get_si());
            if (first || v > best) best = v;
            first = false;
        }
        return best;
    };
    NuProfile prof;
    prof.breakpoints.assign(bp.begin(), bp.end());
    for (std::size_t i = 0; i + 1 < prof.breakpoints.size(); ++i) {
        prof.values.push_back(phi((prof.breakpoints[i] + prof.breakpoints[i + 1]) / 2, false));
        prof.point_values.push_back(phi(prof.breakpoints[i], true));
    }
    return prof;
}

double omega_exponent(const NuProfile& profile)
{
    long double sum = 0;
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const int v = profile.values[i];
        if (v == 0) continue;
        const Rat& u = profile.breakpoints[i];
        const Rat& w = profile.breakpoints[i + 1];
        if (sgn(u) == 0) throw std::domain_error("omega_exponent: profile nonzero next to 0");
        sum += v * (trigamma(u).value - trigamma(w).value);
    }
    return static_cast<double>(kMertens * sum);
}

Rat alpha_exponent(const Family& fam)
{
    const auto& s = fam.slope;
    if (fam.kind == FormKind::Zeta1) {
        // (a0 + a1 + a2) b - (a1^2 + a2^2 + b^2) / 2
        Rat r(2 * (s[0] + s[1] + s[2]) * s[3] - (s[1] * s[1] + s[2] * s[2] + s[3] * s[3]), 2);
        r.canonicalize();
        return r;
    }
    // b2 b3 - (a1^2 + a2^2 + a3^2) / 2
    Rat r(2 * s[3] * s[4] - (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]), 2);
    r.canonicalize();
    return r;
}

double d_exponent(const Direction& dir)
{
    std::vector<int> e = dir.eta;
    std::sort(e.rbegin(), e.rend());
    long double sq = static_cast<long double>(e[0]) * e[0];
    if (dir.kind == FormKind::Zeta2) sq += static_cast<long double>(e[1]) * e[1];
    return static_cast<double>(kMertens * sq);
}

MFit fit_M_coeff(const std::vector<long>& M)
{
    MFit fit;
    fit.M = M;
    for (std::size_t i = 0; i < M.size(); ++i) fit.n.push_back(static_cast<int>(i) + 1);
    if (M.size() < 3) throw std::invalid_argument("fit_M_coeff: need at least three values");
    for (std::size_t i = 0; i + 2 < M.size(); ++i) fit.second_differences.push_back(M[i + 2] - 2 * M[i + 1] + M[i]);

    // Try periods r = 1..4: within each residue class the step-r second
    // difference must be constant on the tail, and all classes must agree
    // on d / (2 r^2).
    for (int r = 1; r <= 4; ++r) {
        bool ok = true;
        std::optional<Rat> coeff;
        for (int cls = 0; cls < r && ok; ++cls) {
            std::vector<long> sub;
            for (std::size_t i = static_cast<std::size_t>(cls); i < M.size(); i += static_cast<std::size_t>(r)) sub.push_back(M[i]);
            if (sub.size() < 4) {
                ok = false;
                break;
            }
            std::vector<long> d2;
            for (std::size_t i = 0; i + 2 < sub.size(); ++i) d2.push_back(sub[i + 2] - 2 * sub[i + 1] + sub[i]);
            // Tail: the last two second differences (three for r = 1).
            std::size_t tail = r == 1 ? std::min<std::size_t>(3, d2.size()) : 2;
            for (std::size_t i = d2.size() - tail; i + 1 < d2.size(); ++i)
                if (d2[i] != d2.back()) ok = false;
            Rat c(d2.back(), 2L * r * r);
            c.canonicalize();
            if (coeff && *coeff != c) ok = false;
            coeff = c;
        }
        if (ok && coeff) {
            fit.coeff = *coeff;
            fit.period = r;
            fit.stabilized = true;
            break;
        }
    }
    if (!fit.stabilized) {
        double avg = 0;
        std::size_t cnt = std::min<std::size_t>(3, fit.second_differences.size());
        for (std::size_t i = fit.second_differences.size() - cnt; i < fit.second_differences.size(); ++i) avg += fit.second_differences[i];
        avg /= static_cast<double>(cnt);
        fit.coeff = Rat(avg / 2);
        fit.warning = "second differences did not stabilize; tail average used";
    }
    // Residuals against coeff n^2 + b n + a, with b, a from a least-squares
    // fit of M(n) - coeff n^2.
    const double c = fit.coeff.get_d();
    double sn = 0, sy = 0, snn = 0, sny = 0;
    const double k = static_cast<double>(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
        double n = static_cast<double>(i + 1), y = static_cast<double>(M[i]) - c * n * n;
        sn += n;
        sy += y;
        snn += n * n;
        sny += n * y;
    }
    const double b = (k * sny - sn * sy) / (k * snn - sn * sn);
    const double a = (sy - b * sn) / k;
    for (std::size_t i = 0; i < M.size(); ++i) {
        double n = static_cast<double>(i + 1);
        fit.residuals.push_back(static_cast<double>(M[i]) - (c * n * n + b * n + a));
    }
    return fit;
}

MFit fit_M_coeff(const Family& fam, int n_max)
{
    if (n_max < 6) throw std::invalid_argument("fit_M_coeff: n_max must be >= 6");
    std::vector<long> M;
    for (int n = 1; n <= n_max; ++n) M.push_back(linform(fam.at(n), {}).M);
    return fit_M_coeff(M);
}

MeasureReport mu_bound(const Rat& alpha, double d_exp, double omega_exp, const Rat& M_coeff)
{
    MeasureReport r;
    r.alpha = alpha;
    r.d_exp = d_exp;
    r.omega_exp = omega_exp;
    r.M_coeff = M_coeff;
    r.lambda = -M_coeff.get_d() + d_exp - omega_exp;
    r.kappa = r.lambda + alpha.get_d();
    if (!(r.lambda < 0)) throw std::domain_error("no irrationality conclusion for this family (lambda >= 0)");
    r.mu_bound = -alpha.get_d() / r.lambda;
    return r;
}

MeasurePipeline measure_family(const Family& fam, int n_max)
{
    MeasurePipeline m;
    m.fam = fam;
    m.dir = direction(fam);
    m.profile = nu_profile(m.dir, arithmetic_group(fam.kind));
    m.fit = fit_M_coeff(fam, n_max);
    m.report = mu_bound(alpha_exponent(fam), d_exponent(m.dir), omega_exponent(m.profile), m.fit.coeff);
    return m;
}

std::vector<EmpiricalRow> empirical_mu(const Family& fam, long p, int n_max, int n_min)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("empirical_mu: |p| must be >= 2");
    std::vector<EmpiricalRow> rows;
    Rat q(1, p);
    q.canonicalize();
    const int k = fam.kind == FormKind::Zeta1 ? 1 : 2;
    for (int n = n_min; n <= n_max; ++n) {
        LinearForm f = linform(fam.at(n), {});
        CVector c = cvector(f.params);
        OmegaResult om = omega(c, arithmetic_group(c.kind));
        FactoredPPoly delta = f.D() / om.omega;
        delta.p_power -= f.M;
        RatFunc dl = RatFunc::from_factored(delta);
        const Rat a = (dl * f.A).eval(p);
        const Rat b = f.B.is_zero() ? Rat(0) : (dl * f.B).eval(p);
        if (a.get_den() != 1 || b.get_den() != 1) throw std::logic_error("cleared coefficients are not integers");
        if (sgn(a) == 0) throw std::logic_error("cleared coefficient vanishes");
        // Size of the form from the series itself, to choose the zeta precision.
        Rat F = 0;
        for (const auto& t : heine_terms(f.params, 64, p)) F += t;
        const Rat dF = abs(dl.eval(p) * F);
        const double log2_dF = log_abs(dF) / std::log(2.0);
        const double log2_a = log_abs(a) / std::log(2.0);
        Rat tol = pow2(static_cast<long>(std::floor(log2_dF - log2_a)) - 64);
        EvalResult z = zeta_q_enclosure(k, q, tol);
        Rat form = a * z.value - b;
        Rat err = abs(a) * z.tail_bound;
        if (!(abs(form) > 2 * err)) throw std::logic_error("linear form not resolved from zero");
        EmpiricalRow r;
        r.n = n;
        r.log_a = log_abs(a);
        r.log_form = log_abs(form);
        r.estimate = 1 + r.log_a / (-r.log_form);
        rows.push_back(r);
    }
    // Delta F must be heading to 0 over the range.
    if (rows.size() >= 2 && !(rows.back().log_form < 0 && rows.back().log_form < rows.front().log_form)) {
        throw std::runtime_error("empirical_mu: cleared forms do not tend to 0 for family " + fam.name);
    }
    return rows;
}

Int apery_number(int n)
{
    if (n < 0) throw std::invalid_argument("apery_number: n must be >= 0");
    Int s = 0;
    for (int k = 0; k <= n; ++k) {
        Int c1, c2;
        mpz_bin_uiui(c1.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        mpz_bin_uiui(c2.get_mpz_t(), static_cast<unsigned long>(n + k), static_cast<unsigned long>(k));
        s += c1 * c1 * c2;
    }
    return s;
}

std::vector<AperyRow> apery_limit_check(int n_max)
{
    if (n_max > 4) throw std::invalid_argument("apery_limit_check: n <= 4");
    std::vector<AperyRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        LinearForm f = linform(ParamsZ2{n + 1, n + 1, n + 1, 2 * n + 2, 2 * n + 2}, {});
        AperyRow r;
        r.n = n;
        r.apery = apery_number(n);
        // Strip (p - 1) from the numerator, count it, evaluate at p = 1.
        PPoly core = f.A.core();
        while (auto d = divide_by_cyclotomic(core, 1)) {
            core = std::move(*d);
            ++r.phi1_order;
        }
        r.phi1_order -= f.A.den_exponent(1);
        Rat v = Rat(core.eval(Int(1)));
        for (const auto& [l, e] : f.A.den_exponents()) {
            if (l == 1) continue;
            const Rat phi1 = Rat(cyclotomic_value(l, Int(1)));
            for (int i = 0; i < std::abs(e); ++i) v = e > 0 ? Rat(v / phi1) : Rat(v * phi1);
        }
        r.normalized = v;
        rows.push_back(r);
    }
    // Normalization constant fixed at n = 1, then held: |value| = A_n c^n.
    Rat c = 1;
    if (rows.size() > 1) c = abs(rows[1].normalized) / Rat(rows[1].apery);
    Rat cn = 1;
    for (auto& r : rows) {
        r.ok = sgn(r.normalized) != 0 && abs(r.normalized) == Rat(r.apery) * cn;
        cn *= c;
    }
    return rows;
}

}  // namespace qzeta
