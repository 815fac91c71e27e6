#include "qzeta/parith.hpp"

#include <cfloat>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace qzeta {

namespace {

PPoly compute_cyclotomic(int l)
{
    // Phi_l = prod_{d | l} (p^d - 1)^mu(l/d): multiply the mu = +1 binomials,
    // then divide exactly by the mu = -1 ones.
    PPoly num{1};
    std::vector<int> den;
    for (int d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 1) num = num.times_binomial(static_cast<std::size_t>(d));
        if (mu == -1) den.push_back(d);
    }
    for (int d : den) {
        auto [q, r] = num.divmod_binomial(static_cast<std::size_t>(d));
        if (!r.is_zero()) throw std::logic_error("cyclotomic: inexact division");
        num = std::move(q);
    }
    return num;
}

}  // namespace

FactoredPPoly FactoredPPoly::binomial(int k)
{
    if (k < 1) throw std::invalid_argument("FactoredPPoly::binomial: k must be >= 1");
    FactoredPPoly f;
    for (int d : divisors(k)) f.multiply_phi(d, 1);
    return f;
}

void FactoredPPoly::multiply_phi(int l, int e)
{
    if (l < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    if (e == 0) return;
    int& x = exponents[l];
    x += e;
    if (x == 0) exponents.erase(l);
}

int FactoredPPoly::exponent(int l) const
{
    auto it = exponents.find(l);
    return it == exponents.end() ? 0 : it->second;
}

FactoredPPoly& FactoredPPoly::operator*=(const FactoredPPoly& o)
{
    for (const auto& [l, e] : o.exponents) multiply_phi(l, e);
    p_power += o.p_power;
    unit *= o.unit;
    return *this;
}

FactoredPPoly& FactoredPPoly::operator/=(const FactoredPPoly& o)
{
    for (const auto& [l, e] : o.exponents) multiply_phi(l, -e);
    p_power -= o.p_power;
    unit *= o.unit;
    return *this;
}

bool FactoredPPoly::is_polynomial() const
{
    if (p_power < 0) return false;
    for (const auto& [l, e] : exponents) {
        if (e < 0) return false;
    }
    return true;
}

long FactoredPPoly::degree() const
{
    long d = p_power;
    for (const auto& [l, e] : exponents) d += static_cast<long>(e) * euler_phi(l);
    return d;
}

PPoly FactoredPPoly::expand_cyclotomic(bool denominator) const
{
    std::vector<PPoly> fs;
    for (const auto& [l, e] : exponents) {
        int k = denominator ? -e : e;
        for (int i = 0; i < k; ++i) fs.push_back(cyclotomic(l));
    }
    return product(std::move(fs));
}

PPoly FactoredPPoly::expand() const
{
    if (!is_polynomial()) throw std::domain_error("FactoredPPoly::expand: negative exponent");
    PPoly r = expand_cyclotomic(false).shifted(static_cast<std::size_t>(p_power));
    if (unit < 0) r = -r;
    return r;
}

const PPoly& CyclotomicCache::get(int l)
{
    if (l < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    {
        std::shared_lock lock(mu_);
        auto it = phi_.find(l);
        if (it != phi_.end()) return *it->second;
    }
    auto value = std::make_unique<PPoly>(compute_cyclotomic(l));
    std::unique_lock lock(mu_);
    auto [it, inserted] = phi_.try_emplace(l, std::move(value));
    return *it->second;
}

const PPoly& CyclotomicCache::cofactor(int l)
{
    {
        std::shared_lock lock(mu_);
        auto it = cof_.find(l);
        if (it != cof_.end()) return *it->second;
    }
    std::vector<PPoly> fs;
    for (int d : divisors(l)) {
        if (d < l) fs.push_back(get(d));
    }
    auto value = std::make_unique<PPoly>(product(std::move(fs)));
    std::unique_lock lock(mu_);
    auto [it, inserted] = cof_.try_emplace(l, std::move(value));
    return *it->second;
}

void CyclotomicCache::insert(int l, const PPoly& phi)
{
    PPoly fresh = compute_cyclotomic(l);
    if (!(fresh == phi)) throw std::runtime_error("cyclotomic cache entry " + std::to_string(l) + " is corrupt");
    std::unique_lock lock(mu_);
    phi_.try_emplace(l, std::make_unique<PPoly>(std::move(fresh)));
}

std::vector<std::pair<int, PPoly>> CyclotomicCache::snapshot() const
{
    std::shared_lock lock(mu_);
    std::vector<std::pair<int, PPoly>> out;
    out.reserve(phi_.size());
    for (const auto& [l, v] : phi_) out.emplace_back(l, *v);
    return out;
}

std::size_t CyclotomicCache::size() const
{
    std::shared_lock lock(mu_);
    return phi_.size();
}

void CyclotomicCache::clear()
{
    std::unique_lock lock(mu_);
    phi_.clear();
    cof_.clear();
}

CyclotomicCache& cyclotomic_cache()
{
    static CyclotomicCache cache;
    return cache;
}

int moebius(int n)
{
    if (n < 1) throw std::invalid_argument("moebius: n must be >= 1");
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

int euler_phi(int n)
{
    int r = n;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        r -= r / d;
    }
    if (n > 1) r -= r / n;
    return r;
}

std::vector<int> divisors(int n)
{
    std::vector<int> lo, hi;
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

PPoly gauss_number(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_number: n must be >= 1");
    return PPoly(std::vector<Int>(static_cast<std::size_t>(n), Int(1)));
}

PPoly gauss_factorial(int n)
{
    if (n < 0) throw std::invalid_argument("gauss_factorial: n must be >= 0");
    std::vector<PPoly> fs;
    for (int k = 2; k <= n; ++k) fs.push_back(gauss_number(k));
    return product(std::move(fs));
}

const PPoly& cyclotomic(int l) { return cyclotomic_cache().get(l); }

Int cyclotomic_value(int l, const Int& p)
{
    if (l < 1) throw std::invalid_argument("cyclotomic index must be >= 1");
    Int num = 1, den = 1;
    for (int d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        Int t;
        mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
        t -= 1;
        (mu == 1 ? num : den) *= t;
    }
    if (sgn(den) == 0) throw std::domain_error("cyclotomic_value: p is a root of unity");
    Int out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

FactoredPPoly gauss_factorial_factored(int n)
{
    FactoredPPoly f;
    for (int l = 2; l <= n; ++l) f.multiply_phi(l, n / l);
    return f;
}

FactoredPPoly dnp(int n)
{
    if (n < 0) throw std::invalid_argument("dnp: n must be >= 0");
    FactoredPPoly f;
    for (int l = 1; l <= n; ++l) f.multiply_phi(l, 1);
    return f;
}

PPoly gauss_lcm(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_lcm: n must be >= 1");
    PPoly L{1};
    for (int k = 1; k <= n; ++k) {
        PPoly g = gauss_number(k);
        PPoly d = gcd(L, g);
        L = L * g.exact_div(d);
    }
    return L;
}

std::optional<PPoly> divide_by_cyclotomic(const PPoly& N, int l)
{
    if (N.is_zero()) return PPoly();
    const PPoly& phi = cyclotomic(l);
    // Phi_l | p^l - 1, so N mod Phi_l is the small remainder of N mod (p^l - 1)
    // reduced once more.
    auto [q, r] = N.divmod_binomial(static_cast<std::size_t>(l));
    if (!r.is_zero() && !r.divmod_monic(phi).second.is_zero()) return std::nullopt;
    auto [quot, rem] = (N * cyclotomic_cache().cofactor(l)).divmod_binomial(static_cast<std::size_t>(l));
    if (!rem.is_zero()) throw std::logic_error("divide_by_cyclotomic: inconsistent remainder");
    return quot;
}

int ord_cyclotomic(PPoly N, int l)
{
    if (N.is_zero()) throw std::domain_error("ord_cyclotomic: zero polynomial");
    int k = 0;
    while (auto q = divide_by_cyclotomic(N, l)) {
        N = std::move(*q);
        ++k;
    }
    return k;
}

int ord_phi_factorial(int l, int n)
{
    if (l <= 1) throw std::invalid_argument("ord_phi_factorial: l must be >= 2");
    if (n < 0) throw std::invalid_argument("ord_phi_factorial: n must be >= 0");
    return n / l;
}

int ord_phi_factorial_by_division(int l, int n)
{
    if (l <= 1) throw std::invalid_argument("ord_phi_factorial: l must be >= 2");
    return ord_cyclotomic(gauss_factorial(n), l);
}

double mertens_ratio(int n, long p)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("mertens_ratio: |p| must be >= 2");
    if (n < 1) throw std::invalid_argument("mertens_ratio: n must be >= 1");
    Int P(p), D = 1;
    for (int l = 1; l <= n; ++l) D *= cyclotomic_value(l, P);
    D = abs(D);
    long e = 0;
    double m = mpz_get_d_2exp(&e, D.get_mpz_t());
    double logD = std::log(m) + static_cast<double>(e) * std::log(2.0);
    return logD / (static_cast<double>(n) * n * std::log(std::fabs(static_cast<double>(p))));
}

long double trigamma_value(long double x)
{
    if (!(x > 0)) throw std::invalid_argument("trigamma: x must be > 0");
    long double acc = 0;
    while (x < 10) {
        acc += 1 / (x * x);
        x += 1;
    }
    // Bernoulli numbers B_2 .. B_18.
    static constexpr long double B[] = {1.0L / 6,      -1.0L / 30,    1.0L / 42,   -1.0L / 30,
                                        5.0L / 66,     -691.0L / 2730, 7.0L / 6,   -3617.0L / 510,
                                        43867.0L / 798};
    long double inv = 1 / x, inv2 = inv * inv, pw = inv * inv2, s = 0;
    for (long double b : B) {
        s += b * pw;
        pw *= inv2;
    }
    return acc + inv + inv2 / 2 + s;
}

Trigamma trigamma(const Rat& x)
{
    if (sgn(x) <= 0) throw std::invalid_argument("trigamma: x must be > 0");
    long double xd;
    if (mpz_sizeinbase(x.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(x.get_den_mpz_t(), 2) <= 53) {
        xd = static_cast<long double>(x.get_num().get_d()) / static_cast<long double>(x.get_den().get_d());
    } else {
        xd = x.get_d();
    }
    Trigamma t;
    t.x = x;
    t.value = trigamma_value(xd);
    // One rounding per recurrence step and per series term, each bounded by
    // an ulp of the running total; series truncation is below 1e-19 at y >= 10.
    long double steps = xd < 10 ? std::ceil(10 - xd) : 0;
    t.abs_err = (steps + 12) * LDBL_EPSILON * t.value + 1e-19L;
    return t;
}

BlockSum phi_block_sum(int n, long p, const Rat& u, const Rat& v)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("phi_block_sum: |p| must be >= 2");
    if (n < 2) throw std::invalid_argument("phi_block_sum: n must be >= 2");
    if (!(sgn(u) > 0 && u < v && v <= 1)) throw std::invalid_argument("phi_block_sum: need 0 < u < v <= 1");
    // {n/l} < u forces l > n/u once l > n, so l <= n/u bounds the search.
    Rat top = Rat(n) / u;
    long lmax = static_cast<long>(mpz_class(top.get_num() / top.get_den()).get_si());
    Int P(p);
    double sum = 0;
    BlockSum out;
    for (long l = 1; l <= lmax; ++l) {
        Rat frac(n % l, l);
        frac.canonicalize();
        if (frac < u || frac >= v) continue;
        Int val = abs(cyclotomic_value(static_cast<int>(l), P));
        long e = 0;
        double m = mpz_get_d_2exp(&e, val.get_mpz_t());
        sum += std::log(m) + static_cast<double>(e) * std::log(2.0);
        ++out.terms;
    }
    out.lhs = sum / (static_cast<double>(n) * n * std::log(std::fabs(static_cast<double>(p))));
    long double tv = v == 1 ? kPi * kPi / 6 : trigamma(v).value;
    out.rhs = static_cast<double>(kMertens * (trigamma(u).value - tv));
    return out;
}

}  // namespace qzeta
