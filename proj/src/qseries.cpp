#include "qzeta/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qzeta {

namespace {

Int ipow(long base, unsigned long e)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::labs(base)), e);
    if (base < 0 && (e & 1)) r = -r;
    return r;
}

Rat rpow(const Rat& x, unsigned long e)
{
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), x.get_den_mpz_t(), e);
    Rat r(n, d);
    r.canonicalize();
    return r;
}

void require_order(std::size_t N)
{
    if (N < 1) throw std::invalid_argument("truncation order must be >= 1");
}

// sigma_{k-1}(n) for n = 0..N-1 (index 0 unused, left zero).
std::vector<Int> sigma_table(int k, std::size_t N)
{
    std::vector<Int> s(N);
    for (std::size_t d = 1; d < N; ++d) {
        Int w = ipow(static_cast<long>(d), static_cast<unsigned long>(k - 1));
        for (std::size_t m = d; m < N; m += d) s[m] += w;
    }
    return s;
}

}  // namespace

QSeries QSeries::truncated(std::size_t order) const
{
    std::vector<Rat> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, c_.size())));
    return QSeries(std::move(v));
}

QSeries& QSeries::operator+=(const QSeries& o)
{
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o)
{
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

QSeries& QSeries::operator*=(const Rat& s)
{
    for (auto& x : c_) x *= s;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b)
{
    const std::size_t N = std::min(a.order(), b.order());
    QSeries r(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; i + j < N; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

ZetaRepresentation parse_representation(const std::string& name)
{
    if (name == "divisor-sum") return ZetaRepresentation::DivisorSum;
    if (name == "lambert") return ZetaRepresentation::Lambert;
    if (name == "rho") return ZetaRepresentation::Rho;
    throw std::invalid_argument("unknown representation '" + name + "'");
}

const char* to_string(ZetaRepresentation r)
{
    switch (r) {
    case ZetaRepresentation::DivisorSum: return "divisor-sum";
    case ZetaRepresentation::Lambert: return "lambert";
    case ZetaRepresentation::Rho: return "rho";
    }
    return "?";
}

Int sigma(int k, long n)
{
    if (k < 1) throw std::invalid_argument("sigma: k must be >= 1");
    if (n < 1) throw std::invalid_argument("sigma: n must be >= 1");
    Int s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += ipow(d, static_cast<unsigned long>(k - 1));
        if (d != n / d) s += ipow(n / d, static_cast<unsigned long>(k - 1));
    }
    return s;
}

QSeries zeta_q_series(int k, std::size_t N, ZetaRepresentation rep)
{
    if (k < 1) throw std::invalid_argument("zeta_q_series: k must be >= 1");
    require_order(N);
    QSeries out(N);
    switch (rep) {
    case ZetaRepresentation::DivisorSum: {
        auto s = sigma_table(k, N);
        for (std::size_t n = 1; n < N; ++n) out[n] = s[n];
        break;
    }
    case ZetaRepresentation::Lambert:
        // nu^(k-1) q^nu / (1 - q^nu) = nu^(k-1) sum_{m>=1} q^(nu m)
        for (std::size_t nu = 1; nu < N; ++nu) {
            Int w = ipow(static_cast<long>(nu), static_cast<unsigned long>(k - 1));
            for (std::size_t e = nu; e < N; e += nu) out[e] += w;
        }
        break;
    case ZetaRepresentation::Rho: {
        const RhoPoly r = rho(k);
        for (std::size_t nu = 1; nu < N; ++nu) {
            // y rho_k(y) / (1-y)^k in powers of y, then y = q^nu.
            const std::size_t top = (N - 1) / nu;
            std::vector<Int> inv(top + 1);
            for (std::size_t m = 0; m <= top; ++m) {
                mpz_bin_uiui(inv[m].get_mpz_t(), static_cast<unsigned long>(m + k - 1), static_cast<unsigned long>(k - 1));
            }
            for (std::size_t s = 1; s <= top; ++s) {
                Int c = 0;
                for (std::size_t i = 0; i < r.coeffs.size() && i + 1 <= s; ++i) c += r.coeffs[i] * inv[s - 1 - i];
                out[s * nu] += c;
            }
        }
        break;
    }
    }
    return out;
}

Int RhoPoly::eval(const Int& x) const
{
    Int r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

Rat RhoPoly::eval(const Rat& x) const
{
    Rat r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + Rat(*it);
    return r;
}

RhoPoly rho(int k)
{
    if (k < 1) throw std::invalid_argument("rho: k must be >= 1");
    std::vector<Int> c{Int(1)};
    for (int j = 1; j < k; ++j) {
        // (1 + (j-1)x) c + x(1-x) c'
        std::vector<Int> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] += c[i] * (j - 1);
            if (i >= 1) {
                Int d = c[i] * static_cast<unsigned long>(i);
                next[i] += d;
                next[i + 1] -= d;
            }
        }
        while (next.size() > 1 && sgn(next.back()) == 0) next.pop_back();
        c = std::move(next);
    }
    return RhoPoly{k, std::move(c)};
}

EvalResult zeta_q_value(int k, long p, long terms)
{
    if (k < 1) throw std::invalid_argument("zeta_q_value: k must be >= 1");
    if (std::labs(p) <= 1) throw std::invalid_argument("zeta_q_value: |p| must be >= 2");
    if (terms < 1) throw std::invalid_argument("zeta_q_value: terms must be >= 1");
    EvalResult r;
    r.terms_used = terms;
    // Third form: q^nu rho_k(q^nu) / (1 - q^nu)^k, summed over nu = 1..T.
    const RhoPoly r_k = rho(k);
    Rat q(1, p);
    q.canonicalize();
    Rat qn = 1;
    for (long nu = 1; nu <= terms; ++nu) {
        qn *= q;
        r.value += qn * r_k.eval(qn) / rpow(Rat(1 - qn), static_cast<unsigned long>(k));
    }
    // With x = |q| and y = x^(T+1), every omitted term is at most
    // x^nu rho_k(y) / (1 - y)^k, so the tail is below
    // rho_k(y) / (1 - y)^k * y / (1 - x). Expanding rho_k(y)/(1-y)^k as
    // sum m^(k-1) y^(m-1) shows this never exceeds
    // sum_{nu>T} nu^(k-1) x^nu / (1 - x).
    const Rat x(1, std::labs(p));
    const Rat y = rpow(x, static_cast<unsigned long>(terms + 1));
    r.tail_bound = r_k.eval(y) / rpow(Rat(1 - y), static_cast<unsigned long>(k)) * y / (1 - x);
    return r;
}

EvalResult zeta_q_enclosure(int k, const Rat& q, const Rat& tolerance)
{
    if (k < 1) throw std::invalid_argument("zeta_q_enclosure: k must be >= 1");
    const Rat aq = abs(q);
    if (!(aq < 1) || sgn(q) == 0) throw std::invalid_argument("zeta_q_enclosure: need 0 < |q| < 1");
    if (sgn(tolerance) <= 0) throw std::invalid_argument("zeta_q_enclosure: tolerance must be positive");
    // sigma_{k-1}(n) <= n^k, and for n > N the ratio of consecutive n^k |q|^n
    // is at most ((N+2)/(N+1))^k |q| =: r, so the tail is below
    // (N+1)^k |q|^(N+1) / (1 - r) once r < 1.
    auto tail = [&](long N) -> Rat {
        Rat r = rpow(Rat(N + 2, N + 1), static_cast<unsigned long>(k)) * aq;
        if (!(r < 1)) return Rat(-1);
        return Rat(ipow(N + 1, static_cast<unsigned long>(k))) * rpow(aq, static_cast<unsigned long>(N + 1)) / (1 - r);
    };
    long N = 16;
    Rat tb;
    for (;; N *= 2) {
        tb = tail(N);
        if (sgn(tb) >= 0 && tb <= tolerance) break;
    }
    // Shrink back towards the smallest adequate N.
    for (long lo = N / 2, hi = N; hi - lo > 1;) {
        long mid = (lo + hi) / 2;
        Rat t = tail(mid);
        if (sgn(t) >= 0 && t <= tolerance) {
            hi = mid;
            N = mid;
            tb = t;
        } else {
            lo = mid;
        }
    }
    auto s = sigma_table(k, static_cast<std::size_t>(N) + 1);
    // sum_{n=1}^N s_n a^n b^(N-n) / b^N by Horner from the top.
    const Int& a = q.get_num();
    const Int& b = q.get_den();
    Int acc = s[static_cast<std::size_t>(N)], bp = 1;
    for (long n = N - 1; n >= 1; --n) {
        bp *= b;
        acc = acc * a + s[static_cast<std::size_t>(n)] * bp;
    }
    acc *= a;
    bp *= b;
    EvalResult r;
    r.value = Rat(acc, bp);
    r.value.canonicalize();
    r.tail_bound = tb;
    r.terms_used = N;
    return r;
}

std::vector<EvalResult> limit_check(int k, const std::vector<Rat>& qs)
{
    if (k < 2) throw std::invalid_argument("limit_check: k must be >= 2");
    std::vector<EvalResult> out;
    for (const auto& q : qs) {
        if (!(sgn(q) > 0 && q < 1)) throw std::invalid_argument("limit_check: q must lie in (0, 1)");
        Rat scale = rpow(Rat(1 - q), static_cast<unsigned long>(k));
        EvalResult z = zeta_q_enclosure(k, q, Rat(Int(1), Int("1000000000000")) / scale);
        z.value *= scale;
        z.tail_bound *= scale;
        out.push_back(std::move(z));
    }
    return out;
}

double zeta_reference(int k)
{
    if (k < 2) throw std::invalid_argument("zeta_reference: k must be >= 2");
    const long N = 100000;
    long double s = 0;
    for (long n = N; n >= 1; --n) s += std::pow(static_cast<long double>(n), -static_cast<long double>(k));
    // sum_{n>N} n^-k lies between the integrals from N+1 and from N; take
    // the midpoint.
    long double lo = std::pow(static_cast<long double>(N + 1), 1.0L - k) / (k - 1);
    long double hi = std::pow(static_cast<long double>(N), 1.0L - k) / (k - 1);
    return static_cast<double>(s + (lo + hi) / 2);
}

QSeries log2_q_series_alternating(std::size_t N)
{
    require_order(N);
    QSeries out(N);
    for (std::size_t nu = 1; nu < N; ++nu) {
        int sign = nu % 2 == 1 ? 1 : -1;
        for (std::size_t e = nu; e < N; e += nu) out[e] += sign;
    }
    return out;
}

QSeries log2_q_series_plus(std::size_t N)
{
    require_order(N);
    QSeries out(N);
    // q^nu / (1 + q^nu) = sum_{m>=1} (-1)^(m-1) q^(nu m)
    for (std::size_t nu = 1; nu < N; ++nu) {
        for (std::size_t m = 1; m * nu < N; ++m) out[m * nu] += m % 2 == 1 ? 1 : -1;
    }
    return out;
}

QSeries log2_q_series(std::size_t N)
{
    QSeries a = log2_q_series_alternating(N);
    if (!(a == log2_q_series_plus(N))) throw std::logic_error("log_q(2): the two Lambert forms disagree");
    return a;
}

JacobiSides jacobi_sides(std::size_t N)
{
    require_order(N);
    QSeries lhs(N);
    lhs[0] = 1;
    // 4 (-1)^nu q^(2nu+1) / (1 - q^(2nu+1))
    for (std::size_t nu = 0; 2 * nu + 1 < N; ++nu) {
        const std::size_t d = 2 * nu + 1;
        int sign = nu % 2 == 0 ? 4 : -4;
        for (std::size_t e = d; e < N; e += d) lhs[e] += sign;
    }
    QSeries theta(N);
    theta[0] = 1;
    for (std::size_t n = 1; n * n < N; ++n) theta[n * n] += 2;
    return {std::move(lhs), theta * theta};
}

bool jacobi_check(std::size_t N)
{
    auto s = jacobi_sides(N);
    return s.lambert == s.theta_squared;
}

}  // namespace qzeta
