#include "qzeta/ppoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qzeta {

namespace {

// Below this length schoolbook multiplication beats packing.
constexpr std::size_t kKroneckerThreshold = 24;

std::size_t max_bits(const std::vector<Int>& v)
{
    std::size_t b = 0;
    for (const auto& x : v) {
        if (sgn(x) != 0) b = std::max(b, mpz_sizeinbase(x.get_mpz_t(), 2));
    }
    return b;
}

std::vector<Int> schoolbook(const std::vector<Int>& a, const std::vector<Int>& b)
{
    std::vector<Int> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return r;
}

// Evaluates the polynomial at 2^(64*slot) with signed coefficients.
Int pack(const std::vector<Int>& a, std::size_t slot)
{
    std::vector<mp_limb_t> pos(a.size() * slot, 0), neg(a.size() * slot, 0);
    bool any_neg = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int s = sgn(a[i]);
        if (s == 0) continue;
        auto* dst = (s > 0 ? pos.data() : neg.data()) + i * slot;
        std::size_t count = 0;
        mpz_export(dst, &count, -1, sizeof(mp_limb_t), 0, 0, a[i].get_mpz_t());
        any_neg |= s < 0;
    }
    Int P, N;
    mpz_import(P.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
    if (!any_neg) return P;
    mpz_import(N.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
    return P - N;
}

std::vector<Int> unpack(const Int& w, std::size_t n, std::size_t slot)
{
    std::vector<Int> out(n);
    int s = sgn(w);
    if (s == 0) return out;
    Int mag = abs(w);
    std::vector<mp_limb_t> limbs(n * slot + 2, 0);
    std::size_t count = 0;
    mpz_export(limbs.data(), &count, -1, sizeof(mp_limb_t), 0, 0, mag.get_mpz_t());
    Int half;
    mpz_setbit(half.get_mpz_t(), slot * GMP_NUMB_BITS - 1);
    Int full = half * 2;
    int carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Int u;
        mpz_import(u.get_mpz_t(), slot, -1, sizeof(mp_limb_t), 0, 0, limbs.data() + i * slot);
        u += carry;
        if (u >= half) {
            u -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        out[i] = s > 0 ? u : Int(-u);
    }
    return out;
}

std::vector<Int> kronecker(const std::vector<Int>& a, const std::vector<Int>& b)
{
    // |c_k| <= min(na, nb) * max|a| * max|b|, plus one sign bit of headroom.
    std::size_t n = std::min(a.size(), b.size());
    std::size_t bits = max_bits(a) + max_bits(b) + 2;
    for (; n > 1; n = (n + 1) / 2) ++bits;
    std::size_t slot = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    Int w = pack(a, slot) * pack(b, slot);
    return unpack(w, a.size() + b.size() - 1, slot);
}

// Pseudo-remainder of a by b (lc(b)^(deg a - deg b + 1) * a mod b).
PPoly prem(PPoly a, const PPoly& b)
{
    const int db = b.degree();
    const Int& lb = b.leading();
    std::vector<Int> r = a.coeffs();
    int dr = a.degree();
    int steps = dr - db + 1;
    while (dr >= db && dr >= 0) {
        Int lr = r[dr];
        for (auto& x : r) x *= lb;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= lr * b.coeffs()[i];
        --steps;
        r.pop_back();
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    PPoly out(std::move(r));
    if (steps > 0) {
        Int f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
        out *= f;
    }
    return out;
}

}  // namespace

PPoly::PPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

PPoly::PPoly(std::initializer_list<long> coeffs)
{
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

PPoly PPoly::constant(const Int& c) { return PPoly(std::vector<Int>{c}); }

PPoly PPoly::monomial(const Int& c, std::size_t k)
{
    std::vector<Int> v(k + 1);
    v[k] = c;
    return PPoly(std::move(v));
}

PPoly PPoly::binomial(std::size_t k)
{
    if (k == 0) return PPoly();
    std::vector<Int> v(k + 1);
    v[0] = -1;
    v[k] = 1;
    return PPoly(std::move(v));
}

void PPoly::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Int PPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }

std::size_t PPoly::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) != 0) return i;
    }
    return 0;
}

PPoly PPoly::without_p_content() const
{
    std::size_t v = valuation();
    if (v == 0) return *this;
    return PPoly(std::vector<Int>(c_.begin() + static_cast<std::ptrdiff_t>(v), c_.end()));
}

PPoly PPoly::shifted(std::size_t k) const
{
    if (is_zero() || k == 0) return *this;
    std::vector<Int> v(k);
    v.insert(v.end(), c_.begin(), c_.end());
    return PPoly(std::move(v));
}

PPoly PPoly::reversed() const
{
    std::vector<Int> v(c_.rbegin(), c_.rend());
    return PPoly(std::move(v));
}

PPoly PPoly::derivative() const
{
    if (c_.size() <= 1) return PPoly();
    std::vector<Int> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return PPoly(std::move(v));
}

Int PPoly::eval(const Int& x) const
{
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Rat PPoly::eval(const Rat& x) const
{
    // Horner over a common denominator: sum c_i num^i den^(d-i) / den^d.
    if (c_.empty()) return Rat(0);
    const Int& num = x.get_num();
    const Int& den = x.get_den();
    Int r = 0, dpow = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * num + *it * dpow;
        dpow *= den;
    }
    dpow /= den;
    Rat out(r, dpow);
    out.canonicalize();
    return out;
}

Int PPoly::content() const
{
    Int g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

PPoly PPoly::primitive_part() const
{
    if (is_zero()) return *this;
    Int g = content();
    if (sgn(leading()) < 0) g = -g;
    std::vector<Int> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return PPoly(std::move(v));
}

bool PPoly::is_palindromic() const
{
    for (std::size_t i = 0, j = c_.size(); i < j--; ++i) {
        if (c_[i] != c_[j]) return false;
    }
    return true;
}

PPoly PPoly::operator-() const
{
    PPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

PPoly& PPoly::operator+=(const PPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

PPoly& PPoly::operator-=(const PPoly& o)
{
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

PPoly& PPoly::operator*=(const Int& s)
{
    if (sgn(s) == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
}

PPoly operator*(const PPoly& a, const PPoly& b)
{
    if (a.is_zero() || b.is_zero()) return PPoly();
    if (std::min(a.size(), b.size()) < kKroneckerThreshold) return PPoly(schoolbook(a.c_, b.c_));
    return PPoly(kronecker(a.c_, b.c_));
}

PPoly PPoly::times_binomial(std::size_t k) const
{
    if (is_zero() || k == 0) return PPoly();
    std::vector<Int> v(c_.size() + k);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v[i] -= c_[i];
        v[i + k] += c_[i];
    }
    return PPoly(std::move(v));
}

std::pair<PPoly, PPoly> PPoly::divmod_binomial(std::size_t k) const
{
    if (k == 0) throw std::domain_error("division by p^0 - 1");
    if (c_.size() <= k) return {PPoly(), *this};
    std::vector<Int> w = c_;
    std::vector<Int> q(c_.size() - k);
    for (std::size_t i = w.size(); i-- > k;) {
        if (sgn(w[i]) == 0) continue;
        q[i - k] = w[i];
        w[i - k] += w[i];
        w[i] = 0;
    }
    w.resize(k);
    return {PPoly(std::move(q)), PPoly(std::move(w))};
}

std::pair<PPoly, PPoly> PPoly::divmod_monic(const PPoly& d) const
{
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    const Int& ld = d.leading();
    if (ld != 1 && ld != -1) throw std::domain_error("divmod_monic: leading coefficient is not a unit");
    if (degree() < d.degree()) return {PPoly(), *this};
    std::vector<Int> w = c_;
    const std::size_t dd = static_cast<std::size_t>(d.degree());
    std::vector<Int> q(w.size() - dd);
    for (std::size_t i = w.size(); i-- > dd;) {
        if (sgn(w[i]) == 0) continue;
        Int f = ld == 1 ? w[i] : Int(-w[i]);
        q[i - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) {
            mpz_submul(w[i - dd + j].get_mpz_t(), f.get_mpz_t(), d.c_[j].get_mpz_t());
        }
    }
    w.resize(dd);
    return {PPoly(std::move(q)), PPoly(std::move(w))};
}

PPoly PPoly::exact_div(const PPoly& d) const
{
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return PPoly();
    if (degree() < d.degree()) throw std::domain_error("exact_div: divisor does not divide");
    const Int& ld = d.leading();
    std::vector<Int> w = c_;
    const std::size_t dd = static_cast<std::size_t>(d.degree());
    std::vector<Int> q(w.size() - dd);
    for (std::size_t i = w.size(); i-- > dd;) {
        if (sgn(w[i]) == 0) continue;
        if (!mpz_divisible_p(w[i].get_mpz_t(), ld.get_mpz_t())) throw std::domain_error("exact_div: non-integral quotient");
        Int f;
        mpz_divexact(f.get_mpz_t(), w[i].get_mpz_t(), ld.get_mpz_t());
        q[i - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) {
            mpz_submul(w[i - dd + j].get_mpz_t(), f.get_mpz_t(), d.c_[j].get_mpz_t());
        }
    }
    for (std::size_t i = 0; i < dd; ++i) {
        if (sgn(w[i]) != 0) throw std::domain_error("exact_div: divisor does not divide");
    }
    return PPoly(std::move(q));
}

std::string PPoly::to_string(const char* var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Int& c = c_[i];
        if (sgn(c) == 0) continue;
        Int a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

PPoly gcd(const PPoly& a, const PPoly& b)
{
    if (a.is_zero()) return b.is_zero() ? PPoly() : b.primitive_part() * b.content();
    if (b.is_zero()) return a.primitive_part() * a.content();
    Int ca = a.content(), cb = b.content(), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    PPoly x = a.primitive_part(), y = b.primitive_part();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        PPoly r = prem(x, y);
        x = std::move(y);
        y = r.is_zero() ? PPoly() : r.primitive_part();
    }
    return x.primitive_part() * cg;
}

PPoly product(std::vector<PPoly> factors)
{
    if (factors.empty()) return PPoly{1};
    while (factors.size() > 1) {
        std::vector<PPoly> next;
        next.reserve((factors.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < factors.size(); i += 2) next.push_back(factors[i] * factors[i + 1]);
        if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
        factors = std::move(next);
    }
    return std::move(factors.front());
}

}  // namespace qzeta
