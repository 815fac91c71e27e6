#include "qzeta/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace qzeta {

namespace {

PPoly cyclotomic_power_product(const std::map<int, int>& exps)
{
    std::vector<PPoly> fs;
    for (const auto& [l, e] : exps) {
        for (int i = 0; i < e; ++i) fs.push_back(cyclotomic(l));
    }
    return product(std::move(fs));
}

Rat rat_pow(const Rat& x, long e)
{
    Rat r = 1, b = e >= 0 ? x : Rat(1 / x);
    for (unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e); k; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

}  // namespace

RatFunc::RatFunc(const PPoly& poly) : core_(poly) { normalize(); }

RatFunc RatFunc::from_parts(PPoly core, int shift, std::map<int, int> den)
{
    RatFunc r;
    r.core_ = std::move(core);
    r.shift_ = shift;
    for (const auto& [l, e] : den) {
        if (e < 0) throw std::invalid_argument("RatFunc: negative denominator exponent");
        if (e > 0) r.den_[l] = e;
    }
    r.normalize();
    return r;
}

RatFunc RatFunc::from_factored(const FactoredPPoly& f)
{
    std::map<int, int> num, den;
    for (const auto& [l, e] : f.exponents) (e > 0 ? num[l] : den[l]) = std::abs(e);
    PPoly core = cyclotomic_power_product(num);
    if (f.unit < 0) core = -core;
    return from_parts(std::move(core), f.p_power, std::move(den));
}

RatFunc RatFunc::lambert_term(int k)
{
    if (k == 0) throw std::invalid_argument("lambert_term: k must be nonzero");
    if (k > 0) return from_factored(FactoredPPoly::one() / FactoredPPoly::binomial(k));
    // q^k/(1-q^k) = p^|k| / (1 - p^|k|)
    FactoredPPoly f = FactoredPPoly::one() / FactoredPPoly::binomial(-k);
    f.p_power = -k;
    f.unit = -1;
    return from_factored(f);
}

RatFunc RatFunc::lambert_square_term(int k)
{
    if (k < 1) throw std::invalid_argument("lambert_square_term: k must be >= 1");
    FactoredPPoly b = FactoredPPoly::binomial(k);
    FactoredPPoly f = FactoredPPoly::one() / (b * b);
    f.p_power = k;
    return from_factored(f);
}

RatFunc RatFunc::inverse_one_minus_q_power(int k)
{
    if (k < 1) throw std::invalid_argument("inverse_one_minus_q_power: k must be >= 1");
    FactoredPPoly f = FactoredPPoly::one() / FactoredPPoly::binomial(k);
    f.p_power = k;
    return from_factored(f);
}

void RatFunc::normalize()
{
    if (core_.is_zero()) {
        shift_ = 0;
        den_.clear();
        return;
    }
    std::size_t v = core_.valuation();
    if (v > 0) {
        core_ = core_.without_p_content();
        shift_ += static_cast<int>(v);
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = divide_by_cyclotomic(core_, it->first);
            if (!q) break;
            core_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

int RatFunc::den_exponent(int l) const
{
    auto it = den_.find(l);
    return it == den_.end() ? 0 : it->second;
}

PPoly RatFunc::numerator() const
{
    return shift_ > 0 ? core_.shifted(static_cast<std::size_t>(shift_)) : core_;
}

PPoly RatFunc::denominator() const
{
    PPoly d = cyclotomic_power_product(den_);
    return shift_ < 0 ? d.shifted(static_cast<std::size_t>(-shift_)) : d;
}

Rat RatFunc::eval(const Rat& p) const
{
    if (is_zero()) return Rat(0);
    Rat r = core_.eval(p) * rat_pow(p, shift_);
    const bool integral = p.get_den() == 1;
    for (const auto& [l, e] : den_) {
        Rat d = integral ? Rat(cyclotomic_value(l, p.get_num())) : cyclotomic(l).eval(p);
        if (sgn(d) == 0) throw std::domain_error("RatFunc::eval: pole");
        r /= rat_pow(d, e);
    }
    return r;
}

int RatFunc::ord_phi(int l) const
{
    if (is_zero()) throw std::domain_error("ord_phi of zero");
    int e = den_exponent(l);
    if (e > 0) return -e;
    return ord_cyclotomic(core_, l);
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.core_ = -r.core_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFuncSum s;
    s.add(a);
    s.add(b);
    return s.result();
}

RatFunc operator*(const RatFunc& a, const RatFunc& b)
{
    if (a.is_zero() || b.is_zero()) return RatFunc();
    RatFunc r;
    r.core_ = a.core_ * b.core_;
    r.shift_ = a.shift_ + b.shift_;
    r.den_ = a.den_;
    for (const auto& [l, e] : b.den_) r.den_[l] += e;
    r.normalize();
    return r;
}

bool operator==(const RatFunc& a, const RatFunc& b)
{
    return a.core_ == b.core_ && a.shift_ == b.shift_ && a.den_ == b.den_;
}

std::string RatFunc::to_string() const
{
    if (is_zero()) return "0";
    std::string num = "(" + numerator().to_string() + ")";
    if (den_.empty() && shift_ >= 0) return num;
    return num + " / (" + denominator().to_string() + ")";
}

void RatFuncSum::add(RatFunc term)
{
    if (!term.is_zero()) terms_.push_back(std::move(term));
}

void RatFuncSum::add_product(const RatFunc& a, const RatFunc& b)
{
    if (a.is_zero() || b.is_zero()) return;
    RatFunc r;
    r.core_ = a.core_ * b.core_;
    r.shift_ = a.shift_ + b.shift_;
    r.den_ = a.den_;
    for (const auto& [l, e] : b.den_) r.den_[l] += e;
    terms_.push_back(std::move(r));
}

RatFunc RatFuncSum::result() const
{
    if (terms_.empty()) return RatFunc();
    int s = terms_.front().shift_;
    std::map<int, int> E;
    for (const auto& t : terms_) {
        s = std::min(s, t.shift_);
        for (const auto& [l, e] : t.den_) E[l] = std::max(E[l], e);
    }
    // Terms sharing a denominator share their cofactor.
    std::map<std::map<int, int>, PPoly> grouped;
    for (const auto& t : terms_) {
        grouped[t.den_] += t.core_.shifted(static_cast<std::size_t>(t.shift_ - s));
    }
    PPoly total;
    for (const auto& [den, num] : grouped) {
        if (num.is_zero()) continue;
        std::map<int, int> missing;
        for (const auto& [l, e] : E) {
            auto it = den.find(l);
            int have = it == den.end() ? 0 : it->second;
            if (e > have) missing[l] = e - have;
        }
        total += missing.empty() ? num : num * cyclotomic_power_product(missing);
    }
    return RatFunc::from_parts(std::move(total), s, std::move(E));
}

}  // namespace qzeta
