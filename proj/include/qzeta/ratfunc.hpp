#ifndef QZETA_RATFUNC_HPP
#define QZETA_RATFUNC_HPP

#include <map>
#include <string>
#include <vector>

#include "qzeta/parith.hpp"
#include "qzeta/ppoly.hpp"

namespace qzeta {

/// Element of Q(p) whose denominator is a product of a power of p and
/// cyclotomic polynomials, which covers every coefficient produced from
/// q-Pochhammer data at q = 1/p.
///
/// Stored as  core * p^shift / prod_l Phi_l(p)^e_l  with core(0) != 0 and
/// no Phi_l with e_l > 0 dividing core, so numerator and denominator are
/// coprime. The p-adic valuation is exactly `shift` because every Phi_l is
/// a unit at p = 0.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(const PPoly& poly);  // NOLINT: polynomials embed implicitly
    explicit RatFunc(long c) : RatFunc(PPoly{c}) {}

    static RatFunc from_parts(PPoly core, int shift, std::map<int, int> den);
    static RatFunc from_factored(const FactoredPPoly& f);
    /// q^k / (1 - q^k) at q = 1/p for k != 0.
    static RatFunc lambert_term(int k);
    /// q^k / (1 - q^k)^2 at q = 1/p for k >= 1.
    static RatFunc lambert_square_term(int k);
    /// 1 / (1 - q^k) at q = 1/p for k >= 1.
    static RatFunc inverse_one_minus_q_power(int k);

    bool is_zero() const { return core_.is_zero(); }
    /// No denominator beyond a power of p.
    bool is_laurent() const { return den_.empty(); }
    int valuation() const { return shift_; }
    const PPoly& core() const { return core_; }
    const std::map<int, int>& den_exponents() const { return den_; }
    int den_exponent(int l) const;

    PPoly numerator() const;
    PPoly denominator() const;
    Rat eval(const Rat& p) const;
    /// Exact value at an integer p (|p| >= 2 keeps every Phi_l nonzero).
    Rat eval(long p) const { return eval(Rat(p)); }

    /// Signed multiplicity of Phi_l: ord in the numerator minus e_l.
    int ord_phi(int l) const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    std::string to_string() const;

private:
    friend class RatFuncSum;
    void normalize();

    PPoly core_;
    int shift_ = 0;
    std::map<int, int> den_;
};

/// Accumulates many RatFunc terms over one common denominator and reduces
/// once at the end, avoiding a cancellation pass per addition.
class RatFuncSum {
public:
    void add(RatFunc term);
    /// Adds poly * term without reducing the product first.
    void add_product(const RatFunc& a, const RatFunc& b);
    RatFunc result() const;
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<RatFunc> terms_;
};

}  // namespace qzeta

#endif  // QZETA_RATFUNC_HPP
