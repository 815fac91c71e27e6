#ifndef QZETA_PPOLY_HPP
#define QZETA_PPOLY_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qzeta {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense polynomial in the variable p with arbitrary-precision integer
/// coefficients, stored in ascending powers. Trailing zeros are always
/// stripped, so the zero polynomial has an empty coefficient vector.
class PPoly {
public:
    PPoly() = default;
    explicit PPoly(std::vector<Int> coeffs);
    PPoly(std::initializer_list<long> coeffs);

    static PPoly constant(const Int& c);
    static PPoly monomial(const Int& c, std::size_t k);
    /// p^k - 1
    static PPoly binomial(std::size_t k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    /// Coefficient of p^i, zero beyond the degree.
    Int coeff(std::size_t i) const;
    const Int& leading() const { return c_.back(); }

    /// Index of the lowest nonzero coefficient (p-adic valuation). Zero
    /// polynomial returns 0.
    std::size_t valuation() const;
    /// Divides out p^valuation().
    PPoly without_p_content() const;
    /// Multiplies by p^k.
    PPoly shifted(std::size_t k) const;
    /// Coefficients reversed within degree+1 slots.
    PPoly reversed() const;
    PPoly derivative() const;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    Int content() const;
    PPoly primitive_part() const;
    bool is_palindromic() const;

    PPoly operator-() const;
    PPoly& operator+=(const PPoly& o);
    PPoly& operator-=(const PPoly& o);
    PPoly& operator*=(const Int& s);
    friend PPoly operator+(PPoly a, const PPoly& b) { return a += b; }
    friend PPoly operator-(PPoly a, const PPoly& b) { return a -= b; }
    friend PPoly operator*(const PPoly& a, const PPoly& b);
    friend PPoly operator*(PPoly a, const Int& s) { return a *= s; }
    friend bool operator==(const PPoly& a, const PPoly& b) { return a.c_ == b.c_; }

    /// Multiplies by (p^k - 1) in O(size).
    PPoly times_binomial(std::size_t k) const;
    /// Division by (p^k - 1): quotient and remainder with deg r < k.
    std::pair<PPoly, PPoly> divmod_binomial(std::size_t k) const;

    /// Long division by a divisor whose leading coefficient is a unit.
    std::pair<PPoly, PPoly> divmod_monic(const PPoly& d) const;
    /// Exact division over Z; throws std::domain_error when d does not
    /// divide *this with integral quotient.
    PPoly exact_div(const PPoly& d) const;

    std::string to_string(const char* var = "p") const;

private:
    void trim();
    std::vector<Int> c_;
};

/// Greatest common divisor in Z[p], normalized to positive leading
/// coefficient (primitive PRS).
PPoly gcd(const PPoly& a, const PPoly& b);

/// Product of many polynomials via a balanced product tree.
PPoly product(std::vector<PPoly> factors);

}  // namespace qzeta

#endif  // QZETA_PPOLY_HPP
