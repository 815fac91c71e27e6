#ifndef QZETA_QSERIES_HPP
#define QZETA_QSERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qzeta/ppoly.hpp"

namespace qzeta {

/// Power series in q truncated at `order`: coefficient i is valid for
/// i < order. Binary operations keep the smaller truncation order.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(std::size_t order) : c_(order) {}
    explicit QSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {}

    std::size_t order() const { return c_.size(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }

    QSeries truncated(std::size_t order) const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const Rat& s);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Rat> c_;
};

enum class ZetaRepresentation { DivisorSum, Lambert, Rho };

ZetaRepresentation parse_representation(const std::string& name);
const char* to_string(ZetaRepresentation r);

/// sigma_{k-1}(n) = sum of d^(k-1) over divisors d of n.
Int sigma(int k, long n);

/// q-zeta value zeta_q(k) expanded to order N in the chosen form. All sums
/// start at 1.
QSeries zeta_q_series(int k, std::size_t N, ZetaRepresentation rep);

/// rho_k(x) in ascending powers of x, from rho_1 = 1 and
/// rho_{k+1} = (1 + (k-1)x) rho_k + x(1 - x) rho_k'.
struct RhoPoly {
    int k = 1;
    std::vector<Int> coeffs;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

RhoPoly rho(int k);

struct EvalResult {
    Rat value;
    Rat tail_bound;
    long terms_used = 0;

    double lower() const { return Rat(value - tail_bound).get_d(); }
    double upper() const { return Rat(value + tail_bound).get_d(); }
};

/// Partial sum over nu = 1..terms of q^nu rho_k(q^nu) / (1 - q^nu)^k at
/// q = 1/p (for k = 1 the plain Lambert sum), with an exact tail bound.
EvalResult zeta_q_value(int k, long p, long terms);

/// zeta_q(k) at rational |q| < 1 through the divisor-sum power series, with
/// terms added until the certified tail is at most `tolerance`.
EvalResult zeta_q_enclosure(int k, const Rat& q, const Rat& tolerance);

/// (1 - q)^k zeta_q(k) for each q in (0, 1), certified.
std::vector<EvalResult> limit_check(int k, const std::vector<Rat>& qs);

/// Riemann zeta(k), k >= 2, by direct summation with integral-test tail.
double zeta_reference(int k);

/// log_q(2) from the alternating Lambert series; throws std::logic_error
/// if the sum q^nu / (1 + q^nu) form disagrees.
QSeries log2_q_series(std::size_t N);
QSeries log2_q_series_alternating(std::size_t N);
QSeries log2_q_series_plus(std::size_t N);

struct JacobiSides {
    QSeries lambert;
    QSeries theta_squared;
};
JacobiSides jacobi_sides(std::size_t N);
bool jacobi_check(std::size_t N);

}  // namespace qzeta

#endif  // QZETA_QSERIES_HPP
