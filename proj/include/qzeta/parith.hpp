#ifndef QZETA_PARITH_HPP
#define QZETA_PARITH_HPP

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qzeta/ppoly.hpp"

namespace qzeta {

/// A product  unit * p^p_power * prod_l Phi_l(p)^e_l  with integer (possibly
/// negative) exponents. Zero exponents are never stored.
struct FactoredPPoly {
    std::map<int, int> exponents;
    int p_power = 0;
    int unit = 1;

    static FactoredPPoly one() { return {}; }
    /// p^k - 1 = prod_{d | k} Phi_d(p)
    static FactoredPPoly binomial(int k);

    void multiply_phi(int l, int e);
    int exponent(int l) const;
    FactoredPPoly& operator*=(const FactoredPPoly& o);
    FactoredPPoly& operator/=(const FactoredPPoly& o);
    friend FactoredPPoly operator*(FactoredPPoly a, const FactoredPPoly& b) { return a *= b; }
    friend FactoredPPoly operator/(FactoredPPoly a, const FactoredPPoly& b) { return a /= b; }
    friend bool operator==(const FactoredPPoly&, const FactoredPPoly&) = default;

    /// True when every exponent (including p_power) is nonnegative.
    bool is_polynomial() const;
    /// Signed degree: p_power + sum e_l * phi(l).
    long degree() const;
    /// Expands the product; throws std::domain_error unless is_polynomial().
    PPoly expand() const;
    /// Expands only the cyclotomic part with positive (negative when
    /// `denominator`) exponents, ignoring the unit and p-power.
    PPoly expand_cyclotomic(bool denominator) const;
};

/// Thread-safe memo of cyclotomic polynomials. Reads run concurrently;
/// inserts are serialized. Entries are never evicted, so returned
/// references stay valid for the lifetime of the cache.
class CyclotomicCache {
public:
    const PPoly& get(int l);
    /// (p^l - 1) / Phi_l(p)
    const PPoly& cofactor(int l);

    /// Seeds an entry (e.g. from disk). The value is recomputed and must
    /// match bit for bit; throws std::runtime_error otherwise.
    void insert(int l, const PPoly& phi);
    std::vector<std::pair<int, PPoly>> snapshot() const;
    std::size_t size() const;
    void clear();

private:
    mutable std::shared_mutex mu_;
    std::map<int, std::unique_ptr<PPoly>> phi_;
    std::map<int, std::unique_ptr<PPoly>> cof_;
};

CyclotomicCache& cyclotomic_cache();

int moebius(int n);
int euler_phi(int n);
std::vector<int> divisors(int n);

/// [n]_p = 1 + p + ... + p^(n-1); n >= 1.
PPoly gauss_number(int n);
/// [n]_p! = [1]_p [2]_p ... [n]_p; n >= 0.
PPoly gauss_factorial(int n);
/// Phi_l(p), memoized.
const PPoly& cyclotomic(int l);
/// Phi_l evaluated at an integer, exactly, without building the polynomial.
Int cyclotomic_value(int l, const Int& p);
/// The factorization of [n]_p! over cyclotomics (Phi_1 never occurs).
FactoredPPoly gauss_factorial_factored(int n);

/// D_n(p) = prod_{l<=n} Phi_l(p).
FactoredPPoly dnp(int n);
/// lcm([1]_p, ..., [n]_p) computed with polynomial gcds; an independent
/// route to D_n(p).
PPoly gauss_lcm(int n);

/// Returns N / Phi_l(p) when Phi_l divides N exactly, nullopt otherwise.
std::optional<PPoly> divide_by_cyclotomic(const PPoly& N, int l);
/// Multiplicity of Phi_l(p) in a nonzero N.
int ord_cyclotomic(PPoly N, int l);

/// ord_{Phi_l} [n]_p! = floor(n/l); l >= 2.
int ord_phi_factorial(int l, int n);
/// Same order found by repeated exact division of [n]_p!.
int ord_phi_factorial_by_division(int l, int n);

/// log|D_n(p)| / (n^2 log|p|).
double mertens_ratio(int n, long p);

struct Trigamma {
    Rat x;
    long double value = 0;
    long double abs_err = 0;
};

/// psi'(x) for x > 0: upward recurrence to x >= 10, then the asymptotic
/// series 1/x + 1/(2x^2) + sum B_2k / x^(2k+1).
Trigamma trigamma(const Rat& x);
long double trigamma_value(long double x);

struct BlockSum {
    double lhs = 0;
    double rhs = 0;
    int terms = 0;
};

/// Finite-n side and limit side of the cyclotomic block density relation
/// for the demi-interval [u, v).
BlockSum phi_block_sum(int n, long p, const Rat& u, const Rat& v);

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;
inline constexpr long double kMertens = 3.0L / (kPi * kPi);

}  // namespace qzeta

#endif  // QZETA_PARITH_HPP
