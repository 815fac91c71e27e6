#ifndef QZETA_LINFORMS_HPP
#define QZETA_LINFORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qzeta/parith.hpp"
#include "qzeta/ratfunc.hpp"

namespace qzeta {

enum class FormKind { Zeta1, Zeta2 };

const char* to_string(FormKind k);
FormKind parse_kind(const std::string& name);

/// (a0, a1, a2, b) for the zeta_q(1) series; admissible when all are
/// positive and a1 + a2 <= b.
struct ParamsZ1 {
    int a0 = 1, a1 = 1, a2 = 1, b = 2;

    bool admissible() const;
    std::vector<int> values() const { return {a0, a1, a2, b}; }
    friend bool operator==(const ParamsZ1&, const ParamsZ1&) = default;
};

/// (a1, a2, a3, b2, b3) for the zeta_q(2) series; admissible when all are
/// positive, every a_j < b_k and a1 + a2 + a3 < b2 + b3.
struct ParamsZ2 {
    int a1 = 1, a2 = 1, a3 = 1, b2 = 2, b3 = 2;

    bool admissible() const;
    std::vector<int> values() const { return {a1, a2, a3, b2, b3}; }
    friend bool operator==(const ParamsZ2&, const ParamsZ2&) = default;
};

/// Either parameter tuple, tagged by kind.
struct Params {
    FormKind kind = FormKind::Zeta1;
    ParamsZ1 z1;
    ParamsZ2 z2;

    Params() = default;
    Params(const ParamsZ1& p) : kind(FormKind::Zeta1), z1(p) {}  // NOLINT
    Params(const ParamsZ2& p) : kind(FormKind::Zeta2), z2(p) {}  // NOLINT

    bool admissible() const { return kind == FormKind::Zeta1 ? z1.admissible() : z2.admissible(); }
    std::vector<int> values() const { return kind == FormKind::Zeta1 ? z1.values() : z2.values(); }
    std::string to_string() const;
    friend bool operator==(const Params&, const Params&) = default;
};

/// Parses "a0,a1,a2,b" (4 values) or "a1,a2,a3,b2,b3" (5 values).
Params parse_params(const std::string& text, FormKind kind);

const std::vector<std::string>& labels(FormKind kind);
/// Labels whose factorials make up Pi_q(c).
const std::vector<std::string>& factorial_labels(FormKind kind);

/// Labeled exponents c_jk together with the tuple they came from.
struct CVector {
    FormKind kind = FormKind::Zeta1;
    std::vector<int> values;  // in labels(kind) order
    Params params;

    int at(const std::string& label) const;
    int index(const std::string& label) const;
    /// m for zeta_q(1); m1 >= m2 (the two largest entries, counted with
    /// multiplicity) for zeta_q(2).
    int m1() const;
    int m2() const;
    bool nonnegative() const;
    friend bool operator==(const CVector& a, const CVector& b) { return a.kind == b.kind && a.values == b.values; }
};

/// Throws std::invalid_argument for inadmissible or degenerate tuples.
CVector cvector(const Params& params);
/// c-values without the admissibility check (used to inspect images of
/// group elements).
CVector cvector_unchecked(const Params& params);

/// Summands t = 0..T-1 of the series at q = 1/p, prefactor included.
std::vector<Rat> heine_terms(const Params& params, long T, long p);
/// Bound on the sum of all summands from index T on.
Rat heine_tail_bound(const Params& params, long T, long p, const Rat& term_T);

struct Certificate {
    long p = 2;
    long terms = 0;
    Rat residual;  // |partial sum - (A zeta - B)| with zeta truncated
    Rat bound;     // series tail plus |A| times the zeta truncation error
    bool ok = false;
};

struct LinearForm {
    Params params;
    RatFunc A;
    RatFunc B;
    int M = 0;
    int m1 = 0;
    int m2 = 0;  // 0 for zeta_q(1)
    std::vector<Certificate> certificates;

    FormKind kind() const { return params.kind; }
    /// D_m(p) or D_{m1}(p) D_{m2}(p).
    FactoredPPoly D() const;
};

/// Builds the form by partial fractions in x = q^t. Certifies numerically at
/// each p in `certify_at` (default p = 2) and throws std::runtime_error if a
/// certificate fails; an empty list skips certification.
LinearForm linform_zeta1(const ParamsZ1& params, const std::vector<long>& certify_at = {2});
LinearForm linform_zeta2(const ParamsZ2& params, const std::vector<long>& certify_at = {2});
LinearForm linform(const Params& params, const std::vector<long>& certify_at = {2});

/// Re-runs the numeric certification at p.
Certificate certify(const LinearForm& form, long p, long terms = 200);

/// Largest M with p^-M D A and p^-M D B in Z[p] (the common p-adic valuation
/// of A and B, since D is a p-adic unit). Stores M into the form. Throws
/// std::logic_error if D does not clear the cyclotomic denominators.
int determine_M(LinearForm& form);

struct InclusionResult {
    bool ok = true;
    std::string witness;  // empty when ok
    int witness_l = 0;    // failing Phi_l, 0 for the p-power, -1 when ok
};

/// Checks p^-M D Omega^-1 A and p^-M D Omega^-1 B lie in Z[p].
InclusionResult verify_inclusion(const LinearForm& form, const FactoredPPoly* omega = nullptr);

/// Linear parameter family: value_i(n) = slope_i n + offset_i.
struct Family {
    std::string name;
    FormKind kind = FormKind::Zeta1;
    std::vector<int> slope;
    std::vector<int> offset;

    Params at(int n) const;
    /// Leading c-vector growth rates (c-values of the slopes with zero
    /// offsets), in labels(kind) order.
    std::vector<int> eta() const;
};

Family family(const std::string& name);  // theorem1, theorem2, bv, apery
std::vector<std::string> family_names();

struct GrowthRow {
    int n = 0;
    double a_exponent = 0;  // log|A_n(p)| / (n^2 log|p|)
    double f_exponent = 0;  // log|F_n(p)| / (n^2 log|p|)
    double log_f = 0;       // log|F_n(p)|
};

std::vector<GrowthRow> growth_scan(const Family& fam, int n_max, long p);

}  // namespace qzeta

#endif  // QZETA_LINFORMS_HPP
