#ifndef QZETA_MEASURES_HPP
#define QZETA_MEASURES_HPP

#include <string>
#include <vector>

#include "qzeta/groups.hpp"
#include "qzeta/linforms.hpp"

namespace qzeta {

/// Growth rates of the c-labels along a family (offsets dropped).
struct Direction {
    FormKind kind = FormKind::Zeta1;
    std::vector<int> eta;     // in labels(kind) order
    std::vector<int> offset;  // c-values at n = 0; empty means all zero
};

Direction direction(const Family& fam);

/// phi(x) = max_g sum_{j in S} (floor(eta_j x) - floor((g eta)_j x)),
/// constant on each open interval (b_i, b_{i+1}). At a breakpoint the
/// floors of labels with a negative offset drop by one, which is the value
/// nu_l takes at {n/l} = b_i once l exceeds every |offset|.
struct NuProfile {
    std::vector<Rat> breakpoints;  // 0 = b_0 < ... < b_K = 1
    std::vector<int> values;       // values[i] on (b_i, b_{i+1})
    std::vector<int> point_values; // point_values[i] at b_i, i < K

    int at(const Rat& x) const;  // x in [0, 1)
};

NuProfile nu_profile(const Direction& dir, const Group& G);

/// (3/pi^2) sum_i phi_i (psi'(u_i) - psi'(v_i)).
double omega_exponent(const NuProfile& profile);

/// Quadratic main term of log|A| / log|p| per n^2.
Rat alpha_exponent(const Family& fam);

/// (3/pi^2) (m^2) or (3/pi^2) (m1^2 + m2^2) from the top c growth rates.
double d_exponent(const Direction& dir);

struct MFit {
    std::vector<int> n;
    std::vector<long> M;
    std::vector<long> second_differences;
    Rat coeff;             // half the stabilized second difference
    int period = 1;        // residue-class period used for the fit
    bool stabilized = false;
    std::vector<double> residuals;  // M(n) minus the fitted quadratic
    std::string warning;
};

/// Fits the leading coefficient of the exact M(n), n = 1..n_max.
MFit fit_M_coeff(const std::vector<long>& M);
MFit fit_M_coeff(const Family& fam, int n_max);

struct MeasureReport {
    Rat alpha;
    double d_exp = 0;
    double omega_exp = 0;
    Rat M_coeff;
    double kappa = 0;
    double lambda = 0;
    double mu_bound = 0;
};

/// Throws std::domain_error when lambda >= 0 (no irrationality conclusion).
MeasureReport mu_bound(const Rat& alpha, double d_exp, double omega_exp, const Rat& M_coeff);

/// Full pipeline for a named family: direction, profile over the
/// arithmetic group, exact M(n) fit, and the bound.
struct MeasurePipeline {
    Family fam;
    Direction dir;
    NuProfile profile;
    MFit fit;
    MeasureReport report;
};

MeasurePipeline measure_family(const Family& fam, int n_max);

struct EmpiricalRow {
    int n = 0;
    double log_a = 0;      // log|a_n|
    double log_form = 0;   // log|a_n zeta - b_n|
    double estimate = 0;   // 1 + log|a_n| / (-log|a_n zeta - b_n|)
};

/// a_n = Delta A_n(p), b_n = Delta B_n(p), Delta = p^-M D Omega^-1.
std::vector<EmpiricalRow> empirical_mu(const Family& fam, long p, int n_max, int n_min = 1);

struct AperyRow {
    int n = 0;
    int phi1_order = 0;  // power of (p - 1) removed
    Rat normalized;      // value at p = 1 after normalization
    Int apery;           // sum_k C(n,k)^2 C(n+k,k)
    bool ok = false;
};

/// Sum over k of C(n,k)^2 C(n+k,k).
Int apery_number(int n);

/// Normalized limits q -> 1 of the zeta_q(2) coefficient along
/// (n+1, n+1, n+1, 2n+2, 2n+2), n = 0..n_max.
std::vector<AperyRow> apery_limit_check(int n_max);

}  // namespace qzeta

#endif  // QZETA_MEASURES_HPP
