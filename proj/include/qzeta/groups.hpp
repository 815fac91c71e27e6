#ifndef QZETA_GROUPS_HPP
#define QZETA_GROUPS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qzeta/linforms.hpp"

namespace qzeta {

/// Permutation of the c-labels of one kind, stored as images of label
/// indices. Acts on c-vectors by (g c)_x = c_{g(x)}.
class Perm {
public:
    Perm() = default;
    Perm(FormKind kind, std::vector<int> image);

    static Perm identity(FormKind kind);
    /// Product of cycles written with label names, e.g. {{"22","21","01"}}:
    /// each cycle maps x1 -> x2 -> ... -> x1.
    static Perm from_cycles(FormKind kind, const std::vector<std::vector<std::string>>& cycles);

    FormKind kind() const { return kind_; }
    const std::vector<int>& image() const { return img_; }
    int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }

    /// (a * b)(x) = a(b(x)).
    friend Perm operator*(const Perm& a, const Perm& b);
    Perm inverse() const;
    Perm pow(int e) const;
    int order() const;
    bool is_identity() const;

    std::vector<int> apply(const std::vector<int>& c) const;
    CVector apply(const CVector& c) const;
    std::string to_cycles() const;

    friend bool operator==(const Perm& a, const Perm& b) { return a.kind_ == b.kind_ && a.img_ == b.img_; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

private:
    FormKind kind_ = FormKind::Zeta1;
    std::vector<int> img_;
};

struct Group {
    std::vector<Perm> generators;
    std::vector<Perm> elements;  // breadth-first order from the identity

    std::size_t order() const { return elements.size(); }
    bool contains(const Perm& g) const;
    /// Closure and inverses, checked exhaustively.
    bool is_group() const;
};

Group generate(const std::vector<Perm>& generators);

Perm tau();
Perm sigma();
/// Generators of the order-120 group on the ten zeta_q(2) labels: the row
/// transpositions (a-permutations), the column swap (b2 <-> b3) and
/// (c00 c22)(c11 c33)(c13 c31).
std::vector<Perm> zeta2_generators();

Group group_tau_sigma();       // order 12
Group group_tau2_sigma();      // order 6
Group group_zeta2();           // order 120
/// The group used for Omega: <tau^2, sigma> or the order-120 group.
const Group& arithmetic_group(FormKind kind);
/// The group used for stability sweeps: <tau, sigma> or the order-120 group.
const Group& full_group(FormKind kind);
Group trivial_group(FormKind kind);

ParamsZ1 tau_params(const ParamsZ1& p);
ParamsZ1 sigma_params(const ParamsZ1& p);

/// The unique parameter tuple whose c-vector is `c`, if the ten (or six)
/// values are consistent with one.
std::optional<Params> params_from_cvector(const CVector& c);

/// max over g of sum_{j in S} (floor(c_j/l) - floor((gc)_j/l)); l >= 2.
int nu_l(const CVector& c, const Group& G, int l);
/// The same maximum from exact division of q-factorial products.
int nu_l_by_division(const CVector& c, const Group& G, int l);

struct OmegaResult {
    FactoredPPoly omega;
    std::map<int, int> nu;  // l -> nu_l for l = 2..m (zeros included)
    std::size_t group_order = 0;
    CVector c;

    long degree() const { return omega.degree(); }
};

OmegaResult omega(const CVector& c, const Group& G);

/// Pi_q(c) = prod_{j in S} [c_j]_q! at q = 1/p.
Rat pi_q(const CVector& c, long p);

struct Enclosure {
    Rat lo;
    Rat hi;
    Rat width() const { return hi - lo; }
};

/// Certified enclosure of H(c)/Pi_q(c) at q = 1/p from `terms` summands.
Enclosure stability_quantity(const Params& params, long p, long terms);

struct StabilityResult {
    bool admissible = true;  // false when g c has no admissible tuple
    bool ok = false;
    Params image;
    Enclosure lhs;
    Enclosure rhs;
    double width = 0;
};

StabilityResult stability_check(const Params& params, const Perm& g, long p, long terms = 200);

}  // namespace qzeta

#endif  // QZETA_GROUPS_HPP
