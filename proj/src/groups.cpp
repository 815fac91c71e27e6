#include "qzeta/groups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qzeta {

Perm::Perm(FormKind kind, std::vector<int> image) : kind_(kind), img_(std::move(image))
{
    const std::size_t n = labels(kind).size();
    if (img_.size() != n) throw std::invalid_argument("Perm: wrong label count");
    std::vector<bool> seen(n, false);
    for (int x : img_) {
        if (x < 0 || static_cast<std::size_t>(x) >= n || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("Perm: not a bijection");
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Perm Perm::identity(FormKind kind)
{
    std::vector<int> img(labels(kind).size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<int>(i);
    return Perm(kind, std::move(img));
}

Perm Perm::from_cycles(FormKind kind, const std::vector<std::vector<std::string>>& cycles)
{
    const auto& L = labels(kind);
    auto idx = [&](const std::string& s) {
        auto it = std::find(L.begin(), L.end(), s);
        if (it == L.end()) throw std::invalid_argument("unknown label c" + s);
        return static_cast<int>(it - L.begin());
    };
    Perm p = identity(kind);
    for (const auto& cyc : cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            p.img_[static_cast<std::size_t>(idx(cyc[i]))] = idx(cyc[(i + 1) % cyc.size()]);
        }
    }
    return Perm(kind, p.img_);
}

Perm operator*(const Perm& a, const Perm& b)
{
    if (a.kind_ != b.kind_) throw std::invalid_argument("Perm: kinds differ");
    std::vector<int> img(a.img_.size());
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = a(b(static_cast<int>(x)));
    return Perm(a.kind_, std::move(img));
}

Perm Perm::inverse() const
{
    std::vector<int> img(img_.size());
    for (std::size_t x = 0; x < img.size(); ++x) img[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
    return Perm(kind_, std::move(img));
}

Perm Perm::pow(int e) const
{
    Perm base = e >= 0 ? *this : inverse();
    Perm r = identity(kind_);
    for (int i = 0; i < std::abs(e); ++i) r = r * base;
    return r;
}

int Perm::order() const
{
    Perm g = *this;
    int k = 1;
    while (!g.is_identity()) {
        g = g * *this;
        ++k;
    }
    return k;
}

bool Perm::is_identity() const
{
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != static_cast<int>(x)) return false;
    return true;
}

std::vector<int> Perm::apply(const std::vector<int>& c) const
{
    std::vector<int> out(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) out[x] = c[static_cast<std::size_t>(img_[x])];
    return out;
}

CVector Perm::apply(const CVector& c) const
{
    if (c.kind != kind_) throw std::invalid_argument("Perm: c-vector of another kind");
    CVector r = c;
    r.values = apply(c.values);
    auto p = params_from_cvector(r);
    if (p) r.params = *p;
    return r;
}

std::string Perm::to_cycles() const
{
    const auto& L = labels(kind_);
    std::vector<bool> done(img_.size(), false);
    std::ostringstream os;
    for (std::size_t s = 0; s < img_.size(); ++s) {
        if (done[s] || img_[s] == static_cast<int>(s)) continue;
        os << "(";
        std::size_t x = s;
        bool first = true;
        while (!done[x]) {
            done[x] = true;
            os << (first ? "" : " ") << "c" << L[x];
            first = false;
            x = static_cast<std::size_t>(img_[x]);
        }
        os << ")";
    }
    std::string out = os.str();
    return out.empty() ? "()" : out;
}

bool Group::contains(const Perm& g) const
{
    return std::find(elements.begin(), elements.end(), g) != elements.end();
}

bool Group::is_group() const
{
    if (elements.empty()) return false;
    std::set<Perm> s(elements.begin(), elements.end());
    if (s.size() != elements.size()) return false;
    if (!s.count(Perm::identity(elements.front().kind()))) return false;
    for (const auto& a : elements) {
        if (!s.count(a.inverse())) return false;
        for (const auto& b : elements)
            if (!s.count(a * b)) return false;
    }
    return true;
}

Group generate(const std::vector<Perm>& generators)
{
    if (generators.empty()) throw std::invalid_argument("generate: no generators");
    Group G;
    G.generators = generators;
    const Perm e = Perm::identity(generators.front().kind());
    std::set<Perm> seen{e};
    std::deque<Perm> queue{e};
    while (!queue.empty()) {
        Perm g = queue.front();
        queue.pop_front();
        G.elements.push_back(g);
        for (const auto& s : generators) {
            Perm h = g * s;
            if (seen.insert(h).second) queue.push_back(h);
        }
    }
    return G;
}

Perm tau() { return Perm::from_cycles(FormKind::Zeta1, {{"22", "21", "01", "11", "12", "00"}}); }

Perm sigma() { return Perm::from_cycles(FormKind::Zeta1, {{"11", "21"}, {"12", "22"}}); }

std::vector<Perm> zeta2_generators()
{
    const FormKind k = FormKind::Zeta2;
    return {
        Perm::from_cycles(k, {{"11", "21"}, {"12", "22"}, {"13", "23"}}),
        Perm::from_cycles(k, {{"21", "31"}, {"22", "32"}, {"23", "33"}}),
        Perm::from_cycles(k, {{"12", "13"}, {"22", "23"}, {"32", "33"}}),
        Perm::from_cycles(k, {{"00", "22"}, {"11", "33"}, {"13", "31"}}),
    };
}

Group group_tau_sigma() { return generate({tau(), sigma()}); }
Group group_tau2_sigma() { return generate({tau().pow(2), sigma()}); }
Group group_zeta2() { return generate(zeta2_generators()); }

const Group& arithmetic_group(FormKind kind)
{
    static const Group g1 = group_tau2_sigma();
    static const Group g2 = group_zeta2();
    return kind == FormKind::Zeta1 ? g1 : g2;
}

const Group& full_group(FormKind kind)
{
    static const Group g1 = group_tau_sigma();
    static const Group g2 = group_zeta2();
    return kind == FormKind::Zeta1 ? g1 : g2;
}

Group trivial_group(FormKind kind) { return generate({Perm::identity(kind)}); }

ParamsZ1 tau_params(const ParamsZ1& p) { return {p.a1, p.b - p.a1, p.a0, p.a0 + p.a2}; }

ParamsZ1 sigma_params(const ParamsZ1& p) { return {p.a0, p.a2, p.a1, p.b}; }

std::optional<Params> params_from_cvector(const CVector& c)
{
    Params P;
    if (c.kind == FormKind::Zeta1) {
        ParamsZ1 z{c.at("01") + 1, c.at("11") + 1, c.at("21") + 1, 0};
        z.b = c.at("12") + z.a1 + 1;
        P = z;
    } else {
        ParamsZ2 z{c.at("11") + 1, c.at("21") + 1, c.at("31") + 1, 0, 0};
        z.b2 = c.at("12") + z.a1 + 1;
        z.b3 = c.at("13") + z.a1 + 1;
        P = z;
    }
    if (!(cvector_unchecked(P) == c)) return std::nullopt;
    return P;
}

namespace {

int floor_div(int a, int l) { return a >= 0 ? a / l : -((-a + l - 1) / l); }

std::vector<int> factorial_positions(FormKind kind)
{
    std::vector<int> pos;
    CVector probe;
    probe.kind = kind;
    for (const auto& s : factorial_labels(kind)) pos.push_back(probe.index(s));
    return pos;
}

}  // namespace

int nu_l(const CVector& c, const Group& G, int l)
{
    if (l < 2) throw std::invalid_argument("nu_l: l must be >= 2");
    const auto S = factorial_positions(c.kind);
    int best = 0;
    bool first = true;
    for (const auto& g : G.elements) {
        std::vector<int> gc = g.apply(c.values);
        int s = 0;
        for (int j : S) s += floor_div(c.values[static_cast<std::size_t>(j)], l) - floor_div(gc[static_cast<std::size_t>(j)], l);
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

int nu_l_by_division(const CVector& c, const Group& G, int l)
{
    if (l < 2) throw std::invalid_argument("nu_l: l must be >= 2");
    const auto S = factorial_positions(c.kind);
    auto ord_of = [&](const std::vector<int>& v) {
        PPoly prod{1};
        for (int j : S) prod = prod * gauss_factorial(v[static_cast<std::size_t>(j)]);
        return ord_cyclotomic(prod, l);
    };
    const int base = ord_of(c.values);
    int best = 0;
    bool first = true;
    for (const auto& g : G.elements) {
        int s = base - ord_of(g.apply(c.values));
        if (first || s > best) best = s;
        first = false;
    }
    return best;
}

OmegaResult omega(const CVector& c, const Group& G)
{
    OmegaResult r;
    r.c = c;
    r.group_order = G.order();
    const int m = c.m1();
    for (int l = 2; l <= m; ++l) {
        int v = nu_l(c, G, l);
        if (v < 0) throw std::logic_error("nu_l negative despite the identity element");
        r.nu[l] = v;
        r.omega.multiply_phi(l, v);
    }
    return r;
}

Rat pi_q(const CVector& c, long p)
{
    Rat q(1, p);
    q.canonicalize();
    Rat r = 1;
    for (const auto& s : factorial_labels(c.kind)) {
        const int n = c.at(s);
        Rat qn = 1;
        for (int nu = 1; nu <= n; ++nu) {
            qn *= q;
            r *= (1 - qn) / (1 - q);
        }
    }
    return r;
}

Enclosure stability_quantity(const Params& params, long p, long terms)
{
    const CVector c = cvector(params);
    std::vector<Rat> t = heine_terms(params, terms + 1, p);
    Rat partial = 0;
    for (long i = 0; i < terms; ++i) partial += t[static_cast<std::size_t>(i)];
    Rat tail = heine_tail_bound(params, terms, p, t.back());
    Enclosure e;
    // For p > 0 every summand is positive, so the partial sum is a lower bound.
    e.lo = p > 0 ? partial : partial - tail;
    e.hi = partial + tail;
    Rat pq = pi_q(c, p);
    e.lo /= pq;
    e.hi /= pq;
    if (e.hi < e.lo) std::swap(e.lo, e.hi);
    return e;
}

StabilityResult stability_check(const Params& params, const Perm& g, long p, long terms)
{
    StabilityResult r;
    const CVector c = cvector(params);
    CVector gc = c;
    gc.values = g.apply(c.values);
    auto img = params_from_cvector(gc);
    if (!img || !img->admissible() || !gc.nonnegative()) {
        r.admissible = false;
        if (img) r.image = *img;
        return r;
    }
    r.image = *img;
    r.lhs = stability_quantity(params, p, terms);
    r.rhs = stability_quantity(*img, p, terms);
    r.ok = !(r.lhs.hi < r.rhs.lo || r.rhs.hi < r.lhs.lo);
    Rat w = std::max(r.lhs.width(), r.rhs.width());
    r.width = w.get_d();
    return r;
}

}  // namespace qzeta
