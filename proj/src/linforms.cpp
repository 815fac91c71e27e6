#include "qzeta/linforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qzeta/qseries.hpp"

namespace qzeta {

namespace {

// 1 - q^k at q = 1/p, k != 0.
FactoredPPoly one_minus_q(int k)
{
    FactoredPPoly f = FactoredPPoly::binomial(std::abs(k));
    if (k > 0) {
        f.p_power = -k;
    } else {
        f.unit = -1;
    }
    return f;
}

// Gamma_q(n) = prod_{i<n} (1 - q^i) / (1 - q)^(n-1) for integers n >= 1.
FactoredPPoly gamma_q(int n)
{
    if (n < 1) throw std::invalid_argument("gamma_q: argument must be >= 1");
    FactoredPPoly f;
    for (int i = 1; i < n; ++i) f *= one_minus_q(i);
    FactoredPPoly base = one_minus_q(1);
    for (int i = 1; i < n; ++i) f /= base;
    return f;
}

FactoredPPoly one_minus_q_power(int e)
{
    FactoredPPoly f;
    f.multiply_phi(1, e);
    f.p_power = -e;
    return f;
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

Rat eval_factored(const FactoredPPoly& f, long p)
{
    Rat r = rat_pow(Rat(p), f.p_power) * f.unit;
    for (const auto& [l, e] : f.exponents) r *= rat_pow(Rat(cyclotomic_value(l, Int(p))), e);
    return r;
}

Rat inv_p(long p)
{
    Rat q(1, p);
    q.canonicalize();
    return q;
}

// The summand as a function of x = q^t:
//   K x^e prod_{i in num} (1 - q^i x) / prod_j (1 - q^j x)^mu_j
// plus the Heine-ratio data used for the numeric series.
struct Kernel {
    FactoredPPoly K;
    int e = 0;
    std::vector<int> num;
    std::map<int, int> poles;
    // term_{t+1} / term_t = q^e prod_a (1 - q^(t+a)) / prod_b (1 - q^(t+b))
    std::vector<int> upper;
    std::vector<int> lower;
    int zeta_k = 1;
};

Kernel kernel(const Params& P)
{
    Kernel k;
    std::vector<int> raw_poles;
    if (P.kind == FormKind::Zeta1) {
        const auto& z = P.z1;
        k.K = gamma_q(z.b - z.a2) / gamma_q(z.a1) * one_minus_q_power(z.b - z.a1 - z.a2);
        k.e = z.a0;
        for (int i = 1; i < z.a1; ++i) k.num.push_back(i);
        for (int j = z.a2; j < z.b; ++j) raw_poles.push_back(j);
        k.upper = {z.a1, z.a2};
        k.lower = {1, z.b};
        k.zeta_k = 1;
    } else {
        const auto& z = P.z2;
        k.K = gamma_q(z.b2 - z.a2) * gamma_q(z.b3 - z.a3) / gamma_q(z.a1) *
              one_minus_q_power(-2 - (z.a1 - 1) + (z.b2 - z.a2) + (z.b3 - z.a3));
        k.e = z.b2 + z.b3 - z.a1 - z.a2 - z.a3;
        for (int i = 1; i < z.a1; ++i) k.num.push_back(i);
        for (int j = z.a2; j < z.b2; ++j) raw_poles.push_back(j);
        for (int j = z.a3; j < z.b3; ++j) raw_poles.push_back(j);
        k.upper = {z.a1, z.a2, z.a3};
        k.lower = {1, z.b2, z.b3};
        k.zeta_k = 2;
    }
    for (int j : raw_poles) ++k.poles[j];
    // Cancel numerator factors against poles.
    std::vector<int> kept;
    for (int i : k.num) {
        auto it = k.poles.find(i);
        if (it != k.poles.end()) {
            if (--it->second == 0) k.poles.erase(it);
        } else {
            kept.push_back(i);
        }
    }
    k.num = std::move(kept);
    return k;
}

// term_0 = K prod_num (1 - q^i) / prod_poles (1 - q^j)^mu  (before cancellation
// the same value, since cancelled factors are equal).
Rat first_term(const Kernel& k, long p)
{
    const Rat q = inv_p(p);
    Rat t = eval_factored(k.K, p);
    for (int i : k.num) t *= 1 - rat_pow(q, i);
    for (const auto& [j, mu] : k.poles) t /= rat_pow(1 - rat_pow(q, j), mu);
    return t;
}

Rat ratio_bound(const Kernel& k, long T, long p)
{
    const Rat x(1, std::labs(p));
    const Rat y = rat_pow(x, T + 1);
    Rat rho = rat_pow(x, k.e);
    for (std::size_t i = 0; i < k.upper.size(); ++i) rho *= (1 + y) / (1 - y);
    return rho;
}

}  // namespace

const char* to_string(FormKind k) { return k == FormKind::Zeta1 ? "zeta1" : "zeta2"; }

FormKind parse_kind(const std::string& name)
{
    if (name == "zeta1") return FormKind::Zeta1;
    if (name == "zeta2") return FormKind::Zeta2;
    throw std::invalid_argument("unknown kind '" + name + "' (expected zeta1 or zeta2)");
}

bool ParamsZ1::admissible() const
{
    return a0 >= 1 && a1 >= 1 && a2 >= 1 && b >= 1 && a1 + a2 <= b;
}

bool ParamsZ2::admissible() const
{
    for (int v : {a1, a2, a3, b2, b3})
        if (v < 1) return false;
    for (int a : {a1, a2, a3})
        for (int bk : {b2, b3})
            if (!(a < bk)) return false;
    return a1 + a2 + a3 < b2 + b3;
}

std::string Params::to_string() const
{
    std::ostringstream os;
    auto v = values();
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

Params parse_params(const std::string& text, FormKind kind)
{
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad parameter '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("bad parameter '" + item + "'");
        v.push_back(x);
    }
    if (kind == FormKind::Zeta1) {
        if (v.size() != 4) throw std::invalid_argument("zeta1 expects a0,a1,a2,b");
        return ParamsZ1{v[0], v[1], v[2], v[3]};
    }
    if (v.size() != 5) throw std::invalid_argument("zeta2 expects a1,a2,a3,b2,b3");
    return ParamsZ2{v[0], v[1], v[2], v[3], v[4]};
}

const std::vector<std::string>& labels(FormKind kind)
{
    static const std::vector<std::string> z1{"00", "01", "11", "21", "12", "22"};
    static const std::vector<std::string> z2{"00", "11", "12", "13", "21", "22", "23", "31", "32", "33"};
    return kind == FormKind::Zeta1 ? z1 : z2;
}

const std::vector<std::string>& factorial_labels(FormKind kind)
{
    static const std::vector<std::string> z1{"01", "21", "22"};
    static const std::vector<std::string> z2{"00", "21", "22", "33", "31"};
    return kind == FormKind::Zeta1 ? z1 : z2;
}

int CVector::index(const std::string& label) const
{
    const auto& L = labels(kind);
    auto it = std::find(L.begin(), L.end(), label);
    if (it == L.end()) throw std::invalid_argument("unknown label c" + label);
    return static_cast<int>(it - L.begin());
}

int CVector::at(const std::string& label) const { return values[static_cast<std::size_t>(index(label))]; }

int CVector::m1() const { return *std::max_element(values.begin(), values.end()); }

int CVector::m2() const
{
    if (kind == FormKind::Zeta1) return 0;
    std::vector<int> s = values;
    std::sort(s.rbegin(), s.rend());
    return s[1];
}

bool CVector::nonnegative() const
{
    return std::all_of(values.begin(), values.end(), [](int v) { return v >= 0; });
}

CVector cvector_unchecked(const Params& P)
{
    CVector c;
    c.kind = P.kind;
    c.params = P;
    if (P.kind == FormKind::Zeta1) {
        const auto& z = P.z1;
        c.values = {z.a0 + z.a1 + z.a2 - z.b - 1, z.a0 - 1, z.a1 - 1, z.a2 - 1, z.b - z.a1 - 1, z.b - z.a2 - 1};
    } else {
        const auto& z = P.z2;
        const int a[3] = {z.a1, z.a2, z.a3};
        const int b[2] = {z.b2, z.b3};
        c.values = {z.b2 + z.b3 - z.a1 - z.a2 - z.a3 - 1};
        for (int j = 0; j < 3; ++j) {
            c.values.push_back(a[j] - 1);
            for (int k = 0; k < 2; ++k) c.values.push_back(b[k] - a[j] - 1);
        }
    }
    return c;
}

CVector cvector(const Params& P)
{
    if (!P.admissible()) throw std::invalid_argument("inadmissible parameters (" + P.to_string() + ")");
    CVector c = cvector_unchecked(P);
    if (!c.nonnegative()) throw std::invalid_argument("degenerate parameters (" + P.to_string() + "): some c < 0");
    return c;
}

std::vector<Rat> heine_terms(const Params& P, long T, long p)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("heine_terms: |p| must be >= 2");
    cvector(P);
    const Kernel k = kernel(P);
    const Rat q = inv_p(p);
    const Rat qe = rat_pow(q, k.e);
    std::vector<Rat> out;
    if (T <= 0) return out;
    Rat t = first_term(k, p);
    Rat qt = 1;  // q^t
    for (long i = 0; i < T; ++i) {
        out.push_back(t);
        Rat r = qe;
        for (int a : k.upper) r *= 1 - qt * rat_pow(q, a);
        for (int b : k.lower) r /= 1 - qt * rat_pow(q, b);
        t *= r;
        qt *= q;
    }
    return out;
}

Rat heine_tail_bound(const Params& P, long T, long p, const Rat& term_T)
{
    const Kernel k = kernel(P);
    Rat rho = ratio_bound(k, T, p);
    if (!(rho < 1)) throw std::runtime_error("heine_tail_bound: ratio bound not below 1; use more terms");
    return abs(term_T) / (1 - rho);
}

FactoredPPoly LinearForm::D() const
{
    FactoredPPoly d = dnp(m1);
    if (kind() == FormKind::Zeta2) d *= dnp(m2);
    return d;
}

namespace {

struct Assembly {
    RatFunc A;       // coefficient of zeta_q(k)
    RatFunc A_other; // coefficient of zeta_q(1) in the zeta_q(2) case
    RatFunc B;
};

Assembly assemble(const Kernel& k)
{
    // Residue data G_j = K p^(j e) prod_num (1 - q^(i-j)) / prod_{i != j} (1 - q^(i-j))^mu_i.
    std::vector<std::pair<int, RatFunc>> G;
    for (const auto& [j, mu] : k.poles) {
        FactoredPPoly g = k.K;
        g.p_power += j * k.e;
        for (int i : k.num) g *= one_minus_q(i - j);
        for (const auto& [i, mi] : k.poles) {
            if (i == j) continue;
            FactoredPPoly f = one_minus_q(i - j);
            for (int r = 0; r < mi; ++r) g /= f;
        }
        G.emplace_back(j, RatFunc::from_factored(g));
    }

    int max_pole = k.poles.empty() ? 0 : k.poles.rbegin()->first;
    int total_mu = 0;
    for (const auto& [j, mu] : k.poles) total_mu += mu;
    const int degP = k.e + static_cast<int>(k.num.size()) - total_mu;
    if (degP >= k.e) throw std::invalid_argument("polynomial part does not decay: inadmissible parameters");

    // H1_j = sum_{nu<j} 1/(p^nu - 1), H2_j = sum_{nu<j} p^nu/(p^nu - 1)^2.
    std::vector<RatFunc> H1(static_cast<std::size_t>(max_pole) + 1), H2(static_cast<std::size_t>(max_pole) + 1);
    const bool need_h2 = std::any_of(k.poles.begin(), k.poles.end(), [](const auto& x) { return x.second == 2; });
    for (int j = 2; j <= max_pole; ++j) {
        H1[static_cast<std::size_t>(j)] = H1[static_cast<std::size_t>(j - 1)] + RatFunc::lambert_term(j - 1);
        if (need_h2) H2[static_cast<std::size_t>(j)] = H2[static_cast<std::size_t>(j - 1)] + RatFunc::lambert_square_term(j - 1);
    }

    RatFuncSum A, A_other, B;
    for (const auto& [j, g] : G) {
        const int mu = k.poles.at(j);
        const auto J = static_cast<std::size_t>(j);
        if (mu == 1) {
            // alpha_j = G_j. The polynomial part contributes
            // -sum_k P_k/(1-q^k) = sum_j alpha_j sum_{k=1}^{degP} q^(jk)/(1-q^k).
            RatFuncSum V;
            V.add(H1[J]);
            for (int kk = 1; kk <= degP; ++kk) {
                // q^(jk)/(1-q^k) = p^(-(j-1)k) / (p^k - 1)
                V.add(RatFunc::from_parts(PPoly{1}, -(j - 1) * kk, [&] {
                    std::map<int, int> d;
                    for (int l : divisors(kk)) d[l] = 1;
                    return d;
                }()));
            }
            if (k.zeta_k == 1) {
                A.add(g);
            } else {
                A_other.add(g);
            }
            B.add_product(g, V.result());
        } else if (mu == 2) {
            if (degP >= 0) throw std::logic_error("double poles with a polynomial part are not supported");
            // Lambda_j = e - sum_num L(i-j) + sum_{i != j} mu_i L(i-j), L(k) = q^k/(1-q^k).
            RatFuncSum lam;
            lam.add(RatFunc(static_cast<long>(k.e)));
            for (int i : k.num) lam.add(-RatFunc::lambert_term(i - j));
            for (const auto& [i, mi] : k.poles) {
                if (i == j) continue;
                RatFunc L = RatFunc::lambert_term(i - j);
                lam.add(mi == 1 ? L : L * RatFunc(static_cast<long>(mi)));
            }
            RatFunc one_minus_lambda = RatFunc(1L) - lam.result();
            // alpha_j + beta_j = G_j (1 - Lambda_j), beta_j = G_j.
            A.add(g);
            A_other.add_product(g, one_minus_lambda);
            B.add_product(g, one_minus_lambda * H1[J] + H2[J]);
        } else {
            throw std::logic_error("pole of order > 2");
        }
    }
    return {A.result(), A_other.result(), B.result()};
}

}  // namespace

Certificate certify(const LinearForm& form, long p, long terms)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("certify: |p| must be >= 2");
    Certificate c;
    c.p = p;
    c.terms = terms;
    std::vector<Rat> t = heine_terms(form.params, terms + 1, p);
    Rat partial = 0;
    for (long i = 0; i < terms; ++i) partial += t[static_cast<std::size_t>(i)];
    Rat series_tail = heine_tail_bound(form.params, terms, p, t.back());

    const Rat A = form.A.eval(p);
    const Rat B = form.B.eval(p);
    const int k = form.kind() == FormKind::Zeta1 ? 1 : 2;
    // zeta precision: enough that |A| delta stays below the series tail, but
    // never finer than 2^-256 relative to |A|.
    Rat absA = abs(A) + 1;
    Rat floor_tol(Int(1), Int(1) << 256);
    floor_tol /= absA;
    Rat tol = series_tail / absA;
    if (tol < floor_tol) tol = floor_tol;
    EvalResult z = zeta_q_enclosure(k, inv_p(p), tol);

    c.residual = abs(partial - (A * z.value - B));
    c.bound = series_tail + abs(A) * z.tail_bound;
    c.ok = c.residual <= 10 * c.bound;
    return c;
}

LinearForm linform(const Params& params, const std::vector<long>& certify_at)
{
    CVector c = cvector(params);
    Kernel k = kernel(params);
    Assembly as = assemble(k);
    LinearForm f;
    f.params = params;
    f.A = std::move(as.A);
    f.B = std::move(as.B);
    f.m1 = c.m1();
    f.m2 = c.m2();
    if (params.kind == FormKind::Zeta2 && !as.A_other.is_zero())
        throw std::logic_error("zeta_q(1) coefficient does not cancel for (" + params.to_string() + ")");
    if (params.kind == FormKind::Zeta1 && !as.A_other.is_zero()) throw std::logic_error("unexpected zeta_q(2) part");
    determine_M(f);
    for (long p : certify_at) {
        Certificate cert = certify(f, p);
        f.certificates.push_back(cert);
        if (!cert.ok) {
            throw std::runtime_error("numeric certification failed for (" + params.to_string() + ") at p = " + std::to_string(p));
        }
    }
    return f;
}

LinearForm linform_zeta1(const ParamsZ1& params, const std::vector<long>& certify_at)
{
    return linform(Params(params), certify_at);
}

LinearForm linform_zeta2(const ParamsZ2& params, const std::vector<long>& certify_at)
{
    return linform(Params(params), certify_at);
}

int determine_M(LinearForm& form)
{
    const FactoredPPoly D = form.D();
    for (const RatFunc* x : {&form.A, &form.B}) {
        for (const auto& [l, e] : x->den_exponents()) {
            if (e > D.exponent(l)) {
                throw std::logic_error("D does not clear Phi_" + std::to_string(l) + " in (" + form.params.to_string() + ")");
            }
        }
    }
    if (form.A.is_zero()) throw std::logic_error("vanishing coefficient A");
    int M = form.A.valuation();
    if (!form.B.is_zero()) M = std::min(M, form.B.valuation());
    form.M = M;
    return M;
}

InclusionResult verify_inclusion(const LinearForm& form, const FactoredPPoly* omega)
{
    InclusionResult r;
    const FactoredPPoly D = form.D();
    FactoredPPoly scale = D;
    if (omega) scale /= *omega;
    scale.p_power -= form.M;
    const char* names[2] = {"A", "B"};
    const RatFunc* xs[2] = {&form.A, &form.B};
    for (int w = 0; w < 2; ++w) {
        const RatFunc& x = *xs[w];
        if (x.is_zero()) continue;
        if (x.valuation() + scale.p_power < 0) {
            r.ok = false;
            r.witness_l = 0;
            r.witness = std::string(names[w]) + ": negative power of p";
            return r;
        }
        for (const auto& [l, e] : scale.exponents) {
            int ord = x.den_exponent(l) > 0 ? -x.den_exponent(l) : 0;
            if (ord + e >= 0) continue;
            // Only now look for Phi_l in the numerator.
            ord = x.ord_phi(l);
            if (ord + e < 0) {
                r.ok = false;
                r.witness_l = l;
                r.witness = std::string(names[w]) + ": Phi_" + std::to_string(l) + " exponent " + std::to_string(ord + e);
                return r;
            }
        }
        for (const auto& [l, e] : x.den_exponents()) {
            if (scale.exponent(l) < e) {
                r.ok = false;
                r.witness_l = l;
                r.witness = std::string(names[w]) + ": Phi_" + std::to_string(l) + " left in the denominator";
                return r;
            }
        }
    }
    r.witness_l = -1;
    return r;
}

Params Family::at(int n) const
{
    std::vector<int> v(slope.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = slope[i] * n + offset[i];
    if (kind == FormKind::Zeta1) return ParamsZ1{v[0], v[1], v[2], v[3]};
    return ParamsZ2{v[0], v[1], v[2], v[3], v[4]};
}

std::vector<int> Family::eta() const
{
    // c-values are affine in the parameters; the linear part is the
    // c-vector of the slopes with the constant -1 removed.
    Params s = kind == FormKind::Zeta1 ? Params(ParamsZ1{slope[0], slope[1], slope[2], slope[3]})
                                       : Params(ParamsZ2{slope[0], slope[1], slope[2], slope[3], slope[4]});
    CVector c = cvector_unchecked(s);
    Params zero = kind == FormKind::Zeta1 ? Params(ParamsZ1{0, 0, 0, 0}) : Params(ParamsZ2{0, 0, 0, 0, 0});
    CVector c0 = cvector_unchecked(zero);
    std::vector<int> eta(c.values.size());
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = c.values[i] - c0.values[i];
    return eta;
}

Family family(const std::string& name)
{
    if (name == "theorem1") return {name, FormKind::Zeta1, {8, 6, 8, 15}, {1, 1, 1, 1}};
    if (name == "bv") return {name, FormKind::Zeta1, {1, 1, 1, 2}, {1, 1, 1, 2}};
    if (name == "theorem2") return {name, FormKind::Zeta2, {5, 6, 7, 14, 15}, {1, 1, 1, 2, 2}};
    if (name == "apery") return {name, FormKind::Zeta2, {1, 1, 1, 2, 2}, {1, 1, 1, 2, 2}};
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::vector<std::string> family_names() { return {"theorem1", "theorem2", "bv", "apery"}; }

std::vector<GrowthRow> growth_scan(const Family& fam, int n_max, long p)
{
    if (std::labs(p) <= 1) throw std::invalid_argument("growth_scan: |p| must be >= 2");
    std::vector<GrowthRow> rows;
    const double logp = std::log(static_cast<double>(std::labs(p)));
    for (int n = 1; n <= n_max; ++n) {
        LinearForm f = linform(fam.at(n), {});
        GrowthRow r;
        r.n = n;
        Rat A = abs(f.A.eval(p));
        auto log_rat = [](const Rat& x) {
            long en = 0, ed = 0;
            double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
            double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
            return std::log(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log(2.0);
        };
        // F from the series itself; 64 terms leave a relative error far
        // below anything visible in a logarithm.
        Rat F = 0;
        for (const auto& x : heine_terms(f.params, 64, p)) F += x;
        r.a_exponent = log_rat(A) / (static_cast<double>(n) * n * logp);
        r.log_f = log_rat(abs(F));
        r.f_exponent = r.log_f / (static_cast<double>(n) * n * logp);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace qzeta
