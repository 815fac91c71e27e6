#include "doctest.h"
#include "qzeta/groups.hpp"

using namespace qzeta;

TEST_CASE("group orders and axioms")
{
    CHECK(tau().order() == 6);
    CHECK(sigma().order() == 2);
    CHECK(zeta2_generators().back().order() == 2);

    const Group g12 = group_tau_sigma();
    const Group g6 = group_tau2_sigma();
    const Group g120 = group_zeta2();
    CHECK(g12.order() == 12);
    CHECK(g6.order() == 6);
    CHECK(g120.order() == 120);
    CHECK(g12.is_group());
    CHECK(g6.is_group());
    CHECK(g120.is_group());
    for (const auto& g : g6.elements) CHECK(g12.contains(g));
    CHECK_FALSE(g6.contains(tau()));
    CHECK(trivial_group(FormKind::Zeta1).order() == 1);

    // Deterministic element order.
    CHECK(group_tau_sigma().elements == g12.elements);
    CHECK(g12.elements.front().is_identity());
}

TEST_CASE("cycle notation")
{
    const Perm t = tau();
    CHECK(t.to_cycles() == "(c00 c22 c21 c01 c11 c12)");
    // (gc)_x = c_{g(x)}: tau moves c22 to the position of c00.
    CVector c = cvector(ParamsZ1{9, 7, 9, 16});
    auto tc = t.apply(c.values);
    CHECK(tc[static_cast<std::size_t>(c.index("00"))] == c.at("22"));
    CHECK((t * t.inverse()).is_identity());
    CHECK(t.pow(6).is_identity());
    CHECK(t.pow(-1) == t.inverse());
}

TEST_CASE("parameter maps agree with the label action")
{
    CHECK(tau_params(ParamsZ1{9, 7, 9, 16}) == ParamsZ1{7, 9, 9, 18});
    CHECK(tau_params(ParamsZ1{1, 1, 1, 2}) == ParamsZ1{1, 1, 1, 2});
    CHECK(sigma_params(ParamsZ1{9, 7, 9, 16}) == ParamsZ1{9, 9, 7, 16});

    for (int b = 2; b <= 10; ++b)
        for (int a1 = 1; a1 < b; ++a1)
            for (int a2 = 1; a1 + a2 <= b; ++a2)
                for (int a0 = 1; a0 <= 8; ++a0) {
                    const ParamsZ1 P{a0, a1, a2, b};
                    if (a0 + a1 + a2 - b - 1 < 0) continue;
                    const CVector c = cvector(P);
                    CHECK(cvector_unchecked(tau_params(P)).values == tau().apply(c.values));
                    CHECK(cvector_unchecked(sigma_params(P)).values == sigma().apply(c.values));
                    CHECK(sigma_params(sigma_params(P)) == P);
                    auto back = params_from_cvector(c);
                    REQUIRE(back);
                    CHECK(*back == Params(P));
                }

    // The order-120 images are recovered from c-values alone.
    const CVector d = cvector(ParamsZ2{6, 7, 8, 16, 17});
    int recovered = 0;
    for (const auto& g : group_zeta2().elements) {
        CVector gd = g.apply(d);
        if (params_from_cvector(gd)) ++recovered;
    }
    CHECK(recovered == 120);
}

TEST_CASE("nu_l by floors and by exact division")
{
    const CVector c = cvector(family("theorem1").at(1));
    const Group& G = arithmetic_group(FormKind::Zeta1);
    for (int l = 2; l <= 8; ++l) CHECK(nu_l(c, G, l) == nu_l_by_division(c, G, l));
    for (int l = 2; l <= 12; ++l) CHECK(nu_l(c, trivial_group(FormKind::Zeta1), l) == 0);
    CHECK(nu_l(c, G, c.m1() + 1) == 0);
    CHECK_THROWS(nu_l(c, G, 1));

    // Grid of tuples, all l <= m, full order-12 group included.
    for (const ParamsZ1& P : {ParamsZ1{9, 7, 9, 16}, ParamsZ1{5, 3, 4, 7}, ParamsZ1{6, 2, 5, 8}, ParamsZ1{7, 6, 7, 13}}) {
        const CVector v = cvector(P);
        for (int l = 2; l <= v.m1(); ++l) {
            CHECK(nu_l(v, G, l) == nu_l_by_division(v, G, l));
            CHECK(nu_l(v, full_group(FormKind::Zeta1), l) == nu_l_by_division(v, full_group(FormKind::Zeta1), l));
        }
    }
}

TEST_CASE("Omega")
{
    const OmegaResult bv = omega(cvector(family("bv").at(5)), arithmetic_group(FormKind::Zeta1));
    CHECK(bv.degree() == 0);

    const OmegaResult t6 = omega(cvector(family("theorem1").at(6)), arithmetic_group(FormKind::Zeta1));
    CHECK(t6.degree() > 0);
    CHECK(t6.group_order == 6);
    for (const auto& [l, v] : t6.nu) CHECK(v >= 0);

    // Order-120 exponents against the exhaustive maximum of exact orders.
    const CVector c2 = cvector(family("theorem2").at(2));
    const OmegaResult t2 = omega(c2, group_zeta2());
    CHECK(t2.group_order == 120);
    for (int l = 2; l <= c2.m1(); ++l) CHECK(t2.nu.at(l) == nu_l_by_division(c2, group_zeta2(), l));
    CHECK(t2.nu.count(c2.m1() + 1) == 0);
}

TEST_CASE("stability of H(c)/Pi_q(c)")
{
    const ParamsZ1 P{9, 7, 9, 16};
    StabilityResult id = stability_check(P, Perm::identity(FormKind::Zeta1), 2);
    CHECK(id.ok);

    StabilityResult s = stability_check(P, sigma(), 2);
    CHECK(s.admissible);
    CHECK(s.ok);
    CHECK(s.width < 1e-25);

    StabilityResult t2 = stability_check(P, tau().pow(2), 2);
    CHECK(t2.ok);

    // Every admissible element of the order-12 group.
    for (const ParamsZ1& Q : {P, family("theorem1").at(2).z1}) {
        int admissible = 0;
        for (const auto& g : full_group(FormKind::Zeta1).elements) {
            StabilityResult r = stability_check(Q, g, 2);
            if (!r.admissible) continue;
            ++admissible;
            CHECK(r.ok);
        }
        CHECK(admissible >= 6);
    }

    // Negative p: alternating summands, two-sided enclosures.
    CHECK(stability_check(P, sigma(), -3).ok);

    // Order-120 sweep at n = 1.
    int ok2 = 0;
    for (const auto& g : group_zeta2().elements) {
        StabilityResult r = stability_check(family("theorem2").at(1), g, 2);
        if (!r.admissible) continue;
        CHECK(r.ok);
        ++ok2;
    }
    CHECK(ok2 > 0);

    // A perturbed tuple is not stable: distinct c-vectors give distinct values.
    const Enclosure a = stability_quantity(ParamsZ1{9, 7, 9, 16}, 2, 200);
    const Enclosure b = stability_quantity(ParamsZ1{9, 7, 8, 16}, 2, 200);
    CHECK((a.hi < b.lo || b.hi < a.lo));
}
