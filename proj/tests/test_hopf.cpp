#include <doctest.h>

#include <random>

#include "hc/deform.hpp"
#include "hc/hopf.hpp"
#include "support.hpp"

using namespace hc;
using namespace testing;

namespace {

int idx(const RewriteSystem& rs, const std::string& l) { return rs.algebra().index_of(l); }

bool all_pass(const AxiomReport& r) {
    for (const auto& c : r.checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        CHECK(c.ok);
    }
    return r.ok();
}

HopfSpec with_structure(const RsPtr& rs, const GenMap& delta, const Tensor& R, const Tensor& Phi) {
    HopfSpec h = canonical_hopf(rs);
    h.delta = delta;
    h.R = R;
    h.Phi = Phi;
    return h;
}

} // namespace

TEST_CASE("canonical envelopes are Hopf algebras") {
    for (const auto& name : registry::names()) {
        CAPTURE(name);
        LieAlgebraSpec a = registry::get(name);
        if (!a.pbw_ordered()) a = a.pbw_reordered();
        HopfSpec h = canonical_hopf(std::make_shared<const RewriteSystem>(a, 2));
        SampleConfig sc;
        sc.samples = 20;
        CHECK(all_pass(check_hopf_axioms(h, sc)));
    }
    auto iso3 = envelope("iso3", 0);
    HopfSpec h = canonical_hopf(iso3);
    const RewriteSystem& rs = *iso3;
    CHECK(h.delta.images[idx(rs, "P1")] == tp(word(rs, {"P1"}), Tensor::unit(1, 0)) +
                                                tp(Tensor::unit(1, 0), word(rs, {"P1"})));
    CHECK(apply(h.antipode, word(rs, {"P1", "P2"})) == word(rs, {"P1", "P2"}));
    CHECK(counit_of(h.counit, "", 0) == one(0));
    Tensor nm = word(rs, {"N1", "M12"});
    for (const auto& [k, c] : nm.terms()) CHECK(counit_of(h.counit, k, 0).is_zero());
    CHECK_THROWS_AS(canonical_hopf(kappa_rewrite_system(3, 2)), Error);
}

TEST_CASE("kappa-Poincare structure maps") {
    HopfSpec h = kappa_poincare(3, 1);
    const RewriteSystem& rs = *h.rs;
    Tensor u = Tensor::unit(1, 1);
    CHECK(h.delta.images[idx(rs, "E")] == tp(word(rs, {"E"}), u) + tp(u, word(rs, {"E"})));
    Tensor half = word(rs, {"E"}, Series::monomial(1, 1, Rational(1, 2)));
    Tensor p1 = word(rs, {"P1"});
    CHECK(h.delta.images[idx(rs, "P1")] == tp(p1, u) + tp(u, p1) + tp(p1, half) - tp(half, p1));
    CHECK(h.antipode.images[idx(rs, "P1")] == -p1);
    CHECK(h.antipode.images[idx(rs, "M12")] == -word(rs, {"M12"}));
    CHECK(h.antipode.images[idx(rs, "E")] == -word(rs, {"E"}));
}

TEST_CASE("kappa-Poincare passes the Hopf axioms") {
    for (int n : {3, 4}) {
        CAPTURE(n);
        HopfSpec h = kappa_poincare(n, 3);
        SampleConfig sc;
        sc.samples = 15;
        CHECK(all_pass(check_hopf_axioms(h, sc)));
        CHECK(h.parameters.at("d") == n - 1);
    }
}

TEST_CASE("dropping the boost-rotation term breaks relation compatibility") {
    KappaOptions opt;
    opt.drop_boost_rotation_term = true;
    HopfSpec h = kappa_poincare(4, 1, opt);
    SampleConfig sc;
    sc.samples = 0;
    AxiomReport r = check_hopf_axioms(h, sc);
    const AxiomCheck* rel = r.find("relations");
    REQUIRE(rel != nullptr);
    CHECK_FALSE(rel->ok);
    CHECK(rel->order == 1);
    CHECK_FALSE(rel->witness.empty());
}

TEST_CASE("quasi-Hopf checks") {
    auto iso3 = envelope("iso3", 2);
    const RewriteSystem& rs = *iso3;
    HopfSpec h = canonical_hopf(iso3);
    h.Phi = Tensor::unit(3, 2);
    CHECK(all_pass(check_quasi_hopf(h)));

    // E is not central in U(iso(3)) ([N1, E] = P1), so E(x)E(x)E breaks quasi-coassociativity.
    Tensor e = word(rs, {"E"});
    h.Phi = Tensor::unit(3, 2) + tp(tp(e, e), e).scaled(lam(2));
    AxiomReport re = check_quasi_hopf(h);
    CHECK_FALSE(re.find("quasi_coassociativity")->ok);
    CHECK(re.find("quasi_coassociativity")->order == 1);

    // With the central Casimir t, only the pentagon fails.
    Tensor t = word(rs, {"M12", "E"}) - word(rs, {"N1", "P2"}) + word(rs, {"N2", "P1"});
    h.Phi = Tensor::unit(3, 2) + tp(tp(t, t), t).scaled(lam(2));
    AxiomReport r = check_quasi_hopf(h);
    CHECK(r.find("quasi_coassociativity")->ok);
    CHECK(r.find("counit_normalization")->ok);
    CHECK_FALSE(r.find("pentagon")->ok);
    CHECK_FALSE(r.find("pentagon")->witness.empty());

    HopfSpec none = canonical_hopf(iso3);
    CHECK_THROWS_AS(check_quasi_hopf(none), Error);
    CHECK_THROWS_AS(check_triangular(none), Error);
}

TEST_CASE("triangular checks") {
    auto iso3 = envelope("iso3", 3);
    const RewriteSystem& rs = *iso3;
    HopfSpec h = canonical_hopf(iso3);
    h.R = Tensor::unit(2, 3);
    CHECK(all_pass(check_triangular(h)));

    Tensor e = word(rs, {"E"}), p1 = word(rs, {"P1"});
    Tensor x = (tp(e, p1) - tp(p1, e)).scaled(lam(3));
    h.R = exp_element(rs, x);
    CHECK(check_triangular(h).find("triangularity")->ok);
}

TEST_CASE("twisting the trivial structure satisfies every quasi-Hopf axiom") {
    std::mt19937_64 rng(20240917);
    for (const auto& name : {"iso3", "sl2"}) {
        CAPTURE(name);
        auto rs = envelope(name, 2);
        Tensor f = random_tensor(rng, *rs, 2, 4, 2);
        f -= f.component(0);
        // counital: no term with a unit leg
        Tensor F = Tensor::unit(2, 2);
        for (const auto& [k, c] : f.terms()) {
            auto legs = split_legs(k);
            if (!legs[0].empty() && !legs[1].empty()) F.add(k, c);
        }
        REQUIRE(F.size() > 1);
        GenMap d0 = primitive_coproduct(rs);
        GenMap dF = twisted_coproduct(*rs, F, d0);
        QtqhPair q = twist_qtqh(*rs, F, Tensor::unit(2, 2), Tensor::unit(3, 2), d0);
        HopfSpec h = with_structure(rs, dF, q.R, q.Phi);
        CHECK(all_pass(check_quasi_hopf(h)));
        CHECK(all_pass(check_triangular(h)));
        CHECK(hom_violation(dF).empty());
    }
}

TEST_CASE("twist_qtqh examples") {
    auto iso3 = envelope("iso3", 3);
    const RewriteSystem& rs = *iso3;
    GenMap d0 = primitive_coproduct(iso3);
    QtqhPair triv = twist_qtqh(rs, Tensor::unit(2, 3), Tensor::unit(2, 3), Tensor::unit(3, 3), d0);
    CHECK(triv.R == Tensor::unit(2, 3));
    CHECK(triv.Phi == Tensor::unit(3, 3));

    Tensor e = word(rs, {"E"}), p1 = word(rs, {"P1"});
    Tensor F = exp_element(rs, tp(e, p1).scaled(lam(3)));
    QtqhPair ab = twist_qtqh(rs, F, Tensor::unit(2, 3), Tensor::unit(3, 3), d0);
    CHECK(ab.Phi == Tensor::unit(3, 3));
    CHECK(ab.R == exp_element(rs, (tp(p1, e) - tp(e, p1)).scaled(lam(3))));

    Tensor n1 = word(rs, {"N1"});
    Tensor G = Tensor::unit(2, 3) + tp(n1, p1).scaled(lam(3));
    QtqhPair g = twist_qtqh(rs, G, Tensor::unit(2, 3), Tensor::unit(3, 3), d0);
    CHECK(g.Phi != Tensor::unit(3, 3));
    CHECK((g.Phi - Tensor::unit(3, 3)).valuation() == 2);
    HopfSpec h = canonical_hopf(iso3);
    CHECK(apply_counit_on_leg(h.counit, g.Phi, 1) == Tensor::unit(2, 3));
}

TEST_CASE("first_difference and flip") {
    auto iso3 = envelope("iso3", 1);
    const RewriteSystem& rs = *iso3;
    Tensor a = tp(word(rs, {"N1"}), word(rs, {"P1"}));
    CHECK_FALSE(first_difference(a, a).has_value());
    auto d = first_difference(a, flip(a));
    REQUIRE(d.has_value());
    CHECK(d->order == 0);
    CHECK(flip(flip(a)) == a);
}
