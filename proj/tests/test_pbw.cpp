#include <doctest.h>

#include <random>

#include "hc/deform.hpp"
#include "hc/hopf.hpp"
#include "hc/pbw.hpp"
#include "support.hpp"

using namespace hc;
using namespace testing;

namespace {

Tensor sorted_mono(const RewriteSystem& rs, const std::vector<std::string>& labels, const Series& c) {
    Mono m;
    for (const auto& l : labels) m.push_back(static_cast<char>(rs.algebra().index_of(l)));
    return Tensor::term(1, m, c);
}

// Random automorphism x -> e^y x e^-y with y contractible and y = 0 mod lambda.
GenMap random_conjugation(std::mt19937_64& rng, const RsPtr& rs) {
    Tensor y = random_contractible(rng, *rs, 1, 4, 0);
    y -= y.component(0);
    Tensor e = exp_element(*rs, y), ei = exp_element(*rs, -y);
    GenMap m;
    m.source = m.target = rs;
    m.mode = ExtMode::Hom;
    for (int g = 0; g < rs->dim(); ++g) m.images.push_back(mul(*rs, mul(*rs, e, gen(*rs, g)), ei));
    return m;
}

bool map_contractible(const GenMap& m) {
    for (int g = 0; g < m.source->dim(); ++g)
        if (!contractibility_check(*m.target, m.images[g], m.source->is_p(g) ? 1 : 0).ok) return false;
    return true;
}

} // namespace

TEST_CASE("normal form examples") {
    auto iso3 = envelope("iso3", 0);
    CHECK(word(*iso3, {"P1", "N1"}) == sorted_mono(*iso3, {"N1", "P1"}, one(0)) - word(*iso3, {"E"}));
    CHECK(word(*iso3, {"M12", "P1"}) == sorted_mono(*iso3, {"M12", "P1"}, one(0)));
    CHECK(mul(*iso3, Tensor::unit(1, 0), word(*iso3, {"P2", "N2", "E"})) == word(*iso3, {"P2", "N2", "E"}));

    // [N_1, P_1] = kappa sinh(E / kappa) at N = 2
    RsPtr kp = kappa_rewrite_system(3, 2);
    Tensor expect = sorted_mono(*kp, {"N1", "P1"}, one(2)) - sorted_mono(*kp, {"E"}, one(2)) -
                    sorted_mono(*kp, {"E", "E", "E"}, Series::monomial(2, 2, Rational(1, 6)));
    CHECK(word(*kp, {"P1", "N1"}) == expect);
}

TEST_CASE("associativity on random words") {
    std::mt19937_64 rng(5);
    std::vector<RsPtr> systems{envelope("iso4", 2), envelope("so4", 2), kappa_rewrite_system(4, 3),
                               kappa_rewrite_system(3, 4)};
    for (const auto& rs : systems)
        for (int t = 0; t < 25; ++t) {
            Tensor u = random_element(rng, *rs, 2, 3), v = random_element(rng, *rs, 2, 3),
                   w = random_element(rng, *rs, 2, 3);
            CHECK(mul(*rs, mul(*rs, u, v), w) == mul(*rs, u, mul(*rs, v, w)));
            CHECK(mul(*rs, u, v + w) == mul(*rs, u, v) + mul(*rs, u, w));
        }
}

TEST_CASE("p-degree parity is conserved at order zero") {
    std::mt19937_64 rng(9);
    auto so5 = envelope("so5", 0);
    for (int t = 0; t < 40; ++t) {
        std::vector<int> w;
        int m = 0;
        const int len = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < len; ++i) {
            w.push_back(static_cast<int>(rng() % so5->dim()));
            if (so5->is_p(w.back())) ++m;
        }
        Tensor x = normal_form(*so5, w, one(0));
        for (const auto& [k, c] : x.terms()) {
            const int d = so5->p_degree(k);
            CHECK(d <= m);
            CHECK((m - d) % 2 == 0);
        }
    }
}

TEST_CASE("rewrite systems are validated") {
    LieAlgebraSpec iso3 = registry::get("iso3");
    const int N1 = iso3.index_of("N1"), P1 = iso3.index_of("P1"), P2 = iso3.index_of("P2"),
              E = iso3.index_of("E"), M = iso3.index_of("M12");
    RewriteSystem plain(iso3, 2);
    // [N1, P1] = E + lambda P2 breaks the diamond on (M12, N1, P1)-type words.
    std::map<std::pair<int, int>, Tensor> bad;
    bad[{P1, N1}] = -(gen(plain, E) + Tensor::term(1, std::string(1, static_cast<char>(P2)), lam(2)));
    try {
        RewriteSystem rs(iso3, 2, bad);
        FAIL("expected InvalidRewriteSystem");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidRewriteSystem);
    }
    // order-0 part must be the bracket
    std::map<std::pair<int, int>, Tensor> wrong0;
    wrong0[{P1, M}] = Tensor(1, 2);
    CHECK_THROWS_AS(RewriteSystem(iso3, 2, wrong0), Error);
    // generators must be ordered H before P
    LieAlgebraSpec mixed("mixed", {{"P", Parity::P}, {"H", Parity::H}});
    CHECK_THROWS_AS(RewriteSystem(mixed, 1), Error);
    // the kappa system itself is consistent
    CHECK(kappa_rewrite_system(3, 3)->diamond_check().empty());
    (void)N1;
}

TEST_CASE("exponential and inverse") {
    auto iso3 = envelope("iso3", 4);
    CHECK(exp_element(*iso3, Tensor(1, 4)) == Tensor::unit(1, 4));
    auto iso2 = envelope("iso3", 2);
    Tensor x = word(*iso2, {"E"}, Series::monomial(2, 1, Rational(1, 2)));
    Tensor expect = Tensor::unit(1, 2) + x + word(*iso2, {"E", "E"}, Series::monomial(2, 2, Rational(1, 8)));
    CHECK(exp_element(*iso2, x) == expect);
    Tensor y = word(*iso3, {"E"}, Series::monomial(4, 1, Rational(1, 2)));
    CHECK(mul(*iso3, exp_element(*iso3, y), exp_element(*iso3, -y)) == Tensor::unit(1, 4));

    std::mt19937_64 rng(13);
    RsPtr kp = kappa_rewrite_system(3, 3);
    for (int t = 0; t < 10; ++t) {
        Tensor z = random_element(rng, *kp, 3, 2);
        z -= z.component(0);
        Tensor u = Tensor::unit(1, 3) + z;
        Tensor ui = inverse(*kp, u);
        CHECK(mul(*kp, u, ui) == Tensor::unit(1, 3));
        CHECK(mul(*kp, ui, u) == Tensor::unit(1, 3));
        CHECK(mul(*kp, exp_element(*kp, z), exp_element(*kp, -z)) == Tensor::unit(1, 3));
        Tensor r2 = random_tensor(rng, *kp, 2, 2, 2);
        r2 -= r2.component(0);
        Tensor v = Tensor::unit(2, 3) + r2;
        CHECK(mul(*kp, v, inverse(*kp, v)) == Tensor::unit(2, 3));
    }
    CHECK_THROWS_AS(exp_element(*iso3, word(*iso3, {"E"})), Error);
    CHECK_THROWS_AS(inverse(*iso3, word(*iso3, {"E"})), Error);
}

TEST_CASE("generator maps") {
    auto iso3 = envelope("iso3", 1);
    const RewriteSystem& rs = *iso3;
    Tensor x = word(rs, {"N2", "P1", "E"});
    CHECK(apply(identity_map(iso3), x) == x);

    GenMap d0 = primitive_coproduct(iso3);
    Tensor p12 = apply(d0, word(rs, {"P1", "P2"}));
    CHECK(p12.size() == 4);
    CHECK(p12 == tp(word(rs, {"P1", "P2"}), Tensor::unit(1, 1)) + tp(word(rs, {"P1"}), word(rs, {"P2"})) +
                     tp(word(rs, {"P2"}), word(rs, {"P1"})) + tp(Tensor::unit(1, 1), word(rs, {"P1", "P2"})));

    // ad N1 as a derivation on E E
    GenMap ad;
    ad.source = ad.target = iso3;
    ad.mode = ExtMode::Derivation;
    for (int g = 0; g < rs.dim(); ++g) ad.images.push_back(commutator(rs, gen(rs, rs.algebra().index_of("N1")), gen(rs, g)));
    CHECK(apply(ad, word(rs, {"E", "E"})) == word(rs, {"E", "P1"}, Series::constant(1, 2)));
    CHECK(apply(ad, word(rs, {"E", "E"})) == word(rs, {"P1", "E"}) + word(rs, {"E", "P1"}));

    // antipode as anti-hom on commuting factors
    GenMap S;
    S.source = S.target = iso3;
    S.mode = ExtMode::AntiHom;
    for (int g = 0; g < rs.dim(); ++g) S.images.push_back(-gen(rs, g));
    CHECK(apply(S, word(rs, {"P1", "P2"})) == word(rs, {"P2", "P1"}));
    CHECK(apply(S, word(rs, {"P1", "N1"})) == word(rs, {"N1", "P1"}));
}

TEST_CASE("contractibility examples") {
    auto iso3 = envelope("iso3", 1);
    const RewriteSystem& rs = *iso3;
    Tensor x = tp(word(rs, {"P1"}, lam(1)), word(rs, {"P1"}));
    CHECK(contractibility_check(rs, x, 1).ok);
    auto r0 = contractibility_check(rs, x, 0);
    CHECK_FALSE(r0.ok);
    REQUIRE(r0.witnesses.size() == 1);
    CHECK(r0.witnesses[0].first == 1);

    Tensor y = tp(word(rs, {"P1", "P2"}, lam(1)), Tensor::unit(1, 1));
    auto ry = contractibility_check(rs, y, 0);
    CHECK_FALSE(ry.ok);
    REQUIRE(ry.witnesses.size() == 1);
    CHECK(ry.witnesses[0].first == 1);
    CHECK(rs.key_string(ry.witnesses[0].second) == "P1*P2 (x) 1");

    HopfSpec k = kappa_poincare(3, 3);
    CHECK(contractibility_check(*k.rs, k.delta.images[k.rs->algebra().index_of("N1")], 0).ok);
}

TEST_CASE("leg placement") {
    auto iso3 = envelope("iso3", 0);
    const RewriteSystem& rs = *iso3;
    Tensor a = word(rs, {"N1"}), b = word(rs, {"P2"}), u = Tensor::unit(1, 0);
    Tensor ab = tp(a, b);
    CHECK(leg_embed(ab, "12", 3) == tp(ab, u));
    CHECK(leg_embed(ab, "21", 2) == tp(b, a));
    CHECK(leg_embed(ab, "13", 3) == tp(tp(a, u), b));
    CHECK(leg_embed(ab, "23", 3) == tp(u, ab));
    CHECK_THROWS_AS(leg_embed(ab, "31", 2), Error);
}

TEST_CASE("Casimir of iso(3) is central") {
    auto iso3 = envelope("iso3", 0);
    const RewriteSystem& rs = *iso3;
    Tensor t = word(rs, {"M12", "E"}) - word(rs, {"N1", "P2"}) + word(rs, {"N2", "P1"});
    t *= 2;
    for (int g = 0; g < rs.dim(); ++g) CHECK(commutator(rs, t, gen(rs, g)).is_zero());
    // a single summand is not central
    Tensor m_only = word(rs, {"M12", "E"});
    CHECK_FALSE(commutator(rs, m_only, gen(rs, rs.algebra().index_of("N1"))).is_zero());
}

TEST_CASE("contractible maps compose and invert") {
    std::mt19937_64 rng(21);
    for (const auto& name : {"iso3", "so4"}) {
        auto rs = envelope(name, 3);
        for (int t = 0; t < 5; ++t) {
            GenMap phi = random_conjugation(rng, rs), psi = random_conjugation(rng, rs);
            CHECK(map_contractible(phi));
            CHECK(map_contractible(compose(phi, psi)));
            GenMap inv = inverse_hom(phi);
            CHECK(map_contractible(inv));
            GenMap id = compose(phi, inv);
            for (int g = 0; g < rs->dim(); ++g) CHECK(id.images[g] == gen(*rs, g));
        }
    }
}
