#include "hc/hopf.hpp"

#include <functional>
#include <random>

#include "hc/parallel.hpp"

namespace hc {

bool AxiomReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::optional<Difference> first_difference(const Tensor& a, const Tensor& b) {
    Tensor d = a - b;
    if (d.is_zero()) return std::nullopt;
    const int v = d.valuation();
    for (const auto& k : d.sorted_keys())
        if (sgn(d.terms().at(k)[v]) != 0) return Difference{k, v};
    return Difference{d.sorted_keys().front(), v};
}

Tensor flip(const Tensor& x) { return embed(x, {1, 0}, 2); }

Tensor delta_on_leg(const HopfSpec& h, const Tensor& x, int leg) { return apply_on_leg(h.delta, x, leg); }

HopfSpec canonical_hopf(const RsPtr& rs) {
    if (rs->deformed()) throw Error(Errc::DeformedInput, "canonical_hopf needs an undeformed envelope");
    HopfSpec h;
    h.name = rs->algebra().name();
    h.rs = rs;
    const int N = rs->order();
    h.delta.source = h.delta.target = rs;
    h.delta.mode = ExtMode::Hom;
    h.delta.target_rank = 2;
    h.antipode.source = h.antipode.target = rs;
    h.antipode.mode = ExtMode::AntiHom;
    h.antipode.target_rank = 1;
    for (int g = 0; g < rs->dim(); ++g) {
        h.delta.images.push_back(gen(*rs, g, 2, 0) + gen(*rs, g, 2, 1));
        h.antipode.images.push_back(-gen(*rs, g));
        h.counit.push_back(Series(N));
    }
    return h;
}

namespace {

class Recorder {
public:
    Recorder(AxiomReport& rep, const RewriteSystem& rs) : rep_(rep), rs_(rs) {}

    AxiomCheck& check(const std::string& name) {
        for (auto& c : rep_.checks)
            if (c.name == name) return c;
        rep_.checks.push_back(AxiomCheck{name, true, {}, {}, -1});
        return rep_.checks.back();
    }
    void declare(const std::string& name) { check(name); }

    void record(const std::string& name, const std::string& where, const std::optional<Difference>& d) {
        AxiomCheck& c = check(name);
        if (!c.ok || !d) return; // keep the first witness
        c.ok = false;
        c.witness = rs_.key_string(d->key);
        c.where = where;
        c.order = d->order;
    }
    void compare(const std::string& name, const std::string& where, const Tensor& a, const Tensor& b) {
        record(name, where, first_difference(a, b));
    }

private:
    AxiomReport& rep_;
    const RewriteSystem& rs_;
};

struct Finding {
    const char* name;
    std::string where;
    std::optional<Difference> diff;
};
using Findings = std::vector<Finding>;

Series counit_value(const HopfSpec& h, const Tensor& x) {
    Series s(h.rs->order());
    for (const auto& [k, c] : x.terms()) s += c * counit_of(h.counit, k, h.rs->order());
    return s;
}

void check_element(const HopfSpec& h, Findings& out, const std::string& where, const Tensor& x, const Tensor& dx) {
    const RewriteSystem& rs = *h.rs;
    auto cmp = [&](const char* name, const Tensor& a, const Tensor& b) {
        out.push_back({name, where, first_difference(a, b)});
    };
    cmp("coassociativity", apply_on_leg(h.delta, dx, 0), apply_on_leg(h.delta, dx, 1));
    cmp("counit", apply_counit_on_leg(h.counit, dx, 0), x);
    cmp("counit", apply_counit_on_leg(h.counit, dx, 1), x);
    Tensor eps1 = Tensor::scalar(1, counit_value(h, x));
    cmp("antipode", multiply_legs(rs, apply_on_leg(h.antipode, dx, 0)), eps1);
    cmp("antipode", multiply_legs(rs, apply_on_leg(h.antipode, dx, 1)), eps1);
}

} // namespace

AxiomReport check_hopf_axioms(const HopfSpec& h, const SampleConfig& cfg) {
    AxiomReport rep;
    const RewriteSystem& rs = *h.rs;
    Recorder rec(rep, rs);
    for (const char* n : {"relations", "coassociativity", "counit", "antipode"}) rec.declare(n);
    const int dim = rs.dim();
    const auto& D = h.delta.images;

    // Jobs run in parallel; findings are recorded in job order.
    std::vector<std::function<Findings()>> jobs;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < a; ++b)
            jobs.push_back([&, a, b] {
                Tensor lhs = mul(rs, D[a], D[b]) - mul(rs, D[b], D[a]);
                return Findings{{"relations", rs.algebra().label(a) + "," + rs.algebra().label(b),
                                 first_difference(lhs, apply(h.delta, rs.correction(a, b)))}};
            });
    for (int g = 0; g < dim; ++g)
        jobs.push_back([&, g] {
            Findings f;
            check_element(h, f, rs.algebra().label(g), gen(rs, g), D[g]);
            return f;
        });

    std::mt19937_64 rng(cfg.seed);
    for (int s = 0; s < cfg.samples; ++s) {
        const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.max_degree));
        std::vector<int> word;
        std::string where;
        for (int i = 0; i < len; ++i) {
            word.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(dim)));
            where += (i ? "*" : "") + rs.algebra().label(word.back());
        }
        jobs.push_back([&, word, where] {
            Tensor x = normal_form(rs, word, Series::constant(rs.order(), 1));
            Tensor dx = apply(h.delta, x);
            Tensor prod = Tensor::unit(2, rs.order());
            for (int g : word) prod = mul(rs, prod, D[g]);
            Findings f{{"relations", where, first_difference(dx, prod)}};
            check_element(h, f, where, x, dx);
            return f;
        });
    }
    std::vector<Findings> results(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), [&](int i) { results[i] = jobs[i](); });
    for (const auto& fs : results)
        for (const auto& f : fs) rec.record(f.name, f.where, f.diff);
    return rep;
}

AxiomReport check_quasi_hopf(const HopfSpec& h) {
    if (!h.Phi) throw Error(Errc::MissingCoassociator, "no coassociator present");
    const Tensor& Phi = *h.Phi;
    const RewriteSystem& rs = *h.rs;
    AxiomReport rep;
    Recorder rec(rep, rs);
    for (const char* n : {"quasi_coassociativity", "pentagon", "counit_normalization"}) rec.declare(n);
    for (int g = 0; g < rs.dim(); ++g) {
        const Tensor& dg = h.delta.images[g];
        Tensor left = apply_on_leg(h.delta, dg, 0);  // (D x id) D
        Tensor right = apply_on_leg(h.delta, dg, 1); // (id x D) D
        rec.compare("quasi_coassociativity", rs.algebra().label(g), mul(rs, Phi, right), mul(rs, left, Phi));
    }
    Tensor lhs = mul(rs, apply_on_leg(h.delta, Phi, 0), apply_on_leg(h.delta, Phi, 2));
    Tensor rhs = mul(rs, mul(rs, embed(Phi, {0, 1, 2}, 4), apply_on_leg(h.delta, Phi, 1)), embed(Phi, {1, 2, 3}, 4));
    rec.compare("pentagon", "Phi", lhs, rhs);
    rec.compare("counit_normalization", "Phi", apply_counit_on_leg(h.counit, Phi, 1), Tensor::unit(2, rs.order()));
    return rep;
}

AxiomReport check_triangular(const HopfSpec& h) {
    if (!h.R) throw Error(Errc::MissingR, "no R-matrix present");
    const Tensor& R = *h.R;
    const RewriteSystem& rs = *h.rs;
    AxiomReport rep;
    Recorder rec(rep, rs);
    rec.declare("intertwining");
    rec.declare("triangularity");
    for (int g = 0; g < rs.dim(); ++g) {
        const Tensor& dg = h.delta.images[g];
        rec.compare("intertwining", rs.algebra().label(g), mul(rs, R, dg), mul(rs, flip(dg), R));
    }
    rec.compare("triangularity", "R", mul(rs, flip(R), R), Tensor::unit(2, rs.order()));
    if (h.Phi) {
        // Hexagons for Phi (id x D)D = (D x id)D Phi. Phi_{ijk} sends leg 1 of
        // Phi to slot i, leg 2 to slot j and leg 3 to slot k.
        rec.declare("hexagon1");
        rec.declare("hexagon2");
        const Tensor& Phi = *h.Phi;
        Tensor Pinv = inverse(rs, Phi);
        auto perm = [](const Tensor& x, std::vector<int> slot_of_leg) { return embed(x, slot_of_leg, 3); };
        const Tensor R12 = leg_embed(R, "12", 3), R13 = leg_embed(R, "13", 3), R23 = leg_embed(R, "23", 3);
        // (D x id)(R) = Phi^-1_{312} R_13 Phi_{132} R_23 Phi^-1
        Tensor h1 = mul(rs, perm(Pinv, {2, 0, 1}), R13);
        h1 = mul(rs, h1, perm(Phi, {0, 2, 1}));
        h1 = mul(rs, mul(rs, h1, R23), Pinv);
        rec.compare("hexagon1", "R", apply_on_leg(h.delta, R, 0), h1);
        // (id x D)(R) = Phi_{231} R_13 Phi^-1_{213} R_12 Phi
        Tensor h2 = mul(rs, perm(Phi, {1, 2, 0}), R13);
        h2 = mul(rs, h2, perm(Pinv, {1, 0, 2}));
        h2 = mul(rs, mul(rs, h2, R12), Phi);
        rec.compare("hexagon2", "R", apply_on_leg(h.delta, R, 1), h2);
    }
    return rep;
}

// ------------------------------------------------------------ kappa-Poincare

namespace {

struct KappaIdx {
    int n;
    const LieAlgebraSpec* alg;
    int N(int i) const { return alg->index_of("N" + std::to_string(i)); }
    int P(int i) const { return alg->index_of("P" + std::to_string(i)); }
    int E() const { return alg->index_of("E"); }
    // M_ij as (index, sign); index -1 when i == j.
    std::pair<int, int> M(int i, int j) const {
        if (i == j) return {-1, 0};
        if (i < j) return {alg->index_of("M" + std::to_string(i) + std::to_string(j)), 1};
        return {alg->index_of("M" + std::to_string(j) + std::to_string(i)), -1};
    }
};

Rational factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

Mono power_mono(int g, int k) { return Mono(static_cast<size_t>(k), static_cast<char>(g)); }

// exp(s * lambda * E) as an element: sum (s lambda)^k E^k / k!
Tensor exp_e(int e, const Rational& s, int N) {
    Tensor t(1, N);
    Rational p = 1;
    for (int k = 0; k <= N; ++k) {
        t.add(power_mono(e, k), Series::monomial(N, k, p / factorial(k)));
        p *= s;
    }
    return t;
}

} // namespace

RsPtr kappa_rewrite_system(int n, int N) {
    if (n != 3 && n != 4) throw Error(Errc::BadDimension, "kappa-Poincare is built for n = 3, 4 only");
    LieAlgebraSpec alg = registry::iso_kappa(n);
    alg.set_name("kappa-poincare-" + std::to_string(n));
    const RewriteSystem plain(alg, N);
    KappaIdx k{n, &alg};
    const int s = n - 1;
    const int e = k.E();
    std::map<std::pair<int, int>, Tensor> corr;
    // [P_i, N_i] = -kappa sinh(E/kappa) = -sum lambda^{2m} E^{2m+1}/(2m+1)!
    for (int i = 1; i <= s; ++i) {
        Tensor t(1, N);
        for (int m = 0; 2 * m <= N; ++m)
            t.add(power_mono(e, 2 * m + 1), Series::monomial(N, 2 * m, Rational(-1) / factorial(2 * m + 1)));
        corr[{k.P(i), k.N(i)}] = t;
    }
    // [N_j, N_i] = M_ij cosh(E/kappa) - (1/4kappa^2)(P.P M_ij + P_k P_i M_jk - P_k P_j M_ik), i < j
    for (int i = 1; i <= s; ++i)
        for (int j = i + 1; j <= s; ++j) {
            Tensor t(1, N);
            auto [mij, sij] = k.M(i, j);
            for (int m = 0; 2 * m <= N; ++m) {
                Mono mono = Mono(1, static_cast<char>(mij)) + power_mono(e, 2 * m);
                t.add(mono, Series::monomial(N, 2 * m, Rational(sij) / factorial(2 * m)));
            }
            if (N >= 2) {
                const Series q = Series::monomial(N, 2, Rational(-1, 4));
                auto word = [&](int a, int b, std::pair<int, int> mm) {
                    if (mm.first < 0) return;
                    t += normal_form(plain, std::vector<int>{a, b, mm.first}, q * Rational(mm.second));
                };
                for (int kk = 1; kk <= s; ++kk) {
                    word(k.P(kk), k.P(kk), {mij, sij});
                    auto [mjk, sjk] = k.M(j, kk);
                    word(k.P(kk), k.P(i), {mjk, sjk});
                    auto [mik, sik] = k.M(i, kk);
                    word(k.P(kk), k.P(j), {mik, -sik});
                }
            }
            corr[{k.N(j), k.N(i)}] = t;
        }
    return std::make_shared<const RewriteSystem>(alg, N, corr);
}

HopfSpec kappa_poincare(int n, int N, const KappaOptions& opt) {
    RsPtr rs = kappa_rewrite_system(n, N);
    const RewriteSystem& r = *rs;
    const LieAlgebraSpec& alg = r.algebra();
    KappaIdx k{n, &alg};
    const int s = n - 1;
    const int e = k.E();
    HopfSpec h;
    h.name = alg.name();
    h.rs = rs;
    h.p_contractible = true;
    h.delta.source = h.delta.target = rs;
    h.delta.mode = ExtMode::Hom;
    h.delta.target_rank = 2;
    h.delta.images.assign(r.dim(), Tensor(2, N));
    h.counit.assign(r.dim(), Series(N));

    const Tensor ep = exp_e(e, Rational(1, 2), N), em = exp_e(e, Rational(-1, 2), N);
    const Series half_lambda = Series::monomial(N, 1, Rational(1, 2));
    auto prim = [&](int g) { return gen(r, g, 2, 0) + gen(r, g, 2, 1); };
    for (int g = 0; g < r.dim(); ++g)
        if (alg.label(g)[0] == 'M') h.delta.images[g] = prim(g);
    h.delta.images[e] = prim(e);
    for (int i = 1; i <= s; ++i) {
        const Tensor Pi = gen(r, k.P(i)), Ni = gen(r, k.N(i));
        h.delta.images[k.P(i)] = tensor_product(Pi, ep) + tensor_product(em, Pi);
        Tensor dn = tensor_product(Ni, ep) + tensor_product(em, Ni);
        if (!opt.drop_boost_rotation_term) {
            Tensor extra(2, N);
            for (int j = 1; j <= s; ++j) {
                auto [m, sg] = k.M(i, j);
                if (m < 0) continue;
                Tensor Mij = gen(r, m);
                Mij *= Rational(sg);
                const Tensor Pj = gen(r, k.P(j));
                extra += tensor_product(Pj, mul(r, ep, Mij));
                extra -= tensor_product(mul(r, em, Mij), Pj);
            }
            dn += extra.scaled(half_lambda);
        }
        h.delta.images[k.N(i)] = dn;
    }

    // Antipode with S(N_i) = -N_i + (d lambda / 2) P_i; d is fixed by m(S x id)D(N_1) = 0,
    // which is affine in d.
    auto antipode_for = [&](const Rational& d) {
        GenMap S;
        S.source = S.target = rs;
        S.mode = ExtMode::AntiHom;
        S.target_rank = 1;
        for (int g = 0; g < r.dim(); ++g) S.images.push_back(-gen(r, g));
        for (int i = 1; i <= s; ++i)
            S.images[k.N(i)] += gen(r, k.P(i)).scaled(Series::monomial(N, 1, d / 2));
        return S;
    };
    auto residual = [&](const GenMap& S) {
        return multiply_legs(r, apply_on_leg(S, h.delta.images[k.N(1)], 0));
    };
    Rational d = 0;
    if (N >= 1) {
        Tensor r0 = residual(antipode_for(0));
        Tensor slope = residual(antipode_for(1)) - r0;
        bool found = false;
        for (const auto& key : slope.sorted_keys()) {
            const Series& c = slope.terms().at(key);
            for (int j = 0; j <= N && !found; ++j)
                if (sgn(c[j]) != 0) {
                    d = -r0.coeff(key)[j] / c[j];
                    found = true;
                }
            if (found) break;
        }
    }
    h.antipode = antipode_for(d);
    h.parameters["d"] = d;
    return h;
}

} // namespace hc
