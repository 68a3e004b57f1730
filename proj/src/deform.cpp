#include "hc/deform.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "hc/linalg.hpp"

namespace hc {

// ----------------------------------------------------------- isomorphism

std::vector<Tensor> iso_residuals(const GenMap& phi) {
    const RewriteSystem& S = *phi.source;
    const RewriteSystem& T = *phi.target;
    std::vector<Tensor> out;
    for (int a = 0; a < S.dim(); ++a)
        for (int b = 0; b < a; ++b) {
            const Tensor& pa = phi.images[a];
            const Tensor& pb = phi.images[b];
            out.push_back(mul(T, pa, pb) - mul(T, pb, pa) - apply(phi, S.correction(a, b)));
        }
    return out;
}

namespace {

void enumerate_monos(const RewriteSystem& rs, int max_deg, int max_p, std::vector<Mono>& out) {
    Mono cur;
    std::function<void(int)> rec = [&](int start) {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_deg) return;
        for (int g = start; g < rs.dim(); ++g) {
            cur.push_back(static_cast<char>(g));
            if (rs.p_degree(cur) <= max_p) rec(g);
            cur.pop_back();
        }
    };
    rec(0);
}

std::string pair_key(int a, int b, const std::string& key) {
    std::string k;
    k.push_back(static_cast<char>(a));
    k.push_back(static_cast<char>(b));
    k += key;
    return k;
}

// One order of the isomorphism recursion; returns false if no solution with
// total degree <= L.
bool solve_iso_order(const RewriteSystem& S, const RewriteSystem& T, int n, int L, bool exact,
                     const std::vector<Tensor>& res, std::vector<Tensor>& phi_images, IsoOrderDiag& diag) {
    const int dim = T.dim();
    const int N = T.order();
    struct Col {
        int c;
        Mono m;
    };
    std::vector<Mono> monos;
    enumerate_monos(T, L, n + 1, monos);
    std::vector<Col> cols;
    for (const auto& m : monos)
        for (int c = 0; c < dim; ++c) {
            if (m.empty()) continue; // constants never enter: phi(g) has no scalar part
            const int want = n + (T.is_p(c) ? 1 : 0);
            const int p = T.p_degree(m);
            if (exact ? p != want : p > want) continue;
            cols.push_back({c, m});
        }
    std::sort(cols.begin(), cols.end(), [](const Col& x, const Col& y) {
        if (x.m.size() != y.m.size()) return x.m.size() < y.m.size();
        if (x.c != y.c) return x.c < y.c;
        return x.m < y.m;
    });
    const int ncols = static_cast<int>(cols.size());
    std::unordered_map<std::string, std::vector<Tensor>> comm_cache; // m -> [m, g] for all g
    auto comms = [&](const Mono& m) -> const std::vector<Tensor>& {
        auto it = comm_cache.find(m);
        if (it != comm_cache.end()) return it->second;
        std::vector<Tensor> v;
        Tensor tm = Tensor::term(1, m, Series::constant(N, 1));
        for (int g = 0; g < dim; ++g) v.push_back(commutator(T, tm, gen(T, g)));
        return comm_cache.emplace(m, std::move(v)).first->second;
    };
    std::unordered_map<std::string, int> row_of;
    std::vector<SparseVec> rows;
    auto entry = [&](const std::string& rk, int col, const Rational& v) {
        auto [it, fresh] = row_of.try_emplace(rk, static_cast<int>(rows.size()));
        if (fresh) rows.emplace_back();
        SparseVec& r = rows[it->second];
        if (!r.empty() && r.back().first == col) r.back().second += v;
        else r.emplace_back(col, v);
    };
    const LieAlgebraSpec& alg = T.algebra();
    for (int j = 0; j < ncols; ++j) {
        const int c = cols[j].c;
        const Mono& m = cols[j].m;
        const auto& cm = comms(m);
        for (int b = 0; b < c; ++b) // pair (c, b): [m, g_b]
            for (const auto& [k, s] : cm[b].terms()) entry(pair_key(c, b, k), j, s[0]);
        for (int a = c + 1; a < dim; ++a) // pair (a, c): [g_a, m] = -[m, g_a]
            for (const auto& [k, s] : cm[a].terms()) entry(pair_key(a, c, k), j, -s[0]);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < a; ++b) {
                const Rational& cc = alg.c(a, b, c);
                if (sgn(cc) != 0) entry(pair_key(a, b, m), j, -cc);
            }
    }
    for (auto& r : rows) sparse_normalize(r);
    // right-hand side: minus the order-n residual
    int idx = 0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < a; ++b, ++idx)
            for (const auto& [k, s] : res[idx].terms()) {
                if (sgn(s[n]) == 0) continue;
                auto [it, fresh] = row_of.try_emplace(pair_key(a, b, k), static_cast<int>(rows.size()));
                if (fresh) rows.emplace_back();
                rows[it->second].emplace_back(ncols, -s[n]);
            }
    Echelon ech(ncols + 1);
    ech.set_rhs_col(ncols);
    for (auto& r : rows) ech.add_row(std::move(r));
    diag.columns = ncols;
    diag.degree_cap = L;
    if (ech.inconsistent()) return false;
    diag.rank = ech.rank();
    auto x = ech.solve_augmented(ncols);
    for (const auto& [j, v] : *x) phi_images[cols[j].c].add(cols[j].m, Series::monomial(N, n, v));
    (void)S;
    return true;
}

} // namespace

IsoResult solve_isomorphism(const RsPtr& deformed, const RsPtr& target, const IsoCaps& caps) {
    const RewriteSystem& S = *deformed;
    const RewriteSystem& T = *target;
    if (S.dim() != T.dim() || S.order() != T.order())
        throw Error(Errc::GeneratorMismatch, "generator sets or truncations differ");
    for (int g = 0; g < S.dim(); ++g)
        if (S.algebra().label(g) != T.algebra().label(g))
            throw Error(Errc::GeneratorMismatch, "generator " + S.algebra().label(g) + " vs " + T.algebra().label(g));
    for (int a = 0; a < S.dim(); ++a)
        for (int b = 0; b < a; ++b)
            if (!(S.correction(a, b).component(0) == T.correction(a, b).component(0)))
                throw Error(Errc::GeneratorMismatch, "order-0 brackets differ at (" + S.algebra().label(a) + "," +
                                                         S.algebra().label(b) + ")");
    const int N = T.order();
    IsoResult res;
    res.phi.source = deformed;
    res.phi.target = target;
    res.phi.mode = ExtMode::Hom;
    res.phi.target_rank = 1;
    for (int g = 0; g < T.dim(); ++g) res.phi.images.push_back(gen(T, g));
    const bool exact = S.weight_graded() && T.p_graded();
    for (int n = 1; n <= N; ++n) {
        std::vector<Tensor> r = iso_residuals(res.phi);
        IsoOrderDiag d;
        d.order = n;
        bool zero = true;
        for (const auto& t : r) {
            if (t.valuation() < n) throw Error(Errc::NoSolutionWithinCaps, "residual below the current order");
            if (t.valuation() == n) zero = false;
        }
        d.residual_zero = zero;
        if (!zero) {
            bool ok = false;
            for (int L = std::max(caps.degree_start, n + 1); L <= caps.degree_max && !ok; ++L)
                ok = solve_iso_order(S, T, n, L, exact, r, res.phi.images, d);
            if (!ok)
                throw Error(Errc::NoSolutionWithinCaps, "isomorphism order " + std::to_string(n) + " needs degree > " +
                                                            std::to_string(caps.degree_max));
        }
        res.diag.push_back(d);
    }
    for (const auto& t : iso_residuals(res.phi))
        if (!t.is_zero()) throw Error(Errc::NoSolutionWithinCaps, "isomorphism failed re-verification");
    for (int g = 0; g < T.dim(); ++g) {
        auto c = contractibility_check(T, res.phi.images[g], T.is_p(g) ? 1 : 0);
        if (!c.ok) throw Error(Errc::NoSolutionWithinCaps, "isomorphism image of " + T.algebra().label(g) + " not contractible");
    }
    (void)N;
    res.inverse = inverse_hom(res.phi);
    return res;
}

// ------------------------------------------------------------- pull-back

std::string hom_violation(const GenMap& delta) {
    const RewriteSystem& S = *delta.source;
    const RewriteSystem& T = *delta.target;
    const auto& D = delta.images;
    for (int a = 0; a < S.dim(); ++a)
        for (int b = 0; b < a; ++b)
            if (!(mul(T, D[a], D[b]) - mul(T, D[b], D[a]) == apply(delta, S.correction(a, b))))
                return S.algebra().label(a) + "," + S.algebra().label(b);
    return {};
}

GenMap primitive_coproduct(const RsPtr& rs) {
    GenMap d;
    d.source = d.target = rs;
    d.mode = ExtMode::Hom;
    d.target_rank = 2;
    for (int g = 0; g < rs->dim(); ++g) d.images.push_back(gen(*rs, g, 2, 0) + gen(*rs, g, 2, 1));
    return d;
}

GenMap pull_back_coproduct(const HopfSpec& h, const IsoResult& iso) {
    if (iso.phi.source.get() != h.rs.get() && !(iso.phi.source->algebra().same_structure(h.rs->algebra())))
        throw Error(Errc::IncompatibleIso, "isomorphism was solved for a different rewrite system");
    const RsPtr& T = iso.phi.target;
    GenMap out;
    out.source = out.target = T;
    out.mode = ExtMode::Hom;
    out.target_rank = 2;
    for (int g = 0; g < T->dim(); ++g) {
        Tensor dk = apply(h.delta, iso.inverse.images[g]);
        out.images.push_back(apply_legwise(iso.phi, dk));
    }
    std::string bad = hom_violation(out);
    if (!bad.empty()) throw Error(Errc::IncompatibleIso, "pulled-back coproduct is not a hom at (" + bad + ")");
    GenMap d0 = primitive_coproduct(T);
    for (int g = 0; g < T->dim(); ++g)
        if (!((out.images[g] - d0.images[g]).valuation() >= 1))
            throw Error(Errc::IncompatibleIso, "pulled-back coproduct differs from D0 mod lambda");
    return out;
}

// ------------------------------------------------------------------ twist

GenMap twisted_coproduct(const RewriteSystem& rs, const Tensor& F, const GenMap& delta) {
    Tensor Finv = inverse(rs, F);
    GenMap out = delta;
    for (auto& im : out.images) im = mul(rs, mul(rs, F, im), Finv);
    return out;
}

QtqhPair twist_qtqh(const RewriteSystem& rs, const Tensor& F, const Tensor& base_R, const Tensor& base_Phi,
                    const GenMap& delta) {
    Tensor Finv = inverse(rs, F);
    QtqhPair out;
    out.R = mul(rs, mul(rs, leg_embed(F, "21", 2), base_R), Finv);
    Tensor F12 = leg_embed(F, "12", 3);
    Tensor F23inv = leg_embed(Finv, "23", 3);
    Tensor dF = apply_on_leg(delta, F, 0);    // (D x id)(F)
    Tensor dFinv = apply_on_leg(delta, Finv, 1); // (id x D)(F^-1)
    Tensor phi = mul(rs, F12, dF);
    phi = mul(rs, phi, base_Phi);
    phi = mul(rs, phi, dFinv);
    out.Phi = mul(rs, phi, F23inv);
    return out;
}

TwistResult solve_twist(const GenMap& delta_tilde, const TwistCaps& caps) {
    const RsPtr& rsp = delta_tilde.source;
    const RewriteSystem& rs = *rsp;
    if (rs.deformed()) throw Error(Errc::DeformedInput, "solve_twist works over the undeformed envelope");
    if (delta_tilde.target_rank != 2 || delta_tilde.mode != ExtMode::Hom)
        throw Error(Errc::RankMismatch, "delta_tilde must be a rank-2 hom");
    const int N = rs.order();
    GenMap d0 = primitive_coproduct(rsp);
    for (int g = 0; g < rs.dim(); ++g)
        if ((delta_tilde.images[g] - d0.images[g]).valuation() < 1)
            throw Error(Errc::IncompatibleIso, "delta_tilde is not D0 mod lambda");
    {
        std::string bad = hom_violation(delta_tilde);
        if (!bad.empty()) throw Error(Errc::IncompatibleIso, "delta_tilde is not a hom for the undeformed product (" + bad + ")");
    }
    TwistResult out;
    out.F = Tensor::unit(2, N);
    for (int n = 0; n < N; ++n) {
        const int k = n + 1;
        Tensor Finv = inverse(rs, out.F);
        CECochain xi;
        xi.degree = 1;
        xi.rank = 2;
        for (int g = 0; g < rs.dim(); ++g) {
            Tensor r = delta_tilde.images[g] - mul(rs, mul(rs, out.F, d0.images[g]), Finv);
            if (r.valuation() < k) throw Error(Errc::NoSolutionWithinCaps, "twist residual below the current order");
            xi.set({g}, r.component(k));
        }
        TwistOrderDiag diag;
        diag.order = k;
        auto w = cocycle_witness(rs, xi);
        if (!w.empty()) {
            diag.cocycle = false;
            Error e(Errc::ResidualNotCocycle, "order " + std::to_string(k) + " residual fails d_1 at (" + w[0] + "," +
                                                  w[1] + ")");
            e.witnesses = w;
            throw e;
        }
        D0Solution sol;
        bool solved = false;
        const int L0 = 2 * k;
        for (int L = L0; L <= L0 + caps.degree_extra && !solved; ++L) {
            try {
                sol = solve_d0(rs, xi, D0Caps{k, L});
                solved = true;
            } catch (const Error& e) {
                if (e.code() != Errc::NoSolutionWithinCaps) throw;
            }
        }
        if (!solved) throw Error(Errc::NoSolutionWithinCaps, "twist order " + std::to_string(k));
        diag.solve = sol.diag;
        out.diag.push_back(diag);
        Tensor f = -sol.alpha;
        out.alphas.push_back(sol.alpha);
        out.components.push_back(f);
        out.F += f;
    }
    // unconditional post-verification
    GenMap tw = twisted_coproduct(rs, out.F, d0);
    bool ok = true;
    for (int g = 0; g < rs.dim(); ++g) ok = ok && tw.images[g] == delta_tilde.images[g];
    for (size_t n = 0; n < out.components.size(); ++n)
        ok = ok && contractibility_check(rs, out.components[n], 0).ok;
    if (!ok) throw Error(Errc::NoSolutionWithinCaps, "twist failed re-verification");
    out.verified = true;
    QtqhPair q = twist_qtqh(rs, out.F, Tensor::unit(2, N), Tensor::unit(3, N), d0);
    out.R = q.R;
    out.Phi = q.Phi;
    return out;
}

// ------------------------------------------------------------ contraction

Tensor kappa_contract(const RewriteSystem& rs, const Tensor& x, int offset) {
    auto chk = contractibility_check(rs, x, offset);
    if (!chk.ok) {
        Error e(Errc::DivergentContraction, std::to_string(chk.witnesses.size()) + " term(s) exceed p-degree n + " +
                                                std::to_string(offset));
        for (const auto& [n, k] : chk.witnesses) e.witnesses.push_back(std::to_string(n) + ":" + rs.key_string(k));
        throw e;
    }
    Tensor out(x.rank(), x.order());
    for (const auto& [k, s] : x.terms()) {
        const int d = rs.p_degree(k);
        const int n = d - offset;
        if (n < 0 || n > s.order()) continue;
        if (sgn(s[n]) != 0) out.add(k, Series::monomial(s.order(), n, s[n]));
    }
    return out;
}

GenMap kappa_contract(const GenMap& m, const RsPtr& source, const RsPtr& target) {
    GenMap out;
    out.source = source;
    out.target = target;
    out.mode = m.mode;
    out.target_rank = m.target_rank;
    for (int g = 0; g < static_cast<int>(m.images.size()); ++g)
        out.images.push_back(kappa_contract(*m.target, m.images[g], m.source->is_p(g) ? 1 : 0));
    return out;
}

RsPtr kappa_contract(const RewriteSystem& rs) {
    LieAlgebraSpec c = iw_contract(rs.algebra());
    std::map<std::pair<int, int>, Tensor> corr;
    for (int a = 0; a < rs.dim(); ++a)
        for (int b = 0; b < a; ++b) {
            const int offset = (rs.is_p(a) ? 1 : 0) + (rs.is_p(b) ? 1 : 0);
            corr[{a, b}] = kappa_contract(rs, rs.correction(a, b), offset);
        }
    return std::make_shared<const RewriteSystem>(c, rs.order(), corr);
}

} // namespace hc
