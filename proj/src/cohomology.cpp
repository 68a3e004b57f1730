#include "hc/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "hc/linalg.hpp"

namespace hc {

namespace {

// Sort a tuple, returning the permutation sign (0 on repeated entries).
int sort_with_sign(std::vector<int>& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

} // namespace

Tensor CECochain::at(const RewriteSystem& rs, std::vector<int> args) const {
    Tensor zero(rank, rs.order());
    const int s = sort_with_sign(args);
    if (s == 0) return zero;
    auto it = values.find(args);
    if (it == values.end()) return zero;
    Tensor v = it->second;
    if (s < 0) v = -v;
    return v;
}

void CECochain::set(std::vector<int> args, const Tensor& v) {
    if (!std::is_sorted(args.begin(), args.end())) throw Error(Errc::IndexOutOfRange, "cochain tuple not increasing");
    if (v.is_zero()) values.erase(args);
    else values[std::move(args)] = v;
}

Tensor ce_action(const RewriteSystem& rs, int x, const Tensor& t) {
    Tensor d0(t.rank(), rs.order());
    for (int leg = 0; leg < t.rank(); ++leg) d0 += gen(rs, x, t.rank(), leg);
    return commutator(rs, d0, t);
}

namespace {

// f evaluated with first argument a Lie-algebra element given as a combination.
Tensor eval_lin_first(const RewriteSystem& rs, const CECochain& f, const LinComb& first,
                      const std::vector<int>& rest) {
    Tensor acc(f.rank, rs.order());
    for (const auto& [c, v] : first) {
        std::vector<int> args{c};
        args.insert(args.end(), rest.begin(), rest.end());
        Tensor t = f.at(rs, args);
        t *= v;
        acc += t;
    }
    return acc;
}

void for_each_increasing(int dim, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (int i = start; i < dim; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

} // namespace

CECochain ce_coboundary(const RewriteSystem& rs, const CECochain& f) {
    const LieAlgebraSpec& alg = rs.algebra();
    CECochain out;
    out.degree = f.degree + 1;
    out.rank = f.rank;
    const int n1 = f.degree + 1;
    for_each_increasing(rs.dim(), n1, [&](const std::vector<int>& xs) {
        Tensor acc(f.rank, rs.order());
        for (int i = 0; i < n1; ++i) {
            std::vector<int> rest;
            for (int k = 0; k < n1; ++k)
                if (k != i) rest.push_back(xs[k]);
            Tensor t = ce_action(rs, xs[i], f.at(rs, rest));
            if (i % 2) acc -= t;
            else acc += t;
        }
        for (int i = 0; i < n1; ++i)
            for (int j = i + 1; j < n1; ++j) {
                std::vector<int> rest;
                for (int k = 0; k < n1; ++k)
                    if (k != i && k != j) rest.push_back(xs[k]);
                Tensor t = eval_lin_first(rs, f, alg.bracket_of(xs[i], xs[j]), rest);
                // (-1)^{i+j} with 1-based positions equals (-1)^{i+j} 0-based
                if ((i + j) % 2) acc -= t;
                else acc += t;
            }
        out.set(xs, acc);
    });
    return out;
}

CECochain ce_act_on_cochain(const RewriteSystem& rs, int x, const CECochain& f) {
    const LieAlgebraSpec& alg = rs.algebra();
    CECochain out;
    out.degree = f.degree;
    out.rank = f.rank;
    for_each_increasing(rs.dim(), f.degree, [&](const std::vector<int>& xs) {
        Tensor acc = ce_action(rs, x, f.at(rs, xs));
        for (int k = 0; k < f.degree; ++k)
            for (const auto& [c, v] : alg.bracket_of(x, xs[k])) {
                std::vector<int> args = xs;
                args[k] = c;
                Tensor t = f.at(rs, args);
                t *= v;
                acc -= t;
            }
        out.set(xs, acc);
    });
    return out;
}

bool ce_equal(const CECochain& a, const CECochain& b) {
    if (a.degree != b.degree || a.values.size() != b.values.size()) return false;
    for (const auto& [k, v] : a.values) {
        auto it = b.values.find(k);
        if (it == b.values.end() || !(it->second == v)) return false;
    }
    return true;
}

// ------------------------------------------------------------- Hochschild

Tensor HCochain::operator()(const std::vector<Mono>& args) const {
    if (static_cast<int>(args.size()) != degree) throw Error(Errc::RankMismatch, "wrong number of arguments");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) > window)
            throw Error(Errc::WindowExceeded, "argument of degree " + std::to_string(a.size()) +
                                                  " beyond window " + std::to_string(window));
    return eval(args);
}

Tensor hc_evaluate(const RewriteSystem& rs, const HCochain& f, const std::vector<Tensor>& args) {
    Tensor acc(1, rs.order());
    std::vector<Mono> cur(args.size());
    std::function<void(size_t, const Series&)> rec = [&](size_t i, const Series& c) {
        if (i == args.size()) {
            acc += f(cur).scaled(c);
            return;
        }
        for (const auto& k : args[i].sorted_keys()) {
            cur[i] = k;
            rec(i + 1, c * args[i].terms().at(k));
        }
    };
    rec(0, Series::constant(rs.order(), 1));
    return acc;
}

HCochain hochschild_coboundary(RsPtr rs, const HCochain& f) {
    HCochain out;
    out.degree = f.degree + 1;
    out.window = f.window;
    out.eval = [rs, f](const std::vector<Mono>& a) {
        const RewriteSystem& r = *rs;
        const int n = f.degree;
        const Series one = Series::constant(r.order(), 1);
        auto el = [&](const Mono& m) { return Tensor::term(1, m, one); };
        // a_1 f(a_2..a_{n+1})
        std::vector<Mono> tail(a.begin() + 1, a.end());
        Tensor acc = mul(r, el(a[0]), f(tail));
        for (int i = 0; i < n; ++i) {
            // f(a_1, .., a_i a_{i+1}, .., a_{n+1}) with sign (-1)^{i+1}
            std::vector<Tensor> args;
            for (int k = 0; k < n + 1; ++k) {
                if (k == i) {
                    args.push_back(mul(r, el(a[k]), el(a[k + 1])));
                    ++k;
                } else {
                    args.push_back(el(a[k]));
                }
            }
            Tensor t = hc_evaluate(r, f, args);
            if (i % 2 == 0) acc -= t;
            else acc += t;
        }
        std::vector<Mono> head(a.begin(), a.end() - 1);
        Tensor last = mul(r, f(head), el(a.back()));
        if ((n + 1) % 2) acc -= last;
        else acc += last;
        return acc;
    };
    return out;
}

// --------------------------------------------------------------- solve_d0

std::vector<std::string> cocycle_witness(const RewriteSystem& rs, const CECochain& xi) {
    CECochain d = ce_coboundary(rs, xi);
    if (d.values.empty()) return {};
    // first failing pair in lexicographic order
    const auto& [args, v] = *d.values.begin();
    std::vector<std::string> w;
    for (int a : args) w.push_back(rs.algebra().label(a));
    return w;
}

namespace {

struct PairCol {
    Mono u, v;
    int maxdeg, total;
    std::string key;
};

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

} // namespace

D0Solution solve_d0(const RewriteSystem& rs, const CECochain& xi, const D0Caps& caps) {
    if (xi.degree != 1 || xi.rank != 2) throw Error(Errc::RankMismatch, "solve_d0 needs a degree-1 cochain with rank-2 values");
    if (rs.deformed()) throw Error(Errc::DeformedInput, "solve_d0 works over the undeformed envelope");
    {
        auto w = cocycle_witness(rs, xi);
        if (!w.empty()) {
            Error e(Errc::NotACocycle, "d_1 xi != 0 at (" + w[0] + "," + w[1] + ")");
            e.witnesses = w;
            throw e;
        }
    }
    const int N = rs.order();
    const int dim = rs.dim();
    D0Solution sol;
    sol.alpha = Tensor(2, N);
    sol.diag.p_cap = caps.p_cap;
    sol.diag.degree_cap = caps.degree_cap;
    if (xi.values.empty()) return sol;

    // Grading of the unknown: with p-graded brackets, [D0 g, .] raises the
    // p-degree by exactly p(g), so xi pins the p-degree of alpha.
    std::vector<int> implied;
    bool unit_normalized = true;
    std::vector<Series> eps(dim, Series(N));
    for (const auto& [args, v] : xi.values) {
        const int g = args[0];
        for (const auto& [k, c] : v.terms()) implied.push_back(rs.p_degree(k) - (rs.is_p(g) ? 1 : 0));
        if (!apply_counit_on_leg(eps, v, 0).is_zero() || !apply_counit_on_leg(eps, v, 1).is_zero())
            unit_normalized = false;
    }
    std::sort(implied.begin(), implied.end());
    implied.erase(std::unique(implied.begin(), implied.end()), implied.end());
    int exact_p = -1;
    int parity = -1;
    if (rs.p_graded() && implied.size() == 1) exact_p = implied[0];
    if (rs.p_parity()) {
        bool same = true;
        for (int d : implied) same = same && ((d - implied[0]) % 2 == 0);
        if (same) parity = ((implied[0] % 2) + 2) % 2;
    }
    sol.diag.exact_p_degree = exact_p >= 0;
    sol.diag.unit_legs_excluded = unit_normalized;
    if (exact_p > caps.p_cap) throw Error(Errc::NoSolutionWithinCaps, "xi forces p-degree " + std::to_string(exact_p) +
                                                                          " above the cap " + std::to_string(caps.p_cap));

    // Column basis.
    std::vector<Mono> monos;
    enumerate_monos(rs, caps.degree_cap, caps.p_cap, monos);
    std::vector<PairCol> cols;
    for (const auto& u : monos)
        for (const auto& v : monos) {
            if (unit_normalized && (u.empty() || v.empty())) continue;
            const int tot = static_cast<int>(u.size() + v.size());
            if (tot > caps.degree_cap) continue;
            const int p = rs.p_degree(u) + rs.p_degree(v);
            if (p > caps.p_cap) continue;
            if (exact_p >= 0 && p != exact_p) continue;
            if (parity >= 0 && p % 2 != parity) continue;
            std::string key = u;
            key.push_back(kLegSep);
            key.append(v);
            cols.push_back({u, v, static_cast<int>(std::max(u.size(), v.size())), tot, std::move(key)});
        }
    std::sort(cols.begin(), cols.end(), [](const PairCol& a, const PairCol& b) {
        if (a.maxdeg != b.maxdeg) return a.maxdeg < b.maxdeg;
        if (a.total != b.total) return a.total < b.total;
        return a.key < b.key;
    });
    if (cols.size() > 400000) throw Error(Errc::NoSolutionWithinCaps, "column basis too large");
    const int ncols = static_cast<int>(cols.size());

    // Rows indexed by (generator, output key); values are lambda-independent.
    std::unordered_map<std::string, int> row_of;
    std::vector<SparseVec> rows;
    auto row_index = [&](int g, const std::string& key) {
        std::string rk(1, static_cast<char>(g));
        rk += key;
        auto [it, fresh] = row_of.try_emplace(rk, static_cast<int>(rows.size()));
        if (fresh) rows.emplace_back();
        return it->second;
    };
    std::unordered_map<std::string, Tensor> comm_cache; // [g, u] for single monomials
    auto comm = [&](int g, const Mono& u) -> const Tensor& {
        std::string ck(1, static_cast<char>(g));
        ck += u;
        auto it = comm_cache.find(ck);
        if (it != comm_cache.end()) return it->second;
        Tensor r = commutator(rs, gen(rs, g), Tensor::term(1, u, Series::constant(N, 1)));
        return comm_cache.emplace(ck, std::move(r)).first->second;
    };
    for (int j = 0; j < ncols; ++j) {
        const PairCol& c = cols[j];
        for (int g = 0; g < dim; ++g) {
            std::unordered_map<std::string, Rational> img;
            for (const auto& [k, s] : comm(g, c.u).terms()) {
                std::string key = k;
                key.push_back(kLegSep);
                key.append(c.v);
                img[key] += s[0];
            }
            for (const auto& [k, s] : comm(g, c.v).terms()) {
                std::string key = c.u;
                key.push_back(kLegSep);
                key.append(k);
                img[key] += s[0];
            }
            for (const auto& [k, v] : img)
                if (sgn(v) != 0) rows[row_index(g, k)].emplace_back(j, v);
        }
    }
    const size_t a_rows = rows.size();
    sol.diag.columns = ncols;

    for (int order = 0; order <= N; ++order) {
        bool any = false;
        for (const auto& [args, v] : xi.values)
            for (const auto& [k, s] : v.terms())
                if (sgn(s[order]) != 0) any = true;
        if (!any) continue;
        std::vector<SparseVec> aug(rows.begin(), rows.begin() + static_cast<long>(a_rows));
        std::unordered_map<std::string, int> ext = row_of;
        for (const auto& [args, v] : xi.values) {
            const int g = args[0];
            for (const auto& [k, s] : v.terms()) {
                if (sgn(s[order]) == 0) continue;
                std::string rk(1, static_cast<char>(g));
                rk += k;
                auto [it, fresh] = ext.try_emplace(rk, static_cast<int>(aug.size()));
                if (fresh) aug.emplace_back();
                aug[it->second].emplace_back(ncols, s[order]);
            }
        }
        Echelon ech(ncols + 1);
        ech.set_rhs_col(ncols);
        for (auto& r : aug) ech.add_row(std::move(r));
        sol.diag.rows = static_cast<int>(aug.size());
        if (ech.inconsistent())
            throw Error(Errc::NoSolutionWithinCaps, "no alpha within p_cap " + std::to_string(caps.p_cap) +
                                                        ", degree cap " + std::to_string(caps.degree_cap) +
                                                        " at lambda^" + std::to_string(order));
        sol.diag.rank = ech.rank();
        sol.diag.kernel_dim = ncols - ech.rank();
        auto x = ech.solve_augmented(ncols);
        for (const auto& [j, v] : *x) sol.alpha.add(cols[j].key, Series::monomial(N, order, v));
    }

    // Unconditional re-verification.
    for (int g = 0; g < dim; ++g) {
        Tensor lhs = ce_action(rs, g, sol.alpha);
        Tensor rhs = xi.at(rs, {g});
        if (!(lhs == rhs)) throw Error(Errc::NoSolutionWithinCaps, "solution failed re-verification at " + rs.algebra().label(g));
    }
    return sol;
}

} // namespace hc
