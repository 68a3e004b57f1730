#include "hc/lie.hpp"

#include <functional>

#include "hc/linalg.hpp"

namespace hc {

const char* parity_name(Parity p) {
    switch (p) {
    case Parity::H: return "H";
    case Parity::P: return "P";
    case Parity::None: return "NONE";
    }
    return "NONE";
}

Parity parse_parity(const std::string& s) {
    if (s == "H") return Parity::H;
    if (s == "P") return Parity::P;
    if (s == "NONE" || s.empty()) return Parity::None;
    throw Error(Errc::ParseError, "bad parity '" + s + "'");
}

LieAlgebraSpec::LieAlgebraSpec(std::string name, std::vector<Generator> gens)
    : name_(std::move(name)), gens_(std::move(gens)) {
    consts_.assign(static_cast<size_t>(dim()) * dim() * dim(), Rational(0));
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j)
            if (gens_[i].label == gens_[j].label)
                throw Error(Errc::ParseError, "duplicate generator label " + gens_[i].label);
}

void LieAlgebraSpec::set_bracket(int a, int b, const LinComb& terms) {
    const int n = dim();
    if (a < 0 || a >= n || b < 0 || b >= n)
        throw Error(Errc::IndexOutOfRange, "bracket index out of range");
    if (a == b) {
        for (const auto& t : terms)
            if (sgn(t.second) != 0)
                throw Error(Errc::IndexOutOfRange, "nonzero self-bracket of " + label(a));
        return;
    }
    for (int c = 0; c < n; ++c) {
        consts_[(a * n + b) * n + c] = 0;
        consts_[(b * n + a) * n + c] = 0;
    }
    for (const auto& [c, v] : terms) {
        if (c < 0 || c >= n) throw Error(Errc::IndexOutOfRange, "bracket result index out of range");
        consts_[(a * n + b) * n + c] += v;
        consts_[(b * n + a) * n + c] -= v;
    }
}

void LieAlgebraSpec::set_bracket(const std::string& a, const std::string& b,
                                 const std::vector<std::pair<std::string, Rational>>& terms) {
    LinComb t;
    for (const auto& [l, v] : terms) t.emplace_back(index_of(l), v);
    set_bracket(index_of(a), index_of(b), t);
}

int LieAlgebraSpec::index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (gens_[i].label == label) return i;
    throw Error(Errc::UnknownGenerator, "unknown generator '" + label + "' in " + name_);
}

LinComb LieAlgebraSpec::bracket_of(int a, int b) const {
    LinComb out;
    for (int cc = 0; cc < dim(); ++cc)
        if (sgn(c(a, b, cc)) != 0) out.emplace_back(cc, c(a, b, cc));
    return out;
}

bool LieAlgebraSpec::has_decomposition() const {
    for (const auto& g : gens_)
        if (g.parity != Parity::None) return true;
    return false;
}

bool LieAlgebraSpec::pbw_ordered() const {
    bool seen_p = false;
    for (const auto& g : gens_) {
        if (g.parity == Parity::P) seen_p = true;
        else if (seen_p) return false;
    }
    return true;
}

LieAlgebraSpec LieAlgebraSpec::pbw_reordered() const {
    std::vector<int> order;
    for (int i = 0; i < dim(); ++i)
        if (gens_[i].parity != Parity::P) order.push_back(i);
    for (int i = 0; i < dim(); ++i)
        if (gens_[i].parity == Parity::P) order.push_back(i);
    std::vector<int> pos(dim());
    std::vector<Generator> g;
    for (int k = 0; k < dim(); ++k) {
        pos[order[k]] = k;
        g.push_back(gens_[order[k]]);
    }
    LieAlgebraSpec out(name_, g);
    for (int a = 0; a < dim(); ++a)
        for (int b = a + 1; b < dim(); ++b) {
            LinComb t;
            for (const auto& [cc, v] : bracket_of(a, b)) t.emplace_back(pos[cc], v);
            out.set_bracket(pos[a], pos[b], t);
        }
    return out;
}

bool LieAlgebraSpec::same_structure(const LieAlgebraSpec& o) const {
    if (dim() != o.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (gens_[i].label != o.gens_[i].label || gens_[i].parity != o.gens_[i].parity) return false;
    return consts_ == o.consts_;
}

void LieTensor::add(const std::vector<int>& idx, const Rational& v) {
    if (sgn(v) == 0) return;
    auto it = entries.find(idx);
    if (it == entries.end()) {
        entries.emplace(idx, v);
        return;
    }
    it->second += v;
    if (sgn(it->second) == 0) entries.erase(it);
}

LieTensor basis_vector(const LieAlgebraSpec& spec, int i) {
    LieTensor t(1, spec.dim());
    t.add({i}, Rational(1));
    return t;
}

ValidationReport validate(const LieAlgebraSpec& spec) {
    ValidationReport rep;
    const int n = spec.dim();
    // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
    for (int a = 0; a < n && rep.jacobi; ++a)
        for (int b = a + 1; b < n && rep.jacobi; ++b)
            for (int c = b + 1; c < n && rep.jacobi; ++c)
                for (int e = 0; e < n; ++e) {
                    Rational s = 0;
                    for (int d = 0; d < n; ++d) {
                        s += spec.c(a, b, d) * spec.c(d, c, e);
                        s += spec.c(b, c, d) * spec.c(d, a, e);
                        s += spec.c(c, a, d) * spec.c(d, b, e);
                    }
                    if (sgn(s) != 0) {
                        rep.jacobi = false;
                        rep.witnesses.push_back("jacobi(" + spec.label(a) + "," + spec.label(b) + "," +
                                                spec.label(c) + ")");
                        break;
                    }
                }
    if (!spec.has_decomposition()) return rep;

    for (int a = 0; a < n; ++a)
        if (spec.parity(a) == Parity::None) {
            rep.decomposition = false;
            rep.witnesses.push_back("unmarked generator " + spec.label(a));
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool pa = spec.parity(a) == Parity::P, pb = spec.parity(b) == Parity::P;
            Parity want = (pa != pb) ? Parity::P : Parity::H;
            for (const auto& [c, v] : spec.bracket_of(a, b))
                if (spec.parity(c) != want) {
                    rep.decomposition = false;
                    rep.witnesses.push_back("parity[" + spec.label(a) + "," + spec.label(b) + "]");
                }
        }

    // span{[p,p]} = h, by rank
    std::vector<std::vector<Rational>> rows;
    int nh = 0;
    for (int a = 0; a < n; ++a) {
        if (spec.parity(a) == Parity::H) ++nh;
        for (int b = a + 1; b < n; ++b) {
            if (spec.parity(a) != Parity::P || spec.parity(b) != Parity::P) continue;
            std::vector<Rational> row(n);
            for (int c = 0; c < n; ++c) row[c] = spec.c(a, b, c);
            rows.push_back(row);
        }
    }
    int r = rows.empty() ? 0 : dense_rank(rows);
    if (r != nh) {
        rep.span_pp = false;
        rep.witnesses.push_back("rank span[p,p] = " + std::to_string(r) + " < dim h = " + std::to_string(nh));
    }
    return rep;
}

static void check_tensor(const LieAlgebraSpec& spec, const LieTensor& t) {
    if (t.dim != spec.dim()) throw Error(Errc::AlgebraMismatch, "tensor over a different algebra");
    for (const auto& [idx, v] : t.entries)
        for (int i : idx)
            if (i < 0 || i >= spec.dim()) throw Error(Errc::AlgebraMismatch, "tensor index out of range");
}

LieTensor bracket(const LieAlgebraSpec& spec, const LieTensor& x, const LieTensor& y) {
    check_tensor(spec, x);
    check_tensor(spec, y);
    if (x.rank != 1 || y.rank != 1) throw Error(Errc::RankMismatch, "bracket needs vectors");
    LieTensor out(1, spec.dim());
    for (const auto& [i, a] : x.entries)
        for (const auto& [j, b] : y.entries)
            for (const auto& [c, v] : spec.bracket_of(i[0], j[0])) out.add({c}, a * b * v);
    return out;
}

std::vector<std::vector<Rational>> killing_form(const LieAlgebraSpec& spec) {
    const int n = spec.dim();
    std::vector<std::vector<Rational>> k(n, std::vector<Rational>(n));
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Rational s = 0;
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (sgn(spec.c(a, d, c)) == 0) continue;
                    s += spec.c(a, d, c) * spec.c(b, c, d);
                }
            k[a][b] = s;
            k[b][a] = s;
        }
    return k;
}

LieAlgebraSpec iw_contract(const LieAlgebraSpec& spec) {
    if (!spec.has_decomposition()) throw Error(Errc::NoDecomposition, spec.name() + " has no decomposition");
    LieAlgebraSpec out(spec.name(), spec.generators());
    for (int a = 0; a < spec.dim(); ++a)
        for (int b = a + 1; b < spec.dim(); ++b) {
            if (spec.parity(a) == Parity::P && spec.parity(b) == Parity::P) continue;
            out.set_bracket(a, b, spec.bracket_of(a, b));
        }
    return out;
}

LieTensor cybe_bracket(const LieAlgebraSpec& spec, const LieTensor& r) {
    check_tensor(spec, r);
    if (r.rank != 2) throw Error(Errc::RankMismatch, "cybe needs a rank-2 tensor");
    LieTensor out(3, spec.dim());
    for (const auto& [s, v] : r.entries)
        for (const auto& [t, w] : r.entries) {
            const int a = s[0], b = s[1], c = t[0], d = t[1];
            Rational vw = v * w;
            for (const auto& [e, x] : spec.bracket_of(a, c)) out.add({e, b, d}, vw * x); // [r12,r13]
            for (const auto& [e, x] : spec.bracket_of(b, c)) out.add({a, e, d}, vw * x); // [r12,r23]
            for (const auto& [e, x] : spec.bracket_of(b, d)) out.add({a, c, e}, vw * x); // [r13,r23]
        }
    return out;
}

LieTensor ad_action(const LieAlgebraSpec& spec, int x, const LieTensor& t) {
    check_tensor(spec, t);
    LieTensor out(t.rank, spec.dim());
    for (const auto& [idx, v] : t.entries)
        for (int leg = 0; leg < t.rank; ++leg)
            for (const auto& [c, w] : spec.bracket_of(x, idx[leg])) {
                std::vector<int> j = idx;
                j[leg] = c;
                out.add(j, v * w);
            }
    return out;
}

InvarianceResult ad_invariant(const LieAlgebraSpec& spec, const LieTensor& t) {
    InvarianceResult res;
    for (int x = 0; x < spec.dim(); ++x)
        if (!ad_action(spec, x, t).is_zero()) {
            res.invariant = false;
            res.witness_generator = x;
            break;
        }
    return res;
}

namespace registry {

namespace {

// so(N) on indices lo..hi with bracket
// [M_ab, M_cd] = s (eta_bc M_ad - eta_ac M_bd - eta_bd M_ac + eta_ad M_bc),
// where M_ab is mapped to (generator index, sign) by `where` for a < b.
using Where = std::function<std::pair<int, int>(int, int)>;

LieAlgebraSpec metric_so(const std::string& name, std::vector<Generator> gens, int lo, int hi,
                         const std::vector<int>& eta, int s, const Where& where) {
    LieAlgebraSpec spec(name, std::move(gens));
    auto M = [&](int a, int b) -> std::pair<int, int> {
        if (a == b) return {-1, 0};
        if (a < b) return where(a, b);
        auto w = where(b, a);
        return {w.first, -w.second};
    };
    auto e = [&](int a, int b) { return a == b ? eta[a - lo] : 0; };
    for (int a = lo; a <= hi; ++a)
        for (int b = a + 1; b <= hi; ++b)
            for (int c = lo; c <= hi; ++c)
                for (int d = c + 1; d <= hi; ++d) {
                    auto [x, sx] = M(a, b);
                    auto [y, sy] = M(c, d);
                    if (x >= y) continue;
                    std::map<int, Rational> acc;
                    auto put = [&](int coeff, int p, int q) {
                        if (coeff == 0) return;
                        auto [g, sg] = M(p, q);
                        if (g < 0) return;
                        acc[g] += Rational(s * coeff * sg);
                    };
                    put(e(b, c), a, d);
                    put(-e(a, c), b, d);
                    put(-e(b, d), a, c);
                    put(e(a, d), b, c);
                    LinComb t;
                    for (auto& [g, v] : acc)
                        if (sgn(v) != 0) t.emplace_back(g, v * sx * sy);
                    spec.set_bracket(x, y, t);
                }
    return spec;
}

std::string mlabel(int i, int j) { return "M" + std::to_string(i) + std::to_string(j); }

// Kappa-labelled generator list for spatial indices 1..n-1.
struct KappaLabels {
    std::vector<Generator> gens;
    std::map<std::pair<int, int>, int> m;
    std::vector<int> nidx, pidx;
    int e = -1;
};

KappaLabels kappa_labels(int n) {
    KappaLabels k;
    for (int i = 1; i <= n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) {
            k.m[{i, j}] = static_cast<int>(k.gens.size());
            k.gens.push_back({mlabel(i, j), Parity::H});
        }
    k.nidx.push_back(-1);
    for (int i = 1; i <= n - 1; ++i) {
        k.nidx.push_back(static_cast<int>(k.gens.size()));
        k.gens.push_back({"N" + std::to_string(i), Parity::H});
    }
    k.pidx.push_back(-1);
    for (int i = 1; i <= n - 1; ++i) {
        k.pidx.push_back(static_cast<int>(k.gens.size()));
        k.gens.push_back({"P" + std::to_string(i), Parity::P});
    }
    k.e = static_cast<int>(k.gens.size());
    k.gens.push_back({"E", Parity::P});
    return k;
}

} // namespace

LieAlgebraSpec so3_compact() {
    std::vector<Generator> g = {{"M12", Parity::None}, {"M13", Parity::None}, {"M23", Parity::None}};
    std::map<std::pair<int, int>, int> idx = {{{1, 2}, 0}, {{1, 3}, 1}, {{2, 3}, 2}};
    return metric_so("so3", g, 1, 3, {1, 1, 1}, 1,
                     [&](int a, int b) { return std::make_pair(idx.at({a, b}), 1); });
}

LieAlgebraSpec so_kappa(int n) {
    KappaLabels k = kappa_labels(n);
    // indices 0..n: 0 is the translation index, n the boost index
    std::vector<int> eta(n + 1, 1);
    eta[n] = -1;
    Where where = [&](int a, int b) -> std::pair<int, int> {
        if (a == 0 && b == n) return {k.e, 1};
        if (a == 0) return {k.pidx[b], 1};
        if (b == n) return {k.nidx[a], 1};
        return {k.m.at({a, b}), 1};
    };
    return metric_so("so" + std::to_string(n + 1), k.gens, 0, n, eta, -1, where);
}

LieAlgebraSpec iso_kappa(int n) {
    KappaLabels k = kappa_labels(n);
    LieAlgebraSpec spec("iso" + std::to_string(n), k.gens);
    const int s = n - 1;
    auto M = [&](int i, int j) -> std::pair<int, int> {
        if (i == j) return {-1, 0};
        if (i < j) return {k.m.at({i, j}), 1};
        return {k.m.at({j, i}), -1};
    };
    auto d = [](int a, int b) { return a == b ? 1 : 0; };
    auto add = [](std::map<int, Rational>& acc, std::pair<int, int> g, int coeff) {
        if (g.first < 0 || coeff == 0) return;
        acc[g.first] += Rational(coeff * g.second);
    };
    auto put = [&](int a, int b, const std::map<int, Rational>& acc) {
        LinComb t;
        for (auto& [g, v] : acc)
            if (sgn(v) != 0) t.emplace_back(g, v);
        spec.set_bracket(a, b, t);
    };
    for (auto& [ij, a] : k.m) {
        const int i = ij.first, j = ij.second;
        for (auto& [kl, b] : k.m) {
            if (b <= a) continue;
            const int kk = kl.first, l = kl.second;
            std::map<int, Rational> acc;
            add(acc, M(j, l), d(i, kk));
            add(acc, M(i, l), -d(j, kk));
            add(acc, M(j, kk), -d(i, l));
            add(acc, M(i, kk), d(j, l));
            put(a, b, acc);
        }
        for (int q = 1; q <= s; ++q) {
            std::map<int, Rational> an, ap;
            add(an, {k.nidx[j], 1}, d(i, q));
            add(an, {k.nidx[i], 1}, -d(j, q));
            put(a, k.nidx[q], an);
            add(ap, {k.pidx[j], 1}, d(q, i));
            add(ap, {k.pidx[i], 1}, -d(q, j));
            put(a, k.pidx[q], ap);
        }
    }
    for (int i = 1; i <= s; ++i) {
        for (int j = 1; j <= s; ++j) {
            if (i == j) spec.set_bracket(k.nidx[i], k.pidx[j], {{k.e, Rational(1)}});
            if (i < j) {
                std::map<int, Rational> acc;
                add(acc, M(i, j), -1);
                put(k.nidx[i], k.nidx[j], acc);
            }
        }
        spec.set_bracket(k.nidx[i], k.e, {{k.pidx[i], Rational(1)}});
    }
    return spec;
}

LieAlgebraSpec sl2_ai() {
    LieAlgebraSpec spec("sl2", {{"A", Parity::H}, {"S1", Parity::P}, {"S2", Parity::P}});
    spec.set_bracket(0, 1, {{2, Rational(-2)}});
    spec.set_bracket(0, 2, {{1, Rational(2)}});
    spec.set_bracket(1, 2, {{0, Rational(2)}});
    return spec;
}

LieAlgebraSpec so3_so2() {
    LieAlgebraSpec base = so3_compact();
    std::vector<Generator> g = base.generators();
    g[0].parity = Parity::H;
    g[1].parity = Parity::P;
    g[2].parity = Parity::P;
    LieAlgebraSpec spec("so3-so2", g);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) spec.set_bracket(a, b, base.bracket_of(a, b));
    return spec;
}

LieAlgebraSpec so3xso3_diag() {
    // h = {(x,x)}, p = {(x,-x)} with [L_a, L_b] = eps_abc L_c in each copy
    LieAlgebraSpec spec("so3xso3-diag", {{"H1", Parity::H}, {"H2", Parity::H}, {"H3", Parity::H},
                                         {"K1", Parity::P}, {"K2", Parity::P}, {"K3", Parity::P}});
    const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& t : cyc) {
        int a = t[0], b = t[1], c = t[2];
        Rational one(1);
        auto set = [&](int x, int y, int z) {
            if (x < y) spec.set_bracket(x, y, {{z, one}});
            else spec.set_bracket(y, x, {{z, -one}});
        };
        set(a, b, c);
        set(a, 3 + b, 3 + c);
        set(3 + a, b, 3 + c);
        set(3 + a, 3 + b, c);
    }
    return spec;
}

LieAlgebraSpec get(const std::string& name) {
    if (name == "so3") return so3_compact();
    if (name == "so4") return so_kappa(3);
    if (name == "so5") return so_kappa(4);
    if (name == "iso3") return iso_kappa(3);
    if (name == "iso4") return iso_kappa(4);
    if (name == "sl2") return sl2_ai();
    if (name == "so3-so2") return so3_so2();
    if (name == "so3xso3-diag") return so3xso3_diag();
    throw Error(Errc::UnknownGenerator, "no registry algebra named '" + name + "'");
}

std::vector<std::string> names() {
    return {"so3", "so4", "so5", "iso3", "iso4", "sl2", "so3-so2", "so3xso3-diag"};
}

} // namespace registry

} // namespace hc
