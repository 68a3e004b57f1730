#include "hc/pbw.hpp"

#include <algorithm>

namespace hc {

std::vector<std::string_view> split_legs(std::string_view key) {
    std::vector<std::string_view> legs;
    size_t start = 0;
    for (size_t i = 0; i <= key.size(); ++i)
        if (i == key.size() || key[i] == kLegSep) {
            legs.push_back(key.substr(start, i - start));
            start = i + 1;
        }
    return legs;
}

std::string join_legs(const std::vector<std::string_view>& legs) {
    std::string k;
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) k.push_back(kLegSep);
        k.append(legs[i]);
    }
    return k;
}

std::string join_legs(const std::vector<std::string>& legs) {
    std::string k;
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) k.push_back(kLegSep);
        k.append(legs[i]);
    }
    return k;
}

// ---------------------------------------------------------------- Tensor

Tensor Tensor::unit(int rank, int order) { return scalar(rank, Series::constant(order, 1)); }

Tensor Tensor::scalar(int rank, const Series& s) {
    Tensor t(rank, s.order());
    t.add(std::string(rank - 1, kLegSep), s);
    return t;
}

Tensor Tensor::term(int rank, const std::string& key, const Series& s) {
    Tensor t(rank, s.order());
    t.add(key, s);
    return t;
}

void Tensor::add(const std::string& key, const Series& c) {
    if (c.order() != order_) throw Error(Errc::MismatchedOrder, "tensor term order");
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Tensor::add(std::string&& key, const Series& c) {
    if (c.order() != order_) throw Error(Errc::MismatchedOrder, "tensor term order");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(std::move(key), c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Tensor::erase_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

static void check_compatible(const Tensor& a, const Tensor& b) {
    if (a.rank() != b.rank()) throw Error(Errc::RankMismatch, "ranks " + std::to_string(a.rank()) + " and " +
                                                                    std::to_string(b.rank()));
    if (a.order() != b.order()) throw Error(Errc::MismatchedOrder, "tensor orders differ");
}

Tensor& Tensor::operator+=(const Tensor& o) {
    check_compatible(*this, o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    check_compatible(*this, o);
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

Tensor& Tensor::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, s] : terms_) s *= c;
    return *this;
}

Tensor Tensor::operator-() const {
    Tensor t = *this;
    for (auto& [k, s] : t.terms_) s = -s;
    return t;
}

bool Tensor::operator==(const Tensor& o) const {
    return rank_ == o.rank_ && order_ == o.order_ && terms_ == o.terms_;
}

int Tensor::valuation() const {
    int v = order_ + 1;
    for (const auto& [k, s] : terms_) v = std::min(v, s.valuation());
    return v;
}

Tensor Tensor::truncated(int k) const {
    Tensor t(rank_, order_);
    for (const auto& [key, s] : terms_) t.add(key, s.truncated(k));
    return t;
}

Tensor Tensor::component(int k) const {
    Tensor t(rank_, order_);
    for (const auto& [key, s] : terms_) t.add(key, s.component(k));
    return t;
}

Tensor Tensor::scaled(const Series& s) const {
    Tensor t(rank_, order_);
    for (const auto& [key, c] : terms_) t.add(key, c * s);
    return t;
}

Series Tensor::coeff(const std::string& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Series(order_) : it->second;
}

std::vector<std::string> Tensor::sorted_keys() const {
    std::vector<std::string> keys;
    keys.reserve(terms_.size());
    for (const auto& [k, s] : terms_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }

// --------------------------------------------------------- RewriteSystem

RewriteSystem::RewriteSystem(LieAlgebraSpec algebra, int truncation)
    : algebra_(std::move(algebra)), order_(truncation) {
    if (truncation < 0) throw Error(Errc::MismatchedOrder, "negative truncation");
    if (!algebra_.pbw_ordered())
        throw Error(Errc::InvalidRewriteSystem, "generators of " + algebra_.name() + " are not H-before-P");
    if (algebra_.dim() > 100) throw Error(Errc::InvalidRewriteSystem, "too many generators");
    const int n = dim();
    corr_.assign(static_cast<size_t>(n) * n, Tensor(1, order_));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) {
            Tensor t(1, order_);
            for (const auto& [c, v] : algebra_.bracket_of(a, b))
                t.add(std::string(1, static_cast<char>(c)), Series::constant(order_, v));
            corr_[a * n + b] = std::move(t);
        }
    init_flags();
}

RewriteSystem::RewriteSystem(LieAlgebraSpec algebra, int truncation,
                             const std::map<std::pair<int, int>, Tensor>& corrections)
    : RewriteSystem(std::move(algebra), truncation) {
    const int n = dim();
    for (const auto& [ab, t] : corrections) {
        auto [a, b] = ab;
        if (a < 0 || a >= n || b < 0 || b >= n || a <= b)
            throw Error(Errc::InvalidRewriteSystem, "correction pair must have a > b");
        if (t.rank() != 1 || t.order() != order_)
            throw Error(Errc::InvalidRewriteSystem, "correction must be a rank-1 element of the same order");
        // guard: order-0 part of degree <= 1 and equal to the bracket
        Tensor zero0 = t.component(0) - corr_[a * n + b];
        if (!zero0.is_zero())
            throw Error(Errc::InvalidRewriteSystem, "order-0 correction of (" + algebra_.label(a) + "," +
                                                        algebra_.label(b) + ") differs from the Lie bracket");
        for (const auto& [k, s] : t.terms())
            for (char ch : k)
                if (static_cast<unsigned char>(ch) >= n || ch == kLegSep)
                    throw Error(Errc::InvalidRewriteSystem, "bad generator in correction");
        // sorted monomials only
        for (const auto& [k, s] : t.terms())
            if (!std::is_sorted(k.begin(), k.end()))
                throw Error(Errc::InvalidRewriteSystem, "correction monomial not in normal form");
        corr_[a * n + b] = t;
        if (t.valuation() <= order_ && !(t.component(0) == t)) deformed_ = true;
    }
    init_flags();
    std::string fail = diamond_check();
    if (!fail.empty()) throw Error(Errc::InvalidRewriteSystem, "diamond check failed: " + fail);
}

void RewriteSystem::init_flags() {
    const int n = dim();
    p_graded_ = true;
    p_parity_ = true;
    weight_graded_ = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b) {
            const int pin = (is_p(a) ? 1 : 0) + (is_p(b) ? 1 : 0);
            for (const auto& [k, s] : corr_[a * n + b].terms()) {
                const int d = p_degree(k);
                for (int j = 0; j <= order_; ++j) {
                    if (sgn(s[j]) == 0) continue;
                    if (j == 0 && d != pin) p_graded_ = false;
                    if ((d - j - pin) % 2 != 0) p_parity_ = false;
                    if (d - j != pin) weight_graded_ = false;
                }
            }
        }
}

int RewriteSystem::p_degree(std::string_view key) const {
    int d = 0;
    for (char ch : key)
        if (ch != kLegSep && is_p(static_cast<unsigned char>(ch))) ++d;
    return d;
}

int RewriteSystem::degree(std::string_view key) const {
    int d = 0;
    for (char ch : key)
        if (ch != kLegSep) ++d;
    return d;
}

std::string RewriteSystem::mono_string(std::string_view m) const {
    if (m.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += "*";
        s += algebra_.label(static_cast<unsigned char>(m[i]));
    }
    return s;
}

std::string RewriteSystem::key_string(std::string_view key) const {
    std::string s;
    auto legs = split_legs(key);
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) s += " (x) ";
        s += mono_string(legs[i]);
    }
    return s;
}

namespace {

using Acc = std::unordered_map<Mono, Series>;

void acc_add(Acc& acc, const Mono& m, const Series& a, const Series& b, int budget) {
    auto it = acc.find(m);
    if (it == acc.end()) it = acc.emplace(m, Series(a.order())).first;
    fma_upto(it->second, a, b, budget);
}

Terms to_terms(Acc&& acc) {
    Terms t;
    t.reserve(acc.size());
    for (auto& [m, s] : acc)
        if (!s.is_zero()) t.emplace_back(m, std::move(s));
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return t;
}

} // namespace

std::shared_ptr<const Terms> RewriteSystem::product(const Mono& a, const Mono& b, int budget) const {
    if (budget > order_) budget = order_;
    if (budget < 0) return std::make_shared<const Terms>();
    std::string key;
    key.reserve(a.size() + b.size() + 2);
    key.append(a);
    key.push_back(kLegSep);
    key.append(b);
    key.push_back(static_cast<char>(budget));
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto res = std::make_shared<const Terms>(compute_product(a, b, budget));
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(std::move(key), res);
    return res;
}

Terms RewriteSystem::compute_product(const Mono& a, const Mono& b, int budget) const {
    const Series one = Series::constant(order_, 1);
    if (a.empty() || b.empty() || static_cast<unsigned char>(a.back()) <= static_cast<unsigned char>(b.front()))
        return Terms{{a + b, one}};
    Acc acc;
    if (a.size() == 1) {
        // x y rest = y (x rest) + corr(x, y) rest
        const int x = static_cast<unsigned char>(a[0]);
        const int y = static_cast<unsigned char>(b[0]);
        const Mono rest = b.substr(1);
        const Mono ym(1, b[0]);
        auto xr = product(a, rest, budget);
        for (const auto& [m, c] : *xr) {
            auto ys = product(ym, m, budget - c.valuation());
            for (const auto& [m2, c2] : *ys) acc_add(acc, m2, c, c2, budget);
        }
        for (const auto& [cm, cs] : corr_[x * dim() + y].terms()) {
            const int v = cs.valuation();
            if (v > budget) continue;
            auto cr = product(cm, rest, budget - v);
            for (const auto& [m2, c2] : *cr) acc_add(acc, m2, cs, c2, budget);
        }
    } else {
        const Mono head = a.substr(0, a.size() - 1);
        const Mono xm(1, a.back());
        auto xb = product(xm, b, budget);
        for (const auto& [m, c] : *xb) {
            auto hs = product(head, m, budget - c.valuation());
            for (const auto& [m2, c2] : *hs) acc_add(acc, m2, c, c2, budget);
        }
    }
    return to_terms(std::move(acc));
}

std::string RewriteSystem::diamond_check() const {
    const int n = dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < a; ++b)
            for (int c = 0; c < b; ++c) {
                Tensor ea = gen(*this, a), eb = gen(*this, b), ec = gen(*this, c);
                // (ab)c = b(ac) + corr(a,b) c ;  a(bc) = a(cb) + a corr(b,c)
                Tensor left = mul(*this, eb, mul(*this, ea, ec)) + mul(*this, correction(a, b), ec);
                Tensor cb = Tensor::term(1, std::string{static_cast<char>(c), static_cast<char>(b)},
                                         Series::constant(order_, 1));
                Tensor right = mul(*this, ea, cb) + mul(*this, ea, correction(b, c));
                Tensor diff = left - right;
                if (!diff.is_zero())
                    return "word " + algebra_.label(a) + "*" + algebra_.label(b) + "*" + algebra_.label(c) +
                           " at order " + std::to_string(diff.valuation());
            }
    return {};
}

// ------------------------------------------------------------ operations

Tensor gen(const RewriteSystem& rs, int g, int rank, int leg) {
    if (g < 0 || g >= rs.dim()) throw Error(Errc::UnknownGenerator, "generator index " + std::to_string(g));
    std::vector<std::string> legs(rank);
    legs[leg] = std::string(1, static_cast<char>(g));
    return Tensor::term(rank, join_legs(legs), Series::constant(rs.order(), 1));
}

Tensor normal_form(const RewriteSystem& rs, const std::vector<int>& word, const Series& coeff) {
    if (coeff.order() != rs.order()) throw Error(Errc::MismatchedOrder, "coefficient order");
    Tensor acc = Tensor::scalar(1, coeff);
    for (int g : word) acc = mul(rs, acc, gen(rs, g));
    return acc;
}

Tensor normal_form(const RewriteSystem& rs, const std::vector<std::string>& word, const Series& coeff) {
    std::vector<int> w;
    for (const auto& l : word) w.push_back(rs.algebra().index_of(l));
    return normal_form(rs, w, coeff);
}

namespace {

struct LegProduct {
    std::shared_ptr<const Terms> terms; // null when the product is a plain concatenation
    std::string concat;
};

void combine(const std::vector<LegProduct>& legs, size_t i, std::string& key, const Series& c, int budget,
             Tensor& out) {
    if (i == legs.size()) {
        out.add(key, c);
        return;
    }
    const size_t base = key.size();
    if (i > 0) key.push_back(kLegSep);
    if (!legs[i].terms) {
        key.append(legs[i].concat);
        combine(legs, i + 1, key, c, budget, out);
    } else {
        for (const auto& [m, s] : *legs[i].terms) {
            if (c.valuation() + s.valuation() > budget) continue;
            key.append(m);
            combine(legs, i + 1, key, mul_upto(c, s, budget), budget, out);
            key.resize(base + (i > 0 ? 1 : 0));
        }
    }
    key.resize(base);
}

} // namespace

Tensor mul(const RewriteSystem& rs, const Tensor& x, const Tensor& y, int budget) {
    check_compatible(x, y);
    if (x.order() != rs.order()) throw Error(Errc::MismatchedOrder, "element and rewrite system orders differ");
    const int N = rs.order();
    if (budget < 0 || budget > N) budget = N;
    const int rank = x.rank();
    Tensor out(rank, N);
    std::vector<std::vector<std::string_view>> ylegs;
    std::vector<const Series*> ycoef;
    std::vector<int> yval;
    for (const auto& [k, c] : y.terms()) {
        ylegs.push_back(split_legs(k));
        ycoef.push_back(&c);
        yval.push_back(c.valuation());
    }
    std::vector<LegProduct> legs(rank);
    std::string key;
    for (const auto& [kx, cx] : x.terms()) {
        const int vx = cx.valuation();
        if (vx > budget) continue;
        auto xl = split_legs(kx);
        for (size_t j = 0; j < ylegs.size(); ++j) {
            const int b = budget - vx - yval[j];
            if (b < 0) continue;
            for (int i = 0; i < rank; ++i) {
                std::string_view a = xl[i], bb = ylegs[j][i];
                if (a.empty() || bb.empty() || static_cast<unsigned char>(a.back()) <= static_cast<unsigned char>(bb.front())) {
                    legs[i].terms.reset();
                    legs[i].concat.assign(a);
                    legs[i].concat.append(bb);
                } else {
                    legs[i].terms = rs.product(Mono(a), Mono(bb), b);
                }
            }
            key.clear();
            combine(legs, 0, key, mul_upto(cx, *ycoef[j], budget), budget, out);
        }
    }
    return out;
}

Tensor mul(const RewriteSystem& rs, const std::vector<const Tensor*>& factors) {
    if (factors.empty()) throw Error(Errc::RankMismatch, "empty product");
    Tensor acc = *factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = mul(rs, acc, *factors[i]);
    return acc;
}

Tensor commutator(const RewriteSystem& rs, const Tensor& x, const Tensor& y) {
    return mul(rs, x, y) - mul(rs, y, x);
}

Tensor power(const RewriteSystem& rs, const Tensor& x, int k) {
    Tensor acc = Tensor::unit(x.rank(), x.order());
    for (int i = 0; i < k; ++i) acc = mul(rs, acc, x);
    return acc;
}

Tensor exp_element(const RewriteSystem& rs, const Tensor& x) {
    if (x.valuation() < 1) throw Error(Errc::NonNilpotentArgument, "exp needs lambda-valuation >= 1");
    Tensor acc = Tensor::unit(x.rank(), x.order());
    Tensor term = acc;
    for (int k = 1; k <= x.order(); ++k) {
        term = mul(rs, term, x);
        term *= Rational(1, k);
        if (term.is_zero()) break;
        acc += term;
    }
    return acc;
}

Tensor inverse(const RewriteSystem& rs, const Tensor& x) {
    const int N = x.order();
    const std::string unit_key(x.rank() - 1, kLegSep);
    Tensor x0 = x.component(0);
    Series c0 = x0.coeff(unit_key);
    if (sgn(c0[0]) == 0 || x0.size() != 1) throw Error(Errc::NotInvertible, "order-0 part is not a nonzero scalar");
    Rational inv0 = 1 / c0[0];
    // x = c0 (1 + y), x^-1 = c0^-1 sum (-y)^k
    Tensor y = x;
    y *= inv0;
    y -= Tensor::unit(x.rank(), N);
    Tensor acc = Tensor::unit(x.rank(), N);
    Tensor term = acc;
    Tensor my = -y;
    for (int k = 1; k <= N; ++k) {
        term = mul(rs, term, my);
        if (term.is_zero()) break;
        acc += term;
    }
    acc *= inv0;
    return acc;
}

ContractibilityResult contractibility_check(const RewriteSystem& rs, const Tensor& x, int offset) {
    ContractibilityResult r;
    for (const auto& k : x.sorted_keys()) {
        const Series& s = x.terms().at(k);
        const int d = rs.p_degree(k);
        for (int n = 0; n <= s.order(); ++n)
            if (sgn(s[n]) != 0 && d > n + offset) {
                r.ok = false;
                r.witnesses.emplace_back(n, k);
            }
    }
    std::sort(r.witnesses.begin(), r.witnesses.end());
    return r;
}

Tensor embed(const Tensor& x, const std::vector<int>& slots, int target_rank) {
    if (static_cast<int>(slots.size()) != x.rank()) throw Error(Errc::BadPlacement, "slot count");
    std::vector<bool> used(target_rank, false);
    for (int s : slots) {
        if (s < 0 || s >= target_rank || used[s]) throw Error(Errc::BadPlacement, "bad slot list");
        used[s] = true;
    }
    Tensor out(target_rank, x.order());
    std::vector<std::string_view> legs(target_rank);
    for (const auto& [k, c] : x.terms()) {
        auto xl = split_legs(k);
        for (auto& l : legs) l = std::string_view();
        for (size_t i = 0; i < xl.size(); ++i) legs[slots[i]] = xl[i];
        out.add(join_legs(legs), c);
    }
    return out;
}

Tensor leg_embed(const Tensor& x, const std::string& placement, int target_rank) {
    if (x.rank() != 2) throw Error(Errc::BadPlacement, "leg_embed needs a rank-2 input");
    if (placement == "21" && target_rank == 2) return embed(x, {1, 0}, 2);
    if (target_rank == 3) {
        if (placement == "12") return embed(x, {0, 1}, 3);
        if (placement == "23") return embed(x, {1, 2}, 3);
        if (placement == "13") return embed(x, {0, 2}, 3);
        if (placement == "21") return embed(x, {1, 0}, 3);
        if (placement == "32") return embed(x, {2, 1}, 3);
        if (placement == "31") return embed(x, {2, 0}, 3);
    }
    throw Error(Errc::BadPlacement, "placement " + placement + " into rank " + std::to_string(target_rank));
}

Tensor tensor_product(const Tensor& x, const Tensor& y) {
    if (x.order() != y.order()) throw Error(Errc::MismatchedOrder, "tensor product orders");
    Tensor out(x.rank() + y.rank(), x.order());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            Series c = cx * cy;
            if (c.is_zero()) continue;
            std::string k = kx;
            k.push_back(kLegSep);
            k.append(ky);
            out.add(std::move(k), c);
        }
    return out;
}

Tensor multiply_legs(const RewriteSystem& rs, const Tensor& x) {
    if (x.rank() != 2) throw Error(Errc::RankMismatch, "multiply_legs needs rank 2");
    Tensor out(1, x.order());
    for (const auto& [k, c] : x.terms()) {
        auto l = split_legs(k);
        auto p = rs.product(Mono(l[0]), Mono(l[1]), rs.order() - c.valuation());
        for (const auto& [m, s] : *p) out.add(m, mul_upto(c, s, rs.order()));
    }
    return out;
}

// ---------------------------------------------------------------- GenMap

GenMap identity_map(const RsPtr& rs) {
    GenMap m;
    m.source = rs;
    m.target = rs;
    m.mode = ExtMode::Hom;
    m.target_rank = 1;
    for (int g = 0; g < rs->dim(); ++g) m.images.push_back(gen(*rs, g));
    return m;
}

namespace {

class ImageCache {
public:
    explicit ImageCache(const GenMap& map) : map_(map) {
        if (!map.source || !map.target) throw Error(Errc::RankMismatch, "GenMap without rewrite systems");
        if (static_cast<int>(map.images.size()) != map.source->dim())
            throw Error(Errc::RankMismatch, "GenMap image count");
        for (const auto& im : map.images)
            if (im.rank() != map.target_rank || im.order() != map.target->order())
                throw Error(Errc::RankMismatch, "GenMap image rank/order");
    }

    // Image of a sorted monomial with lambda orders <= budget.
    const Tensor& image(const Mono& m, int budget) {
        std::string key = m;
        key.push_back(kLegSep);
        key.push_back(static_cast<char>(budget));
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const RewriteSystem& t = *map_.target;
        Tensor r(map_.target_rank, t.order());
        if (m.empty()) {
            if (map_.mode != ExtMode::Derivation) r = Tensor::unit(map_.target_rank, t.order());
        } else if (map_.mode == ExtMode::Derivation) {
            // D(u g) = D(u) g + u D(g)
            Mono u = m.substr(0, m.size() - 1);
            Tensor gu = Tensor::term(1, u, Series::constant(t.order(), 1));
            Tensor gg = Tensor::term(1, Mono(1, m.back()), Series::constant(t.order(), 1));
            r = mul(t, image(u, budget), gg, budget) +
                mul(t, gu, map_.images[static_cast<unsigned char>(m.back())].truncated(budget), budget);
        } else {
            Mono u = m.substr(0, m.size() - 1);
            const Tensor& g = map_.images[static_cast<unsigned char>(m.back())];
            Tensor gt = g.truncated(budget);
            const Tensor& iu = image(u, budget);
            r = map_.mode == ExtMode::Hom ? mul(t, iu, gt, budget) : mul(t, gt, iu, budget);
        }
        return cache_.emplace(std::move(key), std::move(r)).first->second;
    }

private:
    const GenMap& map_;
    std::unordered_map<std::string, Tensor> cache_;
};

} // namespace

Tensor apply(const GenMap& map, const Tensor& x) {
    if (x.rank() != 1) throw Error(Errc::RankMismatch, "apply needs a rank-1 element");
    if (map.mode == ExtMode::Derivation && map.target_rank != 1)
        throw Error(Errc::RankMismatch, "derivations must have rank-1 images");
    ImageCache cache(map);
    const int N = map.target->order();
    Tensor out(map.target_rank, N);
    for (const auto& k : x.sorted_keys()) {
        const Series& c = x.terms().at(k);
        const int b = N - c.valuation();
        if (b < 0) continue;
        for (const auto& [ik, ic] : cache.image(k, b).terms()) out.add(ik, mul_upto(c, ic, N));
    }
    return out;
}

Tensor apply_on_leg(const GenMap& map, const Tensor& x, int leg) {
    if (leg < 0 || leg >= x.rank()) throw Error(Errc::BadPlacement, "leg index");
    if (map.mode == ExtMode::Derivation) throw Error(Errc::RankMismatch, "apply_on_leg needs a hom");
    ImageCache cache(map);
    const int N = map.target->order();
    Tensor out(x.rank() - 1 + map.target_rank, N);
    for (const auto& [k, c] : x.terms()) {
        const int b = N - c.valuation();
        if (b < 0) continue;
        auto legs = split_legs(k);
        const Tensor& img = cache.image(Mono(legs[leg]), b);
        for (const auto& [ik, ic] : img.terms()) {
            std::vector<std::string_view> nl;
            for (int i = 0; i < leg; ++i) nl.push_back(legs[i]);
            nl.push_back(ik); // may itself contain separators
            for (int i = leg + 1; i < x.rank(); ++i) nl.push_back(legs[i]);
            out.add(join_legs(nl), mul_upto(c, ic, N));
        }
    }
    return out;
}

Tensor apply_legwise(const GenMap& map, const Tensor& x) {
    if (map.target_rank != 1 || map.mode == ExtMode::Derivation)
        throw Error(Errc::RankMismatch, "apply_legwise needs a rank-1 hom");
    ImageCache cache(map);
    const int N = map.target->order();
    Tensor out(x.rank(), N);
    for (const auto& [k, c] : x.terms()) {
        const int v = c.valuation();
        if (v > N) continue;
        auto legs = split_legs(k);
        // product over legs of leg images
        Tensor acc = Tensor::scalar(0 + 1, c); // rank placeholder, rebuilt below
        std::vector<std::pair<std::string, Series>> partial{{std::string(), c}};
        for (size_t i = 0; i < legs.size(); ++i) {
            std::vector<std::pair<std::string, Series>> next;
            for (const auto& [pk, pc] : partial) {
                const int b = N - pc.valuation();
                if (b < 0) continue;
                for (const auto& [ik, ic] : cache.image(Mono(legs[i]), b).terms()) {
                    Series s = mul_upto(pc, ic, N);
                    if (s.is_zero()) continue;
                    std::string nk = pk;
                    if (i) nk.push_back(kLegSep);
                    nk.append(ik);
                    next.emplace_back(std::move(nk), std::move(s));
                }
            }
            partial = std::move(next);
        }
        for (auto& [pk, pc] : partial) out.add(std::move(pk), pc);
    }
    return out;
}

GenMap compose(const GenMap& phi, const GenMap& psi) {
    // (phi o psi)(g) = phi(psi(g))
    if (psi.target_rank != 1) throw Error(Errc::RankMismatch, "compose needs a rank-1 inner map");
    GenMap out;
    out.source = psi.source;
    out.target = phi.target;
    out.mode = phi.mode;
    out.target_rank = phi.target_rank;
    for (const auto& im : psi.images) out.images.push_back(apply(phi, im));
    return out;
}

GenMap inverse_hom(const GenMap& map) {
    // psi : target -> source with phi(psi(g)) = g, by psi <- psi - (phi(psi(g)) - g)
    // identifying the two monomial bases (same generator sets).
    if (map.target_rank != 1 || map.mode != ExtMode::Hom) throw Error(Errc::RankMismatch, "inverse_hom needs a rank-1 hom");
    const RewriteSystem& s = *map.source;
    const RewriteSystem& t = *map.target;
    if (s.dim() != t.dim() || s.order() != t.order()) throw Error(Errc::GeneratorMismatch, "generator sets differ");
    GenMap inv;
    inv.source = map.target;
    inv.target = map.source;
    inv.mode = ExtMode::Hom;
    inv.target_rank = 1;
    for (int g = 0; g < s.dim(); ++g) inv.images.push_back(gen(s, g));
    for (int it = 0; it <= s.order(); ++it) {
        bool changed = false;
        for (int g = 0; g < s.dim(); ++g) {
            Tensor r = apply(map, inv.images[g]) - gen(t, g);
            if (r.is_zero()) continue;
            changed = true;
            inv.images[g] -= r; // same keys denote the same PBW monomials
        }
        if (!changed) break;
    }
    for (int g = 0; g < s.dim(); ++g)
        if (!(apply(map, inv.images[g]) == gen(t, g)))
            throw Error(Errc::NotInvertible, "map is not invertible mod lambda");
    return inv;
}

Series counit_of(const std::vector<Series>& eps, std::string_view mono, int order) {
    Series s = Series::constant(order, 1);
    for (char ch : mono) s *= eps.at(static_cast<unsigned char>(ch));
    return s;
}

Tensor apply_counit_on_leg(const std::vector<Series>& eps, const Tensor& x, int leg) {
    if (x.rank() < 2) throw Error(Errc::RankMismatch, "counit on a leg needs rank >= 2");
    Tensor out(x.rank() - 1, x.order());
    for (const auto& [k, c] : x.terms()) {
        auto legs = split_legs(k);
        Series e = counit_of(eps, legs[leg], x.order());
        if (e.is_zero()) continue;
        legs.erase(legs.begin() + leg);
        out.add(join_legs(legs), c * e);
    }
    return out;
}

} // namespace hc
