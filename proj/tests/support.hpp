#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hc/hopf.hpp"
#include "hc/lie.hpp"
#include "hc/pbw.hpp"

namespace testing {

using namespace hc;

inline RsPtr envelope(const std::string& name, int N) {
    return std::make_shared<const RewriteSystem>(registry::get(name), N);
}

inline Series one(int N) { return Series::constant(N, 1); }
inline Series lam(int N, int k = 1, long c = 1) { return Series::monomial(N, k, Rational(c)); }

inline Tensor word(const RewriteSystem& rs, const std::vector<std::string>& w, const Series& c) {
    return normal_form(rs, w, c);
}
inline Tensor word(const RewriteSystem& rs, const std::vector<std::string>& w) { return word(rs, w, one(rs.order())); }

// a (x) b for two rank-1 elements.
inline Tensor tp(const Tensor& a, const Tensor& b) { return tensor_product(a, b); }

inline Rational small_rational(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 7) - 3;
    const long den = 1 + static_cast<long>(rng() % 3);
    return make_rational(num, den);
}

inline Series random_series(std::mt19937_64& rng, int N, int min_order = 0) {
    Series s(N);
    for (int k = min_order; k <= N; ++k) s.set(k, small_rational(rng));
    return s;
}

// Random element: sum of `terms` random words of length <= max_len.
inline Tensor random_element(std::mt19937_64& rng, const RewriteSystem& rs, int terms, int max_len) {
    Tensor x(1, rs.order());
    for (int t = 0; t < terms; ++t) {
        const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
        std::vector<int> w;
        for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(rs.dim())));
        x += normal_form(rs, w, random_series(rng, rs.order()));
    }
    return x;
}

inline Tensor random_tensor(std::mt19937_64& rng, const RewriteSystem& rs, int rank, int terms, int max_len) {
    Tensor x(rank, rs.order());
    for (int t = 0; t < terms; ++t) {
        Tensor prod = Tensor::unit(rank, rs.order());
        for (int leg = 0; leg < rank; ++leg) {
            Tensor e = random_element(rng, rs, 1, max_len);
            std::vector<int> slots{leg};
            prod = mul(rs, prod, embed(e, slots, rank));
        }
        x += prod;
    }
    return x;
}

// Element whose lambda^n part has p-degree <= n + offset (built term by term).
inline Tensor random_contractible(std::mt19937_64& rng, const RewriteSystem& rs, int rank, int terms, int offset) {
    Tensor x(rank, rs.order());
    std::vector<int> hs, ps;
    for (int g = 0; g < rs.dim(); ++g) (rs.is_p(g) ? ps : hs).push_back(g);
    for (int t = 0; t < terms; ++t) {
        const int n = static_cast<int>(rng() % static_cast<std::uint64_t>(rs.order() + 1));
        const int np = static_cast<int>(rng() % static_cast<std::uint64_t>(n + offset + 1));
        const int nh = static_cast<int>(rng() % 3);
        std::vector<std::vector<int>> legs(rank);
        for (int i = 0; i < np; ++i) legs[rng() % rank].push_back(ps[rng() % ps.size()]);
        for (int i = 0; i < nh; ++i) legs[rng() % rank].push_back(hs[rng() % hs.size()]);
        Tensor prod = Tensor::scalar(rank, Series::monomial(rs.order(), n, small_rational(rng)));
        for (int leg = 0; leg < rank; ++leg) {
            std::vector<int> slots{leg};
            prod = mul(rs, prod, embed(normal_form(rs, legs[leg], one(rs.order())), slots, rank));
        }
        x += prod;
    }
    return x;
}

// Dense bracket [x, y] with coefficient vectors, straight from the constants.
inline std::vector<Rational> dense_bracket(const LieAlgebraSpec& s, const std::vector<Rational>& x,
                                           const std::vector<Rational>& y) {
    std::vector<Rational> out(s.dim());
    for (int a = 0; a < s.dim(); ++a)
        for (int b = 0; b < s.dim(); ++b)
            for (int c = 0; c < s.dim(); ++c) out[c] += x[a] * y[b] * s.c(a, b, c);
    return out;
}

} // namespace testing
