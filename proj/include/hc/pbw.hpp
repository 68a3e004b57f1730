#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hc/lie.hpp"
#include "hc/scalars.hpp"

namespace hc {

// A monomial is a string of generator indices (one char per factor), sorted
// for normal forms. A tensor key joins the monomials of each leg with kLegSep.
using Mono = std::string;
constexpr char kLegSep = '\x7f';

std::vector<std::string_view> split_legs(std::string_view key);
std::string join_legs(const std::vector<std::string_view>& legs);
std::string join_legs(const std::vector<std::string>& legs);

// Sparse element of U^{(x)rank}[[lambda]] / lambda^(order+1). Rank 1 is a plain
// element of the envelope.
class Tensor {
public:
    using Map = std::unordered_map<std::string, Series>;

    Tensor() : rank_(1), order_(0) {}
    Tensor(int rank, int order) : rank_(rank), order_(order) {}

    static Tensor unit(int rank, int order);
    static Tensor scalar(int rank, const Series& s);
    static Tensor term(int rank, const std::string& key, const Series& s);

    int rank() const { return rank_; }
    int order() const { return order_; }
    const Map& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add(const std::string& key, const Series& c);
    void add(std::string&& key, const Series& c);
    void erase_zeros();

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(const Rational& c);
    Tensor operator-() const;
    bool operator==(const Tensor& o) const;
    bool operator!=(const Tensor& o) const { return !(*this == o); }

    // Smallest lambda-order carrying a nonzero coefficient (order+1 if zero).
    int valuation() const;
    Tensor truncated(int k) const;
    // Only the lambda^k part (still a series of the same order).
    Tensor component(int k) const;
    // Multiply every coefficient by a series.
    Tensor scaled(const Series& s) const;
    // Coefficient of a key (zero series if absent).
    Series coeff(const std::string& key) const;

    std::vector<std::string> sorted_keys() const;

private:
    int rank_;
    int order_;
    Map terms_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);

using Element = Tensor;
using Terms = std::vector<std::pair<Mono, Series>>;

// PBW normal ordering for g_a g_b = g_b g_a + corrections(a, b), a > b.
class RewriteSystem {
public:
    // Undeformed envelope of a Lie algebra (generators must be H-before-P).
    RewriteSystem(LieAlgebraSpec algebra, int truncation);
    // Deformed system: `corrections` override the Lie bracket for the given
    // pairs (a > b); missing pairs use the bracket. Validated on construction.
    RewriteSystem(LieAlgebraSpec algebra, int truncation, const std::map<std::pair<int, int>, Tensor>& corrections);

    const LieAlgebraSpec& algebra() const { return algebra_; }
    int order() const { return order_; }
    int dim() const { return algebra_.dim(); }
    bool deformed() const { return deformed_; }
    const Tensor& correction(int a, int b) const { return corr_[a * dim() + b]; } // a > b

    bool is_p(int g) const { return algebra_.parity(g) == Parity::P; }
    int p_degree(std::string_view key) const;
    int degree(std::string_view key) const; // total number of factors over all legs
    // Order-0 rules keep the p-count exactly (contracted algebras).
    bool p_graded() const { return p_graded_; }
    // Every rule keeps the p-count mod 2.
    bool p_parity() const { return p_parity_; }
    // Every rule keeps weight = p_degree - lambda order (kappa-type scaling).
    bool weight_graded() const { return weight_graded_; }

    // Normal form of the product of two sorted monomials, keeping lambda
    // orders <= budget. Memoized.
    std::shared_ptr<const Terms> product(const Mono& a, const Mono& b, int budget) const;

    std::string mono_string(std::string_view m) const;
    std::string key_string(std::string_view key) const;

    // Diamond check on all length-3 words; returns a description of the
    // first failure or an empty string.
    std::string diamond_check() const;

private:
    void init_flags();
    Terms compute_product(const Mono& a, const Mono& b, int budget) const;

    LieAlgebraSpec algebra_;
    int order_;
    bool deformed_ = false;
    bool p_graded_ = false;
    bool p_parity_ = false;
    bool weight_graded_ = false;
    std::vector<Tensor> corr_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::string, std::shared_ptr<const Terms>> cache_;
};

using RsPtr = std::shared_ptr<const RewriteSystem>;

Tensor gen(const RewriteSystem& rs, int g, int rank = 1, int leg = 0);
Tensor normal_form(const RewriteSystem& rs, const std::vector<int>& word, const Series& coeff);
Tensor normal_form(const RewriteSystem& rs, const std::vector<std::string>& word, const Series& coeff);
// Product, dropping lambda orders above `budget` (default: the truncation).
Tensor mul(const RewriteSystem& rs, const Tensor& x, const Tensor& y, int budget = -1);
Tensor mul(const RewriteSystem& rs, const std::vector<const Tensor*>& factors);
Tensor commutator(const RewriteSystem& rs, const Tensor& x, const Tensor& y);
Tensor power(const RewriteSystem& rs, const Tensor& x, int k);
Tensor exp_element(const RewriteSystem& rs, const Tensor& x);
Tensor inverse(const RewriteSystem& rs, const Tensor& x);

struct ContractibilityResult {
    bool ok = true;
    std::vector<std::pair<int, std::string>> witnesses; // (lambda order, key)
};
ContractibilityResult contractibility_check(const RewriteSystem& rs, const Tensor& x, int offset);

// Leg placement of a rank-2 tensor: "12", "23", "13" (rank 3) or "21" (rank 2).
Tensor leg_embed(const Tensor& x, const std::string& placement, int target_rank);
// General embedding: leg i of x goes to slot slots[i]; other slots get 1.
Tensor embed(const Tensor& x, const std::vector<int>& slots, int target_rank);
Tensor tensor_product(const Tensor& x, const Tensor& y);
// m: a (x) b -> a b for rank 2.
Tensor multiply_legs(const RewriteSystem& rs, const Tensor& x);

enum class ExtMode { Hom, AntiHom, Derivation };

// Map given on generators and extended multiplicatively (Hom), reversing
// products (AntiHom) or by the Leibniz rule (Derivation).
struct GenMap {
    RsPtr source;
    RsPtr target;
    ExtMode mode = ExtMode::Hom;
    int target_rank = 1;
    std::vector<Tensor> images;
};

GenMap identity_map(const RsPtr& rs);
// Image of a rank-1 element.
Tensor apply(const GenMap& map, const Tensor& x);
// Apply to one leg of a tensor over map.source; the result has
// rank x.rank() - 1 + map.target_rank with the images spliced in place.
Tensor apply_on_leg(const GenMap& map, const Tensor& x, int leg);
// Apply to every leg (each leg of x is mapped; target_rank must be 1).
Tensor apply_legwise(const GenMap& map, const Tensor& x);
// psi after phi: images phi(psi(g))... composition (first psi, then phi).
GenMap compose(const GenMap& phi, const GenMap& psi);
// Inverse of a hom congruent to the identity mod lambda between systems
// with identical generator sets; images live in map.source.
GenMap inverse_hom(const GenMap& map);

// Counit-type scalar map on generators.
Series counit_of(const std::vector<Series>& eps, std::string_view mono, int order);
Tensor apply_counit_on_leg(const std::vector<Series>& eps, const Tensor& x, int leg);

} // namespace hc
