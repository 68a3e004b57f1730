#pragma once

#include <map>
#include <string>
#include <vector>

#include "hc/lie.hpp"
#include "hc/pbw.hpp"

namespace hc {

// Symmetric tensor over g (+) g. Basis vector v = copy * dim + generator, copy 0 is X, copy 1 is Y.
struct SymTensor {
    int degree = 0;
    std::map<std::vector<int>, Rational> entries; // sorted tuples

    void add(std::vector<int> tuple, const Rational& c);
    bool is_zero() const { return entries.empty(); }
    bool operator==(const SymTensor& o) const { return degree == o.degree && entries == o.entries; }
};

// (number of H factors, number of P factors) of a tuple.
std::pair<int, int> bigrade(const LieAlgebraSpec& spec, const std::vector<int>& tuple);
// Number of factors taken from the first copy.
int copy_count(const LieAlgebraSpec& spec, const std::vector<int>& tuple);
std::string tuple_string(const LieAlgebraSpec& spec, const std::vector<int>& tuple);

// Diagonal adjoint action of generator x, extended as a derivation.
SymTensor sym_action(const LieAlgebraSpec& spec, int x, const SymTensor& t);

struct AmbientFilter {
    int degree = 0;
    int h_count = -1;     // -1: any
    int p_count = -1;     // -1: any
    int first_copy = -1;  // number of factors from the first copy, -1: any
};

enum class Acting { HOnly, Full };

struct SubspaceBasis {
    AmbientFilter filter;
    int ambient_dim = 0;
    std::vector<SymTensor> basis;
};

std::vector<std::vector<int>> ambient_tuples(const LieAlgebraSpec& spec, const AmbientFilter& f);
SubspaceBasis invariant_subspace(const LieAlgebraSpec& spec, const AmbientFilter& f, Acting acting,
                                 int ambient_cap = 20000);

struct RestrictionReport {
    int degree = 0;
    int full_invariants = 0;      // dim S_p(g+g)^g
    int restricted_invariants = 0; // dim S_{0,p}(g+g)^h
    int image_rank = 0;           // rank of the projection of the former
    bool surjective = true;
    std::vector<SymTensor> cokernel_basis;
};

// Zero every tuple containing an H-vector.
SymTensor project_to_p(const LieAlgebraSpec& spec, const SymTensor& t);
RestrictionReport restriction_check(const LieAlgebraSpec& spec, int degree, int ambient_cap = 20000);

// Rank of a family of SymTensors.
int sym_rank(const std::vector<SymTensor>& v);

// sym(x_1..x_n) = (1/n!) sum over permutations, for tensors over a single copy.
Tensor symmetrize(const RewriteSystem& rs, const SymTensor& t);

} // namespace hc
