#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hc/scalars.hpp"

namespace hc {

enum class Parity { H, P, None };

const char* parity_name(Parity p);
Parity parse_parity(const std::string& s);

struct Generator {
    std::string label;
    Parity parity = Parity::None;
};

using LinComb = std::vector<std::pair<int, Rational>>; // sparse combination of generators

// Finite-dimensional Lie algebra given by structure constants in a basis.
class LieAlgebraSpec {
public:
    LieAlgebraSpec() = default;
    LieAlgebraSpec(std::string name, std::vector<Generator> gens);

    // Sets [g_a, g_b] (and [g_b, g_a] by antisymmetry). Indices are checked.
    void set_bracket(int a, int b, const LinComb& terms);
    void set_bracket(const std::string& a, const std::string& b,
                     const std::vector<std::pair<std::string, Rational>>& terms);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(int i) const { return gens_.at(i); }
    const std::string& label(int i) const { return gens_.at(i).label; }
    Parity parity(int i) const { return gens_.at(i).parity; }
    int index_of(const std::string& label) const; // throws UnknownGenerator

    // Dense coefficient of g_c in [g_a, g_b].
    const Rational& c(int a, int b, int cc) const { return consts_[(a * dim() + b) * dim() + cc]; }
    // Sparse [g_a, g_b].
    LinComb bracket_of(int a, int b) const;

    bool has_decomposition() const;
    // True when every H generator precedes every P generator.
    bool pbw_ordered() const;
    // Same algebra with generators stably reordered H first, then P.
    LieAlgebraSpec pbw_reordered() const;

    bool same_structure(const LieAlgebraSpec& o) const; // labels, parities and constants

private:
    std::string name_;
    std::vector<Generator> gens_;
    std::vector<Rational> consts_;
};

// Sparse tensor over the generator basis.
struct LieTensor {
    int rank = 1;
    int dim = 0;
    std::map<std::vector<int>, Rational> entries;

    LieTensor() = default;
    LieTensor(int rank_, int dim_) : rank(rank_), dim(dim_) {}
    void add(const std::vector<int>& idx, const Rational& v);
    bool is_zero() const { return entries.empty(); }
    bool operator==(const LieTensor& o) const { return rank == o.rank && entries == o.entries; }
};

LieTensor basis_vector(const LieAlgebraSpec& spec, int i);

struct ValidationReport {
    bool jacobi = true;
    bool decomposition = true;
    bool span_pp = true;
    std::vector<std::string> witnesses;
    bool ok() const { return jacobi && decomposition && span_pp; }
};

ValidationReport validate(const LieAlgebraSpec& spec);
LieTensor bracket(const LieAlgebraSpec& spec, const LieTensor& x, const LieTensor& y);
std::vector<std::vector<Rational>> killing_form(const LieAlgebraSpec& spec);
LieAlgebraSpec iw_contract(const LieAlgebraSpec& spec);
LieTensor cybe_bracket(const LieAlgebraSpec& spec, const LieTensor& r);

struct InvarianceResult {
    bool invariant = true;
    int witness_generator = -1; // first generator x with x . T != 0
};
InvarianceResult ad_invariant(const LieAlgebraSpec& spec, const LieTensor& t);
// Sum over legs of ad_x applied to each leg.
LieTensor ad_action(const LieAlgebraSpec& spec, int x, const LieTensor& t);

namespace registry {
// so3, so4, so5, iso3, iso4, sl2, so3-so2, so3xso3-diag
LieAlgebraSpec get(const std::string& name);
std::vector<std::string> names();
// Builders.
LieAlgebraSpec so3_compact();
LieAlgebraSpec so_kappa(int n);  // so(n+1) in kappa labels M_ij, N_i | P_i, E
LieAlgebraSpec iso_kappa(int n); // iso(n) in kappa labels
LieAlgebraSpec sl2_ai();
LieAlgebraSpec so3_so2();
LieAlgebraSpec so3xso3_diag();
} // namespace registry

} // namespace hc
