#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hc/pbw.hpp"

namespace hc {

struct HopfSpec {
    std::string name;
    RsPtr rs;
    GenMap delta;              // rank-2 images, Hom
    std::vector<Series> counit; // per generator
    GenMap antipode;           // rank-1 images, AntiHom
    std::optional<Tensor> R;   // rank 2
    std::optional<Tensor> Phi; // rank 3
    bool p_contractible = false;
    std::map<std::string, Rational> parameters; // solved scalars (e.g. "d")
};

struct AxiomCheck {
    std::string name;
    bool ok = true;
    std::string witness; // readable key of the first differing term
    std::string where;   // generator or sample that failed
    int order = -1;      // lambda-order of the first violation
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool ok() const;
    const AxiomCheck* find(const std::string& name) const;
};

// Undeformed envelope with primitive coproduct, S(x) = -x, eps(x) = 0.
HopfSpec canonical_hopf(const RsPtr& rs);

struct SampleConfig {
    int samples = 50;
    int max_degree = 3;
    std::uint64_t seed = 20240917;
};

AxiomReport check_hopf_axioms(const HopfSpec& h, const SampleConfig& cfg = {});
// Phi (id(x)D)D(a) = (D(x)id)D(a) Phi, pentagon, (id(x)eps(x)id)Phi = 1(x)1.
AxiomReport check_quasi_hopf(const HopfSpec& h);
// R D(a) = D^op(a) R, R_21 R = 1(x)1, and both hexagons when Phi is present.
AxiomReport check_triangular(const HopfSpec& h);

struct KappaOptions {
    bool drop_boost_rotation_term = false; // counterexample: delete the P(x)M term of D(N_i)
};

// kappa-Poincare in n = 3 or 4 dimensions with lambda = 1/kappa, truncated at N.
HopfSpec kappa_poincare(int n, int N, const KappaOptions& opt = {});
// The deformed rewrite system alone.
RsPtr kappa_rewrite_system(int n, int N);

// First differing term of a - b, or nullopt when equal.
struct Difference {
    std::string key;
    int order;
};
std::optional<Difference> first_difference(const Tensor& a, const Tensor& b);

// Leg-flip of a rank-2 map image: D^op.
Tensor flip(const Tensor& x);
// (D (x) id) style: apply a coproduct-like hom to leg `leg`.
Tensor delta_on_leg(const HopfSpec& h, const Tensor& x, int leg);

} // namespace hc
