#pragma once

#include <string>
#include <vector>

#include "hc/cohomology.hpp"
#include "hc/hopf.hpp"

namespace hc {

struct IsoCaps {
    int degree_start = 1; // total degree bound tried first at each order (raised to at least order + 1)
    int degree_max = 8;
};

struct IsoOrderDiag {
    int order = 0;
    bool residual_zero = false;
    int columns = 0;
    int rank = 0;
    int degree_cap = 0;
};

struct IsoResult {
    GenMap phi;     // deformed -> target
    GenMap inverse; // target -> deformed
    std::vector<IsoOrderDiag> diag;
};

// phi = id + sum lambda^n phi_n with phi(g_a) phi(g_b) - phi(g_b) phi(g_a) = phi(correction(a, b)).
IsoResult solve_isomorphism(const RsPtr& deformed, const RsPtr& target, const IsoCaps& caps = {});
// Residual phi(g_a)phi(g_b) - phi(g_b)phi(g_a) - phi(corr(a,b)) for every pair a > b.
std::vector<Tensor> iso_residuals(const GenMap& phi);

// (phi (x) phi) o D o phi^-1 on the target's generators.
GenMap pull_back_coproduct(const HopfSpec& h, const IsoResult& iso);
// D(g_a) D(g_b) - D(g_b) D(g_a) == D(corr(a, b)) for all pairs; returns the first failing pair or "".
std::string hom_violation(const GenMap& delta);

struct TwistCaps {
    int degree_extra = 2; // how far the per-order degree cap may be raised past its default
};

struct TwistOrderDiag {
    int order = 0;
    bool cocycle = true;
    D0Diagnostics solve;
};

struct TwistResult {
    Tensor F;
    std::vector<Tensor> components; // f_1..f_K (lambda^n parts of F)
    std::vector<Tensor> alphas;     // d_0 solutions, f_n = -alpha_n
    Tensor R;
    Tensor Phi;
    std::vector<TwistOrderDiag> diag;
    bool verified = false;
};

// Primitive coproduct of an undeformed envelope as a GenMap.
GenMap primitive_coproduct(const RsPtr& rs);

// F with F D0(g) F^-1 = delta_tilde(g) mod lambda^{N+1}; R, Phi from the trivial structure.
TwistResult solve_twist(const GenMap& delta_tilde, const TwistCaps& caps = {});

struct QtqhPair {
    Tensor R;
    Tensor Phi;
};
// R^F = F_21 R F^-1, Phi^F = F_12 (D(x)id)(F) Phi (id(x)D)(F^-1) F_23^-1 with the base D.
QtqhPair twist_qtqh(const RewriteSystem& rs, const Tensor& F, const Tensor& base_R, const Tensor& base_Phi,
                    const GenMap& delta);
// F D(g) F^-1 for every generator.
GenMap twisted_coproduct(const RewriteSystem& rs, const Tensor& F, const GenMap& delta);

// kappa-contraction: at lambda-order n keep monomials of p-degree n + offset,
// drop lower ones, and reject higher ones (DivergentContraction).
Tensor kappa_contract(const RewriteSystem& rs, const Tensor& x, int offset);
// Generator images contracted with offset 0 (H) or 1 (P); source and target
// become the given contracted systems.
GenMap kappa_contract(const GenMap& m, const RsPtr& source, const RsPtr& target);
// iw_contract of the algebra plus contraction of every correction with the
// offset given by the number of P generators in the pair.
RsPtr kappa_contract(const RewriteSystem& rs);

} // namespace hc
