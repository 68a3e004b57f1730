#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hc/pbw.hpp"

namespace hc {

// Cochain on g with values in U^{(x)rank}; stored on increasing index tuples.
struct CECochain {
    int degree = 0;
    int rank = 2;
    std::map<std::vector<int>, Tensor> values;

    // Value on an arbitrary tuple (antisymmetric extension; zero on repeats).
    Tensor at(const RewriteSystem& rs, std::vector<int> args) const;
    void set(std::vector<int> args, const Tensor& v); // args increasing
};

// x |> t = [D0(x), t] with D0(x) primitive on every leg.
Tensor ce_action(const RewriteSystem& rs, int x, const Tensor& t);
CECochain ce_coboundary(const RewriteSystem& rs, const CECochain& f);
// (x |> f)(a..) = x |> f(a..) - sum_k f(.., [x, a_k], ..)
CECochain ce_act_on_cochain(const RewriteSystem& rs, int x, const CECochain& f);
bool ce_equal(const CECochain& a, const CECochain& b);

// Hochschild cochain evaluated lazily on monomial arguments of degree <= window.
struct HCochain {
    int degree = 0;
    int window = 0;
    std::function<Tensor(const std::vector<Mono>&)> eval;

    Tensor operator()(const std::vector<Mono>& args) const;
};

// Multilinear evaluation on element arguments.
Tensor hc_evaluate(const RewriteSystem& rs, const HCochain& f, const std::vector<Tensor>& args);
HCochain hochschild_coboundary(RsPtr rs, const HCochain& f);

struct D0Caps {
    int p_cap = 1;
    int degree_cap = 2; // bound on the total degree of each monomial pair (hence on each leg)
};

struct D0Diagnostics {
    int rows = 0;
    int columns = 0;
    int rank = 0;
    int kernel_dim = 0;
    int degree_cap = 0;
    int p_cap = 0;
    bool exact_p_degree = false;
    bool unit_legs_excluded = false;
};

struct D0Solution {
    Tensor alpha;
    D0Diagnostics diag;
};

// First failing pair of d_1 xi, as labels; empty when xi is a cocycle.
std::vector<std::string> cocycle_witness(const RewriteSystem& rs, const CECochain& xi);

// alpha with [D0(g), alpha] = xi(g) for all g, over monomial pairs of total
// p-degree <= p_cap and total degree <= degree_cap. Free variables are set to
// zero under the column order (max leg degree, total degree, key).
D0Solution solve_d0(const RewriteSystem& rs, const CECochain& xi, const D0Caps& caps);

} // namespace hc
