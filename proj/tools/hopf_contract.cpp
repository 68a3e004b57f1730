#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "hc/deform.hpp"
#include "hc/hopf.hpp"
#include "hc/invariants.hpp"
#include "hc/io.hpp"
#include "hc/lie.hpp"

using namespace hc;
using io::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string model;
    int truncation = -1; // -1: command default
    int degree = 2;
    int degree_cap = 8;
    int ambient_cap = 20000;
    int samples = 50;
    std::uint64_t seed = SampleConfig{}.seed;
    std::string output = "report.json";
    std::string golden;
    std::string write_golden;
    std::string r_file;
    std::string require = "none";
    bool timings = false;
};

struct Model {
    std::string name;
    int kappa_n = 0; // 3 or 4 for kappa-Poincare, else 0
    LieAlgebraSpec algebra;
};

Model resolve_model(const std::string& m) {
    const std::string kp = "kappa-poincare-";
    if (m.rfind(kp, 0) == 0) {
        const std::string rest = m.substr(kp.size());
        if (rest != "3" && rest != "4") throw UsageError("kappa-poincare models exist for n = 3 and 4, got '" + m + "'");
        const int n = rest[0] - '0';
        return {m, n, registry::iso_kappa(n)};
    }
    for (const auto& r : registry::names())
        if (r == m) return {m, 0, registry::get(m)};
    if (std::filesystem::is_regular_file(m)) {
        try {
            return {m, 0, io::load_algebra(m)};
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("unknown model '" + m + "' (registry name, kappa-poincare-3/4 or algebra JSON file)");
}

LieAlgebraSpec resolve_pair(const std::string& p) {
    static const std::map<std::string, std::string> alias = {{"so4-so3", "so4"}, {"so5-so4", "so5"}};
    std::string name = p;
    if (auto it = alias.find(p); it != alias.end()) name = it->second;
    LieAlgebraSpec spec;
    bool found = false;
    for (const auto& r : registry::names())
        if (r == name) {
            spec = registry::get(name);
            found = true;
        }
    if (!found && std::filesystem::is_regular_file(p)) {
        try {
            spec = io::load_algebra(p);
            found = true;
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    if (!found) throw UsageError("unknown symmetric pair '" + p + "'");
    if (!spec.has_decomposition()) throw UsageError("'" + p + "' carries no symmetric decomposition");
    return spec;
}

LieAlgebraSpec pbw_ordered(const LieAlgebraSpec& a) { return a.pbw_ordered() ? a : a.pbw_reordered(); }

class Clock {
public:
    void lap(const std::string& phase) {
        const auto now = std::chrono::steady_clock::now();
        laps_[phase] = std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }
    Json json() const {
        Json j = Json::object();
        for (const auto& [k, v] : laps_) j[k] = v;
        return j;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
    std::map<std::string, double> laps_;
};

// Human-readable summary line per check.
void print_check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "  " << (ok ? "pass" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
}

bool print_report(const AxiomReport& r) {
    for (const auto& c : r.checks)
        print_check(c.name, c.ok,
                    c.ok ? "" : "at " + c.where + ", lambda^" + std::to_string(c.order) + ": " + c.witness);
    return r.ok();
}

Json contractibility_json(const HopfSpec& h, bool& ok) {
    Json out = Json::object();
    ok = true;
    const RewriteSystem& rs = *h.rs;
    for (int g = 0; g < rs.dim(); ++g) {
        auto c = contractibility_check(rs, h.delta.images[g], rs.is_p(g) ? 1 : 0);
        Json w = Json::array();
        for (const auto& [n, k] : c.witnesses) w.push_back(std::to_string(n) + ":" + rs.key_string(k));
        out[rs.algebra().label(g)] = Json{{"pass", c.ok}, {"witnesses", w}};
        ok = ok && c.ok;
    }
    return out;
}

// ---------------------------------------------------------------- commands

int cmd_algebra_check(const RunConfig& cfg, Json& rep) {
    Model m = resolve_model(cfg.model);
    ValidationReport v = validate(m.algebra);
    rep["algebra"] = io::to_json(m.algebra);
    rep["dimension"] = m.algebra.dim();
    rep["has_decomposition"] = m.algebra.has_decomposition();
    rep["validation"] = Json{{"jacobi", v.jacobi}, {"decomposition", v.decomposition}, {"span_pp", v.span_pp},
                             {"witnesses", v.witnesses}};
    print_check("jacobi", v.jacobi);
    print_check("decomposition", v.decomposition);
    // span[p,p] = h is a property (false for contracted algebras), not a requirement.
    std::cout << "  info  span[p,p] = h: " << (v.span_pp ? "true" : "false") << "\n";
    bool ok = v.jacobi && v.decomposition;
    if (m.kappa_n) {
        // Construction runs the diamond check of the deformed relations.
        const int N = cfg.truncation < 0 ? 4 : cfg.truncation;
        bool confluent = true;
        std::string why;
        try {
            kappa_rewrite_system(m.kappa_n, N);
        } catch (const Error& e) {
            confluent = false;
            why = e.what();
        }
        rep["deformed_relations"] = Json{{"order", N}, {"confluent", confluent}, {"error", why}};
        print_check("deformed relations confluent", confluent, why);
        ok = ok && confluent;
    }
    rep["pass"] = ok;
    return ok ? kExitPass : kExitFail;
}

int cmd_hopf_check(const RunConfig& cfg, Json& rep, Clock& clock) {
    Model m = resolve_model(cfg.model);
    const int N = cfg.truncation < 0 ? 4 : cfg.truncation;
    HopfSpec h;
    if (m.kappa_n) {
        h = kappa_poincare(m.kappa_n, N);
    } else {
        h = canonical_hopf(std::make_shared<const RewriteSystem>(pbw_ordered(m.algebra), N));
    }
    clock.lap("build");
    SampleConfig sc;
    sc.samples = cfg.samples;
    sc.seed = cfg.seed;
    AxiomReport ax = check_hopf_axioms(h, sc);
    clock.lap("axioms");
    std::cout << "  truncation: lambda^" << N + 1 << "\n";
    bool ok = print_report(ax);
    rep["order"] = N;
    rep["axioms"] = io::to_json(ax);
    Json params = Json::object();
    for (const auto& [k, v] : h.parameters) {
        params[k] = v.get_num().get_str() + "/" + v.get_den().get_str();
        std::cout << "  solved " << k << " = " << v << "\n";
    }
    rep["parameters"] = params;
    if (m.kappa_n) {
        bool cok = true;
        rep["coproduct_contractibility"] = contractibility_json(h, cok);
        print_check("coproduct contractibility (H:0, P:1)", cok);
        ok = ok && cok;
    }
    rep["hopf"] = io::to_json(h);
    rep["pass"] = ok;
    return ok ? kExitPass : kExitFail;
}

// Antisymmetric part of f_1 as (legs, lambda^1 coefficient) pairs.
Json golden_terms(const RewriteSystem& rs, const Tensor& f1) {
    Tensor a = f1 - flip(f1);
    a *= Rational(1, 2);
    Json terms = Json::array();
    for (const auto& k : a.sorted_keys()) {
        const Rational& c = a.terms().at(k)[1];
        if (sgn(c) == 0) continue;
        Json legs = Json::array();
        for (auto leg : split_legs(k)) {
            Json mono = Json::array();
            for (char ch : leg) mono.push_back(rs.algebra().label(static_cast<unsigned char>(ch)));
            legs.push_back(mono);
        }
        terms.push_back(Json{{"monomials", legs}, {"coeff", c.get_num().get_str() + "/" + c.get_den().get_str()}});
    }
    return terms;
}

int cmd_twist_solve(const RunConfig& cfg, Json& rep, Clock& clock) {
    Model m = resolve_model(cfg.model);
    if (!m.kappa_n) throw UsageError("twist solve needs a deformed model (kappa-poincare-3 or kappa-poincare-4)");
    const int K = cfg.truncation < 0 ? 2 : cfg.truncation;
    if (K < 1) throw UsageError("twist solve needs --order >= 1");
    Json golden;
    if (!cfg.golden.empty()) {
        try {
            golden = io::read_file(cfg.golden);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    HopfSpec h = kappa_poincare(m.kappa_n, K);
    auto target = std::make_shared<const RewriteSystem>(registry::iso_kappa(m.kappa_n), K);
    clock.lap("build");
    IsoCaps ic;
    ic.degree_max = cfg.degree_cap;
    IsoResult iso = solve_isomorphism(h.rs, target, ic);
    clock.lap("isomorphism");
    GenMap dt = pull_back_coproduct(h, iso);
    TwistResult tw = solve_twist(dt);
    clock.lap("twist");

    bool ok = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail = "") {
        print_check(name, pass, detail);
        ok = ok && pass;
    };
    Json orders = Json::array();
    for (size_t n = 0; n < tw.diag.size(); ++n) {
        const auto& d = tw.diag[n];
        auto pc = contractibility_check(*target, tw.components[n], 0);
        orders.push_back(Json{{"order", d.order}, {"residual_cocycle", d.cocycle}, {"p_degree_bounded", pc.ok}});
        check("order " + std::to_string(d.order) + " residual is a 1-cocycle", d.cocycle);
        check("order " + std::to_string(d.order) + " f_n has p-degree <= n", pc.ok);
    }
    check("F D0 F^-1 equals the pulled-back coproduct", tw.verified);

    HopfSpec q = canonical_hopf(target);
    q.delta = dt;
    q.R = tw.R;
    q.Phi = tw.Phi;
    AxiomReport tri = check_triangular(q);
    AxiomReport qh = check_quasi_hopf(q);
    clock.lap("verification");
    ok = print_report(tri) && ok;
    ok = print_report(qh) && ok;

    Json f1 = golden_terms(*target, tw.components[0]);
    Json golden_json = Json{{"schema", 1}, {"model", m.name}, {"f1_antisymmetric", f1}};
    if (!cfg.write_golden.empty()) io::write_file(cfg.write_golden, golden_json);
    if (!cfg.golden.empty()) {
        const bool same = golden.contains("f1_antisymmetric") && golden["f1_antisymmetric"] == f1;
        check("f_1 antisymmetric part matches " + cfg.golden, same);
        rep["golden"] = Json{{"file", cfg.golden}, {"match", same}};
    }

    rep["order"] = K;
    rep["orders"] = orders;
    rep["f1_antisymmetric"] = f1;
    rep["isomorphism"] = io::to_json(iso);
    rep["twist"] = io::to_json(*target, tw);
    rep["triangular"] = io::to_json(tri);
    rep["quasi_hopf"] = io::to_json(qh);
    rep["pass"] = ok;
    return ok ? kExitPass : kExitFail;
}

int cmd_contract(const RunConfig& cfg, Json& rep) {
    Model m = resolve_model(cfg.model);
    if (!m.algebra.has_decomposition()) throw UsageError("'" + m.name + "' carries no symmetric decomposition");
    bool ok = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail = "") {
        print_check(name, pass, detail);
        ok = ok && pass;
    };
    // Undeformed source: so(n+1) for the kappa models and for so4/so5.
    int n = m.kappa_n;
    if (m.name == "so4") n = 3;
    if (m.name == "so5") n = 4;
    LieAlgebraSpec source = n ? registry::so_kappa(n) : m.algebra;
    LieAlgebraSpec contracted = iw_contract(pbw_ordered(source));
    rep["source"] = io::to_json(source);
    rep["iw_contraction"] = io::to_json(contracted);
    if (n) {
        const bool same = contracted.same_structure(registry::iso_kappa(n));
        rep["matches_registry"] = Json{{"entry", "iso" + std::to_string(n)}, {"match", same}};
        check("iw_contract(" + source.name() + ") equals iso" + std::to_string(n), same);
    } else {
        check("contracted algebra satisfies Jacobi", validate(contracted).jacobi);
    }
    if (m.kappa_n) {
        const int N = cfg.truncation < 0 ? 4 : cfg.truncation;
        HopfSpec h = kappa_poincare(m.kappa_n, N);
        bool cok = true;
        rep["coproduct_contractibility"] = contractibility_json(h, cok);
        check("coproduct contractibility (H:0, P:1)", cok);
        try {
            RsPtr crs = kappa_contract(*h.rs);
            bool fixed = true;
            for (int a = 0; a < crs->dim(); ++a)
                for (int b = 0; b < a; ++b) fixed = fixed && crs->correction(a, b) == h.rs->correction(a, b);
            GenMap cd = kappa_contract(h.delta, crs, crs);
            bool dfixed = true;
            for (int g = 0; g < crs->dim(); ++g) dfixed = dfixed && cd.images[g] == h.delta.images[g];
            rep["kappa_contraction"] = Json{{"order", N}, {"relations_fixed", fixed}, {"coproduct_fixed", dfixed}};
            check("kappa_contract leaves the relations unchanged", fixed);
            check("kappa_contract leaves the coproduct unchanged", dfixed);
        } catch (const Error& e) {
            rep["kappa_contraction"] = Json{{"error", e.what()}, {"witnesses", e.witnesses}};
            check("kappa_contract", false, e.what());
        }
    }
    rep["pass"] = ok;
    return ok ? kExitPass : kExitFail;
}

int cmd_restriction(const RunConfig& cfg, Json& rep) {
    LieAlgebraSpec spec = resolve_pair(cfg.model);
    RestrictionReport r = restriction_check(spec, cfg.degree, cfg.ambient_cap);
    rep["pair"] = cfg.model;
    rep["restriction"] = io::to_json(spec, r);
    std::cout << "  degree " << r.degree << ": dim S(g+g)^g = " << r.full_invariants
              << ", dim S_{0,p}(g+g)^h = " << r.restricted_invariants << ", image rank = " << r.image_rank << "\n";
    std::cout << "  surjective: " << (r.surjective ? "true" : "false") << "\n";
    for (const auto& w : r.cokernel_basis) {
        std::cout << "  cokernel:";
        for (const auto& [t, c] : w.entries) std::cout << " " << (sgn(c) < 0 ? "" : "+") << c << " " << tuple_string(spec, t);
        std::cout << "\n";
    }
    // Non-surjectivity is a finding, not a failure.
    rep["pass"] = true;
    return kExitPass;
}

int cmd_cybe(const RunConfig& cfg, Json& rep) {
    Model m = resolve_model(cfg.model);
    if (cfg.r_file.empty()) throw UsageError("cybe needs --r <file>");
    LieTensor r;
    try {
        r = io::lie_tensor_from_json(m.algebra, io::read_file(cfg.r_file));
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (r.rank != 2) throw UsageError("r must be a rank-2 tensor");
    LieTensor cb = cybe_bracket(m.algebra, r);
    LieTensor sym(2, m.algebra.dim());
    for (const auto& [idx, v] : r.entries) {
        sym.add(idx, v);
        sym.add({idx[1], idx[0]}, v);
    }
    const bool zero = cb.is_zero();
    InvarianceResult inv_cb = ad_invariant(m.algebra, cb);
    InvarianceResult inv_sym = ad_invariant(m.algebra, sym);
    auto witness = [&](const InvarianceResult& i) {
        return i.invariant ? Json(nullptr) : Json(m.algebra.label(i.witness_generator));
    };
    rep["r"] = io::to_json(m.algebra, r);
    rep["cybe_bracket"] = io::to_json(m.algebra, cb);
    rep["cybe_holds"] = zero;
    rep["cybe_bracket_ad_invariant"] = Json{{"invariant", inv_cb.invariant}, {"witness", witness(inv_cb)}};
    rep["symmetric_part_ad_invariant"] = Json{{"invariant", inv_sym.invariant}, {"witness", witness(inv_sym)}};
    std::cout << "  [[r,r]] " << (zero ? "= 0" : "!= 0") << ", ad-invariant: " << (inv_cb.invariant ? "yes" : "no")
              << ", r + r_21 ad-invariant: " << (inv_sym.invariant ? "yes" : "no") << "\n";
    bool ok = true;
    if (cfg.require == "cybe") ok = zero;
    if (cfg.require == "mcybe") ok = inv_cb.invariant;
    rep["require"] = cfg.require;
    rep["pass"] = ok;
    return ok ? kExitPass : kExitFail;
}

int run(const RunConfig& cfg) {
    Json rep;
    rep["schema"] = 1;
    rep["command"] = cfg.command;
    rep["model"] = cfg.model;
    rep["seed"] = cfg.seed;
    rep["config"] = Json{{"order", cfg.truncation}, {"degree", cfg.degree}, {"degree_cap", cfg.degree_cap},
                         {"ambient_cap", cfg.ambient_cap}, {"samples", cfg.samples}};
    std::cout << cfg.command << " " << cfg.model << "  (seed " << cfg.seed << ")\n";
    Clock clock;
    int code = kExitFail;
    try {
        if (cfg.command == "algebra check") code = cmd_algebra_check(cfg, rep);
        else if (cfg.command == "hopf check") code = cmd_hopf_check(cfg, rep, clock);
        else if (cfg.command == "twist solve") code = cmd_twist_solve(cfg, rep, clock);
        else if (cfg.command == "contract") code = cmd_contract(cfg, rep);
        else if (cfg.command == "invariants restriction") code = cmd_restriction(cfg, rep);
        else if (cfg.command == "cybe") code = cmd_cybe(cfg, rep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rep["error"] = Json{{"code", errc_name(e.code())}, {"message", e.what()}, {"witnesses", e.witnesses}};
        rep["pass"] = false;
        code = kExitFail;
    }
    clock.lap("total");
    if (cfg.timings) rep["timings"] = clock.json();
    try {
        io::write_file(cfg.output, rep);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cout << (code == kExitPass ? "PASS" : "FAIL") << "  report: " << cfg.output << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic checks and solvers for contractible twists of kappa-Poincare"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
        sub->add_option("-o,--output", cfg.output, "Report JSON path")->capture_default_str();
        sub->add_flag("--timings", cfg.timings, "Add wall-clock timings to the report");
    };
    auto order_opt = [&](CLI::App* sub, const char* help) {
        sub->add_option("--order", cfg.truncation, help)->check(CLI::NonNegativeNumber);
    };

    auto* algebra = app.add_subcommand("algebra", "Lie algebra commands")->require_subcommand(1);
    auto* a_check = algebra->add_subcommand("check", "Validate structure constants");
    a_check->add_option("model", cfg.model, "Registry name, kappa-poincare-3/4 or algebra JSON")->required();
    order_opt(a_check, "Truncation used for the deformed relations of kappa models (default 4)");
    common(a_check);

    auto* hopf = app.add_subcommand("hopf", "Hopf algebra commands")->require_subcommand(1);
    auto* h_check = hopf->add_subcommand("check", "Verify the Hopf axioms mod lambda^(N+1)");
    h_check->add_option("model", cfg.model, "Registry name, kappa-poincare-3/4 or algebra JSON")->required();
    order_opt(h_check, "Truncation N (default 4)");
    h_check->add_option("--samples", cfg.samples, "Random words checked besides generators")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    common(h_check);

    auto* twist = app.add_subcommand("twist", "Twist commands")->require_subcommand(1);
    auto* t_solve = twist->add_subcommand("solve", "Solve for the contractible twist order by order");
    t_solve->add_option("model", cfg.model, "kappa-poincare-3 or kappa-poincare-4")->required();
    order_opt(t_solve, "Twist order K (default 2)");
    t_solve->add_option("--golden", cfg.golden, "Compare the antisymmetric part of f_1 with this file");
    t_solve->add_option("--write-golden", cfg.write_golden, "Write the antisymmetric part of f_1 to this file");
    t_solve->add_option("--degree-cap", cfg.degree_cap, "Largest degree tried by the isomorphism solver")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common(t_solve);

    auto* contract = app.add_subcommand("contract", "Inonu-Wigner and kappa contractions");
    contract->add_option("model", cfg.model, "Algebra with a symmetric decomposition or kappa-poincare-3/4")
        ->required();
    order_opt(contract, "Truncation of the kappa model (default 4)");
    common(contract);

    auto* inv = app.add_subcommand("invariants", "Invariant theory commands")->require_subcommand(1);
    auto* i_restr = inv->add_subcommand("restriction", "Check the restriction property at one degree");
    i_restr->add_option("pair", cfg.model, "so4 (so4-so3), so5 (so5-so4), so3-so2, so3xso3-diag, sl2 or JSON")
        ->required();
    i_restr->add_option("--degree", cfg.degree, "Symmetric degree p")->check(CLI::NonNegativeNumber)->capture_default_str();
    i_restr->add_option("--ambient-cap", cfg.ambient_cap, "Largest ambient dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    common(i_restr);

    auto* cybe = app.add_subcommand("cybe", "Classical Yang-Baxter bracket of an r-matrix");
    cybe->add_option("model", cfg.model, "Registry name or algebra JSON")->required();
    cybe->add_option("--r", cfg.r_file, "Rank-2 tensor JSON")->required();
    cybe->add_option("--require", cfg.require, "Fail unless [[r,r]] = 0 (cybe) or is ad-invariant (mcybe)")
        ->check(CLI::IsMember({"none", "cybe", "mcybe"}))
        ->capture_default_str();
    common(cybe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (a_check->parsed()) cfg.command = "algebra check";
    else if (h_check->parsed()) cfg.command = "hopf check";
    else if (t_solve->parsed()) cfg.command = "twist solve";
    else if (contract->parsed()) cfg.command = "contract";
    else if (i_restr->parsed()) cfg.command = "invariants restriction";
    else if (cybe->parsed()) cfg.command = "cybe";
    return run(cfg);
}
