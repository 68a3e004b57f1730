#include "hc/io.hpp"

#include <fstream>
#include <sstream>

namespace hc::io {

namespace {
// Always "p/q", also for integers.
std::string frac(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }
} // namespace

Json to_json(const Series& s) {
    Json c = Json::array();
    for (int k = 0; k <= s.order(); ++k) c.push_back(frac(s[k]));
    return Json{{"order", s.order()}, {"coeffs", c}};
}

Series series_from_json(const Json& j) {
    try {
        const int order = j.at("order").get<int>();
        const auto& c = j.at("coeffs");
        if (!c.is_array() || static_cast<int>(c.size()) != order + 1)
            throw Error(Errc::ParseError, "series needs order+1 coefficients");
        std::vector<Rational> v;
        for (const auto& x : c) v.push_back(parse_rational(x.get<std::string>()));
        return Series::from_coeffs(std::move(v));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("series: ") + e.what());
    }
}

Json to_json(const LieAlgebraSpec& spec) {
    Json gens = Json::array();
    for (const auto& g : spec.generators()) gens.push_back(Json{{"label", g.label}, {"parity", parity_name(g.parity)}});
    Json br = Json::array();
    for (int a = 0; a < spec.dim(); ++a)
        for (int b = a + 1; b < spec.dim(); ++b) {
            LinComb t = spec.bracket_of(a, b);
            if (t.empty()) continue;
            Json terms = Json::array();
            for (const auto& [c, v] : t) terms.push_back(Json{{"c", spec.label(c)}, {"coeff", frac(v)}});
            br.push_back(Json{{"a", spec.label(a)}, {"b", spec.label(b)}, {"terms", terms}});
        }
    return Json{{"name", spec.name()}, {"generators", gens}, {"brackets", br}};
}

LieAlgebraSpec algebra_from_json(const Json& j) {
    try {
        std::vector<Generator> gens;
        for (const auto& g : j.at("generators"))
            gens.push_back({g.at("label").get<std::string>(),
                            g.contains("parity") ? parse_parity(g.at("parity").get<std::string>()) : Parity::None});
        LieAlgebraSpec spec(j.value("name", std::string("user")), gens);
        if (j.contains("brackets"))
            for (const auto& b : j.at("brackets")) {
                std::vector<std::pair<std::string, Rational>> terms;
                for (const auto& t : b.at("terms"))
                    terms.emplace_back(t.at("c").get<std::string>(), parse_rational(t.at("coeff").get<std::string>()));
                spec.set_bracket(b.at("a").get<std::string>(), b.at("b").get<std::string>(), terms);
            }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("algebra: ") + e.what());
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
}

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::ParseError, "cannot write " + path);
    out << j.dump(2) << "\n";
}

LieAlgebraSpec load_algebra(const std::string& path) { return algebra_from_json(read_file(path)); }

Json to_json(const LieAlgebraSpec& spec, const LieTensor& t) {
    Json e = Json::array();
    for (const auto& [idx, v] : t.entries) {
        Json labels = Json::array();
        for (int i : idx) labels.push_back(spec.label(i));
        e.push_back(Json{{"index", labels}, {"coeff", frac(v)}});
    }
    return Json{{"rank", t.rank}, {"entries", e}};
}

LieTensor lie_tensor_from_json(const LieAlgebraSpec& spec, const Json& j) {
    try {
        LieTensor t(j.at("rank").get<int>(), spec.dim());
        for (const auto& e : j.at("entries")) {
            std::vector<int> idx;
            for (const auto& l : e.at("index")) idx.push_back(spec.index_of(l.get<std::string>()));
            if (static_cast<int>(idx.size()) != t.rank) throw Error(Errc::ParseError, "index length differs from rank");
            t.add(idx, parse_rational(e.at("coeff").get<std::string>()));
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("tensor: ") + e.what());
    }
}

Json to_json(const RewriteSystem& rs, const Tensor& t) {
    Json terms = Json::array();
    for (const auto& k : t.sorted_keys()) {
        Json legs = Json::array();
        for (auto leg : split_legs(k)) {
            Json m = Json::array();
            for (char ch : leg) m.push_back(rs.algebra().label(static_cast<unsigned char>(ch)));
            legs.push_back(m);
        }
        terms.push_back(Json{{"monomials", legs}, {"coeff", to_json(t.terms().at(k))}});
    }
    return Json{{"rank", t.rank()}, {"terms", terms}};
}

Tensor tensor_from_json(const RewriteSystem& rs, const Json& j) {
    try {
        const int rank = j.at("rank").get<int>();
        Tensor out(rank, rs.order());
        for (const auto& term : j.at("terms")) {
            const auto& legs = term.at("monomials");
            if (static_cast<int>(legs.size()) != rank) throw Error(Errc::RankMismatch, "term has wrong number of legs");
            Series c = series_from_json(term.at("coeff"));
            if (c.order() != rs.order()) throw Error(Errc::MismatchedOrder, "coefficient order");
            Tensor prod = Tensor::scalar(rank, c);
            for (int i = 0; i < rank; ++i) {
                std::vector<int> word;
                for (const auto& l : legs[i]) word.push_back(rs.algebra().index_of(l.get<std::string>()));
                Tensor leg = normal_form(rs, word, Series::constant(rs.order(), 1));
                std::vector<int> slots{i};
                prod = mul(rs, prod, embed(leg, slots, rank));
            }
            out += prod;
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("element: ") + e.what());
    }
}

Json to_json(const AxiomReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j{{"name", c.name}, {"pass", c.ok}};
        if (!c.ok) {
            j["where"] = c.where;
            j["witness"] = c.witness;
            j["order"] = c.order;
        }
        checks.push_back(j);
    }
    return Json{{"pass", r.ok()}, {"checks", checks}};
}

Json to_json(const HopfSpec& h) {
    const RewriteSystem& rs = *h.rs;
    Json delta = Json::object(), anti = Json::object(), eps = Json::object();
    for (int g = 0; g < rs.dim(); ++g) {
        const std::string& l = rs.algebra().label(g);
        delta[l] = to_json(rs, h.delta.images[g]);
        anti[l] = to_json(rs, h.antipode.images[g]);
        eps[l] = to_json(h.counit[g]);
    }
    Json params = Json::object();
    for (const auto& [k, v] : h.parameters) params[k] = frac(v);
    Json j{{"name", h.name}, {"algebra", to_json(rs.algebra())}, {"order", rs.order()},
           {"p_contractible", h.p_contractible}, {"parameters", params}, {"coproduct", delta},
           {"counit", eps}, {"antipode", anti}};
    if (h.R) j["R"] = to_json(rs, *h.R);
    if (h.Phi) j["Phi"] = to_json(rs, *h.Phi);
    return j;
}

Json to_json(const IsoResult& r) {
    const RewriteSystem& t = *r.phi.target;
    Json phi = Json::object(), inv = Json::object();
    for (int g = 0; g < t.dim(); ++g) {
        phi[t.algebra().label(g)] = to_json(t, r.phi.images[g]);
        inv[t.algebra().label(g)] = to_json(*r.inverse.target, r.inverse.images[g]);
    }
    Json diag = Json::array();
    for (const auto& d : r.diag)
        diag.push_back(Json{{"order", d.order}, {"residual_zero", d.residual_zero}, {"columns", d.columns},
                            {"rank", d.rank}, {"degree_cap", d.degree_cap}});
    return Json{{"phi", phi}, {"inverse", inv}, {"diagnostics", diag}};
}

Json to_json(const D0Diagnostics& d) {
    return Json{{"rows", d.rows},
                {"columns", d.columns},
                {"rank", d.rank},
                {"kernel_dim", d.kernel_dim},
                {"p_cap", d.p_cap},
                {"degree_cap", d.degree_cap},
                {"exact_p_degree", d.exact_p_degree},
                {"unit_legs_excluded", d.unit_legs_excluded}};
}

Json to_json(const RewriteSystem& rs, const TwistResult& r) {
    Json comps = Json::array();
    for (const auto& f : r.components) comps.push_back(to_json(rs, f));
    Json diag = Json::array();
    for (const auto& d : r.diag)
        diag.push_back(Json{{"order", d.order}, {"cocycle", d.cocycle}, {"solve", to_json(d.solve)}});
    return Json{{"F", to_json(rs, r.F)},
                {"components", comps},
                {"R", to_json(rs, r.R)},
                {"Phi", to_json(rs, r.Phi)},
                {"verified", r.verified},
                {"representative", "free kernel coordinates set to zero; one element of the twist orbit"},
                {"diagnostics", diag}};
}

Json to_json(const LieAlgebraSpec& spec, const SymTensor& t) {
    Json e = Json::array();
    for (const auto& [tuple, c] : t.entries) {
        Json f = Json::array();
        for (int v : tuple)
            f.push_back((v < spec.dim() ? std::string("X.") : std::string("Y.")) + spec.label(v % spec.dim()));
        e.push_back(Json{{"factors", f}, {"coeff", frac(c)}});
    }
    return Json{{"degree", t.degree}, {"entries", e}};
}

Json to_json(const LieAlgebraSpec& spec, const RestrictionReport& r) {
    Json cok = Json::array();
    for (const auto& w : r.cokernel_basis) cok.push_back(to_json(spec, w));
    return Json{{"degree", r.degree},
                {"dim_full_invariants", r.full_invariants},
                {"dim_restricted_invariants", r.restricted_invariants},
                {"image_rank", r.image_rank},
                {"surjective", r.surjective},
                {"cokernel_basis", cok}};
}

} // namespace hc::io
