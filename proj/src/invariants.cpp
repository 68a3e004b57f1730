#include "hc/invariants.hpp"

#include <algorithm>
#include <functional>

#include "hc/linalg.hpp"

namespace hc {

void SymTensor::add(std::vector<int> tuple, const Rational& c) {
    if (sgn(c) == 0) return;
    std::sort(tuple.begin(), tuple.end());
    auto it = entries.find(tuple);
    if (it == entries.end()) {
        entries.emplace(std::move(tuple), c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) entries.erase(it);
}

std::pair<int, int> bigrade(const LieAlgebraSpec& spec, const std::vector<int>& tuple) {
    int h = 0, p = 0;
    for (int v : tuple) (spec.parity(v % spec.dim()) == Parity::P ? p : h)++;
    return {h, p};
}

int copy_count(const LieAlgebraSpec& spec, const std::vector<int>& tuple) {
    int c = 0;
    for (int v : tuple)
        if (v < spec.dim()) ++c;
    return c;
}

std::string tuple_string(const LieAlgebraSpec& spec, const std::vector<int>& tuple) {
    if (tuple.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += "*";
        s += (tuple[i] < spec.dim() ? "X." : "Y.") + spec.label(tuple[i] % spec.dim());
    }
    return s;
}

SymTensor sym_action(const LieAlgebraSpec& spec, int x, const SymTensor& t) {
    const int dim = spec.dim();
    SymTensor out;
    out.degree = t.degree;
    for (const auto& [tuple, c] : t.entries)
        for (size_t i = 0; i < tuple.size(); ++i) {
            const int copy = tuple[i] / dim, g = tuple[i] % dim;
            for (const auto& [d, v] : spec.bracket_of(x, g)) {
                std::vector<int> nt = tuple;
                nt[i] = copy * dim + d;
                out.add(std::move(nt), c * v);
            }
        }
    return out;
}

std::vector<std::vector<int>> ambient_tuples(const LieAlgebraSpec& spec, const AmbientFilter& f) {
    const int n = 2 * spec.dim();
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == f.degree) {
            auto [h, p] = bigrade(spec, cur);
            if (f.h_count >= 0 && h != f.h_count) return;
            if (f.p_count >= 0 && p != f.p_count) return;
            if (f.first_copy >= 0 && copy_count(spec, cur) != f.first_copy) return;
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

SubspaceBasis invariant_subspace(const LieAlgebraSpec& spec, const AmbientFilter& f, Acting acting, int ambient_cap) {
    SubspaceBasis out;
    out.filter = f;
    std::vector<std::vector<int>> amb = ambient_tuples(spec, f);
    out.ambient_dim = static_cast<int>(amb.size());
    if (out.ambient_dim > ambient_cap)
        throw Error(Errc::DimensionTooLarge, "ambient dimension " + std::to_string(amb.size()) + " exceeds cap " +
                                                 std::to_string(ambient_cap));
    const int ncols = out.ambient_dim;
    // rows: (acting generator, output tuple)
    std::map<std::pair<int, std::vector<int>>, SparseVec> rows;
    for (int j = 0; j < ncols; ++j) {
        SymTensor e;
        e.degree = f.degree;
        e.add(amb[j], 1);
        for (int x = 0; x < spec.dim(); ++x) {
            if (acting == Acting::HOnly && spec.parity(x) == Parity::P) continue;
            for (const auto& [t, v] : sym_action(spec, x, e).entries) rows[{x, t}].emplace_back(j, v);
        }
    }
    Echelon ech(ncols);
    for (auto& [k, r] : rows) {
        sparse_normalize(r);
        ech.add_row(std::move(r));
    }
    for (const auto& v : ech.kernel_basis()) {
        SymTensor t;
        t.degree = f.degree;
        for (const auto& [j, c] : v) t.add(amb[j], c);
        out.basis.push_back(std::move(t));
    }
    return out;
}

SymTensor project_to_p(const LieAlgebraSpec& spec, const SymTensor& t) {
    SymTensor out;
    out.degree = t.degree;
    for (const auto& [tuple, c] : t.entries)
        if (bigrade(spec, tuple).first == 0) out.add(tuple, c);
    return out;
}

namespace {

// Coordinates over a common tuple index.
struct TupleIndex {
    std::map<std::vector<int>, int> idx;
    SparseVec vec(const SymTensor& t) {
        SparseVec v;
        for (const auto& [tuple, c] : t.entries) {
            auto [it, fresh] = idx.try_emplace(tuple, static_cast<int>(idx.size()));
            v.emplace_back(it->second, c);
        }
        sparse_normalize(v);
        return v;
    }
};

Rational dot(const SymTensor& a, const SymTensor& b) {
    Rational s = 0;
    for (const auto& [t, c] : a.entries) {
        auto it = b.entries.find(t);
        if (it != b.entries.end()) s += c * it->second;
    }
    return s;
}

} // namespace

int sym_rank(const std::vector<SymTensor>& v) {
    TupleIndex ti;
    std::vector<SparseVec> rows;
    for (const auto& t : v) rows.push_back(ti.vec(t));
    Echelon ech(std::max<int>(1, static_cast<int>(ti.idx.size())));
    for (auto& r : rows) ech.add_row(std::move(r));
    return ech.rank();
}

RestrictionReport restriction_check(const LieAlgebraSpec& spec, int degree, int ambient_cap) {
    if (!spec.has_decomposition()) throw Error(Errc::NoDecomposition, spec.name() + " has no symmetric decomposition");
    RestrictionReport rep;
    rep.degree = degree;
    SubspaceBasis G = invariant_subspace(spec, AmbientFilter{degree, -1, -1, -1}, Acting::Full, ambient_cap);
    SubspaceBasis Hs = invariant_subspace(spec, AmbientFilter{degree, 0, degree, -1}, Acting::HOnly, ambient_cap);
    rep.full_invariants = static_cast<int>(G.basis.size());
    rep.restricted_invariants = static_cast<int>(Hs.basis.size());
    std::vector<SymTensor> img;
    for (const auto& g : G.basis) img.push_back(project_to_p(spec, g));
    rep.image_rank = sym_rank(img);
    rep.surjective = rep.image_rank == rep.restricted_invariants;
    if (!rep.surjective) {
        // Hs intersected with the orthogonal complement of the image.
        const int k = static_cast<int>(Hs.basis.size());
        Echelon ech(k);
        for (const auto& g : img) {
            SparseVec r;
            for (int i = 0; i < k; ++i) {
                Rational d = dot(g, Hs.basis[i]);
                if (sgn(d) != 0) r.emplace_back(i, d);
            }
            ech.add_row(std::move(r));
        }
        for (const auto& c : ech.kernel_basis()) {
            SymTensor w;
            w.degree = degree;
            for (const auto& [i, v] : c)
                for (const auto& [t, x] : Hs.basis[i].entries) w.add(t, v * x);
            rep.cokernel_basis.push_back(std::move(w));
        }
    }
    return rep;
}

Tensor symmetrize(const RewriteSystem& rs, const SymTensor& t) {
    const int N = rs.order();
    const int dim = rs.dim();
    Tensor out(1, N);
    for (const auto& [tuple, c] : t.entries) {
        std::vector<int> word;
        for (int v : tuple) {
            if (v >= dim) throw Error(Errc::IndexOutOfRange, "symmetrize needs tensors over a single copy");
            word.push_back(v);
        }
        std::sort(word.begin(), word.end());
        Rational count = 0;
        Tensor acc(1, N);
        do {
            acc += normal_form(rs, word, Series::constant(N, 1));
            count += 1;
        } while (std::next_permutation(word.begin(), word.end()));
        // distinct permutations of a multiset, each weighted by its multiplicity
        acc *= c / count;
        out += acc;
    }
    return out;
}

} // namespace hc
