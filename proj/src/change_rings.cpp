#include <algorithm>
#include <functional>
#include <map>

#include "dabim/dastruct.hpp"

namespace dabim {

BimodulePtr restrict_inputs(const AlgebraHom& phi, const BimodulePtr& Mp) {
    const auto& M = *Mp;
    if (phi.target()->name() != M.in_algebra()->name())
        throw std::invalid_argument("restrict: " + M.name() + " is not over " + phi.target()->name());
    if (M.has_families() || M.input_len_bound())
        throw std::invalid_argument("restrict: " + M.name() + " must be a finite exact table");
    const auto& S = *phi.source();
    std::vector<int> preimage(static_cast<std::size_t>(phi.target()->vertex_count()), -1);
    for (int v = 0; v < S.vertex_count(); ++v) {
        int w = phi.vertex_image(v);
        if (preimage[static_cast<std::size_t>(w)] >= 0) throw std::invalid_argument("restrict: vertex map is not injective");
        preimage[static_cast<std::size_t>(w)] = v;
    }
    for (const auto& a : S.quiver().arrows()) {
        auto img = phi.apply(S.arrow_path(S.quiver().find(a.name).value()));
        for (const auto& t : img)
            if (t.is_idempotent()) throw std::invalid_argument("restrict: an arrow maps to an idempotent");
    }
    std::size_t longest = 0;
    for (const auto& e : M.table())
        for (const auto& [in, sum] : e)
            for (const auto& p : in) longest = std::max(longest, p.length());
    auto fibers = phi.fibers(longest);

    auto R = std::make_shared<DABimodule>(M.name(), M.out_algebra(), phi.source(), M.out_hom(),
                                          M.in_hom().after(phi.grading_hom()));
    for (const auto& g : M.generators()) {
        DAGenerator ng = g;
        ng.right = preimage[static_cast<std::size_t>(g.right)];
        if (ng.right < 0) throw std::invalid_argument("restrict: idempotent has no preimage");
        R->add_generator(std::move(ng));
    }
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, sum] : M.table()[static_cast<std::size_t>(x)]) {
            std::vector<const std::vector<Path>*> choices;
            bool empty = false;
            for (const auto& c : in) {
                auto it = fibers.find(c);
                if (it == fibers.end()) {
                    empty = true;
                    break;
                }
                choices.push_back(&it->second);
            }
            if (empty) continue;
            std::vector<Path> pick;
            std::function<void(std::size_t)> rec = [&](std::size_t s) {
                if (s == choices.size()) {
                    for (const auto& t : sum) R->add_arrow(x, t.gen, t.out, pick);
                    return;
                }
                for (const auto& b : *choices[s]) {
                    pick.push_back(b);
                    rec(s + 1);
                    pick.pop_back();
                }
            };
            rec(0);
        }
    return R;
}

BimodulePtr induct_outputs(const AlgebraHom& phi, const BimodulePtr& Mp) {
    const auto& M = *Mp;
    if (phi.source()->name() != M.out_algebra()->name())
        throw std::invalid_argument("induct: " + M.name() + " does not have outputs in " + phi.source()->name());
    if (!(phi.grading_hom() == GradingHom::identity(phi.grading_hom().cols())))
        throw std::invalid_argument("induct: the grading map of " + phi.name() + " must be the identity");
    const auto& S = *phi.source();
    const auto& I = *M.in_algebra();
    auto R = std::make_shared<DABimodule>(M.name(), phi.target(), M.in_algebra(), M.out_hom(), M.in_hom());
    R->set_input_len_bound(M.input_len_bound());
    for (const auto& g : M.generators()) {
        DAGenerator ng = g;
        ng.left = phi.vertex_image(g.left);
        R->add_generator(std::move(ng));
    }
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, sum] : M.table()[static_cast<std::size_t>(x)])
            for (const auto& t : sum)
                for (const auto& o : phi.apply(t.out)) R->add_arrow(x, t.gen, o, in);
    constexpr int kMaxInstances = 256;
    for (const auto& f : M.families()) {
        if (!f.out.scaled) {
            auto o = instantiate(S, f.out, f.k_min);
            if (!o) continue;
            for (const auto& t : phi.apply(*o)) R->add_family({f.from, f.to, PathPattern::plain(t), f.in, f.k_min});
            continue;
        }
        // phi(out(k)) = 0 forces phi(out(k+1)) = 0, so the family is finite after pushing forward
        for (int k = f.k_min;; ++k) {
            if (k > f.k_min + kMaxInstances) throw std::runtime_error("induct: family does not die out");
            auto o = instantiate(S, f.out, k);
            if (!o) break;
            auto img = phi.apply(*o);
            if (img.empty()) break;
            std::vector<Path> in;
            bool ok = true;
            for (const auto& pat : f.in) {
                auto inst = instantiate(I, pat, k);
                if (!inst) ok = false;
                else in.push_back(*inst);
            }
            if (!ok) break;
            for (const auto& t : img) R->add_arrow(f.from, f.to, t, in);
        }
    }
    return R;
}

BimodulePtr regrade(const BimodulePtr& Mp, AlgebraPtr out_alg, AlgebraPtr in_alg, const GradingHom& gen_map,
                    GradingHom out_hom, GradingHom in_hom, std::string name) {
    const auto& M = *Mp;
    auto same_quiver = [](const PresentedAlgebra& a, const PresentedAlgebra& b) {
        if (a.vertex_count() != b.vertex_count() || a.quiver().arrows().size() != b.quiver().arrows().size())
            return false;
        for (std::size_t k = 0; k < a.quiver().arrows().size(); ++k)
            if (a.quiver().arrows()[k].name != b.quiver().arrows()[k].name) return false;
        return true;
    };
    if (!same_quiver(*out_alg, *M.out_algebra()) || !same_quiver(*in_alg, *M.in_algebra()))
        throw std::invalid_argument("regrade: algebras have different quivers");
    auto R = std::make_shared<DABimodule>(std::move(name), std::move(out_alg), std::move(in_alg), std::move(out_hom),
                                          std::move(in_hom));
    R->set_input_len_bound(M.input_len_bound());
    for (const auto& g : M.generators()) {
        DAGenerator ng = g;
        ng.grading = gen_map.apply(g.grading);
        R->add_generator(std::move(ng));
    }
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, sum] : M.table()[static_cast<std::size_t>(x)])
            for (const auto& t : sum) R->add_arrow(x, t.gen, t.out, in);
    for (const auto& f : M.families()) R->add_family(f);
    return R;
}

// ------------------------------------------------------------ comparisons

namespace {

using PairTable = std::map<std::pair<int, int>, std::vector<std::pair<std::vector<Path>, Path>>>;

PairTable pair_table(const DABimodule& M) {
    if (M.has_families()) throw std::invalid_argument(M.name() + ": comparison needs a concrete table");
    PairTable t;
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, sum] : M.table()[static_cast<std::size_t>(x)])
            for (const auto& term : sum) t[{x, term.gen}].emplace_back(in, term.out);
    for (auto& [k, v] : t) std::sort(v.begin(), v.end());
    return t;
}

struct Signature {
    int left, right, hom;
    Grading grading;
    std::size_t out_terms, in_terms;
    friend bool operator==(const Signature&, const Signature&) = default;
};

std::vector<Signature> signatures(const DABimodule& M, const PairTable& t) {
    std::vector<Signature> s;
    for (const auto& g : M.generators()) s.push_back({g.left, g.right, g.hom, g.grading, 0, 0});
    for (const auto& [k, v] : t) {
        s[static_cast<std::size_t>(k.first)].out_terms += v.size();
        s[static_cast<std::size_t>(k.second)].in_terms += v.size();
    }
    return s;
}

}  // namespace

IsoResult find_isomorphism(const DABimodule& X, const DABimodule& Y, std::size_t budget) {
    IsoResult res;
    if (X.generator_count() != Y.generator_count()) return res;
    auto tx = pair_table(X);
    auto ty = pair_table(Y);
    std::size_t cx = 0, cy = 0;
    for (auto& [k, v] : tx) cx += v.size();
    for (auto& [k, v] : ty) cy += v.size();
    if (cx != cy) return res;
    auto sx = signatures(X, tx);
    auto sy = signatures(Y, ty);
    const int n = X.generator_count();
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    static const std::vector<std::pair<std::vector<Path>, Path>> none;
    auto lookup = [](const PairTable& t, int a, int b) -> const std::vector<std::pair<std::vector<Path>, Path>>& {
        auto it = t.find({a, b});
        return it == t.end() ? none : it->second;
    };
    auto consistent = [&](int x) {
        int y = map[static_cast<std::size_t>(x)];
        for (int z = 0; z < n; ++z) {
            int w = map[static_cast<std::size_t>(z)];
            if (w < 0) continue;
            if (lookup(tx, x, z) != lookup(ty, y, w) || lookup(tx, z, x) != lookup(ty, w, y)) return false;
        }
        return true;
    };
    std::function<bool(int)> rec = [&](int x) {
        if (x == n) return true;
        for (int y = 0; y < n; ++y) {
            if (used[static_cast<std::size_t>(y)] || !(sx[static_cast<std::size_t>(x)] == sy[static_cast<std::size_t>(y)]))
                continue;
            if (++res.tried > budget) {
                res.budget_exhausted = true;
                return false;
            }
            map[static_cast<std::size_t>(x)] = y;
            used[static_cast<std::size_t>(y)] = true;
            if (consistent(x) && rec(x + 1)) return true;
            used[static_cast<std::size_t>(y)] = false;
            map[static_cast<std::size_t>(x)] = -1;
            if (res.budget_exhausted) return false;
        }
        return false;
    };
    if (rec(0)) {
        res.found = true;
        res.map = map;
    }
    return res;
}

bool same_by_names(const DABimodule& X, const DABimodule& Y) {
    if (X.generator_count() != Y.generator_count()) return false;
    std::vector<int> map;
    for (const auto& g : X.generators()) {
        auto y = Y.find_generator(g.name);
        if (!y) return false;
        const auto& h = Y.generator(*y);
        if (h.left != g.left || h.right != g.right || h.hom != g.hom || h.grading != g.grading) return false;
        map.push_back(*y);
    }
    auto tx = pair_table(X);
    auto ty = pair_table(Y);
    if (tx.size() != ty.size()) return false;
    for (const auto& [k, v] : tx) {
        auto it = ty.find({map[static_cast<std::size_t>(k.first)], map[static_cast<std::size_t>(k.second)]});
        if (it == ty.end() || it->second != v) return false;
    }
    return true;
}

}  // namespace dabim
