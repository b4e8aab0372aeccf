#include <algorithm>
#include <functional>
#include <sstream>

#include "dabim/dastruct.hpp"

namespace dabim {

BimodulePtr box_tensor(const BimodulePtr& Xp, const BimodulePtr& Yp, const TensorOptions& opt) {
    const auto& X = *Xp;
    const auto& Y = *Yp;
    if (X.in_algebra()->name() != Y.out_algebra()->name())
        throw std::invalid_argument("box_tensor: " + X.name() + " and " + Y.name() + " do not share an algebra");
    if (!(Y.out_hom() == GradingHom::identity(Y.out_hom().cols())))
        throw std::invalid_argument("box_tensor: the right factor must have the identity output grading");
    std::optional<std::size_t> bound = opt.max_input_len;
    if (Y.input_len_bound()) bound = bound ? std::min(*bound, *Y.input_len_bound()) : *Y.input_len_bound();
    if (Y.has_families() && !bound)
        throw std::invalid_argument("box_tensor: " + Y.name() + " has families, an input length bound is needed");

    auto R = std::make_shared<DABimodule>(X.name() + "#" + Y.name(), X.out_algebra(), Y.in_algebra(), X.out_hom(),
                                          X.in_hom().after(Y.in_hom()));
    if (bound && (Y.has_families() || Y.input_len_bound())) R->set_input_len_bound(bound);
    std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(X.generator_count()),
                                             std::vector<int>(static_cast<std::size_t>(Y.generator_count()), -1));
    for (int x = 0; x < X.generator_count(); ++x)
        for (int y = 0; y < Y.generator_count(); ++y) {
            const auto& gx = X.generator(x);
            const auto& gy = Y.generator(y);
            if (gx.right != gy.left) continue;
            pair_index[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = R->add_generator(
                {gx.name + "#" + gy.name, gx.left, gy.right, gx.hom + gy.hom, gx.grading + X.in_hom().apply(gy.grading)});
        }
    auto idx = [&](int x, int y) { return pair_index[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };

    std::vector<std::vector<ConcreteArrow>> yarrows(static_cast<std::size_t>(Y.generator_count()));
    for (int y = 0; y < Y.generator_count(); ++y) yarrows[static_cast<std::size_t>(y)] = Y.arrows_from(y, bound);
    const std::size_t xarity = X.max_arity();

    std::vector<Path> outs, ins;
    std::function<void(int, int, int, std::size_t)> walk = [&](int src, int x, int y, std::size_t depth) {
        for (const auto& a : yarrows[static_cast<std::size_t>(y)]) {
            std::size_t in_mark = ins.size();
            ins.insert(ins.end(), a.in.begin(), a.in.end());
            if (a.out.is_idempotent()) {
                // only delta_2(x, 1) = x survives a unit output
                if (outs.empty()) R->add_arrow(src, idx(x, a.to), Path::idempotent(X.generator(x).left), ins);
            } else {
                outs.push_back(a.out);
                for (const auto& t : X.delta(x, outs)) R->add_arrow(src, idx(t.gen, a.to), t.out, ins);
                if (outs.size() < xarity) {
                    if (depth + 1 >= opt.depth_limit && !yarrows[static_cast<std::size_t>(a.to)].empty())
                        throw std::runtime_error("box_tensor: depth limit reached for " + R->name());
                    walk(src, x, a.to, depth + 1);
                }
                outs.pop_back();
            }
            ins.resize(in_mark);
        }
    };
    for (int x = 0; x < X.generator_count(); ++x)
        for (int y = 0; y < Y.generator_count(); ++y) {
            int src = idx(x, y);
            if (src < 0) continue;
            for (const auto& t : X.delta(x, {})) R->add_arrow(src, idx(t.gen, y), t.out, {});
            walk(src, x, y, 0);
        }
    return R;
}

BimodulePtr identity_bimodule(const AlgebraPtr& A, std::size_t max_len) {
    auto M = std::make_shared<DABimodule>("Id(" + A->name() + ")", A, A, GradingHom::identity(A->grading_dim()),
                                          GradingHom::identity(A->grading_dim()));
    for (int v = 0; v < A->vertex_count(); ++v)
        M->add_generator({"I" + std::to_string(v), v, v, 0, Grading(A->grading_dim())});
    std::size_t longest = 0;
    for (const auto& p : A->basis(max_len)) {
        if (p.is_idempotent()) continue;
        M->add_arrow(p.start, p.end, p, {p});
        longest = std::max(longest, p.length());
    }
    if (longest == max_len) M->set_input_len_bound(max_len);
    return M;
}

// ---------------------------------------------------------- A box M

std::optional<int> DGModule::index_of(const Path& a, int gen) const {
    auto it = index.find({a, gen});
    if (it == index.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<int> collect(const DGModule& D, const std::vector<std::pair<Path, int>>& terms) {
    std::vector<int> out;
    for (const auto& [p, g] : terms) {
        auto i = D.index_of(p, g);
        if (!i) throw OutOfDomain("A box M: element outside the truncation");
        out.push_back(*i);
    }
    gf2_normalize(out);
    return out;
}

}  // namespace

std::vector<int> DGModule::right_act(int idx, const Path& c) const {
    const auto& [a, x] = basis.at(static_cast<std::size_t>(idx));
    const auto& O = *source->out_algebra();
    std::vector<std::pair<Path, int>> terms;
    for (const auto& t : source->delta(x, {c}))
        for (auto& p : O.multiply(a, t.out)) terms.emplace_back(std::move(p), t.gen);
    return collect(*this, terms);
}

std::vector<int> DGModule::left_act(const Path& b, int idx) const {
    const auto& [a, x] = basis.at(static_cast<std::size_t>(idx));
    std::vector<std::pair<Path, int>> terms;
    for (auto& p : source->out_algebra()->multiply(b, a)) terms.emplace_back(std::move(p), x);
    return collect(*this, terms);
}

DGModule box_with_algebra(const BimodulePtr& M, std::size_t max_len) {
    if (M->max_arity() > 1)
        throw std::invalid_argument(M->name() + " has higher operations; A box M would not be a dg module");
    DGModule D;
    D.source = M;
    D.max_len = max_len;
    const auto& O = *M->out_algebra();
    auto abasis = O.basis(max_len);
    for (int x = 0; x < M->generator_count(); ++x)
        for (const auto& a : abasis) {
            if (a.end != M->generator(x).left) continue;
            D.index.emplace(std::make_pair(a, x), static_cast<int>(D.basis.size()));
            D.basis.emplace_back(a, x);
            D.hom.push_back(M->generator(x).hom);
            D.grading.push_back(M->out_hom().apply(O.grading(a)) + M->generator(x).grading);
        }
    for (const auto& [a, x] : D.basis) {
        std::vector<std::pair<Path, int>> terms;
        for (const auto& t : M->delta(x, {}))
            for (auto& p : O.multiply(a, t.out)) terms.emplace_back(std::move(p), t.gen);
        D.d.push_back(collect(D, terms));
    }
    return D;
}

std::vector<std::string> verify_dg_module(const DGModule& D, std::size_t action_len) {
    std::vector<std::string> problems;
    auto apply_d = [&](const std::vector<int>& v) {
        std::vector<int> out;
        for (int i : v) out.insert(out.end(), D.d[static_cast<std::size_t>(i)].begin(), D.d[static_cast<std::size_t>(i)].end());
        gf2_normalize(out);
        return out;
    };
    auto act = [&](const std::vector<int>& v, const Path& c) {
        std::vector<int> out;
        for (int i : v) {
            auto r = D.right_act(i, c);
            out.insert(out.end(), r.begin(), r.end());
        }
        gf2_normalize(out);
        return out;
    };
    const auto& I = *D.source->in_algebra();
    std::vector<Path> cs;
    for (const auto& c : I.basis(action_len))
        if (!c.is_idempotent()) cs.push_back(c);
    for (std::size_t i = 0; i < D.basis.size(); ++i) {
        const std::vector<int> e{static_cast<int>(i)};
        const auto& name = D.source->generator(D.basis[i].second).name;
        try {
            if (!apply_d(apply_d(e)).empty()) problems.push_back("d^2 != 0 on " + name);
            for (int j : D.d[i])
                if (D.hom[static_cast<std::size_t>(j)] != D.hom[i] - 1 ||
                    D.grading[static_cast<std::size_t>(j)] != D.grading[i])
                    problems.push_back("d is not homogeneous on " + name);
            for (const auto& c : cs) {
                auto mc = act(e, c);
                if (apply_d(mc) != act(apply_d(e), c)) problems.push_back("d is not a module map on " + name);
                for (const auto& c2 : cs) {
                    if (c.end != c2.start) continue;
                    std::vector<int> lhs = act(mc, c2);
                    std::vector<int> rhs;
                    for (const auto& p : I.multiply(c, c2)) {
                        auto r = act(e, p);
                        rhs.insert(rhs.end(), r.begin(), r.end());
                    }
                    gf2_normalize(rhs);
                    if (lhs != rhs) problems.push_back("action is not associative on " + name);
                }
            }
        } catch (const OutOfDomain&) {
            // elements near the truncation boundary leave the finite basis
        }
    }
    return problems;
}

}  // namespace dabim
