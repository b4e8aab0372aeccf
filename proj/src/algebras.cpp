#include "dabim/algebras.hpp"

#include <stdexcept>
#include <string>

namespace dabim {

namespace {

void require_rank(int m) {
    if (m < 2) throw std::invalid_argument("rank m must be at least 2, got " + std::to_string(m));
}

std::string vname(int a, int b) { return "(" + std::to_string(a) + "|" + std::to_string(b) + ")"; }

Path word(const Quiver& q, int start, std::initializer_list<int> arrows) {
    Path p = Path::idempotent(start);
    for (int a : arrows) {
        if (q.arrow(a).source != p.end) throw std::logic_error("word does not compose");
        p.arrows.push_back(a);
        p.end = q.arrow(a).target;
    }
    return p;
}

}  // namespace

AlgebraPtr ks_algebra(int m) {
    require_rank(m);
    Quiver q(m, 1);
    std::vector<int> up(static_cast<std::size_t>(m)), down(static_cast<std::size_t>(m));
    for (int j = 0; j + 1 < m; ++j) {
        up[static_cast<std::size_t>(j)] = q.add_arrow(vname(j, j + 1), j, j + 1, Grading::integer(0));
        down[static_cast<std::size_t>(j)] = q.add_arrow(vname(j + 1, j), j + 1, j, Grading::integer(1));
    }
    auto U = [&](int j) { return up[static_cast<std::size_t>(j)]; };    // (j|j+1)
    auto D = [&](int j) { return down[static_cast<std::size_t>(j)]; };  // (j+1|j)
    std::vector<RewriteRule> rules;
    for (int i = 1; i + 1 < m; ++i) {
        rules.push_back({word(q, i - 1, {U(i - 1), U(i)}), {}});
        rules.push_back({word(q, i + 1, {D(i), D(i - 1)}), {}});
        rules.push_back({word(q, i, {U(i), D(i)}), {word(q, i, {D(i - 1), U(i - 1)})}});
    }
    rules.push_back({word(q, 0, {U(0), D(0)}), {}});
    return PresentedAlgebra::create("KS(" + std::to_string(m) + ")", std::move(q), std::move(rules), {}, true);
}

namespace {

struct RLQuiver {
    Quiver q;
    std::vector<int> R, L;  // index j = 1..
};

RLQuiver rl_quiver(int m, int vertices) {
    RLQuiver out{Quiver(vertices, static_cast<std::size_t>(2 * m)), {}, {}};
    out.R.assign(static_cast<std::size_t>(m + 1), -1);
    out.L.assign(static_cast<std::size_t>(m + 1), -1);
    for (int j = 1; j < vertices; ++j) {
        out.R[static_cast<std::size_t>(j)] = out.q.add_arrow("R" + std::to_string(j), j - 1, j, tau(m, j, 2));
        out.L[static_cast<std::size_t>(j)] = out.q.add_arrow("L" + std::to_string(j), j, j - 1, beta(m, j, 2));
    }
    return out;
}

}  // namespace

AlgebraPtr b_algebra(int m) {
    require_rank(m);
    auto rl = rl_quiver(m, m + 1);
    auto R = [&](int j) { return rl.R[static_cast<std::size_t>(j)]; };
    auto L = [&](int j) { return rl.L[static_cast<std::size_t>(j)]; };
    std::vector<RewriteRule> rules;
    for (int j = 1; j < m; ++j) {
        rules.push_back({word(rl.q, j - 1, {R(j), R(j + 1)}), {}});
        rules.push_back({word(rl.q, j + 1, {L(j + 1), L(j)}), {}});
    }
    std::vector<NamedElement> named;
    for (int j = 1; j <= m; ++j)
        named.push_back({"U" + std::to_string(j), {word(rl.q, j - 1, {R(j), L(j)}), word(rl.q, j, {L(j), R(j)})}});
    return PresentedAlgebra::create("B(" + std::to_string(m) + ")", std::move(rl.q), std::move(rules),
                                    std::move(named));
}

AlgebraPtr cl_algebra(int m) {
    require_rank(m);
    auto rl = rl_quiver(m, m);
    auto R = [&](int j) { return rl.R[static_cast<std::size_t>(j)]; };
    auto L = [&](int j) { return rl.L[static_cast<std::size_t>(j)]; };
    int loop = rl.q.add_arrow("U" + std::to_string(m), m - 1, m - 1, tau(m, m, 2) + beta(m, m, 2));
    std::vector<RewriteRule> rules;
    for (int j = 1; j + 1 < m; ++j) {
        rules.push_back({word(rl.q, j - 1, {R(j), R(j + 1)}), {}});
        rules.push_back({word(rl.q, j + 1, {L(j + 1), L(j)}), {}});
    }
    rules.push_back({word(rl.q, m - 2, {R(m - 1), loop}), {}});
    rules.push_back({word(rl.q, m - 1, {loop, L(m - 1)}), {}});
    std::vector<NamedElement> named;
    for (int j = 1; j < m; ++j)
        named.push_back({"U" + std::to_string(j), {word(rl.q, j - 1, {R(j), L(j)}), word(rl.q, j, {L(j), R(j)})}});
    named.push_back({"U" + std::to_string(m), {word(rl.q, m - 1, {loop})}});
    return PresentedAlgebra::create("Cl(" + std::to_string(m) + ")", std::move(rl.q), std::move(rules),
                                    std::move(named));
}

AlgebraPtr cl_bottom_algebra(int m) {
    return collapse_grading(*cl_algebra(m), GradingHom::epsilon(m), "Clbot(" + std::to_string(m) + ")");
}

std::shared_ptr<const AlgebraHom> cl_to_ks(int m) {
    auto src = cl_bottom_algebra(m);
    auto tgt = ks_algebra(m);
    std::vector<int> vmap;
    for (int v = 0; v < m; ++v) vmap.push_back(v);
    std::vector<std::vector<Path>> images;
    for (const auto& a : src->quiver().arrows()) {
        if (a.source == a.target)
            images.push_back({tgt->parse_path("(" + std::to_string(m - 1) + "|" + std::to_string(m - 2) + "|" +
                                              std::to_string(m - 1) + ")")});
        else
            images.push_back({tgt->parse_path(vname(a.source, a.target))});
    }
    return std::make_shared<const AlgebraHom>("phi", src, tgt, std::move(vmap), std::move(images),
                                              GradingHom::identity(1));
}

std::vector<Path> central_sum(const PresentedAlgebra& cl, int m) {
    std::vector<Path> g;
    for (int j = 1; j <= m; ++j) {
        auto idx = cl.named_index("U" + std::to_string(j));
        if (!idx) throw std::logic_error("algebra has no U" + std::to_string(j));
        const auto& t = cl.named()[static_cast<std::size_t>(*idx)].terms;
        g.insert(g.end(), t.begin(), t.end());
    }
    return cl.normal_form(g);
}

std::vector<std::vector<Path>> central_sum_pieces(const PresentedAlgebra& cl, int m) {
    std::vector<std::vector<Path>> pieces;
    auto at = [&](int j, int v) {
        auto p = cl.named_power_at(*cl.named_index("U" + std::to_string(j)), v, 1);
        return p ? std::vector<Path>{*p} : std::vector<Path>{};
    };
    for (int v = 0; v < m; ++v) {
        std::vector<Path> piece;
        if (v >= 1) {
            auto a = at(v, v);
            piece.insert(piece.end(), a.begin(), a.end());
        }
        auto b = at(v + 1, v);
        piece.insert(piece.end(), b.begin(), b.end());
        pieces.push_back(cl.normal_form(piece));
    }
    return pieces;
}

}  // namespace dabim
