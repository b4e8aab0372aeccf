#include <algorithm>

#include "dabim/bimodules.hpp"

namespace dabim {

namespace {

/// Paths and patterns of cl_algebra(m) by name.
struct ClWords {
    const PresentedAlgebra& C;
    int m;

    Path arrow(char kind, int j) const {
        return C.arrow_path(C.quiver().find(std::string(1, kind) + std::to_string(j)).value());
    }
    Path R(int j) const { return arrow('R', j); }
    Path L(int j) const { return arrow('L', j); }
    int U(int j) const { return C.named_index("U" + std::to_string(j)).value(); }
    /// base * U_j^(k + offset)
    PathPattern times_u(Path base, int j, int offset = 0) const {
        return PathPattern::power(std::move(base), U(j), offset, true);
    }
    PathPattern loop(int v, int j, int offset) const { return times_u(Path::idempotent(v), j, offset); }
};

std::string s_name(int j) { return "S" + std::to_string(j); }

BimodulePtr positive_crossing(int m, int i) {
    const auto& fam = algebras(m);
    ClWords w{*fam.cl, m};
    const bool east = i + 1 < m;
    auto M = std::make_shared<DABimodule>("P" + std::to_string(i), fam.cl, fam.cl, GradingHom::identity(2 * m),
                                          GradingHom::swap_refined(m, i));
    std::vector<int> S(static_cast<std::size_t>(m), -1);
    for (int j = 0; j < m; ++j)
        if (j != i) S[static_cast<std::size_t>(j)] = M->add_generator({s_name(j), j, j, 0, refined_zero(m)});
    auto s = [&](int j) { return S[static_cast<std::size_t>(j)]; };
    const int W = M->add_generator({"W", i, i - 1, 1, beta(m, i, 2)});
    const int E = east ? M->add_generator({"E", i, i + 1, 1, tau(m, i + 1, 2)}) : -1;
    const int N = M->add_generator({"N", i, i, 1, beta(m, i, 2) + tau(m, i + 1, 2)});

    auto fam1 = [&](int from, int to, PathPattern out, PathPattern in) {
        M->add_family({from, to, std::move(out), {std::move(in)}, 0});
    };

    M->add_arrow(W, s(i - 1), w.L(i), {});
    if (east) M->add_arrow(E, s(i + 1), w.R(i + 1), {});

    for (int j = 1; j < m; ++j) {
        if (j == i || j == i + 1) continue;
        fam1(s(j - 1), s(j), w.times_u(w.R(j), j), w.times_u(w.R(j), j));
        fam1(s(j), s(j - 1), w.times_u(w.L(j), j), w.times_u(w.L(j), j));
    }
    for (int v = 0; v < m; ++v) {
        if (v == i) continue;
        for (int j : {v, v + 1}) {
            if (j < 1 || j > m) continue;
            if ((v == i - 1 && j == i) || (v == i + 1 && j == i + 1)) continue;
            fam1(s(v), s(v), w.loop(v, j, 1), w.loop(v, j, 1));
        }
    }

    fam1(W, W, w.loop(i, i + 1, 1), w.loop(i - 1, i, 1));
    fam1(W, N, w.loop(i, i + 1, 0), w.times_u(w.R(i), i));
    if (east) {
        fam1(E, E, w.loop(i, i, 1), w.loop(i + 1, i + 1, 1));
        fam1(E, N, w.loop(i, i, 0), w.times_u(w.L(i + 1), i + 1));
    }
    fam1(N, N, w.loop(i, i + 1, 1), w.loop(i, i, 1));
    fam1(N, N, w.loop(i, i, 1), w.loop(i, i + 1, 1));
    fam1(N, W, w.loop(i, i + 1, 1), w.times_u(w.L(i), i));
    if (east) fam1(N, E, w.loop(i, i, 1), w.times_u(w.R(i + 1), i + 1));

    auto fam2 = [&](int from, int to, PathPattern out, Path first, PathPattern second) {
        M->add_family({from, to, std::move(out), {PathPattern::plain(std::move(first)), std::move(second)}, 0});
    };
    fam2(s(i - 1), N, w.times_u(w.R(i), i), w.R(i), w.loop(i, i + 1, 1));
    if (east) {
        fam2(s(i - 1), E, w.times_u(w.R(i), i), w.R(i), w.times_u(w.R(i + 1), i + 1));
        fam2(s(i + 1), N, w.times_u(w.L(i + 1), i + 1), w.L(i + 1), w.loop(i, i, 1));
        fam2(s(i + 1), W, w.times_u(w.L(i + 1), i + 1), w.L(i + 1), w.times_u(w.L(i), i));
    }
    return M;
}

/// Reverses a path of cl_algebra: R_j and L_j trade places, loops stay.
Path reverse_path(const PresentedAlgebra& C, const Path& p) {
    Path r = Path::idempotent(p.end);
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        const auto& a = C.quiver().arrow(*it);
        int b = *it;
        if (a.source != a.target) {
            std::string other = (a.name[0] == 'R' ? "L" : "R") + a.name.substr(1);
            b = C.quiver().find(other).value();
        }
        r.arrows.push_back(b);
        r.end = C.quiver().arrow(b).target;
    }
    return r;
}

PathPattern reverse_pattern(const PresentedAlgebra& C, const PathPattern& p) {
    PathPattern r = p;
    r.base = reverse_path(C, p.base);
    return r;
}

BimodulePtr reversed(const DABimodule& P, std::string name) {
    const auto& C = *P.out_algebra();
    auto flip = GradingHom::flip_refined(static_cast<int>(P.grading_dim() / 2));
    auto M = std::make_shared<DABimodule>(std::move(name), P.out_algebra(), P.in_algebra(), P.out_hom(), P.in_hom());
    for (const auto& g : P.generators()) {
        DAGenerator r = g;
        r.hom = -g.hom;
        r.grading = -flip.apply(g.grading);
        M->add_generator(std::move(r));
    }
    for (const auto& a : P.all_arrows(0)) {
        std::vector<Path> in;
        for (auto it = a.in.rbegin(); it != a.in.rend(); ++it) in.push_back(reverse_path(C, *it));
        M->add_arrow(a.to, a.from, reverse_path(C, a.out), std::move(in));
    }
    for (const auto& f : P.families()) {
        ArrowFamily r{f.to, f.from, reverse_pattern(C, f.out), {}, f.k_min};
        for (auto it = f.in.rbegin(); it != f.in.rend(); ++it) r.in.push_back(reverse_pattern(C, *it));
        M->add_family(std::move(r));
    }
    return M;
}

}  // namespace

BimodulePtr crossing_bimodule(int m, int i, Sign s) {
    if (i < 1 || i > m - 1)
        throw std::invalid_argument("crossing index must lie in 1.." + std::to_string(m - 1) + ", got " +
                                    std::to_string(i));
    auto P = positive_crossing(m, i);
    if (s == Sign::Positive) return P;
    return reversed(*P, "N" + std::to_string(i));
}

BimodulePtr collapsed_crossing(int m, int i, Sign s) {
    const auto& fam = algebras(m);
    auto P = crossing_bimodule(m, i, s);
    return regrade(P, fam.cl_bot, fam.cl_bot, GradingHom::epsilon(m), GradingHom::identity(1),
                   GradingHom::identity(1), P->name());
}

}  // namespace dabim
