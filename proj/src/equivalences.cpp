#include "dabim/bimodules.hpp"

namespace dabim {

CrossingEquivalence crossing_equivalence(int m, int i, Sign s) {
    const auto& fam = algebras(m);
    const auto& A = *fam.ks;
    const auto& C = *fam.cl_bot;
    auto Z = reduced_restricted_twist(m, i, s);
    auto X = induct_outputs(*fam.phi, collapsed_crossing(m, i, s));
    const bool east = i + 1 < m;

    auto ks = [&](int a, int b) { return A.parse_path("(" + std::to_string(a) + "|" + std::to_string(b) + ")"); };
    auto arrow = [&](char kind, int j) { return C.parse_path(std::string(1, kind) + std::to_string(j)); };
    auto u_at = [&](int j, int v) { return C.named_power_at(C.named_index("U" + std::to_string(j)).value(), v, 1).value(); };
    auto times = [&](const Path& a, const Path& b) { return C.multiply_monomial(a, b).value(); };

    const std::string A_ = twist_path_name(A, ks(i, i - 1));
    const std::string B_ = east ? twist_path_name(A, ks(i, i + 1)) : "";
    const std::string I_ = twist_path_name(A, Path::idempotent(i));
    const std::string C_ = twist_path_name(A, A.parse_path("(" + std::to_string(i) + "|" + std::to_string(i - 1) + "|" +
                                                           std::to_string(i) + ")"));
    const std::string prev = twist_vertex_name(i - 1);
    const std::string next = twist_vertex_name(i + 1);
    const std::string sprev = "S" + std::to_string(i - 1);
    const std::string snext = "S" + std::to_string(i + 1);

    DAMorphism iota("match", Z, X, 0), iota_back("match_back", X, Z, 0);
    DAMorphism corr("correction", Z, X, 0), corr_back("correction_back", X, Z, 0);
    auto both = [&](const std::string& z, const std::string& x) {
        const int zi = Z->generator_index(z), xi = X->generator_index(x);
        iota.add(zi, xi, Path::idempotent(Z->generator(zi).left), {});
        iota_back.add(xi, zi, Path::idempotent(X->generator(xi).left), {});
    };
    for (int j = 0; j < m; ++j)
        if (j != i) both(twist_vertex_name(j), "S" + std::to_string(j));
    both(A_, "W");
    if (east) both(B_, "E");
    both(s == Sign::Positive ? C_ : I_, "N");

    auto add = [](DAMorphism& f, const std::string& from, const std::string& to, const Path& out, const Path& in) {
        f.add(f.source()->generator_index(from), f.target()->generator_index(to), out, {in});
    };
    const Path ui_prev = u_at(i, i - 1);
    const Path riui = times(arrow('R', i), u_at(i, i));
    if (s == Sign::Positive) {
        add(corr, prev, "W", ks(i - 1, i), ui_prev);
        add(corr, prev, "N", ks(i - 1, i), riui);
        add(corr_back, sprev, A_, ks(i - 1, i), ui_prev);
        add(corr_back, sprev, C_, ks(i - 1, i), riui);
        if (east) {
            const Path uj_next = u_at(i + 1, i + 1);
            const Path lju = times(arrow('L', i + 1), u_at(i + 1, i));
            add(corr, next, "E", ks(i + 1, i), uj_next);
            add(corr, next, "N", ks(i + 1, i), lju);
            add(corr_back, snext, B_, ks(i + 1, i), uj_next);
            add(corr_back, snext, C_, ks(i + 1, i), lju);
        }
    } else {
        const Path liui = times(arrow('L', i), u_at(i, i - 1));
        add(corr, A_, sprev, ks(i, i - 1), ui_prev);
        add(corr, I_, sprev, ks(i, i - 1), liui);
        add(corr_back, "W", prev, ks(i, i - 1), ui_prev);
        add(corr_back, "N", prev, ks(i, i - 1), liui);
        if (east) {
            const Path uj_next = u_at(i + 1, i + 1);
            const Path rju = times(arrow('R', i + 1), u_at(i + 1, i + 1));
            add(corr, B_, snext, ks(i, i + 1), uj_next);
            add(corr, I_, snext, ks(i, i + 1), rju);
            add(corr_back, "E", next, ks(i, i + 1), uj_next);
            add(corr_back, "N", next, ks(i, i + 1), rju);
        }
    }
    DAMorphism forward = iota + corr, backward = iota_back + corr_back;
    forward.set_name("forward");
    backward.set_name("backward");
    return {Z, X, std::move(iota), std::move(corr), std::move(iota_back), std::move(corr_back), std::move(forward),
            std::move(backward)};
}

}  // namespace dabim
