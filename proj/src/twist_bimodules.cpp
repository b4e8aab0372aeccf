#include <map>
#include <mutex>

#include "dabim/bimodules.hpp"

namespace dabim {

std::string to_string(Sign s) { return s == Sign::Positive ? "+" : "-"; }

Sign parse_sign(std::string_view s) {
    if (s == "+" || s == "pos" || s == "positive" || s == "1" || s == "+1") return Sign::Positive;
    if (s == "-" || s == "neg" || s == "negative" || s == "-1") return Sign::Negative;
    throw std::invalid_argument("sign must be + or -, got " + std::string(s));
}

const AlgebraFamily& algebras(int m) {
    static std::mutex mu;
    static std::map<int, AlgebraFamily> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    AlgebraFamily f;
    f.m = m;
    f.phi = cl_to_ks(m);
    f.ks = f.phi->target();
    f.cl_bot = f.phi->source();
    f.cl = cl_algebra(m);
    return cache.emplace(m, std::move(f)).first->second;
}

std::string twist_vertex_name(int j) { return "<" + std::to_string(j) + ">"; }

std::string twist_path_name(const PresentedAlgebra& ks, const Path& a) {
    std::string p = a.is_idempotent() ? "(" + std::to_string(a.start) + ")" : ks.to_string(a);
    return "<" + std::to_string(a.start) + "*" + p + ">";
}

namespace {

void require_index(int m, int i) {
    if (i < 1 || i > m - 1)
        throw std::invalid_argument("crossing index must lie in 1.." + std::to_string(m - 1) + ", got " +
                                    std::to_string(i));
}

Path ks_path(const PresentedAlgebra& A, std::initializer_list<int> verts) {
    std::string s = "(";
    bool first = true;
    for (int v : verts) {
        s += (first ? "" : "|") + std::to_string(v);
        first = false;
    }
    return A.parse_path(s + ")");
}

}  // namespace

BimodulePtr twist_bimodule(int m, int i, Sign s) {
    require_index(m, i);
    const auto& fam = algebras(m);
    const auto& A = *fam.ks;
    std::string name = s == Sign::Positive ? "R" + std::to_string(i) : "R'" + std::to_string(i);
    auto M = std::make_shared<DABimodule>(name, fam.ks, fam.ks, GradingHom::identity(1), GradingHom::identity(1));
    const int shift = s == Sign::Positive ? 1 : -1;
    std::vector<int> vert(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        vert[static_cast<std::size_t>(j)] = M->add_generator({twist_vertex_name(j), j, j, 0, Grading::integer(0)});
    std::map<Path, int> top;
    auto from_i = A.basis_from(i, 8);
    for (const auto& a : from_i) {
        Grading g = A.grading(a);
        if (s == Sign::Negative) g -= Grading::integer(1);
        top[a] = M->add_generator({twist_path_name(A, a), i, a.end, shift, g});
    }
    auto nonunit = A.basis(8);
    for (const auto& b : nonunit) {
        if (b.is_idempotent()) continue;
        for (int j = 0; j < m; ++j)
            if (b.start == j) M->add_arrow(vert[static_cast<std::size_t>(j)], vert[static_cast<std::size_t>(b.end)], b, {b});
        for (const auto& [a, x] : top) {
            if (a.end != b.start) continue;
            for (const auto& ab : A.multiply(a, b)) M->add_arrow(x, top.at(ab), Path::idempotent(i), {b});
        }
    }
    if (s == Sign::Positive) {
        for (const auto& [a, x] : top) M->add_arrow(x, vert[static_cast<std::size_t>(a.end)], a, {});
    } else {
        // coevaluation: e_j -> sum over dual bases of A e_i and e_i A
        M->add_arrow(vert[static_cast<std::size_t>(i - 1)], top.at(ks_path(A, {i, i - 1})), ks_path(A, {i - 1, i}), {});
        if (i + 1 < m)
            M->add_arrow(vert[static_cast<std::size_t>(i + 1)], top.at(ks_path(A, {i, i + 1})), ks_path(A, {i + 1, i}), {});
        M->add_arrow(vert[static_cast<std::size_t>(i)], top.at(Path::idempotent(i)), ks_path(A, {i, i - 1, i}), {});
        M->add_arrow(vert[static_cast<std::size_t>(i)], top.at(ks_path(A, {i, i - 1, i})), Path::idempotent(i), {});
    }
    return M;
}

BimodulePtr reduced_restricted_twist(int m, int i, Sign s) {
    require_index(m, i);
    const auto& fam = algebras(m);
    const auto& A = *fam.ks;
    const auto& C = *fam.cl_bot;
    auto rest = restrict_inputs(*fam.phi, twist_bimodule(m, i, s));
    const bool east = i + 1 < m;
    const Path loop = ks_path(A, {i, i - 1, i});
    std::string gone_a = s == Sign::Positive ? twist_path_name(A, Path::idempotent(i)) : twist_vertex_name(i);
    std::string gone_b = s == Sign::Positive ? twist_vertex_name(i) : twist_path_name(A, loop);

    auto Z = std::make_shared<DABimodule>(rest->name(), rest->out_algebra(), rest->in_algebra(), rest->out_hom(),
                                          rest->in_hom());
    std::vector<int> idx(static_cast<std::size_t>(rest->generator_count()), -1);
    for (int x = 0; x < rest->generator_count(); ++x) {
        const auto& g = rest->generator(x);
        if (g.name == gone_a || g.name == gone_b) continue;
        idx[static_cast<std::size_t>(x)] = Z->add_generator(g);
    }
    for (int x = 0; x < rest->generator_count(); ++x) {
        if (idx[static_cast<std::size_t>(x)] < 0) continue;
        for (const auto& a : rest->arrows_from(x, std::nullopt))
            if (idx[static_cast<std::size_t>(a.to)] >= 0)
                Z->add_arrow(idx[static_cast<std::size_t>(x)], idx[static_cast<std::size_t>(a.to)], a.out, a.in);
    }
    auto gen = [&](const std::string& n) { return Z->generator_index(n); };
    auto cp = [&](const char* p) { return C.parse_path(p); };
    auto arrow = [&](char kind, int j) { return cp((std::string(1, kind) + std::to_string(j)).c_str()); };
    // U_j cut down to vertex i
    auto u_at_i = [&](int j) { return *C.named_power_at(*C.named_index("U" + std::to_string(j)), i, 1); };

    const std::string wa = twist_path_name(A, ks_path(A, {i, i - 1}));
    const std::string wb = east ? twist_path_name(A, ks_path(A, {i, i + 1})) : "";
    const std::string wc = twist_path_name(A, loop);
    const std::string wi = twist_path_name(A, Path::idempotent(i));
    // inputs at vertex i whose image is the loop at i
    std::vector<Path> loop_inputs{u_at_i(i), u_at_i(i + 1)};

    if (s == Sign::Positive) {
        // through the cancelled pair: loop (x) <i>, then <i*(i)> absorbs one more input
        std::vector<std::pair<Path, std::string>> absorb{{arrow('L', i), wa}};
        if (east) absorb.emplace_back(arrow('R', i + 1), wb);
        for (const auto& u : loop_inputs) absorb.emplace_back(u, wc);
        for (const auto& [b, target] : absorb) {
            Z->add_arrow(gen(wc), gen(target), loop, {b});
            Z->add_arrow(gen(twist_vertex_name(i - 1)), gen(target), ks_path(A, {i - 1, i}), {arrow('R', i), b});
            if (east)
                Z->add_arrow(gen(twist_vertex_name(i + 1)), gen(target), ks_path(A, {i + 1, i}), {arrow('L', i + 1), b});
        }
    } else {
        std::vector<std::pair<std::string, Path>> enter{{wa, arrow('R', i)}};
        if (east) enter.emplace_back(wb, arrow('L', i + 1));
        for (const auto& u : loop_inputs) enter.emplace_back(wi, u);
        for (const auto& [source, b] : enter) {
            Z->add_arrow(gen(source), gen(wi), loop, {b});
            Z->add_arrow(gen(source), gen(twist_vertex_name(i - 1)), ks_path(A, {i, i - 1}), {b, arrow('L', i)});
            if (east)
                Z->add_arrow(gen(source), gen(twist_vertex_name(i + 1)), ks_path(A, {i, i + 1}), {b, arrow('R', i + 1)});
        }
    }
    return Z;
}

CancellationData cancellation_data(int m, int i, Sign s) {
    const auto& fam = algebras(m);
    const auto& A = *fam.ks;
    auto big = restrict_inputs(*fam.phi, twist_bimodule(m, i, s));
    auto small = reduced_restricted_twist(m, i, s);
    DAMorphism f("f", small, big, 0), g("g", big, small, 0), T("T", big, big, 1);
    for (const auto& gen : small->generators()) {
        f.add(small->generator_index(gen.name), big->generator_index(gen.name), Path::idempotent(gen.left), {});
        g.add(big->generator_index(gen.name), small->generator_index(gen.name), Path::idempotent(gen.left), {});
    }
    const Path loop = ks_path(A, {i, i - 1, i});
    const std::string wc = twist_path_name(A, loop);
    const std::string wi = twist_path_name(A, Path::idempotent(i));
    const std::string vi = twist_vertex_name(i);
    if (s == Sign::Positive) {
        f.add(small->generator_index(wc), big->generator_index(wi), loop, {});
        T.add(big->generator_index(vi), big->generator_index(wi), Path::idempotent(i), {});
    } else {
        g.add(big->generator_index(wc), small->generator_index(wi), loop, {});
        T.add(big->generator_index(wc), big->generator_index(vi), Path::idempotent(i), {});
    }
    return {big, small, std::move(f), std::move(g), std::move(T)};
}

DAMorphism components_up_to(const DAMorphism& f, std::size_t n) {
    DAMorphism r(f.name(), f.source(), f.target(), f.degree());
    for (int x = 0; x < f.source()->generator_count(); ++x)
        for (const auto& a : f.arrows_from(x))
            if (a.in.size() <= n) r.add(a.from, a.to, a.out, a.in);
    return r;
}

}  // namespace dabim
