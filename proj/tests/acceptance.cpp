// One PASS/FAIL line per acceptance criterion. Every comparison is exact over
// GF(2); the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dabim/algebras.hpp"
#include "dabim/checks.hpp"
#include "dabim/gf2.hpp"

using namespace dabim;

namespace {

constexpr double kItemSeconds = 60.0;
constexpr double kBraidSeconds = 300.0;
constexpr std::size_t kKernelMaxLen = 8;
const VerifyBounds kDefault{3, 4, 4};

struct Outcome {
    bool pass = true;
    std::string detail;
    std::size_t checked = 0;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void expect_all(const std::vector<CheckResult>& rs, const std::string& where) {
        for (const auto& r : rs) expect(r.pass, where + ": " + r.name + " (" + r.detail + ")");
    }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > limit) {
        o.pass = false;
        o.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s";
    }
    if (o.pass) o.detail = std::to_string(o.checked) + " checks";
    if (!o.pass) ++failures;
    std::printf("%s C%d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string where(int m, int i, Sign s) {
    return "m=" + std::to_string(m) + " i=" + std::to_string(i) + " " + to_string(s);
}

template <class F>
void each_crossing(int m_lo, int m_hi, F f) {
    for (int m = m_lo; m <= m_hi; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) f(m, i, s);
}

// -------------------------------------------------------------- criterion 3

std::pair<int, int> transferred_counts(int m, int i, Sign s) {
    const auto& fam = algebras(m);
    auto rest = restrict_inputs(*fam.phi, twist_bimodule(m, i, s));
    auto red = reduce(rest).reduced;
    using Key = std::tuple<std::string, std::string, Path, std::vector<std::vector<Path>>>;
    auto key = [&](const DABimodule& M, const ConcreteArrow& a) {
        std::vector<std::vector<Path>> images;
        for (const auto& p : a.in) images.push_back(fam.phi->apply(p));
        return Key{M.generator(a.from).name, M.generator(a.to).name, a.out, images};
    };
    std::set<Key> before, seen;
    for (const auto& a : rest->all_arrows(std::nullopt)) before.insert(key(*rest, a));
    int two = 0, three = 0;
    for (const auto& a : red->all_arrows(std::nullopt)) {
        auto k = key(*red, a);
        if (before.count(k) || !seen.insert(k).second) continue;
        (a.in.size() == 1 ? two : three)++;
    }
    return {two, three};
}

// -------------------------------------------------------------- criterion 6

using Table = std::map<std::pair<int, std::int64_t>, int>;

struct KsComplex {
    Table dims;
    std::size_t rank_d = 0;
};

// The complex built from A and P_i (x) iP directly, homological degrees negated.
KsComplex ks_complex(int m, int i, Sign s) {
    const auto A = ks_algebra(m);
    const auto basis = A->basis(16);
    std::vector<Path> left, right;  // P_i = A(i), iP = (i)A
    for (const auto& p : basis) {
        if (p.end == i) left.push_back(p);
        if (p.start == i) right.push_back(p);
    }
    KsComplex c;
    const int pp_hom = s == Sign::Positive ? 1 : -1;
    const std::int64_t shift = s == Sign::Positive ? 0 : -1;
    for (const auto& p : basis) c.dims[{0, A->grading(p).as_integer()}]++;
    std::map<std::pair<Path, Path>, std::size_t> pp_index;
    for (const auto& a : left)
        for (const auto& b : right) {
            c.dims[{pp_hom, A->grading(a).as_integer() + A->grading(b).as_integer() + shift}]++;
            pp_index.emplace(std::make_pair(a, b), pp_index.size());
        }
    std::map<Path, std::size_t> a_index;
    for (const auto& p : basis) a_index.emplace(p, a_index.size());

    if (s == Sign::Positive) {
        // beta(a (x) b) = a b
        Gf2Span span(a_index.size());
        for (const auto& [ab, k] : pp_index) {
            BitVec v(a_index.size());
            for (const auto& t : A->multiply(ab.first, ab.second)) v.flip(a_index.at(t));
            span.insert(v);
        }
        c.rank_d = span.rank();
    } else {
        // gamma(c) = c gamma(1)
        auto P = [&](const char* t) { return A->parse_path(t); };
        auto v = [](int a, int b) { return "(" + std::to_string(a) + "|" + std::to_string(b) + ")"; };
        std::vector<std::pair<Path, Path>> g1;
        if (i - 1 >= 0) g1.push_back({P(v(i - 1, i).c_str()), P(v(i, i - 1).c_str())});
        if (i + 1 <= m - 1) g1.push_back({P(v(i + 1, i).c_str()), P(v(i, i + 1).c_str())});
        const std::string loop = "(" + std::to_string(i) + "|" + std::to_string(i - 1) + "|" + std::to_string(i) + ")";
        const std::string idem = "(" + std::to_string(i) + ")";
        g1.push_back({P(idem.c_str()), P(loop.c_str())});
        g1.push_back({P(loop.c_str()), P(idem.c_str())});
        Gf2Span span(pp_index.size());
        for (const auto& cpath : basis) {
            BitVec w(pp_index.size());
            for (const auto& [x, y] : g1)
                for (const auto& t : A->multiply(cpath, x)) w.flip(pp_index.at({t, y}));
            span.insert(w);
        }
        c.rank_d = span.rank();
    }
    return c;
}

KsComplex from_da(int m, int i, Sign s) {
    auto D = box_with_algebra(twist_bimodule(m, i, s), 16);
    KsComplex c;
    for (std::size_t u = 0; u < D.basis.size(); ++u) c.dims[{D.hom[u], D.grading[u].as_integer()}]++;
    Gf2Span span(D.basis.size());
    for (const auto& row : D.d) {
        BitVec v(D.basis.size());
        for (int t : row) v.flip(static_cast<std::size_t>(t));
        span.insert(v);
    }
    c.rank_d = span.rank();
    return c;
}

std::string table_string(const Table& t) {
    std::ostringstream os;
    for (const auto& [k, n] : t) os << "(" << k.first << "," << k.second << "):" << n << " ";
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "kernel of phi is the ideal of U_1 + ... + U_m", kItemSeconds, [](Outcome& o) {
        for (int m = 2; m <= 5; ++m) o.expect_all(kernel_checks(m, kKernelMaxLen), "m=" + std::to_string(m));
    });

    criterion(2, "structure relations of the eight bimodule families", kItemSeconds, [](Outcome& o) {
        each_crossing(2, 5, [&](int m, int i, Sign s) {
            const auto& phi = *algebras(m).phi;
            const auto w = where(m, i, s);
            o.expect(verify_structure(*twist_bimodule(m, i, s), kDefault).pass(), w + " twist");
            o.expect(verify_structure(*crossing_bimodule(m, i, s), kDefault).pass(), w + " crossing");
            o.expect(verify_structure(*restrict_inputs(phi, twist_bimodule(m, i, s)), kDefault).pass(),
                     w + " restricted twist");
            o.expect(verify_structure(*induct_outputs(phi, collapsed_crossing(m, i, s)), kDefault).pass(),
                     w + " induced crossing");
        });
    });

    criterion(3, "cancellation identities and transferred arrow counts", kItemSeconds, [](Outcome& o) {
        each_crossing(2, 5, [&](int m, int i, Sign s) {
            const auto w = where(m, i, s);
            auto cd = cancellation_data(m, i, s);
            auto id_small = components_up_to(DAMorphism::identity(cd.small), 0);
            auto id_big = components_up_to(DAMorphism::identity(cd.big), 0);
            o.expect(components_up_to(compose(cd.project, cd.include), 0) == id_small, w + ": g f = id");
            o.expect(components_up_to(compose(cd.include, cd.project), 0) + id_big ==
                         components_up_to(differential(cd.homotopy), 0),
                     w + ": f g = id + dT");
            o.expect(compose(cd.homotopy, cd.homotopy).is_zero(), w + ": T T = 0");
            auto rest = restrict_inputs(*algebras(m).phi, twist_bimodule(m, i, s));
            o.expect(same_by_names(*reduce(rest).reduced, *cd.small), w + ": reduction matches the model");
            if (m >= 3 && i < m - 1) {
                auto [two, three] = transferred_counts(m, i, s);
                o.expect(two == 3, w + ": " + std::to_string(two) + " transferred arrows with one input, expected 3");
                o.expect(three == 6, w + ": " + std::to_string(three) + " transferred arrows with two inputs, expected 6");
            }
        });
    });

    criterion(4, "restricted twist and induced crossing are equivalent", kItemSeconds, [](Outcome& o) {
        each_crossing(3, 5, [&](int m, int i, Sign s) { o.expect_all(equivalence_checks(m, i, s, kDefault), where(m, i, s)); });
    });

    criterion(5, "grading coherence", kItemSeconds, [](Outcome& o) {
        for (int m = 2; m <= 5; ++m) {
            const auto eta = GradingHom::eta(m);
            const auto eps = GradingHom::epsilon(m);
            for (int i = 1; i < m; ++i) {
                const auto sw = GradingHom::swap_refined(m, i);
                const auto sa = GradingHom::swap_alexander(m, i);
                for (int j = 1; j <= m; ++j)
                    for (const auto& v : {tau(m, j), beta(m, j)}) {
                        o.expect(eta.apply(sw.apply(v)) == sa.apply(eta.apply(v)), "eta swap square");
                        o.expect(eps.apply(sw.apply(v)) == eps.apply(v), "epsilon swap square");
                    }
            }
        }
        each_crossing(2, 5, [&](int m, int i, Sign s) {
            const auto w = where(m, i, s);
            for (auto k : {ObjectKind::Twist, ObjectKind::Crossing, ObjectKind::RestrictedTwist,
                           ObjectKind::ReducedTwist, ObjectKind::InducedCrossing}) {
                auto M = build_object(k, m, i, s);
                auto p = M->check_gradings(kDefault.k_max);
                o.expect(p.empty(), w + " " + to_string(k) + ": " + (p.empty() ? "" : p.front()));
            }
            auto D = box_with_algebra(twist_bimodule(m, i, s), 16);
            auto p = verify_dg_module(D, 2);
            o.expect(p.empty(), w + " A box twist: " + (p.empty() ? "" : p.front()));
            for (std::size_t u = 0; u < D.basis.size(); ++u)
                for (int t : D.d[u]) o.expect(D.hom[static_cast<std::size_t>(t)] == D.hom[u] - 1, w + ": d changes degree by other than -1");
        });
    });

    criterion(6, "A box twist matches the Khovanov-Seidel complex", kItemSeconds, [](Outcome& o) {
        each_crossing(2, 5, [&](int m, int i, Sign s) {
            auto ks = ks_complex(m, i, s);
            auto da = from_da(m, i, s);
            o.expect(ks.dims == da.dims, where(m, i, s) + ": dimensions " + table_string(ks.dims) + "vs " +
                                             table_string(da.dims));
            o.expect(ks.rank_d == da.rank_d, where(m, i, s) + ": rank of d " + std::to_string(ks.rank_d) + " vs " +
                                                 std::to_string(da.rank_d));
        });
    });

    criterion(7, "braid composition properties (not claims of the source)", kBraidSeconds, [](Outcome& o) {
        const int m = 3;
        auto id = identity_bimodule(ks_algebra(m), 8);
        for (int i = 1; i < m; ++i)
            for (const auto& w : {std::vector<int>{i, -i}, std::vector<int>{-i, i}}) {
                BraidOptions opt;
                auto M = braid_bimodule(m, w, opt);
                o.expect(M->generator_count() == m && find_isomorphism(*M, *id, 100000).found,
                         "KS twist and inverse at i=" + std::to_string(i) + " do not reduce to the identity");
            }
        for (Flavor f : {Flavor::KS, Flavor::OSz})
            for (int sgn : {1, -1}) {
                BraidOptions opt;
                opt.flavor = f;
                auto a = braid_bimodule(m, {sgn, 2 * sgn, sgn}, opt);
                auto b = braid_bimodule(m, {2 * sgn, sgn, 2 * sgn}, opt);
                auto iso = find_isomorphism(*a, *b, 1000000);
                o.expect(iso.found, std::string(f == Flavor::KS ? "KS" : "OSz") + " braid relation, sign " +
                                        std::to_string(sgn) + (iso.budget_exhausted ? ": budget exhausted" : ""));
            }
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
