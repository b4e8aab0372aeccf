#include <doctest.h>

#include <set>
#include <tuple>

#include "dabim/algebras.hpp"
#include "dabim/bimodules.hpp"

using namespace dabim;

namespace {

const VerifyBounds kDefault{3, 4, 4};

struct NewArrows {
    int two = 0;
    int three = 0;
};

// Arrows of the reduced twist that are not arrows of the restricted twist,
// counted once per KS image of their inputs.
NewArrows transferred_arrows(int m, int i, Sign s) {
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
    NewArrows n;
    for (const auto& a : red->all_arrows(std::nullopt)) {
        auto k = key(*red, a);
        if (before.count(k) || !seen.insert(k).second) continue;
        (a.in.size() == 1 ? n.two : n.three)++;
    }
    return n;
}

}  // namespace

TEST_CASE("twist generator counts") {
    for (int m = 2; m <= 5; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                auto R = twist_bimodule(m, i, s);
                CHECK(R->generator_count() == (i < m - 1 ? m + 4 : m + 3));
                CHECK(R->max_arity() <= 1);
                for (const auto& g : R->generators())
                    CHECK(g.hom == (g.name.find('*') == std::string::npos ? 0 : (s == Sign::Positive ? 1 : -1)));
            }
}

TEST_CASE("twist index out of range") {
    CHECK_THROWS_AS(twist_bimodule(3, 0, Sign::Positive), std::invalid_argument);
    CHECK_THROWS_AS(twist_bimodule(3, 3, Sign::Negative), std::invalid_argument);
    CHECK_THROWS_AS(crossing_bimodule(3, 3, Sign::Positive), std::invalid_argument);
    CHECK_THROWS_AS(crossing_bimodule(4, 0, Sign::Negative), std::invalid_argument);
}

TEST_CASE("crossing generators and homological degrees") {
    for (int m = 2; m <= 5; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                auto P = crossing_bimodule(m, i, s);
                CHECK(P->generator_count() == (i < m - 1 ? m + 2 : m + 1));
                const int shifted = s == Sign::Positive ? 1 : -1;
                for (const char* n : {"W", "N"}) CHECK(P->generator(P->generator_index(n)).hom == shifted);
                if (i < m - 1) CHECK(P->generator(P->generator_index("E")).hom == shifted);
                CHECK(P->find_generator("E").has_value() == (i < m - 1));
                for (const auto& g : P->generators())
                    if (g.name[0] == 'S') CHECK(g.hom == 0);
                CHECK(P->find_generator("S" + std::to_string(i)) == std::nullopt);
            }
}

TEST_CASE("crossing gradings") {
    const int m = 3;
    auto P = crossing_bimodule(m, 1, Sign::Positive);
    CHECK(P->generator(P->generator_index("W")).grading == beta(m, 1, 2));
    CHECK(P->generator(P->generator_index("E")).grading == tau(m, 2, 2));
    CHECK(P->generator(P->generator_index("N")).grading == tau(m, 2, 2) + beta(m, 1, 2));
    auto Q = crossing_bimodule(m, 1, Sign::Negative);
    CHECK(Q->generator(Q->generator_index("N")).grading == -(tau(m, 1, 2) + beta(m, 2, 2)));
}

TEST_CASE("the negative crossing is the reversal of the positive one") {
    for (int m = 3; m <= 4; ++m)
        for (int i = 1; i < m; ++i) {
            auto P = crossing_bimodule(m, i, Sign::Positive);
            auto N = crossing_bimodule(m, i, Sign::Negative);
            CHECK(P->concrete_term_count() == N->concrete_term_count());
            CHECK(P->families().size() == N->families().size());
        }
    auto N = crossing_bimodule(3, 1, Sign::Negative);
    const auto& C = *N->out_algebra();
    // W -> L1 S0 becomes S0 -> R1 W
    CHECK(N->delta(N->generator_index("S0"), {}) == OutSum{OutTerm{C.parse_path("R1"), N->generator_index("W")}});
}

TEST_CASE("built-in bimodules are graded and satisfy the structure relation") {
    for (int m = 2; m <= 4; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                CAPTURE(m);
                CAPTURE(i);
                for (const auto& M : {twist_bimodule(m, i, s), crossing_bimodule(m, i, s)}) {
                    CHECK(M->check_idempotents().empty());
                    CHECK(M->check_gradings(4).empty());
                    CHECK(verify_structure(*M, kDefault).pass());
                }
            }
}

TEST_CASE("reduction of the restricted twist matches the model") {
    for (int m = 2; m <= 5; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                CAPTURE(m);
                CAPTURE(i);
                auto rest = restrict_inputs(*algebras(m).phi, twist_bimodule(m, i, s));
                auto red = reduce(rest);
                CHECK(red.cancelled.size() == 1);
                CHECK(red.reduced->generator_count() == rest->generator_count() - 2);
                CHECK(same_by_names(*red.reduced, *reduced_restricted_twist(m, i, s)));
            }
}

TEST_CASE("transferred arrow counts") {
    for (int m = 3; m <= 5; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                auto n = transferred_arrows(m, i, s);
                CHECK(n.two == (i < m - 1 ? 3 : 2));
                CHECK(n.three == (i < m - 1 ? 6 : 2));
            }
}

TEST_CASE("cancellation data") {
    auto cd = cancellation_data(4, 2, Sign::Positive);
    const auto& A = *cd.big->out_algebra();
    auto fc = cd.include.eval(cd.small->generator_index("<2*(2|1|2)>"), {});
    CHECK(fc.size() == 2);
    CHECK(std::count(fc.begin(), fc.end(), OutTerm{A.parse_path("(2|1|2)"), cd.big->generator_index("<2*(2)>")}) == 1);
    CHECK(cd.homotopy.eval(cd.big->generator_index("<2>"), {}) ==
          OutSum{OutTerm{A.parse_path("(2)"), cd.big->generator_index("<2*(2)>")}});
    CHECK(compose(cd.homotopy, cd.homotopy).is_zero());

    auto cn = cancellation_data(4, 2, Sign::Negative);
    CHECK(cn.project.eval(cn.big->generator_index("<2*(2|1|2)>"), {}) ==
          OutSum{OutTerm{A.parse_path("(2|1|2)"), cn.small->generator_index("<2*(2)>")}});
    CHECK(cn.homotopy.term_count() == 1);
}

TEST_CASE("correction components") {
    auto eq = crossing_equivalence(4, 2, Sign::Positive);
    const auto& C = *eq.reduced_twist->in_algebra();
    const auto& A = *eq.induced_crossing->out_algebra();
    const auto& X = *eq.induced_crossing;
    CHECK(eq.correction.eval(eq.reduced_twist->generator_index("<3>"), {C.parse_path("L3 R3 L3")}) ==
          OutSum{OutTerm{A.parse_path("(3|2)"), X.generator_index("N")}});
    CHECK(eq.correction.eval(eq.reduced_twist->generator_index("<1>"), {C.parse_path("R2 L2")}) ==
          OutSum{OutTerm{A.parse_path("(1|2)"), X.generator_index("W")}});
    // no components without inputs
    CHECK(components_up_to(eq.correction, 0).is_zero());
    CHECK(components_up_to(eq.correction_back, 0).is_zero());
}

TEST_CASE("the matching alone is not a homomorphism") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto eq = crossing_equivalence(4, 2, s);
        CHECK_FALSE(verify_cycle(eq.match, kDefault).pass());
        CHECK(verify_cycle(eq.forward, kDefault).pass());
        CHECK(verify_cycle(eq.backward, kDefault).pass());
    }
}

TEST_CASE("U_i only sees vertices i-1 and i") {
    for (int m = 2; m <= 5; ++m) {
        const auto& C = *algebras(m).cl;
        for (int i = 1; i <= m; ++i) {
            const auto& u = C.named()[static_cast<std::size_t>(C.named_index("U" + std::to_string(i)).value())].terms;
            for (int j = 0; j < m; ++j) {
                auto cut = C.multiply(u, {Path::idempotent(j)});
                const bool touches = j == i - 1 || j == i;
                CHECK(cut.empty() != touches);
            }
        }
    }
}

TEST_CASE("induced crossing has no families") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto X = induct_outputs(*algebras(3).phi, collapsed_crossing(3, 1, s));
        CHECK(X->generator_count() == crossing_bimodule(3, 1, s)->generator_count());
        CHECK(verify_structure(*X, kDefault).pass());
    }
}
