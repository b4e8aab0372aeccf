#include <doctest.h>

#include <algorithm>

#include "dabim/algebras.hpp"
#include "dabim/bimodules.hpp"

using namespace dabim;

namespace {

const VerifyBounds kDefault{3, 4, 4};

OutSum term(const PresentedAlgebra& A, const DABimodule& M, const char* out, const char* gen) {
    return {OutTerm{A.parse_path(out), M.generator_index(gen)}};
}

OutSum sum(OutSum a, const OutSum& b) {
    for (const auto& t : b) toggle_term(a, t);
    std::sort(a.begin(), a.end());
    return a;
}

OutSum sorted(OutSum s) {
    std::sort(s.begin(), s.end());
    return s;
}

// Same generators and concrete arrows, with the given family left out.
BimodulePtr without_family(const DABimodule& M, std::size_t skip) {
    auto out = std::make_shared<DABimodule>(M.name() + "-mutant", M.out_algebra(), M.in_algebra(), M.out_hom(),
                                            M.in_hom());
    for (const auto& g : M.generators()) out->add_generator(g);
    for (int x = 0; x < M.generator_count(); ++x)
        for (const auto& [in, terms] : M.table()[static_cast<std::size_t>(x)])
            for (const auto& t : terms) out->add_arrow(x, t.gen, t.out, in);
    for (std::size_t f = 0; f < M.families().size(); ++f)
        if (f != skip) out->add_family(M.families()[f]);
    return out;
}

// Generators at each vertex and no arrows.
BimodulePtr bare_bimodule(const AlgebraPtr& A) {
    auto id = GradingHom::identity(A->grading_dim());
    auto M = std::make_shared<DABimodule>("bare", A, A, id, id);
    for (int v = 0; v < A->vertex_count(); ++v)
        M->add_generator({"x" + std::to_string(v), v, v, 0, Grading(A->grading_dim())});
    return M;
}

AlgebraHom identity_hom(const AlgebraPtr& A) {
    std::vector<int> verts;
    for (int v = 0; v < A->vertex_count(); ++v) verts.push_back(v);
    std::vector<std::vector<Path>> images;
    for (std::size_t k = 0; k < A->quiver().arrows().size(); ++k) images.push_back({A->arrow_path(static_cast<int>(k))});
    return AlgebraHom("id", A, A, verts, images, GradingHom::identity(A->grading_dim()));
}

}  // namespace

TEST_CASE("delta of the positive twist") {
    auto R = twist_bimodule(3, 1, Sign::Positive);
    const auto& A = *R->out_algebra();
    CHECK(R->delta(R->generator_index("<1*(1|0)>"), {}) == term(A, *R, "(1|0)", "<0>"));
    CHECK(R->delta(R->generator_index("<1>"), {A.parse_path("(1|2)")}) == term(A, *R, "(1|2)", "<2>"));
    CHECK(R->delta(R->generator_index("<1>"), {}).empty());
    // two inputs: nothing
    CHECK(R->delta(R->generator_index("<0>"), {A.parse_path("(0|1)"), A.parse_path("(1|2)")}).empty());
}

TEST_CASE("delta of the negative twist") {
    auto R = twist_bimodule(3, 1, Sign::Negative);
    const auto& A = *R->out_algebra();
    auto got = sorted(R->delta(R->generator_index("<1>"), {}));
    CHECK(got == sum(term(A, *R, "(1|0|1)", "<1*(1)>"), term(A, *R, "(1)", "<1*(1|0|1)>")));
    CHECK(R->delta(R->generator_index("<0>"), {}) == term(A, *R, "(0|1)", "<1*(1|0)>"));
}

TEST_CASE("strict unitality") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        for (auto M : {twist_bimodule(3, 1, s), crossing_bimodule(3, 1, s)}) {
            for (int x = 0; x < M->generator_count(); ++x) {
                Path e = Path::idempotent(M->generator(x).right);
                CHECK(M->delta(x, {e}) == OutSum{OutTerm{Path::idempotent(M->generator(x).left), x}});
                // a unit among other inputs kills the operation
                auto paths = M->in_algebra()->basis_from(M->generator(x).right, 1);
                for (const auto& p : paths)
                    if (p.length() == 1) CHECK(M->delta(x, {e, p}).empty());
            }
        }
    }
}

TEST_CASE("identity bimodule and bare bimodule satisfy the structure relation") {
    auto A = ks_algebra(3);
    CHECK(verify_structure(*identity_bimodule(A, 8), kDefault).pass());
    CHECK(verify_structure(*bare_bimodule(A), kDefault).pass());
    CHECK(verify_structure(*bare_bimodule(cl_bottom_algebra(3)), kDefault).pass());
}

TEST_CASE("deleting a family with two inputs breaks the structure relation") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto P = crossing_bimodule(3, 1, s);
        REQUIRE(verify_structure(*P, kDefault).pass());
        int mutated = 0;
        for (std::size_t f = 0; f < P->families().size(); ++f) {
            if (P->families()[f].in.size() != 2) continue;
            auto bad = without_family(*P, f);
            auto rep = verify_structure(*bad, kDefault);
            CHECK_FALSE(rep.pass());
            if (!rep.pass()) CHECK_FALSE(rep.failures.front().residual.empty());
            ++mutated;
        }
        CHECK(mutated > 0);
    }
}

TEST_CASE("deleting a concrete arrow of the twist breaks the structure relation") {
    auto R = twist_bimodule(3, 1, Sign::Positive);
    auto bad = std::make_shared<DABimodule>(*R);
    const auto& A = *R->out_algebra();
    // adding the same term again toggles it off
    bad->add_arrow(R->generator_index("<1*(1|0)>"), R->generator_index("<1*(1|0|1)>"), A.parse_path("(1)"),
                   {A.parse_path("(0|1)")});
    CHECK_FALSE(verify_structure(*bad, kDefault).pass());
}

TEST_CASE("reduce leaves a bimodule without unit arrows alone") {
    auto P = crossing_bimodule(3, 1, Sign::Positive);
    CHECK_FALSE(choose_cancellation(*P).has_value());
    auto red = reduce(P);
    CHECK(red.cancelled.empty());
    CHECK(red.reduced->table() == P->table());
    CHECK(red.reduced->families().size() == P->families().size());
    auto I = identity_bimodule(ks_algebra(3), 8);
    CHECK(same_by_names(*reduce(I).reduced, *I));
}

TEST_CASE("cancelling a single unit arrow") {
    auto A = ks_algebra(2);
    auto id = GradingHom::identity(A->grading_dim());
    auto M = std::make_shared<DABimodule>("pair", A, A, id, id);
    int x = M->add_generator({"x", 0, 0, 1, Grading(A->grading_dim())});
    int y = M->add_generator({"y", 0, 0, 0, Grading(A->grading_dim())});
    M->add_arrow(x, y, Path::idempotent(0), {});
    auto red = reduce(M);
    CHECK(red.reduced->generator_count() == 0);
    REQUIRE(red.cancelled.size() == 1);
    CHECK(red.cancelled.front() == std::pair<std::string, std::string>{"x", "y"});
}

TEST_CASE("box tensor with the identity bimodule") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto R = twist_bimodule(3, 1, s);
        auto I = identity_bimodule(ks_algebra(3), 8);
        auto right = box_tensor(R, I);
        auto left = box_tensor(I, R);
        CHECK(right->generator_count() == R->generator_count());
        CHECK(find_isomorphism(*right, *R, 100000).found);
        CHECK(find_isomorphism(*left, *R, 100000).found);
    }
}

TEST_CASE("box tensor is associative on twists") {
    auto R1 = twist_bimodule(3, 1, Sign::Positive);
    auto R2 = twist_bimodule(3, 2, Sign::Positive);
    auto a = box_tensor(box_tensor(R1, R2), R1);
    auto b = box_tensor(R1, box_tensor(R2, R1));
    CHECK(a->generator_count() == b->generator_count());
    CHECK(find_isomorphism(*a, *b, 1000000).found);
    CHECK(verify_structure(*a, kDefault).pass());
}

TEST_CASE("a twist and its inverse reduce to the identity") {
    auto R = twist_bimodule(3, 1, Sign::Positive);
    auto Rp = twist_bimodule(3, 1, Sign::Negative);
    auto red = reduce(box_tensor(R, Rp)).reduced;
    CHECK(red->generator_count() == 3);
    CHECK(find_isomorphism(*red, *identity_bimodule(ks_algebra(3), 8), 1000).found);
}

TEST_CASE("morphism algebra") {
    auto R = twist_bimodule(3, 1, Sign::Positive);
    auto id = DAMorphism::identity(R);
    CHECK(differential(id).is_zero());
    CHECK(compose(id, id) == id);
    CHECK((id + id).is_zero());
    DAMorphism zero("zero", R, R);
    CHECK(verify_cycle(zero, kDefault).pass());
    CHECK(verify_cycle(id, kDefault).pass());

    auto cd = cancellation_data(3, 1, Sign::Positive);
    CHECK(compose(DAMorphism::identity(cd.big), cd.include) == cd.include);
    CHECK(compose(cd.include, DAMorphism::identity(cd.small)) == cd.include);
}

TEST_CASE("a map that is not a cycle") {
    auto R = twist_bimodule(3, 1, Sign::Positive);
    DAMorphism f("stray", R, R);
    // the identity on <1> alone misses the action of (0|1) on <0>
    f.add("<1>", "<1>", "(1)", {});
    CHECK_FALSE(verify_cycle(f, kDefault).pass());
    CHECK_FALSE(differential(f).is_zero());
}

TEST_CASE("restriction and induction along the identity") {
    auto R = twist_bimodule(3, 2, Sign::Negative);
    auto h = identity_hom(R->in_algebra());
    CHECK(same_by_names(*restrict_inputs(h, R), *R));
    CHECK(same_by_names(*induct_outputs(h, R), *R));
}

TEST_CASE("restriction through phi matches the twist table") {
    const int m = 3;
    const auto& fam = algebras(m);
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto R = twist_bimodule(m, 1, s);
        auto rest = restrict_inputs(*fam.phi, R);
        REQUIRE(rest->generator_count() == R->generator_count());
        std::size_t compared = 0;
        for (int x = 0; x < R->generator_count(); ++x) {
            CHECK(rest->generator(x).name == R->generator(x).name);
            for (const auto& c : fam.cl_bot->basis_from(R->generator(x).right, 3)) {
                if (c.length() == 0) continue;
                auto img = fam.phi->apply(c);
                OutSum expected;
                for (const auto& p : img)
                    for (const auto& t : R->delta(x, {p})) toggle_term(expected, t);
                CHECK(sorted(rest->delta(x, {c})) == sorted(expected));
                ++compared;
            }
        }
        CHECK(compared > 20);
    }
}

TEST_CASE("A box M for the twists") {
    for (int m = 2; m <= 4; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
                auto R = twist_bimodule(m, i, s);
                auto D = box_with_algebra(R, 8);
                CHECK(verify_dg_module(D, 2).empty());
                std::size_t rank = 0;
                const auto basis = R->out_algebra()->basis(8);
                for (const auto& g : R->generators())
                    for (const auto& a : basis) rank += a.end == g.left ? 1 : 0;
                CHECK(D.basis.size() == rank);
                for (std::size_t u = 0; u < D.basis.size(); ++u)
                    for (int v : D.d[u]) CHECK(D.hom[static_cast<std::size_t>(v)] == D.hom[u] - 1);
            }
}

TEST_CASE("A box M rejects higher operations") {
    CHECK_THROWS_AS(box_with_algebra(crossing_bimodule(3, 1, Sign::Positive), 4), std::invalid_argument);
}

TEST_CASE("A box M has zero differential when delta_1 vanishes") {
    auto A = ks_algebra(3);
    auto D = box_with_algebra(identity_bimodule(A, 8), 8);
    for (const auto& row : D.d) CHECK(row.empty());
    CHECK(D.basis.size() == A->basis(8).size());
}

TEST_CASE("computed reduction witnesses") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto rest = restrict_inputs(*algebras(4).phi, twist_bimodule(4, 2, s));
        auto red = reduce(rest);
        REQUIRE(red.include);
        const auto& f = *red.include;
        const auto& g = *red.project;
        const auto& T = *red.homotopy;
        CHECK(compose(g, f) == DAMorphism::identity(red.reduced));
        CHECK(compose(f, g) + DAMorphism::identity(rest) == differential(T));
        CHECK(compose(T, T).is_zero());
        CHECK(verify_cycle(f, kDefault).pass());
        CHECK(verify_cycle(g, kDefault).pass());
    }
}
