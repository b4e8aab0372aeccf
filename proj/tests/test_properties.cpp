#include <doctest.h>

#include <random>

#include "dabim/algebras.hpp"
#include "dabim/bimodules.hpp"

using namespace dabim;

namespace {

std::vector<Path> random_element(const std::vector<Path>& basis, std::mt19937& rng, const PresentedAlgebra& A) {
    std::vector<Path> terms;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> count(1, 4);
    for (int n = count(rng); n > 0; --n) terms.push_back(basis[pick(rng)]);
    return A.normal_form(terms);
}

Grading random_refined(int m, std::mt19937& rng) {
    std::uniform_int_distribution<std::int64_t> d(-8, 8);
    std::vector<std::int64_t> v(static_cast<std::size_t>(2 * m));
    for (auto& x : v) x = 2 * d(rng);
    return Grading::from_scaled(v);
}

}  // namespace

TEST_CASE("random elements multiply associatively") {
    std::mt19937 rng(20240611);
    for (const auto& A : {ks_algebra(4), cl_algebra(3), cl_bottom_algebra(4), b_algebra(3)}) {
        const auto basis = A->basis(4);
        for (int t = 0; t < 200; ++t) {
            auto a = random_element(basis, rng, *A);
            auto b = random_element(basis, rng, *A);
            auto c = random_element(basis, rng, *A);
            CHECK(A->multiply(A->multiply(a, b), c) == A->multiply(a, A->multiply(b, c)));
            auto bc = b;
            bc.insert(bc.end(), c.begin(), c.end());
            auto lhs = A->multiply(a, A->normal_form(bc));
            auto rhs = A->multiply(a, b);
            auto ac = A->multiply(a, c);
            rhs.insert(rhs.end(), ac.begin(), ac.end());
            CHECK(lhs == A->normal_form(rhs));
        }
    }
}

TEST_CASE("phi is multiplicative on random elements") {
    std::mt19937 rng(7);
    for (int m = 2; m <= 5; ++m) {
        const auto& fam = algebras(m);
        const auto basis = fam.cl_bot->basis(5);
        for (int t = 0; t < 100; ++t) {
            auto a = random_element(basis, rng, *fam.cl_bot);
            auto b = random_element(basis, rng, *fam.cl_bot);
            CHECK(fam.phi->apply(fam.cl_bot->multiply(a, b)) ==
                  fam.ks->multiply(fam.phi->apply(a), fam.phi->apply(b)));
        }
    }
}

TEST_CASE("grading maps are additive and commute with the swaps") {
    std::mt19937 rng(99);
    for (int m = 2; m <= 5; ++m) {
        const auto eps = GradingHom::epsilon(m);
        const auto eta = GradingHom::eta(m);
        for (int t = 0; t < 100; ++t) {
            auto g = random_refined(m, rng);
            auto h = random_refined(m, rng);
            CHECK(eps.apply(g + h) == eps.apply(g) + eps.apply(h));
            CHECK(eta.apply(g - h) == eta.apply(g) - eta.apply(h));
            for (int i = 1; i < m; ++i) {
                const auto s = GradingHom::swap_refined(m, i);
                CHECK(eta.apply(s.apply(g)) == GradingHom::swap_alexander(m, i).apply(eta.apply(g)));
                CHECK(eps.apply(s.apply(g)) == eps.apply(g));
            }
        }
    }
}

TEST_CASE("algebra gradings are additive along products") {
    std::mt19937 rng(3);
    auto A = cl_algebra(4);
    const auto basis = A->basis(4);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int t = 0; t < 500; ++t) {
        const auto& a = basis[pick(rng)];
        const auto& b = basis[pick(rng)];
        for (const auto& p : A->multiply(a, b)) CHECK(A->grading(p) == A->grading(a) + A->grading(b));
    }
}

TEST_CASE("structure relation with longer inputs and larger powers") {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        auto P = crossing_bimodule(4, 2, s);
        CHECK(verify_structure(*P, VerifyBounds{3, 6, 6}).pass());
    }
}

TEST_CASE("delta respects idempotents on random inputs") {
    std::mt19937 rng(5);
    auto R = restrict_inputs(*algebras(3).phi, twist_bimodule(3, 1, Sign::Positive));
    const auto& C = *R->in_algebra();
    const auto basis = C.basis(4);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> gen(0, R->generator_count() - 1);
    for (int t = 0; t < 300; ++t) {
        int x = gen(rng);
        const auto& a = basis[pick(rng)];
        if (a.start != R->generator(x).right || a.is_idempotent()) continue;
        for (const auto& term : R->delta(x, {a})) {
            const auto& g = R->generator(term.gen);
            CHECK(term.out.start == R->generator(x).left);
            CHECK(term.out.end == g.left);
            CHECK(a.end == g.right);
        }
    }
}
