#pragma once

#include <map>
#include <string>
#include <vector>

#include "dabim/bimodules.hpp"

namespace dabim {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // counts on success, first counterexample on failure
};

bool all_pass(const std::vector<CheckResult>& checks);

/// Algebra names accepted by build_algebra: KS, B, Cl, Clbot.
AlgebraPtr build_algebra(const std::string& name, int m);

/// Confluence, associativity, homogeneous relations, central named elements,
/// and for Clbot the kernel of the map to KS, degree by degree up to maxlen.
std::vector<CheckResult> algebra_checks(const std::string& name, int m, std::size_t maxlen);

/// The kernel comparison alone: ker(phi) against the ideal of U_1 + ... + U_m,
/// against the ideal of its pieces at each vertex, and U_j^2 membership.
std::vector<CheckResult> kernel_checks(int m, std::size_t maxlen);

/// Bimodules addressed by the command line.
enum class ObjectKind { Twist, Crossing, RestrictedTwist, ReducedTwist, InducedCrossing };
ObjectKind parse_object(const std::string& s);
std::string to_string(ObjectKind k);
BimodulePtr build_object(ObjectKind k, int m, int i, Sign s);

/// Idempotents, gradings, the structure relation, and for bimodules without
/// higher operations the dg module A box M.
std::vector<CheckResult> bimodule_checks(const DABimodule& M, const VerifyBounds& b, std::size_t maxlen);

/// The full comparison of the restricted twist and induced crossing bimodules.
std::vector<CheckResult> equivalence_checks(int m, int i, Sign s, const VerifyBounds& b);

enum class Flavor { KS, OSz };
Flavor parse_flavor(const std::string& s);

struct BraidOptions {
    Flavor flavor = Flavor::KS;
    bool reduce = true;
    std::size_t depth_limit = 16;
    std::size_t input_bound = 4;  // OSz only: inputs kept up to this length
};

/// Parses "1 -2 1"; magnitudes must lie in 1..m-1.
std::vector<int> parse_braid_word(const std::string& text, int m);
/// Box tensor product of the crossing bimodules of the word, left to right.
BimodulePtr braid_bimodule(int m, const std::vector<int>& word, const BraidOptions& opt);
/// Generator counts keyed by (homological degree, integer grading).
std::map<std::pair<int, std::int64_t>, int> graded_counts(const DABimodule& M);
/// Sum of the Alexander shifts -sign (e_i + e_{i+1}) / 4 over the crossings.
Grading alexander_shift(int m, const std::vector<int>& word);

}  // namespace dabim
