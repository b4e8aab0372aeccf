#pragma once

#include <memory>
#include <string>

#include "dabim/algebras.hpp"
#include "dabim/dastruct.hpp"

namespace dabim {

enum class Sign { Positive, Negative };
std::string to_string(Sign s);
Sign parse_sign(std::string_view s);

/// Shared algebras for one rank m.
struct AlgebraFamily {
    int m = 0;
    AlgebraPtr ks;       // zigzag algebra on m vertices
    AlgebraPtr cl;       // refined grading
    AlgebraPtr cl_bot;   // integer grading
    std::shared_ptr<const AlgebraHom> phi;  // cl_bot -> ks
};
const AlgebraFamily& algebras(int m);

/// Twist bimodule of the i-th spherical object over (KS, KS), written as a
/// type DA bimodule. Positive: cone of the multiplication map; negative: cone
/// of the coevaluation. Generators are "<j>" and "<i*a>" for a in (i)A.
BimodulePtr twist_bimodule(int m, int i, Sign s);

/// Crossing bimodule over (Cl, Cl) with the refined grading. Generators
/// S_j (j != i), W, E, N; E and S_{i+1} are absent when i = m-1.
BimodulePtr crossing_bimodule(int m, int i, Sign s);

/// The crossing bimodule with its grading collapsed to a single integer,
/// over (Clbot, Clbot).
BimodulePtr collapsed_crossing(int m, int i, Sign s);

/// Generator names of the twist bimodule.
std::string twist_vertex_name(int j);
std::string twist_path_name(const PresentedAlgebra& ks, const Path& a);

/// The restricted twist bimodule after cancelling its one unit arrow,
/// written out directly rather than computed.
BimodulePtr reduced_restricted_twist(int m, int i, Sign s);

/// Type D level homotopy equivalence between the restricted twist bimodule
/// and reduced_restricted_twist.
struct CancellationData {
    BimodulePtr big;
    BimodulePtr small;
    DAMorphism include;  // small -> big
    DAMorphism project;  // big -> small
    DAMorphism homotopy; // big -> big
};
CancellationData cancellation_data(int m, int i, Sign s);

/// Mutually inverse maps between the reduced restricted twist bimodule and
/// the induced collapsed crossing bimodule. Each map is a generator
/// matching plus a correction with one input.
struct CrossingEquivalence {
    BimodulePtr reduced_twist;   // over (KS, Clbot)
    BimodulePtr induced_crossing;
    DAMorphism match;            // reduced_twist -> induced_crossing, no inputs
    DAMorphism correction;
    DAMorphism match_back;       // induced_crossing -> reduced_twist
    DAMorphism correction_back;
    DAMorphism forward;          // match + correction
    DAMorphism backward;         // match_back + correction_back
};
CrossingEquivalence crossing_equivalence(int m, int i, Sign s);

/// Keeps only the components with at most n inputs.
DAMorphism components_up_to(const DAMorphism& f, std::size_t n);

}  // namespace dabim
