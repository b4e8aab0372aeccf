#pragma once

#include <memory>
#include <vector>

#include "dabim/pathalg.hpp"

namespace dabim {

/// The zigzag algebra on vertices 0..m-1 with the extra relation (0|1|0) = 0.
/// Arrows are written (j|j+1), of degree 0, and (j+1|j), of degree 1.
AlgebraPtr ks_algebra(int m);

/// The algebra on vertices 0..m with arrows R_j: j-1 -> j and L_j: j -> j-1,
/// relations R_j R_{j+1} = 0 = L_{j+1} L_j, graded by (tau, beta) / 2.
AlgebraPtr b_algebra(int m);

/// The corner of b_algebra(m) at vertices 0..m-1, presented with a loop U_m
/// at vertex m-1.
AlgebraPtr cl_algebra(int m);

/// cl_algebra(m) with its grading collapsed to a single integer.
AlgebraPtr cl_bottom_algebra(int m);

/// The surjection cl_bottom_algebra(m) -> ks_algebra(m).
std::shared_ptr<const AlgebraHom> cl_to_ks(int m);

/// U_1 + ... + U_m in cl_bottom_algebra(m), the generator of ker(cl_to_ks).
std::vector<Path> central_sum(const PresentedAlgebra& cl, int m);

/// R_1 L_1, then L_j R_j + R_{j+1} L_{j+1} for 0 < j < m-1, then L_{m-1} R_{m-1} + U_m.
std::vector<std::vector<Path>> central_sum_pieces(const PresentedAlgebra& cl, int m);

}  // namespace dabim
