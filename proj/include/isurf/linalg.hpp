#pragma once

#include <optional>
#include <vector>

#include "isurf/rational.hpp"

namespace isurf {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row major

// Rank by exact Gaussian elimination.
int qmat_rank(QMat m);

// Basis of the right nullspace of an m x n matrix, each vector of length n.
std::vector<QVec> qmat_nullspace(QMat m);

// One exact solution of A x = b, or nullopt if the system is inconsistent.
// If the solution space is positive-dimensional an arbitrary member is
// returned (free variables set to zero).
std::optional<QVec> qmat_solve(QMat a, QVec b);

}  // namespace isurf
