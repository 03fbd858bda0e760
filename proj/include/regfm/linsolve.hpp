#pragma once

#include <vector>

#include "regfm/rational.hpp"

namespace regfm {

enum class LinSolveStatus { Unique, NonUnique, Inconsistent };

struct LinSolveResult {
    LinSolveStatus status;
    std::vector<Rational> x;  // valid only when status == Unique
};

// Exact Gaussian elimination over the rationals; A is row-major m x n.
LinSolveResult solve_linear(std::vector<std::vector<Rational>> A, std::vector<Rational> b);

}  // namespace regfm
