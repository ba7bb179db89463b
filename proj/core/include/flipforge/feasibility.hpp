#pragma once

#include <optional>
#include <vector>

#include "flipforge/kernel.hpp"

namespace flipforge {

// coeffs . x >= rhs over free real variables.
struct LinearConstraint {
  std::vector<Rat> coeffs;
  Rat rhs;
};

// A point satisfying every constraint, or nullopt.  Exact phase-1 simplex
// with Bland's rule.
std::optional<std::vector<Rat>> simplex_feasible_point(const std::vector<LinearConstraint>& rows,
                                                       std::size_t vars);

// Independent feasibility decision by Fourier-Motzkin elimination.  Meant for
// a dozen variables or fewer; throws std::length_error if the system blows up.
bool fourier_motzkin_feasible(std::vector<LinearConstraint> rows, std::size_t vars,
                              std::size_t max_rows = 200000);

}  // namespace flipforge
