#pragma once

#include <functional>
#include <span>
#include <vector>

namespace svl {

struct NelderMeadOptions {
  int max_iter = 2000;
  // Converged once every vertex lies within this Euclidean distance of the best one.
  double tol = 1e-10;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Unconstrained minimisation with dimension-adapted coefficients
// (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/(2n), shrink 1 - 1/n).
// The initial simplex is x0 plus initial_step along each axis.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                      const NelderMeadOptions& opts = {});

}  // namespace svl
