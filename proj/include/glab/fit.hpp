#pragma once

#include <string>
#include <vector>

#include "glab/seqcore.hpp"

namespace glab {

struct FitResult {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
  std::string x_transform = "log", y_transform = "log";
  std::size_t n = 0;
};

// Least-squares line on (log x, log y); all inputs must be positive, n >= 3.
FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace glab
