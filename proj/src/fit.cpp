#include "glab/fit.hpp"

#include <cmath>

namespace glab {

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw input_error("fit_loglog: size mismatch");
  if (xs.size() < 3) throw input_error("fit_loglog needs at least 3 points");
  std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw input_error("fit_loglog needs positive inputs");
    double x = std::log(xs[i]), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double dn = static_cast<double>(n);
  double vx = sxx - sx * sx / dn;
  double vy = syy - sy * sy / dn;
  double cxy = sxy - sx * sy / dn;
  FitResult fr;
  fr.n = n;
  fr.slope = cxy / vx;
  fr.intercept = (sy - fr.slope * sx) / dn;
  fr.r_squared = (vy == 0.0) ? 1.0 : (cxy * cxy) / (vx * vy);
  return fr;
}

}  // namespace glab
